//! Key-value report output.
//!
//! Every command emits an ordered list of `key = value` lines.  Floats use
//! 17 significant digits so a report can be re-parsed and checked against a
//! fresh computation without rounding slop.  The `timing_ms` field is always
//! appended last and is the only line that varies between identical runs.

use std::fs;
use std::path::Path;
use std::time::Instant;

use crate::io::fmt_float;
use crate::CliError;

/// Ordered key-value accumulator for one command invocation.
pub struct Report {
    entries: Vec<(String, String)>,
    started: Instant,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report {
            entries: Vec::new(),
            started: Instant::now(),
        };
        r.str("command", command);
        r
    }

    pub fn str(&mut self, key: &str, value: &str) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn float(&mut self, key: &str, value: f64) {
        self.str(key, &fmt_float(value));
    }

    pub fn int(&mut self, key: &str, value: u64) {
        self.str(key, &value.to_string());
    }

    pub fn bool(&mut self, key: &str, value: bool) {
        self.str(key, if value { "true" } else { "false" });
    }

    /// Dense vector written sparsely as 1-based `index:value` pairs; exact
    /// zeros are omitted, so support size is visible at a glance.
    pub fn sparse_vector(&mut self, key: &str, values: &[f64]) {
        let pairs: Vec<String> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| format!("{}:{}", i + 1, fmt_float(*v)))
            .collect();
        self.str(&format!("{key}_len"), &values.len().to_string());
        self.str(key, &pairs.join(" "));
    }

    /// 1-based index list (screening output).
    pub fn index_list(&mut self, key: &str, indices: &[usize]) {
        let toks: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
        self.str(key, &toks.join(" "));
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(v);
            out.push('\n');
        }
        let ms = self.started.elapsed().as_secs_f64() * 1e3;
        out.push_str(&format!("timing_ms = {}\n", fmt_float(ms)));
        out
    }

    /// Write to `path` when given, otherwise to stdout.
    pub fn finish(self, path: Option<&Path>) -> Result<(), CliError> {
        let text = self.render();
        match path {
            Some(p) => fs::write(p, text)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}
