//! File formats: dense CSV matrices, one-value-per-line vectors, labeled
//! points, precomputed kernel matrices, and the shared float formatting.
//!
//! Floats are printed with 17 significant digits so that writing and
//! re-reading a report or matrix reproduces every value bit for bit.

use std::fs;
use std::path::Path;

use lassvm::kernel::{KernelSpec, PointKernelMatrix};
use lassvm::reduction::LabeledData;
use lassvm::ProblemMatrix;

use crate::CliError;

/// 17 significant digits: enough to round-trip any f64 exactly.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse_float(token: &str, path: &Path, line_no: usize, col: usize) -> Result<f64, CliError> {
    let v: f64 = token.trim().parse().map_err(|_| {
        CliError::Input(format!(
            "{}:{}: column {}: not a number: {:?}",
            path.display(),
            line_no,
            col,
            token.trim()
        ))
    })?;
    if !v.is_finite() {
        return Err(CliError::Input(format!(
            "{}:{}: column {}: non-finite value rejected",
            path.display(),
            line_no,
            col
        )));
    }
    Ok(v)
}

/// Headerless CSV; file rows are matrix rows.
pub fn read_matrix_csv(path: &Path) -> Result<ProblemMatrix, CliError> {
    let text = read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (c, token) in line.split(',').enumerate() {
            row.push(parse_float(token, path, i + 1, c + 1)?);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(CliError::Input(format!(
                    "{}:{}: row has {} fields, expected {}",
                    path.display(),
                    i + 1,
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Input(format!("{}: empty matrix", path.display())));
    }
    ProblemMatrix::from_rows(&rows).map_err(|e| CliError::Input(e.to_string()))
}

/// One value per line (blank lines ignored).
pub fn read_vector(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_float(line, path, i + 1, 1)?);
    }
    if out.is_empty() {
        return Err(CliError::Input(format!("{}: empty vector", path.display())));
    }
    Ok(out)
}

/// Labeled points, one per line: `label index:value index:value ...` with
/// 1-based indices and labels restricted to +1 / −1.
pub fn read_labeled(path: &Path, c: f64) -> Result<LabeledData, CliError> {
    let text = read_to_string(path)?;
    let mut labels: Vec<f64> = Vec::new();
    let mut sparse_points: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut dim = 0usize;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let label_tok = tokens.next().expect("non-empty line has a first token");
        let label: f64 = label_tok.parse().map_err(|_| {
            CliError::Input(format!(
                "{}:{}: bad label {:?}",
                path.display(),
                i + 1,
                label_tok
            ))
        })?;
        if label != 1.0 && label != -1.0 {
            return Err(CliError::Input(format!(
                "{}:{}: label must be +1 or -1, got {label}",
                path.display(),
                i + 1
            )));
        }
        let mut entries = Vec::new();
        for (c_idx, tok) in tokens.enumerate() {
            let (idx_str, val_str) = tok.split_once(':').ok_or_else(|| {
                CliError::Input(format!(
                    "{}:{}: column {}: expected index:value, got {:?}",
                    path.display(),
                    i + 1,
                    c_idx + 2,
                    tok
                ))
            })?;
            let idx: usize = idx_str.parse().map_err(|_| {
                CliError::Input(format!(
                    "{}:{}: bad feature index {:?}",
                    path.display(),
                    i + 1,
                    idx_str
                ))
            })?;
            if idx == 0 {
                return Err(CliError::Input(format!(
                    "{}:{}: feature indices are 1-based",
                    path.display(),
                    i + 1
                )));
            }
            let val = parse_float(val_str, path, i + 1, c_idx + 2)?;
            dim = dim.max(idx);
            entries.push((idx - 1, val));
        }
        labels.push(label);
        sparse_points.push(entries);
    }
    if labels.is_empty() {
        return Err(CliError::Input(format!("{}: no data points", path.display())));
    }
    if dim == 0 {
        return Err(CliError::Input(format!(
            "{}: every point is empty; no feature dimension",
            path.display()
        )));
    }
    let mut m = ProblemMatrix::zeros(dim, labels.len());
    for (j, entries) in sparse_points.iter().enumerate() {
        for &(i, v) in entries {
            m.set(i, j, v);
        }
    }
    LabeledData::new(m, labels, c).map_err(|e| CliError::Input(e.to_string()))
}

/// Square CSV of kernel values over the point list (columns, then target).
pub fn read_point_kernel(path: &Path) -> Result<PointKernelMatrix, CliError> {
    let m = read_matrix_csv(path)?;
    if m.rows() != m.cols() {
        return Err(CliError::Input(format!(
            "{}: kernel matrix must be square, got {}x{}",
            path.display(),
            m.rows(),
            m.cols()
        )));
    }
    let size = m.rows();
    let mut values = vec![0.0; size * size];
    for i in 0..size {
        for j in 0..size {
            values[i * size + j] = m.get(i, j);
        }
    }
    PointKernelMatrix::new(values, size).map_err(|e| CliError::Input(e.to_string()))
}

/// Kernel flag syntax: `linear`, `poly:DEG:COEF0`, `rbf:GAMMA`,
/// `precomputed:PATH`.
pub fn parse_kernel_arg(arg: &str) -> Result<KernelSpec, CliError> {
    let mut parts = arg.splitn(2, ':');
    let kind = parts.next().unwrap_or("");
    let rest = parts.next();
    match (kind, rest) {
        ("linear", None) => Ok(KernelSpec::Linear),
        ("poly", Some(rest)) => {
            let (deg_str, coef_str) = rest.split_once(':').ok_or_else(|| {
                CliError::Input(format!("kernel {arg:?}: expected poly:DEG:COEF0"))
            })?;
            let degree: u32 = deg_str
                .parse()
                .map_err(|_| CliError::Input(format!("kernel {arg:?}: bad degree")))?;
            let coef0: f64 = coef_str
                .parse()
                .map_err(|_| CliError::Input(format!("kernel {arg:?}: bad coef0")))?;
            Ok(KernelSpec::Polynomial { degree, coef0 })
        }
        ("rbf", Some(rest)) => {
            let gamma: f64 = rest
                .parse()
                .map_err(|_| CliError::Input(format!("kernel {arg:?}: bad gamma")))?;
            Ok(KernelSpec::Rbf { gamma })
        }
        ("precomputed", Some(rest)) => {
            Ok(KernelSpec::Precomputed(read_point_kernel(Path::new(rest))?))
        }
        _ => Err(CliError::Input(format!(
            "unknown kernel {arg:?} (expected linear, poly:DEG:COEF0, rbf:GAMMA, \
             or precomputed:PATH)"
        ))),
    }
}

/// Write a matrix as headerless CSV (rows = matrix rows).
pub fn write_matrix_csv(path: &Path, m: &ProblemMatrix) -> Result<(), CliError> {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| fmt_float(m.get(i, j))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

/// Write a vector, one value per line.
pub fn write_vector(path: &Path, v: &[f64]) -> Result<(), CliError> {
    let mut out = String::new();
    for x in v {
        out.push_str(&fmt_float(*x));
        out.push('\n');
    }
    fs::write(path, out)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

/// Pull the 1-based `kept = ...` index list out of a screening report.
pub fn read_kept_indices(path: &Path) -> Result<Vec<usize>, CliError> {
    let text = read_to_string(path)?;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("kept =") {
            let mut kept = Vec::new();
            for tok in rest.split_whitespace() {
                let idx: usize = tok.parse().map_err(|_| {
                    CliError::Input(format!(
                        "{}: bad index {:?} in kept list",
                        path.display(),
                        tok
                    ))
                })?;
                if idx == 0 {
                    return Err(CliError::Input(format!(
                        "{}: kept indices are 1-based",
                        path.display()
                    )));
                }
                kept.push(idx - 1);
            }
            return Ok(kept);
        }
    }
    Err(CliError::Input(format!(
        "{}: no `kept =` line found (is this a screening report?)",
        path.display()
    )))
}
