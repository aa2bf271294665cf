//! JSON formats.
//!
//! * density operator: `{"dim": N, "matrix": [[[re, im], ...], ...]}`, row-major;
//! * probability vector: `[p_0, p_1, ...]`;
//! * operator list: `{"operators": [<matrix>, ...]}` with the same element format.

use std::fs;
use std::path::{Path, PathBuf};

use qentropy_core::classical::ProbabilityVector;
use qentropy_core::linalg::{ComplexMatrix, C64};
use qentropy_core::quantum::DensityOperator;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`: {msg}")]
    Field { field: String, msg: String },
    #[error(transparent)]
    Invalid(#[from] qentropy_core::Error),
}

pub type IoResult<T> = std::result::Result<T, IoError>;

fn field(field: impl Into<String>, msg: impl Into<String>) -> IoError {
    IoError::Field {
        field: field.into(),
        msg: msg.into(),
    }
}

pub fn read_text(path: &Path) -> IoResult<String> {
    fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses a square matrix of `[re, im]` pairs; `name` prefixes field paths in errors.
pub fn parse_matrix(v: &Value, name: &str) -> IoResult<ComplexMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| field(name, "expected an array of rows"))?;
    let n = rows.len();
    if n == 0 {
        return Err(field(name, "empty matrix"));
    }
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| field(format!("{name}[{i}]"), "expected an array"))?;
        if row.len() != n {
            return Err(field(
                format!("{name}[{i}]"),
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        for (j, z) in row.iter().enumerate() {
            let at = || format!("{name}[{i}][{j}]");
            let pair = z
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| field(at(), "expected [re, im]"))?;
            let re = pair[0]
                .as_f64()
                .ok_or_else(|| field(at(), "real part is not a number"))?;
            let im = pair[1]
                .as_f64()
                .ok_or_else(|| field(at(), "imaginary part is not a number"))?;
            data.push(C64::new(re, im));
        }
    }
    Ok(ComplexMatrix::from_vec(n, n, data)?)
}

pub fn parse_density(text: &str) -> IoResult<DensityOperator> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| field("<root>", "expected an object"))?;
    let dim = obj
        .get("dim")
        .ok_or_else(|| field("dim", "missing"))?
        .as_u64()
        .ok_or_else(|| field("dim", "expected a positive integer"))? as usize;
    let m = parse_matrix(
        obj.get("matrix")
            .ok_or_else(|| field("matrix", "missing"))?,
        "matrix",
    )?;
    if m.rows() != dim {
        return Err(field(
            "dim",
            format!("dim is {dim} but matrix is {}x{}", m.rows(), m.cols()),
        ));
    }
    Ok(DensityOperator::new(m)?)
}

pub fn read_density(path: &Path) -> IoResult<DensityOperator> {
    parse_density(&read_text(path)?)
}

pub fn matrix_json(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| json!([m[(i, j)].re, m[(i, j)].im]))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn density_json(rho: &DensityOperator) -> Value {
    json!({ "dim": rho.dim(), "matrix": matrix_json(rho.matrix()) })
}

pub fn parse_probability_vector(text: &str) -> IoResult<ProbabilityVector> {
    let v: Value = serde_json::from_str(text)?;
    let items = v
        .as_array()
        .ok_or_else(|| field("<root>", "expected an array of probabilities"))?;
    let p = items
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_f64()
                .ok_or_else(|| field(format!("[{i}]"), "not a number"))
        })
        .collect::<IoResult<Vec<f64>>>()?;
    Ok(ProbabilityVector::new(p)?)
}

/// Either a probability vector or the spectrum of a density operator.
pub fn parse_distribution(text: &str) -> IoResult<ProbabilityVector> {
    let v: Value = serde_json::from_str(text)?;
    if v.is_array() {
        parse_probability_vector(text)
    } else {
        Ok(parse_density(text)?.spectrum().clone())
    }
}

pub fn parse_operators(text: &str) -> IoResult<Vec<ComplexMatrix>> {
    let v: Value = serde_json::from_str(text)?;
    let ops = v
        .get("operators")
        .ok_or_else(|| field("operators", "missing"))?
        .as_array()
        .ok_or_else(|| field("operators", "expected an array of matrices"))?;
    ops.iter()
        .enumerate()
        .map(|(k, m)| parse_matrix(m, &format!("operators[{k}]")))
        .collect()
}
