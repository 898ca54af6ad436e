use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use nilgrade_core::linalg::parse_scalar;
use nilgrade_core::{catalog, LieAlgebra, RationalMatrix, Scalar};
use serde_json::Value;

/// Catalog name or family spec, unless `file` is given.
pub fn load_algebra(name: Option<&str>, file: Option<&Path>) -> Result<LieAlgebra> {
    match (name, file) {
        (Some(_), Some(_)) => bail!(InputError("use either --algebra or --file, not both".into())),
        (None, None) => bail!(InputError("one of --algebra or --file is required".into())),
        (Some(name), None) => Ok(catalog::resolve(name)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(LieAlgebra::from_json(&text)?.validated()?)
        }
    }
}

/// `n x n` JSON array of rationals, given as strings ("1/2") or integers.
pub fn load_matrix(path: &Path) -> Result<RationalMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| InputError(format!("basis change: {e}")))?;
    let Value::Array(rows) = value else {
        bail!(InputError("basis change must be a JSON array of rows".into()));
    };
    let n = rows.len();
    let mut parsed = Vec::with_capacity(n);
    for row in rows {
        let Value::Array(cells) = row else {
            bail!(InputError("basis change rows must be arrays".into()));
        };
        let row: Vec<Scalar> = cells
            .iter()
            .map(|c| match c {
                Value::String(s) => Ok(parse_scalar(s)?),
                Value::Number(x) if x.is_i64() => Ok(parse_scalar(&x.to_string())?),
                other => Err(anyhow::Error::new(InputError(format!("matrix entry {other} is not a rational")))),
            })
            .collect::<Result<_>>()?;
        parsed.push(row);
    }
    Ok(RationalMatrix::from_rows(n, parsed)?)
}

/// Malformed command-line input that clap cannot catch.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}
