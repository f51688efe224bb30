//! CSV readers and writers for data matrices and component results.
//!
//! Readers accept `#` comments and blank lines; an optional header row (any
//! row whose cells are not all numeric) is skipped. Writers emit the
//! shortest round-trip decimal form, so identical data serializes to
//! identical bytes.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::data::DataMatrix;
use super::driver::SparsePcaResult;

fn parse_err(source: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: source.to_string(),
        line,
        msg: msg.into(),
    }
}

fn payload(line: &str) -> &str {
    let stripped = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    stripped.trim()
}

/// Parses a dense observation matrix: comma-separated rows, optional header.
/// Columns are centered by the [`DataMatrix`] constructor.
pub fn parse_matrix_csv<S: Real, R: BufRead>(reader: R, source: &str) -> Result<DataMatrix<S>> {
    let mut rows: Vec<Vec<S>> = Vec::new();
    let mut first_data_seen = false;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let body = payload(&line);
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split(',').map(str::trim).collect();
        let parsed: Option<Vec<S>> = fields
            .iter()
            .map(|f| f.parse::<f64>().ok().map(S::c))
            .collect();
        match parsed {
            Some(row) => {
                if let Some(first) = rows.first() {
                    if row.len() != first.len() {
                        return Err(parse_err(
                            source,
                            lineno,
                            format!("expected {} fields, got {}", first.len(), row.len()),
                        ));
                    }
                }
                rows.push(row);
                first_data_seen = true;
            }
            None => {
                if first_data_seen || !rows.is_empty() {
                    let bad = fields
                        .iter()
                        .find(|f| f.parse::<f64>().is_err())
                        .copied()
                        .unwrap_or(body);
                    return Err(parse_err(source, lineno, format!("bad number `{bad}`")));
                }
                // Non-numeric first row: header, skip.
            }
        }
    }
    if rows.is_empty() {
        return Err(parse_err(source, 1, "no observation rows in input"));
    }
    DataMatrix::from_rows(&rows)
}

pub fn read_matrix_csv<S: Real>(path: &Path) -> Result<DataMatrix<S>> {
    let file = File::open(path)?;
    parse_matrix_csv(BufReader::new(file), &path.display().to_string())
}

/// Writes the sparsity/variance tradeoff table:
/// `alpha,cardinality,relative_variance,lambda`, one row per sweep level.
pub fn write_tradeoff_csv<S: Real, W: Write>(
    results: &[SparsePcaResult<S>],
    mut out: W,
) -> Result<()> {
    writeln!(out, "alpha,cardinality,relative_variance,lambda")?;
    for r in results {
        writeln!(
            out,
            "{},{},{},{}",
            r.alpha,
            r.cardinality,
            r.relative_variance.as_f64(),
            r.lambda.as_f64()
        )?;
    }
    Ok(())
}

/// Writes the nonzero entries of a component as `feature_index,value` rows.
pub fn write_component_csv<S: Real, W: Write>(component: &[S], mut out: W) -> Result<()> {
    writeln!(out, "feature_index,value")?;
    for (j, &v) in component.iter().enumerate() {
        if v != S::zero() {
            writeln!(out, "{},{}", j, v.as_f64())?;
        }
    }
    Ok(())
}
