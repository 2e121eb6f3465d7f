//! Shared helpers for the tabular text formats.

use thiserror::Error;

/// A malformed input record. `line` is 1-based; 0 when unknown.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn from_csv(err: &csv::Error) -> Self {
        let line = err
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or_default();
        FormatError::new(line, err.to_string())
    }
}

/// Seventeen significant digits: enough to round-trip any `f64`.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn parse_real(field: &str, line: usize, what: &str) -> Result<f64, FormatError> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| FormatError::new(line, format!("{what}: not a number: {field:?}")))?;
    if !v.is_finite() {
        return Err(FormatError::new(
            line,
            format!("{what}: non-finite value {field:?}"),
        ));
    }
    Ok(v)
}

pub(crate) fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(text.as_bytes())
}

pub(crate) fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

pub(crate) fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("in-memory writer");
    String::from_utf8(bytes).expect("csv output is utf-8")
}

/// Checks the header matches `expected` exactly.
pub(crate) fn expect_header(
    rdr: &mut csv::Reader<&[u8]>,
    expected: &[&str],
) -> Result<(), FormatError> {
    let header = rdr.headers().map_err(|e| FormatError::from_csv(&e))?;
    let got: Vec<&str> = header.iter().map(str::trim).collect();
    if got != expected {
        return Err(FormatError::new(
            1,
            format!("expected header {expected:?}, found {got:?}"),
        ));
    }
    Ok(())
}

pub(crate) fn record_line(rec: &csv::StringRecord) -> usize {
    rec.position()
        .map(|p| p.line() as usize)
        .unwrap_or_default()
}
