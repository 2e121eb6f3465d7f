use std::collections::HashSet;

use crate::format::{self, fmt_real, parse_real, FormatError};

use super::FeatureVector;

/// Feature rows keyed by graph id, as stored in a feature CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    pub names: Vec<String>,
    pub rows: Vec<(String, Vec<f64>)>,
}

impl FeatureTable {
    pub fn get(&self, id: &str) -> Option<&[f64]> {
        self.rows
            .iter()
            .find(|(rid, _)| rid == id)
            .map(|(_, v)| v.as_slice())
    }
}

fn fmt_value(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        fmt_real(x)
    }
}

/// Renders `graph_id` plus one column per feature. Integral values print as
/// integers; everything else with 17 significant digits.
pub fn write_feature_csv<'a, I>(names: &[String], rows: I) -> String
where
    I: IntoIterator<Item = (&'a str, &'a FeatureVector)>,
{
    let mut w = format::csv_writer();
    let mut header = vec!["graph_id".to_string()];
    header.extend(names.iter().cloned());
    w.write_record(&header).expect("in-memory");
    for (id, fv) in rows {
        let mut rec = vec![id.to_string()];
        rec.extend(fv.to_vec().into_iter().map(fmt_value));
        w.write_record(&rec).expect("in-memory");
    }
    format::finish(w)
}

pub fn read_feature_csv(text: &str) -> Result<FeatureTable, FormatError> {
    let mut rdr = format::csv_reader(text);
    let header = rdr
        .headers()
        .map_err(|e| FormatError::from_csv(&e))?
        .clone();
    if header.get(0).map(str::trim) != Some("graph_id") {
        return Err(FormatError::new(1, "first column must be graph_id"));
    }
    if header.len() < 2 {
        return Err(FormatError::new(1, "no feature columns"));
    }
    let names: Vec<String> = header
        .iter()
        .skip(1)
        .map(|s| s.trim().to_string())
        .collect();
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| FormatError::from_csv(&e))?;
        let line = format::record_line(&rec);
        let id = rec[0].trim().to_string();
        if id.is_empty() {
            return Err(FormatError::new(line, "empty graph_id"));
        }
        if !seen.insert(id.clone()) {
            return Err(FormatError::new(line, format!("duplicate graph_id {id:?}")));
        }
        let values = rec
            .iter()
            .skip(1)
            .zip(&names)
            .map(|(f, name)| parse_real(f, line, name))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((id, values));
    }
    Ok(FeatureTable { names, rows })
}
