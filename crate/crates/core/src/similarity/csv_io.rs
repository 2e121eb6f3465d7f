use crate::format::{self, parse_real, FormatError};

use super::{global_importance_ranking, AucMatrix, ImportanceVector};

/// Square CSV with category names on both axes and 4-decimal values.
pub fn write_auc_matrix_csv(m: &AucMatrix) -> String {
    let mut w = format::csv_writer();
    let mut header = vec!["category".to_string()];
    header.extend(m.categories.iter().cloned());
    w.write_record(&header).expect("in-memory");
    for (name, row) in m.categories.iter().zip(&m.values) {
        let mut rec = vec![name.clone()];
        rec.extend(row.iter().map(|v| format!("{v:.4}")));
        w.write_record(&rec).expect("in-memory");
    }
    format::finish(w)
}

pub fn read_auc_matrix_csv(text: &str) -> Result<AucMatrix, FormatError> {
    let mut rdr = format::csv_reader(text);
    let header = rdr
        .headers()
        .map_err(|e| FormatError::from_csv(&e))?
        .clone();
    let categories: Vec<String> = header
        .iter()
        .skip(1)
        .map(|s| s.trim().to_string())
        .collect();
    let mut values = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| FormatError::from_csv(&e))?;
        let line = format::record_line(&rec);
        if categories.get(i).map(String::as_str) != Some(rec[0].trim()) {
            return Err(FormatError::new(
                line,
                "row label does not match column order",
            ));
        }
        let row = rec
            .iter()
            .skip(1)
            .map(|f| parse_real(f, line, "auc"))
            .collect::<Result<Vec<_>, _>>()?;
        values.push(row);
    }
    if values.len() != categories.len() {
        return Err(FormatError::new(0, "matrix is not square"));
    }
    Ok(AucMatrix { categories, values })
}

/// `feature,importance,rank` in canonical feature order.
pub fn write_importance_csv(iv: &ImportanceVector) -> String {
    let ranking = global_importance_ranking(iv);
    let mut w = format::csv_writer();
    w.write_record(["feature", "importance", "rank"])
        .expect("in-memory");
    for (name, value) in iv.names.iter().zip(&iv.values) {
        let rank = ranking
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| *r)
            .unwrap_or_default();
        w.write_record([name.clone(), format::fmt_real(*value), rank.to_string()])
            .expect("in-memory");
    }
    format::finish(w)
}

pub fn read_importance_csv(text: &str) -> Result<ImportanceVector, FormatError> {
    let mut rdr = format::csv_reader(text);
    format::expect_header(&mut rdr, &["feature", "importance", "rank"])?;
    let mut names = Vec::new();
    let mut values = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| FormatError::from_csv(&e))?;
        let line = format::record_line(&rec);
        let v = parse_real(&rec[1], line, "importance")?;
        if v < 0.0 {
            return Err(FormatError::new(line, "negative importance"));
        }
        names.push(rec[0].trim().to_string());
        values.push(v);
    }
    if names.is_empty() {
        return Err(FormatError::new(0, "no importance rows"));
    }
    Ok(ImportanceVector { names, values })
}
