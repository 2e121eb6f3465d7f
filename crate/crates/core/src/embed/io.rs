use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Deserialize;

use crate::format::{self, FormatError};

use super::{CategoryCorpus, EmbedError, EmbeddingModel};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusLine {
    categories: Vec<String>,
}

/// One `{"categories": [...]}` object per non-blank line.
pub fn read_corpus_jsonl(text: &str) -> Result<CategoryCorpus, EmbedError> {
    let mut records = Vec::new();
    let mut lines = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: CorpusLine =
            serde_json::from_str(line).map_err(|e| FormatError::new(i + 1, e.to_string()))?;
        records.push(rec.categories);
        lines.push(i + 1);
    }
    CategoryCorpus::new(records).map_err(|e| match e {
        // report file lines rather than record ordinals
        EmbedError::InvalidRecord { record, message } => {
            FormatError::new(lines[record - 1], message).into()
        }
        other => other,
    })
}

/// `label<TAB>v1<TAB>...<TAB>vd` per line.
pub fn write_model_tsv(model: &EmbeddingModel) -> String {
    let mut out = String::new();
    for label in model.labels() {
        out.push_str(label);
        for v in model.vector(label).unwrap_or_default() {
            out.push('\t');
            out.push_str(&format::fmt_real(*v));
        }
        out.push('\n');
    }
    out
}

pub fn read_model_tsv(text: &str) -> Result<EmbeddingModel, EmbedError> {
    let mut labels = Vec::new();
    let mut vectors = Vec::new();
    let mut dim = None;
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let label = fields.next().unwrap_or_default().to_string();
        if label.is_empty() {
            return Err(FormatError::new(i + 1, "empty label").into());
        }
        let v = fields
            .map(|f| format::parse_real(f, i + 1, "component"))
            .collect::<Result<Vec<_>, _>>()?;
        if v.is_empty() || dim.is_some_and(|d| d != v.len()) {
            return Err(FormatError::new(i + 1, "inconsistent vector dimension").into());
        }
        dim = Some(v.len());
        labels.push(label);
        vectors.push(v);
    }
    if labels.is_empty() {
        return Err(EmbedError::EmptyVocabulary(0));
    }
    EmbeddingModel::new(labels, vectors)
}

/// `seed,rank,label,cosine` rows.
pub fn write_neighbors_csv(results: &[(String, Vec<(String, f64)>)]) -> String {
    let mut w = format::csv_writer();
    w.write_record(["seed", "rank", "label", "cosine"])
        .expect("in-memory");
    for (seed, list) in results {
        for (rank, (label, c)) in list.iter().enumerate() {
            w.write_record([
                seed.as_str(),
                &(rank + 1).to_string(),
                label,
                &format!("{c:.6}"),
            ])
            .expect("in-memory");
        }
    }
    format::finish(w)
}

/// `place_type,seed_label` rows naming the label that stands for each
/// place type.
pub fn read_taxonomy_seeds(text: &str) -> Result<Vec<(String, String)>, FormatError> {
    let mut rdr = format::csv_reader(text);
    format::expect_header(&mut rdr, &["place_type", "seed_label"])?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| FormatError::from_csv(&e))?;
        let line = format::record_line(&rec);
        let (t, s) = (rec[0].trim(), rec[1].trim());
        if t.is_empty() || s.is_empty() {
            return Err(FormatError::new(line, "empty field"));
        }
        out.push((t.to_string(), s.to_string()));
    }
    Ok(out)
}

/// One label per line; `#` comments and blank lines ignored.
pub fn read_allowlist(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

/// `place_type,labels` with labels joined by `;`.
pub fn write_taxonomy_csv(table: &[(String, Vec<String>)]) -> String {
    let mut w = format::csv_writer();
    w.write_record(["place_type", "labels"]).expect("in-memory");
    for (t, labels) in table {
        let mut joined = String::new();
        for (i, l) in labels.iter().enumerate() {
            if i > 0 {
                joined.push(';');
            }
            let _ = write!(joined, "{l}");
        }
        w.write_record([t.as_str(), &joined]).expect("in-memory");
    }
    format::finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_parsing() {
        let c = read_corpus_jsonl("{\"categories\": [\"A\",\"B\"]}\n\n{\"categories\": [\"C\"]}\n")
            .unwrap();
        assert_eq!(c.len(), 2);
        let err =
            read_corpus_jsonl("{\"categories\": [\"A\"]}\n{\"categories\": []}\n").unwrap_err();
        assert!(matches!(
            err,
            EmbedError::Format(FormatError { line: 2, .. })
        ));
        let err = read_corpus_jsonl("{\"cats\": [\"A\"]}").unwrap_err();
        assert!(matches!(
            err,
            EmbedError::Format(FormatError { line: 1, .. })
        ));
    }

    #[test]
    fn model_tsv_round_trip() {
        let m = EmbeddingModel::new(
            vec!["A".into(), "B".into()],
            vec![vec![0.1, -2.0 / 3.0], vec![1e-9, 4.0]],
        )
        .unwrap();
        let back = read_model_tsv(&write_model_tsv(&m)).unwrap();
        assert_eq!(back, m);
        assert!(read_model_tsv("A\t1\t2\nB\t1\n").is_err());
        assert!(read_model_tsv("A\t1\nA\t2\n").is_err());
    }

    #[test]
    fn seeds_and_taxonomy() {
        let seeds = read_taxonomy_seeds("place_type,seed_label\nRestaurants,AMERICAN_RESTAURANT\n")
            .unwrap();
        assert_eq!(seeds[0].1, "AMERICAN_RESTAURANT");
        let allow = read_allowlist("# keep\nBAR\n\nPUB\n");
        assert_eq!(allow.len(), 2);
        let t = write_taxonomy_csv(&[("Bars".into(), vec!["BAR".into(), "PUB".into()])]);
        assert_eq!(t, "place_type,labels\nBars,BAR;PUB\n");
    }
}
