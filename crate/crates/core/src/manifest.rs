//! Ensemble manifests: one `{"id": ..., "path": ..., "category": ...}` JSON
//! object per line. Paths are relative to the manifest's directory unless
//! absolute.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::format::FormatError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub id: String,
    pub path: String,
    pub category: String,
}

pub fn read_manifest(text: &str) -> Result<Vec<ManifestEntry>, FormatError> {
    let mut out = Vec::new();
    let mut ids = BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let e: ManifestEntry =
            serde_json::from_str(line).map_err(|err| FormatError::new(i + 1, err.to_string()))?;
        for (name, v) in [("id", &e.id), ("path", &e.path), ("category", &e.category)] {
            if v.trim().is_empty() {
                return Err(FormatError::new(i + 1, format!("empty {name}")));
            }
        }
        if !ids.insert(e.id.clone()) {
            return Err(FormatError::new(i + 1, format!("duplicate id {:?}", e.id)));
        }
        out.push(e);
    }
    Ok(out)
}

pub fn write_manifest(entries: &[ManifestEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&serde_json::to_string(e).expect("plain strings serialize"));
        out.push('\n');
    }
    out
}
