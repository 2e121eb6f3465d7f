//! Ensemble description in a small sectioned `key = value` format:
//!
//! ```text
//! # one section per category
//! [bars]
//! kind = core_periphery
//! count = 100
//! n_core = 20
//! n_periphery = 180
//! p_cc = 0.5
//! p_cp = 0.05
//! p_pp = 0.01
//! ```

use std::collections::BTreeMap;

use crate::format::FormatError;

use super::Archetype;

#[derive(Debug, Clone, PartialEq)]
pub struct CategorySpec {
    pub name: String,
    pub count: usize,
    pub archetype: Archetype,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EnsembleConfig {
    pub categories: Vec<CategorySpec>,
}

struct Section {
    name: String,
    line: usize,
    keys: BTreeMap<String, (String, usize)>,
}

impl Section {
    fn take(&mut self, key: &str) -> Result<(String, usize), FormatError> {
        self.keys.remove(key).ok_or_else(|| {
            FormatError::new(
                self.line,
                format!("section [{}]: missing key {key:?}", self.name),
            )
        })
    }

    fn count(&mut self, key: &str) -> Result<usize, FormatError> {
        let (v, line) = self.take(key)?;
        v.parse().map_err(|_| {
            FormatError::new(
                line,
                format!("{key}: expected a non-negative integer, found {v:?}"),
            )
        })
    }

    fn prob(&mut self, key: &str) -> Result<f64, FormatError> {
        let (v, line) = self.take(key)?;
        v.parse::<f64>()
            .ok()
            .filter(|p| (0.0..=1.0).contains(p))
            .ok_or_else(|| {
                FormatError::new(
                    line,
                    format!("{key}: expected a value in [0, 1], found {v:?}"),
                )
            })
    }

    fn into_spec(mut self) -> Result<CategorySpec, FormatError> {
        let (kind, kind_line) = self.take("kind")?;
        let count = self.count("count")?;
        let archetype = match kind.as_str() {
            "erdos_renyi" => Archetype::ErdosRenyi {
                n: self.count("n")?,
                p: self.prob("p")?,
            },
            "core_periphery" => Archetype::CorePeriphery {
                n_core: self.count("n_core")?,
                n_periphery: self.count("n_periphery")?,
                p_cc: self.prob("p_cc")?,
                p_cp: self.prob("p_cp")?,
                p_pp: self.prob("p_pp")?,
            },
            "dyad_triad_scatter" => Archetype::DyadTriadScatter {
                n_components: self.count("n_components")?,
                dyad_fraction: self.prob("dyad_fraction")?,
            },
            "multi_core_community" => Archetype::MultiCoreCommunity {
                communities: self.count("communities")?,
                n_core: self.count("n_core")?,
                n_periphery: self.count("n_periphery")?,
                p_cc: self.prob("p_cc")?,
                p_cp: self.prob("p_cp")?,
                p_pp: self.prob("p_pp")?,
                p_between: self.prob("p_between")?,
            },
            other => {
                return Err(FormatError::new(
                    kind_line,
                    format!("unknown kind {other:?}"),
                ))
            }
        };
        if let Some((key, (_, line))) = self.keys.into_iter().min_by_key(|(_, (_, l))| *l) {
            return Err(FormatError::new(
                line,
                format!("unknown key {key:?} for kind {kind}"),
            ));
        }
        Ok(CategorySpec {
            name: self.name,
            count,
            archetype,
        })
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Parses an ensemble description. Section names become category names and
/// must be made of ASCII letters, digits, `_` or `-`.
pub fn parse_ensemble_config(text: &str) -> Result<EnsembleConfig, FormatError> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .map(str::trim)
                .ok_or_else(|| FormatError::new(line, "unterminated section header"))?;
            if !valid_name(name) {
                return Err(FormatError::new(
                    line,
                    format!("invalid category name {name:?}"),
                ));
            }
            if sections.iter().any(|s| s.name == name) {
                return Err(FormatError::new(
                    line,
                    format!("duplicate section [{name}]"),
                ));
            }
            sections.push(Section {
                name: name.to_string(),
                line,
                keys: BTreeMap::new(),
            });
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| FormatError::new(line, "expected key = value"))?;
        let (key, value) = (key.trim(), value.trim());
        let section = sections
            .last_mut()
            .ok_or_else(|| FormatError::new(line, "key outside of a section"))?;
        if key.is_empty() {
            return Err(FormatError::new(line, "empty key"));
        }
        if section
            .keys
            .insert(key.to_string(), (value.to_string(), line))
            .is_some()
        {
            return Err(FormatError::new(line, format!("duplicate key {key:?}")));
        }
    }
    let categories = sections
        .into_iter()
        .map(Section::into_spec)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EnsembleConfig { categories })
}
