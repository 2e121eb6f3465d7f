//! Region-level prevalence of place categories.
//!
//! A page with `k` categories contributes `1/k` to each of them. Weights are
//! kept as integer multiples of 1/6 (the least common multiple of 1, 2 and 3),
//! so totals are exact no matter how many records are summed.

mod io;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::format::FormatError;

pub use io::{
    read_external_csv, read_places_csv, read_regions_csv, write_correlation_csv, write_medians_csv,
    write_prevalence_csv,
};

/// Maximum categories a page may carry.
pub const MAX_CATEGORIES: usize = 3;
const UNIT: u64 = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PrevalenceError {
    #[error("page {0:?} has no categories")]
    EmptyCategories(String),
    #[error("page {page:?} has {count} categories; at most {MAX_CATEGORIES} allowed")]
    TooManyCategories { page: String, count: usize },
    #[error("region {0:?} is missing from the region table")]
    MissingRegion(String),
    #[error("region {region:?}: {message}")]
    InvalidRegion { region: String, message: String },
    #[error("need at least 2 pairs with positive values, found {0}")]
    TooFewPairs(usize),
    #[error("log values have zero variance")]
    ZeroVariance,
    #[error(transparent)]
    Format(#[from] FormatError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceRecord {
    pub page_id: String,
    pub region_id: String,
    pub categories: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionInfo {
    pub population: u64,
    /// Rural-urban continuum code, 1 (most urban) to 9.
    pub rucc: u8,
    pub income: f64,
    pub education: f64,
    pub foreign_born: f64,
}

/// Validated region attributes keyed by region id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RegionTable {
    regions: BTreeMap<String, RegionInfo>,
}

impl RegionTable {
    pub fn new(regions: BTreeMap<String, RegionInfo>) -> Result<Self, PrevalenceError> {
        for (id, r) in &regions {
            let bad = |message: &str| {
                Err(PrevalenceError::InvalidRegion {
                    region: id.clone(),
                    message: message.to_string(),
                })
            };
            if r.population == 0 {
                return bad("population must be positive");
            }
            if !(1..=9).contains(&r.rucc) {
                return bad("rucc must be in 1..=9");
            }
            if ![r.income, r.education, r.foreign_born]
                .iter()
                .all(|v| v.is_finite())
            {
                return bad("non-finite attribute");
            }
        }
        Ok(RegionTable { regions })
    }

    pub fn get(&self, id: &str) -> Option<&RegionInfo> {
        self.regions.get(id)
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &RegionInfo)> {
        self.regions.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// Fractional page counts per (region, category).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FractionalCounts {
    sixths: BTreeMap<(String, String), u64>,
    records: usize,
}

impl FractionalCounts {
    pub fn records(&self) -> usize {
        self.records
    }

    pub fn weighted_count(&self, region: &str, category: &str) -> f64 {
        self.sixths
            .get(&(region.to_string(), category.to_string()))
            .map_or(0.0, |&s| s as f64 / UNIT as f64)
    }

    /// Exact weight in units of 1/6.
    pub fn sixths(&self, region: &str, category: &str) -> u64 {
        self.sixths
            .get(&(region.to_string(), category.to_string()))
            .copied()
            .unwrap_or(0)
    }

    /// Total weight in units of 1/6; always `6 * records()`.
    pub fn total_sixths(&self) -> u64 {
        self.sixths.values().sum()
    }

    pub fn total(&self) -> f64 {
        self.total_sixths() as f64 / UNIT as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, f64)> {
        self.sixths
            .iter()
            .map(|((r, c), &s)| (r.as_str(), c.as_str(), s as f64 / UNIT as f64))
    }

    pub fn regions(&self) -> BTreeSet<&str> {
        self.sixths.keys().map(|(r, _)| r.as_str()).collect()
    }

    pub fn categories(&self) -> BTreeSet<&str> {
        self.sixths.keys().map(|(_, c)| c.as_str()).collect()
    }
}

/// Splits each page's unit weight evenly over its distinct categories.
pub fn fractional_counts(records: &[PlaceRecord]) -> Result<FractionalCounts, PrevalenceError> {
    let mut out = FractionalCounts::default();
    for rec in records {
        let cats: BTreeSet<&str> = rec.categories.iter().map(String::as_str).collect();
        match cats.len() {
            0 => return Err(PrevalenceError::EmptyCategories(rec.page_id.clone())),
            n if n > MAX_CATEGORIES => {
                return Err(PrevalenceError::TooManyCategories {
                    page: rec.page_id.clone(),
                    count: n,
                })
            }
            _ => {}
        }
        let share = UNIT / cats.len() as u64;
        for c in cats {
            *out.sixths
                .entry((rec.region_id.clone(), c.to_string()))
                .or_insert(0) += share;
        }
        out.records += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrevalenceCell {
    pub weighted_count: f64,
    pub per_1000: f64,
    pub decile: u8,
}

/// Every region of the region table crossed with every counted category.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PrevalenceTable {
    pub cells: BTreeMap<(String, String), PrevalenceCell>,
}

impl PrevalenceTable {
    pub fn get(&self, region: &str, category: &str) -> Option<&PrevalenceCell> {
        self.cells.get(&(region.to_string(), category.to_string()))
    }

    pub fn categories(&self) -> BTreeSet<&str> {
        self.cells.keys().map(|(_, c)| c.as_str()).collect()
    }

    /// `region -> cell` for one category.
    pub fn category(&self, category: &str) -> BTreeMap<&str, &PrevalenceCell> {
        self.cells
            .iter()
            .filter(|((_, c), _)| c == category)
            .map(|((r, _), cell)| (r.as_str(), cell))
            .collect()
    }
}

/// Rates per 1,000 residents with per-category deciles. Regions without
/// pages in a category appear with zero.
pub fn per_capita(
    counts: &FractionalCounts,
    regions: &RegionTable,
) -> Result<PrevalenceTable, PrevalenceError> {
    if let Some(missing) = counts
        .regions()
        .into_iter()
        .find(|r| regions.get(r).is_none())
    {
        return Err(PrevalenceError::MissingRegion(missing.to_string()));
    }
    let mut table = PrevalenceTable::default();
    for category in counts.categories() {
        let mut rates = BTreeMap::new();
        let mut weights = BTreeMap::new();
        for (region, info) in regions.iter() {
            let w = counts.weighted_count(region, category);
            rates.insert(region.to_string(), 1000.0 * w / info.population as f64);
            weights.insert(region, w);
        }
        let deciles = decile_assign(&rates);
        for (region, per_1000) in rates {
            let cell = PrevalenceCell {
                weighted_count: weights[region.as_str()],
                per_1000,
                decile: deciles[&region],
            };
            table.cells.insert((region, category.to_string()), cell);
        }
    }
    Ok(table)
}

/// Rank-based deciles: ascending by value, ties by id, rank `r` of `n` maps
/// to `ceil(10 r / n)`.
pub fn decile_assign(values: &BTreeMap<String, f64>) -> BTreeMap<String, u8> {
    let mut order: Vec<(&String, f64)> = values.iter().map(|(k, &v)| (k, v)).collect();
    order.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(b.0)));
    let n = order.len();
    order
        .into_iter()
        .enumerate()
        .map(|(i, (id, _))| {
            let d = (10 * (i + 1)).div_ceil(n).clamp(1, 10);
            (id.clone(), d as u8)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinKey {
    Rucc,
    IncomeDecile,
    EducationDecile,
    ForeignBornDecile,
}

impl BinKey {
    pub const ALL: [BinKey; 4] = [
        BinKey::Rucc,
        BinKey::IncomeDecile,
        BinKey::EducationDecile,
        BinKey::ForeignBornDecile,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BinKey::Rucc => "rucc",
            BinKey::IncomeDecile => "income_decile",
            BinKey::EducationDecile => "education_decile",
            BinKey::ForeignBornDecile => "foreign_born_decile",
        }
    }
}

impl fmt::Display for BinKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BinKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BinKey::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown bin key {s:?}"))
    }
}

/// Median rate per category, keyed by bin.
pub type BinMedians = BTreeMap<u8, BTreeMap<String, f64>>;

/// Median rate per bin and category. Uses the lower middle value for even
/// counts. Regions in `p` but not in `regions` are ignored.
pub fn bin_medians(p: &PrevalenceTable, regions: &RegionTable, key: BinKey) -> BinMedians {
    let bins: BTreeMap<String, u8> = match key {
        BinKey::Rucc => regions
            .iter()
            .map(|(id, r)| (id.to_string(), r.rucc))
            .collect(),
        _ => {
            let attr = |r: &RegionInfo| match key {
                BinKey::IncomeDecile => r.income,
                BinKey::EducationDecile => r.education,
                _ => r.foreign_born,
            };
            let values = regions
                .iter()
                .map(|(id, r)| (id.to_string(), attr(r)))
                .collect();
            decile_assign(&values)
        }
    };
    let mut grouped: BTreeMap<u8, BTreeMap<String, Vec<f64>>> = BTreeMap::new();
    for ((region, category), cell) in &p.cells {
        if let Some(&bin) = bins.get(region) {
            grouped
                .entry(bin)
                .or_default()
                .entry(category.clone())
                .or_default()
                .push(cell.per_1000);
        }
    }
    grouped
        .into_iter()
        .map(|(bin, cats)| {
            let medians = cats
                .into_iter()
                .map(|(c, v)| (c, lower_median(v)))
                .collect();
            (bin, medians)
        })
        .collect()
}

fn lower_median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[(v.len() - 1) / 2]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogCorrelation {
    pub r: f64,
    pub n_pairs: usize,
    /// Shared regions left out because a value was not positive.
    pub n_dropped: usize,
}

/// Pearson correlation of `ln x` and `ln y` over regions present in both.
pub fn log_pearson(
    x: &BTreeMap<String, f64>,
    y: &BTreeMap<String, f64>,
) -> Result<LogCorrelation, PrevalenceError> {
    let mut pairs = Vec::new();
    let mut dropped = 0;
    for (region, &xv) in x {
        let Some(&yv) = y.get(region) else { continue };
        if xv > 0.0 && yv > 0.0 {
            pairs.push((xv.ln(), yv.ln()));
        } else {
            dropped += 1;
        }
    }
    if pairs.len() < 2 {
        return Err(PrevalenceError::TooFewPairs(pairs.len()));
    }
    let constant = |f: fn(&(f64, f64)) -> f64| pairs.iter().all(|p| f(p) == f(&pairs[0]));
    if constant(|p| p.0) || constant(|p| p.1) {
        return Err(PrevalenceError::ZeroVariance);
    }
    let n = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in &pairs {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    Ok(LogCorrelation {
        r: (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0),
        n_pairs: pairs.len(),
        n_dropped: dropped,
    })
}
