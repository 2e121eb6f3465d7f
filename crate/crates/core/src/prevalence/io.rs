use std::collections::BTreeMap;

use crate::format::{self, fmt_real, parse_real, FormatError};

use super::{
    BinKey, BinMedians, LogCorrelation, PlaceRecord, PrevalenceError, PrevalenceTable, RegionInfo,
    RegionTable, MAX_CATEGORIES,
};

fn field(rec: &csv::StringRecord, i: usize) -> &str {
    rec.get(i).unwrap_or_default().trim()
}

fn non_empty<'a>(
    rec: &'a csv::StringRecord,
    i: usize,
    line: usize,
    what: &str,
) -> Result<&'a str, FormatError> {
    let v = field(rec, i);
    if v.is_empty() {
        return Err(FormatError::new(line, format!("empty {what}")));
    }
    Ok(v)
}

/// `page_id,region_id,categories` with categories joined by `;`.
pub fn read_places_csv(text: &str) -> Result<Vec<PlaceRecord>, FormatError> {
    let mut rdr = format::csv_reader(text);
    format::expect_header(&mut rdr, &["page_id", "region_id", "categories"])?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| FormatError::from_csv(&e))?;
        let line = format::record_line(&rec);
        let page_id = non_empty(&rec, 0, line, "page_id")?;
        let region_id = non_empty(&rec, 1, line, "region_id")?;
        let categories: Vec<String> = field(&rec, 2)
            .split(';')
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .map(String::from)
            .collect();
        if categories.is_empty() || categories.len() > MAX_CATEGORIES {
            return Err(FormatError::new(
                line,
                format!(
                    "page {page_id:?}: expected 1 to {MAX_CATEGORIES} categories, found {}",
                    categories.len()
                ),
            ));
        }
        out.push(PlaceRecord {
            page_id: page_id.to_string(),
            region_id: region_id.to_string(),
            categories,
        });
    }
    Ok(out)
}

/// `region_id,population,rucc,income,education,foreign_born_share`.
pub fn read_regions_csv(text: &str) -> Result<RegionTable, PrevalenceError> {
    let mut rdr = format::csv_reader(text);
    format::expect_header(
        &mut rdr,
        &[
            "region_id",
            "population",
            "rucc",
            "income",
            "education",
            "foreign_born_share",
        ],
    )?;
    let mut regions = BTreeMap::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| FormatError::from_csv(&e))?;
        let line = format::record_line(&rec);
        let id = non_empty(&rec, 0, line, "region_id")?;
        let population: u64 = field(&rec, 1)
            .parse()
            .ok()
            .filter(|&p| p > 0)
            .ok_or_else(|| FormatError::new(line, "population must be a positive integer"))?;
        let rucc: u8 = field(&rec, 2)
            .parse()
            .ok()
            .filter(|r| (1..=9).contains(r))
            .ok_or_else(|| FormatError::new(line, "rucc must be an integer in 1..=9"))?;
        let info = RegionInfo {
            population,
            rucc,
            income: parse_real(field(&rec, 3), line, "income")?,
            education: parse_real(field(&rec, 4), line, "education")?,
            foreign_born: parse_real(field(&rec, 5), line, "foreign_born_share")?,
        };
        if regions.insert(id.to_string(), info).is_some() {
            return Err(FormatError::new(line, format!("duplicate region {id:?}")).into());
        }
    }
    RegionTable::new(regions)
}

/// `region_id,category,count`; returns `category -> region -> count`.
pub fn read_external_csv(
    text: &str,
) -> Result<BTreeMap<String, BTreeMap<String, f64>>, FormatError> {
    let mut rdr = format::csv_reader(text);
    format::expect_header(&mut rdr, &["region_id", "category", "count"])?;
    let mut out: BTreeMap<String, BTreeMap<String, f64>> = BTreeMap::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| FormatError::from_csv(&e))?;
        let line = format::record_line(&rec);
        let region = non_empty(&rec, 0, line, "region_id")?;
        let category = non_empty(&rec, 1, line, "category")?;
        let count = parse_real(field(&rec, 2), line, "count")?;
        if count < 0.0 {
            return Err(FormatError::new(line, "negative count"));
        }
        let slot = out.entry(category.to_string()).or_default();
        if slot.insert(region.to_string(), count).is_some() {
            return Err(FormatError::new(
                line,
                format!("duplicate entry for region {region:?}, category {category:?}"),
            ));
        }
    }
    Ok(out)
}

pub fn write_prevalence_csv(t: &PrevalenceTable) -> String {
    let mut w = format::csv_writer();
    w.write_record([
        "region_id",
        "category",
        "weighted_count",
        "per_1000",
        "decile",
    ])
    .expect("in-memory");
    for ((region, category), cell) in &t.cells {
        w.write_record([
            region.as_str(),
            category,
            &fmt_real(cell.weighted_count),
            &fmt_real(cell.per_1000),
            &cell.decile.to_string(),
        ])
        .expect("in-memory");
    }
    format::finish(w)
}

pub fn write_medians_csv(medians: &[(BinKey, BinMedians)]) -> String {
    let mut w = format::csv_writer();
    w.write_record(["bin_key", "bin", "category", "median_per_1000"])
        .expect("in-memory");
    for (key, bins) in medians {
        for (bin, cats) in bins {
            for (category, m) in cats {
                w.write_record([key.as_str(), &bin.to_string(), category, &fmt_real(*m)])
                    .expect("in-memory");
            }
        }
    }
    format::finish(w)
}

pub fn write_correlation_csv(rows: &[(String, LogCorrelation)]) -> String {
    let mut w = format::csv_writer();
    w.write_record(["category", "r", "n_pairs", "n_dropped"])
        .expect("in-memory");
    for (category, c) in rows {
        w.write_record([
            category.as_str(),
            &fmt_real(c.r),
            &c.n_pairs.to_string(),
            &c.n_dropped.to_string(),
        ])
        .expect("in-memory");
    }
    format::finish(w)
}
