use super::{Ensemble, ImportanceVector, SimilarityError};

/// Population the per-feature ranks are computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankScope {
    /// All graphs of all categories together.
    #[default]
    Pooled,
    PerCategory,
}

/// How importance weights enter the rank distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Weighting {
    /// `sqrt(sum w (r - mean)^2)`
    #[default]
    Squared,
    /// `sqrt(sum (w (r - mean))^2)`
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RepresentOptions {
    pub scope: RankScope,
    pub weighting: Weighting,
}

/// 1-based ranks in ascending order; tied values share their mean rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && values[order[j]].total_cmp(&values[order[i]]).is_eq() {
            j += 1;
        }
        // positions i..j hold ranks i+1..=j
        let mean = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = mean;
        }
        i = j;
    }
    ranks
}

/// The graph of `category` whose feature-rank vector is closest to the
/// category's mean rank vector under importance-weighted L2 distance.
/// Ties go to the smallest graph id.
pub fn representative_graph(
    ensemble: &Ensemble,
    category: &str,
    importance: &ImportanceVector,
    opts: RepresentOptions,
) -> Result<String, SimilarityError> {
    let members = ensemble
        .members(category)
        .ok_or_else(|| SimilarityError::UnknownCategory(category.to_string()))?;
    if members.is_empty() {
        return Err(SimilarityError::EmptyCategory(category.to_string()));
    }
    let d = ensemble.feature_names().len();
    if importance.values.len() != d {
        return Err(SimilarityError::ImportanceLength {
            expected: d,
            found: importance.values.len(),
        });
    }

    // rows of the ranking population; the category's own rows come first
    let mut population: Vec<&[f64]> = members.iter().map(|m| m.features.as_slice()).collect();
    if opts.scope == RankScope::Pooled {
        for (name, others) in ensemble.categories() {
            if name != category {
                population.extend(others.iter().map(|m| m.features.as_slice()));
            }
        }
    }
    let k = members.len();
    let ranks: Vec<Vec<f64>> = (0..d)
        .map(|f| {
            let column: Vec<f64> = population.iter().map(|row| row[f]).collect();
            let mut r = average_ranks(&column);
            r.truncate(k);
            r
        })
        .collect();
    let mean: Vec<f64> = ranks
        .iter()
        .map(|r| r.iter().sum::<f64>() / k as f64)
        .collect();

    let mut best: Option<(f64, &str)> = None;
    for (i, m) in members.iter().enumerate() {
        let sum: f64 = (0..d)
            .map(|f| {
                let dev = ranks[f][i] - mean[f];
                let w = importance.values[f];
                match opts.weighting {
                    Weighting::Squared => w * dev * dev,
                    Weighting::Linear => (w * dev).powi(2),
                }
            })
            .sum();
        let dist = sum.sqrt();
        let better = match best {
            None => true,
            Some((bd, bid)) => dist < bd || (dist == bd && m.id.as_str() < bid),
        };
        if better {
            best = Some((dist, m.id.as_str()));
        }
    }
    Ok(best.map(|(_, id)| id.to_string()).unwrap_or_default())
}
