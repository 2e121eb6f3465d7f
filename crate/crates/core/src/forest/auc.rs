use super::ClassifyError;

/// Area under the ROC curve in its Mann-Whitney form: the fraction of
/// (positive, negative) pairs where the positive scores higher, ties
/// counting one half.
pub fn roc_auc(scores: &[f64], labels: &[bool]) -> Result<f64, ClassifyError> {
    if scores.len() != labels.len() {
        return Err(ClassifyError::LengthMismatch {
            samples: scores.len(),
            labels: labels.len(),
        });
    }
    let n_pos = labels.iter().filter(|&&l| l).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(ClassifyError::SingleClass);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));

    // U counted in half-units so the statistic stays an exact integer
    let mut twice_u: u128 = 0;
    let mut negatives_below: u128 = 0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && scores[order[j]].total_cmp(&scores[order[i]]).is_eq() {
            j += 1;
        }
        let group = &order[i..j];
        let pos_in = group.iter().filter(|&&k| labels[k]).count() as u128;
        let neg_in = group.len() as u128 - pos_in;
        twice_u += pos_in * (2 * negatives_below + neg_in);
        negatives_below += neg_in;
        i = j;
    }
    let pairs = n_pos as u128 * n_neg as u128;
    Ok(twice_u as f64 / 2.0 / pairs as f64)
}
