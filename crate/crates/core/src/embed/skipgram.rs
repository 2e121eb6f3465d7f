use rand::seq::SliceRandom;
use rand::Rng;

use super::{CategoryCorpus, EmbedError, EmbeddingModel};
use crate::seeds::rng;

/// Size of the unigram^0.75 lookup table used to draw negatives.
const TABLE_SIZE: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
pub struct SkipGramParams {
    pub dim: usize,
    pub epochs: usize,
    pub negatives: usize,
    /// Starting rate; decays linearly to `1e-4` of itself.
    pub learning_rate: f64,
    pub min_count: usize,
    pub seed: u64,
}

impl Default for SkipGramParams {
    fn default() -> Self {
        SkipGramParams {
            dim: 64,
            epochs: 15,
            negatives: 5,
            learning_rate: 0.025,
            min_count: 1,
            seed: 0,
        }
    }
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Skip-gram with negative sampling. Each label's exported vector is the
/// sum of its center and context vectors. Single-threaded; identical inputs and seed give identical vectors.
pub fn train_skipgram(
    corpus: &CategoryCorpus,
    params: &SkipGramParams,
) -> Result<EmbeddingModel, EmbedError> {
    if corpus.is_empty() {
        return Err(EmbedError::EmptyCorpus);
    }
    if params.dim == 0 || params.epochs == 0 || params.learning_rate <= 0.0 {
        return Err(EmbedError::InvalidParams(
            "dim, epochs and learning_rate must be positive".into(),
        ));
    }
    let counts = corpus.label_counts();
    let vocab: Vec<(String, usize)> = counts
        .into_iter()
        .filter(|&(_, c)| c >= params.min_count)
        .map(|(l, c)| (l.to_string(), c))
        .collect();
    if vocab.is_empty() {
        return Err(EmbedError::EmptyVocabulary(params.min_count));
    }
    let labels: Vec<String> = vocab.iter().map(|(l, _)| l.clone()).collect();
    let lookup = |l: &str| labels.binary_search_by(|x| x.as_str().cmp(l)).ok();

    let records: Vec<Vec<usize>> = corpus
        .records()
        .iter()
        .map(|r| r.iter().filter_map(|l| lookup(l)).collect::<Vec<_>>())
        .filter(|r| r.len() >= 2)
        .collect();

    // negative sampling table proportional to count^0.75
    let weights: Vec<f64> = vocab.iter().map(|(_, c)| (*c as f64).powf(0.75)).collect();
    let total_w: f64 = weights.iter().sum();
    let mut table = Vec::with_capacity(TABLE_SIZE);
    let mut cumulative = 0.0;
    for (i, w) in weights.iter().enumerate() {
        cumulative += w / total_w;
        let upto = ((cumulative * TABLE_SIZE as f64).round() as usize).min(TABLE_SIZE);
        while table.len() < upto {
            table.push(i);
        }
    }
    while table.len() < TABLE_SIZE {
        table.push(vocab.len() - 1);
    }

    let mut r = rng(params.seed);
    let d = params.dim;
    let v = labels.len();
    let mut input: Vec<Vec<f64>> = (0..v)
        .map(|_| {
            (0..d)
                .map(|_| (r.random::<f64>() - 0.5) / d as f64)
                .collect()
        })
        .collect();
    let mut output = vec![vec![0.0; d]; v];

    let pairs_per_epoch: usize = records.iter().map(|rec| rec.len() * (rec.len() - 1)).sum();
    let total_steps = (pairs_per_epoch * params.epochs).max(1);
    let mut step = 0usize;
    let mut order: Vec<usize> = (0..records.len()).collect();
    let mut epoch_losses = Vec::with_capacity(params.epochs);
    let mut grad = vec![0.0; d];

    for _ in 0..params.epochs {
        order.shuffle(&mut r);
        let mut loss = 0.0;
        let mut terms = 0usize;
        for &ri in &order {
            let rec = &records[ri];
            for &center in rec {
                for &context in rec {
                    if center == context {
                        continue;
                    }
                    let lr =
                        params.learning_rate * (1.0 - step as f64 / total_steps as f64).max(1e-4);
                    step += 1;
                    grad.iter_mut().for_each(|g| *g = 0.0);
                    for n in 0..=params.negatives {
                        let (target, label) = if n == 0 {
                            (context, 1.0)
                        } else {
                            let t = table[r.random_range(0..TABLE_SIZE)];
                            if t == context {
                                continue;
                            }
                            (t, 0.0)
                        };
                        let dot: f64 = input[center]
                            .iter()
                            .zip(&output[target])
                            .map(|(a, b)| a * b)
                            .sum();
                        let p = sigmoid(dot);
                        let prob = if label == 1.0 { p } else { 1.0 - p };
                        loss -= prob.max(1e-12).ln();
                        let g = (label - p) * lr;
                        for k in 0..d {
                            grad[k] += g * output[target][k];
                            output[target][k] += g * input[center][k];
                        }
                    }
                    for k in 0..d {
                        input[center][k] += grad[k];
                    }
                    terms += 1;
                }
            }
        }
        epoch_losses.push(if terms == 0 { 0.0 } else { loss / terms as f64 });
    }

    // input + output keeps first-order co-occurrence visible in cosine space
    let vectors = input
        .into_iter()
        .zip(output)
        .map(|(i, o)| i.iter().zip(&o).map(|(a, b)| a + b).collect())
        .collect();
    let mut model = EmbeddingModel::new(labels, vectors)?;
    model.epoch_losses = epoch_losses;
    Ok(model)
}
