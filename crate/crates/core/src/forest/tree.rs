//! Axis-aligned binary decision trees grown with Gini impurity.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    /// Fraction of positive training samples that reached the leaf.
    Leaf { positive: f64 },
    /// `x[feature] <= threshold` goes left.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    nodes: Vec<TreeNode>,
}

impl DecisionTree {
    /// A single-leaf tree.
    pub fn leaf(positive: f64) -> Self {
        DecisionTree {
            nodes: vec![TreeNode::Leaf { positive }],
        }
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn predict(&self, x: &[f64]) -> f64 {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                TreeNode::Leaf { positive } => return positive,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => at = if x[feature] <= threshold { left } else { right },
            }
        }
    }
}

pub(crate) struct TreeSettings {
    pub max_depth: Option<usize>,
    pub min_leaf: usize,
    pub features_per_split: usize,
}

/// Twice the Gini impurity times the node size: `2 pos neg / n`.
fn weighted_gini(pos: usize, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    2.0 * pos as f64 * (n - pos) as f64 / n as f64
}

struct Candidate {
    feature: usize,
    threshold: f64,
    gain: f64,
}

pub(crate) struct Grower<'a> {
    samples: &'a [Vec<f64>],
    labels: &'a [bool],
    settings: &'a TreeSettings,
    rng: ChaCha8Rng,
    nodes: Vec<TreeNode>,
    /// Impurity decrease per feature, unnormalized.
    pub importance: Vec<f64>,
}

impl<'a> Grower<'a> {
    pub fn new(
        samples: &'a [Vec<f64>],
        labels: &'a [bool],
        settings: &'a TreeSettings,
        rng: ChaCha8Rng,
    ) -> Self {
        let d = samples.first().map_or(0, Vec::len);
        Grower {
            samples,
            labels,
            settings,
            rng,
            nodes: Vec::new(),
            importance: vec![0.0; d],
        }
    }

    pub fn grow(mut self, indices: Vec<usize>) -> (DecisionTree, Vec<f64>) {
        self.build(indices, 0);
        (DecisionTree { nodes: self.nodes }, self.importance)
    }

    fn build(&mut self, indices: Vec<usize>, depth: usize) -> usize {
        let n = indices.len();
        let pos = indices.iter().filter(|&&i| self.labels[i]).count();
        let id = self.nodes.len();
        self.nodes.push(TreeNode::Leaf {
            positive: if n == 0 { 0.5 } else { pos as f64 / n as f64 },
        });
        let depth_ok = self.settings.max_depth.is_none_or(|m| depth < m);
        if pos == 0 || pos == n || n < 2 * self.settings.min_leaf || !depth_ok {
            return id;
        }
        let Some(best) = self.best_split(&indices, pos) else {
            return id;
        };
        self.importance[best.feature] += best.gain;
        let (left, right): (Vec<usize>, Vec<usize>) = indices
            .into_iter()
            .partition(|&i| self.samples[i][best.feature] <= best.threshold);
        let l = self.build(left, depth + 1);
        let r = self.build(right, depth + 1);
        self.nodes[id] = TreeNode::Split {
            feature: best.feature,
            threshold: best.threshold,
            left: l,
            right: r,
        };
        id
    }

    /// Draws features in random order until `features_per_split`
    /// non-constant ones are found, then scans them in index order.
    fn best_split(&mut self, indices: &[usize], pos: usize) -> Option<Candidate> {
        let d = self.importance.len();
        let mut order: Vec<usize> = (0..d).collect();
        order.shuffle(&mut self.rng);
        let mut chosen = Vec::new();
        for f in order {
            let first = self.samples[indices[0]][f];
            if indices.iter().any(|&i| self.samples[i][f] != first) {
                chosen.push(f);
                if chosen.len() == self.settings.features_per_split {
                    break;
                }
            }
        }
        chosen.sort_unstable();

        let n = indices.len();
        let parent = weighted_gini(pos, n);
        let mut best: Option<Candidate> = None;
        let mut sorted: Vec<usize> = indices.to_vec();
        for f in chosen {
            sorted.sort_by(|&a, &b| self.samples[a][f].total_cmp(&self.samples[b][f]));
            let mut left_pos = 0;
            for split in 1..n {
                if self.labels[sorted[split - 1]] {
                    left_pos += 1;
                }
                let lo = self.samples[sorted[split - 1]][f];
                let hi = self.samples[sorted[split]][f];
                if lo == hi || split < self.settings.min_leaf || n - split < self.settings.min_leaf
                {
                    continue;
                }
                let gain = parent
                    - weighted_gini(left_pos, split)
                    - weighted_gini(pos - left_pos, n - split);
                let better = match &best {
                    None => true,
                    Some(b) => gain > b.gain + 1e-12 * parent.max(1.0),
                };
                if better {
                    let mut threshold = lo + (hi - lo) / 2.0;
                    if threshold >= hi {
                        threshold = lo;
                    }
                    best = Some(Candidate {
                        feature: f,
                        threshold,
                        gain: gain.max(0.0),
                    });
                }
            }
        }
        best
    }
}
