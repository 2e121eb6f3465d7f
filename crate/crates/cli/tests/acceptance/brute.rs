//! Slow, direct reimplementations of every graph feature on adjacency
//! bitmasks (at most 32 nodes). Nothing here calls into the library.

#![allow(clippy::needless_range_loop)]

use nalgebra::{DMatrix, SymmetricEigen};

/// `adj[v]` has bit `u` set iff `u ~ v`. Node `i` is the `i`-th id in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bits {
    pub adj: Vec<u32>,
}

impl Bits {
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn deg(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn m(&self) -> usize {
        (0..self.n()).map(|v| self.deg(v)).sum::<usize>() / 2
    }

    pub fn edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                if self.edge(u, v) {
                    e.push((u, v));
                }
            }
        }
        e
    }
}

/// Components as node lists, ordered by smallest member, restricted to
/// nodes in `alive`.
fn components(adj: &[u32], alive: u32) -> Vec<Vec<usize>> {
    let mut seen = 0u32;
    let mut out = Vec::new();
    for s in 0..adj.len() {
        if alive >> s & 1 == 0 || seen >> s & 1 == 1 {
            continue;
        }
        let mut comp = 0u32;
        let mut frontier = 1u32 << s;
        while frontier != 0 {
            comp |= frontier;
            let mut next = 0;
            for v in 0..adj.len() {
                if frontier >> v & 1 == 1 {
                    next |= adj[v] & alive;
                }
            }
            frontier = next & !comp;
        }
        seen |= comp;
        out.push((0..adj.len()).filter(|&v| comp >> v & 1 == 1).collect());
    }
    out
}

fn all(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn lcc(g: &Bits) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for c in components(&g.adj, all(g.n())) {
        if c.len() > best.len() {
            best = c;
        }
    }
    best
}

fn clustering(g: &Bits) -> f64 {
    let n = g.n();
    if n == 0 {
        return 0.0;
    }
    let mut total = 0.0;
    for v in 0..n {
        let nb: Vec<usize> = (0..n).filter(|&u| g.edge(v, u)).collect();
        let d = nb.len();
        if d < 2 {
            continue;
        }
        let mut tri = 0;
        for a in 0..d {
            for b in a + 1..d {
                if g.edge(nb[a], nb[b]) {
                    tri += 1;
                }
            }
        }
        total += tri as f64 / (d * (d - 1) / 2) as f64;
    }
    total / n as f64
}

fn assortativity(g: &Bits) -> f64 {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            xs.push(g.deg(a) as f64);
            ys.push(g.deg(b) as f64);
        }
    }
    if xs.is_empty() || xs.iter().all(|&x| x == xs[0]) {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

fn path_length(g: &Bits, nodes: &[usize]) -> f64 {
    let k = nodes.len();
    if k < 2 {
        return 0.0;
    }
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; k]; k];
    for i in 0..k {
        d[i][i] = 0;
        for j in 0..k {
            if g.edge(nodes[i], nodes[j]) {
                d[i][j] = 1;
            }
        }
    }
    for via in 0..k {
        for i in 0..k {
            for j in 0..k {
                if d[i][via] + d[via][j] < d[i][j] {
                    d[i][j] = d[i][via] + d[via][j];
                }
            }
        }
    }
    let total: usize = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| d[i][j])
        .sum();
    total as f64 / (k * (k - 1)) as f64
}

pub fn lambda2(g: &Bits, nodes: &[usize]) -> f64 {
    let k = nodes.len();
    if k < 2 {
        return 0.0;
    }
    let lap = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            g.deg(nodes[i]) as f64
        } else if g.edge(nodes[i], nodes[j]) {
            -1.0
        } else {
            0.0
        }
    });
    let mut ev: Vec<f64> = SymmetricEigen::new(lap)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev[1]
}

/// `4 m^2 Q` of a labelling, as an exact integer.
fn scaled_q(g: &Bits, labels: &[usize]) -> i128 {
    let m = g.m() as i128;
    let k = labels.iter().max().map_or(0, |x| x + 1);
    let mut l = vec![0i128; k];
    let mut d = vec![0i128; k];
    for v in 0..g.n() {
        d[labels[v]] += g.deg(v) as i128;
    }
    for (u, v) in g.edges() {
        if labels[u] == labels[v] {
            l[labels[u]] += 1;
        }
    }
    (0..k).map(|c| 4 * m * l[c] - d[c] * d[c]).sum()
}

fn q_of(g: &Bits, scaled: i128) -> f64 {
    let m = g.m() as i128;
    scaled as f64 / (4 * m * m) as f64
}

/// Maximum modularity over every set partition of the non-isolated nodes.
pub fn exhaustive_modularity(g: &Bits) -> f64 {
    if g.m() == 0 {
        return 0.0;
    }
    let nodes: Vec<usize> = (0..g.n()).filter(|&v| g.deg(v) > 0).collect();
    let m4 = 4 * g.m() as i128;
    struct Search<'a> {
        g: &'a Bits,
        nodes: &'a [usize],
        m4: i128,
        masks: Vec<u32>,
        degs: Vec<i128>,
        best: i128,
    }
    impl Search<'_> {
        fn go(&mut self, i: usize, s: i128) {
            if i == self.nodes.len() {
                self.best = self.best.max(s);
                return;
            }
            let v = self.nodes[i];
            let dv = self.g.deg(v) as i128;
            for b in 0..self.masks.len() {
                let links = (self.g.adj[v] & self.masks[b]).count_ones() as i128;
                let db = self.degs[b];
                let delta = self.m4 * links - (2 * db * dv + dv * dv);
                self.masks[b] |= 1 << v;
                self.degs[b] += dv;
                self.go(i + 1, s + delta);
                self.masks[b] &= !(1 << v);
                self.degs[b] -= dv;
            }
            self.masks.push(1 << v);
            self.degs.push(dv);
            self.go(i + 1, s - dv * dv);
            self.masks.pop();
            self.degs.pop();
        }
    }
    let mut search = Search {
        g,
        nodes: &nodes,
        m4,
        masks: Vec::new(),
        degs: Vec::new(),
        best: i128::MIN,
    };
    search.go(0, 0);
    q_of(g, search.best)
}

/// Textbook greedy agglomeration: recompute every candidate gain each
/// round, merge the best connected pair (ties to the smallest pair of
/// community minima), stop when no merge is strictly positive.
pub fn greedy_modularity(g: &Bits) -> f64 {
    let m = g.m() as i128;
    if m == 0 {
        return 0.0;
    }
    let n = g.n();
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let alive: Vec<usize> = (0..n).filter(|&c| label.contains(&c)).collect();
        let mut best: Option<(i128, usize, usize)> = None;
        for (x, &i) in alive.iter().enumerate() {
            for &j in &alive[x + 1..] {
                let mut c = 0i128;
                let (mut di, mut dj) = (0i128, 0i128);
                for u in 0..n {
                    if label[u] == i {
                        di += g.deg(u) as i128;
                        for v in 0..n {
                            if label[v] == j && g.edge(u, v) {
                                c += 1;
                            }
                        }
                    }
                    if label[u] == j {
                        dj += g.deg(u) as i128;
                    }
                }
                if c == 0 {
                    continue;
                }
                let gain = 2 * m * c - di * dj;
                if best.is_none_or(|(b, _, _)| gain > b) {
                    best = Some((gain, i, j));
                }
            }
        }
        match best {
            Some((gain, i, j)) if gain > 0 => {
                for l in label.iter_mut() {
                    if *l == j {
                        *l = i;
                    }
                }
            }
            _ => break,
        }
    }
    q_of(g, scaled_q(g, &label))
}

/// Components of the k-core, found by deleting one low-degree node at a
/// time until none is left.
fn kcore(g: &Bits, k: usize) -> usize {
    let mut alive = all(g.n());
    loop {
        let victim =
            (0..g.n()).find(|&v| alive >> v & 1 == 1 && (g.adj[v] & alive).count_ones() < k as u32);
        match victim {
            Some(v) => alive &= !(1 << v),
            None => break,
        }
    }
    components(&g.adj, alive).len()
}

/// Components of the k-brace, found by deleting one weakly embedded edge
/// at a time, then dropping isolated nodes.
fn kbrace(g: &Bits, k: usize) -> usize {
    let mut adj = g.adj.clone();
    loop {
        let mut victim = None;
        'scan: for u in 0..g.n() {
            for v in u + 1..g.n() {
                if adj[u] >> v & 1 == 1 && (adj[u] & adj[v]).count_ones() < k as u32 {
                    victim = Some((u, v));
                    break 'scan;
                }
            }
        }
        match victim {
            Some((u, v)) => {
                adj[u] &= !(1 << v);
                adj[v] &= !(1 << u);
            }
            None => break,
        }
    }
    let touched = adj
        .iter()
        .enumerate()
        .filter(|(_, a)| **a != 0)
        .fold(0u32, |acc, (v, _)| acc | 1 << v);
    components(&adj, touched).len()
}

/// The 18 default features, in library vector order.
pub fn features(g: &Bits) -> Vec<f64> {
    let n = g.n();
    let m = g.m();
    let degs: Vec<f64> = (0..n).map(|v| g.deg(v) as f64).collect();
    let mean = if n == 0 {
        0.0
    } else {
        degs.iter().sum::<f64>() / n as f64
    };
    let var = if n == 0 {
        0.0
    } else {
        degs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n as f64
    };
    let density = if n < 2 {
        0.0
    } else {
        2.0 * m as f64 / (n * (n - 1)) as f64
    };
    let big = lcc(g);
    let mut out = vec![
        n as f64,
        m as f64,
        density,
        mean,
        var,
        clustering(g),
        assortativity(g),
        path_length(g, &big),
        lambda2(g, &big),
        greedy_modularity(g),
    ];
    for k in [2, 4, 8, 16] {
        out.push(kcore(g, k) as f64);
    }
    for k in [2, 4, 8, 16] {
        out.push(kbrace(g, k) as f64);
    }
    out
}
