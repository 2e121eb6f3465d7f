//! Algebraic connectivity: the second-smallest eigenvalue of the
//! combinatorial Laplacian `L = D - A`.
//!
//! Small graphs go through a dense Householder reduction followed by implicit
//! QL on the tridiagonal form. Larger ones use restarted Lanczos with full
//! reorthogonalization, run on the orthogonal complement of the all-ones
//! vector so the trivial zero eigenvalue never appears.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralMethod {
    /// Dense up to `dense_limit` nodes, Lanczos beyond.
    Auto,
    Dense,
    Lanczos,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub dense_limit: usize,
    pub method: SpectralMethod,
    /// Krylov subspace size per Lanczos restart.
    pub lanczos_window: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            tolerance: 1e-8,
            max_iterations: 10_000,
            dense_limit: 1_000,
            method: SpectralMethod::Auto,
            lanczos_window: 80,
        }
    }
}

/// Which subgraph the eigenvalue is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpectralScope {
    #[default]
    LargestComponent,
    /// Zero for any disconnected graph.
    WholeGraph,
}

/// Second-smallest Laplacian eigenvalue of `g` under `scope`. Graphs whose
/// relevant part has fewer than two nodes give 0.
pub fn algebraic_connectivity(
    g: &Graph,
    scope: SpectralScope,
    opts: &SpectralOptions,
) -> Result<f64, SpectralError> {
    let target = match scope {
        SpectralScope::LargestComponent => g.largest_connected_component(),
        SpectralScope::WholeGraph => {
            if g.n_nodes() >= 2 && g.connected_components().len() > 1 {
                return Ok(0.0);
            }
            g.clone()
        }
    };
    fiedler_value(&target, opts)
}

/// λ2 of a connected graph.
pub fn fiedler_value(g: &Graph, opts: &SpectralOptions) -> Result<f64, SpectralError> {
    let n = g.n_nodes();
    if n < 2 {
        return Ok(0.0);
    }
    let dense = match opts.method {
        SpectralMethod::Dense => true,
        SpectralMethod::Lanczos => false,
        SpectralMethod::Auto => n <= opts.dense_limit,
    };
    let value = if dense {
        dense_fiedler(g, opts.max_iterations)?
    } else {
        lanczos_fiedler(g, opts)?
    };
    Ok(value.max(0.0))
}

fn dense_fiedler(g: &Graph, max_iterations: usize) -> Result<f64, SpectralError> {
    let n = g.n_nodes();
    let mut a = vec![0.0; n * n];
    for u in 0..n {
        a[u * n + u] = g.degree(u) as f64;
        for &v in g.neighbors(u) {
            a[u * n + v] = -1.0;
        }
    }
    let (mut diag, mut off) = householder_tridiagonal(&mut a, n);
    tridiagonal_eigen(&mut diag, &mut off, None, max_iterations)?;
    diag.sort_by(f64::total_cmp);
    Ok(diag[1])
}

/// Reduces the symmetric row-major `a` (destroyed) to tridiagonal form.
/// Returns the diagonal and the sub-diagonal (`off[i]` couples `i` and `i+1`).
pub(crate) fn householder_tridiagonal(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[i * n + k].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in k + 1..n {
            v[i] = a[i * n + k];
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for x in &mut v[k + 1..n] {
            *x /= vnorm;
        }
        // p = A v on the trailing block, then w = p - (v.p) v
        for i in k + 1..n {
            p[i] = (k + 1..n).map(|j| a[i * n + j] * v[j]).sum();
        }
        let vp: f64 = (k + 1..n).map(|i| v[i] * p[i]).sum();
        for i in k + 1..n {
            p[i] -= vp * v[i];
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] -= 2.0 * (v[i] * p[j] + p[i] * v[j]);
            }
        }
        a[(k + 1) * n + k] = alpha;
        a[k * n + k + 1] = alpha;
        for i in k + 2..n {
            a[i * n + k] = 0.0;
            a[k * n + i] = 0.0;
        }
    }
    let diag = (0..n).map(|i| a[i * n + i]).collect();
    let mut off: Vec<f64> = (0..n.saturating_sub(1))
        .map(|i| a[(i + 1) * n + i])
        .collect();
    off.push(0.0);
    (diag, off)
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
/// Eigenvalues overwrite `d`. When `z` is given (row-major `n x n`, usually
/// the identity) its columns are rotated into the eigenvectors.
pub(crate) fn tridiagonal_eigen(
    d: &mut [f64],
    e: &mut [f64],
    mut z: Option<&mut [f64]>,
    max_iterations: usize,
) -> Result<(), SpectralError> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > max_iterations.max(30) {
                return Err(SpectralError::NotConverged {
                    iterations: iter,
                    residual: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn laplacian_apply(g: &Graph, x: &[f64], out: &mut [f64]) {
    for u in 0..g.n_nodes() {
        let s: f64 = g.neighbors(u).iter().map(|&v| x[v]).sum();
        out[u] = g.degree(u) as f64 * x[u] - s;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn remove_mean(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    for v in x.iter_mut() {
        *v -= mean;
    }
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = dot(x, x).sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
    norm
}

fn lanczos_fiedler(g: &Graph, opts: &SpectralOptions) -> Result<f64, SpectralError> {
    let n = g.n_nodes();
    let dim = n - 1;
    // deterministic start with no special symmetry
    let mut x: Vec<f64> = (0..n)
        .map(|i| {
            let t = (i as f64 + 1.0) * 0.618_033_988_749_894_9;
            (t - t.floor()) - 0.5 + 1e-3 * i as f64 / n as f64
        })
        .collect();
    remove_mean(&mut x);
    normalize(&mut x);

    let mut total = 0usize;
    let mut w = vec![0.0; n];
    loop {
        let window = opts.lanczos_window.max(2).min(dim);
        let mut basis: Vec<Vec<f64>> = vec![x.clone()];
        let mut alphas = Vec::with_capacity(window);
        let mut betas: Vec<f64> = Vec::with_capacity(window);
        let mut exhausted = false;
        for j in 0..window {
            laplacian_apply(g, &basis[j], &mut w);
            total += 1;
            let a = dot(&basis[j], &w);
            alphas.push(a);
            for (k, v) in w.iter_mut().enumerate() {
                *v -= a * basis[j][k];
                if j > 0 {
                    *v -= betas[j - 1] * basis[j - 1][k];
                }
            }
            for _ in 0..2 {
                for q in &basis {
                    let h = dot(q, &w);
                    for (k, v) in w.iter_mut().enumerate() {
                        *v -= h * q[k];
                    }
                }
                remove_mean(&mut w);
            }
            let b = dot(&w, &w).sqrt();
            if basis.len() == dim || b <= 1e-10 * a.abs().max(1.0) {
                exhausted = true;
                break;
            }
            if j + 1 == window {
                break;
            }
            betas.push(b);
            basis.push(w.iter().map(|v| v / b).collect());
        }

        let k = alphas.len();
        let mut d = alphas.clone();
        let mut e: Vec<f64> = betas[..k - 1].to_vec();
        e.push(0.0);
        let mut z = vec![0.0; k * k];
        for i in 0..k {
            z[i * k + i] = 1.0;
        }
        tridiagonal_eigen(&mut d, &mut e, Some(&mut z), opts.max_iterations)?;
        let smallest = (0..k).min_by(|&a, &b| d[a].total_cmp(&d[b])).unwrap_or(0);

        // Ritz vector
        let mut y = vec![0.0; n];
        for (i, q) in basis.iter().enumerate().take(k) {
            let coef = z[i * k + smallest];
            for (yv, qv) in y.iter_mut().zip(q) {
                *yv += coef * qv;
            }
        }
        remove_mean(&mut y);
        normalize(&mut y);
        laplacian_apply(g, &y, &mut w);
        let rq = dot(&y, &w);
        let residual = w
            .iter()
            .zip(&y)
            .map(|(lv, yv)| (lv - rq * yv).powi(2))
            .sum::<f64>()
            .sqrt();

        if exhausted || residual <= opts.tolerance {
            return Ok(rq);
        }
        if total >= opts.max_iterations {
            return Err(SpectralError::NotConverged {
                iterations: total,
                residual,
            });
        }
        x = y;
    }
}
