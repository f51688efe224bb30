//! Slow, independent reference implementations ("oracles") used to verify
//! the fast paths: dense double-sum cut metrics, exhaustive bipartition
//! enumeration, plain projected-(sub)gradient solvers for the inner
//! problems, and deterministic random instance generators. Everything here
//! favors obviousness over speed and shares no code with the implementations
//! it checks.

use rand::Rng;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::SparseGraph;
use crate::linalg::SymMatrix;
use crate::scalar::{norm2, sign0, Real};
use crate::sparse_pca::DataMatrix;

/// Largest vertex count accepted by the exhaustive bipartition enumeration;
/// 2^(n−1) subsets beyond this point stop being a desk-scale computation.
pub const BRUTE_FORCE_MAX_N: usize = 12;

/// Dense symmetric weight matrix of a graph.
pub fn dense_weights<S: Real>(g: &SparseGraph<S>) -> Vec<Vec<S>> {
    let n = g.n();
    let mut w = vec![vec![S::zero(); n]; n];
    for e in g.edges() {
        w[e.u][e.v] = e.w;
        w[e.v][e.u] = e.w;
    }
    w
}

/// Dense unnormalized Laplacian D − W.
pub fn dense_laplacian<S: Real>(g: &SparseGraph<S>) -> SymMatrix<S> {
    let n = g.n();
    let w = dense_weights(g);
    let mut l = SymMatrix::zeros(n);
    for i in 0..n {
        let mut d = S::zero();
        for j in 0..n {
            d += w[i][j];
            if j > i {
                l.set_sym(i, j, -w[i][j]);
            }
        }
        l.set_sym(i, i, d);
    }
    l
}

/// Cut weight by the full double sum ½ΣΣ w_ij·[mask_i ≠ mask_j].
pub fn oracle_cut<S: Real>(g: &SparseGraph<S>, mask: &[bool]) -> S {
    let w = dense_weights(g);
    let n = g.n();
    let mut total = S::zero();
    for i in 0..n {
        for j in 0..n {
            if mask[i] != mask[j] {
                total += w[i][j];
            }
        }
    }
    total / S::c(2.0)
}

/// Ratio Cheeger cut of a bipartition by the dense double sum.
pub fn oracle_rcc<S: Real>(g: &SparseGraph<S>, mask: &[bool]) -> Result<S> {
    let inside = mask.iter().filter(|&&m| m).count();
    if inside == 0 || inside == g.n() {
        return Err(Error::DegenerateCut);
    }
    let denom = inside.min(g.n() - inside);
    Ok(oracle_cut(g, mask) / S::c(denom as f64))
}

/// Multiway ratio cut Σ_c cut(C_c)/|C_c| by dense double sums.
pub fn oracle_rcut<S: Real>(g: &SparseGraph<S>, labels: &[usize]) -> Result<S> {
    let k = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut total = S::zero();
    for c in 0..k {
        let mask: Vec<bool> = labels.iter().map(|&l| l == c).collect();
        let size = mask.iter().filter(|&&m| m).count();
        if size == 0 {
            return Err(Error::EmptyCluster(c));
        }
        total += oracle_cut(g, &mask) / S::c(size as f64);
    }
    Ok(total)
}

/// Exhaustive minimum ratio Cheeger cut over all 2^(n−1) − 1 bipartitions.
/// Refuses graphs beyond [`BRUTE_FORCE_MAX_N`] vertices. Returns the optimal
/// value and the first optimal mask in enumeration order.
pub fn brute_force_hrcc<S: Real>(g: &SparseGraph<S>) -> Result<(S, Vec<bool>)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::DegenerateCut);
    }
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::InvalidConfig(format!(
            "exhaustive enumeration limited to n <= {BRUTE_FORCE_MAX_N}, got {n}"
        )));
    }
    let w = dense_weights(g);
    let mut best_value = S::infinity();
    let mut best_mask = vec![false; n];
    // Vertex n−1 is always outside the enumerated side, so each bipartition
    // appears exactly once.
    for bits in 1u32..(1u32 << (n - 1)) {
        let mask: Vec<bool> = (0..n).map(|i| i < n - 1 && (bits >> i) & 1 == 1).collect();
        let inside = mask.iter().filter(|&&m| m).count();
        let mut cut = S::zero();
        for i in 0..n {
            for j in 0..n {
                if mask[i] && !mask[j] {
                    cut += w[i][j];
                }
            }
        }
        let value = cut / S::c(inside.min(n - inside) as f64);
        if value < best_value {
            best_value = value;
            best_mask = mask;
        }
    }
    Ok((best_value, best_mask))
}

/// Best super-level-set cut of a vertex function by scanning every distinct
/// threshold value and recomputing the ratio from scratch.
pub fn brute_force_best_threshold<S: Real>(
    g: &SparseGraph<S>,
    f: &[S],
) -> Result<(S, Vec<bool>)> {
    let n = g.n();
    let mut best: Option<(S, Vec<bool>)> = None;
    let mut levels: Vec<S> = f.to_vec();
    levels.sort_by(|a, b| a.partial_cmp(b).expect("non-finite threshold"));
    levels.dedup();
    for &t in &levels {
        let mask: Vec<bool> = f.iter().map(|&v| v > t).collect();
        let inside = mask.iter().filter(|&&m| m).count();
        if inside == 0 || inside == n {
            continue;
        }
        let value = oracle_rcc(g, &mask)?;
        let better = match &best {
            None => true,
            Some((b, _)) => value < *b,
        };
        if better {
            best = Some((value, mask));
        }
    }
    best.ok_or(Error::ConstantVector)
}

/// Dual residual vector Aα − λv of the total-variation inner problem,
/// computed by its definition: edge e = (u, v) with u < v contributes
/// +w_e·α_e at u and −w_e·α_e at v.
pub fn oracle_dual_residual<S: Real>(
    g: &SparseGraph<S>,
    alpha: &[S],
    lambda: S,
    v: &[S],
) -> Vec<S> {
    let mut r: Vec<S> = v.iter().map(|&vi| -(lambda * vi)).collect();
    for (e, edge) in g.edges().iter().enumerate() {
        r[edge.u] += edge.w * alpha[e];
        r[edge.v] -= edge.w * alpha[e];
    }
    r
}

/// Plain projected-gradient descent (no acceleration, fixed step) on
/// min ‖Aα − λv‖² over the box ‖α‖∞ ≤ 1, from α = 0. Returns the final α
/// and achieved residual norm ‖Aα − λv‖₂.
pub fn projected_gradient_dual<S: Real>(
    g: &SparseGraph<S>,
    lambda: S,
    v: &[S],
    iters: usize,
) -> (Vec<S>, S) {
    let m = g.edges().len();
    let mut sq_degree = vec![S::zero(); g.n()];
    for e in g.edges() {
        sq_degree[e.u] += e.w * e.w;
        sq_degree[e.v] += e.w * e.w;
    }
    let l = S::c(2.0)
        * sq_degree
            .iter()
            .copied()
            .fold(S::zero(), |a, b| a.max(b));
    let step = if l > S::zero() { S::one() / l } else { S::one() };

    let mut alpha = vec![S::zero(); m];
    for _ in 0..iters {
        let r = oracle_dual_residual(g, &alpha, lambda, v);
        for (e, edge) in g.edges().iter().enumerate() {
            let grad = S::c(2.0) * edge.w * (r[edge.u] - r[edge.v]);
            let next = alpha[e] - step * grad;
            alpha[e] = next.max(-S::one()).min(S::one());
        }
    }
    let r = oracle_dual_residual(g, &alpha, lambda, v);
    (alpha, norm2(&r))
}

/// Smallest multiple of `lambda` for which the ball-constrained problem
/// min_{‖u‖₂ ≤ 1} (1−α)‖u‖₂ + α‖u‖₁ − λ⟨u, μ⟩ has a strictly negative
/// optimum, with a 20% sharpness margin.
///
/// The sparse-variance iteration only ever solves instances in that regime:
/// plugging the iterate that produced (λ, μ) back into the objective gives
/// exactly zero, so the running minimum is never positive. Below the
/// returned threshold the unique minimizer collapses to the zero vector and
/// there is no direction left to compare against.
pub fn lambda_with_negative_optimum<S: Real>(mu: &[S], lambda: S, alpha: f64) -> S {
    // On the unit sphere the optimum value is (1−α) − ‖t‖₂ with
    // t_i = (λ|μ_i| − α)₊, so a negative optimum means ‖t‖₂ > 1 − α.
    let a = S::c(alpha);
    let floor = S::c(1.2) * (S::one() - a);
    let mut lam = lambda;
    for _ in 0..200 {
        let mut sq = S::zero();
        for &m in mu {
            let t = (lam * m.abs() - a).max(S::zero());
            sq += t * t;
        }
        if sq.sqrt() >= floor {
            return lam;
        }
        lam *= S::c(1.3);
    }
    lam
}

/// Projected subgradient descent with a geometrically decaying step schedule
/// on min_{‖u‖₂ ≤ 1} (1−α)‖u‖₂ + α‖u‖₁ − λ⟨u, μ⟩. The minimum is sharp
/// (the objective grows linearly away from it), so the staged schedule
/// converges geometrically; returns the best iterate found.
pub fn projected_subgradient_spca<S: Real>(
    mu: &[S],
    lambda: S,
    alpha: f64,
    stages: usize,
    iters_per_stage: usize,
) -> Vec<S> {
    let p = mu.len();
    let a = S::c(alpha);
    let objective = |u: &[S]| -> S {
        let mut l1 = S::zero();
        let mut ip = S::zero();
        for (ui, mi) in u.iter().zip(mu.iter()) {
            l1 += ui.abs();
            ip += *ui * *mi;
        }
        (S::one() - a) * norm2(u) + a * l1 - lambda * ip
    };
    let project = |u: &mut Vec<S>| {
        let n = norm2(u);
        if n > S::one() {
            crate::scalar::scale(u, S::one() / n);
        }
    };

    let scale = lambda * norm2(mu) + S::one();
    let mut u: Vec<S> = mu.iter().map(|&m| m / (norm2(mu) + S::one())).collect();
    project(&mut u);
    let mut best = u.clone();
    let mut best_val = objective(&u);
    let mut step = S::c(0.5) / scale;
    for _ in 0..stages {
        for _ in 0..iters_per_stage {
            let nu = norm2(&u);
            for j in 0..p {
                let smooth = if nu == S::zero() {
                    S::zero()
                } else {
                    u[j] / nu
                };
                let sub = (S::one() - a) * smooth + a * sign0(u[j]) - lambda * mu[j];
                u[j] -= step * sub;
            }
            project(&mut u);
            let val = objective(&u);
            if val < best_val {
                best_val = val;
                best = u.clone();
            }
        }
        u = best.clone();
        // Slow decay: fast schedules freeze the smooth directions of the
        // error before they finish contracting.
        step *= S::c(0.93);
    }
    best
}

/// Largest relative decrease of the sparse-variance objective achievable by
/// changing a single coordinate of `f` (dense scan over perturbation sizes,
/// including exact removal). Zero means no tested move improves on f.
pub fn best_single_coordinate_improvement<S: Real>(
    x: &DataMatrix<S>,
    f: &[S],
    alpha: f64,
) -> Result<S> {
    let base = crate::sparse_pca::spca_functional(x, f, alpha)?;
    let scale = f
        .iter()
        .map(|v| v.abs())
        .fold(S::zero(), |a, b| a.max(b));
    let mut best_improvement = S::zero();
    let grid: i32 = 400;
    for j in 0..f.len() {
        let mut candidates: Vec<S> = Vec::with_capacity(grid as usize + 2);
        for k in -grid..=grid {
            candidates.push(S::c(3.0) * scale * S::c(k as f64) / S::c(grid as f64));
        }
        candidates.push(-f[j]); // exact support removal
        for t in candidates {
            if t == S::zero() {
                continue;
            }
            let mut g = f.to_vec();
            g[j] += t;
            match crate::sparse_pca::spca_functional(x, &g, alpha) {
                Ok(val) => {
                    let improvement = (base - val) / base;
                    if improvement > best_improvement {
                        best_improvement = improvement;
                    }
                }
                Err(Error::ZeroVector) | Err(Error::NullSpace) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(best_improvement)
}

/// Dense covariance XᵀX of a centered data matrix.
pub fn dense_covariance<S: Real>(x: &DataMatrix<S>) -> SymMatrix<S> {
    let p = x.p();
    let mut sigma = SymMatrix::zeros(p);
    for j in 0..p {
        for k in j..p {
            let mut acc = S::zero();
            for i in 0..x.n() {
                let row = x.row(i);
                acc += row[j] * row[k];
            }
            sigma.set_sym(j, k, acc);
        }
    }
    sigma
}

/// Random connected graph: a random spanning tree plus `extra_edges`
/// additional distinct edges, weights in [0.2, 1.5).
pub fn random_connected_graph<S: Real, R: Rng>(
    rng: &mut R,
    n: usize,
    extra_edges: usize,
) -> Result<SparseGraph<S>> {
    if n < 2 {
        return Err(Error::NoEdges);
    }
    let mut present: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut edges: Vec<(usize, usize, S)> = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        present.insert((u, v));
        edges.push((u, v, S::c(rng.gen_range(0.2..1.5))));
    }
    let mut attempts = 0;
    let max_extra = n * (n - 1) / 2 - (n - 1);
    let target = extra_edges.min(max_extra);
    while edges.len() < n - 1 + target && attempts < 100 * (target + 1) {
        attempts += 1;
        let mut u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        if u > v {
            std::mem::swap(&mut u, &mut v);
        }
        if present.insert((u, v)) {
            edges.push((u, v, S::c(rng.gen_range(0.2..1.5))));
        }
    }
    SparseGraph::from_edges(n, edges)
}

/// Random symmetric positive definite matrix BᵀB + boost·I with B uniform
/// in [−1, 1).
pub fn random_spd_matrix<S: Real, R: Rng>(rng: &mut R, n: usize, boost: f64) -> SymMatrix<S> {
    let b: Vec<Vec<S>> = (0..n)
        .map(|_| (0..n).map(|_| S::c(rng.gen_range(-1.0..1.0))).collect())
        .collect();
    let mut a = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut acc = S::zero();
            for row in &b {
                acc += row[i] * row[j];
            }
            if i == j {
                acc += S::c(boost);
            }
            a.set_sym(i, j, acc);
        }
    }
    a
}
