//! A posteriori eigenvector certificates for the graph 1-Laplacian.
//!
//! `f` is an eigenvector with eigenvalue `lambda = TV(f) / ||f||_1` exactly
//! when some edge flow `alpha` with `||alpha||_inf <= 1` satisfies
//! `A alpha = lambda v` for a 1-norm subgradient `v` of `f` with zero sum
//! (the zero-sum variant is the stationarity condition on the shift-invariant
//! slice the iteration works on; dropping the sum constraint only shrinks the
//! residual). Given a candidate flow — e.g. the final dual iterate of the
//! inner solver — the certificate measures how badly that system fails:
//!
//! * `dual_residual` — `min_v ||A alpha - lambda v||_2 / (lambda sqrt(n))`
//!   over admissible `v` (fixed to `sign(f_i)` on the support, free in
//!   `[-1, 1]` on the zero set, zero total sum when attainable);
//! * `complementarity` — `|<f, A alpha> - TV(f)| / max(1, TV(f))`: the flow
//!   must price the support exactly;
//! * `worst_edge_defect` — the largest single-edge share of that pricing
//!   error, `max_e w_e |f_u - f_v| (1 - alpha_e sign(f_u - f_v)) / max(1,
//!   TV(f))`.
//!
//! All three vanish at an exact eigenvector/optimal-flow pair and are
//! invariant under scaling `f`.

use crate::error::{Error, Result};
use crate::graph::SparseGraph;
use crate::scalar::{dot, Real};

use super::functional::{f1_ratio, total_variation};

#[derive(Debug, Clone)]
pub struct EigenCertificate<S> {
    pub lambda: S,
    pub dual_residual: S,
    pub complementarity: S,
    pub worst_edge_defect: S,
}

impl<S: Real> EigenCertificate<S> {
    /// The single number to gate on: the worst of the three measures.
    pub fn residual(&self) -> S {
        self.dual_residual
            .max(self.complementarity)
            .max(self.worst_edge_defect)
    }
}

/// Divergence of the edge flow: `(A alpha)_r`.
fn divergence<S: Real>(g: &SparseGraph<S>, alpha: &[S]) -> Vec<S> {
    let mut d = vec![S::zero(); g.n()];
    for (e, &a) in g.edges().iter().zip(alpha) {
        d[e.u] += e.w * a;
        d[e.v] -= e.w * a;
    }
    d
}

/// Best admissible subgradient: entries fixed to `sign(f_i)` on the support;
/// on the zero set the free entries minimize `||d - lambda v||` subject to
/// the box and, when attainable, a zero total sum. The sum constraint is a
/// monotone one-dimensional condition in the shift `s` of `v_i = clip((d_i -
/// s)/lambda)`, so bisection solves it to machine precision.
fn best_subgradient<S: Real>(f: &[S], d: &[S], lambda: S) -> Vec<S> {
    let one = S::one();
    let clip = |x: S| x.max(-one).min(one);
    let mut fixed_sum = S::zero();
    let mut zero_idx = Vec::new();
    for (i, &fi) in f.iter().enumerate() {
        if fi > S::zero() {
            fixed_sum += one;
        } else if fi < S::zero() {
            fixed_sum -= one;
        } else {
            zero_idx.push(i);
        }
    }
    let free_sum = |s: S| -> S {
        zero_idx
            .iter()
            .map(|&i| clip((d[i] - s) / lambda))
            .sum::<S>()
    };
    // Target: fixed_sum + free_sum(s) = 0. free_sum is nonincreasing in s,
    // ranging over [-n0, n0]; when |fixed_sum| > n0 the constraint is
    // unattainable and the unconstrained minimizer (s = 0) is used.
    let n0 = S::c(zero_idx.len() as f64);
    let shift = if fixed_sum.abs() > n0 {
        S::zero()
    } else if zero_idx.is_empty() {
        S::zero()
    } else {
        let mut lo = d
            .iter()
            .copied()
            .fold(S::infinity(), S::min)
            - lambda - lambda;
        let mut hi = d
            .iter()
            .copied()
            .fold(S::neg_infinity(), S::max)
            + lambda + lambda;
        for _ in 0..200 {
            let mid = (lo + hi) / S::c(2.0);
            if fixed_sum + free_sum(mid) > S::zero() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo + hi) / S::c(2.0)
    };
    f.iter()
        .enumerate()
        .map(|(i, &fi)| {
            if fi > S::zero() {
                one
            } else if fi < S::zero() {
                -one
            } else {
                clip((d[i] - shift) / lambda)
            }
        })
        .collect()
}

/// Scores how close `(f, alpha)` is to an exact eigenvector/optimal-flow
/// pair. `alpha` must be a feasible edge flow (`||alpha||_inf <= 1`).
pub fn certify_eigenvector<S: Real>(
    g: &SparseGraph<S>,
    f: &[S],
    alpha: &[S],
) -> Result<EigenCertificate<S>> {
    if f.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: f.len(),
        });
    }
    if alpha.len() != g.edges().len() {
        return Err(Error::DimensionMismatch {
            expected: g.edges().len(),
            got: alpha.len(),
        });
    }
    let tol = S::c(1e-12);
    if let Some(bad) = alpha.iter().find(|&&a| a.abs() > S::one() + tol) {
        return Err(Error::InvalidConfig(format!(
            "edge flow out of range: |{}| > 1",
            bad.as_f64()
        )));
    }
    let lambda = f1_ratio(g, f)?;
    if !(lambda > S::zero()) {
        // TV(f) = 0 on a connected graph means f is constant, which the
        // ratio already rejects unless f never crosses zero; a zero ratio
        // has no meaningful flow certificate.
        return Err(Error::DegenerateCut);
    }
    let d = divergence(g, alpha);
    let v = best_subgradient(f, &d, lambda);
    let n_sqrt = S::c((g.n() as f64).sqrt());
    let mut sq = S::zero();
    for i in 0..g.n() {
        let r = d[i] - lambda * v[i];
        sq += r * r;
    }
    let dual_residual = sq.sqrt() / (lambda * n_sqrt);

    let tv = total_variation(g, f);
    let denom = S::one().max(tv);
    let complementarity = (dot(f, &d) - tv).abs() / denom;

    let mut worst = S::zero();
    for (e, &a) in g.edges().iter().zip(alpha) {
        let diff = f[e.u] - f[e.v];
        if diff != S::zero() {
            let sign = if diff > S::zero() { S::one() } else { -S::one() };
            let defect = e.w * diff.abs() * (S::one() - a * sign);
            if defect > worst {
                worst = defect;
            }
        }
    }
    let worst_edge_defect = worst / denom;

    Ok(EigenCertificate {
        lambda,
        dual_residual,
        complementarity,
        worst_edge_defect,
    })
}
