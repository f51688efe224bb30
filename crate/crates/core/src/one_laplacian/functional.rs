//! The graph total-variation functional and its ratio with the 1-norm.
//!
//! The ratio `F(f) = TV(f) / ||f||_1` is the 1-homogeneous eigenproblem
//! behind ratio Cheeger cuts: on indicator-like vectors it equals the ratio
//! cut value of the thresholded set, and its nonzero critical values are cut
//! values. The helpers here maintain the invariants the iteration relies on:
//! a zero lower median (which 1-norm subgradients with zero sum need to
//! exist) and unit 1-norm.

use crate::error::{Error, Result};
use crate::graph::SparseGraph;
use crate::ipm::FunctionalPair;
use crate::scalar::{norm1, sign0, Real};

/// `TV(f) = sum_e w_e |f_u - f_v|`.
pub fn total_variation<S: Real>(g: &SparseGraph<S>, f: &[S]) -> S {
    g.edges()
        .iter()
        .map(|e| e.w * (f[e.u] - f[e.v]).abs())
        .sum()
}

/// `F(f) = TV(f) / ||f||_1`; the quantity the clustering iteration descends.
pub fn f1_ratio<S: Real>(g: &SparseGraph<S>, f: &[S]) -> Result<S> {
    if f.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: f.len(),
        });
    }
    let denom = norm1(f);
    if denom == S::zero() {
        return Err(Error::ZeroVector);
    }
    Ok(total_variation(g, f) / denom)
}

/// Lower median: the `ceil(n/2)`-th smallest entry.
pub fn lower_median<S: Real>(f: &[S]) -> S {
    assert!(!f.is_empty(), "median of an empty vector");
    let mut sorted = f.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("median of non-finite values"));
    sorted[(f.len() + 1) / 2 - 1]
}

/// Subtracts the lower median in place. Afterwards at least one entry is
/// exactly zero, at most `floor(n/2)` are positive, and at most
/// `ceil(n/2) - 1` are negative — which makes [`balanced_sign`] total.
pub fn median_zero_shift<S: Real>(f: &mut [S]) {
    let med = lower_median(f);
    for fi in f.iter_mut() {
        *fi -= med;
    }
}

/// A 1-norm subgradient of `f` whose entries sum to zero: `sign(f_i)` off the
/// zero set, and the common value `-(n_plus - n_minus) / n_zero` on it. The
/// zero sum makes the inner objective invariant under constant shifts, which
/// is what lets the iteration re-center every iterate without losing descent.
///
/// Fails with [`Error::UnbalancedSigns`] when no such subgradient exists,
/// i.e. when the zero set is too small; any vector with zero lower median
/// is safe.
pub fn balanced_sign<S: Real>(f: &[S]) -> Result<Vec<S>> {
    let mut n_plus = 0i64;
    let mut n_minus = 0i64;
    let mut n_zero = 0i64;
    for &fi in f {
        if fi > S::zero() {
            n_plus += 1;
        } else if fi < S::zero() {
            n_minus += 1;
        } else {
            n_zero += 1;
        }
    }
    let imbalance = n_plus - n_minus;
    if imbalance.abs() > n_zero {
        return Err(Error::UnbalancedSigns);
    }
    let fill = if n_zero == 0 {
        S::zero()
    } else {
        S::c(-(imbalance as f64) / n_zero as f64)
    };
    Ok(f.iter()
        .map(|&fi| {
            if fi > S::zero() {
                S::one()
            } else if fi < S::zero() {
                -S::one()
            } else {
                fill
            }
        })
        .collect())
}

/// Scales `f` to unit 1-norm in place.
pub fn rescale_l1<S: Real>(f: &mut [S]) -> Result<()> {
    let nrm = norm1(f);
    if nrm == S::zero() {
        return Err(Error::ZeroVector);
    }
    for fi in f.iter_mut() {
        *fi /= nrm;
    }
    Ok(())
}

/// The 1-Laplacian functional pair: `R = TV`, `S = ||.||_1`, both
/// 1-homogeneous. `subgrad_s` uses the plain sign (zero on the zero set);
/// the clustering driver replaces it with [`balanced_sign`], which is a
/// different, shift-compatible element of the same subdifferential.
pub struct OneLapPair<Sc: Real> {
    graph: SparseGraph<Sc>,
}

impl<Sc: Real> OneLapPair<Sc> {
    pub fn new(graph: SparseGraph<Sc>) -> Self {
        OneLapPair { graph }
    }

    pub fn graph(&self) -> &SparseGraph<Sc> {
        &self.graph
    }
}

impl<Sc: Real> FunctionalPair<Sc> for OneLapPair<Sc> {
    fn dim(&self) -> usize {
        self.graph.n()
    }

    fn degree(&self) -> Sc {
        Sc::one()
    }

    fn eval_r(&self, f: &[Sc]) -> Sc {
        total_variation(&self.graph, f)
    }

    fn eval_s(&self, f: &[Sc]) -> Sc {
        norm1(f)
    }

    fn subgrad_r(&self, f: &[Sc]) -> Vec<Sc> {
        // r(f)_i = sum_{e at i} w_e sign(f_i - f_j): a TV subgradient whose
        // pairing with f recovers TV(f) exactly.
        let mut r = vec![Sc::zero(); f.len()];
        for e in self.graph.edges() {
            let s = sign0(f[e.u] - f[e.v]);
            r[e.u] += e.w * s;
            r[e.v] -= e.w * s;
        }
        r
    }

    fn subgrad_s(&self, f: &[Sc]) -> Vec<Sc> {
        f.iter().map(|&fi| sign0(fi)).collect()
    }
}
