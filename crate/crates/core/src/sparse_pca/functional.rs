//! The sparsity-penalized variance ratio and its closed-form inner step.
//!
//! The objective is F(f) = ((1−α)‖f‖₂ + α‖f‖₁)/‖Xf‖₂ with α ∈ [0, 1]: α = 0
//! is plain PCA (top eigenvector of XᵀX), α = 1 drives the component to the
//! single feature of maximal variance. Both numerator and denominator are
//! 1-homogeneous, so the ratio fits the degree-1 inverse-power driver, and
//! its inner problem has an analytical soft-threshold solution.

use crate::error::{Error, Result};
use crate::ipm::FunctionalPair;
use crate::scalar::{norm1, norm2, sign0, Real};

use super::data::DataMatrix;

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidConfig(format!(
            "sparsity parameter must lie in [0, 1], got {alpha}"
        )));
    }
    Ok(())
}

/// F(f) = ((1−α)‖f‖₂ + α‖f‖₁) / ‖Xf‖₂. Scale-invariant.
pub fn spca_functional<S: Real>(x: &DataMatrix<S>, f: &[S], alpha: f64) -> Result<S> {
    check_alpha(alpha)?;
    if f.len() != x.p() {
        return Err(Error::DimensionMismatch {
            expected: x.p(),
            got: f.len(),
        });
    }
    let n2 = norm2(f);
    if n2 == S::zero() {
        return Err(Error::ZeroVector);
    }
    let denom = norm2(&x.x_times(f));
    if denom == S::zero() {
        return Err(Error::NullSpace);
    }
    let a = S::c(alpha);
    Ok(((S::one() - a) * n2 + a * norm1(f)) / denom)
}

/// Unnormalized minimizer direction of the inner problem
/// min_{‖u‖₂ ≤ 1} (1−α)‖u‖₂ + α‖u‖₁ − λ⟨u, μ⟩: componentwise
/// soft-thresholding g_i = sign(μ_i)(λ|μ_i| − α)₊. The caller rescales (the
/// objective is 1-homogeneous, so only the direction matters). Returns the
/// zero vector when every component thresholds away — the inner optimum is
/// then zero and μ's owner is already an eigenvector.
pub fn spca_inner_closed_form<S: Real>(mu: &[S], lambda: S, alpha: f64) -> Vec<S> {
    let a = S::c(alpha);
    mu.iter()
        .map(|&m| {
            let t = lambda * m.abs() - a;
            if t > S::zero() {
                sign0(m) * t
            } else {
                S::zero()
            }
        })
        .collect()
}

/// Degenerate-threshold fallback: the signed indicator of the largest |μ_i|
/// (lowest index on ties) — the limit of the soft-threshold direction as the
/// threshold crosses the top component, and the sparsest descent direction.
pub fn argmax_component<S: Real>(mu: &[S]) -> Result<Vec<S>> {
    let mut best = 0usize;
    for i in 1..mu.len() {
        if mu[i].abs() > mu[best].abs() {
            best = i;
        }
    }
    if mu[best] == S::zero() {
        return Err(Error::ZeroVector);
    }
    let mut g = vec![S::zero(); mu.len()];
    g[best] = sign0(mu[best]);
    Ok(g)
}

/// R(f) = (1−α)‖f‖₂ + α‖f‖₁ over S(f) = ‖Xf‖₂, degree 1 — the functional
/// pair wiring sparse PCA into the generic inverse-power driver (the
/// existing soft-threshold solver is its exact inner solver).
#[derive(Debug, Clone)]
pub struct SpcaPair<'a, S> {
    x: &'a DataMatrix<S>,
    alpha: f64,
}

impl<'a, S: Real> SpcaPair<'a, S> {
    pub fn new(x: &'a DataMatrix<S>, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(SpcaPair { x, alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl<S: Real> FunctionalPair<S> for SpcaPair<'_, S> {
    fn dim(&self) -> usize {
        self.x.p()
    }
    fn degree(&self) -> S {
        S::one()
    }
    fn eval_r(&self, f: &[S]) -> S {
        let a = S::c(self.alpha);
        (S::one() - a) * norm2(f) + a * norm1(f)
    }
    fn eval_s(&self, f: &[S]) -> S {
        norm2(&self.x.x_times(f))
    }
    fn subgrad_r(&self, f: &[S]) -> Vec<S> {
        let a = S::c(self.alpha);
        let n = norm2(f);
        f.iter()
            .map(|&v| {
                let smooth = if n == S::zero() { S::zero() } else { v / n };
                (S::one() - a) * smooth + a * sign0(v)
            })
            .collect()
    }
    fn subgrad_s(&self, f: &[S]) -> Vec<S> {
        // Σf/‖Xf‖₂ — the μ vector of the iteration.
        let z = self.x.x_times(f);
        let nz = norm2(&z);
        let mut g = self.x.xt_times(&z);
        if nz > S::zero() {
            crate::scalar::scale(&mut g, S::one() / nz);
        }
        g
    }
}
