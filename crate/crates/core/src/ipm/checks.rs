//! Ratio evaluation and the structural identities every valid pair satisfies.

use super::pair::FunctionalPair;
use crate::error::{Error, Result};
use crate::scalar::{dot, norm2, Real};

/// F(f) = R(f)/S(f). Errors on the zero vector (S vanishes there) and on a
/// dimension mismatch.
pub fn evaluate_ratio<S: Real, P: FunctionalPair<S> + ?Sized>(pair: &P, f: &[S]) -> Result<S> {
    if f.len() != pair.dim() {
        return Err(Error::DimensionMismatch {
            expected: pair.dim(),
            got: f.len(),
        });
    }
    let s = pair.eval_s(f);
    if s == S::zero() {
        return Err(Error::ZeroVector);
    }
    Ok(pair.eval_r(f) / s)
}

/// Pointwise eigenpair residual ‖r(f) − λ·s(f)‖₂ / max(1, ‖r(f)‖₂) with the
/// pair's fixed subgradient selections. Zero only when the selections line up,
/// so application modules with set-valued subdifferentials ship their own
/// tighter certificates; this is the generic smooth-point check.
pub fn verify_eigenpair<S: Real, P: FunctionalPair<S> + ?Sized>(pair: &P, f: &[S], lambda: S) -> S {
    let r = pair.subgrad_r(f);
    let s = pair.subgrad_s(f);
    let diff: Vec<S> = r
        .iter()
        .zip(&s)
        .map(|(&ri, &si)| ri - lambda * si)
        .collect();
    norm2(&diff) / S::one().max(norm2(&r))
}

/// |⟨f, r(f)⟩ − p·R(f)| / max(1, p·R(f)). Zero for any positively
/// p-homogeneous R and any subgradient selection r.
pub fn check_euler_identity<S: Real, P: FunctionalPair<S> + ?Sized>(pair: &P, f: &[S]) -> S {
    let r = pair.subgrad_r(f);
    let pr = pair.degree() * pair.eval_r(f);
    (dot(f, &r) - pr).abs() / S::one().max(pr)
}

/// Relative violation of |⟨r(f), g⟩| ≤ p·R(f)^(1−1/p)·R(g)^(1/p):
/// max(0, lhs − rhs) / max(1, rhs). Zero for every valid pair.
pub fn check_hoelder_inequality<S: Real, P: FunctionalPair<S> + ?Sized>(
    pair: &P,
    f: &[S],
    g: &[S],
) -> S {
    let p = pair.degree();
    let r = pair.subgrad_r(f);
    let lhs = dot(&r, g).abs();
    let rf = pair.eval_r(f);
    let rg = pair.eval_r(g);
    let rhs = p * rf.powf(S::one() - S::one() / p) * rg.powf(S::one() / p);
    (lhs - rhs).max(S::zero()) / S::one().max(rhs)
}
