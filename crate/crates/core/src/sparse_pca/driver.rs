//! Inverse-power iteration for the sparsity-penalized variance ratio.
//!
//! Each step soft-thresholds μ = Σf/‖Xf‖₂ at level α/λ (in rescaled form),
//! renormalizes to ‖Xf‖₂ = 1, and re-evaluates λ = (1−α)‖f‖₂ + α‖f‖₁. The
//! objective strictly decreases until a fixed point; the iteration stops when
//! the relative λ-change drops below `epsilon` or the value stops improving.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ipm::driver::random_unit_vector;
use crate::ipm::IpmConfig;
use crate::scalar::{dot, norm1, norm2, Real};

use super::data::DataMatrix;
use super::functional::{argmax_component, check_alpha, spca_inner_closed_form};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SparsePcaResult<S> {
    /// Final component, scaled so ‖X·component‖₂ = 1; zeros are exact.
    pub component: Vec<S>,
    /// Number of nonzero entries, in [1, p].
    pub cardinality: usize,
    /// ⟨f, XᵀXf⟩/‖f‖₂² of the component.
    pub explained_variance: S,
    /// Explained variance over the top covariance eigenvalue, in (0, 1].
    pub relative_variance: S,
    /// Final objective value (1−α)‖f‖₂ + α‖f‖₁ at ‖Xf‖₂ = 1.
    pub lambda: S,
    /// Objective after each accepted step, starting at the initial value;
    /// strictly decreasing.
    pub trace: Vec<S>,
    pub alpha: f64,
    /// Accepted outer steps (= trace.len() − 1).
    pub iterations: usize,
    pub converged: bool,
    /// True if any step had every component thresholded away and fell back
    /// to the single largest-|μ| coordinate.
    pub fallback_used: bool,
}

/// Direction-refinement phase after the objective has converged: λ is
/// second-order flat in the angular error, so a λ-change stop can leave the
/// component ~√epsilon away from the fixed point. Extra steps at (nearly)
/// constant λ close that gap; they stop once one step moves the component
/// by at most `POLISH_TOLERANCE` (margin under the advertised 1e-8
/// self-reproduction), or after `POLISH_MAX_ITERS` steps.
const POLISH_TOLERANCE: f64 = 1e-9;
const POLISH_MAX_ITERS: usize = 2_000;

fn objective<S: Real>(f: &[S], alpha: f64) -> S {
    let a = S::c(alpha);
    (S::one() - a) * norm2(f) + a * norm1(f)
}

/// One power step from (f, λ) with ‖Xf‖₂ = 1: soft-threshold μ = Σf, rescale.
/// Returns (f_next, λ_next, fallback_fired).
fn power_step<S: Real>(
    x: &DataMatrix<S>,
    f: &[S],
    lambda: S,
    alpha: f64,
) -> Result<(Vec<S>, S, bool)> {
    let z = x.x_times(f);
    let nz = norm2(&z);
    let mut mu = x.xt_times(&z);
    crate::scalar::scale(&mut mu, S::one() / nz);

    let mut fallback = false;
    let mut g = spca_inner_closed_form(&mu, lambda, alpha);
    if g.iter().all(|&v| v == S::zero()) {
        g = argmax_component(&mu)?;
        fallback = true;
    }
    let zg = x.x_times(&g);
    let nzg = norm2(&zg);
    if nzg == S::zero() {
        return Err(Error::DegenerateStep);
    }
    let f_next: Vec<S> = g.iter().map(|&v| v / nzg).collect();
    let lambda_next = objective(&f_next, alpha);
    Ok((f_next, lambda_next, fallback))
}

/// One power step from a given start vector. The start is rescaled to
/// ‖Xf‖₂ = 1; a start in the null space of X is rejected.
pub fn ipm_sparse_pca<S: Real>(
    x: &DataMatrix<S>,
    alpha: f64,
    config: &IpmConfig,
    f0: &[S],
) -> Result<SparsePcaResult<S>> {
    config.validate()?;
    check_alpha(alpha)?;
    if f0.len() != x.p() {
        return Err(Error::DimensionMismatch {
            expected: x.p(),
            got: f0.len(),
        });
    }
    if f0.iter().all(|&v| v == S::zero()) {
        return Err(Error::ZeroVector);
    }
    let z0 = x.x_times(f0);
    let nz0 = norm2(&z0);
    if nz0 == S::zero() {
        return Err(Error::NullSpace);
    }
    let mut f: Vec<S> = f0.iter().map(|&v| v / nz0).collect();
    let mut lambda = objective(&f, alpha);
    let mut trace = vec![lambda];
    let mut converged = false;
    let mut fallback_used = false;
    let eps = S::c(config.epsilon);

    for _ in 0..config.max_outer_iters {
        let (f_next, lambda_next, fb) = power_step(x, &f, lambda, alpha)?;
        fallback_used |= fb;

        if !(lambda_next < lambda) {
            // Fixed point (the step reproduced f up to rounding): the
            // objective can mathematically never increase along a step.
            converged = lambda_next - lambda <= eps * lambda;
            break;
        }
        let rel = (lambda - lambda_next) / lambda;
        f = f_next;
        lambda = lambda_next;
        trace.push(lambda);
        if rel < eps {
            converged = true;
            break;
        }
    }

    if converged {
        for _ in 0..POLISH_MAX_ITERS {
            let (f_next, lambda_next, fb) = power_step(x, &f, lambda, alpha)?;
            fallback_used |= fb;
            if lambda_next > lambda {
                break;
            }
            let mut diff = S::zero();
            for (a, b) in f_next.iter().zip(f.iter()) {
                let d = *a - *b;
                diff += d * d;
            }
            if lambda_next < lambda {
                lambda = lambda_next;
                trace.push(lambda);
            }
            f = f_next;
            if diff.sqrt() <= S::c(POLISH_TOLERANCE) {
                break;
            }
        }
    }

    let explained = x.rayleigh(&f)?;
    // Both `explained` and the cached top eigenvalue are Rayleigh quotients,
    // i.e. lower bounds on the true λ_max; the larger one is the tighter
    // bound, and using it keeps the ratio ≤ 1 by construction.
    let relative = explained / x.lambda_max().max(explained);
    Ok(SparsePcaResult {
        cardinality: f.iter().filter(|&&v| v != S::zero()).count(),
        component: f,
        explained_variance: explained,
        relative_variance: relative,
        lambda,
        iterations: trace.len() - 1,
        trace,
        alpha,
        converged,
        fallback_used,
    })
}

/// Distance a result's component moves under one more power step, after sign
/// alignment — the fixed-point certificate (small means the output
/// reproduces itself).
pub fn fixed_point_gap<S: Real>(
    x: &DataMatrix<S>,
    component: &[S],
    alpha: f64,
) -> Result<S> {
    check_alpha(alpha)?;
    if component.len() != x.p() {
        return Err(Error::DimensionMismatch {
            expected: x.p(),
            got: component.len(),
        });
    }
    let z = x.x_times(component);
    let nz = norm2(&z);
    if nz == S::zero() {
        return Err(Error::NullSpace);
    }
    let f: Vec<S> = component.iter().map(|&v| v / nz).collect();
    let lambda = objective(&f, alpha);
    let (next, _, _) = power_step(x, &f, lambda, alpha)?;
    let flip = if dot(&next, &f) < S::zero() {
        -S::one()
    } else {
        S::one()
    };
    let mut diff = S::zero();
    for (a, b) in next.iter().zip(f.iter()) {
        let d = flip * *a - *b;
        diff += d * d;
    }
    Ok(diff.sqrt())
}

/// Deterministic start: the basis vector of the feature with the largest
/// centered column norm (the α = 1 optimum, and generically a dense-overlap
/// start for every other α).
pub fn deterministic_start<S: Real>(x: &DataMatrix<S>) -> Vec<S> {
    let mut f = vec![S::zero(); x.p()];
    f[x.max_norm_column()] = S::one();
    f
}

fn best_of<S: Real>(runs: Vec<SparsePcaResult<S>>) -> Option<SparsePcaResult<S>> {
    runs.into_iter().reduce(|best, r| {
        if r.lambda < best.lambda {
            r
        } else {
            best
        }
    })
}

/// Multi-start driver: the deterministic start plus `config.restarts` random
/// unit starts (one RNG stream per restart), best final objective wins.
pub fn run_spca_with_restarts<S: Real>(
    x: &DataMatrix<S>,
    alpha: f64,
    config: &IpmConfig,
) -> Result<SparsePcaResult<S>> {
    sweep_step(x, alpha, config, None)
}

fn sweep_step<S: Real>(
    x: &DataMatrix<S>,
    alpha: f64,
    config: &IpmConfig,
    warm: Option<&[S]>,
) -> Result<SparsePcaResult<S>> {
    config.validate()?;
    check_alpha(alpha)?;
    let mut starts: Vec<Vec<S>> = Vec::with_capacity(config.restarts + 2);
    if let Some(w) = warm {
        starts.push(w.to_vec());
    }
    starts.push(deterministic_start(x));
    for i in 0..config.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(1 + i as u64);
        starts.push(random_unit_vector(x.p(), &mut rng));
    }
    let runs: Vec<SparsePcaResult<S>> = starts
        .par_iter()
        .map(|f0| ipm_sparse_pca(x, alpha, config, f0))
        .collect::<Result<Vec<_>>>()?;
    best_of(runs).ok_or(Error::ZeroVector)
}

/// Runs the driver across ascending sparsity levels, warm-starting each
/// level from the previous level's best component in addition to the usual
/// starts, keeping the best objective per level. The random starts reuse the
/// same streams at every level, so each row is at least as good as a
/// cold-start-only run with the same config.
pub fn tradeoff_sweep<S: Real>(
    x: &DataMatrix<S>,
    alphas: &[f64],
    config: &IpmConfig,
) -> Result<Vec<SparsePcaResult<S>>> {
    for pair in alphas.windows(2) {
        if !(pair[0] <= pair[1]) {
            return Err(Error::InvalidConfig(
                "sparsity levels must be sorted ascending".into(),
            ));
        }
    }
    let mut results = Vec::with_capacity(alphas.len());
    let mut warm: Option<Vec<S>> = None;
    for &alpha in alphas {
        let best = sweep_step(x, alpha, config, warm.as_deref())?;
        warm = Some(best.component.clone());
        results.push(best);
    }
    Ok(results)
}
