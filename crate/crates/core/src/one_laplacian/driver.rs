//! The inverse-power iteration specialized to the graph 1-Laplacian.
//!
//! Each outer step solves the total-variation inner problem at the current
//! ratio `lambda = TV(f) / ||f||_1`, re-centers the minimizer to zero lower
//! median, and rescales it to unit 1-norm. Because the sign vector fed to the
//! inner problem has zero sum, re-centering changes neither the inner
//! objective nor the pairing, so a negative inner optimum turns into a strict
//! ratio decrease:
//!
//! ```text
//! TV(u) < lambda <u, v> = lambda <u~, v> <= lambda ||u~||_1
//! ```
//!
//! where `u~` is the re-centered minimizer. The iteration therefore produces
//! a strictly decreasing eigenvalue trace and stops either when the inner
//! optimum is (certifiably) zero — the definition of an eigenvector here — or
//! when the relative decrease falls below the configured threshold.
//!
//! Inner solves run in two regimes. With certification on, every solve is
//! certificate-grade (tight gap, face-polished): each outer step then
//! extracts the full descent available, keeping the outer loop short, and the
//! duality-gap bound holds at every accepted step. Without certification —
//! the mode for when only the thresholded cut matters — solves are coarse,
//! with early exit and a hard iteration cap. The final edge flows are kept so
//! callers can score the returned vector with
//! [`super::certify::certify_eigenvector`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{spectral_second_eigenvector, SparseGraph};
use crate::ipm::IpmConfig;
use crate::scalar::Real;

use super::certify::{certify_eigenvector, EigenCertificate};
use super::fista::{solve_inner, DualState, FistaConfig, InnerStop};
use super::functional::{balanced_sign, median_zero_shift, rescale_l1, total_variation};
use super::threshold::{optimal_threshold, ThresholdCut};

/// An inner objective above `-TERMINATION_BAND * lambda` is treated as zero:
/// the current iterate is declared an eigenvector.
const TERMINATION_BAND: f64 = 1e-14;
/// Iteration budgets for the inner-solver regimes. The first solve of a run
/// starts from zero flows and gets the full coarse budget; subsequent coarse
/// solves start warm from near-optimal flows and only ever need a fraction of
/// that, so capping them keeps the per-step cost bounded on large graphs
/// (where the coarse gap tolerance itself is out of reach and the cap is the
/// effective stop). Tight solves interleave face polishing with the gradient
/// iterations, so in practice they stop at the gap tolerance long before the
/// cap.
const COARSE_COLD_MAX_ITERS: usize = 20_000;
const COARSE_WARM_MAX_ITERS: usize = 4_000;
const TIGHT_MAX_ITERS: usize = 400_000;

#[derive(Debug, Clone)]
pub struct OneLapSolution<S> {
    /// Final iterate: zero lower median, unit 1-norm.
    pub vector: Vec<S>,
    /// `TV(vector) / ||vector||_1`, the smallest value on the trace.
    pub eigenvalue: S,
    /// Ratio after every accepted outer step, starting at the initializer's.
    pub trace: Vec<S>,
    pub outer_iterations: usize,
    /// Total inner (gradient) iterations across all outer steps.
    pub inner_iterations: usize,
    /// The inner optimum at `vector` is zero up to the certified gap:
    /// `vector` is an eigenvector.
    pub terminated: bool,
    /// The relative decrease fell below `config.epsilon`.
    pub converged: bool,
    /// Duality gap of the last inner solve, relative proof quality for
    /// `terminated`.
    pub final_gap: S,
    /// Final dual edge flows; input for the eigenvector certificate.
    pub dual: Vec<S>,
}

/// Runs the iteration from the given start vector on a connected graph.
pub fn ipm_one_laplacian<S: Real>(
    g: &SparseGraph<S>,
    f0: &[S],
    config: &IpmConfig,
) -> Result<OneLapSolution<S>> {
    config.validate()?;
    if f0.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: f0.len(),
        });
    }
    if g.n() < 2 {
        return Err(Error::InvalidConfig(
            "clustering needs at least 2 vertices".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }

    let mut f = f0.to_vec();
    median_zero_shift(&mut f);
    rescale_l1(&mut f).map_err(|_| Error::ConstantVector)?;
    let mut lambda = total_variation(g, &f); // ||f||_1 = 1
    if !(lambda > S::zero()) {
        return Err(Error::ConstantVector);
    }

    let mut trace = vec![lambda];
    let mut state = DualState::new(g.edges().len());
    let mut terminated = false;
    let mut converged = false;
    let mut final_gap = S::zero();
    let mut inner_iterations = 0usize;
    let mut outer_iterations = 0usize;
    let band = S::c(TERMINATION_BAND);

    for step in 0..config.max_outer_iters {
        let v = balanced_sign(&f)?;
        let inner_cfg = if config.certify {
            FistaConfig::tight(config.inner_tolerance, TIGHT_MAX_ITERS)
        } else if step == 0 {
            FistaConfig::coarse(COARSE_COLD_MAX_ITERS)
        } else {
            FistaConfig::coarse(COARSE_WARM_MAX_ITERS)
        };
        let sol = solve_inner(g, lambda, &v, &mut state, &inner_cfg);
        inner_iterations += sol.iterations;

        if sol.objective >= -band * lambda {
            // No descent left; the stop reason says whether the zero optimum
            // was actually proved.
            terminated = matches!(
                sol.stop,
                InnerStop::GapConverged | InnerStop::OptimumZero
            );
            final_gap = sol.gap;
            break;
        }

        // Candidate step: re-center and re-normalize.
        let mut cand = sol.u;
        median_zero_shift(&mut cand);
        rescale_l1(&mut cand).map_err(|_| Error::ConstantVector)?;
        let lambda_next = total_variation(g, &cand);
        if !(lambda_next < lambda) {
            // The guaranteed decrease drowned in rounding: the iterate is
            // critical to within float resolution. Keep the old iterate (the
            // trace stays strictly decreasing) and settle for a certificate.
            converged = true;
            final_gap = sol.gap;
            break;
        }
        outer_iterations += 1;
        f = cand;
        let rel = (lambda - lambda_next) / lambda;
        trace.push(lambda_next);
        lambda = lambda_next;
        final_gap = sol.gap;

        if rel < S::c(config.epsilon) {
            converged = true;
            break;
        }
    }

    // Make sure the stored flows certify the *final* iterate: after an
    // accepted step (converged / out of budget) they belong to its
    // predecessor, so polish once more without stepping.
    if !terminated && config.certify {
        let v = balanced_sign(&f)?;
        let sol = solve_inner(
            g,
            lambda,
            &v,
            &mut state,
            &FistaConfig::tight(config.inner_tolerance, TIGHT_MAX_ITERS),
        );
        inner_iterations += sol.iterations;
        final_gap = sol.gap;
        if sol.objective >= -band * lambda
            && matches!(sol.stop, InnerStop::GapConverged | InnerStop::OptimumZero)
        {
            terminated = true;
        }
    }

    Ok(OneLapSolution {
        vector: f,
        eigenvalue: lambda,
        trace,
        outer_iterations,
        inner_iterations,
        terminated,
        converged,
        final_gap,
        dual: state.alpha().to_vec(),
    })
}

/// How a multi-start run was initialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitKind {
    /// Indicator of the best threshold cut of the second Laplacian
    /// eigenvector.
    Spectral,
    /// Standard normal vector from the seeded stream with this index.
    Random(usize),
}

/// One full clustering run: solution, the best threshold cut found during the
/// run, and the eigenvector certificate of the final iterate.
#[derive(Debug, Clone)]
pub struct ClusterRun<S> {
    pub solution: OneLapSolution<S>,
    /// Better of the initializer's and the final iterate's optimal threshold
    /// cuts. The iteration never accepts a ratio increase, so the final level
    /// set wins up to rounding; keeping the initial cut as a candidate makes
    /// "never worse than the start" hold exactly in floating point too.
    pub cut: ThresholdCut<S>,
    pub certificate: EigenCertificate<S>,
    pub init: InitKind,
}

/// The spectral starting point: threshold the second Laplacian eigenvector
/// optimally and take the indicator of the smaller side. Returns the start
/// vector together with the baseline cut it came from.
///
/// Starting from this vector makes the final cut provably at least as good
/// as the spectral one: the indicator's ratio equals the baseline's cut
/// value, every outer step decreases the ratio, and thresholding the final
/// iterate can only improve on its ratio.
pub fn spectral_indicator_init<S: Real>(
    g: &SparseGraph<S>,
) -> Result<(Vec<S>, ThresholdCut<S>)> {
    let pair = spectral_second_eigenvector(g)?;
    let cut = optimal_threshold(g, &pair.vector)?;
    let n = g.n();
    let inside = cut.mask.iter().filter(|&&b| b).count();
    let keep_mask_side = inside * 2 <= n;
    let f0: Vec<S> = cut
        .mask
        .iter()
        .map(|&b| {
            if b == keep_mask_side {
                S::one()
            } else {
                S::zero()
            }
        })
        .collect();
    Ok((f0, cut))
}

/// Multi-start driver: one spectral initialization plus `config.restarts`
/// random ones, run in parallel, returning the run whose *thresholded* cut is
/// best (ties: smaller eigenvalue, then earlier initializer — deterministic
/// for a fixed seed regardless of thread count).
pub fn run_with_restarts<S: Real>(
    g: &SparseGraph<S>,
    config: &IpmConfig,
) -> Result<ClusterRun<S>> {
    let spectral_f0 = spectral_indicator_init(g)?.0;
    run_with_restarts_from_spectral(g, &spectral_f0, config)
}

/// [`run_with_restarts`] with the spectral starting vector supplied by the
/// caller, for callers that already paid for the second eigenvector (the
/// baseline comparison needs it anyway and it is the costly part at scale).
pub fn run_with_restarts_from_spectral<S: Real>(
    g: &SparseGraph<S>,
    spectral_f0: &[S],
    config: &IpmConfig,
) -> Result<ClusterRun<S>> {
    let runs = multi_start_runs(g, spectral_f0, config)?;
    Ok(pick_best(runs))
}

/// All individual runs of the multi-start protocol, spectral first, random
/// initializations in stream order after it.
pub(crate) fn multi_start_runs<S: Real>(
    g: &SparseGraph<S>,
    spectral_f0: &[S],
    config: &IpmConfig,
) -> Result<Vec<ClusterRun<S>>> {
    config.validate()?;
    let mut inits: Vec<InitKind> = vec![InitKind::Spectral];
    inits.extend((0..config.restarts).map(InitKind::Random));

    inits
        .par_iter()
        .map(|&init| -> Result<ClusterRun<S>> {
            let f0 = match init {
                InitKind::Spectral => spectral_f0.to_vec(),
                InitKind::Random(i) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                    rng.set_stream(1 + i as u64);
                    (0..g.n())
                        .map(|_| {
                            S::c(<StandardNormal as Distribution<f64>>::sample(
                                &StandardNormal,
                                &mut rng,
                            ))
                        })
                        .collect()
                }
            };
            let solution = ipm_one_laplacian(g, &f0, config)?;
            let mut cut = optimal_threshold(g, &solution.vector)?;
            let init_cut = optimal_threshold(g, &f0)?;
            if init_cut.rcc < cut.rcc {
                cut = init_cut;
            }
            let certificate = certify_eigenvector(g, &solution.vector, &solution.dual)?;
            Ok(ClusterRun {
                solution,
                cut,
                certificate,
                init,
            })
        })
        .collect::<Result<Vec<_>>>()
}

/// Smallest thresholded cut wins; ties fall to the smaller eigenvalue, then
/// to the earlier initializer.
pub(crate) fn pick_best<S: Real>(runs: Vec<ClusterRun<S>>) -> ClusterRun<S> {
    let mut best: Option<ClusterRun<S>> = None;
    for run in runs {
        let replace = match &best {
            None => true,
            Some(b) => {
                run.cut.rcc < b.cut.rcc
                    || (run.cut.rcc == b.cut.rcc
                        && run.solution.eigenvalue < b.solution.eigenvalue)
            }
        };
        if replace {
            best = Some(run);
        }
    }
    best.expect("at least the spectral initializer ran")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::rcc;
    use crate::ipm::trace_is_strictly_decreasing;

    fn barbell(bridge: f64) -> SparseGraph<f64> {
        SparseGraph::from_edges(
            6,
            [
                (0, 1, 1.0f64),
                (0, 2, 1.0),
                (1, 2, 1.0),
                (3, 4, 1.0),
                (3, 5, 1.0),
                (4, 5, 1.0),
                (2, 3, bridge),
            ],
        )
        .unwrap()
    }

    fn config() -> IpmConfig {
        IpmConfig {
            epsilon: 1e-9,
            ..IpmConfig::default()
        }
    }

    #[test]
    fn finds_the_optimal_cut_on_the_barbell() {
        let g = barbell(0.2);
        let run = run_with_restarts(&g, &config()).unwrap();
        assert!((run.cut.rcc - 0.2 / 3.0).abs() < 1e-12, "rcc {}", run.cut.rcc);
        assert!((run.solution.eigenvalue - 0.2 / 3.0).abs() < 1e-9);
        assert!(run.solution.terminated, "gap {}", run.solution.final_gap);
        assert!(run.certificate.residual() < 1e-6, "cert {}", run.certificate.residual());
        let side: usize = run.cut.mask.iter().filter(|&&b| b).count();
        assert_eq!(side, 3);
        // The mask is exactly one triangle.
        let t0 = run.cut.mask[0];
        assert!(run.cut.mask[1] == t0 && run.cut.mask[2] == t0);
    }

    #[test]
    fn trace_decreases_from_random_starts() {
        let g = barbell(0.5);
        for seed in 0..10u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f0: Vec<f64> = (0..6)
                .map(|_| <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng))
                .collect();
            let sol = ipm_one_laplacian(&g, &f0, &config()).unwrap();
            assert!(
                trace_is_strictly_decreasing(&sol.trace),
                "seed {seed}: {:?}",
                sol.trace
            );
            // Thresholding the final vector is at least as good as its ratio.
            let cut = optimal_threshold(&g, &sol.vector).unwrap();
            assert!(cut.rcc <= sol.eigenvalue + 1e-12);
            assert!((rcc(&g, &cut.mask).unwrap() - cut.rcc).abs() < 1e-12);
        }
    }

    #[test]
    fn spectral_indicator_ratio_equals_baseline_cut() {
        let g = barbell(0.3);
        let (f0, baseline) = spectral_indicator_init(&g).unwrap();
        let ratio = crate::one_laplacian::functional::f1_ratio(&g, &f0).unwrap();
        assert!(
            (ratio - baseline.rcc).abs() < 1e-12,
            "ratio {ratio} vs baseline {}",
            baseline.rcc
        );
    }

    #[test]
    fn dominates_the_spectral_baseline() {
        let g = barbell(0.3);
        let (f0, baseline) = spectral_indicator_init(&g).unwrap();
        let sol = ipm_one_laplacian(&g, &f0, &config()).unwrap();
        let cut = optimal_threshold(&g, &sol.vector).unwrap();
        assert!(cut.rcc <= baseline.rcc + 1e-12);
    }

    #[test]
    fn rejects_disconnected_and_constant_inputs() {
        let g2 = SparseGraph::from_edges(4, [(0, 1, 1.0f64), (2, 3, 1.0)]).unwrap();
        assert!(matches!(
            ipm_one_laplacian(&g2, &[1.0, -1.0, 2.0, -2.0], &config()),
            Err(Error::Disconnected)
        ));
        let g = barbell(0.2);
        assert!(matches!(
            ipm_one_laplacian(&g, &[3.0; 6], &config()),
            Err(Error::ConstantVector)
        ));
    }

    #[test]
    fn deterministic_across_repeat_runs() {
        let g = barbell(0.37);
        let a = run_with_restarts(&g, &config()).unwrap();
        let b = run_with_restarts(&g, &config()).unwrap();
        assert_eq!(a.init, b.init);
        assert_eq!(a.solution.vector, b.solution.vector);
        assert_eq!(a.cut.mask, b.cut.mask);
        assert_eq!(a.solution.trace, b.solution.trace);
    }
}
