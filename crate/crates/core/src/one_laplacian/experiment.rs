//! The two-moons benchmark: per-draw comparison of the multi-start clustering
//! driver against the linear spectral baseline, plus summary statistics.
//!
//! One draw = sample the point cloud, build its kNN similarity graph, cluster
//! it twice — once by optimally thresholding the second Laplacian eigenvector
//! (the baseline) and once by the multi-start nonlinear driver (one run from
//! the thresholded-baseline indicator plus `restarts` random runs, best
//! thresholded cut wins). The run started from the baseline indicator can
//! never end worse than the baseline, so `ipm_spectral_init_rcc <=
//! spectral_rcc` holds per draw by construction of the descent method; the
//! summary exposes the aggregate gap between the two methods.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_knn_graph, generate_two_moons, TwoMoonsSpec};
use crate::ipm::IpmConfig;
use crate::scalar::Real;

use super::driver::{multi_start_runs, pick_best, spectral_indicator_init, InitKind};

/// Outcome of one two-moons draw under both methods.
#[derive(Debug, Clone, Serialize)]
pub struct MoonsDraw<S> {
    /// Seed the points were drawn with.
    pub seed: u64,
    pub n: usize,
    /// Best threshold cut of the second Laplacian eigenvector.
    pub spectral_rcc: S,
    /// Balanced classification error of the spectral cut against the
    /// generating labels.
    pub spectral_error: f64,
    /// Best thresholded cut across all multi-start runs.
    pub ipm_rcc: S,
    pub ipm_error: f64,
    /// Cut of the single run initialized from the spectral indicator;
    /// `<= spectral_rcc` on every draw.
    pub ipm_spectral_init_rcc: S,
    /// Which initialization produced the winning run.
    pub ipm_init: InitKind,
    pub ipm_eigenvalue: S,
}

/// Mean/stddev aggregates over a set of draws (sample standard deviation).
#[derive(Debug, Clone, Serialize)]
pub struct MoonsSummary {
    pub draws: usize,
    pub ipm_rcc_mean: f64,
    pub ipm_rcc_stddev: f64,
    pub ipm_error_mean: f64,
    pub spectral_rcc_mean: f64,
    pub spectral_rcc_stddev: f64,
    pub spectral_error_mean: f64,
}

/// Fraction of misclassified points of a bipartition against reference
/// labels, under the better of the two side-to-label assignments.
pub fn classification_error(mask: &[bool], labels: &[usize]) -> f64 {
    debug_assert_eq!(mask.len(), labels.len());
    let mismatched = mask
        .iter()
        .zip(labels)
        .filter(|&(&m, &l)| m != (l == 1))
        .count();
    mismatched.min(mask.len() - mismatched) as f64 / mask.len() as f64
}

/// Runs one full draw: generate, build the graph, run both methods.
///
/// The kNN graph of a draw can be disconnected (an outlier point isolated by
/// the noise); that draw is rejected with [`Error::Disconnected`] so the
/// caller can re-seed rather than silently compare methods on a graph whose
/// optimal cut is free.
pub fn moons_comparison_draw<S: Real>(
    spec: &TwoMoonsSpec,
    config: &IpmConfig,
) -> Result<MoonsDraw<S>> {
    let (points, labels) = generate_two_moons::<S>(spec)?;
    let g = build_knn_graph(&points, spec.k_neighbors)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }

    let (spectral_f0, spectral_cut) = spectral_indicator_init(&g)?;
    let runs = multi_start_runs(&g, &spectral_f0, config)?;
    let ipm_spectral_init_rcc = runs
        .iter()
        .find(|r| r.init == InitKind::Spectral)
        .expect("multi-start always includes the spectral run")
        .cut
        .rcc;
    let best = pick_best(runs);

    Ok(MoonsDraw {
        seed: spec.seed,
        n: spec.n,
        spectral_rcc: spectral_cut.rcc,
        spectral_error: classification_error(&spectral_cut.mask, &labels),
        ipm_rcc: best.cut.rcc,
        ipm_error: classification_error(&best.cut.mask, &labels),
        ipm_spectral_init_rcc,
        ipm_init: best.init,
        ipm_eigenvalue: best.solution.eigenvalue,
    })
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.clone().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

pub fn summarize_moons<S: Real>(draws: &[MoonsDraw<S>]) -> MoonsSummary {
    let (ipm_rcc_mean, ipm_rcc_stddev) = mean_std(draws.iter().map(|d| d.ipm_rcc.as_f64()));
    let (spectral_rcc_mean, spectral_rcc_stddev) =
        mean_std(draws.iter().map(|d| d.spectral_rcc.as_f64()));
    let (ipm_error_mean, _) = mean_std(draws.iter().map(|d| d.ipm_error));
    let (spectral_error_mean, _) = mean_std(draws.iter().map(|d| d.spectral_error));
    MoonsSummary {
        draws: draws.len(),
        ipm_rcc_mean,
        ipm_rcc_stddev,
        ipm_error_mean,
        spectral_rcc_mean,
        spectral_rcc_stddev,
        spectral_error_mean,
    }
}
