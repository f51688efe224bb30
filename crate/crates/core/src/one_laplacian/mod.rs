//! Graph 1-Laplacian eigenproblem: functionals, inner solver, thresholding,
//! certification, the outer inverse-power driver, and recursive multicut.
//!
//! The eigenproblem minimized here is the ratio of total variation to the
//! l1 norm over median-zero vertex functions; its minimal nonzero
//! eigenvalue equals the optimal ratio Cheeger cut of the graph, and
//! thresholding an eigenvector recovers a cut at least as good as the
//! vector's own ratio.

pub mod certify;
pub mod driver;
pub mod experiment;
pub mod fista;
pub mod functional;
pub mod multicut;
pub mod threshold;

pub use certify::{certify_eigenvector, EigenCertificate};
pub use driver::{
    ipm_one_laplacian, run_with_restarts, run_with_restarts_from_spectral,
    spectral_indicator_init, ClusterRun, InitKind, OneLapSolution,
};
pub use experiment::{
    classification_error, moons_comparison_draw, summarize_moons, MoonsDraw, MoonsSummary,
};
pub use fista::{solve_inner, DualState, FistaConfig, InnerSolution, InnerStop};
pub use functional::{
    balanced_sign, f1_ratio, lower_median, median_zero_shift, rescale_l1, total_variation,
    OneLapPair,
};
pub use multicut::{recursive_multicut, ClusterTree, SplitReason, SplitRecord};
pub use threshold::{optimal_threshold, ThresholdCut};
