//! Sparse principal component extraction by inverse power iteration.
//!
//! Minimizes ((1−α)‖f‖₂ + α‖f‖₁)/‖Xf‖₂ over component directions f for a
//! centered data matrix X. The inner problem has a closed-form
//! soft-threshold solution, so each outer step is a single matrix-vector
//! pass; α interpolates from plain PCA (α = 0) to the single feature of
//! maximal variance (α = 1).

pub mod data;
pub mod driver;
pub mod functional;
pub mod io;

pub use data::DataMatrix;
pub use driver::{
    deterministic_start, fixed_point_gap, ipm_sparse_pca, run_spca_with_restarts, tradeoff_sweep,
    SparsePcaResult,
};
pub use functional::{argmax_component, spca_functional, spca_inner_closed_form, SpcaPair};
pub use io::{parse_matrix_csv, read_matrix_csv, write_component_csv, write_tradeoff_csv};
