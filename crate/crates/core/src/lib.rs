//! Inverse power methods for nonlinear eigenproblems.
//!
//! The eigenproblems handled here are ratios `F(f) = R(f) / S(f)` of
//! nonnegative, positively p-homogeneous, even functionals; critical points
//! of `F` generalize eigenvectors, and its global minimum generalizes the
//! smallest eigenvalue. The [`ipm`] module provides the generic iterations
//! (one for p = 1, one for p > 1) together with the descent and optimality
//! checks they guarantee; each iteration reduces the eigenproblem to a
//! sequence of convex inner problems supplied by the caller.
//!
//! Two instantiations ship with the crate:
//!
//! * [`one_laplacian`] — the graph 1-Laplacian. Minimizing its ratio is
//!   equivalent to minimizing the ratio Cheeger cut, so the module contains a
//!   complete 1-spectral-clustering pipeline: an inner solver for the dual of
//!   the total-variation problem, optimal thresholding of real-valued
//!   iterates into cuts, a posteriori eigenvector certificates, and recursive
//!   multi-way partitioning.
//! * [`sparse_pca`] — sparsity-penalized principal components, where the
//!   inner problem has a soft-threshold closed form.
//!
//! Everything is generic over the floating scalar via [`scalar::Real`];
//! the `*64` aliases below pin the common `f64` choices.

pub mod error;
pub mod graph;
pub mod ipm;
pub mod linalg;
pub mod one_laplacian;
pub mod oracle;
pub mod scalar;
pub mod sparse_pca;

pub use error::{Error, Result};

pub type Graph64 = graph::SparseGraph<f64>;
pub type Points64 = graph::Points<f64>;
pub type Partition64 = graph::Partition;
pub type SymMatrix64 = linalg::SymMatrix<f64>;
pub type EigenResult64 = ipm::EigenResult<f64>;
pub type DataMatrix64 = sparse_pca::DataMatrix<f64>;
