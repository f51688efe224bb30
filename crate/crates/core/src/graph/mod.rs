//! Weighted undirected graphs at desk scale, plus the synthetic data and
//! baseline pieces the clustering drivers need: cut metrics, a two-moons
//! generator, kNN graph construction, and the Laplacian second eigenvector.

pub mod io;
pub mod knn;
pub mod metrics;
pub mod spectral;
pub mod two_moons;
mod types;

pub use knn::build_knn_graph;
pub use metrics::{cut, rcc, rcut};
pub use spectral::{spectral_second_eigenvector, SecondEigenpair};
pub use two_moons::{generate_two_moons, TwoMoonsSpec, DEFAULT_NOISE_SIGMA};
pub use types::{Edge, Partition, Points, SparseGraph};
