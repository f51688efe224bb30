//! Inverse power method for nonlinear eigenproblems.
//!
//! An eigenproblem here is a ratio F(f) = R(f)/S(f) of two convex, even,
//! positively p-homogeneous functionals with S vanishing only at the origin.
//! Critical points satisfy 0 ∈ ∂R(f) − λ ∂S(f) with λ = F(f). The drivers in
//! [`driver`] minimize F by solving one convex inner problem per step, and are
//! parameterized over [`pair::FunctionalPair`] and the inner solver, so
//! application modules plug in their own structure.

pub mod checks;
pub mod driver;
pub mod pair;

pub use checks::{check_euler_identity, check_hoelder_inequality, evaluate_ratio, verify_eigenpair};
pub use driver::{ipm_p1, ipm_pgt1, trace_is_strictly_decreasing, EigenResult, IpmConfig};
pub use pair::{
    CubicPair, CubicSeparableSolver, FunctionalPair, InnerSolverP1, InnerSolverPGt1, L1L2Pair,
    QuadraticPair, SoftThresholdSolver, SpdInnerSolver,
};
