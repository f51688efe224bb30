//! Functional pairs and pluggable inner solvers.

use crate::linalg::{Cholesky, SymMatrix};
use crate::scalar::{dot, norm1, norm2, sign0, Real};

/// A ratio F = R/S of convex, even, positively p-homogeneous functionals.
/// Contract: R, S ≥ 0; S(f) = 0 iff f = 0; both share the same degree p ≥ 1;
/// `subgrad_*` return a fixed, deterministic subgradient selection.
pub trait FunctionalPair<S: Real>: Send + Sync {
    fn dim(&self) -> usize;
    /// Homogeneity degree p of both R and S.
    fn degree(&self) -> S;
    fn eval_r(&self, f: &[S]) -> S;
    fn eval_s(&self, f: &[S]) -> S;
    fn subgrad_r(&self, f: &[S]) -> Vec<S>;
    fn subgrad_s(&self, f: &[S]) -> Vec<S>;
}

/// Inner step for degree-1 pairs: minimize Φ(u) = R(u) − λ⟨u, s⟩ over ‖u‖₂ ≤ 1.
/// The driver re-evaluates Φ on the output and enforces Φ(u) ≤ 0, so a solver
/// only has to be correct, not certified.
pub trait InnerSolverP1<S: Real, P: FunctionalPair<S> + ?Sized>: Send + Sync {
    fn minimize(&self, pair: &P, lambda: S, s: &[S]) -> Vec<S>;
}

/// Inner step for degree-p>1 pairs: minimize Ψ(u) = R(u) − ⟨u, s⟩ over all u.
/// `warm` is the scaled current iterate F(f)^{1/(1−p)}·f; solvers that cannot
/// do better must return it, which keeps descent intact.
pub trait InnerSolverPGt1<S: Real, P: FunctionalPair<S> + ?Sized>: Send + Sync {
    fn minimize(&self, pair: &P, s: &[S], warm: &[S]) -> Vec<S>;
}

/// R = ‖f‖₁, S = ‖f‖₂, p = 1. Eigenvectors are the equal-magnitude support
/// vectors with λ = √|support|; the global minimum is a signed coordinate
/// vector with λ = 1.
#[derive(Debug, Clone)]
pub struct L1L2Pair {
    pub dim: usize,
}

impl<S: Real> FunctionalPair<S> for L1L2Pair {
    fn dim(&self) -> usize {
        self.dim
    }
    fn degree(&self) -> S {
        S::one()
    }
    fn eval_r(&self, f: &[S]) -> S {
        norm1(f)
    }
    fn eval_s(&self, f: &[S]) -> S {
        norm2(f)
    }
    fn subgrad_r(&self, f: &[S]) -> Vec<S> {
        f.iter().map(|&x| sign0(x)).collect()
    }
    fn subgrad_s(&self, f: &[S]) -> Vec<S> {
        let n = norm2(f);
        if n == S::zero() {
            vec![S::zero(); f.len()]
        } else {
            f.iter().map(|&x| x / n).collect()
        }
    }
}

/// R = ⟨f, Af⟩ with A symmetric positive semidefinite, S = ‖f‖₂², p = 2.
/// The eigenproblem is the classical one for A.
#[derive(Debug, Clone)]
pub struct QuadraticPair<S> {
    a: SymMatrix<S>,
}

impl<S: Real> QuadraticPair<S> {
    pub fn new(a: SymMatrix<S>) -> Self {
        QuadraticPair { a }
    }

    pub fn matrix(&self) -> &SymMatrix<S> {
        &self.a
    }
}

impl<S: Real> FunctionalPair<S> for QuadraticPair<S> {
    fn dim(&self) -> usize {
        self.a.n()
    }
    fn degree(&self) -> S {
        S::c(2.0)
    }
    fn eval_r(&self, f: &[S]) -> S {
        self.a.quad_form(f)
    }
    fn eval_s(&self, f: &[S]) -> S {
        let n = norm2(f);
        n * n
    }
    fn subgrad_r(&self, f: &[S]) -> Vec<S> {
        let mut g = self.a.mat_vec(f);
        crate::scalar::scale(&mut g, S::c(2.0));
        g
    }
    fn subgrad_s(&self, f: &[S]) -> Vec<S> {
        f.iter().map(|&x| x + x).collect()
    }
}

/// R = S = Σ|f_i|³, p = 3. F ≡ 1, so every nonzero vector is an eigenvector;
/// useful as a degenerate stress case.
#[derive(Debug, Clone)]
pub struct CubicPair {
    pub dim: usize,
}

impl<S: Real> FunctionalPair<S> for CubicPair {
    fn dim(&self) -> usize {
        self.dim
    }
    fn degree(&self) -> S {
        S::c(3.0)
    }
    fn eval_r(&self, f: &[S]) -> S {
        f.iter().map(|&x| x.abs().powi(3)).sum()
    }
    fn eval_s(&self, f: &[S]) -> S {
        self.eval_r(f)
    }
    fn subgrad_r(&self, f: &[S]) -> Vec<S> {
        f.iter().map(|&x| S::c(3.0) * sign0(x) * x * x).collect()
    }
    fn subgrad_s(&self, f: &[S]) -> Vec<S> {
        self.subgrad_r(f)
    }
}

/// Exact inner solver for pairs whose numerator is (1−a)‖u‖₂ + a‖u‖₁ with
/// a ∈ [0, 1] (covers [`L1L2Pair`] at a = 1). The minimizer over the unit ball
/// is the normalized soft-threshold of λs: u ∝ sign(s_i)(λ|s_i| − a)₊, and the
/// zero vector when everything thresholds away (inner optimum 0).
#[derive(Debug, Clone)]
pub struct SoftThresholdSolver {
    pub alpha: f64,
}

impl<S: Real, P: FunctionalPair<S>> InnerSolverP1<S, P> for SoftThresholdSolver {
    fn minimize(&self, _pair: &P, lambda: S, s: &[S]) -> Vec<S> {
        let a = S::c(self.alpha);
        let mut u: Vec<S> = s
            .iter()
            .map(|&si| {
                let t = lambda * si.abs() - a;
                if t > S::zero() {
                    sign0(si) * t
                } else {
                    S::zero()
                }
            })
            .collect();
        let n = norm2(&u);
        if n > S::zero() {
            crate::scalar::scale(&mut u, S::one() / n);
        }
        u
    }
}

/// Exact inner solver for [`QuadraticPair`]: Ψ(u) = ⟨u, Au⟩ − ⟨u, s⟩ is
/// minimized by the solution of 2Au = s. Factors A once; requires A positive
/// definite.
#[derive(Debug, Clone)]
pub struct SpdInnerSolver<S> {
    chol: Cholesky<S>,
}

impl<S: Real> SpdInnerSolver<S> {
    pub fn new(a: &SymMatrix<S>) -> crate::Result<Self> {
        Ok(SpdInnerSolver {
            chol: Cholesky::new(a)?,
        })
    }
}

impl<S: Real, P: FunctionalPair<S>> InnerSolverPGt1<S, P> for SpdInnerSolver<S> {
    fn minimize(&self, _pair: &P, s: &[S], _warm: &[S]) -> Vec<S> {
        let mut u = self.chol.solve(s);
        crate::scalar::scale(&mut u, S::c(0.5));
        u
    }
}

/// Exact inner solver for [`CubicPair`]: Ψ separates per coordinate and
/// min |u|³ − u·s_i is attained at u = sign(s_i)·√(|s_i|/3).
#[derive(Debug, Clone)]
pub struct CubicSeparableSolver;

impl<S: Real, P: FunctionalPair<S>> InnerSolverPGt1<S, P> for CubicSeparableSolver {
    fn minimize(&self, _pair: &P, s: &[S], _warm: &[S]) -> Vec<S> {
        s.iter()
            .map(|&si| sign0(si) * (si.abs() / S::c(3.0)).sqrt())
            .collect()
    }
}

/// Inner objective for degree-1 pairs; the quantity the p=1 driver gates on.
pub fn inner_objective_p1<S: Real, P: FunctionalPair<S> + ?Sized>(
    pair: &P,
    lambda: S,
    s: &[S],
    u: &[S],
) -> S {
    pair.eval_r(u) - lambda * dot(u, s)
}

/// Inner objective for degree-p>1 pairs.
pub fn inner_objective_pgt1<S: Real, P: FunctionalPair<S> + ?Sized>(pair: &P, s: &[S], u: &[S]) -> S {
    pair.eval_r(u) - dot(u, s)
}
