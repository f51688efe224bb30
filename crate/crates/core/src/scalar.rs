//! Scalar abstraction for all numeric kernels.
//!
//! Everything in this crate is generic over [`Real`], a thin bundle of the
//! `num-traits` bounds the algorithms actually use. `f32` and `f64` implement
//! it out of the box; `f64` aliases for the main types live at the crate root.

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

pub trait Real:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Shorthand for embedding an `f64` constant. Panics only if the target
    /// type cannot represent any finite `f64`, which none of the supported
    /// scalar types do.
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant must embed into scalar type")
    }

    /// Lossy view as `f64` for reporting and error messages.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Euclidean norm. Plain sum of squares: desk-scale inputs, no rescaling.
pub fn norm2<S: Real>(v: &[S]) -> S {
    v.iter().map(|&x| x * x).sum::<S>().sqrt()
}

pub fn norm1<S: Real>(v: &[S]) -> S {
    v.iter().map(|&x| x.abs()).sum()
}

pub fn dot<S: Real>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn scale<S: Real>(v: &mut [S], s: S) {
    for x in v.iter_mut() {
        *x *= s;
    }
}

/// x ← x + c·y
pub fn axpy<S: Real>(x: &mut [S], c: S, y: &[S]) {
    debug_assert_eq!(x.len(), y.len());
    for (xi, &yi) in x.iter_mut().zip(y) {
        *xi = *xi + c * yi;
    }
}

/// Sign with sign(0) = 0. This is the fixed subgradient selection for the
/// 1-norm used everywhere outside the graph 1-Laplacian driver (which has its
/// own balanced rule for zero entries).
pub fn sign0<S: Real>(x: S) -> S {
    if x > S::zero() {
        S::one()
    } else if x < S::zero() {
        -S::one()
    } else {
        S::zero()
    }
}
