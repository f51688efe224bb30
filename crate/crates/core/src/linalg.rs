//! Small dense symmetric linear algebra: just enough for desk-scale inner
//! solves and reference eigendecompositions. No external backend.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense symmetric matrix, full row-major storage.
#[derive(Debug, Clone)]
pub struct SymMatrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Real> SymMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![S::zero(); n * n],
        }
    }

    /// Builds from rows, symmetrizing as (M + Mᵀ)/2 to absorb rounding skew.
    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        let half = S::c(0.5);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = (rows[i][j] + rows[j][i]) * half;
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.n + j]
    }

    pub fn set_sym(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn mat_vec(&self, x: &[S]) -> Vec<S> {
        debug_assert_eq!(x.len(), self.n);
        let mut y = vec![S::zero(); self.n];
        for i in 0..self.n {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            y[i] = row.iter().zip(x).map(|(&a, &b)| a * b).sum();
        }
        y
    }

    /// fᵀ A f
    pub fn quad_form(&self, f: &[S]) -> S {
        let af = self.mat_vec(f);
        crate::scalar::dot(f, &af)
    }

    fn frobenius(&self) -> S {
        self.data.iter().map(|&x| x * x).sum::<S>().sqrt()
    }
}

/// Eigendecomposition of a symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<S> {
    pub values: Vec<S>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<S>>,
}

/// Cyclic Jacobi iteration. Converges unconditionally for symmetric input;
/// the sweep cap is a safety net, not a tuning knob.
pub fn jacobi_eigh<S: Real>(a: &SymMatrix<S>) -> EigenDecomposition<S> {
    let n = a.n;
    let mut m = a.clone();
    let mut v = vec![S::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = S::one();
    }
    let tol = S::epsilon() * S::c(1e2) * (m.frobenius() + S::one());
    for _sweep in 0..100 {
        let mut off = S::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off += m.get(p, q) * m.get(p, q);
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq.abs() <= S::epsilon() * tol {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (S::c(2.0) * apq);
                let t = {
                    let s = if theta >= S::zero() { S::one() } else { -S::one() };
                    s / (theta.abs() + (theta * theta + S::one()).sqrt())
                };
                let c = S::one() / (t * t + S::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m.get(k, p);
                    let akq = m.get(k, q);
                    m.data[k * n + p] = c * akp - s * akq;
                    m.data[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m.get(p, k);
                    let aqk = m.get(q, k);
                    m.data[p * n + k] = c * apk - s * aqk;
                    m.data[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m.get(i, i)
            .partial_cmp(&m.get(j, j))
            .expect("eigenvalues are finite")
    });
    let values = order.iter().map(|&i| m.get(i, i)).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
        .collect();
    EigenDecomposition { values, vectors }
}

/// Cholesky factor of a symmetric positive definite matrix.
#[derive(Debug, Clone)]
pub struct Cholesky<S> {
    n: usize,
    l: Vec<S>,
}

impl<S: Real> Cholesky<S> {
    pub fn new(a: &SymMatrix<S>) -> Result<Self> {
        let n = a.n;
        let mut l = vec![S::zero(); n * n];
        for j in 0..n {
            let mut d = a.get(j, j);
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if d <= S::zero() {
                return Err(Error::NotPositiveDefinite {
                    col: j,
                    pivot: d.as_f64(),
                });
            }
            let dj = d.sqrt();
            l[j * n + j] = dj;
            for i in (j + 1)..n {
                let mut s = a.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / dj;
            }
        }
        Ok(Cholesky { n, l })
    }

    pub fn solve(&self, b: &[S]) -> Vec<S> {
        let n = self.n;
        debug_assert_eq!(b.len(), n);
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let lik = self.l[i * n + k];
                y[i] = y[i] - lik * y[k];
            }
            y[i] = y[i] / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let lki = self.l[k * n + i];
                y[i] = y[i] - lki * y[k];
            }
            y[i] = y[i] / self.l[i * n + i];
        }
        y
    }
}
