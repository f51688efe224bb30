//! Centered data matrices for principal component extraction.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ipm::driver::random_unit_vector;
use crate::scalar::{norm2, Real};

/// Residual tolerance (relative to the eigenvalue) for the internal top-
/// eigenvalue power iteration, and its iteration cap.
const POWER_TOLERANCE: f64 = 1e-13;
const POWER_MAX_ITERS: usize = 50_000;

/// An n×p data matrix (rows = observations, columns = features) with every
/// column centered to mean zero at construction. Stores cached column norms
/// and the top eigenvalue of the covariance matrix XᵀX; the covariance is
/// never materialized, so the p ≫ n shape stays cheap.
#[derive(Debug, Clone)]
pub struct DataMatrix<S> {
    data: Vec<S>, // row-major, centered
    n: usize,
    p: usize,
    column_norms: Vec<S>,
    lambda_max: S,
}

impl<S: Real> DataMatrix<S> {
    /// Builds from observation rows; centers each column. Rejects ragged
    /// input, empty input, and any feature that is constant across
    /// observations (its centered column is zero, so it carries no variance).
    pub fn from_rows(rows: &[Vec<S>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows[0].is_empty() {
            return Err(Error::InvalidConfig("empty data matrix".into()));
        }
        let p = rows[0].len();
        for row in rows {
            if row.len() != p {
                return Err(Error::DimensionMismatch {
                    expected: p,
                    got: row.len(),
                });
            }
        }
        let mut data = Vec::with_capacity(n * p);
        for row in rows {
            data.extend_from_slice(row);
        }
        Self::from_flat(n, p, data)
    }

    /// Builds from a row-major buffer of length n·p; centers each column.
    pub fn from_flat(n: usize, p: usize, mut data: Vec<S>) -> Result<Self> {
        if n == 0 || p == 0 || data.len() != n * p {
            return Err(Error::InvalidConfig(format!(
                "flat buffer of length {} does not match {}x{}",
                data.len(),
                n,
                p
            )));
        }
        let inv_n = S::one() / S::c(n as f64);
        for j in 0..p {
            let mut mean = S::zero();
            for i in 0..n {
                mean += data[i * p + j];
            }
            mean *= inv_n;
            for i in 0..n {
                data[i * p + j] -= mean;
            }
        }
        let mut column_norms = vec![S::zero(); p];
        for (j, norm) in column_norms.iter_mut().enumerate() {
            let mut sq = S::zero();
            for i in 0..n {
                let x = data[i * p + j];
                sq += x * x;
            }
            if sq == S::zero() {
                return Err(Error::ZeroColumn(j));
            }
            *norm = sq.sqrt();
        }
        let mut m = DataMatrix {
            data,
            n,
            p,
            column_norms,
            lambda_max: S::zero(),
        };
        m.lambda_max = m.power_lambda_max();
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.p..(i + 1) * self.p]
    }

    pub fn column_norms(&self) -> &[S] {
        &self.column_norms
    }

    /// Index of the feature with the largest centered column norm
    /// (equivalently the largest covariance diagonal); ties pick the lowest.
    pub fn max_norm_column(&self) -> usize {
        let mut best = 0;
        for j in 1..self.p {
            if self.column_norms[j] > self.column_norms[best] {
                best = j;
            }
        }
        best
    }

    /// Top eigenvalue of XᵀX, computed once at construction by power
    /// iteration. A Rayleigh quotient, hence always a lower bound; accurate
    /// to ~1e-13 relative except for pathologically small spectral gaps.
    pub fn lambda_max(&self) -> S {
        self.lambda_max
    }

    /// X·f, length n.
    pub fn x_times(&self, f: &[S]) -> Vec<S> {
        assert_eq!(f.len(), self.p, "feature-vector length mismatch");
        let mut out = vec![S::zero(); self.n];
        for i in 0..self.n {
            let row = self.row(i);
            let mut acc = S::zero();
            for j in 0..self.p {
                acc += row[j] * f[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Xᵀ·y, length p.
    pub fn xt_times(&self, y: &[S]) -> Vec<S> {
        assert_eq!(y.len(), self.n, "observation-vector length mismatch");
        let mut out = vec![S::zero(); self.p];
        for i in 0..self.n {
            let row = self.row(i);
            let yi = y[i];
            for j in 0..self.p {
                out[j] += yi * row[j];
            }
        }
        out
    }

    /// XᵀX·f without materializing the covariance.
    pub fn sigma_times(&self, f: &[S]) -> Vec<S> {
        self.xt_times(&self.x_times(f))
    }

    /// ⟨f, XᵀXf⟩ / ‖f‖₂² — the variance captured by direction f.
    pub fn rayleigh(&self, f: &[S]) -> Result<S> {
        let nf = norm2(f);
        if nf == S::zero() {
            return Err(Error::ZeroVector);
        }
        let z = norm2(&self.x_times(f));
        Ok(z * z / (nf * nf))
    }

    fn power_lambda_max(&self) -> S {
        // Two deterministic starts: the dominant-variance basis vector, and a
        // fixed-seed random direction (rescues the rare case where the basis
        // start is orthogonal to the top eigenspace). Best Rayleigh quotient
        // wins.
        let mut e = vec![S::zero(); self.p];
        e[self.max_norm_column()] = S::one();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5bca_0001);
        let r = random_unit_vector::<S, _>(self.p, &mut rng);
        let mut best = S::zero();
        for start in [e, r] {
            best = best.max(self.power_from(start));
        }
        best
    }

    fn power_from(&self, mut v: Vec<S>) -> S {
        let mut rq = S::zero();
        for _ in 0..POWER_MAX_ITERS {
            let z = self.x_times(&v);
            let zz = norm2(&z);
            rq = zz * zz; // ⟨v, Σv⟩ with ‖v‖₂ = 1
            let w = self.xt_times(&z); // Σv
            let mut res = S::zero();
            for (wi, vi) in w.iter().zip(v.iter()) {
                let d = *wi - rq * *vi;
                res += d * d;
            }
            if res.sqrt() <= S::c(POWER_TOLERANCE) * rq || rq == S::zero() {
                break;
            }
            let nw = norm2(&w);
            v = w;
            crate::scalar::scale(&mut v, S::one() / nw);
        }
        rq
    }
}
