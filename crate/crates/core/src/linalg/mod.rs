//! Dense complex linear algebra sized for small matrices (m ≤ 10).
//!
//! Everything here is written directly against row-major `Vec<C64>`
//! storage: the matrices in this problem are tiny, so clarity and
//! reproducibility win over BLAS-style tuning.

mod decomp;
mod eig;
mod expmlog;
mod real;

pub use decomp::{
    lu_det, lu_inverse, lu_solve, mgs_orthonormalize, polar_unitary, spectral_norm_est,
};
pub use eig::eigenvalues;
pub use expmlog::{expm, logm_unitary, sqrtm_db};
pub use real::{householder_complement, sym2x2_min_eig, sym_eigenvalues};

use crate::error::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex;

/// Complex double-precision scalar.
pub type C64 = Complex<f64>;

/// Shorthand for `C64::new`.
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl core::fmt::Debug for CMat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl core::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

#[allow(clippy::should_implement_trait)] // mul/add follow matrix-library convention
impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![C64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from a row-major slice of `(re, im)` pairs.
    pub fn from_rows(rows: usize, cols: usize, entries: &[C64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        CMat {
            rows,
            cols,
            data: entries.to_vec(),
        }
    }

    /// Diagonal matrix from a slice.
    pub fn diag(d: &[C64]) -> Self {
        let mut m = CMat::zeros(d.len(), d.len());
        for (i, &z) in d.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matvec");
        let mut out = vec![C64::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = C64::ZERO;
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        CMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        CMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, z: C64) -> CMat {
        let data = self.data.iter().map(|a| a * z).collect();
        CMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add_assign(&mut self, other: &CMat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> CMat {
        let data = self.data.iter().map(|z| z.conj()).collect();
        CMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute column sum (operator 1-norm).
    pub fn one_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.cols {
            let s: f64 = (0..self.rows).map(|i| self[(i, j)].norm()).sum();
            best = best.max(s);
        }
        best
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &CMat) -> CMat {
        self.mul(other).sub(&other.mul(self))
    }

    /// Hermitian inner product `tr(self · other^*)`.
    pub fn hs_inner(&self, other: &CMat) -> C64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    /// The real part of [`CMat::hs_inner`]; this is the bi-invariant metric
    /// used throughout the crate.
    pub fn re_inner(&self, other: &CMat) -> f64 {
        self.hs_inner(other).re
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[C64]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    /// `‖self − I‖_F`.
    pub fn dist_to_identity(&self) -> f64 {
        assert!(self.is_square());
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)] - if i == j { C64::ONE } else { C64::ZERO };
                acc += d.norm_sqr();
            }
        }
        libm::sqrt(acc)
    }

    /// Residual `‖self^* self − I‖_F` measuring failure of unitarity.
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint().mul(self).dist_to_identity()
    }

    pub fn inverse(&self) -> Result<CMat> {
        lu_inverse(self)
    }

    pub fn det(&self) -> Result<C64> {
        lu_det(self)
    }

    fn check_finite(&self, what: &str) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::Numerical(alloc::format!(
                "non-finite values in {what}"
            )))
        }
    }
}

/// Hermitian inner product of two complex vectors, `⟨u, v⟩ = Σ u_i conj(v_i)`
/// (linear in the first slot, conjugate-linear in the second).
pub fn vdot(u: &[C64], v: &[C64]) -> C64 {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// Symmetric bilinear form `(u, v) = Σ u_i v_i` (no conjugation).
pub fn bdot(u: &[C64], v: &[C64]) -> C64 {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn vnorm(u: &[C64]) -> f64 {
    libm::sqrt(u.iter().map(|z| z.norm_sqr()).sum())
}
