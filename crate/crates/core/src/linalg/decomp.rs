//! LU factorization, Gram–Schmidt orthonormalization and the Newton
//! polar iteration.

use super::{vdot, vnorm, CMat, C64};
use crate::error::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

struct Lu {
    lu: CMat,
    perm: Vec<usize>,
    sign_flips: usize,
}

fn lu_factor(a: &CMat) -> Result<Lu> {
    if !a.is_square() {
        return Err(Error::Numerical(format!(
            "LU needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    a.check_finite("LU input")?;
    let n = a.nrows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign_flips = 0usize;
    for k in 0..n {
        let mut pivot = k;
        let mut best = lu[(k, k)].norm();
        for i in k + 1..n {
            let v = lu[(i, k)].norm();
            if v > best {
                best = v;
                pivot = i;
            }
        }
        if best < 1e-300 {
            return Err(Error::Singular(format!(
                "singular matrix in LU at column {k}"
            )));
        }
        if pivot != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = tmp;
            }
            perm.swap(k, pivot);
            sign_flips += 1;
        }
        let d = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / d;
            lu[(i, k)] = f;
            for j in k + 1..n {
                let sub = f * lu[(k, j)];
                lu[(i, j)] -= sub;
            }
        }
    }
    Ok(Lu {
        lu,
        perm,
        sign_flips,
    })
}

/// Solve `A x = b` by LU with partial pivoting.
pub fn lu_solve(a: &CMat, b: &[C64]) -> Result<Vec<C64>> {
    let f = lu_factor(a)?;
    let n = a.nrows();
    let mut x: Vec<C64> = f.perm.iter().map(|&p| b[p]).collect();
    for i in 0..n {
        for j in 0..i {
            let sub = f.lu[(i, j)] * x[j];
            x[i] -= sub;
        }
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let sub = f.lu[(i, j)] * x[j];
            x[i] -= sub;
        }
        x[i] /= f.lu[(i, i)];
    }
    Ok(x)
}

pub fn lu_inverse(a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    let f = lu_factor(a)?;
    let mut inv = CMat::zeros(n, n);
    let mut col = vec![C64::ZERO; n];
    for c in 0..n {
        for (i, slot) in col.iter_mut().enumerate() {
            *slot = if f.perm[i] == c { C64::ONE } else { C64::ZERO };
        }
        for i in 0..n {
            for j in 0..i {
                let sub = f.lu[(i, j)] * col[j];
                col[i] -= sub;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let sub = f.lu[(i, j)] * col[j];
                col[i] -= sub;
            }
            col[i] /= f.lu[(i, i)];
        }
        inv.set_col(c, &col);
    }
    Ok(inv)
}

pub fn lu_det(a: &CMat) -> Result<C64> {
    match lu_factor(a) {
        Ok(f) => {
            let mut d = if f.sign_flips % 2 == 0 {
                C64::ONE
            } else {
                -C64::ONE
            };
            for i in 0..a.nrows() {
                d *= f.lu[(i, i)];
            }
            Ok(d)
        }
        Err(Error::Singular(_)) => Ok(C64::ZERO),
        Err(e) => Err(e),
    }
}

/// Modified Gram–Schmidt on the columns of `a`, in place.
///
/// The implicit R factor has a positive diagonal, which is exactly the
/// normalization that turns a Ginibre sample into a Haar-distributed
/// unitary. Fails on (numerically) dependent columns.
pub fn mgs_orthonormalize(a: &mut CMat) -> Result<()> {
    let cols = a.ncols();
    for j in 0..cols {
        let mut v = a.col(j);
        for k in 0..j {
            let q = a.col(k);
            let coef = vdot(&v, &q);
            for (vi, qi) in v.iter_mut().zip(&q) {
                *vi -= coef * qi;
            }
        }
        // second pass for orthogonality at machine precision
        for k in 0..j {
            let q = a.col(k);
            let coef = vdot(&v, &q);
            for (vi, qi) in v.iter_mut().zip(&q) {
                *vi -= coef * qi;
            }
        }
        let n = vnorm(&v);
        if n < 1e-14 {
            return Err(Error::Singular(format!(
                "dependent column {j} in Gram-Schmidt"
            )));
        }
        for vi in v.iter_mut() {
            *vi /= C64::new(n, 0.0);
        }
        a.set_col(j, &v);
    }
    Ok(())
}

/// Unitary polar factor of a nonsingular matrix via the Newton iteration
/// `X ← (X + X^{-*})/2`.
pub fn polar_unitary(m: &CMat) -> Result<CMat> {
    m.check_finite("polar input")?;
    let n = m.nrows();
    let mut x = m.clone();
    for _ in 0..80 {
        let xi = x.inverse()?.adjoint();
        let next = x.add(&xi).scale(C64::new(0.5, 0.0));
        let delta = next.sub(&x).frobenius_norm();
        x = next;
        if delta < 1e-15 * (n as f64) {
            break;
        }
    }
    if x.unitarity_residual() > 1e-12 {
        return Err(Error::NonConvergence(
            "polar iteration did not reach a unitary factor".into(),
        ));
    }
    Ok(x)
}

/// Estimate of the spectral norm by power iteration on `A^* A`.
pub fn spectral_norm_est(a: &CMat) -> f64 {
    let ata = a.adjoint().mul(a);
    let n = ata.nrows();
    if n == 0 {
        return 0.0;
    }
    let mut v: Vec<C64> = (0..n)
        .map(|i| C64::new(1.0 + (i as f64) * 0.3, 0.2 - (i as f64) * 0.1))
        .collect();
    let n0 = vnorm(&v);
    for z in v.iter_mut() {
        *z /= n0;
    }
    let mut lam = 0.0f64;
    for _ in 0..60 {
        let w = ata.matvec(&v);
        let nw = vnorm(&w);
        if nw < 1e-300 {
            return 0.0;
        }
        lam = nw;
        v = w.iter().map(|z| z / nw).collect();
    }
    libm::sqrt(lam)
}
