//! Small real-matrix helpers: orthonormal complements via Householder
//! reflections, and symmetric eigenvalues (closed-form 2x2, Jacobi
//! sweeps for general size).

// indexed loops kept where they mirror the usual matrix notation
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Orthonormal basis of the orthogonal complement of the span of `rows`
/// inside R^d. Each input row must have length `d`; returns `d - k`
/// vectors. Fails if the rows are numerically dependent.
pub fn householder_complement(rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let k = rows.len();
    if k == 0 {
        return Err(Error::Singular("no constraint rows given".into()));
    }
    let d = rows[0].len();
    if k > d {
        return Err(Error::Singular("more constraints than dimensions".into()));
    }
    // QR of the d x k matrix whose columns are the given rows
    let mut a: Vec<Vec<f64>> = (0..d)
        .map(|i| rows.iter().map(|r| r[i]).collect())
        .collect();
    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(k);
    for j in 0..k {
        let norm_x: f64 = libm::sqrt((j..d).map(|i| a[i][j] * a[i][j]).sum());
        if norm_x < 1e-13 {
            return Err(Error::Singular(
                "rank-deficient constraint differential".into(),
            ));
        }
        let mut v = vec![0.0; d];
        for (i, slot) in v.iter_mut().enumerate().take(d).skip(j) {
            *slot = a[i][j];
        }
        let sign = if v[j] >= 0.0 { 1.0 } else { -1.0 };
        v[j] += sign * norm_x;
        let vn: f64 = libm::sqrt(v.iter().map(|x| x * x).sum());
        for x in v.iter_mut() {
            *x /= vn;
        }
        // apply I - 2 v v^T to the remaining columns
        for col in j..k {
            let dot: f64 = (0..d).map(|i| v[i] * a[i][col]).sum();
            for i in 0..d {
                a[i][col] -= 2.0 * dot * v[i];
            }
        }
        reflectors.push(v);
    }
    // complement = H_1 ... H_k e_i for i = k..d
    let mut out = Vec::with_capacity(d - k);
    for i in k..d {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        for v in reflectors.iter().rev() {
            let dot: f64 = v.iter().zip(&e).map(|(a, b)| a * b).sum();
            for (ej, vj) in e.iter_mut().zip(v) {
                *ej -= 2.0 * dot * vj;
            }
        }
        out.push(e);
    }
    Ok(out)
}

/// Smallest eigenvalue of the symmetric 2x2 matrix [[a, b], [b, c]].
pub fn sym2x2_min_eig(a: f64, b: f64, c: f64) -> f64 {
    let half_tr = 0.5 * (a + c);
    let disc = libm::sqrt(0.25 * (a - c) * (a - c) + b * b);
    half_tr - disc
}

/// Eigenvalues of a symmetric real matrix by cyclic Jacobi sweeps,
/// returned in descending order.
pub fn sym_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    for _ in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if libm::fabs(a[p][q]) < 1e-300 {
                    continue;
                }
                let theta = 0.5 * libm::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
                let (s, c) = libm::sincos(theta);
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigs.sort_by(|x, y| y.total_cmp(x));
    eigs
}
