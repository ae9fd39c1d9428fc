//! Eigenvalues of a general complex matrix: Householder reduction to
//! Hessenberg form followed by the explicit single-shift QR iteration
//! with Wilkinson shifts. Values only — this crate never needs the
//! Schur vectors.

use super::{CMat, C64};
use crate::error::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

fn hessenberg(a: &CMat) -> CMat {
    let n = a.nrows();
    let mut h = a.clone();
    if n < 3 {
        return h;
    }
    for k in 0..n - 2 {
        // Householder vector for column k below the subdiagonal
        let mut x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = libm::sqrt(x.iter().map(|z| z.norm_sqr()).sum());
        if xnorm < 1e-300 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            C64::ONE
        };
        x[0] += phase * C64::new(xnorm, 0.0);
        let vnorm = libm::sqrt(x.iter().map(|z| z.norm_sqr()).sum());
        if vnorm < 1e-300 {
            continue;
        }
        let v: Vec<C64> = x.iter().map(|z| z / vnorm).collect();
        // H ← (I - 2 v v^*) H from the left, rows k+1..n
        for j in 0..n {
            let mut dot = C64::ZERO;
            for (t, vi) in v.iter().enumerate() {
                dot += vi.conj() * h[(k + 1 + t, j)];
            }
            let dot = dot * C64::new(2.0, 0.0);
            for (t, vi) in v.iter().enumerate() {
                let sub = vi * dot;
                h[(k + 1 + t, j)] -= sub;
            }
        }
        // H ← H (I - 2 v v^*) from the right, columns k+1..n
        for i in 0..n {
            let mut dot = C64::ZERO;
            for (t, vi) in v.iter().enumerate() {
                dot += h[(i, k + 1 + t)] * vi;
            }
            let dot = dot * C64::new(2.0, 0.0);
            for (t, vi) in v.iter().enumerate() {
                let sub = dot * vi.conj();
                h[(i, k + 1 + t)] -= sub;
            }
        }
    }
    // clean the strictly-lower part that should now be zero
    for i in 0..n {
        for j in 0..i.saturating_sub(1) {
            h[(i, j)] = C64::ZERO;
        }
    }
    h
}

fn eig2x2(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * C64::new(4.0, 0.0)).sqrt();
    let half = C64::new(0.5, 0.0);
    ((tr + disc) * half, (tr - disc) * half)
}

/// Complex Givens rotation with real cosine: `G [x; y] = [r; 0]`.
fn givens(x: C64, y: C64) -> (f64, C64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, C64::ZERO);
    }
    if ax == 0.0 {
        return (0.0, C64::ONE);
    }
    let r = libm::sqrt(ax * ax + ay * ay);
    let cth = ax / r;
    let s = (x / ax) * y.conj() / r;
    (cth, s)
}

/// Eigenvalues of a square complex matrix (unordered).
pub fn eigenvalues(a: &CMat) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::Numerical("eigenvalues need a square matrix".into()));
    }
    a.check_finite("eigenvalue input")?;
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    let mut h = hessenberg(a);
    let mut eigs = vec![C64::ZERO; n];
    let mut hi = n;
    let mut iters = 0usize;
    let max_iters = 60 * n;
    while hi > 0 {
        if hi == 1 {
            eigs[0] = h[(0, 0)];
            break;
        }
        // locate the start of the trailing irreducible block
        let mut lo = hi - 1;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let sub = h[(lo, lo - 1)].norm();
            if sub <= f64::EPSILON * s.max(1e-300) {
                h[(lo, lo - 1)] = C64::ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            eigs[hi - 1] = h[(hi - 1, hi - 1)];
            hi -= 1;
            continue;
        }
        if lo == hi - 2 {
            let (l1, l2) = eig2x2(
                h[(hi - 2, hi - 2)],
                h[(hi - 2, hi - 1)],
                h[(hi - 1, hi - 2)],
                h[(hi - 1, hi - 1)],
            );
            eigs[hi - 2] = l1;
            eigs[hi - 1] = l2;
            hi -= 2;
            continue;
        }
        iters += 1;
        if iters > max_iters {
            return Err(Error::NonConvergence(
                "QR eigenvalue iteration stalled".into(),
            ));
        }
        // Wilkinson shift from the trailing 2x2, with an occasional
        // exceptional shift to break symmetry-induced cycles
        let corner = h[(hi - 1, hi - 1)];
        let mu = if iters.is_multiple_of(17) {
            corner + C64::new(0.75 * h[(hi - 1, hi - 2)].norm(), 0.0)
        } else {
            let (l1, l2) = eig2x2(
                h[(hi - 2, hi - 2)],
                h[(hi - 2, hi - 1)],
                h[(hi - 1, hi - 2)],
                h[(hi - 1, hi - 1)],
            );
            if (l1 - corner).norm() <= (l2 - corner).norm() {
                l1
            } else {
                l2
            }
        };
        // explicit single-shift QR sweep on the block [lo, hi):
        // factor (H - mu I) = QR by left rotations, form RQ, add the shift back
        for i in lo..hi {
            h[(i, i)] -= mu;
        }
        let mut rotations: Vec<(usize, f64, C64)> = Vec::with_capacity(hi - lo);
        for k in lo..hi - 1 {
            let (cth, s) = givens(h[(k, k)], h[(k + 1, k)]);
            rotations.push((k, cth, s));
            for j in lo..hi {
                let hk = h[(k, j)];
                let hk1 = h[(k + 1, j)];
                h[(k, j)] = hk * C64::new(cth, 0.0) + hk1 * s;
                h[(k + 1, j)] = hk1 * C64::new(cth, 0.0) - hk * s.conj();
            }
        }
        for (k, cth, s) in rotations {
            // right-apply G^* to columns k, k+1 over block rows
            for i in lo..hi {
                let hk = h[(i, k)];
                let hk1 = h[(i, k + 1)];
                h[(i, k)] = hk * C64::new(cth, 0.0) + hk1 * s.conj();
                h[(i, k + 1)] = hk1 * C64::new(cth, 0.0) - hk * s;
            }
        }
        for i in lo..hi {
            h[(i, i)] += mu;
        }
    }
    Ok(eigs)
}
