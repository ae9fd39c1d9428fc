//! Matrix exponential (scaling-and-squaring with a degree-13 Padé
//! approximant) and a principal logarithm for near-unitary matrices
//! (inverse scaling-and-squaring with an atanh-type series).

use super::{CMat, C64};
use crate::error::{Error, Result};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Matrix exponential, accurate to ~1e-14 relative for the matrix sizes
/// used by this crate.
pub fn expm(a: &CMat) -> Result<CMat> {
    assert!(a.is_square());
    a.check_finite("expm input")?;
    let n = a.nrows();
    let norm = a.one_norm();
    // theta_13 from Higham's scaling analysis
    let theta = 5.371920351148152;
    let mut s = 0u32;
    if norm > theta {
        s = libm::ceil(libm::log2(norm / theta)) as u32;
    }
    let scale = libm::exp2(-(s as f64));
    let a1 = a.scale(C64::new(scale, 0.0));

    let a2 = a1.mul(&a1);
    let a4 = a2.mul(&a2);
    let a6 = a4.mul(&a2);
    let id = CMat::identity(n);

    let b = |k: usize| C64::new(PADE13[k], 0.0);

    // U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    let inner_u = a6.scale(b(13)).add(&a4.scale(b(11))).add(&a2.scale(b(9)));
    let u_poly = a6
        .mul(&inner_u)
        .add(&a6.scale(b(7)))
        .add(&a4.scale(b(5)))
        .add(&a2.scale(b(3)))
        .add(&id.scale(b(1)));
    let u = a1.mul(&u_poly);
    // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let inner_v = a6.scale(b(12)).add(&a4.scale(b(10))).add(&a2.scale(b(8)));
    let v = a6
        .mul(&inner_v)
        .add(&a6.scale(b(6)))
        .add(&a4.scale(b(4)))
        .add(&a2.scale(b(2)))
        .add(&id.scale(b(0)));

    // (V - U) X = (V + U)
    let lhs = v.sub(&u);
    let rhs = v.add(&u);
    let mut x = solve_matrix(&lhs, &rhs)?;
    for _ in 0..s {
        x = x.mul(&x);
    }
    x.check_finite("expm output")?;
    Ok(x)
}

fn solve_matrix(a: &CMat, b: &CMat) -> Result<CMat> {
    let inv = a.inverse()?;
    Ok(inv.mul(b))
}

/// Principal square root by the Denman–Beavers iteration.
pub fn sqrtm_db(m: &CMat) -> Result<CMat> {
    let n = m.nrows();
    let mut y = m.clone();
    let mut z = CMat::identity(n);
    for _ in 0..60 {
        let yi = y.inverse()?;
        let zi = z.inverse()?;
        let y_next = y.add(&zi).scale(C64::new(0.5, 0.0));
        let z_next = z.add(&yi).scale(C64::new(0.5, 0.0));
        let delta = y_next.sub(&y).frobenius_norm();
        y = y_next;
        z = z_next;
        if delta < 1e-15 * (n as f64) {
            return Ok(y);
        }
    }
    Err(Error::NonConvergence(
        "matrix square root did not converge".into(),
    ))
}

/// Principal matrix logarithm for matrices whose spectrum avoids the
/// negative real axis; intended for unitary inputs near the identity
/// (curve pullbacks in the mean-curvature estimator).
pub fn logm_unitary(m: &CMat) -> Result<CMat> {
    assert!(m.is_square());
    m.check_finite("logm input")?;
    let n = m.nrows();
    let id = CMat::identity(n);
    let mut x = m.clone();
    let mut halvings = 0u32;
    while x.dist_to_identity() > 0.25 {
        if halvings >= 40 {
            return Err(Error::NonConvergence(
                "logm scaling did not contract to the identity".into(),
            ));
        }
        x = sqrtm_db(&x)?;
        halvings += 1;
    }
    // log X = 2 atanh(S) with S = (X - I)(X + I)^{-1}; ‖S‖ ≤ ~0.13 here,
    // so the odd series truncated at S^19 is below 1e-16.
    let s = x.sub(&id).mul(&x.add(&id).inverse()?);
    let s2 = s.mul(&s);
    let mut term = s.clone();
    let mut acc = CMat::zeros(n, n);
    let mut k = 1u32;
    while k <= 19 {
        acc.add_assign(&term.scale(C64::new(1.0 / k as f64, 0.0)));
        term = term.mul(&s2);
        k += 2;
    }
    let log = acc.scale(C64::new(2.0 * libm::exp2(halvings as f64), 0.0));
    log.check_finite("logm output")?;
    Ok(log)
}
