//! Compact matrix groups SU(n), SO(n), Sp(n): realizations, orthonormal
//! Lie-algebra bases for the bi-invariant metric `⟨X,Y⟩ = Re tr(XY^*)`,
//! exponential curves, Haar sampling and the polar retraction.
//!
//! Sp(n) is realized as complex 2n x 2n matrices that are unitary and
//! preserve the standard skew form `J = [[0, I], [-I, 0]]`; this keeps all
//! arithmetic complex and avoids quaternions.

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64};
use crate::tol::Tolerances;
use alloc::format;
use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// The three classical families handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    /// Special unitary group SU(n), n ≥ 2.
    SpecialUnitary,
    /// Special orthogonal group SO(n), n ≥ 3.
    SpecialOrthogonal,
    /// Compact symplectic group Sp(n), n ≥ 1.
    Symplectic,
}

impl GroupFamily {
    pub fn short_name(self) -> &'static str {
        match self {
            GroupFamily::SpecialUnitary => "su",
            GroupFamily::SpecialOrthogonal => "so",
            GroupFamily::Symplectic => "sp",
        }
    }
}

/// A validated group realization: family, rank parameter, matrix size and
/// the real dimension of the Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    family: GroupFamily,
    n: usize,
    m: usize,
    dim: usize,
}

impl GroupSpec {
    pub fn new(family: GroupFamily, n: usize) -> Result<Self> {
        let (min_n, m, dim) = match family {
            GroupFamily::SpecialUnitary => (2, n, n * n - 1),
            GroupFamily::SpecialOrthogonal => (3, n, n * (n.saturating_sub(1)) / 2),
            GroupFamily::Symplectic => (1, 2 * n, n * (2 * n + 1)),
        };
        if n < min_n {
            return Err(Error::InvalidSpec(format!(
                "{}({n}) is not supported (need n >= {min_n})",
                family.short_name()
            )));
        }
        Ok(GroupSpec { family, n, m, dim })
    }

    pub fn su(n: usize) -> Result<Self> {
        Self::new(GroupFamily::SpecialUnitary, n)
    }

    pub fn so(n: usize) -> Result<Self> {
        Self::new(GroupFamily::SpecialOrthogonal, n)
    }

    pub fn sp(n: usize) -> Result<Self> {
        Self::new(GroupFamily::Symplectic, n)
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    /// Rank parameter n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix size (n for SU/SO, 2n for Sp).
    pub fn matrix_size(&self) -> usize {
        self.m
    }

    /// Real dimension of the Lie algebra.
    pub fn algebra_dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> alloc::string::String {
        format!("{}({})", self.family.short_name(), self.n)
    }

    /// The standard skew form J on C^{2n} (Sp only).
    pub fn symplectic_form(&self) -> CMat {
        let n = self.n;
        let mut j = CMat::zeros(2 * n, 2 * n);
        for i in 0..n {
            j[(i, n + i)] = C64::ONE;
            j[(n + i, i)] = -C64::ONE;
        }
        j
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            spec: *self,
            mat: CMat::identity(self.m),
        }
    }

    /// Largest of the defining residuals of `mat` as an element of this group.
    pub fn membership_residual(&self, mat: &CMat) -> f64 {
        if mat.nrows() != self.m || mat.ncols() != self.m {
            return f64::INFINITY;
        }
        let unit = mat.unitarity_residual();
        let det_dev = match mat.det() {
            Ok(d) => (d - C64::ONE).norm(),
            Err(_) => f64::INFINITY,
        };
        match self.family {
            GroupFamily::SpecialUnitary => unit.max(det_dev),
            GroupFamily::SpecialOrthogonal => {
                let imag = mat
                    .data()
                    .iter()
                    .map(|z| libm::fabs(z.im))
                    .fold(0.0, f64::max);
                unit.max(det_dev).max(imag)
            }
            GroupFamily::Symplectic => {
                let j = self.symplectic_form();
                let symp = mat.transpose().mul(&j).mul(mat).sub(&j).frobenius_norm();
                unit.max(det_dev).max(symp)
            }
        }
    }

    /// Largest of the defining residuals of `mat` as a Lie-algebra element.
    pub fn algebra_residual(&self, mat: &CMat) -> f64 {
        if mat.nrows() != self.m || mat.ncols() != self.m {
            return f64::INFINITY;
        }
        let anti_herm = mat.add(&mat.adjoint()).max_abs();
        match self.family {
            GroupFamily::SpecialUnitary => anti_herm.max(mat.trace().norm()),
            GroupFamily::SpecialOrthogonal => {
                let imag = mat
                    .data()
                    .iter()
                    .map(|z| libm::fabs(z.im))
                    .fold(0.0, f64::max);
                let anti_sym = mat.add(&mat.transpose()).max_abs();
                anti_sym.max(imag)
            }
            GroupFamily::Symplectic => {
                let j = self.symplectic_form();
                let symp = mat.transpose().mul(&j).add(&j.mul(mat)).max_abs();
                anti_herm.max(symp)
            }
        }
    }
}

/// A point on the group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    spec: GroupSpec,
    mat: CMat,
}

impl GroupElement {
    /// Wrap a matrix after checking membership at the given tolerance.
    pub fn new(spec: GroupSpec, mat: CMat, tol: f64) -> Result<Self> {
        let residual = spec.membership_residual(&mat);
        if residual > tol {
            return Err(Error::Precondition(format!(
                "matrix is not in {} (residual {residual:.3e} > {tol:.1e})",
                spec.name()
            )));
        }
        Ok(GroupElement { spec, mat })
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn membership_residual(&self) -> f64 {
        self.spec.membership_residual(&self.mat)
    }

    /// `g^{-1} = g^*` for all three realizations.
    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            spec: self.spec,
            mat: self.mat.adjoint(),
        }
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        check_same_spec(self.spec, other.spec)?;
        Ok(GroupElement {
            spec: self.spec,
            mat: self.mat.mul(&other.mat),
        })
    }

    /// Frobenius distance between two elements.
    pub fn distance(&self, other: &GroupElement) -> f64 {
        self.mat.sub(&other.mat).frobenius_norm()
    }
}

/// An element of the Lie algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraVector {
    spec: GroupSpec,
    mat: CMat,
}

impl AlgebraVector {
    pub fn new(spec: GroupSpec, mat: CMat, tol: f64) -> Result<Self> {
        let residual = spec.algebra_residual(&mat);
        if residual > tol {
            return Err(Error::Precondition(format!(
                "matrix is not in the Lie algebra of {} (residual {residual:.3e})",
                spec.name()
            )));
        }
        Ok(AlgebraVector { spec, mat })
    }

    pub(crate) fn new_unchecked(spec: GroupSpec, mat: CMat) -> Self {
        AlgebraVector { spec, mat }
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn scale(&self, t: f64) -> AlgebraVector {
        AlgebraVector {
            spec: self.spec,
            mat: self.mat.scale(C64::new(t, 0.0)),
        }
    }

    pub fn add(&self, other: &AlgebraVector) -> AlgebraVector {
        AlgebraVector {
            spec: self.spec,
            mat: self.mat.add(&other.mat),
        }
    }

    pub fn norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }

    /// Metric inner product `Re tr(X Y^*)`.
    pub fn inner(&self, other: &AlgebraVector) -> f64 {
        self.mat.re_inner(&other.mat)
    }

    pub fn algebra_residual(&self) -> f64 {
        self.spec.algebra_residual(&self.mat)
    }
}

/// An ordered orthonormal basis of the Lie algebra.
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    spec: GroupSpec,
    vecs: Vec<AlgebraVector>,
}

impl AlgebraBasis {
    /// Wrap explicit vectors, checking cardinality, orthonormality and
    /// algebra membership.
    pub fn from_vectors(spec: GroupSpec, vecs: Vec<AlgebraVector>, tol: f64) -> Result<Self> {
        if vecs.len() != spec.algebra_dim() {
            return Err(Error::InvalidSpec(format!(
                "basis for {} needs {} vectors, got {}",
                spec.name(),
                spec.algebra_dim(),
                vecs.len()
            )));
        }
        let basis = AlgebraBasis { spec, vecs };
        let gram = basis.gram_residual();
        if gram > tol {
            return Err(Error::Precondition(format!(
                "basis Gram residual {gram:.3e} > {tol:.1e}"
            )));
        }
        for v in &basis.vecs {
            let r = v.algebra_residual();
            if r > tol {
                return Err(Error::Precondition(format!(
                    "basis vector residual {r:.3e}"
                )));
            }
        }
        Ok(basis)
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    pub fn vectors(&self) -> &[AlgebraVector] {
        &self.vecs
    }

    pub fn iter(&self) -> core::slice::Iter<'_, AlgebraVector> {
        self.vecs.iter()
    }

    /// Max deviation of the Gram matrix from the identity.
    pub fn gram_residual(&self) -> f64 {
        let d = self.vecs.len();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let g = self.vecs[i].inner(&self.vecs[j]);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max(libm::fabs(g - target));
            }
        }
        worst
    }

    /// Algebra element with the given coefficients over this basis.
    pub fn combine(&self, coeffs: &[f64]) -> AlgebraVector {
        assert_eq!(coeffs.len(), self.vecs.len(), "coefficient count mismatch");
        let m = self.spec.matrix_size();
        let mut acc = CMat::zeros(m, m);
        for (c, v) in coeffs.iter().zip(&self.vecs) {
            if *c != 0.0 {
                acc.add_assign(&v.mat.scale(C64::new(*c, 0.0)));
            }
        }
        AlgebraVector {
            spec: self.spec,
            mat: acc,
        }
    }

    /// Coefficient view of an algebra element over this basis.
    pub fn coefficients(&self, x: &AlgebraVector) -> Vec<f64> {
        self.vecs.iter().map(|b| b.inner(x)).collect()
    }

    /// New basis `Y_i = Σ_j R_{ij} X_j` for an orthogonal matrix `R`
    /// (given row-major). Used to test basis covariance of the calculus.
    pub fn recombine(&self, r: &[Vec<f64>], tol: f64) -> Result<AlgebraBasis> {
        let d = self.vecs.len();
        if r.len() != d || r.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidSpec(
                "recombination matrix has the wrong shape".into(),
            ));
        }
        let vecs: Vec<AlgebraVector> = r.iter().map(|row| self.combine(row)).collect();
        AlgebraBasis::from_vectors(self.spec, vecs, tol)
    }
}

fn check_same_spec(a: GroupSpec, b: GroupSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SpecMismatch(format!("{} vs {}", a.name(), b.name())))
    }
}

fn basis_unit(m: usize, entries: &[(usize, usize, C64)]) -> CMat {
    let mut x = CMat::zeros(m, m);
    for &(i, j, z) in entries {
        x[(i, j)] = z;
    }
    x
}

/// Deterministic ordered orthonormal basis of the Lie algebra of `spec`
/// under `⟨X,Y⟩ = Re tr(XY^*)`.
pub fn build_basis(spec: &GroupSpec) -> Result<AlgebraBasis> {
    let m = spec.matrix_size();
    let n = spec.n();
    let inv_sqrt2 = 1.0 / libm::sqrt(2.0);
    let mut vecs: Vec<AlgebraVector> = Vec::with_capacity(spec.algebra_dim());
    let mut push = |mat: CMat| {
        vecs.push(AlgebraVector::new_unchecked(*spec, mat));
    };
    match spec.family() {
        GroupFamily::SpecialUnitary => {
            // torus: i diag(v_k), v_k = (1,..,1,-k,0,..)/sqrt(k(k+1))
            for k in 1..n {
                let norm = libm::sqrt((k * (k + 1)) as f64);
                let mut x = CMat::zeros(m, m);
                for i in 0..k {
                    x[(i, i)] = C64::new(0.0, 1.0 / norm);
                }
                x[(k, k)] = C64::new(0.0, -(k as f64) / norm);
                push(x);
            }
            for i in 0..n {
                for j in i + 1..n {
                    push(basis_unit(
                        m,
                        &[
                            (i, j, C64::new(inv_sqrt2, 0.0)),
                            (j, i, C64::new(-inv_sqrt2, 0.0)),
                        ],
                    ));
                    push(basis_unit(
                        m,
                        &[
                            (i, j, C64::new(0.0, inv_sqrt2)),
                            (j, i, C64::new(0.0, inv_sqrt2)),
                        ],
                    ));
                }
            }
        }
        GroupFamily::SpecialOrthogonal => {
            for i in 0..n {
                for j in i + 1..n {
                    push(basis_unit(
                        m,
                        &[
                            (i, j, C64::new(inv_sqrt2, 0.0)),
                            (j, i, C64::new(-inv_sqrt2, 0.0)),
                        ],
                    ));
                }
            }
        }
        GroupFamily::Symplectic => {
            // [[A, B], [-conj(B), -A^t]] with A anti-Hermitian and B symmetric;
            // each embedded block pair is scaled by 1/sqrt(2).
            let embed_a = |a: &CMat| -> CMat {
                let mut x = CMat::zeros(m, m);
                for i in 0..n {
                    for j in 0..n {
                        x[(i, j)] = a[(i, j)] * C64::new(inv_sqrt2, 0.0);
                        x[(n + i, n + j)] = -a[(j, i)] * C64::new(inv_sqrt2, 0.0);
                    }
                }
                x
            };
            let embed_b = |b: &CMat| -> CMat {
                let mut x = CMat::zeros(m, m);
                for i in 0..n {
                    for j in 0..n {
                        x[(i, j + n)] = b[(i, j)] * C64::new(inv_sqrt2, 0.0);
                        x[(n + i, j)] = -b[(i, j)].conj() * C64::new(inv_sqrt2, 0.0);
                    }
                }
                x
            };
            // u(n) part
            for k in 0..n {
                push(embed_a(&basis_unit(n, &[(k, k, C64::new(0.0, 1.0))])));
            }
            for i in 0..n {
                for j in i + 1..n {
                    push(embed_a(&basis_unit(
                        n,
                        &[
                            (i, j, C64::new(inv_sqrt2, 0.0)),
                            (j, i, C64::new(-inv_sqrt2, 0.0)),
                        ],
                    )));
                    push(embed_a(&basis_unit(
                        n,
                        &[
                            (i, j, C64::new(0.0, inv_sqrt2)),
                            (j, i, C64::new(0.0, inv_sqrt2)),
                        ],
                    )));
                }
            }
            // symmetric part
            for k in 0..n {
                push(embed_b(&basis_unit(n, &[(k, k, C64::ONE)])));
                push(embed_b(&basis_unit(n, &[(k, k, C64::new(0.0, 1.0))])));
            }
            for i in 0..n {
                for j in i + 1..n {
                    push(embed_b(&basis_unit(
                        n,
                        &[
                            (i, j, C64::new(inv_sqrt2, 0.0)),
                            (j, i, C64::new(inv_sqrt2, 0.0)),
                        ],
                    )));
                    push(embed_b(&basis_unit(
                        n,
                        &[
                            (i, j, C64::new(0.0, inv_sqrt2)),
                            (j, i, C64::new(0.0, inv_sqrt2)),
                        ],
                    )));
                }
            }
        }
    }
    AlgebraBasis::from_vectors(*spec, vecs, Tolerances::standard().gram)
}

/// Deterministic Gaussian stream (Box–Muller over ChaCha8).
pub struct GaussStream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussStream {
    pub fn new(seed: u64) -> Self {
        GaussStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    fn uniform_open(&mut self) -> f64 {
        // in (0, 1]
        1.0 - (self.rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    pub fn next_gauss(&mut self) -> f64 {
        if let Some(s) = self.spare.take() {
            return s;
        }
        let u1 = self.uniform_open();
        let u2 = self.uniform_open();
        let r = libm::sqrt(-2.0 * libm::log(u1));
        let (s, c) = libm::sincos(2.0 * core::f64::consts::PI * u2);
        self.spare = Some(r * s);
        r * c
    }

    pub fn next_cgauss(&mut self) -> C64 {
        let inv_sqrt2 = 1.0 / libm::sqrt(2.0);
        C64::new(self.next_gauss() * inv_sqrt2, self.next_gauss() * inv_sqrt2)
    }
}

/// Haar-distributed group element; deterministic for a fixed seed.
pub fn haar_sample(spec: &GroupSpec, seed: u64) -> GroupElement {
    let mut stream = GaussStream::new(seed);
    haar_sample_stream(spec, &mut stream)
}

/// A batch of Haar samples driven by a single seed.
pub fn haar_points(spec: &GroupSpec, count: usize, seed: u64) -> Vec<GroupElement> {
    let mut stream = GaussStream::new(seed);
    (0..count)
        .map(|_| haar_sample_stream(spec, &mut stream))
        .collect()
}

/// Haar sample from an existing Gaussian stream.
pub fn haar_sample_stream(spec: &GroupSpec, stream: &mut GaussStream) -> GroupElement {
    let m = spec.matrix_size();
    let n = spec.n();
    loop {
        let candidate = match spec.family() {
            GroupFamily::SpecialUnitary => {
                let mut z = CMat::from_fn(m, m, |_, _| stream.next_cgauss());
                if linalg::mgs_orthonormalize(&mut z).is_err() {
                    continue;
                }
                // divide out the n-th root of the determinant phase
                let det = match z.det() {
                    Ok(d) => d,
                    Err(_) => continue,
                };
                let theta = libm::atan2(det.im, det.re);
                let (s, c) = libm::sincos(-theta / m as f64);
                z.scale(C64::new(c, s))
            }
            GroupFamily::SpecialOrthogonal => {
                let mut z = CMat::from_fn(m, m, |_, _| C64::new(stream.next_gauss(), 0.0));
                if linalg::mgs_orthonormalize(&mut z).is_err() {
                    continue;
                }
                let det = match z.det() {
                    Ok(d) => d.re,
                    Err(_) => continue,
                };
                if det < 0.0 {
                    // reflect the last column: measure-preserving O^- -> SO bijection
                    let mut col = z.col(m - 1);
                    for v in col.iter_mut() {
                        *v = -*v;
                    }
                    z.set_col(m - 1, &col);
                }
                z
            }
            GroupFamily::Symplectic => {
                // quaternionic Gram-Schmidt: build n columns, each kept
                // orthogonal to the previous ones and to their sigma-partners
                let mut g = CMat::zeros(m, m);
                let mut ok = true;
                for jcol in 0..n {
                    let mut v: Vec<C64> = (0..m).map(|_| stream.next_cgauss()).collect();
                    for _pass in 0..2 {
                        for prev in 0..jcol {
                            for w in [g.col(prev), g.col(n + prev)] {
                                let coef = linalg::vdot(&v, &w);
                                for (vi, wi) in v.iter_mut().zip(&w) {
                                    *vi -= coef * wi;
                                }
                            }
                        }
                    }
                    let nv = linalg::vnorm(&v);
                    if nv < 1e-12 {
                        ok = false;
                        break;
                    }
                    for vi in v.iter_mut() {
                        *vi /= C64::new(nv, 0.0);
                    }
                    g.set_col(jcol, &v);
                    g.set_col(n + jcol, &sigma_partner(&v, n));
                }
                if !ok {
                    continue;
                }
                g
            }
        };
        let residual = spec.membership_residual(&candidate);
        if residual < 1e-11 {
            return GroupElement {
                spec: *spec,
                mat: candidate,
            };
        }
        // numerically unlucky draw; extremely rare, just redraw
    }
}

/// The antilinear map sigma(x, y) = (-conj(y), conj(x)) on C^{2n};
/// columns j and n+j of a symplectic unitary are sigma-partners.
fn sigma_partner(v: &[C64], n: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(2 * n);
    out.extend(v[n..].iter().map(|z| -z.conj()));
    out.extend(v[..n].iter().map(|z| z.conj()));
    out
}

/// The curve point `p · exp(tX)`.
pub fn group_exp(p: &GroupElement, x: &AlgebraVector, t: f64) -> Result<GroupElement> {
    check_same_spec(p.spec, x.spec)?;
    let e = linalg::expm(&x.mat.scale(C64::new(t, 0.0)))?;
    Ok(GroupElement {
        spec: p.spec,
        mat: p.mat.mul(&e),
    })
}

/// Nearest-point style projection of an arbitrary matrix onto the group:
/// unitary polar factor plus the family-specific branch corrections.
///
/// Fails when `m` is singular, too far from the group (spectral distance
/// above ~0.5) or lands on the wrong determinant branch.
pub fn retract_to_group(m: &CMat, spec: &GroupSpec, tols: &Tolerances) -> Result<GroupElement> {
    if m.nrows() != spec.matrix_size() || m.ncols() != spec.matrix_size() {
        return Err(Error::InvalidSpec(format!(
            "retraction input is {}x{}, expected {}x{} for {}",
            m.nrows(),
            m.ncols(),
            spec.matrix_size(),
            spec.matrix_size(),
            spec.name()
        )));
    }
    let prepared = match spec.family() {
        GroupFamily::SpecialUnitary => m.clone(),
        GroupFamily::SpecialOrthogonal => {
            let im_max = m
                .data()
                .iter()
                .map(|z| libm::fabs(z.im))
                .fold(0.0, f64::max);
            if im_max > 0.5 {
                return Err(Error::NonConvergence(
                    "matrix too far from the real locus".into(),
                ));
            }
            CMat::from_fn(m.nrows(), m.ncols(), |i, j| C64::new(m[(i, j)].re, 0.0))
        }
        GroupFamily::Symplectic => {
            // project onto the quaternionic structure: (M - J conj(M) J)/2
            let j = spec.symplectic_form();
            let twisted = j.mul(&m.conj()).mul(&j);
            m.sub(&twisted).scale(C64::new(0.5, 0.0))
        }
    };
    let polar = linalg::polar_unitary(&prepared).map_err(|_| {
        Error::NonConvergence("polar retraction failed (singular or too distorted input)".into())
    })?;
    let too_far = linalg::spectral_norm_est(&m.sub(&polar));
    if too_far > 0.6 {
        return Err(Error::NonConvergence(format!(
            "input is {too_far:.3} away from the group in spectral norm (limit 0.5)"
        )));
    }
    let fixed = match spec.family() {
        GroupFamily::SpecialUnitary => {
            let det = polar.det()?;
            let theta = libm::atan2(det.im, det.re);
            let (s, c) = libm::sincos(-theta / spec.matrix_size() as f64);
            polar.scale(C64::new(c, s))
        }
        GroupFamily::SpecialOrthogonal => {
            let det = polar.det()?;
            if det.re < 0.0 {
                return Err(Error::NonConvergence(
                    "nearest orthogonal factor has determinant -1".into(),
                ));
            }
            polar
        }
        GroupFamily::Symplectic => polar,
    };
    let residual = spec.membership_residual(&fixed);
    if residual > tols.retraction {
        return Err(Error::NonConvergence(format!(
            "retraction residual {residual:.3e} above tolerance"
        )));
    }
    Ok(GroupElement {
        spec: *spec,
        mat: fixed,
    })
}
