//! Root systems of types A–D, half-sums of positive roots, and Casimir
//! eigenvalues `α_λ = -(|λ|² + 2⟨λ,δ⟩)`.
//!
//! All root and weight coordinates are exact rationals. The inner
//! product on the dual of the torus algebra is the one induced by the
//! trace form `⟨X,Y⟩ = Re tr(XY^*)`: with the torus realizations used by
//! [`crate::group::build_basis`] the coordinate metric is Euclidean for
//! type A (restricted to the sum-zero hyperplane) and twice the
//! Euclidean metric for types B, C and D, so the dual metric carries a
//! factor 1 and 1/2 respectively.

use crate::error::{Error, Result};
use crate::group::{GroupFamily, GroupSpec};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_rational::Ratio;

type Q = Ratio<i64>;

fn q(n: i64) -> Q {
    Ratio::new(n, 1)
}

/// Cartan types handled here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootType {
    A,
    B,
    C,
    D,
}

/// A root system in standard epsilon coordinates together with the
/// metric bridge back to the trace form.
#[derive(Debug, Clone)]
pub struct RootSystem {
    rtype: RootType,
    rank: usize,
    ambient: usize,
    /// Torus metric is `scale ·` Euclidean in these coordinates.
    scale: Q,
    /// Type A lives on the sum-zero hyperplane of its ambient space.
    project: bool,
    positive: Vec<Vec<Q>>,
    delta: Vec<Q>,
}

/// A weight in the same coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    pub coords: Vec<Q>,
    pub label: String,
}

impl Weight {
    pub fn new(coords: Vec<Q>, label: impl Into<String>) -> Self {
        Weight {
            coords,
            label: label.into(),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Weight {
            coords: vec![q(0); ambient],
            label: "zero".into(),
        }
    }
}

impl RootSystem {
    pub fn new(
        rtype: RootType,
        rank: usize,
        ambient: usize,
        scale: Q,
        project: bool,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidSpec("rank must be at least 1".into()));
        }
        let mut positive: Vec<Vec<Q>> = Vec::new();
        let e = |i: usize, sign: i64| -> Vec<Q> {
            let mut v = vec![q(0); ambient];
            v[i] = q(sign);
            v
        };
        let epair = |i: usize, j: usize, si: i64, sj: i64| -> Vec<Q> {
            let mut v = vec![q(0); ambient];
            v[i] = q(si);
            v[j] = q(sj);
            v
        };
        match rtype {
            RootType::A => {
                // e_i - e_j, i < j, in ambient dimension rank+1
                for i in 0..ambient {
                    for j in i + 1..ambient {
                        positive.push(epair(i, j, 1, -1));
                    }
                }
            }
            RootType::B => {
                for i in 0..rank {
                    for j in i + 1..rank {
                        positive.push(epair(i, j, 1, -1));
                        positive.push(epair(i, j, 1, 1));
                    }
                }
                for i in 0..rank {
                    positive.push(e(i, 1));
                }
            }
            RootType::C => {
                for i in 0..rank {
                    for j in i + 1..rank {
                        positive.push(epair(i, j, 1, -1));
                        positive.push(epair(i, j, 1, 1));
                    }
                }
                for i in 0..rank {
                    positive.push(e(i, 2));
                }
            }
            RootType::D => {
                for i in 0..rank {
                    for j in i + 1..rank {
                        positive.push(epair(i, j, 1, -1));
                        positive.push(epair(i, j, 1, 1));
                    }
                }
            }
        }
        let half = Ratio::new(1i64, 2);
        let mut delta = vec![q(0); ambient];
        for r in &positive {
            for (d, x) in delta.iter_mut().zip(r) {
                *d += x * half;
            }
        }
        Ok(RootSystem {
            rtype,
            rank,
            ambient,
            scale,
            project,
            positive,
            delta,
        })
    }

    pub fn rtype(&self) -> RootType {
        self.rtype
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn positive_roots(&self) -> &[Vec<Q>] {
        &self.positive
    }

    pub fn delta(&self) -> &[Q] {
        &self.delta
    }

    /// Simple roots in the same coordinates.
    pub fn simple_roots(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::with_capacity(self.rank);
        let mut epair = |i: usize, j: usize, si: i64, sj: i64| {
            let mut v = vec![q(0); self.ambient];
            v[i] = q(si);
            v[j] = q(sj);
            out.push(v);
        };
        match self.rtype {
            RootType::A => {
                for i in 0..self.rank {
                    epair(i, i + 1, 1, -1);
                }
            }
            RootType::B => {
                for i in 0..self.rank - 1 {
                    epair(i, i + 1, 1, -1);
                }
                let mut v = vec![q(0); self.ambient];
                v[self.rank - 1] = q(1);
                out.push(v);
            }
            RootType::C => {
                for i in 0..self.rank - 1 {
                    epair(i, i + 1, 1, -1);
                }
                let mut v = vec![q(0); self.ambient];
                v[self.rank - 1] = q(2);
                out.push(v);
            }
            RootType::D => {
                for i in 0..self.rank - 1 {
                    epair(i, i + 1, 1, -1);
                }
                if self.rank >= 2 {
                    epair(self.rank - 2, self.rank - 1, 1, 1);
                }
            }
        }
        out
    }

    /// Exact dual-metric inner product of two coordinate vectors.
    pub fn dual_ip(&self, x: &[Q], y: &[Q]) -> Q {
        assert_eq!(x.len(), self.ambient);
        assert_eq!(y.len(), self.ambient);
        let dot = |u: &[Q], v: &[Q]| -> Q { u.iter().zip(v).map(|(a, b)| a * b).sum() };
        if self.project {
            let nn = q(self.ambient as i64);
            let mx: Q = x.iter().sum::<Q>() / nn;
            let my: Q = y.iter().sum::<Q>() / nn;
            let px: Vec<Q> = x.iter().map(|a| a - mx).collect();
            let py: Vec<Q> = y.iter().map(|a| a - my).collect();
            dot(&px, &py) / self.scale
        } else {
            dot(x, y) / self.scale
        }
    }

    /// Is the weight in the closed dominant chamber?
    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.positive
            .iter()
            .all(|r| self.dual_ip(&w.coords, r) >= q(0))
    }

    /// δ paired against every simple coroot must give exactly 1.
    pub fn delta_coroot_check(&self) -> bool {
        self.simple_roots().iter().all(|alpha| {
            let aa = self.dual_ip(alpha, alpha);
            let da = self.dual_ip(&self.delta, alpha);
            da * q(2) == aa
        })
    }
}

/// Root system attached to a group realization.
pub fn root_system(spec: &GroupSpec) -> Result<RootSystem> {
    let n = spec.n();
    match spec.family() {
        GroupFamily::SpecialUnitary => RootSystem::new(RootType::A, n - 1, n, q(1), true),
        GroupFamily::SpecialOrthogonal => {
            if n % 2 == 1 {
                let k = n / 2;
                RootSystem::new(RootType::B, k, k, q(2), false)
            } else {
                let k = n / 2;
                if k < 2 {
                    return Err(Error::InvalidSpec(
                        "so(2) has no semisimple root system".into(),
                    ));
                }
                RootSystem::new(RootType::D, k, k, q(2), false)
            }
        }
        GroupFamily::Symplectic => RootSystem::new(RootType::C, n, n, q(2), false),
    }
}

/// Highest weight of the defining (standard) representation.
pub fn standard_weight(rs: &RootSystem) -> Weight {
    let mut coords = vec![q(0); rs.ambient()];
    coords[0] = q(1);
    Weight::new(coords, "standard")
}

/// Highest weight of the dual of the standard representation (type A).
pub fn dual_standard_weight(rs: &RootSystem) -> Weight {
    let mut coords = vec![q(0); rs.ambient()];
    coords[rs.ambient() - 1] = q(-1);
    Weight::new(coords, "dual")
}

/// Highest root = highest weight of the adjoint representation (type A).
pub fn adjoint_weight(rs: &RootSystem) -> Weight {
    let mut coords = vec![q(0); rs.ambient()];
    coords[0] = q(1);
    coords[rs.ambient() - 1] = q(-1);
    Weight::new(coords, "adjoint")
}

/// Highest weight of Sym² of the standard representation.
pub fn sym2_standard_weight(rs: &RootSystem) -> Weight {
    let mut coords = vec![q(0); rs.ambient()];
    coords[0] = q(2);
    Weight::new(coords, "sym2-standard")
}

/// The Casimir scalar `α_λ = -(|λ|² + 2⟨λ,δ⟩)` on the irreducible
/// representation with dominant highest weight `λ`.
pub fn casimir_eigenvalue(w: &Weight, rs: &RootSystem) -> Result<f64> {
    if w.coords.len() != rs.ambient() {
        return Err(Error::InvalidSpec(format!(
            "weight has {} coordinates, root system is {}-dimensional",
            w.coords.len(),
            rs.ambient()
        )));
    }
    if !rs.is_dominant(w) {
        return Err(Error::Precondition(format!(
            "weight '{}' is not dominant",
            w.label
        )));
    }
    let norm2 = rs.dual_ip(&w.coords, &w.coords);
    let mixed = rs.dual_ip(&w.coords, rs.delta());
    let val = -(norm2 + q(2) * mixed);
    Ok(ratio_to_f64(val))
}

fn ratio_to_f64(r: Q) -> f64 {
    (*r.numer() as f64) / (*r.denom() as f64)
}

/// Result of comparing the algebraic Casimir scalar against a Laplacian
/// eigenvalue measured by the differential calculus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirCrossCheck {
    pub predicted: f64,
    pub measured: f64,
    pub discrepancy: f64,
}

impl CasimirCrossCheck {
    pub fn new(predicted: f64, measured: f64) -> Self {
        CasimirCrossCheck {
            predicted,
            measured,
            discrepancy: libm::fabs(predicted - measured),
        }
    }
}
