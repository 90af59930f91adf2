//! Toric log Fano pairs presented by their moment polytopes
//! `P = {p : <l_F, p> >= -a_F}` with primitive `l_F` and `a_F ∈ (0, 1]`.

mod heights;

pub use heights::{
    a_n_constant, pn_height, scaled_divisor_height, scaled_divisor_height_real, toric_family_height,
    universal_height_bound,
};
#[allow(unused_imports)]
pub(crate) use heights::{factorial_f64, universal_height_bound_real};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::linalg::determinant;
use crate::geometry::{combinations, HPolytope, VPolytope};
use crate::rational::{factorial, Rational};

/// Anticanonical degree `(-(K_X + Δ))^n` and polytope volume `degree / n!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumePair {
    pub degree: Rational,
    pub poly_volume: Rational,
}

impl VolumePair {
    pub fn from_poly_volume(poly_volume: Rational, n: usize) -> Self {
        let degree = &poly_volume * Rational::from_integer(factorial(n));
        Self {
            degree,
            poly_volume,
        }
    }

    pub fn from_degree(degree: Rational, n: usize) -> Self {
        let poly_volume = &degree / Rational::from_integer(factorial(n));
        Self {
            degree,
            poly_volume,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexKind {
    /// Exactly `n` facets meet; `abs_det` is the index of the lattice their normals span.
    Simple { abs_det: String },
    /// More than `n` facets meet at this vertex.
    NonSimple { facet_count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSingularity {
    pub vertex: Vec<Rational>,
    pub facets: Vec<usize>,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GapVerdict {
    SatisfiesGap,
    ViolatesGap,
    IsPn,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub verdict: GapVerdict,
    pub volume: VolumePair,
    /// `vol(P^{n-1} × P^1) = 2 n^n / n!`.
    pub threshold: Rational,
    /// Present when some vertex cone is singular: whether
    /// `vol(P) <= ½ (n+1)^n / n!` holds.
    pub singular_certificate: Option<bool>,
}

/// Moment polytope of a toric log Fano pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ToricLogFano {
    polytope: HPolytope,
    vertices: VPolytope,
    label: Option<String>,
}

impl ToricLogFano {
    pub fn new(polytope: HPolytope, label: Option<String>) -> Result<Self> {
        let one = Rational::one();
        for f in polytope.facets() {
            if !f.offset.is_positive() || f.offset > one {
                return Err(Error::InvalidOffset(crate::rational::format_rational(&f.offset)));
            }
        }
        let vertices = polytope.enumerate_vertices()?;
        Ok(Self {
            polytope,
            vertices,
            label,
        })
    }

    /// Convenience constructor from `(normal, a_F)` pairs.
    pub fn from_facets(dim: usize, facets: &[(Vec<i64>, Rational)], label: &str) -> Result<Self> {
        let facets = facets
            .iter()
            .map(|(n, a)| crate::geometry::Facet::from_i64(n, a.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(HPolytope::new(dim, facets)?, Some(label.to_string()))
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn polytope(&self) -> &HPolytope {
        &self.polytope
    }

    pub fn vertices(&self) -> &VPolytope {
        &self.vertices
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn barycenter(&self) -> Vec<Rational> {
        self.vertices.barycenter()
    }

    /// K-semistable iff the barycenter of the moment polytope is the origin.
    pub fn is_k_semistable(&self) -> bool {
        self.barycenter().iter().all(Zero::is_zero)
    }

    pub fn log_fano_volume(&self) -> VolumePair {
        VolumePair::from_poly_volume(self.vertices.volume(), self.dim())
    }

    pub fn is_anticanonical(&self) -> bool {
        self.polytope.facets().iter().all(|f| f.offset.is_one())
    }

    pub fn vertex_singularity_report(&self) -> Vec<VertexSingularity> {
        let n = self.dim();
        self.vertices
            .vertices()
            .iter()
            .map(|v| {
                let facets: Vec<usize> = self
                    .polytope
                    .facets()
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.slack(v).is_zero())
                    .map(|(i, _)| i)
                    .collect();
                let kind = if facets.len() == n {
                    let m: Vec<Vec<Rational>> = facets
                        .iter()
                        .map(|&i| self.polytope.facets()[i].normal_rational())
                        .collect();
                    VertexKind::Simple {
                        abs_det: determinant(&m).abs().to_integer().to_string(),
                    }
                } else {
                    VertexKind::NonSimple {
                        facet_count: facets.len(),
                    }
                };
                VertexSingularity {
                    vertex: v.clone(),
                    facets,
                    kind,
                }
            })
            .collect()
    }

    /// Smooth iff every vertex is simple with a unimodular normal cone.
    pub fn is_smooth(&self) -> bool {
        self.vertex_singularity_report()
            .iter()
            .all(|r| matches!(&r.kind, VertexKind::Simple { abs_det } if abs_det == "1"))
    }

    /// Q-factorial iff every vertex is simple.
    pub fn is_q_factorial(&self) -> bool {
        self.vertex_singularity_report()
            .iter()
            .all(|r| matches!(r.kind, VertexKind::Simple { .. }))
    }

    /// Gorenstein iff the anticanonical polytope has integral vertices.
    pub fn is_gorenstein(&self) -> Result<bool> {
        if !self.is_anticanonical() {
            return Err(Error::NotAnticanonical);
        }
        Ok(self
            .vertices
            .vertices()
            .iter()
            .all(|v| v.iter().all(|x| x.is_integer())))
    }

    /// Whether the normal fan is that of `P^n` up to `GL(n, Z)`.
    ///
    /// That happens exactly when there are `n + 1` normals summing to zero,
    /// any `n` of which form a lattice basis.
    pub fn is_pn(&self) -> bool {
        let n = self.dim();
        let facets = self.polytope.facets();
        if facets.len() != n + 1 {
            return false;
        }
        let sums_to_zero = (0..n).all(|j| facets.iter().map(|f| &f.normal[j]).sum::<BigInt>().is_zero());
        if !sums_to_zero {
            return false;
        }
        let mut unimodular = true;
        combinations(n + 1, n, |idx| {
            let m: Vec<Vec<Rational>> = idx.iter().map(|&i| facets[i].normal_rational()).collect();
            unimodular &= determinant(&m).abs().is_one();
        });
        unimodular
    }

    pub fn gap_check(&self) -> Result<GapReport> {
        if !self.is_k_semistable() {
            return Err(Error::NotSemistable);
        }
        let n = self.dim();
        let volume = self.log_fano_volume();
        let nf = Rational::from_integer(factorial(n));
        let nn = Rational::from_integer(num_traits::pow(BigInt::from(n), n));
        let threshold = Rational::from_integer(BigInt::from(2)) * &nn / &nf;
        let singular = self.vertex_singularity_report().iter().any(|r| match &r.kind {
            VertexKind::Simple { abs_det } => abs_det != "1",
            VertexKind::NonSimple { .. } => false,
        });
        let singular_certificate = singular.then(|| {
            let half = Rational::new(
                num_traits::pow(BigInt::from(n + 1), n),
                BigInt::from(2) * factorial(n),
            );
            volume.poly_volume <= half
        });
        let verdict = if self.is_pn() {
            GapVerdict::IsPn
        } else if volume.poly_volume <= threshold {
            GapVerdict::SatisfiesGap
        } else {
            GapVerdict::ViolatesGap
        };
        Ok(GapReport {
            verdict,
            volume,
            threshold,
            singular_certificate,
        })
    }
}

pub fn is_k_semistable(t: &ToricLogFano) -> bool {
    t.is_k_semistable()
}

pub fn log_fano_volume(t: &ToricLogFano) -> VolumePair {
    t.log_fano_volume()
}

pub fn vertex_singularity_report(t: &ToricLogFano) -> Vec<VertexSingularity> {
    t.vertex_singularity_report()
}

pub fn is_gorenstein(t: &ToricLogFano) -> Result<bool> {
    t.is_gorenstein()
}

pub fn gap_check(t: &ToricLogFano) -> Result<GapReport> {
    t.gap_check()
}
