use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::hpoly::{Facet, HPolytope};
use super::linalg::{affine_rank, determinant, kernel_line, mat_vec, rank};
use super::{combinations, LinearMap};
use crate::error::{Error, Result};
use crate::rational::{dot, factorial, Rational};

/// A supporting hyperplane of the hull together with the vertices on it.
#[derive(Debug, Clone, PartialEq)]
pub struct HullFacet {
    pub facet: Facet,
    pub incident: Vec<usize>,
}

/// A full-dimensional polytope stored as its exact set of extreme points.
#[derive(Debug, Clone, PartialEq)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    facets: Vec<HullFacet>,
}

impl VPolytope {
    /// Convex hull of `points`. Duplicates and non-extreme points are removed.
    pub fn from_points(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        let mut uniq: Vec<Vec<Rational>> = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            if !uniq.contains(&p) {
                uniq.push(p);
            }
        }
        let refs: Vec<&[Rational]> = uniq.iter().map(Vec::as_slice).collect();
        if dim == 0 || uniq.len() <= dim || affine_rank(&refs) < dim {
            return Err(Error::DegeneratePolytope);
        }
        let hull = hull_facets(dim, &uniq);
        // Extreme points are those pinned down by `dim` independent facets.
        let extreme: Vec<usize> = (0..uniq.len())
            .filter(|&i| {
                let normals: Vec<Vec<Rational>> = hull
                    .iter()
                    .filter(|f| f.slack(&uniq[i]).is_zero())
                    .map(Facet::normal_rational)
                    .collect();
                rank(&normals) == dim
            })
            .collect();
        let vertices: Vec<Vec<Rational>> = extreme.into_iter().map(|i| uniq[i].clone()).collect();
        let facets = hull
            .into_iter()
            .map(|facet| {
                let incident = (0..vertices.len())
                    .filter(|&i| facet.slack(&vertices[i]).is_zero())
                    .collect();
                HullFacet { facet, incident }
            })
            .collect();
        Ok(Self {
            dim,
            vertices,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn hull_facets(&self) -> &[HullFacet] {
        &self.facets
    }

    pub fn to_hpolytope(&self) -> HPolytope {
        let facets = self.facets.iter().map(|f| f.facet.clone()).collect();
        HPolytope::new(self.dim, facets).expect("hull of a full-dimensional point set is a valid H-polytope")
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.facets.iter().all(|f| !f.facet.slack(p).is_negative())
    }

    /// Pulling triangulation: every simplex is spanned by vertex indices.
    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        self.triangulate_face(&all, self.dim)
    }

    fn triangulate_face(&self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        for f in &self.facets {
            let sub: Vec<usize> = face
                .iter()
                .copied()
                .filter(|i| f.incident.binary_search(i).is_ok())
                .collect();
            if sub.len() < k || sub.contains(&apex) || seen.contains(&sub) {
                continue;
            }
            let pts: Vec<&[Rational]> = sub.iter().map(|&i| self.vertices[i].as_slice()).collect();
            if affine_rank(&pts) + 1 != k {
                continue;
            }
            for mut s in self.triangulate_face(&sub, k - 1) {
                s.push(apex);
                out.push(s);
            }
            seen.insert(sub);
        }
        out
    }

    /// Volume together with the first moment `∫ x dλ`.
    pub fn volume_and_moment(&self) -> (Rational, Vec<Rational>) {
        let n = self.dim;
        let nf = Rational::from_integer(factorial(n));
        let n1 = Rational::from_integer(BigInt::from(n + 1));
        let mut vol = Rational::zero();
        let mut moment = vec![Rational::zero(); n];
        for s in self.triangulate() {
            let base = &self.vertices[s[0]];
            let rows: Vec<Vec<Rational>> = s[1..]
                .iter()
                .map(|&i| self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let v = determinant(&rows).abs() / &nf;
            for (j, m) in moment.iter_mut().enumerate() {
                let sum = s.iter().fold(Rational::zero(), |acc, &i| acc + &self.vertices[i][j]);
                *m += &v * sum / &n1;
            }
            vol += v;
        }
        (vol, moment)
    }

    pub fn volume(&self) -> Rational {
        self.volume_and_moment().0
    }

    pub fn barycenter(&self) -> Vec<Rational> {
        let (vol, moment) = self.volume_and_moment();
        moment.into_iter().map(|m| m / &vol).collect()
    }

    /// Image under `map`; the volume scales by `|det|`.
    pub fn transform(&self, map: &LinearMap) -> Result<VPolytope> {
        if map.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: map.dim(),
            });
        }
        let pts = self.vertices.iter().map(|v| mat_vec(map.matrix(), v)).collect();
        VPolytope::from_points(self.dim, pts)
    }

    pub fn translate(&self, shift: &[Rational]) -> Result<VPolytope> {
        let pts = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(shift).map(|(a, b)| a + b).collect())
            .collect();
        VPolytope::from_points(self.dim, pts)
    }

    /// `self ∩ {x : <normal, x> <= cutoff}`.
    ///
    /// Kept vertices plus the crossing points of every vertex pair straddling
    /// the hyperplane; the hull step discards the non-extreme ones.
    pub fn intersect_halfspace(&self, normal: &[Rational], cutoff: &Rational) -> Result<VPolytope> {
        if normal.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: normal.len(),
            });
        }
        let heights: Vec<Rational> = self.vertices.iter().map(|v| dot(normal, v)).collect();
        if heights.iter().all(|h| h <= cutoff) {
            return Ok(self.clone());
        }
        let mut pts: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .zip(&heights)
            .filter(|(_, h)| *h <= cutoff)
            .map(|(v, _)| v.clone())
            .collect();
        for i in 0..self.vertices.len() {
            for j in 0..self.vertices.len() {
                if heights[i] < *cutoff && heights[j] > *cutoff && self.is_edge(i, j) {
                    let t = (cutoff - &heights[i]) / (&heights[j] - &heights[i]);
                    let p = self.vertices[i]
                        .iter()
                        .zip(&self.vertices[j])
                        .map(|(a, b)| a + &t * (b - a))
                        .collect();
                    pts.push(p);
                }
            }
        }
        let refs: Vec<&[Rational]> = pts.iter().map(Vec::as_slice).collect();
        if pts.len() <= self.dim || affine_rank(&refs) < self.dim {
            return Err(Error::EmptyIntersection);
        }
        let neg: Vec<Rational> = normal.iter().map(|x| -x).collect();
        let mut facets: Vec<Facet> = self.facets.iter().map(|f| f.facet.clone()).collect();
        facets.push(Facet::from_rational(&neg, cutoff.clone())?);
        Ok(Self::from_vertices_and_facets(self.dim, pts, facets))
    }

    /// Whether vertices `i` and `j` span an edge.
    fn is_edge(&self, i: usize, j: usize) -> bool {
        let normals: Vec<Vec<Rational>> = self
            .facets
            .iter()
            .filter(|f| f.incident.binary_search(&i).is_ok() && f.incident.binary_search(&j).is_ok())
            .map(|f| f.facet.normal_rational())
            .collect();
        normals.len() + 1 >= self.dim && rank(&normals) + 1 == self.dim
    }

    /// Assembles a polytope from its known extreme points and a superset of
    /// its facet inequalities.
    fn from_vertices_and_facets(dim: usize, vertices: Vec<Vec<Rational>>, candidates: Vec<Facet>) -> Self {
        let facets = candidates
            .into_iter()
            .filter_map(|facet| {
                let incident: Vec<usize> = (0..vertices.len())
                    .filter(|&i| facet.slack(&vertices[i]).is_zero())
                    .collect();
                let on: Vec<&[Rational]> = incident.iter().map(|&i| vertices[i].as_slice()).collect();
                (incident.len() >= dim && affine_rank(&on) + 1 == dim).then_some(HullFacet { facet, incident })
            })
            .collect();
        Self {
            dim,
            vertices,
            facets,
        }
    }
}

/// Supporting hyperplanes through `dim` affinely independent points, oriented inward.
fn hull_facets(dim: usize, points: &[Vec<Rational>]) -> Vec<Facet> {
    let mut out: Vec<Facet> = Vec::new();
    combinations(points.len(), dim, |idx| {
        let base = &points[idx[0]];
        let rows: Vec<Vec<Rational>> = idx[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let normal = if dim == 1 {
            vec![Rational::from_integer(BigInt::from(1))]
        } else {
            match kernel_line(&rows, dim) {
                Some(k) => k,
                None => return,
            }
        };
        let level = dot(&normal, base);
        let mut above = false;
        let mut below = false;
        for p in points {
            let d = dot(&normal, p) - &level;
            above |= d.is_positive();
            below |= d.is_negative();
            if above && below {
                return;
            }
        }
        let (normal, level) = if below {
            (normal.iter().map(|x| -x).collect::<Vec<_>>(), -level)
        } else {
            (normal, level)
        };
        let f = Facet::from_rational(&normal, -level).expect("nonzero kernel vector");
        if !out.contains(&f) {
            out.push(f);
        }
    });
    out
}
