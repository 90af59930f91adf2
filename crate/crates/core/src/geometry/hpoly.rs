use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::{affine_rank, kernel_line, rank, solve};
use super::{combinations, VPolytope};
use crate::error::{Error, Result};
use crate::rational::{dot_int, gcd_of, lcm_of_denominators, Rational};

/// The half-space `<normal, p> >= -offset`, with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Facet {
    /// Builds a facet from an integer normal, dividing out the gcd and
    /// rescaling the offset so the inequality is unchanged.
    pub fn new(normal: Vec<BigInt>, offset: Rational) -> Result<Self> {
        let g = gcd_of(normal.iter().cloned());
        if g.is_zero() {
            return Err(Error::InvalidFacet("zero normal".into()));
        }
        let offset = offset / Rational::from_integer(g.clone());
        let normal = normal.into_iter().map(|x| x / &g).collect();
        Ok(Self { normal, offset })
    }

    pub fn from_i64(normal: &[i64], offset: Rational) -> Result<Self> {
        Self::new(normal.iter().map(|&x| BigInt::from(x)).collect(), offset)
    }

    /// Canonicalizes a half-space `<normal, p> >= -offset` with rational normal.
    pub fn from_rational(normal: &[Rational], offset: Rational) -> Result<Self> {
        let l = lcm_of_denominators(normal);
        let ints = normal.iter().map(|q| (q * &l).to_integer()).collect();
        Self::new(ints, offset * Rational::from_integer(l))
    }

    /// `<normal, p> + offset`, non-negative exactly on the half-space.
    pub fn slack(&self, p: &[Rational]) -> Rational {
        dot_int(&self.normal, p) + &self.offset
    }

    pub fn normal_rational(&self) -> Vec<Rational> {
        self.normal
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect()
    }
}

/// A bounded full-dimensional polytope given by irredundant facet inequalities.
#[derive(Debug, Clone, PartialEq)]
pub struct HPolytope {
    dim: usize,
    facets: Vec<Facet>,
}

impl HPolytope {
    /// Canonicalizes the facet list and validates it: duplicate and redundant
    /// inequalities are dropped, unbounded or lower-dimensional inputs rejected.
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DegeneratePolytope);
        }
        for f in &facets {
            if f.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: f.normal.len(),
                });
            }
        }
        // Parallel inequalities with the same normal: keep the tightest.
        let mut deduped: Vec<Facet> = Vec::with_capacity(facets.len());
        for f in facets {
            match deduped.iter_mut().find(|g| g.normal == f.normal) {
                Some(g) => {
                    if f.offset < g.offset {
                        g.offset = f.offset;
                    }
                }
                None => deduped.push(f),
            }
        }
        check_bounded(dim, &deduped)?;
        let vertices = raw_vertices(dim, &deduped);
        if vertices.is_empty() {
            return Err(Error::DegeneratePolytope);
        }
        let refs: Vec<&[Rational]> = vertices.iter().map(Vec::as_slice).collect();
        if affine_rank(&refs) < dim {
            return Err(Error::DegeneratePolytope);
        }
        let facets = deduped
            .into_iter()
            .filter(|f| {
                let on: Vec<&[Rational]> = vertices
                    .iter()
                    .filter(|v| f.slack(v).is_zero())
                    .map(Vec::as_slice)
                    .collect();
                !on.is_empty() && affine_rank(&on) + 1 == dim
            })
            .collect();
        Ok(Self { dim, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.facets.iter().all(|f| !f.slack(p).is_negative())
    }

    /// Exact extreme points, found by intersecting every `dim`-subset of facets.
    pub fn enumerate_vertices(&self) -> Result<VPolytope> {
        let vertices = raw_vertices(self.dim, &self.facets);
        VPolytope::from_points(self.dim, vertices)
    }
}

/// Feasible intersection points of `dim` linearly independent facets, deduplicated.
pub(crate) fn raw_vertices(dim: usize, facets: &[Facet]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let normals: Vec<Vec<Rational>> = facets.iter().map(Facet::normal_rational).collect();
    combinations(facets.len(), dim, |idx| {
        let a: Vec<Vec<Rational>> = idx.iter().map(|&i| normals[i].clone()).collect();
        let b: Vec<Rational> = idx.iter().map(|&i| -facets[i].offset.clone()).collect();
        if let Some(p) = solve(&a, &b) {
            if facets.iter().all(|f| !f.slack(&p).is_negative()) && !out.contains(&p) {
                out.push(p);
            }
        }
    });
    out
}

/// The recession cone `{d : <l_F, d> >= 0 for all F}` must be trivial.
///
/// A nontrivial pointed cone has an extreme ray cut out by `dim - 1`
/// independent facet normals; a non-pointed one shows up as rank deficiency.
fn check_bounded(dim: usize, facets: &[Facet]) -> Result<()> {
    let normals: Vec<Vec<Rational>> = facets.iter().map(Facet::normal_rational).collect();
    if rank(&normals) < dim {
        return Err(Error::UnboundedPolytope);
    }
    if dim == 1 {
        let pos = facets.iter().any(|f| f.normal[0].is_positive());
        let neg = facets.iter().any(|f| f.normal[0].is_negative());
        return if pos && neg {
            Ok(())
        } else {
            Err(Error::UnboundedPolytope)
        };
    }
    let mut unbounded = false;
    combinations(facets.len(), dim - 1, |idx| {
        if unbounded {
            return;
        }
        let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| normals[i].clone()).collect();
        if let Some(d) = kernel_line(&rows, dim) {
            let dots: Vec<Rational> = normals.iter().map(|n| crate::rational::dot(n, &d)).collect();
            if dots.iter().all(|x| !x.is_negative()) || dots.iter().all(|x| !x.is_positive()) {
                unbounded = true;
            }
        }
    });
    if unbounded {
        Err(Error::UnboundedPolytope)
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn facets(list: &[(&[i64], i64)]) -> Vec<Facet> {
        list.iter()
            .map(|(n, o)| Facet::from_i64(n, int(*o)).unwrap())
            .collect()
    }

    #[test]
    fn unit_square_vertices() {
        // x >= 0, y >= 0, -x >= -1, -y >= -1
        let h = HPolytope::new(2, facets(&[(&[1, 0], 0), (&[0, 1], 0), (&[-1, 0], 1), (&[0, -1], 1)]))
            .unwrap();
        let mut v = h.enumerate_vertices().unwrap().vertices().to_vec();
        v.sort();
        let expect: Vec<Vec<Rational>> = vec![
            vec![int(0), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(0)],
            vec![int(1), int(1)],
        ];
        assert_eq!(v, expect);
    }

    #[test]
    fn p3_simplex_vertices() {
        let h = HPolytope::new(
            3,
            facets(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[-1, -1, -1], 1)]),
        )
        .unwrap();
        let v = h.enumerate_vertices().unwrap();
        assert_eq!(v.vertices().len(), 4);
        assert!(v.vertices().contains(&vec![int(-1), int(-1), int(-1)]));
        assert!(v.vertices().contains(&vec![int(3), int(-1), int(-1)]));
        assert!(v.vertices().contains(&vec![int(-1), int(3), int(-1)]));
        assert!(v.vertices().contains(&vec![int(-1), int(-1), int(3)]));
    }

    #[test]
    fn empty_interior_is_degenerate() {
        // x >= 1 and -x >= 0 is infeasible; y bounded.
        let r = HPolytope::new(2, facets(&[(&[1, 0], -1), (&[-1, 0], 0), (&[0, 1], 1), (&[0, -1], 1)]));
        assert_eq!(r, Err(Error::DegeneratePolytope));
        // x >= 0 and -x >= 0: a segment, not full-dimensional.
        let r = HPolytope::new(2, facets(&[(&[1, 0], 0), (&[-1, 0], 0), (&[0, 1], 1), (&[0, -1], 1)]));
        assert_eq!(r, Err(Error::DegeneratePolytope));
    }

    #[test]
    fn recession_directions_are_rejected() {
        let r = HPolytope::new(2, facets(&[(&[1, 0], 1), (&[0, 1], 1)]));
        assert_eq!(r, Err(Error::UnboundedPolytope));
        let r = HPolytope::new(2, facets(&[(&[1, 0], 1), (&[-1, 0], 1)]));
        assert_eq!(r, Err(Error::UnboundedPolytope));
        let r = HPolytope::new(2, facets(&[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 1], 1)]));
        assert_eq!(r, Err(Error::UnboundedPolytope));
    }

    #[test]
    fn normals_are_made_primitive_and_redundancy_dropped() {
        let f = Facet::from_i64(&[2, 4], int(3)).unwrap();
        assert_eq!(f.normal, vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(f.offset, rat(3, 2));
        let g = Facet::from_rational(&[rat(1, 2), rat(1, 3)], int(1)).unwrap();
        assert_eq!(g.normal, vec![BigInt::from(3), BigInt::from(2)]);
        assert_eq!(g.offset, int(6));
        // The x + y >= -5 constraint never touches the square.
        let h = HPolytope::new(
            2,
            facets(&[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 1), (&[0, -1], 1), (&[1, 1], 5), (&[2, 0], 4)]),
        )
        .unwrap();
        assert_eq!(h.facets().len(), 4);
    }
}
