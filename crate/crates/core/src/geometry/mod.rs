//! Exact rational convex-polytope kernel.
//!
//! Polytopes come in two flavours: [`HPolytope`] (facet inequalities with
//! primitive integer normals) and [`VPolytope`] (extreme points, with the
//! supporting hyperplanes cached). Everything here is exact; floating point
//! never enters.

mod hpoly;
pub mod linalg;
mod vpoly;

pub use hpoly::{Facet, HPolytope};
pub use vpoly::{HullFacet, VPolytope};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An invertible linear map of `R^n` with its determinant cached.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    matrix: Vec<Vec<Rational>>,
    determinant: Rational,
}

impl LinearMap {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = matrix.len();
        if let Some(bad) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let determinant = linalg::determinant(&matrix);
        if num_traits::Zero::is_zero(&determinant) {
            return Err(Error::SingularMap);
        }
        Ok(Self {
            matrix,
            determinant,
        })
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| crate::rational::int(i64::from(i == j)))
                    .collect()
            })
            .collect();
        Self::new(matrix).expect("identity is invertible")
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn determinant(&self) -> &Rational {
        &self.determinant
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.matrix, v)
    }
}

pub fn enumerate_vertices(h: &HPolytope) -> Result<VPolytope> {
    h.enumerate_vertices()
}

pub fn volume(v: &VPolytope) -> Rational {
    v.volume()
}

pub fn barycenter(v: &VPolytope) -> Vec<Rational> {
    v.barycenter()
}

/// Image of `v` under `map`, together with `|det map|` for volume bookkeeping.
pub fn transform(v: &VPolytope, map: &LinearMap) -> Result<(VPolytope, Rational)> {
    use num_traits::Signed;
    Ok((v.transform(map)?, map.determinant().abs()))
}

pub fn intersect_halfspace(v: &VPolytope, normal: &[Rational], cutoff: &Rational) -> Result<VPolytope> {
    v.intersect_halfspace(normal, cutoff)
}

/// Calls `f` with every increasing `k`-subset of `0..n`.
pub(crate) fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        let mut count = 0;
        combinations(6, 3, |_| count += 1);
        assert_eq!(count, 20);
        let mut seen = Vec::new();
        combinations(3, 0, |c| seen.push(c.to_vec()));
        assert_eq!(seen, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn singular_map_rejected() {
        use crate::rational::int;
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(LinearMap::new(m).unwrap_err(), Error::SingularMap);
        assert_eq!(LinearMap::identity(3).determinant(), &int(1));
    }
}
