//! Random instances shared by the integration tests.
#![allow(dead_code)]

use fanokit::geometry::{LinearMap, VPolytope};
use fanokit::rational::{int, rat, to_f64};
use fanokit::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[-bound, bound]` with denominator at most `den`.
pub fn small_rational(rng: &mut impl Rng, bound: i64, den: i64) -> Rational {
    let d = rng.gen_range(1..=den);
    rat(rng.gen_range(-bound * d..=bound * d), d)
}

/// Hull of a few random points with small denominators; retried until full-dimensional.
pub fn random_polytope(rng: &mut impl Rng, dim: usize) -> VPolytope {
    loop {
        let count = dim + 1 + rng.gen_range(0..=3);
        let pts: Vec<Vec<Rational>> = (0..count)
            .map(|_| (0..dim).map(|_| small_rational(rng, 2, 3)).collect())
            .collect();
        if let Ok(p) = VPolytope::from_points(dim, pts) {
            return p;
        }
    }
}

/// Product of random elementary integer matrices, so `|det| = 1`.
pub fn random_unimodular(rng: &mut impl Rng, dim: usize) -> LinearMap {
    let mut m: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..2 * dim + 2 {
        if dim == 1 {
            m[0][0] = -m[0][0];
            continue;
        }
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim - 1);
        if j >= i {
            j += 1;
        }
        let c = rng.gen_range(-2..=2);
        for k in 0..dim {
            m[i][k] += c * m[j][k];
        }
        if rng.gen_bool(0.3) {
            m.swap(i, j);
        }
    }
    LinearMap::new(m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).expect("unimodular map")
}

/// Facet inequalities `<l, x> + a >= 0` in floating point.
pub fn float_facets(p: &VPolytope) -> Vec<(Vec<f64>, f64)> {
    p.hull_facets()
        .iter()
        .map(|f| {
            (
                f.facet.normal.iter().map(|x| x.to_string().parse::<f64>().unwrap()).collect(),
                to_f64(&f.facet.offset),
            )
        })
        .collect()
}

/// Coordinate-wise bounding box.
pub fn bounding_box(p: &VPolytope) -> (Vec<f64>, Vec<f64>) {
    let dim = p.dim();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for v in p.vertices() {
        for (k, x) in v.iter().enumerate() {
            let x = to_f64(x);
            lo[k] = lo[k].min(x);
            hi[k] = hi[k].max(x);
        }
    }
    (lo, hi)
}
