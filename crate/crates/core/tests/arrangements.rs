mod common;

use fanokit::arrangements::{
    arrangement_height_bound, reduce_to_toric, stability_polytope, vertex_decomposition, StabilityConstant,
    WeightVector,
};
use fanokit::rational::{int, rat};
use fanokit::toric::{pn_height, scaled_divisor_height};
use fanokit::Rational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random semistable Fano weight vector with `n <= 3`, `m <= 6`.
fn random_semistable(r: &mut impl Rng) -> WeightVector {
    loop {
        let n = r.gen_range(1..=3);
        let m = r.gen_range(n + 1..=6);
        let weights: Vec<Rational> = (0..m).map(|_| rat(r.gen_range(0..12), 12)).collect();
        if let Ok(w) = WeightVector::new(n, weights) {
            if w.is_semistable() && w.degree().is_ok() {
                return w;
            }
        }
    }
}

/// `w` rescaled to total `c`.
fn with_total(w: &WeightVector, c: &Rational) -> WeightVector {
    let total = w.total();
    let weights = w.weights().iter().map(|x| if total == int(0) { x.clone() } else { x * c / &total }).collect();
    WeightVector::new(w.n(), weights).unwrap()
}

#[test]
fn decomposition_on_random_instances() {
    let mut r = common::rng(3);
    for _ in 0..200 {
        let w = random_semistable(&mut r);
        let dec = vertex_decomposition(&w).unwrap();
        assert!(dec.verify(&w), "{:?}", w.weights());
        assert!(dec.terms.len() <= w.m() + 1);
        let red = reduce_to_toric(&w).unwrap();
        let n1 = w.n() + 1;
        assert_eq!(num_traits::pow(&red.t * int(n1 as i64), w.n()), w.degree().unwrap());
    }
}

#[test]
fn midpoints_stay_in_the_stability_polytope() {
    let mut r = common::rng(4);
    let mut checked = 0;
    while checked < 100 {
        let a = random_semistable(&mut r);
        let b = random_semistable(&mut r);
        if a.n() != b.n() || a.m() != b.m() || b.total() == int(0) {
            continue;
        }
        let b = with_total(&b, &a.total());
        let mid: Vec<Rational> = a.weights().iter().zip(b.weights()).map(|(x, y)| (x + y) / int(2)).collect();
        let mid = WeightVector::new(a.n(), mid).unwrap();
        assert!(mid.is_semistable());
        assert_eq!(mid.degree(), a.degree());
        checked += 1;
    }
}

#[test]
fn bound_and_height_of_projective_space() {
    let mut r = common::rng(5);
    for _ in 0..100 {
        let w = random_semistable(&mut r);
        let bound = arrangement_height_bound(&w).unwrap().value;
        let p = pn_height(w.n()).value;
        assert!(bound <= p + 1e-9 * p.abs());
        let t = reduce_to_toric(&w).unwrap().t;
        let scaled = scaled_divisor_height(w.n(), &t).unwrap().value;
        assert!((bound - scaled).abs() <= 1e-9 * p.abs(), "{bound} vs {scaled}");
    }
    let zero = WeightVector::new(2, vec![int(0); 4]).unwrap();
    assert!((arrangement_height_bound(&zero).unwrap().value - pn_height(2).value).abs() < 1e-12);
}

#[test]
fn stability_polytopes_verify() {
    for n in 1..=3usize {
        for m in 1..=6usize {
            for (p, q) in [(1, 1), (1, 2), (7, 3), (5, 1)] {
                let d = rat(p, q);
                let Ok(sp) = stability_polytope(n, m, d.clone()) else {
                    assert!(d > Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(n + 1), n)));
                    continue;
                };
                assert!(sp.verify());
                assert_eq!(sp.is_empty(), m <= n);
                if let StabilityConstant::Exact(c) = &sp.c {
                    assert_eq!(num_traits::pow(int(n as i64 + 1) - c, n), d);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn permutations_preserve_everything(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let n = r.gen_range(1..=4);
        let m = r.gen_range(1..=7);
        let weights: Vec<Rational> = (0..m).map(|_| rat(r.gen_range(0..10), 10)).collect();
        let w = WeightVector::new(n, weights.clone()).unwrap();
        let mut shuffled = weights;
        shuffled.shuffle(&mut r);
        let v = WeightVector::new(n, shuffled).unwrap();
        prop_assert_eq!(w.is_semistable(), v.is_semistable());
        prop_assert_eq!(w.degree(), v.degree());
        prop_assert_eq!(w.is_semistable(), w.satisfies_full_criterion());
    }

    #[test]
    fn rejects_weights_outside_the_unit_interval(p in 10i64..40) {
        prop_assert!(WeightVector::new(2, vec![rat(p, 10), int(0)]).is_err());
        prop_assert!(WeightVector::new(2, vec![rat(-p, 10), int(0)]).is_err());
    }
}
