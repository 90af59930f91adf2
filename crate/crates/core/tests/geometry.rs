mod common;

use fanokit::geometry::{intersect_halfspace, HPolytope, VPolytope};
use fanokit::rational::{dot, int, rat};
use fanokit::{presets, Error};
use proptest::prelude::*;

fn polytope_strategy(max_dim: usize) -> impl Strategy<Value = VPolytope> {
    (1..=max_dim, any::<u64>()).prop_map(|(dim, seed)| common::random_polytope(&mut common::rng(seed), dim))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn unimodular_maps_preserve_volume(p in polytope_strategy(3), seed in any::<u64>()) {
        let map = common::random_unimodular(&mut common::rng(seed), p.dim());
        let image = p.transform(&map).unwrap();
        prop_assert_eq!(image.volume(), p.volume());
        prop_assert_eq!(image.barycenter(), map.apply(&p.barycenter()));
    }

    #[test]
    fn translation_moves_barycenter(p in polytope_strategy(3), seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let shift: Vec<_> = (0..p.dim()).map(|_| common::small_rational(&mut r, 3, 5)).collect();
        let moved = p.translate(&shift).unwrap();
        let expected: Vec<_> = p.barycenter().iter().zip(&shift).map(|(b, s)| b + s).collect();
        prop_assert_eq!(moved.barycenter(), expected);
        prop_assert_eq!(moved.volume(), p.volume());
    }

    #[test]
    fn h_and_v_descriptions_agree(p in polytope_strategy(3)) {
        let back = p.to_hpolytope().enumerate_vertices().unwrap();
        let mut a = back.vertices().to_vec();
        let mut b = p.vertices().to_vec();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert!(p.contains(&p.barycenter()));
    }

    #[test]
    fn halfspace_split_is_additive(p in polytope_strategy(3), seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let normal: Vec<_> = (0..p.dim()).map(|_| int(r.gen_range(-2..=2))).collect();
        prop_assume!(normal.iter().any(|x| *x != int(0)));
        let heights: Vec<_> = p.vertices().iter().map(|v| dot(&normal, v)).collect();
        let lo = heights.iter().min().unwrap().clone();
        let hi = heights.iter().max().unwrap().clone();
        let c = &lo + (&hi - &lo) * rat(r.gen_range(1..=9), 10);
        let neg: Vec<_> = normal.iter().map(|x| -x).collect();
        let below = intersect_halfspace(&p, &normal, &c).unwrap();
        let above = intersect_halfspace(&p, &neg, &-c).unwrap();
        let (v1, m1) = below.volume_and_moment();
        let (v2, m2) = above.volume_and_moment();
        let (v, m) = p.volume_and_moment();
        prop_assert_eq!(v1 + v2, v);
        let sum: Vec<_> = m1.iter().zip(&m2).map(|(a, b)| a + b).collect();
        prop_assert_eq!(sum, m);
    }
}

use rand::Rng;

#[test]
fn cube_and_simplex() {
    let cube = VPolytope::from_points(
        3,
        (0..8)
            .map(|k| (0..3).map(|i| int(((k >> i) & 1) * 2 - 1)).collect())
            .collect(),
    )
    .unwrap();
    assert_eq!(cube.volume(), int(8));
    assert_eq!(cube.barycenter(), vec![int(0); 3]);
    assert_eq!(cube.hull_facets().len(), 6);
    let p3 = presets::pn(3);
    assert_eq!(p3.vertices().volume(), rat(64, 6));
}

#[test]
fn degenerate_inputs_are_rejected() {
    let flat = VPolytope::from_points(2, vec![vec![int(0), int(0)], vec![int(1), int(1)], vec![int(2), int(2)]]);
    assert_eq!(flat, Err(Error::DegeneratePolytope));
    let open = HPolytope::new(
        2,
        vec![
            fanokit::geometry::Facet::from_i64(&[1, 0], int(1)).unwrap(),
            fanokit::geometry::Facet::from_i64(&[0, 1], int(1)).unwrap(),
        ],
    );
    assert_eq!(open, Err(Error::UnboundedPolytope));
    let square = presets::p1_x_p1();
    let miss = intersect_halfspace(square.vertices(), &[int(1), int(0)], &int(-2));
    assert_eq!(miss, Err(Error::EmptyIntersection));
}
