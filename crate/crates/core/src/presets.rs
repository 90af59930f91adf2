//! Moment polytopes of the named toric Fano varieties, shipped as JSON in the
//! shared polytope format.

use serde_json::{json, Value};

use crate::io::parse_toric;
use crate::toric::ToricLogFano;

/// `P^3` blown up in a torus-fixed point: `{x_i >= -1, -1 <= Σx <= 1}`.
pub const P3_BLOWUP: &str = r#"{
  "label": "P3 blown up in a point",
  "dim": 3,
  "facets": [
    {"normal": [1, 0, 0], "offset": "1"},
    {"normal": [0, 1, 0], "offset": "1"},
    {"normal": [0, 0, 1], "offset": "1"},
    {"normal": [-1, -1, -1], "offset": "1"},
    {"normal": [1, 1, 1], "offset": "1"}
  ]
}"#;

/// `P(O ⊕ O(2))` over `P^2`.
pub const P_O_O2: &str = r#"{
  "label": "P(O+O(2))",
  "dim": 3,
  "facets": [
    {"normal": [1, 0, 0], "offset": "1"},
    {"normal": [0, 1, 0], "offset": "1"},
    {"normal": [-1, -1, 2], "offset": "1"},
    {"normal": [0, 0, 1], "offset": "1"},
    {"normal": [0, 0, -1], "offset": "1"}
  ]
}"#;

pub const P2_X_P1: &str = r#"{
  "label": "P2 x P1",
  "dim": 3,
  "facets": [
    {"normal": [1, 0, 0], "offset": "1"},
    {"normal": [0, 1, 0], "offset": "1"},
    {"normal": [-1, -1, 0], "offset": "1"},
    {"normal": [0, 0, 1], "offset": "1"},
    {"normal": [0, 0, -1], "offset": "1"}
  ]
}"#;

pub const P1_X_P1: &str = r#"{
  "label": "P1 x P1",
  "dim": 2,
  "facets": [
    {"normal": [1, 0], "offset": "1"},
    {"normal": [-1, 0], "offset": "1"},
    {"normal": [0, 1], "offset": "1"},
    {"normal": [0, -1], "offset": "1"}
  ]
}"#;

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "p3-blowup", "p-o-o2", "p2xp1", "p1xp1", "p1", "p2", "p3", "p4", "p5", "p6", "dp7", "dp8", "dp9",
];

fn load(src: &str) -> ToricLogFano {
    let v: Value = serde_json::from_str(src).expect("embedded preset is valid JSON");
    parse_toric(&v).expect("embedded preset is a valid toric log Fano polytope")
}

pub fn p3_blowup() -> ToricLogFano {
    load(P3_BLOWUP)
}

pub fn p_o_o2() -> ToricLogFano {
    load(P_O_O2)
}

pub fn p2_x_p1() -> ToricLogFano {
    load(P2_X_P1)
}

pub fn p1_x_p1() -> ToricLogFano {
    load(P1_X_P1)
}

/// Anticanonical polytope of `P^n`: normals `e_1, ..., e_n, -Σe_i`.
pub fn pn_json(n: usize) -> Value {
    let mut facets: Vec<Value> = (0..n)
        .map(|i| {
            let normal: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
            json!({"normal": normal, "offset": "1"})
        })
        .collect();
    facets.push(json!({"normal": vec![-1i64; n], "offset": "1"}));
    json!({"label": format!("P{n}"), "dim": n, "facets": facets})
}

pub fn pn(n: usize) -> ToricLogFano {
    parse_toric(&pn_json(n)).expect("P^n polytope is valid")
}

/// Anticanonical polytope of the weighted projective plane `P(1, 1, k)`.
pub fn weighted_p2(k: i64) -> ToricLogFano {
    parse_toric(&json!({
        "label": format!("P(1,1,{k})"),
        "dim": 2,
        "facets": [
            {"normal": [1, 0], "offset": "1"},
            {"normal": [0, 1], "offset": "1"},
            {"normal": [-1, -k], "offset": "1"}
        ]
    }))
    .expect("weighted projective plane polytope is valid")
}

fn del_pezzo_json(m: usize) -> Value {
    assert!(m <= 3, "only m <= 3 blow-ups are toric");
    let mut normals: Vec<[i64; 2]> = vec![[1, 0], [0, 1], [-1, -1]];
    let extra: [[i64; 2]; 3] = [[1, 1], [-1, 0], [0, -1]];
    normals.extend_from_slice(&extra[..m]);
    let facets: Vec<Value> = normals
        .iter()
        .map(|n| json!({"normal": n, "offset": "1"}))
        .collect();
    json!({"label": format!("P2 blown up in {m} points"), "dim": 2, "facets": facets})
}

/// `P^2` blown up in `m <= 3` torus-fixed points.
pub fn del_pezzo(m: usize) -> ToricLogFano {
    parse_toric(&del_pezzo_json(m)).expect("toric del Pezzo polytope is valid")
}

/// The polytope of a named preset in the shared JSON format.
pub fn json_by_name(name: &str) -> Option<Value> {
    let parse = |src: &str| serde_json::from_str(src).expect("embedded preset is valid JSON");
    Some(match name {
        "p3-blowup" => parse(P3_BLOWUP),
        "p-o-o2" => parse(P_O_O2),
        "p2xp1" => parse(P2_X_P1),
        "p1xp1" => parse(P1_X_P1),
        "dp7" => del_pezzo_json(2),
        "dp8" => del_pezzo_json(1),
        "dp9" => del_pezzo_json(0),
        other => {
            let n: usize = other.strip_prefix('p')?.parse().ok()?;
            if !(1..=6).contains(&n) {
                return None;
            }
            pn_json(n)
        }
    })
}

pub fn by_name(name: &str) -> Option<ToricLogFano> {
    json_by_name(name).map(|v| parse_toric(&v).expect("preset is a valid toric log Fano polytope"))
}

/// Integer matrix taking a preset onto a simplex difference `(aΔ − 1) \ (bΔ − 1)`,
/// when the preset is not already of that shape.
pub fn normal_form_map(name: &str) -> Option<Vec<Vec<i64>>> {
    match name {
        // (x, y, z) ↦ (x, y, 2z − x − y) onto (5Δ − 1) \ (Δ − 1), determinant 2.
        "p-o-o2" => Some(vec![vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 2]]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_loads() {
        for name in NAMES {
            assert!(by_name(name).is_some(), "{name}");
        }
        assert!(by_name("p7").is_none());
        assert!(by_name("nonsense").is_none());
    }

    #[test]
    fn normal_form_of_p_o_o2() {
        use crate::geometry::LinearMap;
        use crate::rational::int;
        let m = normal_form_map("p-o-o2").unwrap();
        let map = LinearMap::new(m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap();
        assert_eq!(map.determinant(), &int(2));
        let image = p_o_o2().vertices().transform(&map).unwrap();
        let target = crate::sx::SimplexDifference::new(3, int(5), int(1), int(1)).unwrap();
        let mut a = image.vertices().to_vec();
        let mut b = target.to_vpolytope().unwrap().vertices().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
