//! JSON encodings shared by the command-line front end.
//!
//! Polytopes: `{"dim": n, "facets": [{"normal": [int, ...], "offset": "p/q"}]}`
//! or `{"dim": n, "vertices": [["p/q", ...], ...]}`. Rationals are strings
//! `"p/q"` or `"p"`; plain JSON integers are accepted too.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{Facet, HPolytope, VPolytope};
use crate::rational::{format_rational, rational_from_json, Rational};
use crate::toric::ToricLogFano;

#[derive(Debug, Clone, PartialEq)]
pub enum PolytopeInput {
    Facets(HPolytope),
    Vertices(VPolytope),
}

impl PolytopeInput {
    pub fn to_vpolytope(&self) -> Result<VPolytope> {
        match self {
            PolytopeInput::Facets(h) => h.enumerate_vertices(),
            PolytopeInput::Vertices(v) => Ok(v.clone()),
        }
    }

    pub fn to_hpolytope(&self) -> HPolytope {
        match self {
            PolytopeInput::Facets(h) => h.clone(),
            PolytopeInput::Vertices(v) => v.to_hpolytope(),
        }
    }
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
}

fn usize_field(v: &Value, name: &str) -> Result<usize> {
    field(v, name)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("field {name:?} must be a non-negative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

fn big_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n
            .to_string()
            .parse()
            .expect("integer JSON number parses")),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

pub fn parse_polytope(v: &Value) -> Result<PolytopeInput> {
    let dim = usize_field(v, "dim")?;
    match (v.get("facets"), v.get("vertices")) {
        (Some(fs), None) => {
            let facets = array(fs, "facets")?
                .iter()
                .map(|f| {
                    let normal = array(field(f, "normal")?, "normal")?
                        .iter()
                        .map(big_int)
                        .collect::<Result<Vec<_>>>()?;
                    let offset = rational_from_json(field(f, "offset")?)?;
                    Facet::new(normal, offset)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(PolytopeInput::Facets(HPolytope::new(dim, facets)?))
        }
        (None, Some(vs)) => {
            let pts = array(vs, "vertices")?
                .iter()
                .map(|p| {
                    array(p, "vertex")?
                        .iter()
                        .map(rational_from_json)
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(PolytopeInput::Vertices(VPolytope::from_points(dim, pts)?))
        }
        _ => Err(Error::Parse(
            "polytope needs exactly one of \"facets\" or \"vertices\"".into(),
        )),
    }
}

pub fn parse_toric(v: &Value) -> Result<ToricLogFano> {
    let label = v.get("label").and_then(Value::as_str).map(str::to_string);
    ToricLogFano::new(parse_polytope(v)?.to_hpolytope(), label)
}

pub fn rational_vec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rational(q))).collect())
}

pub fn hpolytope_json(h: &HPolytope) -> Value {
    let facets: Vec<Value> = h
        .facets()
        .iter()
        .map(|f| {
            json!({
                "normal": f.normal.iter().map(|x| x.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::String(x.to_string()))).collect::<Vec<_>>(),
                "offset": format_rational(&f.offset),
            })
        })
        .collect();
    json!({ "dim": h.dim(), "facets": facets })
}

pub fn vpolytope_json(v: &VPolytope) -> Value {
    let vertices: Vec<Value> = v.vertices().iter().map(|p| rational_vec_json(p)).collect();
    json!({ "dim": v.dim(), "vertices": vertices })
}
