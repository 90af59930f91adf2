//! Weighted hyperplane arrangements `Δ = Σ w_i H_i` on `P^n`.
//!
//! Hyperplanes are abstract indices; they are assumed distinct and in simple
//! normal crossing, so every criterion depends on the weights alone.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::combinations;
use crate::rational::{exact_root, factorial, int, to_f64, Rational};
use crate::report::{Convention, HeightReport};
use crate::toric::{a_n_constant, toric_family_height};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    n: usize,
    weights: Vec<Rational>,
}

impl WeightVector {
    /// Requires `n >= 1`, at least one weight and `0 <= w_i < 1`.
    pub fn new(n: usize, weights: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("ambient dimension must be positive".into()));
        }
        if weights.is_empty() {
            return Err(Error::InvalidSpec("need at least one hyperplane".into()));
        }
        let one = Rational::one();
        if let Some(w) = weights.iter().find(|w| w.is_negative() || **w >= one) {
            return Err(Error::InvalidWeight(format!("{w} is not in [0, 1)")));
        }
        Ok(Self { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    /// `w_i <= Σw / (n+1)` for every `i`.
    pub fn is_semistable(&self) -> bool {
        let bound = self.total() / int(self.n as i64 + 1);
        self.weights.iter().all(|w| *w <= bound)
    }

    /// `k Σw >= (n+1) Σ_{j in I} w_j` for every index set `I` of size `k <= n`.
    ///
    /// For fixed `k` the binding set holds the `k` largest weights, so only
    /// prefix sums of the sorted weights are checked.
    pub fn satisfies_full_criterion(&self) -> bool {
        let total = self.total();
        let n1 = int(self.n as i64 + 1);
        let mut sorted = self.weights.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        let mut prefix = Rational::zero();
        for k in 1..=self.n {
            if let Some(w) = sorted.get(k - 1) {
                prefix += w;
            }
            if int(k as i64) * &total < &n1 * &prefix {
                return false;
            }
        }
        true
    }

    /// `(n + 1 − Σw)^n`.
    pub fn degree(&self) -> Result<Rational> {
        let base = int(self.n as i64 + 1) - self.total();
        if !base.is_positive() {
            return Err(Error::NotFano);
        }
        Ok(num_traits::pow(base, self.n))
    }
}

pub fn is_arrangement_semistable(w: &WeightVector) -> bool {
    w.is_semistable()
}

pub fn arrangement_degree(w: &WeightVector) -> Result<Rational> {
    w.degree()
}

/// `n + 1 − D^{1/n}`, exact when `D` is an `n`-th power of a rational.
#[derive(Debug, Clone, PartialEq)]
pub enum StabilityConstant {
    Exact(Rational),
    Approx(f64),
}

impl StabilityConstant {
    pub fn to_f64(&self) -> f64 {
        match self {
            StabilityConstant::Exact(q) => to_f64(q),
            StabilityConstant::Approx(x) => *x,
        }
    }
}

/// Weights of fixed degree `D` making `(P^n, Δ)` K-semistable.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityPolytope {
    pub n: usize,
    pub m: usize,
    pub target_degree: Rational,
    pub c: StabilityConstant,
    /// Supports of the vertices, `(n+1)`-subsets in lexicographic order. Each
    /// vertex is `C/(n+1)` on its support and zero elsewhere.
    pub supports: Vec<Vec<usize>>,
}

impl StabilityPolytope {
    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    /// The common nonzero weight `C / (n+1)`.
    pub fn vertex_weight(&self) -> StabilityConstant {
        match &self.c {
            StabilityConstant::Exact(c) => StabilityConstant::Exact(c / int(self.n as i64 + 1)),
            StabilityConstant::Approx(c) => StabilityConstant::Approx(c / (self.n as f64 + 1.0)),
        }
    }

    fn point(&self, support: &[usize], value: &Rational) -> Vec<Rational> {
        (0..self.m)
            .map(|i| if support.contains(&i) { value.clone() } else { Rational::zero() })
            .collect()
    }

    /// Vertices as exact weight vectors, when `C` is rational.
    pub fn exact_vertices(&self) -> Option<Vec<WeightVector>> {
        let StabilityConstant::Exact(value) = self.vertex_weight() else {
            return None;
        };
        Some(
            self.supports
                .iter()
                .map(|s| WeightVector::new(self.n, self.point(s, &value)).expect("vertex weights lie in [0, 1)"))
                .collect(),
        )
    }

    pub fn float_vertices(&self) -> Vec<Vec<f64>> {
        let value = self.vertex_weight().to_f64();
        self.supports
            .iter()
            .map(|s| (0..self.m).map(|i| if s.contains(&i) { value } else { 0.0 }).collect())
            .collect()
    }

    /// Every vertex is semistable and has degree `D`: exactly when `C` is
    /// rational, to relative accuracy `1e-12` otherwise.
    pub fn verify(&self) -> bool {
        match self.exact_vertices() {
            Some(vs) => vs
                .iter()
                .all(|v| v.is_semistable() && v.degree().as_ref() == Ok(&self.target_degree)),
            None => {
                let d = to_f64(&self.target_degree);
                let n1 = self.n as f64 + 1.0;
                self.float_vertices().iter().all(|v| {
                    let total: f64 = v.iter().sum();
                    let semistable = v.iter().all(|x| *x <= total / n1 * (1.0 + 1e-15));
                    let degree = (n1 - total).powi(self.n as i32);
                    semistable && (degree - d).abs() <= 1e-12 * d
                })
            }
        }
    }
}

pub fn stability_polytope(n: usize, m: usize, target_degree: Rational) -> Result<StabilityPolytope> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidSpec("need n >= 1 and m >= 1".into()));
    }
    let max = Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(n + 1), n));
    if !target_degree.is_positive() || target_degree > max {
        return Err(Error::InvalidDegree);
    }
    let n1 = int(n as i64 + 1);
    let c = match exact_root(&target_degree, n as u32) {
        Some(r) => StabilityConstant::Exact(&n1 - r),
        None => StabilityConstant::Approx((n as f64 + 1.0) - to_f64(&target_degree).powf(1.0 / n as f64)),
    };
    let mut supports = Vec::new();
    if matches!(&c, StabilityConstant::Exact(c) if c.is_zero()) {
        // Only the zero weight has full degree.
        supports.push(Vec::new());
    } else if m > n {
        combinations(m, n + 1, |s| supports.push(s.to_vec()));
    }
    Ok(StabilityPolytope {
        n,
        m,
        target_degree,
        c,
        supports,
    })
}

/// `h ≤ (n+1)! · ½ v log((n+1)^n e^{2a_n} / (n! v))` with `v = degree / n!`.
pub fn arrangement_height_bound(w: &WeightVector) -> Result<HeightReport> {
    if !w.is_semistable() {
        return Err(Error::NotSemistable);
    }
    let n = w.n();
    let nf = Rational::from_integer(factorial(n));
    let v = to_f64(&(w.degree()? / &nf));
    let v0 = to_f64(&(Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(n + 1), n)) / nf));
    let r = toric_family_height(n, v, a_n_constant(n), v0)?;
    Ok(HeightReport::new(
        r.value,
        Convention::BoundOnHeight,
        "arrangement_bound: (n+1)! * v/2 * log((n+1)^n e^(2 a_n) / (n! v))",
        r.abs_error,
    ))
}

/// `w = Σ μ_k v_k` with `v_k` the stability polytope vertex supported on `S_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexDecomposition {
    /// `C / (n+1)`, the nonzero entry of every vertex used.
    #[serde(serialize_with = "ser_rational")]
    pub vertex_weight: Rational,
    pub terms: Vec<DecompositionTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionTerm {
    pub support: Vec<usize>,
    #[serde(serialize_with = "ser_rational")]
    pub coefficient: Rational,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::rational::format_rational(q))
}

impl VertexDecomposition {
    /// Exact check: nonnegative coefficients summing to one that reproduce `w`.
    pub fn verify(&self, w: &WeightVector) -> bool {
        let n1 = w.n() + 1;
        let mut sum = vec![Rational::zero(); w.m()];
        let mut total = Rational::zero();
        for t in &self.terms {
            if t.coefficient.is_negative() || t.support.len() != n1 && !self.vertex_weight.is_zero() {
                return false;
            }
            for &i in &t.support {
                sum[i] += &t.coefficient * &self.vertex_weight;
            }
            total += &t.coefficient;
        }
        total.is_one() && sum == w.weights()
    }
}

/// Writes a semistable `w` as a convex combination of stability polytope
/// vertices of the same degree.
///
/// With `C = Σw`, the vector `u = (n+1) w / C` lies in the hypersimplex
/// `{0 <= u <= 1, Σu = n+1}`; repeatedly peel off the indicator of the
/// `n+1` largest entries.
pub fn vertex_decomposition(w: &WeightVector) -> Result<VertexDecomposition> {
    if !w.is_semistable() {
        return Err(Error::NotSemistable);
    }
    let n1 = w.n() + 1;
    let c = w.total();
    let vertex_weight = &c / int(n1 as i64);
    if c.is_zero() {
        return Ok(VertexDecomposition {
            vertex_weight,
            terms: vec![DecompositionTerm {
                support: Vec::new(),
                coefficient: Rational::one(),
            }],
        });
    }
    let mut u: Vec<Rational> = w.weights().iter().map(|x| x * int(n1 as i64) / &c).collect();
    let mut remaining = Rational::one();
    let mut terms = Vec::new();
    let one = Rational::one();
    for _ in 0..=2 * w.m() + 2 {
        let mut order: Vec<usize> = (0..u.len()).collect();
        order.sort_by(|&i, &j| u[j].cmp(&u[i]).then(i.cmp(&j)));
        let mut support = order[..n1].to_vec();
        support.sort_unstable();
        let min_in = support.iter().map(|&i| &u[i]).min().expect("support is nonempty").clone();
        let max_out = order[n1..].iter().map(|&i| u[i].clone()).max().unwrap_or_else(Rational::zero);
        let lambda = min_in.min(&one - max_out);
        if lambda >= one {
            terms.push(DecompositionTerm {
                support,
                coefficient: remaining,
            });
            return Ok(VertexDecomposition { vertex_weight, terms });
        }
        if !lambda.is_positive() {
            break;
        }
        terms.push(DecompositionTerm {
            support: support.clone(),
            coefficient: &remaining * &lambda,
        });
        for &i in &support {
            u[i] -= &lambda;
        }
        let scale = &one - &lambda;
        for x in u.iter_mut() {
            *x = &*x / &scale;
        }
        remaining *= scale;
    }
    Err(Error::NonConvergence("vertex decomposition did not terminate".into()))
}

/// The equivalent toric pair `(P^n, (1 − t) D_0)` of the same degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToricReduction {
    /// `degree^{1/n} / (n+1) = 1 − Σw / (n+1)`.
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    pub certificate: VertexDecomposition,
}

pub fn reduce_to_toric(w: &WeightVector) -> Result<ToricReduction> {
    let certificate = vertex_decomposition(w)?;
    let t = int(1) - w.total() / int(w.n() as i64 + 1);
    Ok(ToricReduction { t, certificate })
}
