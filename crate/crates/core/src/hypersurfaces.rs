//! Diagonal Fano hypersurfaces `Σ a_i x_i^d = 0` in `P^{n+1}`.
//!
//! Heights are only reported as bounds and as differences relative to the
//! Fermat hypersurface `X_1` and to `P^n`.

use serde::Serialize;

use crate::arrangements::WeightVector;
use crate::error::{Error, Result};
use crate::rational::{int, rat, to_f64, Rational};
use crate::report::{Convention, HeightReport};
use crate::toric::pn_height;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalHypersurfaceSpec {
    n: usize,
    d: usize,
    a: Vec<i64>,
}

impl DiagonalHypersurfaceSpec {
    /// `n + 2` nonzero coefficients and `1 <= d <= n + 1`.
    pub fn new(n: usize, d: usize, a: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("relative dimension must be positive".into()));
        }
        if !(1..=n + 1).contains(&d) {
            return Err(Error::OutOfRange(format!("degree {d} not in [1, {}]", n + 1)));
        }
        if a.len() != n + 2 {
            return Err(Error::DimensionMismatch {
                expected: n + 2,
                found: a.len(),
            });
        }
        if a.contains(&0) {
            return Err(Error::InvalidSpec("coefficients must be nonzero".into()));
        }
        Ok(Self { n, d, a })
    }

    /// The Fermat hypersurface, all `a_i = 1`.
    pub fn fermat(n: usize, d: usize) -> Result<Self> {
        Self::new(n, d, vec![1; n + 2])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.a
    }

    fn log_abs_sum(&self) -> f64 {
        self.a.iter().map(|&x| (x.unsigned_abs() as f64).ln()).sum()
    }

    fn index_power(&self) -> f64 {
        ((self.n + 2 - self.d) as f64).powi(self.n as i32)
    }
}

/// `(1 − d)(n + 2 − d)^n Σ log|a_i|`.
pub fn diagonal_height_correction(spec: &DiagonalHypersurfaceSpec) -> f64 {
    (1.0 - spec.d as f64) * spec.index_power() * spec.log_abs_sum()
}

/// `h_can(X_a) − h_can(X_1) = 2(1 − d)(n + 2 − d)^n Σ log|a_i|`.
pub fn fermat_reduction_delta(spec: &DiagonalHypersurfaceSpec) -> f64 {
    let n1 = spec.n as f64 + 1.0;
    let d = spec.d as f64;
    let k = (spec.n + 2 - spec.d) as f64;
    n1 * spec.index_power() * d * (k / n1 - 1.0) / d * 2.0 * spec.log_abs_sum()
}

/// `h_can(T^* s_1) − h_can(X_1)` in terms of `|det T|`.
pub fn general_linear_height_delta(n: usize, d: usize, abs_det_t: f64) -> Result<f64> {
    if !(abs_det_t > 0.0) {
        return Err(Error::SingularMap);
    }
    if !(1..=n + 1).contains(&d) {
        return Err(Error::OutOfRange(format!("degree {d} not in [1, {}]", n + 1)));
    }
    let n1 = n as f64 + 1.0;
    let k = (n + 2 - d) as f64;
    Ok(n1 * k.powi(n as i32) * d as f64 * (k / n1 - 1.0) * (abs_det_t * abs_det_t).ln())
}

/// `n + 2` hyperplanes of weight `1 − 1/d` on `P^n`: the branch divisor of
/// `X_1 → Y` after identifying the degree-one Fermat hypersurface with `P^n`.
pub fn branch_arrangement(spec: &DiagonalHypersurfaceSpec) -> WeightVector {
    branch_weights(spec.n, spec.d)
}

fn branch_weights(n: usize, d: usize) -> WeightVector {
    let w = int(1) - rat(1, d as i64);
    WeightVector::new(n, vec![w; n + 2]).expect("1 - 1/d lies in [0, 1)")
}

/// Volumes on both sides of the degree `d^{n+1}` cover `X → (Y, Δ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverVolumes {
    /// `d (n + 2 − d)^n`.
    pub hypersurface: Rational,
    /// `((n + 2 − d) / d)^n`.
    pub log_pair: Rational,
    /// Their ratio, `d^{n+1}`.
    pub ratio: Rational,
}

pub fn cover_volumes(n: usize, d: usize) -> Result<CoverVolumes> {
    let spec = DiagonalHypersurfaceSpec::fermat(n, d)?;
    let k = int((n + 2 - d) as i64);
    let hypersurface = int(d as i64) * num_traits::pow(k.clone(), n);
    let log_pair = branch_arrangement(&spec).degree()?;
    let ratio = &hypersurface / &log_pair;
    Ok(CoverVolumes {
        hypersurface,
        log_pair,
        ratio,
    })
}

/// `λ = d (n + 2 − d)^n / (n + 1)^n`.
pub fn fermat_lambda(n: usize, d: usize) -> Rational {
    int(d as i64) * num_traits::pow(int((n + 2 - d) as i64), n) / num_traits::pow(int(n as i64 + 1), n)
}

/// `λ h(P^n) − ½ V log λ` with `V = (n + 1) λ (n + 1)^n`, the right-hand side
/// of the Fermat bound as a function of `λ ∈ (0, 1]`.
pub fn fermat_bound_in_lambda(n: usize, lambda: f64) -> f64 {
    let n1 = n as f64 + 1.0;
    let v = n1 * lambda * n1.powi(n as i32);
    lambda * pn_height(n).value - 0.5 * v * lambda.ln()
}

/// A bound together with the value of `λ` and whether it is strict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypersurfaceBound {
    #[serde(flatten)]
    pub report: HeightReport,
    pub lambda: f64,
    pub strict: bool,
}

/// `h_can(X_1) <= λ h(P^n) − ½ V log λ` for the Fermat hypersurface of degree `d`.
pub fn fermat_height_bound(n: usize, d: usize) -> Result<HypersurfaceBound> {
    if n == 0 || !(1..=n + 1).contains(&d) {
        return Err(Error::OutOfRange(format!("degree {d} not in [1, {}]", n + 1)));
    }
    let lambda = to_f64(&fermat_lambda(n, d));
    let value = fermat_bound_in_lambda(n, lambda);
    let p = pn_height(n);
    Ok(HypersurfaceBound {
        report: HeightReport::new(
            value,
            Convention::BoundOnHeight,
            "fermat_bound: lambda h(P^n) - (n+1) V(X)/2 log(lambda)",
            p.abs_error + value.abs() * 8.0 * f64::EPSILON,
        ),
        lambda,
        strict: d >= 2,
    })
}

/// Bound for a diagonal hypersurface.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalBound {
    #[serde(flatten)]
    pub report: HeightReport,
    pub lambda: f64,
    pub strict: bool,
    /// The sharper chain `fermat_height_bound + fermat_reduction_delta`.
    pub fermat_chain: f64,
}

/// `h(P^n) + (1 − d)(n + 2 − d)^n Σ log|a_i|`, strict when `d >= 2`.
pub fn diagonal_theorem_bound(spec: &DiagonalHypersurfaceSpec) -> Result<DiagonalBound> {
    let p = pn_height(spec.n);
    let correction = diagonal_height_correction(spec);
    let value = p.value + correction;
    let fermat = fermat_height_bound(spec.n, spec.d)?;
    Ok(DiagonalBound {
        report: HeightReport::new(
            value,
            Convention::BoundOnHeight,
            "diagonal_bound: h(P^n) + (1-d)(n+2-d)^n sum log|a_i|",
            p.abs_error + correction.abs() * 4.0 * f64::EPSILON * spec.a.len() as f64,
        ),
        lambda: fermat.lambda,
        strict: spec.d >= 2,
        fermat_chain: fermat.report.value + fermat_reduction_delta(spec),
    })
}
