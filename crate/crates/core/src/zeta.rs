//! Hurwitz zeta function near `s = −1` and the canonical height of `P^1`
//! with three weighted points.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::report::{Convention, HeightReport};

/// Number of Bernoulli terms kept in the table.
const BERNOULLI_TABLE: usize = 30;

/// Upper limit for the automatically enlarged shift.
const MAX_SHIFT: usize = 1 << 16;

/// Truncation parameters for Euler–Maclaurin summation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrecisionPolicy {
    pub target_abs_error: f64,
    /// Terms summed directly before the tail is approximated.
    pub euler_maclaurin_shift: usize,
    pub bernoulli_terms: usize,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self {
            target_abs_error: 1e-12,
            euler_maclaurin_shift: 16,
            bernoulli_terms: 8,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(target_abs_error: f64, euler_maclaurin_shift: usize, bernoulli_terms: usize) -> Result<Self> {
        if !(target_abs_error > 0.0) {
            return Err(Error::InvalidSpec("target error must be positive".into()));
        }
        if euler_maclaurin_shift < 8 || bernoulli_terms < 4 || bernoulli_terms >= BERNOULLI_TABLE {
            return Err(Error::InvalidSpec(format!(
                "need shift >= 8 and 4 <= bernoulli terms < {BERNOULLI_TABLE}"
            )));
        }
        Ok(Self {
            target_abs_error,
            euler_maclaurin_shift,
            bernoulli_terms,
        })
    }

    /// Default truncation with the given target error.
    pub fn with_target(target_abs_error: f64) -> Result<Self> {
        let d = Self::default();
        Self::new(target_abs_error, d.euler_maclaurin_shift, d.bernoulli_terms)
    }
}

/// Bernoulli numbers `B_0, ..., B_{2K}` as exact rationals (`B_1 = −1/2`).
pub fn bernoulli_numbers(count: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(count);
    for m in 0..count {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `B_{2j} / (2j)!` for `j = 0, ..., BERNOULLI_TABLE`.
fn bernoulli_coefficients() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_numbers(2 * BERNOULLI_TABLE + 1);
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(BERNOULLI_TABLE + 1);
        for (m, bm) in b.iter().enumerate() {
            if m > 0 {
                fact *= BigInt::from(m);
            }
            if m % 2 == 0 {
                out.push(to_f64(&(bm / Rational::from_integer(fact.clone()))));
            }
        }
        out
    })
}

/// A value with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
}

/// `ζ(s, x)` and `∂_s ζ(s, x)` with shift `n` and `m` Bernoulli terms.
fn euler_maclaurin(s: f64, x: f64, n: usize, m: usize) -> Tail {
    let mut z = 0.0;
    let mut dz = 0.0;
    let mut mag = 0.0;
    let mut dmag = 0.0;
    for k in 0..n {
        let t = k as f64 + x;
        if t == 0.0 {
            // 0^{-s} vanishes for s < 0.
            continue;
        }
        let p = t.powf(-s);
        let l = t.ln();
        z += p;
        dz -= l * p;
        mag += p.abs();
        dmag += (l * p).abs();
    }
    let a = n as f64 + x;
    let la = a.ln();
    let head = a.powf(1.0 - s) / (s - 1.0);
    let half = 0.5 * a.powf(-s);
    z += head + half;
    dz += -la * head - head / (s - 1.0) - la * half;
    mag += head.abs() + half.abs();
    dmag += (la * head).abs() + (head / (s - 1.0)).abs() + (la * half).abs();

    let coeff = bernoulli_coefficients();
    // T_j = B_{2j}/(2j)! · P_j(s) · a^{-s-2j+1}, P_j(s) = s(s+1)...(s+2j-2).
    let term = |j: usize| -> (f64, f64) {
        let mut p = 1.0;
        let mut dp = 0.0;
        for i in 0..=(2 * j - 2) {
            let f = s + i as f64;
            dp = dp * f + p;
            p *= f;
        }
        let pw = a.powf(-s - 2.0 * j as f64 + 1.0);
        (coeff[j] * p * pw, coeff[j] * (dp - p * la) * pw)
    };
    for j in 1..=m {
        let (t, dt) = term(j);
        z += t;
        dz += dt;
        mag += t.abs();
        dmag += dt.abs();
    }
    let (rt, rdt) = term(m + 1);
    let eps = 4.0 * f64::EPSILON;
    Tail {
        z: Estimate {
            value: z,
            abs_error: 2.0 * rt.abs() + eps * mag,
        },
        dz: Estimate {
            value: dz,
            abs_error: 2.0 * rdt.abs() + eps * dmag,
        },
        remainder: 2.0 * rt.abs().max(rdt.abs()),
    }
}

/// Values with total error estimates, and the tail remainder alone.
struct Tail {
    z: Estimate,
    dz: Estimate,
    remainder: f64,
}

/// Evaluates with the policy's truncation, doubling the shift until the
/// tail remainder meets the target. Rounding is reported, not iterated on.
fn evaluate(s: f64, x: f64, p: &PrecisionPolicy) -> Result<(Estimate, Estimate)> {
    if s == 1.0 {
        return Err(Error::PoleAtOne);
    }
    if !(x >= 0.0) || (x == 0.0 && s >= 0.0) {
        return Err(Error::DomainError(format!("zeta({s}, {x})")));
    }
    let mut n = p.euler_maclaurin_shift;
    loop {
        let t = euler_maclaurin(s, x, n, p.bernoulli_terms);
        if t.remainder <= p.target_abs_error {
            return Ok((t.z, t.dz));
        }
        if n >= MAX_SHIFT {
            return Err(Error::NonConvergence(format!(
                "zeta({s}, {x}) tail remainder {:e}",
                t.remainder
            )));
        }
        n *= 2;
    }
}

/// `ζ(s, x) = Σ_{k>=0} (k + x)^{−s}`, continued analytically; `x = 0` is allowed for `s < 0`.
pub fn hurwitz_zeta(s: f64, x: f64, p: &PrecisionPolicy) -> Result<Estimate> {
    Ok(evaluate(s, x, p)?.0)
}

/// `∂ζ/∂s (s, x)`.
pub fn hurwitz_zeta_s_derivative(s: f64, x: f64, p: &PrecisionPolicy) -> Result<Estimate> {
    Ok(evaluate(s, x, p)?.1)
}

pub fn hurwitz_zeta_s_derivative_at_minus1(x: f64, p: &PrecisionPolicy) -> Result<Estimate> {
    hurwitz_zeta_s_derivative(-1.0, x, p)
}

/// `F(x) = ζ(−1, x) + ζ′(−1, x)`.
pub fn f_function(x: f64, p: &PrecisionPolicy) -> Result<Estimate> {
    let (z, dz) = evaluate(-1.0, x, p)?;
    Ok(Estimate {
        value: z.value + dz.value,
        abs_error: z.abs_error + dz.abs_error,
    })
}

fn sum_estimates(parts: &[(f64, Estimate)]) -> Estimate {
    parts.iter().fold(
        Estimate {
            value: 0.0,
            abs_error: 0.0,
        },
        |acc, (c, e)| Estimate {
            value: acc.value + c * e.value,
            abs_error: acc.abs_error + c.abs() * e.abs_error,
        },
    )
}

/// `γ(a, b) = F(b) + F(1 − b) − F(a) − F(1 − a)`.
pub fn gamma_ab(a: f64, b: f64, p: &PrecisionPolicy) -> Result<Estimate> {
    for x in [a, 1.0 - a, b, 1.0 - b] {
        if !(x >= 0.0) {
            return Err(Error::DomainError(format!("gamma({a}, {b}) needs F at {x}")));
        }
    }
    Ok(sum_estimates(&[
        (1.0, f_function(b, p)?),
        (1.0, f_function(1.0 - b, p)?),
        (-1.0, f_function(a, p)?),
        (-1.0, f_function(1.0 - a, p)?),
    ]))
}

/// Three weights on `P^1` and `V = 2 − Σw`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaHeightInput {
    weights: [Rational; 3],
    volume: Rational,
}

impl ZetaHeightInput {
    /// Weights in `[0, 1]`, and in `(0, 1]` when `V < 0`.
    pub fn new(weights: [Rational; 3]) -> Result<Self> {
        let one = Rational::one();
        if let Some(w) = weights.iter().find(|w| w.is_negative() || **w > one) {
            return Err(Error::InvalidWeight(format!("{w} is not in [0, 1]")));
        }
        let volume = Rational::from_integer(BigInt::from(2)) - weights.iter().sum::<Rational>();
        if volume.is_zero() {
            return Err(Error::ZeroVolume);
        }
        if volume.is_negative() && weights.iter().any(Zero::is_zero) {
            return Err(Error::InvalidWeight("V < 0 requires weights in (0, 1]".into()));
        }
        Ok(Self { weights, volume })
    }

    pub fn weights(&self) -> &[Rational; 3] {
        &self.weights
    }

    pub fn volume(&self) -> &Rational {
        &self.volume
    }

    /// `w_j <= ½ Σ w_i` for all `j`.
    pub fn is_k_semistable(&self) -> bool {
        let total: Rational = self.weights.iter().sum();
        let half = total / Rational::from_integer(BigInt::from(2));
        self.weights.iter().all(|w| *w <= half)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HeightBranch {
    /// `V > 0`: the height of `−K`.
    Fano,
    /// `V < 0`: the analytic continuation, computing `K^2 / 2V` instead.
    Continuation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaHeight {
    #[serde(flatten)]
    pub report: HeightReport,
    pub branch: HeightBranch,
    pub k_semistable: bool,
}

/// `h = 2V [½(1 + log π − log(V/2)) − (γ(0, V/2) + Σ γ(w_i, w_i + V/2)) / V]`.
///
/// For `V < 0` the term `γ(0, V/2) + ½ V log(V/2)` is rewritten through
/// `F(x) = x − x log x + F(x + 1)`, which removes the logarithm of `V`.
pub fn p1_canonical_height(input: &ZetaHeightInput, p: &PrecisionPolicy) -> Result<ZetaHeight> {
    let v = to_f64(&input.volume);
    let half = 0.5 * v;
    let mut parts: Vec<(f64, Estimate)> = Vec::new();
    for w in &input.weights {
        let w = to_f64(w);
        parts.push((-2.0, gamma_ab(w, w + half, p)?));
    }
    let (branch, formula) = if v > 0.0 {
        parts.push((-2.0, gamma_ab(0.0, half, p)?));
        parts.push((
            1.0,
            Estimate {
                value: v * (1.0 + PI.ln() - half.ln()),
                abs_error: 0.0,
            },
        ));
        (
            HeightBranch::Fano,
            "p1_zeta_height: 2V [(1 + log pi - log(V/2))/2 - (gamma(0,V/2) + sum gamma(w_i, w_i+V/2))/V]",
        )
    } else {
        parts.push((-2.0, f_function(1.0 + half, p)?));
        parts.push((-2.0, f_function(1.0 - half, p)?));
        parts.push((4.0, f_function(1.0, p)?));
        parts.push((
            1.0,
            Estimate {
                value: v * PI.ln(),
                abs_error: 0.0,
            },
        ));
        (
            HeightBranch::Continuation,
            "p1_zeta_height (continuation, K^2): V log pi - 2[F(1+V/2) + F(1-V/2) - 2F(1)] - 2 sum gamma(w_i, w_i+V/2)",
        )
    };
    let total = sum_estimates(&parts);
    let roundoff = parts.iter().map(|(c, e)| (c * e.value).abs()).sum::<f64>() * 4.0 * f64::EPSILON;
    Ok(ZetaHeight {
        report: HeightReport::new(total.value, Convention::RawHeight, formula, total.abs_error + roundoff),
        branch,
        k_semistable: input.is_k_semistable(),
    })
}

/// Same height as [`p1_canonical_height`] through the regularized form,
/// valid on both sides of `V = 0`.
pub fn p1_canonical_height_regularized(input: &ZetaHeightInput, p: &PrecisionPolicy) -> Result<f64> {
    let v = to_f64(&input.volume);
    let half = 0.5 * v;
    let mut h = v * PI.ln();
    h -= 2.0 * (f_function(1.0 + half, p)?.value + f_function(1.0 - half, p)?.value - 2.0 * f_function(1.0, p)?.value);
    for w in &input.weights {
        let w = to_f64(w);
        h -= 2.0 * gamma_ab(w, w + half, p)?.value;
    }
    Ok(h)
}

/// The minimum `−1 − log π` of the Mabuchi functional on `P^1`.
pub fn mabuchi_p1_constant() -> f64 {
    -1.0 - PI.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(13);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[12], rat(-691, 2730));
        assert!(b[3].is_zero() && b[11].is_zero());
    }

    #[test]
    fn zeta_special_values() {
        let p = PrecisionPolicy::default();
        for x in [0.25, 0.5, 1.0, 1.5] {
            let z = hurwitz_zeta(-1.0, x, &p).unwrap().value;
            assert!((z + (x * x - x + 1.0 / 6.0) / 2.0).abs() < 1e-12);
        }
        assert!((hurwitz_zeta(-1.0, 0.5, &p).unwrap().value - 1.0 / 24.0).abs() < 1e-13);
        assert!((hurwitz_zeta(2.0, 1.0, &p).unwrap().value - PI * PI / 6.0).abs() < 1e-12);
        assert_eq!(hurwitz_zeta(1.0, 1.0, &p), Err(Error::PoleAtOne));
        assert!(hurwitz_zeta(2.0, 0.0, &p).is_err());
    }

    #[test]
    fn f_identities() {
        let p = PrecisionPolicy::default();
        let f0 = f_function(0.0, &p).unwrap().value;
        let f1 = f_function(1.0, &p).unwrap().value;
        assert!((f0 - f1).abs() < 1e-12);
        assert!((f1 + 0.2487544770337843).abs() < 1e-12);
        assert!(gamma_ab(0.0, 1.0, &p).unwrap().value.abs() < 1e-12);
        let g = gamma_ab(0.2, 0.7, &p).unwrap().value;
        assert!((g + gamma_ab(0.7, 0.2, &p).unwrap().value).abs() < 1e-12);
        assert!(gamma_ab(0.2, 1.3, &p).is_err());
        assert!((mabuchi_p1_constant() + 2.14473).abs() < 1e-5);
    }

    #[test]
    fn height_anchor() {
        let p = PrecisionPolicy::default();
        let zero = ZetaHeightInput::new([int(0), int(0), int(0)]).unwrap();
        let h = p1_canonical_height(&zero, &p).unwrap();
        assert_eq!(h.branch, HeightBranch::Fano);
        assert!((h.report.value - 2.0 * (1.0 + PI.ln())).abs() < 1e-10);
        let w = ZetaHeightInput::new([rat(1, 3), rat(1, 4), rat(1, 5)]).unwrap();
        let a = p1_canonical_height(&w, &p).unwrap().report.value;
        let b = p1_canonical_height_regularized(&w, &p).unwrap();
        assert!((a - b).abs() < 1e-10);
        let neg = ZetaHeightInput::new([rat(9, 10), rat(4, 5), rat(1, 2)]).unwrap();
        assert_eq!(p1_canonical_height(&neg, &p).unwrap().branch, HeightBranch::Continuation);
        assert_eq!(
            ZetaHeightInput::new([rat(1, 2), rat(1, 2), int(1)]),
            Err(Error::ZeroVolume)
        );
    }
}
