//! Closed-form heights of projective space and of the toric log families
//! obtained by shrinking its anticanonical divisor.

use std::f64::consts::PI;

use super::VolumePair;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::report::{roundoff, Convention, HeightReport};

pub(crate) fn harmonic(n: usize) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

pub(crate) fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `(n+1)!` as a float.
pub(crate) fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `h(P^n) / (n+1)^(n+1)`, evaluated without forming the large power.
///
/// Panics if `2 a_n < 1`, which would contradict the monotonicity all the
/// toric and hypersurface bounds rely on.
pub fn a_n_constant(n: usize) -> f64 {
    assert!(n >= 1, "projective space needs n >= 1");
    let nf = n as f64;
    let a = 0.5 * ((nf + 1.0) * harmonic(n) - nf + nf * PI.ln() - ln_factorial(n));
    assert!(2.0 * a >= 1.0, "2 a_n >= 1 violated at n = {n}");
    a
}

/// Height of `P^n_Z` with the volume-normalized Fubini-Study metric.
pub fn pn_height(n: usize) -> HeightReport {
    let a = a_n_constant(n);
    let scale = ((n + 1) as f64).powi(n as i32 + 1);
    let value = a * scale;
    let terms = 0.5 * scale * ((n as f64 + 1.0) * harmonic(n) + n as f64 + ln_factorial(n) + n as f64 * PI.ln());
    HeightReport::new(
        value,
        Convention::RawHeight,
        "pn_height: (n+1)^(n+1)/2 * ((n+1) H_n - n + log(pi^n / n!))",
        roundoff(terms, 4 * n as u32 + 8),
    )
}

/// `(n+1)! · ½ v log((2π²)^n / v)` with `v` the polytope volume.
pub fn universal_height_bound(vol: &VolumePair, n: usize) -> Result<HeightReport> {
    let v = to_f64(&vol.poly_volume);
    if v <= 0.0 {
        return Err(Error::NonpositiveVolume);
    }
    universal_height_bound_real(v, n)
}

pub(crate) fn universal_height_bound_real(v: f64, n: usize) -> Result<HeightReport> {
    if !(v > 0.0) {
        return Err(Error::NonpositiveVolume);
    }
    let nf = n as f64;
    let log_term = nf * (2.0 * PI * PI).ln() - v.ln();
    let fact = factorial_f64(n + 1);
    let value = fact * 0.5 * v * log_term;
    let scale = fact * v * (nf * (2.0 * PI * PI).ln() + v.ln().abs());
    Ok(HeightReport::new(
        value,
        Convention::BoundOnHeight,
        "universal_toric_bound: (n+1)! * v/2 * log((2 pi^2)^n / v)",
        roundoff(scale, n as u32 + 8),
    ))
}

/// Height of `(P^n, (1 - t) D_0)` for `t ∈ (0, 1]`.
pub fn scaled_divisor_height(n: usize, t: &Rational) -> Result<HeightReport> {
    let tf = to_f64(t);
    if !(tf > 0.0 && *t <= crate::rational::int(1)) {
        return Err(Error::OutOfRange(format!("t = {t} must lie in (0, 1]")));
    }
    scaled_divisor_height_real(n, tf)
}

/// Real-parameter version of [`scaled_divisor_height`].
///
/// `h_t / (n+1)! = v_t (a_n - ½ log(v_t / v_0))`, `v_t = t^n (n+1)^n / n!`.
pub fn scaled_divisor_height_real(n: usize, t: f64) -> Result<HeightReport> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::OutOfRange(format!("t = {t} must lie in (0, 1]")));
    }
    let a = a_n_constant(n);
    let nf = n as f64;
    let v0 = (nf + 1.0).powi(n as i32) / factorial_f64(n);
    let ratio = t.powi(n as i32);
    let vt = ratio * v0;
    let fact = factorial_f64(n + 1);
    let value = fact * vt * (a - 0.5 * ratio.ln());
    let scale = fact * vt * (a + 0.5 * ratio.ln().abs());
    Ok(HeightReport::new(
        value,
        Convention::RawHeight,
        "scaled_divisor_height: (n+1)! * v_t * (a_n - log(t^n)/2)",
        roundoff(scale, 3 * n as u32 + 8),
    ))
}

/// `h = (n+1)! · ½ v log(b e^{2a} / v)` for `0 < v <= b`.
pub fn toric_family_height(n: usize, v: f64, a: f64, b: f64) -> Result<HeightReport> {
    if !(v > 0.0 && v <= b) {
        return Err(Error::OutOfRange(format!("need 0 < v <= b, got v = {v}, b = {b}")));
    }
    let fact = factorial_f64(n + 1);
    let value = fact * 0.5 * v * ((b / v).ln() + 2.0 * a);
    let scale = fact * v * ((b / v).ln() + 2.0 * a.abs());
    Ok(HeightReport::new(
        value,
        Convention::RawHeight,
        "toric_family_height: (n+1)! * v/2 * log(b e^(2a) / v)",
        roundoff(scale, 8),
    ))
}
