use serde::Serialize;

/// Which quantity a [`HeightReport`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// The top arithmetic self-intersection `h`.
    RawHeight,
    /// `h / ((n + 1) · degree)`.
    NormalizedHeight,
    /// An upper bound for `h`, not a value.
    BoundOnHeight,
}

/// A floating-point height value with its provenance and an error bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightReport {
    pub value: f64,
    pub convention: Convention,
    pub formula: String,
    pub abs_error: f64,
}

impl HeightReport {
    pub fn new(value: f64, convention: Convention, formula: &str, abs_error: f64) -> Self {
        Self {
            value,
            convention,
            formula: formula.to_string(),
            abs_error,
        }
    }
}

/// Rounding error of a short f64 evaluation of magnitude `scale` with `ops` operations.
pub(crate) fn roundoff(scale: f64, ops: u32) -> f64 {
    scale.abs() * f64::from(ops) * f64::EPSILON
}
