//! Toolkit for K-semistability of toric log Fano pairs and the closed-form
//! arithmetic height bounds attached to them.

pub mod arrangements;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod hypersurfaces;
pub mod io;
pub mod presets;
pub mod rational;
pub mod report;
pub mod sx;
pub mod toric;
pub mod zeta;

pub use error::{Error, Result};
pub use rational::Rational;
pub use report::{Convention, HeightReport};
