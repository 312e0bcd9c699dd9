//! Elliptic-integral special functions, Hersch–Pfluger distortion, explicit
//! Schottky / quasiconformal Schwarz / Mori bounds, and a sweep engine that
//! measures the margin of each inequality over parameter grids.

pub mod bounds;
pub mod distortion;
pub mod error;
pub mod modulus;
pub mod special_fns;
pub mod verify;

pub use error::{Error, Result};
pub use special_fns::{DistortionCoeff, GeneralizedParam, PlanePoint, UnitRadius};
