//! Quaternionic slice-regular polynomials, their twistor lifts into the Klein
//! quadric, and the action of `GL(2,H)` on them.

mod error;
pub mod klein;
pub mod orbits;
pub mod planarity;
pub mod poly;
pub mod quat;
pub mod slicereg;

pub use error::{Error, Result};

/// Default relative tolerance for numerical decisions.
pub const DEFAULT_TOL: f64 = 1e-9;
