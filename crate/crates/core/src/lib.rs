//! Exact motivic invariants of plane curve singularities.

pub mod acceptance;
pub mod cli;
pub mod contact;
pub mod curve;
pub mod error;
pub mod hfl;
pub mod linalg;
pub mod motring;
pub mod polyexpr;
pub mod qseries;
pub mod series;

pub use error::{Error, Result};
pub use motring::MotClass;
pub use series::MotSeries;
