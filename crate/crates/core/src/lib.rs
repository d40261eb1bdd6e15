//! Exact enumeration and classification of braidings and crossed braidings
//! on Tambara–Yamagami categories over the real and complex numbers.

pub mod braiding;
pub mod classify;
pub mod crossed;
pub mod data;
pub mod equations;
pub mod f2;
pub mod json;
pub mod qform;
pub mod scalar;
pub mod survey;

pub use braiding::{Braiding, SolveError, Stage};
pub use data::{Case, TYData};
pub use scalar::CycScalar;

/// Library version recorded in cache headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
