//! Extended quotients of tori by Weyl groups and the parameter sets attached to them.

pub mod centralizer;
pub mod chartable;
pub mod cirr;
pub mod clifford;
pub mod cyclo;
pub mod error;
pub mod extquo;
pub mod gl;
pub mod group;
pub mod klr;
pub mod matrix;
pub mod par;
pub mod partition;
pub mod report;
pub mod root_datum;
pub mod springer;
pub mod torus;
pub mod triangle;

pub use error::{Error, Result};

pub const DEFAULT_MAX_GROUP_ORDER: usize = 2000;

/// Largest group order the library will enumerate. Overridden by `EXTQUO_MAX_GROUP_ORDER`.
pub fn resource_bound() -> usize {
    std::env::var("EXTQUO_MAX_GROUP_ORDER").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_GROUP_ORDER)
}
