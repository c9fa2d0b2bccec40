//! Exact computations for plane curves over Q: singularities, splitting
//! identities, pencils of curves, orbifold groups and Kummer covers.

pub mod curves;
pub mod error;
pub mod kummer;
pub mod orbgroups;
pub mod par;
pub mod polycore;
pub mod pencils;
pub mod splitting;

pub use error::{Error, Result};
