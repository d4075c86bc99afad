//! Exact tools for subadditivity cones, hypergraph models of entanglement
//! and coarse-grained inner bounds on the quantum entropy cone.
//!
//! All arithmetic is exact: entropy vectors hold rationals, rays are
//! primitive integer vectors and every verdict carries a certificate that
//! can be re-checked without rerunning the search.

pub mod coarse;
pub mod cone;
pub mod entrospace;
pub mod error;
pub mod exactla;
pub mod hypergraph;
pub mod ineq;
pub mod report;
pub mod reproduce;
pub mod states;

pub use entrospace::{EntropyVector, PartyPermutation, PartySet, Rational};
pub use error::{Error, Result};
