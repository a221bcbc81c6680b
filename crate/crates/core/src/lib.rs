//! Exact perimeter formulas, equality cases and rigidity deciders for Steiner
//! symmetrization of sets bounded by piecewise-affine graphs.
//!
//! The base space is the line (`dim = 1`) or the plane (`dim = 2`),
//! partitioned into intervals or convex polygons. A set is described by a
//! lower and an upper piecewise-affine graph over the support cells; its
//! slice length `v` and barycenter `b` determine the perimeter through
//! closed-form cell and facet integrals, which are cross-checked against an
//! explicit polyhedral boundary computation.
//!
//! All routines are generic over [`numeric::Scalar`]; use
//! [`numeric::Rational`] for exact results and `f64` for speed.

pub mod acceptance;
pub mod cli;
pub mod connectivity;
pub mod error;
pub mod geometry;
pub mod numeric;
pub mod perimeter;
pub mod polyset;
pub mod pwfield;
pub mod rigidity;
pub mod scene;

pub use error::{Error, Result};
pub use numeric::{Arithmetic, Rational, RootSum, Scalar};
