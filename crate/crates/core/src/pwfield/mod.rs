//! Cell complexes and piecewise-affine fields with trace and jump calculus.
//!
//! On a piecewise-affine field the approximate upper and lower limits at a
//! facet point are the max and min of the two one-sided traces; the
//! exterior and non-support cells contribute the trace 0.

pub mod complex;
pub mod field;
pub mod pwlinear;
pub mod trace;

pub use complex::{BaseCellComplex, Cell, CellId, CellSpec, Facet, FacetShape, Side};
pub use field::PwAffineField;
pub use pwlinear::{Portion, PortionKind, PwLinear};
pub use trace::{classify_facets, label_from_trace, FacetLabel, FacetTrace};
