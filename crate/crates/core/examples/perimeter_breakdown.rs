//! Perimeter of `W[v, b]` term by term, next to the polyhedral oracle.
//!
//! ```bash
//! cargo run --example perimeter_breakdown
//! ```

use std::sync::Arc;

use steiner_core::geometry::ConvexRegion;
use steiner_core::perimeter::{oracle_perimeter, perimeter_formula, FormulaArgs};
use steiner_core::polyset::build_w;
use steiner_core::pwfield::{BaseCellComplex, CellSpec, PwAffineField};
use steiner_core::{Rational, Result, Scalar};

fn main() -> Result<()> {
    let r = Rational::ratio;
    let cx = Arc::new(BaseCellComplex::build(
        1,
        vec![
            CellSpec::new("left", ConvexRegion::Interval(r(0, 1), r(1, 2))),
            CellSpec::new("right", ConvexRegion::Interval(r(1, 2), r(1, 1))),
        ],
    )?);
    let v = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1)), Some(r(1, 1))]);
    for shift in [r(0, 1), r(1, 4), r(1, 1), r(3, 1)] {
        let b = PwAffineField::piecewise_constant(&cx, &[Some(r(0, 1)), Some(shift.clone())]);
        let p = perimeter_formula(FormulaArgs::W { v: &v, b: &b }, None)?;
        let e = build_w(&v, &b)?;
        println!(
            "right half raised by {shift}: area {} + jumps {} + vanishing {} = {} (oracle {})",
            p.ac_part,
            p.jump_part,
            p.boundary_zero_part,
            p.total,
            oracle_perimeter(&e)
        );
    }
    Ok(())
}
