//! Steiner symmetral of a set over a planar complex; the perimeter drops.
//!
//! ```bash
//! cargo run --example symmetrize
//! ```

use std::sync::Arc;

use steiner_core::geometry::{Affine, ConvexRegion};
use steiner_core::perimeter::oracle_perimeter;
use steiner_core::polyset::{steiner_symmetral, PolyVerticalSet};
use steiner_core::pwfield::{BaseCellComplex, CellSpec, PwAffineField};
use steiner_core::{Rational, Result, Scalar};

fn main() -> Result<()> {
    let r = |n| Rational::from_i64(n);
    let tri = |pts: [[i64; 2]; 3]| ConvexRegion::Polygon(pts.iter().map(|p| [r(p[0]), r(p[1])]).collect());
    let cx = Arc::new(BaseCellComplex::build(
        2,
        vec![
            CellSpec::new("lower", tri([[0, 0], [2, 0], [2, 2]])),
            CellSpec::new("upper", tri([[0, 0], [2, 2], [0, 2]])),
        ],
    )?);
    // a tilted slab over the lower triangle, a thicker flat one over the upper
    let u1 = PwAffineField::from_fn(&cx, |c| {
        Some(if c == 0 { Affine::new(vec![r(1), r(0)], r(0)) } else { Affine::constant(2, r(-1)) })
    });
    let u2 = PwAffineField::from_fn(&cx, |c| {
        Some(if c == 0 { Affine::new(vec![r(1), r(0)], r(1)) } else { Affine::constant(2, r(2)) })
    });
    let e = PolyVerticalSet::new(u1, u2)?;
    let f = steiner_symmetral(&e.slice_length())?;
    println!("volume     {} -> {}", e.volume(), f.volume());
    println!("perimeter  {} -> {}", oracle_perimeter(&e), oracle_perimeter(&f));
    Ok(())
}
