//! Integrated slice perimeters and the coarea identity for step barycenters.
//!
//! ```bash
//! cargo run --example slice_coarea
//! ```

use steiner_core::perimeter::{coarea_check, positive_lower_facets, slice_inequality_check};
use steiner_core::polyset::translate_over_partition;
use steiner_core::rigidity::gallery;
use steiner_core::{Rational, Result, Scalar};

fn main() -> Result<()> {
    let v = gallery::<Rational>("fig1a", None)?.scene.field("v")?.clone();
    for lift in [Rational::zero(), Rational::ratio(1, 2), Rational::from_i64(2)] {
        let e = translate_over_partition(&v, &[Some(0), Some(1)], &[Rational::zero(), lift.clone()])?;
        let check = slice_inequality_check(&e);
        println!("lift {lift}: slice integral {} <= perimeter {}", check.lhs, check.rhs);
        let b = e.barycenter();
        let coarea = coarea_check(&b, &positive_lower_facets(&v))?;
        println!("          level-set integral {} = jump integral {}", coarea.lhs, coarea.rhs);
    }
    Ok(())
}
