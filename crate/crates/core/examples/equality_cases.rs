//! Which sets with the same slice lengths as `F[v]` keep its perimeter.
//!
//! ```bash
//! cargo run --example equality_cases
//! ```

use steiner_core::polyset::{prop14_construct, translate_over_partition};
use steiner_core::rigidity::{check_equality_case, gallery};
use steiner_core::{Rational, Result, Scalar};

fn main() -> Result<()> {
    let v = gallery::<Rational>("fig1a", None)?.scene.field("v")?.clone();
    for lift in [Rational::ratio(1, 2), Rational::one()] {
        let e = translate_over_partition(&v, &[Some(0), Some(1)], &[Rational::zero(), lift.clone()])?;
        let report = check_equality_case(&e, &v)?;
        println!(
            "lift right half by {lift}: equality {} (P(E) = {}, P(F[v]) = {})",
            report.holds, report.perimeter_e, report.perimeter_f
        );
    }
    let zero = v.scale(&Rational::zero());
    for lambda in [Rational::zero(), Rational::ratio(1, 4), Rational::one()] {
        let e = prop14_construct(&zero, &v, &lambda)?;
        println!("two-field construction, lambda {lambda}: equality {}", check_equality_case(&e, &v)?.holds);
    }
    Ok(())
}
