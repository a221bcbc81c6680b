//! Essential disconnection by facet portions.
//!
//! ```bash
//! cargo run --example connectivity
//! ```

use steiner_core::connectivity::{essentially_disconnects, is_indecomposable_f, Selection};
use steiner_core::pwfield::{classify_facets, Portion};
use steiner_core::rigidity::gallery;
use steiner_core::{Rational, Result, Scalar};

fn main() -> Result<()> {
    for name in ["fig1a", "fig1b", "casetta", "salsicciotto"] {
        let v = gallery::<Rational>(name, None)?.scene.field("v")?.clone();
        let labels = classify_facets(&v);
        let zero = Selection::zero_set(&labels);
        let both = zero.union(&Selection::jump_set(&labels));
        let cells = v.support();
        println!(
            "{name:>13}: zeros split {}, zeros+jumps split {}, F[v] indecomposable {}",
            essentially_disconnects(v.complex(), &zero, &cells)?.disconnects,
            essentially_disconnects(v.complex(), &both, &cells)?.disconnects,
            is_indecomposable_f(&v)?
        );
    }
    let v = gallery::<Rational>("casetta", None)?.scene.field("v")?.clone();
    let (facet, _) = v.complex().interior_facets().next().expect("shared side");
    let half = Selection::new().with(facet, Portion::from_parts(vec![(Rational::zero(), Rational::ratio(1, 2))]));
    println!("half of the shared side: {}", essentially_disconnects(v.complex(), &half, &v.support())?.disconnects);
    Ok(())
}
