//! Stairways of constants and the brute-force cut search.
//!
//! ```bash
//! cargo run --example stairway
//! ```

use steiner_core::rigidity::{exhaustive_witness_search, gallery, mismatched_stairway_check};
use steiner_core::{Rational, Result};

fn main() -> Result<()> {
    for (name, depth) in [("fig1a", None), ("casetta", None), ("cantor", Some(2)), ("rationals", Some(4))] {
        let v = gallery::<Rational>(name, depth)?.scene.field("v")?.clone();
        let (mismatched, stairs) = mismatched_stairway_check(&v)?;
        print!("{name:>10}: mismatched {mismatched}");
        if let Some(s) = stairs {
            let offsets: Vec<String> = s.offsets.iter().map(ToString::to_string).collect();
            print!(", stairway over {} parts at [{}]", s.parts.len(), offsets.join(", "));
        }
        match exhaustive_witness_search(&v)? {
            Some((plus, t)) => println!(", search lifts {plus:?} by {t}"),
            None => println!(", search finds nothing"),
        }
    }
    Ok(())
}
