//! Lifting `F[v]` over part of its support, and how far the result is from
//! any translate.
//!
//! ```bash
//! cargo run --example witness
//! ```

use steiner_core::perimeter::oracle_perimeter;
use steiner_core::polyset::{min_translate_symdiff, steiner_symmetral};
use steiner_core::rigidity::{construct_witness, gallery};
use steiner_core::{Rational, Result, Scalar};

fn main() -> Result<()> {
    let v = gallery::<Rational>("fig1a", None)?.scene.field("v")?.clone();
    let base = oracle_perimeter(&steiner_symmetral(&v)?);
    for t in [Rational::ratio(1, 4), Rational::ratio(1, 2), Rational::ratio(3, 4)] {
        match construct_witness(&v, &[1], &t) {
            Ok(e) => {
                let (best, gap) = min_translate_symdiff(&e, &v)?;
                println!("t = {t}: P = {} (F[v]: {base}), nearest translate {best} at distance {gap}", oracle_perimeter(&e));
            }
            Err(err) => println!("t = {t}: {err}"),
        }
    }
    let v = gallery::<Rational>("fig1b", None)?.scene.field("v")?.clone();
    let e = construct_witness(&v, &[1], &Rational::from_i64(10))?;
    println!("vanishing cut, t = 10: P = {}", oracle_perimeter(&e));
    Ok(())
}
