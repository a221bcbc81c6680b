//! Rigidity verdicts for every gallery entry.
//!
//! ```bash
//! cargo run --example rigidity
//! ```

use steiner_core::rigidity::{decide_rigidity, gallery, ClassHint, GALLERY_NAMES};
use steiner_core::{Rational, Result};

fn main() -> Result<()> {
    for name in GALLERY_NAMES {
        let entry = gallery::<Rational>(name, Some(if name == "rationals" { 5 } else { 2 }))?;
        let verdict = decide_rigidity(entry.scene.field("v")?, ClassHint::Auto)?;
        print!("{name:>13}: {} via {}", verdict.status, verdict.path);
        if let Some(w) = &verdict.witness {
            let eps = w.eps.as_ref().map_or("inf".to_string(), |e| e.to_string());
            print!("  (lift {:?} by {}, eps {eps})", w.plus, w.offsets[1]);
        }
        println!();
    }
    Ok(())
}
