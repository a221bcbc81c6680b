//! Writes every gallery scene to a directory as JSON plus an SVG figure.
//!
//! ```bash
//! cargo run --example gallery_tour -- /tmp/steiner-gallery
//! ```

use std::path::PathBuf;

use steiner_core::cli::run;
use steiner_core::rigidity::GALLERY_NAMES;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "steiner-gallery".into()));
    std::fs::create_dir_all(&dir).expect("output directory");
    for name in GALLERY_NAMES {
        let json = dir.join(format!("{name}.json"));
        let svg = dir.join(format!("{name}.svg"));
        let args = ["steiner", "gallery", name, "--out", json.to_str().unwrap(), "--svg", svg.to_str().unwrap()];
        let out = run(args, &mut std::io::empty());
        print!("{}{}", out.stdout, out.stderr);
    }
}
