//! Reading a scene document in both arithmetics.
//!
//! ```bash
//! cargo run --example scene_json
//! ```

use steiner_core::perimeter::{perimeter_formula, FormulaArgs};
use steiner_core::scene::{parse_any, AnyScene};
use steiner_core::{Arithmetic, Result};

const DOC: &str = r#"{
  "dim": 2,
  "cells": [
    {"id": "west", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]},
    {"id": "east", "vertices": [[1, 0], [2, 0], [2, 1], [1, 1]]}
  ],
  "fields": {
    "v": {"west": {"grad": [0, 0], "off": 1},
          "east": {"grad": ["1/2", 0], "off": "1/2"}}
  }
}"#;

fn main() -> Result<()> {
    for mode in [Arithmetic::Rational, Arithmetic::Double] {
        match parse_any(DOC, Some(mode))? {
            AnyScene::Rational(s) => {
                let v = s.field("v")?;
                println!("rational: {}", perimeter_formula(FormulaArgs::F { v }, None)?.total);
            }
            AnyScene::Double(s) => {
                let v = s.field("v")?;
                println!("double:   {}", perimeter_formula(FormulaArgs::F { v }, None)?.total);
            }
        }
    }
    let broken = DOC.replace("[2, 0]", "[\"a\", 0]");
    if let Err(e) = parse_any(&broken, None) {
        println!("{e}");
    }
    Ok(())
}
