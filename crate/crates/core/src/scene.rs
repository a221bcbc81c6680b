//! JSON scene documents.
//!
//! ```json
//! {
//!   "dim": 1,
//!   "arithmetic": "rational",
//!   "cells": [ {"id": "l", "interval": ["0", "1/2"]},
//!              {"id": "r", "interval": ["1/2", 1]} ],
//!   "fields": { "v": { "l": {"grad": [0], "off": 1},
//!                      "r": {"grad": [0], "off": 2} } }
//! }
//! ```
//!
//! Numbers may be JSON numbers or strings holding integers, decimals or
//! fractions. Dimension-2 cells give `"vertices": [[x, y], ...]` in
//! counterclockwise order. A field lists only its support cells. Optional
//! keys: `name`, `expect` (`"rigid"` or `"non_rigid"`). Unknown keys are
//! rejected.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{Affine, ConvexRegion};
use crate::numeric::{Arithmetic, Rational, Scalar};
use crate::polyset::{build_w, steiner_symmetral, PolyVerticalSet};
use crate::pwfield::{BaseCellComplex, CellSpec, PwAffineField};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScene {
    dim: usize,
    #[serde(default)]
    arithmetic: Option<Arithmetic>,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    expect: Option<String>,
    cells: Vec<RawCell>,
    #[serde(default)]
    fields: BTreeMap<String, BTreeMap<String, RawPiece>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCell {
    id: String,
    #[serde(default)]
    interval: Option<[Value; 2]>,
    #[serde(default)]
    vertices: Option<Vec<[Value; 2]>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiece {
    grad: Vec<Value>,
    off: Value,
}

#[derive(Clone, Debug)]
pub struct Scene<S: Scalar> {
    pub name: Option<String>,
    pub expect: Option<String>,
    pub complex: Arc<BaseCellComplex<S>>,
    pub fields: BTreeMap<String, PwAffineField<S>>,
}

/// A scene in whichever arithmetic its document asks for.
#[derive(Clone, Debug)]
pub enum AnyScene {
    Rational(Scene<Rational>),
    Double(Scene<f64>),
}

/// Reads the `arithmetic` key (default rational) and parses accordingly;
/// `force` overrides the key.
pub fn parse_any(text: &str, force: Option<Arithmetic>) -> Result<AnyScene> {
    let raw: RawScene = serde_json::from_str(text).map_err(|e| Error::Scene { line: e.line(), message: e.to_string() })?;
    match force.or(raw.arithmetic).unwrap_or_default() {
        Arithmetic::Rational => Ok(AnyScene::Rational(from_raw(raw, text)?)),
        Arithmetic::Double => Ok(AnyScene::Double(from_raw(raw, text)?)),
    }
}

pub fn parse_scene<S: Scalar>(text: &str) -> Result<Scene<S>> {
    let raw: RawScene = serde_json::from_str(text).map_err(|e| Error::Scene { line: e.line(), message: e.to_string() })?;
    from_raw(raw, text)
}

/// 1-based line of the cell entry `name` inside the `cells` array.
fn line_of_cell(text: &str, name: &str) -> usize {
    let start = text.find("\"cells\"").unwrap_or(0);
    let needle = format!("\"{name}\"");
    let pos = text[start..].find(&needle).map_or(start, |p| start + p);
    text[..pos].matches('\n').count() + 1
}

fn line_of_key(text: &str, key: &str) -> usize {
    let pos = text.find(&format!("\"{key}\"")).unwrap_or(0);
    text[..pos].matches('\n').count() + 1
}

fn number<S: Scalar>(v: &Value, text: &str, cell: &str) -> Result<S> {
    let literal = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    S::parse_text(&literal).ok_or_else(|| Error::Scene {
        line: line_of_cell(text, cell),
        message: format!("cannot read number {literal}"),
    })
}

fn from_raw<S: Scalar>(raw: RawScene, text: &str) -> Result<Scene<S>> {
    if raw.dim != 1 && raw.dim != 2 {
        return Err(Error::Scene { line: line_of_key(text, "dim"), message: format!("dim must be 1 or 2, got {}", raw.dim) });
    }
    let mut specs = Vec::new();
    for cell in &raw.cells {
        let at = |message: String| Error::Scene { line: line_of_cell(text, &cell.id), message };
        let region = match (&cell.interval, &cell.vertices, raw.dim) {
            (Some([a, b]), None, 1) => ConvexRegion::Interval(number(a, text, &cell.id)?, number(b, text, &cell.id)?),
            (None, Some(vs), 2) => ConvexRegion::Polygon(
                vs.iter()
                    .map(|[x, y]| Ok([number(x, text, &cell.id)?, number(y, text, &cell.id)?]))
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(at(format!("cell {} needs exactly one of interval (dim 1) or vertices (dim 2)", cell.id))),
        };
        specs.push(CellSpec::new(cell.id.clone(), region));
    }
    let complex = BaseCellComplex::build(raw.dim, specs).map_err(|e| {
        let line = match &e {
            Error::Overlap { a, b } => line_of_cell(text, a).max(line_of_cell(text, b)),
            Error::NonConvex { cell } | Error::Degenerate { cell } | Error::DuplicateCell(cell) => line_of_cell(text, cell),
            Error::DimensionMismatch { cell, .. } => line_of_cell(text, cell),
            _ => line_of_key(text, "cells"),
        };
        Error::Scene { line, message: e.to_string() }
    })?;
    let complex = Arc::new(complex);
    let mut fields = BTreeMap::new();
    for (name, pieces) in raw.fields {
        let mut slots: Vec<Option<Affine<S>>> = vec![None; complex.cells.len()];
        for (cell, piece) in pieces {
            let id = complex.cell_id(&cell).ok_or_else(|| Error::Scene {
                line: line_of_key(text, &name),
                message: format!("field {name} names unknown cell {cell}"),
            })?;
            if piece.grad.len() != raw.dim {
                return Err(Error::Scene {
                    line: line_of_key(text, &name),
                    message: Error::GradientArity { field: name.clone(), cell, got: piece.grad.len(), expected: raw.dim }.to_string(),
                });
            }
            let grad = piece.grad.iter().map(|g| number(g, text, &complex.cells[id].name)).collect::<Result<_>>()?;
            slots[id] = Some(Affine::new(grad, number(&piece.off, text, &complex.cells[id].name)?));
        }
        fields.insert(name, PwAffineField::new(complex.clone(), slots)?);
    }
    Ok(Scene { name: raw.name, expect: raw.expect, complex, fields })
}

fn scalar_json<S: Scalar>(x: &S) -> Value {
    match S::MODE {
        Arithmetic::Rational => Value::String(x.to_string()),
        Arithmetic::Double => json!(x.to_f64()),
    }
}

impl<S: Scalar> Scene<S> {
    pub fn new(complex: Arc<BaseCellComplex<S>>) -> Self {
        Scene { name: None, expect: None, complex, fields: BTreeMap::new() }
    }

    pub fn with_field(mut self, name: &str, field: PwAffineField<S>) -> Self {
        self.fields.insert(name.to_string(), field);
        self
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn expecting(mut self, expect: &str) -> Self {
        self.expect = Some(expect.to_string());
        self
    }

    pub fn field(&self, name: &str) -> Result<&PwAffineField<S>> {
        self.fields
            .get(name)
            .ok_or_else(|| Error::InvalidMode(format!("scene has no field {name}")))
    }

    /// The set the scene describes: `(u1, u2)` if present, else `W[v, b]`,
    /// else `F[v]`.
    pub fn set(&self) -> Result<PolyVerticalSet<S>> {
        if let (Some(u1), Some(u2)) = (self.fields.get("u1"), self.fields.get("u2")) {
            return PolyVerticalSet::new(u1.clone(), u2.clone());
        }
        let v = self.field("v")?;
        match self.fields.get("b") {
            Some(b) => build_w(v, b),
            None => steiner_symmetral(v),
        }
    }

    /// Slice length: the `v` field, or `u2 − u1`.
    pub fn slice_length(&self) -> Result<PwAffineField<S>> {
        match self.fields.get("v") {
            Some(v) => Ok(v.clone()),
            None => Ok(self.set()?.slice_length()),
        }
    }

    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .complex
            .cells
            .iter()
            .map(|c| match &c.region {
                ConvexRegion::Interval(a, b) => json!({"id": c.name, "interval": [scalar_json(a), scalar_json(b)]}),
                ConvexRegion::Polygon(pts) => json!({
                    "id": c.name,
                    "vertices": pts.iter().map(|p| json!([scalar_json(&p[0]), scalar_json(&p[1])])).collect::<Vec<_>>(),
                }),
            })
            .collect();
        let mut fields = serde_json::Map::new();
        for (name, f) in &self.fields {
            let mut pieces = serde_json::Map::new();
            for c in f.support() {
                let p = f.piece(c).expect("support");
                pieces.insert(
                    self.complex.cells[c].name.clone(),
                    json!({"grad": p.grad.iter().map(scalar_json).collect::<Vec<_>>(), "off": scalar_json(&p.off)}),
                );
            }
            fields.insert(name.clone(), Value::Object(pieces));
        }
        let mut doc = serde_json::Map::new();
        doc.insert("dim".into(), json!(self.complex.dim));
        doc.insert("arithmetic".into(), json!(S::MODE.to_string()));
        if let Some(n) = &self.name {
            doc.insert("name".into(), json!(n));
        }
        if let Some(e) = &self.expect {
            doc.insert("expect".into(), json!(e));
        }
        doc.insert("cells".into(), Value::Array(cells));
        doc.insert("fields".into(), Value::Object(fields));
        Value::Object(doc)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json") + "\n"
    }
}

/// Scene holding a set as its `(v, b)` pair.
pub fn scene_of_set<S: Scalar>(e: &PolyVerticalSet<S>) -> Scene<S> {
    let (v, b) = e.slice_and_barycenter();
    Scene::new(v.complex().clone()).with_field("v", v).with_field("b", b)
}
