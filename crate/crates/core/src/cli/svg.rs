//! Static figures: profiles of `v` and `b` on the line, shaded top views in
//! the plane.

use std::fmt::Write;

use crate::geometry::ConvexRegion;
use crate::numeric::Scalar;
use crate::pwfield::{classify_facets, FacetShape, PwAffineField, Side};

const W: f64 = 600.0;
const H: f64 = 400.0;
const PAD: f64 = 40.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Self {
        let fold = |it: &mut dyn Iterator<Item = f64>| it.fold((f64::MAX, f64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
        let (x0, x1) = fold(&mut xs.clone());
        let (y0, y1) = fold(&mut ys.clone());
        let widen = |lo: f64, hi: f64| if hi - lo < 1e-12 { (lo - 0.5, hi + 0.5) } else { (lo, hi) };
        let ((x0, x1), (y0, y1)) = (widen(x0, x1), widen(y0, y1));
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        PAD + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * PAD)
    }

    fn py(&self, y: f64) -> f64 {
        H - PAD - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * PAD)
    }
}

fn header() -> String {
    format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n")
}

pub fn render<S: Scalar>(v: &PwAffineField<S>, b: Option<&PwAffineField<S>>) -> String {
    match v.dim() {
        1 => profile(v, b),
        _ => top_view(v),
    }
}

fn profile<S: Scalar>(v: &PwAffineField<S>, b: Option<&PwAffineField<S>>) -> String {
    let cx = v.complex();
    let mut segs: Vec<(&str, [f64; 4])> = Vec::new();
    for c in v.support() {
        let ConvexRegion::Interval(a, bb) = &cx.cells[c].region else { continue };
        let (za, zb) = (vec![a.clone()], vec![bb.clone()]);
        let side = Side::Cell(c);
        let (xa, xb) = (a.to_f64(), bb.to_f64());
        segs.push(("#1f5fbf", [xa, v.value_on(side, &za).to_f64(), xb, v.value_on(side, &zb).to_f64()]));
        if let Some(b) = b {
            segs.push(("#d9822b", [xa, b.value_on(side, &za).to_f64(), xb, b.value_on(side, &zb).to_f64()]));
        }
    }
    let mut bars = Vec::new();
    for (id, f) in cx.interior_facets() {
        let FacetShape::Point(z) = &f.shape else { continue };
        let t = v.trace(id).expect("facet");
        let (lo, hi) = (t.lower().values()[0].to_f64(), t.upper().values()[0].to_f64());
        if hi > lo {
            bars.push([z.to_f64(), lo, hi]);
        }
    }
    let xs = segs.iter().flat_map(|(_, s)| [s[0], s[2]]);
    let ys = segs.iter().flat_map(|(_, s)| [s[1], s[3]]).chain([0.0]);
    let frame = Frame::new(xs, ys);
    let mut out = header();
    let _ = writeln!(
        out,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#999\"/>",
        frame.px(frame.x0),
        frame.py(0.0),
        frame.px(frame.x1),
        frame.py(0.0)
    );
    for (colour, s) in &segs {
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{colour}\" stroke-width=\"2\"/>",
            frame.px(s[0]),
            frame.py(s[1]),
            frame.px(s[2]),
            frame.py(s[3])
        );
    }
    for [x, lo, hi] in bars {
        let _ = writeln!(
            out,
            "<line x1=\"{0:.2}\" y1=\"{1:.2}\" x2=\"{0:.2}\" y2=\"{2:.2}\" stroke=\"#c0392b\" stroke-width=\"3\"/>",
            frame.px(x),
            frame.py(lo),
            frame.py(hi)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn top_view<S: Scalar>(v: &PwAffineField<S>) -> String {
    let cx = v.complex();
    let polys: Vec<Vec<[f64; 2]>> = cx
        .cells
        .iter()
        .map(|c| match &c.region {
            ConvexRegion::Polygon(p) => p.iter().map(|q| [q[0].to_f64(), q[1].to_f64()]).collect(),
            ConvexRegion::Interval(..) => Vec::new(),
        })
        .collect();
    let frame = Frame::new(
        polys.iter().flatten().map(|p| p[0]),
        polys.iter().flatten().map(|p| p[1]),
    );
    let values: Vec<Option<f64>> = (0..cx.cells.len())
        .map(|c| v.piece(c).map(|p| p.eval(&cx.cells[c].region.centroid()).to_f64()))
        .collect();
    let top = values.iter().flatten().fold(0.0f64, |m, x| m.max(*x)).max(1e-12);
    let mut out = header();
    for (poly, val) in polys.iter().zip(&values) {
        let shade = val.map_or(255, |x| (235.0 - 175.0 * x / top).round() as u8);
        let pts: Vec<String> = poly.iter().map(|p| format!("{:.2},{:.2}", frame.px(p[0]), frame.py(p[1]))).collect();
        let _ = writeln!(out, "<polygon points=\"{}\" fill=\"rgb({shade},{shade},255)\" stroke=\"none\"/>", pts.join(" "));
    }
    let labels = classify_facets(v);
    for (id, f) in cx.facets.iter().enumerate() {
        let FacetShape::Segment(p0, p1) = &f.shape else { continue };
        let both = f.sides().iter().all(|s| s.cell().is_some_and(|c| v.in_support(c)));
        let colour = match (both, labels[id].crossable()) {
            (false, _) => "#333",
            (true, true) => "#27ae60",
            (true, false) => "#c0392b",
        };
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{colour}\" stroke-width=\"2\"/>",
            frame.px(p0[0].to_f64()),
            frame.py(p0[1].to_f64()),
            frame.px(p1[0].to_f64()),
            frame.py(p1[1].to_f64())
        );
    }
    out.push_str("</svg>\n");
    out
}
