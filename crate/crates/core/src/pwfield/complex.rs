//! Cell complexes over the base space: intervals on the line or convex
//! polygons in the plane, with facets discovered by exact adjacency.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{convex_interiors_overlap, dist_sq, lerp, orient, points_equal, signed_area, ConvexRegion, Point2};
use crate::numeric::{sort_dedup, Scalar};

pub type CellId = usize;

/// One side of a facet: a cell or the exterior of the complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Cell(CellId),
    Exterior,
}

impl Side {
    pub fn cell(self) -> Option<CellId> {
        match self {
            Side::Cell(c) => Some(c),
            Side::Exterior => None,
        }
    }
}

/// Input description of a cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellSpec<S> {
    pub name: String,
    pub region: ConvexRegion<S>,
}

impl<S> CellSpec<S> {
    pub fn new(name: impl Into<String>, region: ConvexRegion<S>) -> Self {
        CellSpec { name: name.into(), region }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell<S> {
    pub name: String,
    pub region: ConvexRegion<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FacetShape<S> {
    Point(S),
    Segment(Point2<S>, Point2<S>),
}

/// A point (dim 1) or closed segment (dim 2) shared by two sides.
///
/// For segments, `left` lies to the left of the direction `p0 → p1`; for
/// points, `left` lies at smaller coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet<S: Scalar> {
    pub left: Side,
    pub right: Side,
    pub shape: FacetShape<S>,
    pub measure: S::Measure,
}

impl<S: Scalar> Facet<S> {
    /// Base point at parameter `τ ∈ [0,1]`.
    pub fn point_at(&self, tau: &S) -> Vec<S> {
        match &self.shape {
            FacetShape::Point(z) => vec![z.clone()],
            FacetShape::Segment(p0, p1) => lerp(p0, p1, tau).to_vec(),
        }
    }

    pub fn endpoints(&self) -> [Vec<S>; 2] {
        [self.point_at(&S::zero()), self.point_at(&S::one())]
    }

    pub fn midpoint(&self) -> Vec<S> {
        self.point_at(&S::one().half())
    }

    pub fn is_interior(&self) -> bool {
        self.left != Side::Exterior && self.right != Side::Exterior
    }

    pub fn sides(&self) -> [Side; 2] {
        [self.left, self.right]
    }

    pub fn touches(&self, cell: CellId) -> bool {
        self.left == Side::Cell(cell) || self.right == Side::Cell(cell)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaseCellComplex<S: Scalar> {
    pub dim: usize,
    pub cells: Vec<Cell<S>>,
    pub facets: Vec<Facet<S>>,
}

impl<S: Scalar> BaseCellComplex<S> {
    pub fn build(dim: usize, specs: Vec<CellSpec<S>>) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut seen = HashMap::new();
        for (i, spec) in specs.iter().enumerate() {
            if seen.insert(spec.name.clone(), i).is_some() {
                return Err(Error::DuplicateCell(spec.name.clone()));
            }
            if spec.region.dim() != dim {
                return Err(Error::DimensionMismatch { cell: spec.name.clone(), expected: dim });
            }
        }
        let cells: Vec<Cell<S>> = specs
            .into_iter()
            .map(|s| Cell { name: s.name, region: s.region })
            .collect();
        let facets = match dim {
            1 => facets_1d(&cells)?,
            2 => facets_2d(&cells)?,
            _ => return Err(Error::InvalidMode(format!("base dimension {dim} is not 1 or 2"))),
        };
        Ok(BaseCellComplex { dim, cells, facets })
    }

    pub fn cell_id(&self, name: &str) -> Option<CellId> {
        self.cells.iter().position(|c| c.name == name)
    }

    pub fn facet(&self, id: usize) -> Result<&Facet<S>> {
        self.facets.get(id).ok_or(Error::UnknownFacet(id))
    }

    pub fn interior_facets(&self) -> impl Iterator<Item = (usize, &Facet<S>)> {
        self.facets.iter().enumerate().filter(|(_, f)| f.is_interior())
    }

    pub fn facets_of(&self, cell: CellId) -> impl Iterator<Item = (usize, &Facet<S>)> {
        self.facets.iter().enumerate().filter(move |(_, f)| f.touches(cell))
    }

    pub fn total_measure(&self) -> S {
        self.cells
            .iter()
            .fold(S::zero(), |acc, c| acc + c.region.measure())
    }
}

fn facets_1d<S: Scalar>(cells: &[Cell<S>]) -> Result<Vec<Facet<S>>> {
    let mut spans: Vec<(S, S, CellId)> = Vec::new();
    for (i, c) in cells.iter().enumerate() {
        let ConvexRegion::Interval(a, b) = &c.region else {
            return Err(Error::DimensionMismatch { cell: c.name.clone(), expected: 1 });
        };
        if a.cmp_tol(b) != Ordering::Less {
            return Err(Error::Degenerate { cell: c.name.clone() });
        }
        spans.push((a.clone(), b.clone(), i));
    }
    spans.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));
    for w in spans.windows(2) {
        if w[1].0.cmp_tol(&w[0].1) == Ordering::Less {
            return Err(Error::Overlap { a: cells[w[0].2].name.clone(), b: cells[w[1].2].name.clone() });
        }
    }
    let mut points: Vec<S> = spans.iter().flat_map(|(a, b, _)| [a.clone(), b.clone()]).collect();
    sort_dedup(&mut points);
    let one = <S::Measure as crate::numeric::Measure<S>>::from_scalar(S::one());
    Ok(points
        .into_iter()
        .map(|p| {
            let left = spans
                .iter()
                .find(|(_, b, _)| b.cmp_tol(&p) == Ordering::Equal)
                .map_or(Side::Exterior, |s| Side::Cell(s.2));
            let right = spans
                .iter()
                .find(|(a, _, _)| a.cmp_tol(&p) == Ordering::Equal)
                .map_or(Side::Exterior, |s| Side::Cell(s.2));
            Facet { left, right, shape: FacetShape::Point(p), measure: one.clone() }
        })
        .collect())
}

fn validate_polygon<S: Scalar>(cell: &Cell<S>) -> Result<&[Point2<S>]> {
    let ConvexRegion::Polygon(pts) = &cell.region else {
        return Err(Error::DimensionMismatch { cell: cell.name.clone(), expected: 2 });
    };
    let n = pts.len();
    if n < 3 {
        return Err(Error::Degenerate { cell: cell.name.clone() });
    }
    for i in 0..n {
        if points_equal(&pts[i], &pts[(i + 1) % n]) {
            return Err(Error::Degenerate { cell: cell.name.clone() });
        }
    }
    if !signed_area(pts).is_positive_tol() {
        return Err(if signed_area(pts).is_negative_tol() {
            Error::NonConvex { cell: cell.name.clone() }
        } else {
            Error::Degenerate { cell: cell.name.clone() }
        });
    }
    for i in 0..n {
        let (a, b) = (&pts[i], &pts[(i + 1) % n]);
        if pts.iter().any(|p| orient(a, b, p).is_negative_tol()) {
            return Err(Error::NonConvex { cell: cell.name.clone() });
        }
    }
    Ok(pts)
}

fn param_on<S: Scalar>(p0: &Point2<S>, p1: &Point2<S>, q: &Point2<S>) -> S {
    let dx = p1[0].clone() - p0[0].clone();
    let dy = p1[1].clone() - p0[1].clone();
    ((q[0].clone() - p0[0].clone()) * dx.clone() + (q[1].clone() - p0[1].clone()) * dy.clone())
        / (dx.clone() * dx + dy.clone() * dy)
}

fn facets_2d<S: Scalar>(cells: &[Cell<S>]) -> Result<Vec<Facet<S>>> {
    let polys: Vec<&[Point2<S>]> = cells.iter().map(validate_polygon).collect::<Result<_>>()?;
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            if convex_interiors_overlap(polys[i], polys[j]) {
                return Err(Error::Overlap { a: cells[i].name.clone(), b: cells[j].name.clone() });
            }
        }
    }
    // (left, right, p0, p1)
    let mut raw: Vec<(Side, Side, Point2<S>, Point2<S>)> = Vec::new();
    for (i, poly) in polys.iter().enumerate() {
        let n = poly.len();
        for e in 0..n {
            let (p0, p1) = (&poly[e], &poly[(e + 1) % n]);
            let mut covers: Vec<(S, S, CellId)> = Vec::new();
            for (j, other) in polys.iter().enumerate() {
                if j == i {
                    continue;
                }
                let m = other.len();
                for f in 0..m {
                    let (q0, q1) = (&other[f], &other[(f + 1) % m]);
                    if !orient(p0, p1, q0).is_zero_tol() || !orient(p0, p1, q1).is_zero_tol() {
                        continue;
                    }
                    let (s0, s1) = (param_on(p0, p1, q1), param_on(p0, p1, q0));
                    let lo = if s0 > S::zero() { s0 } else { S::zero() };
                    let hi = if s1 < S::one() { s1 } else { S::one() };
                    if lo.cmp_tol(&hi) == Ordering::Less {
                        covers.push((lo, hi, j));
                    }
                }
            }
            let mut breaks = vec![S::zero(), S::one()];
            for (lo, hi, _) in &covers {
                breaks.push(lo.clone());
                breaks.push(hi.clone());
            }
            sort_dedup(&mut breaks);
            for w in breaks.windows(2) {
                let mid = (w[0].clone() + w[1].clone()).half();
                let neighbor = covers
                    .iter()
                    .find(|(lo, hi, _)| *lo <= mid && mid <= *hi)
                    .map(|c| c.2);
                match neighbor {
                    Some(j) if j < i => continue,
                    _ => {}
                }
                let right = neighbor.map_or(Side::Exterior, Side::Cell);
                raw.push((Side::Cell(i), right, lerp(p0, p1, &w[0]), lerp(p0, p1, &w[1])));
            }
        }
    }
    // Merge collinear, touching pieces with the same incidence.
    let mut merged = true;
    while merged {
        merged = false;
        'outer: for a in 0..raw.len() {
            for b in 0..raw.len() {
                if a == b || raw[a].0 != raw[b].0 || raw[a].1 != raw[b].1 {
                    continue;
                }
                if points_equal(&raw[a].3, &raw[b].2)
                    && orient(&raw[a].2, &raw[a].3, &raw[b].3).is_zero_tol()
                {
                    let end = raw[b].3.clone();
                    raw[a].3 = end;
                    raw.remove(b);
                    merged = true;
                    break 'outer;
                }
            }
        }
    }
    let mut facets: Vec<Facet<S>> = raw
        .into_iter()
        .map(|(left, right, p0, p1)| {
            let measure = dist_sq(&p0, &p1).sqrt_measure();
            Facet { left, right, shape: FacetShape::Segment(p0, p1), measure }
        })
        .collect();
    facets.sort_by(|x, y| {
        let (mx, my) = (x.midpoint(), y.midpoint());
        mx[0]
            .partial_cmp(&my[0])
            .unwrap_or(Ordering::Equal)
            .then(mx[1].partial_cmp(&my[1]).unwrap_or(Ordering::Equal))
            .then(x.left.cmp(&y.left))
            .then(x.right.cmp(&y.right))
    });
    Ok(facets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Measure, Rational, RootSum};

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn rect(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> ConvexRegion<Rational> {
        ConvexRegion::Polygon(vec![
            [x0.clone(), y0.clone()],
            [x1.clone(), y0],
            [x1, y1.clone()],
            [x0, y1],
        ])
    }

    #[test]
    fn single_interval() {
        let c = BaseCellComplex::build(1, vec![CellSpec::new("a", ConvexRegion::Interval(r(0, 1), r(1, 1)))]).unwrap();
        assert_eq!(c.cells.len(), 1);
        assert_eq!(c.facets.len(), 2);
        assert!(c.facets.iter().all(|f| !f.is_interior()));
    }

    #[test]
    fn split_square() {
        let c = BaseCellComplex::build(
            2,
            vec![
                CellSpec::new("l", rect(r(0, 1), r(0, 1), r(1, 2), r(1, 1))),
                CellSpec::new("r", rect(r(1, 2), r(0, 1), r(1, 1), r(1, 1))),
            ],
        )
        .unwrap();
        assert_eq!(c.cells.len(), 2);
        let interior: Vec<_> = c.interior_facets().collect();
        assert_eq!(interior.len(), 1);
        assert_eq!(interior[0].1.measure, RootSum::rational(r(1, 1)));
        assert_eq!(interior[0].1.left, Side::Cell(0));
        assert_eq!(c.facets.len() - interior.len(), 6);
    }

    #[test]
    fn t_junction_splits_facets() {
        let c = BaseCellComplex::build(
            2,
            vec![
                CellSpec::new("big", rect(r(0, 1), r(0, 1), r(1, 1), r(2, 1))),
                CellSpec::new("lo", rect(r(1, 1), r(0, 1), r(2, 1), r(1, 1))),
                CellSpec::new("hi", rect(r(1, 1), r(1, 1), r(2, 1), r(2, 1))),
            ],
        )
        .unwrap();
        let interior: Vec<_> = c.interior_facets().map(|(_, f)| (f.left, f.right)).collect();
        assert_eq!(interior.len(), 3);
        assert!(interior.contains(&(Side::Cell(0), Side::Cell(1))));
        assert!(interior.contains(&(Side::Cell(0), Side::Cell(2))));
        // Facet measures add up to the boundary of the union plus interior facets.
        let total = c.facets.iter().fold(RootSum::zero(), |a, f| a + f.measure.clone());
        assert_eq!(total, RootSum::rational(r(8 + 3, 1)));
    }

    #[test]
    fn collinear_vertex_edges_merge() {
        let tri = ConvexRegion::Polygon(vec![[r(0, 1), r(0, 1)], [r(1, 2), r(0, 1)], [r(1, 1), r(0, 1)], [r(0, 1), r(1, 1)]]);
        let c = BaseCellComplex::build(2, vec![CellSpec::new("t", tri)]).unwrap();
        assert_eq!(c.facets.len(), 3);
    }

    #[test]
    fn rejects_bad_cells() {
        let overlap = BaseCellComplex::build(
            1,
            vec![
                CellSpec::new("a", ConvexRegion::Interval(r(0, 1), r(1, 1))),
                CellSpec::new("b", ConvexRegion::Interval(r(1, 2), r(2, 1))),
            ],
        );
        assert!(matches!(overlap, Err(Error::Overlap { .. })));
        let cw = ConvexRegion::Polygon(vec![[r(0, 1), r(0, 1)], [r(0, 1), r(1, 1)], [r(1, 1), r(0, 1)]]);
        assert!(matches!(BaseCellComplex::build(2, vec![CellSpec::new("x", cw)]), Err(Error::NonConvex { .. })));
        let dart = ConvexRegion::Polygon(vec![
            [r(0, 1), r(0, 1)],
            [r(2, 1), r(0, 1)],
            [r(1, 1), r(1, 2)],
            [r(1, 1), r(2, 1)],
        ]);
        assert!(matches!(BaseCellComplex::build(2, vec![CellSpec::new("x", dart)]), Err(Error::NonConvex { .. })));
        let flat = ConvexRegion::Polygon(vec![[r(0, 1), r(0, 1)], [r(1, 1), r(0, 1)], [r(2, 1), r(0, 1)]]);
        assert!(matches!(BaseCellComplex::build(2, vec![CellSpec::new("x", flat)]), Err(Error::Degenerate { .. })));
        let empty = ConvexRegion::Interval(r(1, 1), r(1, 1));
        assert!(matches!(BaseCellComplex::build(1, vec![CellSpec::new("x", empty)]), Err(Error::Degenerate { .. })));
    }
}
