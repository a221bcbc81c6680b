//! Horizontal-slice inequality and the coarea identity for piecewise-constant
//! barycenters.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::{dist_sq, lerp, Point2};
use crate::numeric::{measure_le, measures_agree, sort_dedup, Measure, Scalar, MEASURE_REL_TOL};
use crate::polyset::PolyVerticalSet;
use crate::pwfield::{classify_facets, FacetShape, PwAffineField, Side};

use super::oracle::oracle_perimeter;

#[derive(Clone, Debug, PartialEq)]
pub struct SliceCheck<S: Scalar> {
    pub lhs: S::Measure,
    pub rhs: S::Measure,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoareaCheck<S: Scalar> {
    pub lhs: S::Measure,
    pub rhs: S::Measure,
    pub equal: bool,
}

/// `{τ ∈ [0,1] : f(τ) < t}` for affine `f` with the given endpoint values.
fn below<S: Scalar>(f0: &S, f1: &S, t: &S) -> Option<(S, S)> {
    let slope = f1.clone() - f0.clone();
    if slope.is_zero_tol() {
        return (f0 < t).then(|| (S::zero(), S::one()));
    }
    let root = (t.clone() - f0.clone()) / slope.clone();
    let (lo, hi) = if slope.is_positive_tol() { (S::zero(), root) } else { (root, S::one()) };
    let lo = if lo < S::zero() { S::zero() } else { lo };
    let hi = if hi > S::one() { S::one() } else { hi };
    (lo < hi).then_some((lo, hi))
}

fn meet<S: Scalar>(a: &Option<(S, S)>, b: &Option<(S, S)>) -> Option<(S, S)> {
    let ((a0, a1), (b0, b1)) = (a.as_ref()?, b.as_ref()?);
    let lo = if a0 > b0 { a0.clone() } else { b0.clone() };
    let hi = if a1 < b1 { a1.clone() } else { b1.clone() };
    (lo < hi).then_some((lo, hi))
}

fn len<S: Scalar>(a: &Option<(S, S)>) -> S {
    a.as_ref().map_or(S::zero(), |(lo, hi)| hi.clone() - lo.clone())
}

/// Base perimeter of `{z : u1(z) < t < u2(z)}` at a non-critical level.
fn slice_perimeter<S: Scalar>(e: &PolyVerticalSet<S>, t: &S) -> S::Measure {
    let cx = e.u1().complex();
    let mut total = <S::Measure as Measure<S>>::zero();
    for c in e.support() {
        let verts = cx.cells[c].region.vertices();
        for u in [e.u1(), e.u2()] {
            let vals: Vec<S> = verts.iter().map(|z| u.value_on(Side::Cell(c), z) - t.clone()).collect();
            let n = verts.len();
            let mut hits: Vec<Point2<S>> = Vec::new();
            let mut count = 0i64;
            let edges = if cx.dim == 1 { 1 } else { n };
            for i in 0..edges {
                let j = (i + 1) % n;
                let (a, b) = (&vals[i], &vals[j]);
                if (a.is_negative_tol() && b.is_positive_tol()) || (a.is_positive_tol() && b.is_negative_tol()) {
                    count += 1;
                    if cx.dim == 2 {
                        let s = a.clone() / (a.clone() - b.clone());
                        let p = |k: usize| [verts[k][0].clone(), verts[k][1].clone()];
                        hits.push(lerp(&p(i), &p(j), &s));
                    }
                }
            }
            if cx.dim == 1 {
                total = total + <S::Measure as Measure<S>>::from_scalar(S::from_i64(count));
            } else if hits.len() == 2 {
                total = total + dist_sq(&hits[0], &hits[1]).sqrt_measure();
            }
        }
    }
    for facet in &cx.facets {
        let [z0, z1] = facet.endpoints();
        let inside = |side: Side| {
            side.cell().filter(|&c| e.u1().in_support(c))?;
            let (l0, l1) = (e.u1().value_on(side, &z0), e.u1().value_on(side, &z1));
            let (h0, h1) = (e.u2().value_on(side, &z0), e.u2().value_on(side, &z1));
            // lo < t  and  t < hi  ⇔  −hi < −t
            meet(&below(&l0, &l1, t), &below(&-h0, &-h1, &-t.clone()))
        };
        let (a, b) = (inside(facet.left), inside(facet.right));
        let sym = len(&a) + len(&b) - len(&meet(&a, &b)) * S::from_i64(2);
        total = total + facet.measure.scale(&sym);
    }
    total
}

/// `∫_R P({u2 > t > u1}) dt` against the perimeter of `E`.
pub fn slice_inequality_check<S: Scalar>(e: &PolyVerticalSet<S>) -> SliceCheck<S> {
    let cx = e.u1().complex();
    let mut levels = Vec::new();
    for c in e.support() {
        for z in cx.cells[c].region.vertices() {
            levels.push(e.u1().value_on(Side::Cell(c), &z));
            levels.push(e.u2().value_on(Side::Cell(c), &z));
        }
    }
    for facet in &cx.facets {
        if let FacetShape::Segment(..) = facet.shape {
            let [z0, z1] = facet.endpoints();
            let mut ends = Vec::new();
            for side in facet.sides() {
                if side.cell().is_some_and(|c| e.u1().in_support(c)) {
                    for u in [e.u1(), e.u2()] {
                        ends.push((u.value_on(side, &z0), u.value_on(side, &z1)));
                    }
                }
            }
            for i in 0..ends.len() {
                for j in i + 1..ends.len() {
                    let d0 = ends[i].0.clone() - ends[j].0.clone();
                    let d1 = ends[i].1.clone() - ends[j].1.clone();
                    if (d0.is_negative_tol() && d1.is_positive_tol()) || (d0.is_positive_tol() && d1.is_negative_tol()) {
                        let s = d0.clone() / (d0 - d1);
                        levels.push(ends[i].0.clone() + (ends[i].1.clone() - ends[i].0.clone()) * s);
                    }
                }
            }
        }
    }
    sort_dedup(&mut levels);
    let mut lhs = <S::Measure as Measure<S>>::zero();
    for w in levels.windows(2) {
        if w[0].cmp_tol(&w[1]) != Ordering::Less {
            continue;
        }
        let mid = (w[0].clone() + w[1].clone()).half();
        lhs = lhs + slice_perimeter(e, &mid).scale(&(w[1].clone() - w[0].clone()));
    }
    let rhs = oracle_perimeter(e);
    let holds = measure_le::<S>(&lhs, &rhs, MEASURE_REL_TOL);
    SliceCheck { lhs, rhs, holds }
}

/// Interior facets on which `v^∧ > 0` up to a null set.
pub fn positive_lower_facets<S: Scalar>(v: &PwAffineField<S>) -> Vec<usize> {
    let cx = v.complex();
    classify_facets(v)
        .into_iter()
        .filter(|l| cx.facets[l.facet].is_interior() && l.zero_portion.is_null())
        .map(|l| l.facet)
        .collect()
}

/// `∫_R H^{n-2}(G ∩ ∂{b > t}) dt` against `∫_{G} [b] dH^{n-2}` for a
/// piecewise-constant `b` and a set `G` of facets.
pub fn coarea_check<S: Scalar>(b: &PwAffineField<S>, region: &[usize]) -> Result<CoareaCheck<S>> {
    if !b.is_piecewise_constant() {
        return Err(Error::NotPiecewiseConstant);
    }
    let cx = b.complex();
    let level = |side: Side| side.cell().and_then(|c| b.piece(c)).map_or(S::zero(), |p| p.off.clone());
    let mut values: Vec<S> = vec![S::zero()];
    values.extend(b.pieces().iter().flatten().map(|p| p.off.clone()));
    sort_dedup(&mut values);
    let facets: Vec<_> = region
        .iter()
        .map(|&f| cx.facet(f).map(|facet| (level(facet.left), level(facet.right), facet.measure.clone())))
        .collect::<Result<_>>()?;
    let mut lhs = <S::Measure as Measure<S>>::zero();
    for w in values.windows(2) {
        let mid = (w[0].clone() + w[1].clone()).half();
        let width = w[1].clone() - w[0].clone();
        for (l, r, m) in &facets {
            if (*l > mid) != (*r > mid) {
                lhs = lhs + m.scale(&width);
            }
        }
    }
    let rhs = facets.iter().fold(<S::Measure as Measure<S>>::zero(), |acc, (l, r, m)| {
        acc + m.scale(&(l.clone() - r.clone()).abs_val())
    });
    let equal = measures_agree::<S>(&lhs, &rhs, MEASURE_REL_TOL);
    Ok(CoareaCheck { lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::geometry::ConvexRegion;
    use crate::numeric::{Rational, RootSum};
    use crate::polyset::{build_w, steiner_symmetral};
    use crate::pwfield::{BaseCellComplex, CellSpec};

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn rs(n: i64, d: i64) -> RootSum {
        RootSum::rational(r(n, d))
    }

    fn halves() -> Arc<BaseCellComplex<Rational>> {
        Arc::new(
            BaseCellComplex::build(
                1,
                vec![
                    CellSpec::new("l", ConvexRegion::Interval(r(0, 1), r(1, 2))),
                    CellSpec::new("r", ConvexRegion::Interval(r(1, 2), r(1, 1))),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn slice_values() {
        let cx = halves();
        let one = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1)), Some(r(1, 1))]);
        let sq = slice_inequality_check(&steiner_symmetral(&one).unwrap());
        assert_eq!((sq.lhs, sq.rhs, sq.holds), (rs(2, 1), rs(4, 1), true));
        let step = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1)), Some(r(2, 1))]);
        let st = slice_inequality_check(&steiner_symmetral(&step).unwrap());
        assert_eq!((st.lhs, st.rhs, st.holds), (rs(4, 1), rs(6, 1), true));
        let half = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 2)), Some(r(1, 2))]);
        let strip = slice_inequality_check(&build_w(&one, &half).unwrap());
        assert_eq!((strip.lhs, strip.rhs), (rs(2, 1), rs(4, 1)));
    }

    #[test]
    fn coarea_values() {
        let cx = halves();
        let zero = PwAffineField::piecewise_constant(&cx, &[Some(r(0, 1)), Some(r(0, 1))]);
        let c = coarea_check(&zero, &[1]).unwrap();
        assert_eq!((c.lhs, c.rhs, c.equal), (rs(0, 1), rs(0, 1), true));
        let b = PwAffineField::piecewise_constant(&cx, &[Some(r(0, 1)), Some(r(1, 4))]);
        let c = coarea_check(&b, &[1]).unwrap();
        assert_eq!((c.lhs, c.rhs, c.equal), (rs(1, 4), rs(1, 4), true));
        let ramp = PwAffineField::from_fn(&cx, |_| Some(crate::geometry::Affine::new(vec![r(1, 1)], r(0, 1))));
        assert_eq!(coarea_check(&ramp, &[1]), Err(Error::NotPiecewiseConstant));
    }
}
