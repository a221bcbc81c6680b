//! Perimeter from the explicit polyhedral boundary: graph polygons over the
//! cells plus vertical walls over the facets.

use crate::numeric::{sort_dedup, Measure, Scalar};
use crate::polyset::PolyVerticalSet;
use crate::pwfield::{FacetShape, Side};

/// Open section interval on one side of a facet at parameter `τ`.
fn section<S: Scalar>(e: &PolyVerticalSet<S>, side: Side, z: &[S]) -> Option<(S, S)> {
    let c = side.cell()?;
    Some((e.u1().piece(c)?.eval(z), e.u2().piece(c)?.eval(z)))
}

fn interval_len<S: Scalar>(a: &Option<(S, S)>) -> S {
    a.as_ref().map_or(S::zero(), |(lo, hi)| hi.clone() - lo.clone())
}

/// `|A Δ B|` for two open intervals (or empty sets).
fn symdiff_len<S: Scalar>(a: &Option<(S, S)>, b: &Option<(S, S)>) -> S {
    let overlap = match (a, b) {
        (Some((a0, a1)), Some((b0, b1))) => {
            let lo = if a0 > b0 { a0 } else { b0 };
            let hi = if a1 < b1 { a1 } else { b1 };
            if hi > lo {
                hi.clone() - lo.clone()
            } else {
                S::zero()
            }
        }
        _ => S::zero(),
    };
    interval_len(a) + interval_len(b) - overlap * S::from_i64(2)
}

/// Area of a planar 3D polygon via the Newell normal.
fn polygon_area_3d<S: Scalar>(pts: &[[S; 3]]) -> S::Measure {
    let n = pts.len();
    let mut normal = [S::zero(), S::zero(), S::zero()];
    for i in 0..n {
        let (p, q) = (&pts[i], &pts[(i + 1) % n]);
        normal[0] = normal[0].clone() + (p[1].clone() - q[1].clone()) * (p[2].clone() + q[2].clone());
        normal[1] = normal[1].clone() + (p[2].clone() - q[2].clone()) * (p[0].clone() + q[0].clone());
        normal[2] = normal[2].clone() + (p[0].clone() - q[0].clone()) * (p[1].clone() + q[1].clone());
    }
    let sq = normal.iter().fold(S::zero(), |acc, x| acc + x.clone() * x.clone());
    // |N| is twice the area.
    (sq / S::from_i64(4)).sqrt_measure()
}

/// `H^{n-1}(∂E)` computed from the explicit boundary, never from the
/// perimeter formulas.
pub fn oracle_perimeter<S: Scalar>(e: &PolyVerticalSet<S>) -> S::Measure {
    let cx = e.u1().complex();
    let mut total = <S::Measure as Measure<S>>::zero();
    for c in e.support() {
        let verts = cx.cells[c].region.vertices();
        for u in [e.u1(), e.u2()] {
            let piece = u.piece(c).expect("support");
            match cx.dim {
                1 => {
                    let dz = verts[1][0].clone() - verts[0][0].clone();
                    let du = piece.eval(&verts[1]) - piece.eval(&verts[0]);
                    total = total + (dz.clone() * dz + du.clone() * du).sqrt_measure();
                }
                _ => {
                    let lifted: Vec<[S; 3]> = verts
                        .iter()
                        .map(|z| [z[0].clone(), z[1].clone(), piece.eval(z)])
                        .collect();
                    total = total + polygon_area_3d(&lifted);
                }
            }
        }
    }
    for facet in &cx.facets {
        match &facet.shape {
            FacetShape::Point(z) => {
                let z = [z.clone()];
                let a = section(e, facet.left, &z);
                let b = section(e, facet.right, &z);
                total = total + <S::Measure as Measure<S>>::from_scalar(symdiff_len(&a, &b));
            }
            FacetShape::Segment(..) => {
                let at = |tau: &S| {
                    let z = facet.point_at(tau);
                    (section(e, facet.left, &z), section(e, facet.right, &z))
                };
                // The four endpoint functions are affine in τ; between their
                // pairwise crossings the height is affine.
                let ends = |tau: &S| {
                    let (a, b) = at(tau);
                    let mut out = Vec::new();
                    for s in [a, b].into_iter().flatten() {
                        out.push(s.0);
                        out.push(s.1);
                    }
                    out
                };
                let (e0, e1) = (ends(&S::zero()), ends(&S::one()));
                let mut taus = vec![S::zero(), S::one()];
                for i in 0..e0.len() {
                    for j in i + 1..e0.len() {
                        let d0 = e0[i].clone() - e0[j].clone();
                        let d1 = e1[i].clone() - e1[j].clone();
                        if (d0.is_negative_tol() && d1.is_positive_tol()) || (d0.is_positive_tol() && d1.is_negative_tol()) {
                            taus.push(d0.clone() / (d0 - d1));
                        }
                    }
                }
                sort_dedup(&mut taus);
                let mut height = S::zero();
                for w in taus.windows(2) {
                    let mid = (w[0].clone() + w[1].clone()).half();
                    let (a, b) = at(&mid);
                    height = height + symdiff_len(&a, &b) * (w[1].clone() - w[0].clone());
                }
                total = total + facet.measure.scale(&height);
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::geometry::{Affine, ConvexRegion};
    use crate::numeric::{Rational, RootSum};
    use crate::polyset::{build_w, steiner_symmetral};
    use crate::pwfield::{BaseCellComplex, CellSpec, PwAffineField};

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
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
    fn unit_square_and_step() {
        let cx = halves();
        let one = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1)), Some(r(1, 1))]);
        assert_eq!(oracle_perimeter(&steiner_symmetral(&one).unwrap()), RootSum::rational(r(4, 1)));
        let step = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1)), Some(r(2, 1))]);
        assert_eq!(oracle_perimeter(&steiner_symmetral(&step).unwrap()), RootSum::rational(r(6, 1)));
        let lift = PwAffineField::piecewise_constant(&cx, &[Some(r(0, 1)), Some(r(1, 1))]);
        assert_eq!(oracle_perimeter(&build_w(&step, &lift).unwrap()), RootSum::rational(r(7, 1)));
    }

    #[test]
    fn unit_cube_and_tilted_prism() {
        let sq = ConvexRegion::Polygon(vec![[r(0, 1), r(0, 1)], [r(1, 1), r(0, 1)], [r(1, 1), r(1, 1)], [r(0, 1), r(1, 1)]]);
        let cx = Arc::new(BaseCellComplex::build(2, vec![CellSpec::new("q", sq)]).unwrap());
        let v = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1))]);
        assert_eq!(oracle_perimeter(&steiner_symmetral(&v).unwrap()), RootSum::rational(r(6, 1)));
        // b = z1: top and bottom faces tilt to area √2, side walls unchanged.
        let b = PwAffineField::from_fn(&cx, |_| Some(Affine::new(vec![r(1, 1), r(0, 1)], r(0, 1))));
        let expected = RootSum::sqrt_of(&r(2, 1)).scale(&r(2, 1)) + RootSum::rational(r(4, 1));
        assert_eq!(oracle_perimeter(&build_w(&v, &b).unwrap()), expected);
    }

    #[test]
    fn interval_symdiff() {
        let a = Some((r(-1, 2), r(1, 2)));
        let b = Some((r(0, 1), r(2, 1)));
        assert_eq!(symdiff_len(&a, &b), r(2, 1));
        assert_eq!(symdiff_len(&a, &None), r(1, 1));
        assert_eq!(symdiff_len(&Some((r(0, 1), r(1, 1))), &Some((r(3, 1), r(4, 1)))), r(2, 1));
    }
}
