//! Planar and linear primitives over a [`Scalar`].

use std::cmp::Ordering;

use crate::numeric::Scalar;

pub type Point2<S> = [S; 2];

/// `z ↦ grad·z + off`.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine<S> {
    pub grad: Vec<S>,
    pub off: S,
}

impl<S: Scalar> Affine<S> {
    pub fn new(grad: Vec<S>, off: S) -> Self {
        Affine { grad, off }
    }

    pub fn constant(dim: usize, c: S) -> Self {
        Affine { grad: vec![S::zero(); dim], off: c }
    }

    pub fn eval(&self, z: &[S]) -> S {
        self.grad
            .iter()
            .zip(z)
            .fold(self.off.clone(), |acc, (g, x)| acc + g.clone() * x.clone())
    }

    pub fn is_constant(&self) -> bool {
        self.grad.iter().all(|g| g.is_zero_tol())
    }

    pub fn grad_norm_sq(&self) -> S {
        self.grad
            .iter()
            .fold(S::zero(), |acc, g| acc + g.clone() * g.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Affine {
            grad: self
                .grad
                .iter()
                .zip(&other.grad)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
            off: self.off.clone() + other.off.clone(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        Affine {
            grad: self.grad.iter().map(|g| g.clone() * k.clone()).collect(),
            off: self.off.clone() * k.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn shift(&self, c: &S) -> Self {
        Affine { grad: self.grad.clone(), off: self.off.clone() + c.clone() }
    }
}

/// `(b − a) × (c − a)`.
pub fn orient<S: Scalar>(a: &Point2<S>, b: &Point2<S>, c: &Point2<S>) -> S {
    (b[0].clone() - a[0].clone()) * (c[1].clone() - a[1].clone())
        - (b[1].clone() - a[1].clone()) * (c[0].clone() - a[0].clone())
}

/// Signed area, positive for counterclockwise order.
pub fn signed_area<S: Scalar>(pts: &[Point2<S>]) -> S {
    let n = pts.len();
    let mut twice = S::zero();
    for i in 0..n {
        let (p, q) = (&pts[i], &pts[(i + 1) % n]);
        twice = twice + p[0].clone() * q[1].clone() - q[0].clone() * p[1].clone();
    }
    twice.half()
}

pub fn centroid<S: Scalar>(pts: &[Point2<S>]) -> Point2<S> {
    let n = pts.len();
    let (mut cx, mut cy, mut a2) = (S::zero(), S::zero(), S::zero());
    for i in 0..n {
        let (p, q) = (&pts[i], &pts[(i + 1) % n]);
        let w = p[0].clone() * q[1].clone() - q[0].clone() * p[1].clone();
        cx = cx + (p[0].clone() + q[0].clone()) * w.clone();
        cy = cy + (p[1].clone() + q[1].clone()) * w.clone();
        a2 = a2 + w;
    }
    if a2.is_zero_tol() {
        let k = S::from_i64(n as i64);
        let sx = pts.iter().fold(S::zero(), |acc, p| acc + p[0].clone());
        let sy = pts.iter().fold(S::zero(), |acc, p| acc + p[1].clone());
        return [sx / k.clone(), sy / k];
    }
    let six_a = a2 * S::from_i64(3);
    [cx / six_a.clone(), cy / six_a]
}

/// Squared Euclidean distance.
pub fn dist_sq<S: Scalar>(a: &Point2<S>, b: &Point2<S>) -> S {
    let dx = b[0].clone() - a[0].clone();
    let dy = b[1].clone() - a[1].clone();
    dx.clone() * dx + dy.clone() * dy
}

pub fn lerp<S: Scalar>(a: &Point2<S>, b: &Point2<S>, t: &S) -> Point2<S> {
    [
        a[0].clone() + (b[0].clone() - a[0].clone()) * t.clone(),
        a[1].clone() + (b[1].clone() - a[1].clone()) * t.clone(),
    ]
}

pub fn points_equal<S: Scalar>(a: &Point2<S>, b: &Point2<S>) -> bool {
    a[0].cmp_tol(&b[0]) == Ordering::Equal && a[1].cmp_tol(&b[1]) == Ordering::Equal
}

/// Keeps the part of a convex polygon where `h ≤ 0` (or `h ≥ 0` when
/// `keep_positive`). The result may be degenerate.
pub fn clip_convex<S: Scalar>(pts: &[Point2<S>], h: &Affine<S>, keep_positive: bool) -> Vec<Point2<S>> {
    let sign = if keep_positive { -S::one() } else { S::one() };
    let vals: Vec<S> = pts.iter().map(|p| h.eval(p) * sign.clone()).collect();
    let n = pts.len();
    let mut out: Vec<Point2<S>> = Vec::with_capacity(n + 2);
    for i in 0..n {
        let j = (i + 1) % n;
        let (vi, vj) = (&vals[i], &vals[j]);
        let inside_i = !vi.is_positive_tol();
        if inside_i {
            out.push(pts[i].clone());
        }
        let crosses = (vi.is_negative_tol() && vj.is_positive_tol())
            || (vi.is_positive_tol() && vj.is_negative_tol());
        if crosses {
            let t = vi.clone() / (vi.clone() - vj.clone());
            out.push(lerp(&pts[i], &pts[j], &t));
        }
    }
    out.dedup_by(|a, b| points_equal(a, b));
    if out.len() > 1 && points_equal(&out[0], &out[out.len() - 1]) {
        out.pop();
    }
    out
}

/// True when two convex polygons share interior points.
pub fn convex_interiors_overlap<S: Scalar>(p: &[Point2<S>], q: &[Point2<S>]) -> bool {
    for poly in [p, q] {
        let n = poly.len();
        for i in 0..n {
            let (a, b) = (&poly[i], &poly[(i + 1) % n]);
            let normal = [b[1].clone() - a[1].clone(), a[0].clone() - b[0].clone()];
            let proj = |pt: &Point2<S>| normal[0].clone() * pt[0].clone() + normal[1].clone() * pt[1].clone();
            let range = |pts: &[Point2<S>]| {
                let vals: Vec<S> = pts.iter().map(proj).collect();
                let lo = vals.iter().cloned().fold(vals[0].clone(), |m, x| if x < m { x } else { m });
                let hi = vals.iter().cloned().fold(vals[0].clone(), |m, x| if x > m { x } else { m });
                (lo, hi)
            };
            let (plo, phi) = range(p);
            let (qlo, qhi) = range(q);
            if phi.cmp_tol(&qlo) != Ordering::Greater || qhi.cmp_tol(&plo) != Ordering::Greater {
                return false;
            }
        }
    }
    true
}

/// An open interval or an open convex polygon.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexRegion<S> {
    Interval(S, S),
    Polygon(Vec<Point2<S>>),
}

impl<S: Scalar> ConvexRegion<S> {
    pub fn dim(&self) -> usize {
        match self {
            ConvexRegion::Interval(..) => 1,
            ConvexRegion::Polygon(_) => 2,
        }
    }

    /// Length or area.
    pub fn measure(&self) -> S {
        match self {
            ConvexRegion::Interval(a, b) => b.clone() - a.clone(),
            ConvexRegion::Polygon(pts) => signed_area(pts),
        }
    }

    pub fn centroid(&self) -> Vec<S> {
        match self {
            ConvexRegion::Interval(a, b) => vec![(a.clone() + b.clone()).half()],
            ConvexRegion::Polygon(pts) => centroid(pts).to_vec(),
        }
    }

    pub fn vertices(&self) -> Vec<Vec<S>> {
        match self {
            ConvexRegion::Interval(a, b) => vec![vec![a.clone()], vec![b.clone()]],
            ConvexRegion::Polygon(pts) => pts.iter().map(|p| p.to_vec()).collect(),
        }
    }

    /// Exact integral of an affine function.
    pub fn integrate(&self, f: &Affine<S>) -> S {
        self.measure() * f.eval(&self.centroid())
    }

    /// Splits into the parts where `h ≤ 0` and `h ≥ 0`, dropping null parts.
    pub fn split(&self, h: &Affine<S>) -> (Option<Self>, Option<Self>) {
        match self {
            ConvexRegion::Interval(a, b) => {
                let (ha, hb) = (h.eval(std::slice::from_ref(a)), h.eval(std::slice::from_ref(b)));
                let neg_a = !ha.is_positive_tol();
                let neg_b = !hb.is_positive_tol();
                let pos_a = !ha.is_negative_tol();
                let pos_b = !hb.is_negative_tol();
                if neg_a && neg_b {
                    return (Some(self.clone()), None);
                }
                if pos_a && pos_b {
                    return (None, Some(self.clone()));
                }
                let r = -h.off.clone() / h.grad[0].clone();
                let left = ConvexRegion::Interval(a.clone(), r.clone());
                let right = ConvexRegion::Interval(r, b.clone());
                if neg_a {
                    (Some(left), Some(right))
                } else {
                    (Some(right), Some(left))
                }
            }
            ConvexRegion::Polygon(pts) => {
                let keep = |poly: Vec<Point2<S>>| {
                    (poly.len() >= 3 && signed_area(&poly).is_positive_tol())
                        .then_some(ConvexRegion::Polygon(poly))
                };
                (keep(clip_convex(pts, h, false)), keep(clip_convex(pts, h, true)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn unit_square() -> Vec<Point2<Rational>> {
        vec![[r(0, 1), r(0, 1)], [r(1, 1), r(0, 1)], [r(1, 1), r(1, 1)], [r(0, 1), r(1, 1)]]
    }

    #[test]
    fn area_and_centroid() {
        let sq = unit_square();
        assert_eq!(signed_area(&sq), r(1, 1));
        assert_eq!(centroid(&sq), [r(1, 2), r(1, 2)]);
    }

    #[test]
    fn clipping_splits_area_exactly() {
        let region = ConvexRegion::Polygon(unit_square());
        let h = Affine::new(vec![r(1, 1), r(1, 1)], r(-1, 1));
        let (lo, hi) = region.split(&h);
        assert_eq!(lo.unwrap().measure(), r(1, 2));
        assert_eq!(hi.unwrap().measure(), r(1, 2));
        let (lo, hi) = region.split(&Affine::new(vec![r(1, 1), r(0, 1)], r(-2, 1)));
        assert_eq!(lo.unwrap().measure(), r(1, 1));
        assert!(hi.is_none());
    }

    #[test]
    fn interval_split() {
        let region = ConvexRegion::Interval(r(0, 1), r(1, 1));
        let (lo, hi) = region.split(&Affine::new(vec![r(-1, 1)], r(1, 4)));
        assert_eq!(lo.unwrap(), ConvexRegion::Interval(r(1, 4), r(1, 1)));
        assert_eq!(hi.unwrap(), ConvexRegion::Interval(r(0, 1), r(1, 4)));
    }

    #[test]
    fn overlap_ignores_touching() {
        let a = unit_square();
        let b: Vec<_> = a.iter().map(|p| [p[0].clone() + r(1, 1), p[1].clone()]).collect();
        assert!(!convex_interiors_overlap(&a, &b));
        let c: Vec<_> = a.iter().map(|p| [p[0].clone() + r(1, 2), p[1].clone()]).collect();
        assert!(convex_interiors_overlap(&a, &c));
    }
}
