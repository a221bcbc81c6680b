//! Sets between two piecewise-affine graphs and their constructors.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::{Affine, ConvexRegion};
use crate::numeric::{sort_dedup, Scalar};
use crate::pwfield::{CellId, PwAffineField};

/// `{(z, t): u1(z) < t < u2(z)}` over the support cells.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVerticalSet<S: Scalar> {
    u1: PwAffineField<S>,
    u2: PwAffineField<S>,
}

impl<S: Scalar> PolyVerticalSet<S> {
    pub fn new(u1: PwAffineField<S>, u2: PwAffineField<S>) -> Result<Self> {
        if !u1.same_complex(&u2) {
            return Err(Error::MismatchedComplexes);
        }
        if u1.support() != u2.support() {
            return Err(Error::InvalidMode("lower and upper graphs have different supports".into()));
        }
        let e = PolyVerticalSet { u1, u2 };
        match e.slice_length().validate_slice_length() {
            Err(Error::NegativeSliceLength { cell }) => Err(Error::InvertedGraphs { cell }),
            other => other.map(|_| e),
        }
    }

    pub fn u1(&self) -> &PwAffineField<S> {
        &self.u1
    }

    pub fn u2(&self) -> &PwAffineField<S> {
        &self.u2
    }

    pub fn dim(&self) -> usize {
        self.u1.dim()
    }

    pub fn support(&self) -> Vec<CellId> {
        self.u1.support()
    }

    pub fn slice_length(&self) -> PwAffineField<S> {
        self.u2.sub(&self.u1).expect("same complex")
    }

    pub fn barycenter(&self) -> PwAffineField<S> {
        self.u1
            .lin_comb(&S::one().half(), &self.u2, &S::one().half())
            .expect("same complex")
    }

    /// `(v, b)` with `b = 0` off the support.
    pub fn slice_and_barycenter(&self) -> (PwAffineField<S>, PwAffineField<S>) {
        (self.slice_length(), self.barycenter())
    }

    pub fn volume(&self) -> S {
        self.slice_length().integral()
    }

    pub fn translate(&self, t: &S) -> Self {
        let shift = |u: &PwAffineField<S>| {
            PwAffineField::from_fn(u.complex(), |c| u.piece(c).map(|p| p.shift(t)))
        };
        PolyVerticalSet { u1: shift(&self.u1), u2: shift(&self.u2) }
    }
}

/// `F[v] = {|t| < v/2}`.
pub fn steiner_symmetral<S: Scalar>(v: &PwAffineField<S>) -> Result<PolyVerticalSet<S>> {
    let zero = v.scale(&S::zero());
    build_w(v, &zero)
}

/// `W[v,b] = {|t − b| < v/2}`.
pub fn build_w<S: Scalar>(v: &PwAffineField<S>, b: &PwAffineField<S>) -> Result<PolyVerticalSet<S>> {
    if !v.same_complex(b) {
        return Err(Error::MismatchedComplexes);
    }
    v.validate_slice_length()?;
    let b = b.on_support_of(v);
    let half = S::one().half();
    let u1 = b.lin_comb(&S::one(), v, &-half.clone())?;
    let u2 = b.lin_comb(&S::one(), v, &half)?;
    PolyVerticalSet::new(u1, u2)
}

/// `b = Σ c_h 1_{G_h}` with `G_h = {c : parts[c] = h}`, then `W[v,b]`.
pub fn translate_over_partition<S: Scalar>(
    v: &PwAffineField<S>,
    parts: &[Option<usize>],
    offsets: &[S],
) -> Result<PolyVerticalSet<S>> {
    let cx = v.complex();
    let mut values = vec![None; cx.cells.len()];
    for c in v.support() {
        let h = parts
            .get(c)
            .copied()
            .flatten()
            .ok_or_else(|| Error::UnassignedCell { cell: cx.cells[c].name.clone() })?;
        values[c] = Some(offsets.get(h).cloned().ok_or(Error::MissingOffset(h))?);
    }
    build_w(v, &PwAffineField::piecewise_constant(cx, &values))
}

/// `{−λ v2 − v1/2 < t < v1/2 + (1−λ) v2}`.
pub fn prop14_construct<S: Scalar>(
    v1: &PwAffineField<S>,
    v2: &PwAffineField<S>,
    lambda: &S,
) -> Result<PolyVerticalSet<S>> {
    if *lambda < S::zero() || *lambda > S::one() || lambda.cmp_tol(&S::one().half()) == Ordering::Equal {
        return Err(Error::InvalidLambda);
    }
    if !v1.same_complex(v2) {
        return Err(Error::MismatchedComplexes);
    }
    if !v2.is_piecewise_constant() {
        return Err(Error::NotPiecewiseConstant);
    }
    let v = v1.add(v2)?;
    let support = v.support();
    let level = |c: CellId| v2.piece(c).map_or(S::zero(), |p| p.off.clone());
    let first = level(support[0]);
    if support.iter().all(|&c| level(c).cmp_tol(&first) == Ordering::Equal) {
        return Err(Error::ConstantV2);
    }
    for (id, f) in v.complex().interior_facets() {
        let both = f.sides().iter().all(|s| s.cell().is_some_and(|c| v.in_support(c)));
        if both && !v1.trace(id)?.jump().max_value().is_zero_tol() {
            return Err(Error::DiscontinuousV1 { facet: id });
        }
    }
    v.validate_slice_length()?;
    let (v1, v2) = (v1.on_support_of(&v), v2.on_support_of(&v));
    let half = S::one().half();
    let u1 = v2.lin_comb(&-lambda.clone(), &v1, &-half.clone())?;
    let u2 = v1.lin_comb(&half, &v2, &(S::one() - lambda.clone()))?;
    PolyVerticalSet::new(u1, u2)
}

/// `∫ 2·min(|b − t|, v)` over one cell, split exactly along the lines
/// where the integrand changes formula.
fn cell_symdiff<S: Scalar>(region: &ConvexRegion<S>, b: &Affine<S>, v: &Affine<S>, t: &S) -> S {
    let d = b.shift(&-t.clone());
    let neg_d = d.scale(&-S::one());
    let (below, above) = region.split(&d);
    let mut total = S::zero();
    for (piece, dist) in [(above, &d), (below, &neg_d)] {
        let Some(piece) = piece else { continue };
        // dist − v ≤ 0: integrand dist, else v
        let (near, far) = piece.split(&dist.sub(v));
        if let Some(near) = near {
            total = total + near.integrate(dist);
        }
        if let Some(far) = far {
            total = total + far.integrate(v);
        }
    }
    total * S::from_i64(2)
}

/// `t ↦ H^n(E Δ (t e_n + F[v]))` for a v-distributed `E` with barycenter `b`.
pub fn translate_symdiff<S: Scalar>(v: &PwAffineField<S>, b: &PwAffineField<S>, t: &S) -> S {
    let cx = v.complex();
    v.support()
        .into_iter()
        .map(|c| {
            let zero = Affine::constant(cx.dim, S::zero());
            let bp = b.piece(c).unwrap_or(&zero);
            cell_symdiff(&cx.cells[c].region, bp, v.piece(c).expect("support"), t)
        })
        .fold(S::zero(), |a, x| a + x)
}

/// Fails unless `E` has slice length `v` on exactly the support of `v`.
pub fn check_v_distributed<S: Scalar>(e: &PolyVerticalSet<S>, v: &PwAffineField<S>) -> Result<()> {
    if !e.u1.same_complex(v) {
        return Err(Error::MismatchedComplexes);
    }
    let ve = e.slice_length();
    let cx = v.complex();
    for c in 0..cx.cells.len() {
        let same = match (ve.piece(c), v.piece(c)) {
            (None, None) => true,
            (Some(p), Some(q)) => cx.cells[c]
                .region
                .vertices()
                .iter()
                .all(|z| p.eval(z).cmp_tol(&q.eval(z)) == Ordering::Equal),
            _ => false,
        };
        if !same {
            return Err(Error::NotVDistributed { cell: cx.cells[c].name.clone() });
        }
    }
    Ok(())
}

/// Cubic through four samples, as `[c0, c1, c2, c3]` in powers of `t`.
fn fit_cubic<S: Scalar>(ts: &[S; 4], ys: &[S; 4]) -> [S; 4] {
    let mut coeffs = [S::zero(), S::zero(), S::zero(), S::zero()];
    for i in 0..4 {
        // Lagrange basis polynomial expanded.
        let mut basis = vec![S::one()];
        let mut denom = S::one();
        for j in 0..4 {
            if i == j {
                continue;
            }
            let mut next = vec![S::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + c.clone();
                next[k] = next[k].clone() - c.clone() * ts[j].clone();
            }
            basis = next;
            denom = denom * (ts[i].clone() - ts[j].clone());
        }
        let w = ys[i].clone() / denom;
        for k in 0..4 {
            coeffs[k] = coeffs[k].clone() + basis[k].clone() * w.clone();
        }
    }
    coeffs
}

/// Stationary points of a cubic strictly inside `(lo, hi)`.
fn cubic_critical_points<S: Scalar>(c: &[S; 4], lo: &S, hi: &S) -> Vec<S> {
    // derivative: 3 c3 t² + 2 c2 t + c1
    let (a, b, k) = (c[3].clone() * S::from_i64(3), c[2].clone() * S::from_i64(2), c[1].clone());
    let mut roots = Vec::new();
    if a.is_zero_tol() {
        if !b.is_zero_tol() {
            roots.push(-k / b);
        }
    } else {
        let disc = b.clone() * b.clone() - S::from_i64(4) * a.clone() * k;
        if !disc.is_negative_tol() {
            let two_a = a.clone() * S::from_i64(2);
            match disc.exact_sqrt() {
                Some(s) => {
                    roots.push((-b.clone() + s.clone()) / two_a.clone());
                    roots.push((-b - s) / two_a);
                }
                None => {
                    let (af, bf, df) = (a.to_f64(), b.to_f64(), disc.to_f64().max(0.0).sqrt());
                    for r in [(-bf + df) / (2.0 * af), (-bf - df) / (2.0 * af)] {
                        if r.is_finite() {
                            roots.push(S::from_f64(r));
                        }
                    }
                }
            }
        }
    }
    roots.retain(|r| r > lo && r < hi);
    roots
}

/// `min_t H^n(E Δ (t e_n + F[v]))` and a minimizer (the smallest one among
/// the examined candidates).
pub fn min_translate_symdiff<S: Scalar>(e: &PolyVerticalSet<S>, v: &PwAffineField<S>) -> Result<(S, S)> {
    check_v_distributed(e, v)?;
    let b = e.barycenter();
    let mut breaks = Vec::new();
    for c in v.support() {
        for (bz, vz) in b.vertex_values(c).into_iter().zip(v.vertex_values(c)) {
            breaks.push(bz.clone() - vz.clone());
            breaks.push(bz.clone());
            breaks.push(bz + vz);
        }
    }
    sort_dedup(&mut breaks);
    let g = |t: &S| translate_symdiff(v, &b, t);
    let mut candidates = breaks.clone();
    if !b.is_piecewise_constant() {
        for w in breaks.windows(2) {
            let step = (w[1].clone() - w[0].clone()) / S::from_i64(5);
            let ts: [S; 4] = std::array::from_fn(|k| w[0].clone() + step.clone() * S::from_i64(k as i64 + 1));
            let ys: [S; 4] = std::array::from_fn(|k| g(&ts[k]));
            candidates.extend(cubic_critical_points(&fit_cubic(&ts, &ys), &w[0], &w[1]));
        }
        sort_dedup(&mut candidates);
    }
    let mut best: Option<(S, S)> = None;
    for t in candidates {
        let val = g(&t);
        let better = match &best {
            None => true,
            Some((_, m)) => val.cmp_tol(m) == Ordering::Less,
        };
        if better {
            best = Some((t, val));
        }
    }
    best.ok_or(Error::EmptySelection)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::numeric::Rational;
    use crate::pwfield::{BaseCellComplex, CellSpec};

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

    fn step(cx: &Arc<BaseCellComplex<Rational>>) -> PwAffineField<Rational> {
        PwAffineField::piecewise_constant(cx, &[Some(r(1, 1)), Some(r(2, 1))])
    }

    #[test]
    fn symmetral_bounds() {
        let cx = halves();
        let f = steiner_symmetral(&step(&cx)).unwrap();
        assert_eq!(f.u2().piece(1).unwrap().off, r(1, 1));
        assert_eq!(f.u1().piece(0).unwrap().off, r(-1, 2));
        assert_eq!(f.volume(), r(3, 2));
        let (v, b) = f.slice_and_barycenter();
        assert_eq!(v, step(&cx));
        assert!(b.pieces().iter().flatten().all(|p| p.off == r(0, 1)));
    }

    #[test]
    fn w_roundtrip_and_shift() {
        let cx = halves();
        let v = step(&cx);
        let b = PwAffineField::piecewise_constant(&cx, &[Some(r(0, 1)), Some(r(1, 2))]);
        let e = build_w(&v, &b).unwrap();
        let (v2, b2) = e.slice_and_barycenter();
        assert_eq!((v2, b2), (v.clone(), b));
        assert_eq!(e.volume(), r(3, 2));
        let (t, val) = min_translate_symdiff(&e, &v).unwrap();
        assert_eq!(val, r(1, 2));
        assert!(t >= r(0, 1) && t <= r(1, 2));
    }

    #[test]
    fn translates_have_zero_symdiff() {
        let cx = halves();
        let v = step(&cx);
        let e = translate_over_partition(&v, &[Some(0), Some(0)], &[r(3, 1)]).unwrap();
        assert_eq!(min_translate_symdiff(&e, &v).unwrap(), (r(3, 1), r(0, 1)));
        let f = steiner_symmetral(&v).unwrap();
        assert_eq!(min_translate_symdiff(&f, &v).unwrap(), (r(0, 1), r(0, 1)));
        assert!(matches!(
            translate_over_partition(&v, &[Some(0), None], &[r(0, 1)]),
            Err(Error::UnassignedCell { .. })
        ));
    }

    #[test]
    fn affine_barycenter_minimum() {
        // v = 1, b = z on (0,1): g(t) = 2∫ |z − t| dz = t² + (1−t)², least at t = 1/2
        let cx = Arc::new(
            BaseCellComplex::build(1, vec![CellSpec::new("a", ConvexRegion::Interval(r(0, 1), r(1, 1)))]).unwrap(),
        );
        let v = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1))]);
        let b = PwAffineField::from_fn(&cx, |_| Some(Affine::new(vec![r(1, 1)], r(0, 1))));
        let e = build_w(&v, &b).unwrap();
        let (t, val) = min_translate_symdiff(&e, &v).unwrap();
        assert_eq!((t, val), (r(1, 2), r(1, 2)));
    }

    #[test]
    fn prop14_rejections() {
        let cx = halves();
        let v2 = step(&cx);
        let v1 = v2.scale(&r(0, 1));
        let e = prop14_construct(&v1, &v2, &r(0, 1)).unwrap();
        assert_eq!(e.u1().piece(1).unwrap().off, r(0, 1));
        assert_eq!(e.u2().piece(1).unwrap().off, r(2, 1));
        assert_eq!(prop14_construct(&v1, &v2, &r(1, 2)), Err(Error::InvalidLambda));
        let flat = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1)), Some(r(1, 1))]);
        assert_eq!(prop14_construct(&v1, &flat, &r(0, 1)), Err(Error::ConstantV2));
        let ramp = PwAffineField::from_fn(&cx, |_| Some(Affine::new(vec![r(1, 1)], r(1, 1))));
        assert_eq!(prop14_construct(&v1, &ramp, &r(0, 1)), Err(Error::NotPiecewiseConstant));
        assert_eq!(prop14_construct(&v2, &v2, &r(0, 1)), Err(Error::DiscontinuousV1 { facet: 1 }));
    }

    #[test]
    fn not_v_distributed() {
        let cx = halves();
        let v = step(&cx);
        let e = steiner_symmetral(&v.scale(&r(2, 1))).unwrap();
        assert!(matches!(min_translate_symdiff(&e, &v), Err(Error::NotVDistributed { .. })));
    }
}
