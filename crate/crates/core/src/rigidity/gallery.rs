//! Named constructions with known outcomes.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::Status;
use crate::error::{Error, Result};
use crate::geometry::{Affine, ConvexRegion};
use crate::numeric::Scalar;
use crate::polyset::prop14_construct;
use crate::pwfield::{BaseCellComplex, CellSpec, PwAffineField};
use crate::scene::Scene;

pub const GALLERY_NAMES: [&str; 8] =
    ["fig1a", "fig1b", "casetta", "salsicciotto", "example11", "cantor", "rationals", "prop14"];

#[derive(Clone, Debug)]
pub struct GalleryEntry<S: Scalar> {
    pub scene: Scene<S>,
    pub expected: Status,
    /// The scene carries an equality case (`b`, or `u1`/`u2`) for `v`.
    pub has_equality_case: bool,
}

fn q<S: Scalar>(n: i64, d: i64) -> S {
    S::ratio(n, d)
}

fn intervals<S: Scalar>(breaks: &[S]) -> Arc<BaseCellComplex<S>> {
    let specs = breaks
        .windows(2)
        .enumerate()
        .map(|(i, w)| CellSpec::new(format!("c{i}"), ConvexRegion::Interval(w[0].clone(), w[1].clone())))
        .collect();
    Arc::new(BaseCellComplex::build(1, specs).expect("valid intervals"))
}

fn rect<S: Scalar>(x0: S, x1: S, y0: S, y1: S) -> ConvexRegion<S> {
    ConvexRegion::Polygon(vec![[x0.clone(), y0.clone()], [x1.clone(), y0], [x1, y1.clone()], [x0, y1]])
}

fn entry<S: Scalar>(scene: Scene<S>, expected: Status, has_equality_case: bool) -> GalleryEntry<S> {
    GalleryEntry { scene: scene.expecting(&expected.to_string()), expected, has_equality_case }
}

/// Looks up a gallery entry; `depth` defaults to 1 (5 for `rationals`).
pub fn gallery<S: Scalar>(name: &str, depth: Option<usize>) -> Result<GalleryEntry<S>> {
    if depth == Some(0) {
        return Err(Error::InvalidDepth);
    }
    let e = match name {
        "fig1a" => fig1a(),
        "fig1b" => fig1b(),
        "casetta" => casetta(),
        "salsicciotto" => salsicciotto(),
        "example11" => example11(depth.unwrap_or(1))?,
        "cantor" => cantor(depth.unwrap_or(1)),
        "rationals" => rationals(depth.unwrap_or(5))?,
        "prop14" => prop14()?,
        other => return Err(Error::UnknownGallery(other.to_string())),
    };
    Ok(GalleryEntry { scene: e.scene.named(name), ..e })
}

/// `v = 1` on `(0, 1/2)`, `2` on `(1/2, 1)`.
fn fig1a<S: Scalar>() -> GalleryEntry<S> {
    let cx = intervals(&[q(0, 1), q(1, 2), q(1, 1)]);
    let v = PwAffineField::piecewise_constant(&cx, &[Some(S::one()), Some(S::from_i64(2))]);
    entry(Scene::new(cx).with_field("v", v), Status::NonRigid, false)
}

/// `v = |2z − 1|`: the section vanishes at the cut.
fn fig1b<S: Scalar>() -> GalleryEntry<S> {
    let cx = intervals(&[q(0, 1), q(1, 2), q(1, 1)]);
    let v = PwAffineField::from_fn(&cx, |c| {
        Some(if c == 0 {
            Affine::new(vec![S::from_i64(-2)], S::one())
        } else {
            Affine::new(vec![S::from_i64(2)], -S::one())
        })
    });
    entry(Scene::new(cx).with_field("v", v), Status::NonRigid, false)
}

/// Unit square split at `z1 = 1/2`; `v = 1` on the left, `z2` on the right.
/// The jump `1 − z2` dies at the top corner.
fn casetta<S: Scalar>() -> GalleryEntry<S> {
    let (o, h, i) = (S::zero(), q::<S>(1, 2), S::one());
    let cx = Arc::new(
        BaseCellComplex::build(
            2,
            vec![
                CellSpec::new("left", rect(o.clone(), h.clone(), o.clone(), i.clone())),
                CellSpec::new("right", rect(h, i.clone(), o, i)),
            ],
        )
        .expect("valid"),
    );
    let v = PwAffineField::from_fn(&cx, |c| {
        Some(if c == 0 { Affine::constant(2, S::one()) } else { Affine::new(vec![S::zero(), S::one()], S::zero()) })
    });
    entry(Scene::new(cx).with_field("v", v), Status::Rigid, false)
}

/// Continuous `v` on the unit square vanishing exactly on the segment
/// `[1/4, 3/4] × {1/2}`.
fn salsicciotto<S: Scalar>() -> GalleryEntry<S> {
    let xs = [S::zero(), q(1, 4), q(3, 4), S::one()];
    let ys = [S::zero(), q(1, 2), S::one()];
    let mut specs = Vec::new();
    let mut pieces = Vec::new();
    let half = q::<S>(1, 2);
    for (col, name) in ["w", "m", "e"].iter().enumerate() {
        for (row, side) in ["s", "n"].iter().enumerate() {
            specs.push(CellSpec::new(
                format!("{name}{side}"),
                rect(xs[col].clone(), xs[col + 1].clone(), ys[row].clone(), ys[row + 1].clone()),
            ));
            // |z2 − 1/2| plus the distance of z1 to the middle band
            let vertical = if row == 1 {
                Affine::new(vec![S::zero(), S::one()], -half.clone())
            } else {
                Affine::new(vec![S::zero(), -S::one()], half.clone())
            };
            let horizontal = match col {
                0 => Affine::new(vec![-S::one(), S::zero()], q(1, 4)),
                1 => Affine::constant(2, S::zero()),
                _ => Affine::new(vec![S::one(), S::zero()], q(-3, 4)),
            };
            pieces.push(Some(vertical.add(&horizontal)));
        }
    }
    let cx = Arc::new(BaseCellComplex::build(2, specs).expect("valid"));
    let v = PwAffineField::new(cx.clone(), pieces).expect("arity");
    entry(Scene::new(cx).with_field("v", v), Status::Rigid, false)
}

/// Axis-aligned rectangle `[s0, s1] × [r0, r1]` in rotated coordinates
/// `s = x + y`, `r = x − y`, as a counterclockwise polygon in `(x, y)`.
fn rotated_rect<S: Scalar>(s0: &S, s1: &S, r0: &S, r1: &S) -> ConvexRegion<S> {
    let to_xy = |s: &S, r: &S| [(s.clone() + r.clone()).half(), (s.clone() - r.clone()).half()];
    // the map reverses orientation
    ConvexRegion::Polygon(vec![to_xy(s0, r0), to_xy(s0, r1), to_xy(s1, r1), to_xy(s1, r0)])
}

/// Diamond squares: `u_1 = 1_{Q(0,1)}` refined `depth` times, each square
/// `Q(t, ℓ)` of generation `j` spawning `∓2^{−j} 1_{Q(t ∓ 3ℓ/4, ℓ/4)}`.
fn example11<S: Scalar>(depth: usize) -> Result<GalleryEntry<S>> {
    // (center, half diagonal, coefficient)
    let mut squares: Vec<(S, S, S)> = vec![(S::zero(), S::one(), S::one())];
    let mut frontier = vec![(S::zero(), S::one())];
    for j in 1..=depth {
        let coef = S::one() / S::from_i64(1 << j);
        let mut next = Vec::new();
        for (t, l) in &frontier {
            let off = l.clone() * q(3, 4);
            let child = l.clone() * q(1, 4);
            for (c, sign) in [(t.clone() - off.clone(), -S::one()), (t.clone() + off, S::one())] {
                squares.push((c.clone(), child.clone(), coef.clone() * sign));
                next.push((c, child.clone()));
            }
        }
        frontier = next;
    }
    // In (s, r) coordinates every square is [t − ℓ, t + ℓ]².
    let mut breaks: Vec<S> = squares
        .iter()
        .flat_map(|(t, l, _)| [t.clone() - l.clone(), t.clone() + l.clone()])
        .collect();
    breaks.sort_by(|a, b| a.partial_cmp(b).expect("ordered"));
    breaks.dedup();
    let n = breaks.len() - 1;
    let value = |i: usize, k: usize| {
        let (sm, rm) = ((breaks[i].clone() + breaks[i + 1].clone()).half(), (breaks[k].clone() + breaks[k + 1].clone()).half());
        squares.iter().fold(S::zero(), |acc, (t, l, c)| {
            let inside = |m: &S| *m > t.clone() - l.clone() && *m < t.clone() + l.clone();
            if inside(&sm) && inside(&rm) {
                acc + c.clone()
            } else {
                acc
            }
        })
    };
    // Greedy merge: maximal runs along s, then stack equal runs along r.
    let mut used = vec![vec![false; n]; n];
    let mut specs = Vec::new();
    let mut values = Vec::new();
    for k in 0..n {
        for i in 0..n {
            if used[i][k] {
                continue;
            }
            let val = value(i, k);
            if val.is_zero_tol() {
                used[i][k] = true;
                continue;
            }
            let mut i1 = i + 1;
            while i1 < n && !used[i1][k] && value(i1, k) == val {
                i1 += 1;
            }
            let mut k1 = k + 1;
            while k1 < n && (i..i1).all(|ii| !used[ii][k1] && value(ii, k1) == val) {
                k1 += 1;
            }
            for row in used.iter_mut().take(i1).skip(i) {
                for cell in row.iter_mut().take(k1).skip(k) {
                    *cell = true;
                }
            }
            specs.push(CellSpec::new(
                format!("q{}", specs.len()),
                rotated_rect(&breaks[i], &breaks[i1], &breaks[k], &breaks[k1]),
            ));
            values.push(Some(val));
        }
    }
    let cx = Arc::new(BaseCellComplex::build(2, specs)?);
    let v = PwAffineField::piecewise_constant(&cx, &values);
    let zero = v.scale(&S::zero());
    let e = prop14_construct(&zero, &v, &S::zero())?;
    let scene = Scene::new(cx).with_field("v", v).with_field("b", e.barycenter());
    Ok(entry(scene, Status::NonRigid, true))
}

/// `v = dist(·, K_k)` for the level-`depth` Cantor set `K_k`, with the
/// staircase constant as barycenter on each gap.
fn cantor<S: Scalar>(depth: usize) -> GalleryEntry<S> {
    // gaps (left, right, staircase value) and remaining intervals
    let mut kept: Vec<(S, S)> = vec![(S::zero(), S::one())];
    let mut gaps: Vec<(S, S)> = Vec::new();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (a, b) in &kept {
            let third = (b.clone() - a.clone()) / S::from_i64(3);
            let (l, r) = (a.clone() + third.clone(), b.clone() - third);
            gaps.push((l.clone(), r.clone()));
            next.push((a.clone(), l));
            next.push((r, b.clone()));
        }
        kept = next;
    }
    gaps.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("ordered"));
    // staircase on the h-th gap from the left is (h + 1) / 2^depth
    let denom = S::from_i64(1 << depth);
    let mut specs = Vec::new();
    let mut v = Vec::new();
    let mut b = Vec::new();
    for (i, (a, bb)) in kept.iter().enumerate() {
        specs.push(CellSpec::new(format!("k{i}"), ConvexRegion::Interval(a.clone(), bb.clone())));
        v.push(None);
        b.push(None);
    }
    for (h, (l, r)) in gaps.iter().enumerate() {
        let m = (l.clone() + r.clone()).half();
        let stair = S::from_i64(h as i64 + 1) / denom.clone();
        specs.push(CellSpec::new(format!("g{h}a"), ConvexRegion::Interval(l.clone(), m.clone())));
        v.push(Some(Affine::new(vec![S::one()], -l.clone())));
        b.push(Some(Affine::constant(1, stair.clone())));
        specs.push(CellSpec::new(format!("g{h}b"), ConvexRegion::Interval(m, r.clone())));
        v.push(Some(Affine::new(vec![-S::one()], r.clone())));
        b.push(Some(Affine::constant(1, stair)));
    }
    let cx = Arc::new(BaseCellComplex::build(1, specs).expect("valid"));
    let v = PwAffineField::new(cx.clone(), v).expect("arity");
    let b = PwAffineField::new(cx.clone(), b).expect("arity");
    let expected = if depth == 1 { Status::Rigid } else { Status::NonRigid };
    entry(Scene::new(cx).with_field("v", v).with_field("b", b), expected, true)
}

/// The first `n` rationals of `[0, 1)` in the order `0, 1/2, 1/3, 2/3, 1/4,
/// ...`.
pub fn rational_points<S: Scalar>(n: usize) -> Vec<S> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut d = 1i64;
    while out.len() < n {
        for k in 0..d {
            let g = num_integer::gcd(k, d);
            if seen.insert((k / g, d / g)) {
                out.push(S::ratio(k, d));
                if out.len() == n {
                    break;
                }
            }
        }
        d += 1;
    }
    out
}

/// `v = Σ_{h<n} 2^{−h} 1_{(q_h, 1]}` on `(0, 1)` and the set built from
/// `v1 = 0`, `v2 = v`, `λ = 0`.
fn rationals<S: Scalar>(n: usize) -> Result<GalleryEntry<S>> {
    let qs = rational_points::<S>(n);
    let mut breaks = qs.clone();
    breaks.push(S::one());
    breaks.sort_by(|a, b| a.partial_cmp(b).expect("ordered"));
    let cx = intervals(&breaks);
    let values: Vec<Option<S>> = breaks
        .windows(2)
        .map(|w| {
            let mid = (w[0].clone() + w[1].clone()).half();
            Some(qs.iter().enumerate().fold(S::zero(), |acc, (h, qh)| {
                if *qh < mid {
                    acc + S::one() / S::from_i64(1 << h)
                } else {
                    acc
                }
            }))
        })
        .collect();
    let v = PwAffineField::piecewise_constant(&cx, &values);
    let zero = v.scale(&S::zero());
    let e = prop14_construct(&zero, &v, &S::zero())?;
    let scene = Scene::new(cx).with_field("v", v).with_field("b", e.barycenter());
    Ok(entry(scene, Status::NonRigid, true))
}

/// `v1 = 1 + z` continuous, `v2 = 1 | 2`, `λ = 1/4`.
fn prop14<S: Scalar>() -> Result<GalleryEntry<S>> {
    let cx = intervals(&[q(0, 1), q(1, 2), q(1, 1)]);
    let v1 = PwAffineField::from_fn(&cx, |_| Some(Affine::new(vec![S::one()], S::one())));
    let v2 = PwAffineField::piecewise_constant(&cx, &[Some(S::one()), Some(S::from_i64(2))]);
    let e = prop14_construct(&v1, &v2, &q(1, 4))?;
    let v = v1.add(&v2)?;
    let scene = Scene::new(cx)
        .with_field("v", v)
        .with_field("u1", e.u1().clone())
        .with_field("u2", e.u2().clone());
    Ok(entry(scene, Status::NonRigid, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{measures_agree, Rational};
    use crate::perimeter::oracle_perimeter;
    use crate::polyset::steiner_symmetral;
    use crate::rigidity::{check_equality_case, decide_rigidity, ClassHint};

    #[test]
    fn verdicts_match() {
        let cases: Vec<(&str, Option<usize>)> = vec![
            ("fig1a", None),
            ("fig1b", None),
            ("casetta", None),
            ("salsicciotto", None),
            ("example11", Some(1)),
            ("example11", Some(2)),
            ("cantor", Some(1)),
            ("cantor", Some(3)),
            ("rationals", Some(5)),
            ("prop14", None),
        ];
        for (name, depth) in cases {
            let g = gallery::<Rational>(name, depth).unwrap();
            let v = g.scene.field("v").unwrap();
            assert_eq!(decide_rigidity(v, ClassHint::Auto).unwrap().status, g.expected, "{name} {depth:?}");
            if g.has_equality_case {
                let e = g.scene.set().unwrap();
                assert!(check_equality_case(&e, v).unwrap().holds, "{name}");
                let f = steiner_symmetral(v).unwrap();
                assert!(measures_agree::<Rational>(&oracle_perimeter(&e), &oracle_perimeter(&f), 0.0), "{name}");
            }
        }
    }

    #[test]
    fn diamond_levels() {
        let g = gallery::<Rational>("example11", Some(1)).unwrap();
        let v = g.scene.field("v").unwrap();
        let mut levels: Vec<Rational> = v.pieces().iter().flatten().map(|p| p.off.clone()).collect();
        levels.sort();
        levels.dedup();
        assert_eq!(levels, vec![Rational::ratio(1, 2), Rational::one(), Rational::ratio(3, 2)]);
        assert_eq!(v.integral(), Rational::from_i64(2));
    }

    #[test]
    fn rational_order() {
        let pts = rational_points::<Rational>(6);
        let want: Vec<Rational> = [(0, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4)].iter().map(|&(n, d)| Rational::ratio(n, d)).collect();
        assert_eq!(pts, want);
    }

    #[test]
    fn bad_requests() {
        assert_eq!(gallery::<Rational>("nope", None).unwrap_err(), Error::UnknownGallery("nope".into()));
        assert_eq!(gallery::<Rational>("cantor", Some(0)).unwrap_err(), Error::InvalidDepth);
    }
}
