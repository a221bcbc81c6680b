//! Seeded random scenes and the acceptance criteria run by `steiner selftest`
//! and the `acceptance` test target.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connectivity::{essentially_disconnects, is_indecomposable_f, Selection};
use crate::error::Result;
use crate::geometry::{Affine, ConvexRegion};
use crate::numeric::{measure_le, measures_agree, Measure, Rational, RootSum, Scalar};
use crate::perimeter::{coarea_check, oracle_perimeter, perimeter_formula, slice_inequality_check, FormulaArgs};
use crate::polyset::{build_w, min_translate_symdiff, steiner_symmetral, PolyVerticalSet};
use crate::pwfield::{BaseCellComplex, CellSpec, Portion, PwAffineField};
use crate::rigidity::{
    check_equality_case, decide_rigidity, exhaustive_witness_search, gallery, has_no_vertical_parts, ClassHint, Status,
};

pub const REL_TOL: f64 = 1e-9;
pub const ABS_TOL: f64 = 1e-9;
pub const SEED: u64 = 0x5732_1e1e;

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {}: {} ({})",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail
        )
    }
}

/// A slice length and barycenter on a shared complex.
#[derive(Clone, Debug)]
pub struct RandomScene<S: Scalar> {
    pub v: PwAffineField<S>,
    pub b: PwAffineField<S>,
}

impl<S: Scalar> RandomScene<S> {
    pub fn set(&self) -> Result<PolyVerticalSet<S>> {
        build_w(&self.v, &self.b)
    }
}

pub struct SceneGen {
    rng: ChaCha8Rng,
}

fn affine_through<S: Scalar>(pts: [&[S; 2]; 3], vals: [&S; 3]) -> Affine<S> {
    let (dx1, dy1) = (pts[1][0].clone() - pts[0][0].clone(), pts[1][1].clone() - pts[0][1].clone());
    let (dx2, dy2) = (pts[2][0].clone() - pts[0][0].clone(), pts[2][1].clone() - pts[0][1].clone());
    let (d1, d2) = (vals[1].clone() - vals[0].clone(), vals[2].clone() - vals[0].clone());
    let det = dx1.clone() * dy2.clone() - dx2.clone() * dy1.clone();
    let gx = (d1.clone() * dy2 - d2.clone() * dy1) / det.clone();
    let gy = (dx1 * d2 - dx2 * d1) / det;
    let off = vals[0].clone() - gx.clone() * pts[0][0].clone() - gy.clone() * pts[0][1].clone();
    Affine::new(vec![gx, gy], off)
}

fn rect<S: Scalar>(x0: &S, x1: &S, y0: &S, y1: &S) -> Vec<[S; 2]> {
    vec![[x0.clone(), y0.clone()], [x1.clone(), y0.clone()], [x1.clone(), y1.clone()], [x0.clone(), y1.clone()]]
}

impl SceneGen {
    pub fn new(seed: u64) -> Self {
        SceneGen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn frac<S: Scalar>(&mut self, lo: i64, hi: i64, den: i64) -> S {
        S::ratio(self.rng.gen_range(lo..=hi), den)
    }

    /// `count` sorted distinct multiples of `1/den` in `[0, span]`.
    fn breaks<S: Scalar>(&mut self, count: usize, span: i64, den: i64) -> Vec<S> {
        let mut pool: Vec<i64> = (0..=span * den).collect();
        pool.shuffle(&mut self.rng);
        let mut picked: Vec<i64> = pool[..count].to_vec();
        picked.sort_unstable();
        picked.into_iter().map(|k| S::ratio(k, den)).collect()
    }

    fn barycenter<S: Scalar>(&mut self, cx: &Arc<BaseCellComplex<S>>) -> PwAffineField<S> {
        let dim = cx.dim;
        match self.rng.gen_range(0..4) {
            0 => PwAffineField::from_fn(cx, |_| Some(Affine::constant(dim, S::zero()))),
            1 => {
                let pieces = (0..cx.cells.len())
                    .map(|_| Some(Affine::new((0..dim).map(|_| self.frac(-2, 2, 2)).collect(), self.frac(-2, 2, 4))))
                    .collect();
                PwAffineField::new(cx.clone(), pieces).expect("arity")
            }
            _ => {
                let values: Vec<Option<S>> = (0..cx.cells.len()).map(|_| Some(self.frac(-2, 2, 8))).collect();
                PwAffineField::piecewise_constant(cx, &values)
            }
        }
    }

    /// Intervals in `[0, 3]` with independent affine pieces; neighbours share
    /// endpoint values a third of the time.
    pub fn dim1<S: Scalar>(&mut self, max_cells: usize) -> RandomScene<S> {
        let n = self.rng.gen_range(1..=max_cells);
        let xs: Vec<S> = self.breaks(n + 1, 3, 4);
        let specs = xs
            .windows(2)
            .enumerate()
            .map(|(i, w)| CellSpec::new(format!("c{i}"), ConvexRegion::Interval(w[0].clone(), w[1].clone())))
            .collect();
        let cx = Arc::new(BaseCellComplex::build(1, specs).expect("intervals"));
        let mut pieces = Vec::new();
        let mut prev: Option<S> = None;
        for w in xs.windows(2) {
            if n > 1 && self.rng.gen_ratio(1, 6) {
                pieces.push(None);
                prev = None;
                continue;
            }
            let left = match &prev {
                Some(p) if self.rng.gen_ratio(1, 3) => p.clone(),
                _ => self.frac(0, 4, 2),
            };
            let mut right: S = self.frac(0, 4, 2);
            if left.is_zero_tol() && right.is_zero_tol() {
                right = S::one();
            }
            let grad = (right.clone() - left.clone()) / (w[1].clone() - w[0].clone());
            pieces.push(Some(Affine::new(vec![grad.clone()], left - grad * w[0].clone())));
            prev = Some(right);
        }
        if pieces.iter().all(Option::is_none) {
            pieces[0] = Some(Affine::constant(1, S::one()));
        }
        let v = PwAffineField::new(cx.clone(), pieces).expect("arity");
        let b = self.barycenter(&cx);
        RandomScene { v, b }
    }

    /// Columns of stacked rectangles in `[0, 2]²`, some cut into triangles.
    pub fn complex2<S: Scalar>(&mut self, max_cells: usize) -> Arc<BaseCellComplex<S>> {
        let cols = self.rng.gen_range(1..=3.min(max_cells));
        let xs: Vec<S> = self.breaks(cols + 1, 2, 4);
        let mut budget = max_cells - cols;
        let mut polys: Vec<Vec<[S; 2]>> = Vec::new();
        for c in 0..cols {
            let extra = self.rng.gen_range(0..=budget.min(2));
            budget -= extra;
            let ys: Vec<S> = self.breaks(extra + 2, 2, 4);
            for r in 0..=extra {
                polys.push(rect(&xs[c], &xs[c + 1], &ys[r], &ys[r + 1]));
            }
        }
        let mut out = Vec::new();
        for p in polys {
            if budget > 0 && self.rng.gen_ratio(1, 3) {
                budget -= 1;
                out.push(vec![p[0].clone(), p[1].clone(), p[2].clone()]);
                out.push(vec![p[0].clone(), p[2].clone(), p[3].clone()]);
            } else {
                out.push(p);
            }
        }
        let specs = out
            .into_iter()
            .enumerate()
            .map(|(i, p)| CellSpec::new(format!("p{i}"), ConvexRegion::Polygon(p)))
            .collect();
        Arc::new(BaseCellComplex::build(2, specs).expect("tiling"))
    }

    /// Affine slice lengths on a random planar complex; half the cells share
    /// one global piece.
    pub fn dim2<S: Scalar>(&mut self, max_cells: usize) -> RandomScene<S> {
        let cx: Arc<BaseCellComplex<S>> = self.complex2(max_cells);
        let global = self.nonneg_piece(&[[S::zero(), S::zero()], [S::from_i64(2), S::zero()], [S::from_i64(2), S::from_i64(2)], [S::zero(), S::from_i64(2)]]);
        let mut pieces = Vec::new();
        for cell in &cx.cells {
            let ConvexRegion::Polygon(pts) = &cell.region else { unreachable!() };
            pieces.push(Some(if self.rng.gen_bool(0.5) { global.clone() } else { self.nonneg_piece(pts) }));
        }
        let v = PwAffineField::new(cx.clone(), pieces).expect("arity");
        let b = self.barycenter(&cx);
        RandomScene { v, b }
    }

    fn nonneg_piece<S: Scalar>(&mut self, pts: &[[S; 2]]) -> Affine<S> {
        let grad: Vec<S> = vec![self.frac(-2, 2, 2), self.frac(-2, 2, 2)];
        let lin = Affine::new(grad, S::zero());
        let lowest = pts
            .iter()
            .map(|p| lin.eval(&p[..]))
            .reduce(|a, b| if b < a { b } else { a })
            .expect("vertices");
        let mut lift: S = self.frac(0, 3, 2);
        if lin.is_constant() && lift.is_zero_tol() {
            lift = S::one();
        }
        lin.shift(&(lift - lowest))
    }

    /// Continuous slice lengths: a triangulated grid with vertex values, zero
    /// triangles dropped from the support.
    pub fn continuous2<S: Scalar>(&mut self) -> PwAffineField<S> {
        loop {
            let (nx, ny) = (self.rng.gen_range(1..=2usize), self.rng.gen_range(1..=2usize));
            let xs: Vec<S> = self.breaks(nx + 1, 2, 4);
            let ys: Vec<S> = self.breaks(ny + 1, 2, 4);
            let vals: Vec<Vec<S>> = (0..=nx)
                .map(|_| (0..=ny).map(|_| if self.rng.gen_ratio(2, 5) { S::zero() } else { self.frac(1, 4, 2) }).collect())
                .collect();
            let mut specs = Vec::new();
            let mut pieces = Vec::new();
            for i in 0..nx {
                for j in 0..ny {
                    let p = |a: usize, b: usize| [xs[i + a].clone(), ys[j + b].clone()];
                    let val = |a: usize, b: usize| vals[i + a][j + b].clone();
                    for (k, tri) in [[(0, 0), (1, 0), (1, 1)], [(0, 0), (1, 1), (0, 1)]].iter().enumerate() {
                        let pts: Vec<[S; 2]> = tri.iter().map(|&(a, b)| p(a, b)).collect();
                        let vs: Vec<S> = tri.iter().map(|&(a, b)| val(a, b)).collect();
                        let piece = affine_through([&pts[0], &pts[1], &pts[2]], [&vs[0], &vs[1], &vs[2]]);
                        pieces.push(if vs.iter().all(Scalar::is_zero_tol) { None } else { Some(piece) });
                        specs.push(CellSpec::new(format!("t{i}{j}{k}"), ConvexRegion::Polygon(pts)));
                    }
                }
            }
            if pieces.iter().all(Option::is_none) {
                continue;
            }
            let cx = Arc::new(BaseCellComplex::build(2, specs).expect("grid"));
            return PwAffineField::new(cx, pieces).expect("arity");
        }
    }

    /// Continuous piecewise-affine slice length on intervals.
    pub fn continuous1<S: Scalar>(&mut self) -> PwAffineField<S> {
        let n = self.rng.gen_range(2..=6);
        let xs: Vec<S> = self.breaks(n + 1, 3, 4);
        let vals: Vec<S> = (0..=n).map(|_| if self.rng.gen_ratio(1, 3) { S::zero() } else { self.frac(1, 4, 2) }).collect();
        let specs = xs
            .windows(2)
            .enumerate()
            .map(|(i, w)| CellSpec::new(format!("c{i}"), ConvexRegion::Interval(w[0].clone(), w[1].clone())))
            .collect();
        let cx = Arc::new(BaseCellComplex::build(1, specs).expect("intervals"));
        let mut pieces: Vec<Option<Affine<S>>> = (0..n)
            .map(|i| {
                if vals[i].is_zero_tol() && vals[i + 1].is_zero_tol() {
                    return None;
                }
                let g = (vals[i + 1].clone() - vals[i].clone()) / (xs[i + 1].clone() - xs[i].clone());
                Some(Affine::new(vec![g.clone()], vals[i].clone() - g * xs[i].clone()))
            })
            .collect();
        if pieces.iter().all(Option::is_none) {
            pieces[0] = Some(Affine::constant(1, S::one()));
        }
        PwAffineField::new(cx, pieces).expect("arity")
    }

    /// A random selection of facet portions.
    pub fn selection<S: Scalar>(&mut self, cx: &BaseCellComplex<S>) -> Selection<S> {
        let mut k = Selection::new();
        for (id, _) in cx.interior_facets() {
            let portion = match self.rng.gen_range(0..5) {
                0 => continue,
                1 => Portion::whole(),
                2 => Portion::point(self.frac(0, 4, 4)),
                _ => {
                    let a: S = self.frac(0, 3, 4);
                    Portion::from_parts(vec![(a.clone(), a + S::ratio(1, 4))])
                }
            };
            k.insert(id, portion);
        }
        k
    }

    pub fn gen_ratio(&mut self, num: u32, den: u32) -> bool {
        self.rng.gen_ratio(num, den)
    }
}

fn agree(a: &RootSum, b: &RootSum) -> bool {
    measures_agree::<Rational>(a, b, REL_TOL)
}

fn run(id: usize, title: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> CriterionOutcome {
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionOutcome { id, title, passed, detail, elapsed: start.elapsed() }
}

/// The random scenes shared by criteria 1, 3 and 9.
pub fn random_corpus() -> Vec<RandomScene<Rational>> {
    let mut g = SceneGen::new(SEED);
    let mut out: Vec<RandomScene<Rational>> = (0..200).map(|_| g.dim1(6)).collect();
    out.extend((0..50).map(|_| g.dim2(8)));
    out
}

pub fn criterion1(corpus: &[RandomScene<Rational>]) -> CriterionOutcome {
    run(1, "formula matches oracle on 200 + 50 random scenes", || {
        let start = Instant::now();
        let mut bad = 0;
        for s in corpus {
            let e = s.set()?;
            let formula = perimeter_formula(FormulaArgs::W { v: &s.v, b: &s.b }, None)?.total;
            if !agree(&formula, &oracle_perimeter(&e)) {
                bad += 1;
            }
        }
        let secs = start.elapsed().as_secs_f64();
        Ok((bad == 0 && secs < 30.0, format!("{bad} mismatches, {secs:.1}s")))
    })
}

fn step_scene(b_right: Rational, v_right: Rational) -> Result<PolyVerticalSet<Rational>> {
    let g = gallery::<Rational>("fig1a", None)?;
    let v = g.scene.field("v")?;
    let v = PwAffineField::piecewise_constant(v.complex(), &[Some(Rational::one()), Some(v_right)]);
    let b = PwAffineField::piecewise_constant(v.complex(), &[Some(Rational::zero()), Some(b_right)]);
    build_w(&v, &b)
}

pub fn criterion2() -> CriterionOutcome {
    run(2, "named perimeters exact by formula and oracle", || {
        let r = Rational::ratio;
        let cases: Vec<(&str, PolyVerticalSet<Rational>, Rational)> = vec![
            ("unit square", step_scene(r(0, 1), r(1, 1))?, r(4, 1)),
            ("step", step_scene(r(0, 1), r(2, 1))?, r(6, 1)),
            ("shifted barycenter", step_scene(r(1, 4), r(1, 1))?, r(9, 2)),
            ("lifted step", step_scene(r(1, 1), r(2, 1))?, r(7, 1)),
        ];
        let mut failures = Vec::new();
        for (name, e, want) in cases {
            let (v, b) = e.slice_and_barycenter();
            let formula = perimeter_formula(FormulaArgs::W { v: &v, b: &b }, None)?.total;
            let want = RootSum::rational(want);
            if formula != want || oracle_perimeter(&e) != want {
                failures.push(name);
            }
        }
        Ok((failures.is_empty(), if failures.is_empty() { "4, 6, 9/2, 7".into() } else { failures.join(", ") }))
    })
}

pub fn criterion3(corpus: &[RandomScene<Rational>]) -> CriterionOutcome {
    run(3, "Steiner inequality with equality exactly on equality cases", || {
        let (mut below, mut mismatch, mut equal) = (0, 0, 0);
        for s in corpus {
            let e = s.set()?;
            let pe = oracle_perimeter(&e);
            let pf = oracle_perimeter(&steiner_symmetral(&s.v)?);
            if !measure_le::<Rational>(&pf, &pe, REL_TOL) {
                below += 1;
            }
            let same = agree(&pe, &pf);
            equal += usize::from(same);
            if same != check_equality_case(&e, &s.v)?.holds {
                mismatch += 1;
            }
        }
        Ok((
            below == 0 && mismatch == 0,
            format!("{below} violations, {mismatch} equality mismatches, {equal} equality cases"),
        ))
    })
}

fn gallery_fields() -> Result<Vec<PwAffineField<Rational>>> {
    let mut out = Vec::new();
    for (name, depth) in [
        ("fig1a", None),
        ("fig1b", None),
        ("casetta", None),
        ("salsicciotto", None),
        ("example11", Some(2)),
        ("cantor", Some(2)),
        ("rationals", Some(5)),
        ("prop14", None),
    ] {
        out.push(gallery::<Rational>(name, depth)?.scene.field("v")?.clone());
    }
    Ok(out)
}

pub fn criterion4(corpus: &[RandomScene<Rational>]) -> CriterionOutcome {
    run(4, "every non-rigid witness is an equality case away from translates", || {
        let mut fields: Vec<PwAffineField<Rational>> = corpus.iter().map(|s| s.v.clone()).collect();
        fields.extend(gallery_fields()?);
        let (mut witnesses, mut bad) = (0, 0);
        for v in &fields {
            let verdict = decide_rigidity(v, ClassHint::Auto)?;
            let Some(w) = verdict.witness else { continue };
            witnesses += 1;
            let pf = oracle_perimeter(&steiner_symmetral(v)?);
            let (_, gap) = min_translate_symdiff(&w.set, v)?;
            if !agree(&oracle_perimeter(&w.set), &pf) || gap.to_f64() < ABS_TOL {
                bad += 1;
            }
        }
        Ok((bad == 0 && witnesses > 0, format!("{witnesses} witnesses, {bad} unsound")))
    })
}

pub fn criterion5() -> CriterionOutcome {
    run(5, "exhaustive search finds no cut for rigid verdicts", || {
        let mut g = SceneGen::new(SEED ^ 5);
        let mut fields: Vec<PwAffineField<Rational>> = (0..30).map(|_| g.dim1(6).v).collect();
        fields.extend((0..15).map(|_| g.dim2(6).v));
        fields.extend((0..10).map(|_| g.continuous1()));
        fields.extend(gallery_fields()?);
        let (mut rigid, mut found, mut slowest) = (0, 0, Duration::ZERO);
        for v in fields.iter().filter(|v| v.support().len() <= 6) {
            if decide_rigidity(v, ClassHint::Auto)?.status != Status::Rigid {
                continue;
            }
            rigid += 1;
            let start = Instant::now();
            found += usize::from(exhaustive_witness_search(v)?.is_some());
            slowest = slowest.max(start.elapsed());
        }
        Ok((
            found == 0 && rigid > 0 && slowest.as_secs() < 60,
            format!("{rigid} rigid scenes, {found} counterexamples, slowest {:.2}s", slowest.as_secs_f64()),
        ))
    })
}

pub fn criterion6() -> CriterionOutcome {
    run(6, "deciders agree", || {
        let mut g = SceneGen::new(SEED ^ 6);
        let mut planar_bad = 0;
        for _ in 0..100 {
            let v: PwAffineField<Rational> = g.dim1(6).v;
            let a = decide_rigidity(&v, ClassHint::Planar)?.status;
            let b = decide_rigidity(&v, ClassHint::Polyhedral)?.status;
            planar_bad += usize::from(a != b);
        }
        let (mut nv_bad, mut indec_bad, mut non_rigid) = (0, 0, 0);
        for i in 0..50 {
            let v: PwAffineField<Rational> = if i % 5 == 0 { g.continuous1() } else { g.continuous2() };
            if !has_no_vertical_parts(&v) {
                nv_bad += 1;
                continue;
            }
            let a = decide_rigidity(&v, ClassHint::NoVertical)?.status;
            let b = decide_rigidity(&v, ClassHint::Polyhedral)?.status;
            nv_bad += usize::from(a != b);
            non_rigid += usize::from(b == Status::NonRigid);
            indec_bad += usize::from(is_indecomposable_f(&v)? != (a == Status::Rigid));
        }
        Ok((
            planar_bad + nv_bad + indec_bad == 0,
            format!("planar {planar_bad}, no-vertical {nv_bad}, indecomposable {indec_bad} disagreements; {non_rigid}/50 non-rigid"),
        ))
    })
}

pub fn criterion7() -> CriterionOutcome {
    run(7, "gallery regression", || {
        let mut failures = Vec::new();
        let mut cases: Vec<(&str, Option<usize>)> =
            vec![("fig1a", None), ("fig1b", None), ("casetta", None), ("salsicciotto", None), ("rationals", Some(5)), ("prop14", None)];
        cases.extend((1..=3).map(|d| ("example11", Some(d))));
        cases.extend((1..=4).map(|d| ("cantor", Some(d))));
        for (name, depth) in cases {
            let label = format!("{name}{}", depth.map_or(String::new(), |d| format!("@{d}")));
            let entry = gallery::<Rational>(name, depth)?;
            let v = entry.scene.field("v")?;
            let verdict = decide_rigidity(v, ClassHint::Auto)?;
            if verdict.status != entry.expected {
                failures.push(format!("{label} verdict {}", verdict.status));
            }
            if name == "fig1a" && verdict.witness.as_ref().and_then(|w| w.eps.clone()) != Some(Rational::one()) {
                failures.push(format!("{label} eps"));
            }
            if entry.has_equality_case {
                let e = entry.scene.set()?;
                let pf = oracle_perimeter(&steiner_symmetral(v)?);
                if !check_equality_case(&e, v)?.holds || !agree(&oracle_perimeter(&e), &pf) {
                    failures.push(format!("{label} equality"));
                }
            }
        }
        Ok((failures.is_empty(), if failures.is_empty() { "13 entries".into() } else { failures.join(", ") }))
    })
}

pub fn criterion8() -> CriterionOutcome {
    run(8, "coarea identity exact on piecewise-constant barycenters", || {
        let mut g = SceneGen::new(SEED ^ 8);
        let mut bad = 0;
        for i in 0..50 {
            let cx: Arc<BaseCellComplex<Rational>> = if i % 2 == 0 { g.dim1(6).v.complex().clone() } else { g.complex2(8) };
            let values: Vec<Option<Rational>> = (0..cx.cells.len()).map(|_| Some(g.frac(-4, 4, 3))).collect();
            let b = PwAffineField::piecewise_constant(&cx, &values);
            let facets: Vec<usize> = cx.interior_facets().map(|(id, _)| id).filter(|_| g.gen_ratio(3, 4)).collect();
            let check = coarea_check(&b, &facets)?;
            bad += usize::from(check.lhs != check.rhs);
        }
        Ok((bad == 0, format!("{bad} inexact")))
    })
}

pub fn criterion9(corpus: &[RandomScene<Rational>]) -> CriterionOutcome {
    run(9, "slice perimeter integral bounded by perimeter", || {
        let mut bad = 0;
        for s in corpus {
            let check = slice_inequality_check(&s.set()?);
            let slack = check.rhs.to_f64() - check.lhs.to_f64();
            if !check.holds || slack < -ABS_TOL * check.rhs.to_f64().max(1.0) {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{bad} violations")))
    })
}

fn half_facet_case() -> Result<bool> {
    let r = Rational::ratio;
    let sq = |x0: i64| {
        ConvexRegion::Polygon(vec![[r(x0, 1), r(0, 1)], [r(x0 + 1, 1), r(0, 1)], [r(x0 + 1, 1), r(1, 1)], [r(x0, 1), r(1, 1)]])
    };
    let cx = BaseCellComplex::build(2, vec![CellSpec::new("a", sq(0)), CellSpec::new("b", sq(1))])?;
    let (id, _) = cx.interior_facets().next().expect("shared side");
    let k = Selection::new().with(id, Portion::from_parts(vec![(r(0, 1), r(1, 2))]));
    Ok(essentially_disconnects(&cx, &k, &[0, 1])?.disconnects)
}

pub fn criterion10() -> CriterionOutcome {
    run(10, "disconnection is monotone and blind to null sets", || {
        let mut g = SceneGen::new(SEED ^ 10);
        let (mut mono_bad, mut null_bad) = (0, 0);
        for _ in 0..100 {
            let cx: Arc<BaseCellComplex<Rational>> = g.complex2(8);
            let mut cells: Vec<usize> = (0..cx.cells.len()).filter(|_| g.gen_ratio(3, 4)).collect();
            if cells.is_empty() {
                cells.push(0);
            }
            let k = g.selection(&cx);
            let bigger = k.union(&g.selection(&cx));
            let mut nulls = k.clone();
            for (id, _) in cx.interior_facets() {
                nulls.insert(id, Portion::point(g.frac(0, 4, 4)));
            }
            let base = essentially_disconnects(&cx, &k, &cells)?.disconnects;
            if base && !essentially_disconnects(&cx, &bigger, &cells)?.disconnects {
                mono_bad += 1;
            }
            if base != essentially_disconnects(&cx, &nulls, &cells)?.disconnects {
                null_bad += 1;
            }
        }
        let half = half_facet_case()?;
        Ok((
            mono_bad + null_bad == 0 && !half,
            format!("{mono_bad} monotonicity, {null_bad} null-set failures; half facet disconnects: {half}"),
        ))
    })
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    let corpus = random_corpus();
    vec![
        criterion1(&corpus),
        criterion2(),
        criterion3(&corpus),
        criterion4(&corpus),
        criterion5(),
        criterion6(),
        criterion7(),
        criterion8(),
        criterion9(&corpus),
        criterion10(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a: RandomScene<Rational> = SceneGen::new(7).dim2(8);
        let b: RandomScene<Rational> = SceneGen::new(7).dim2(8);
        assert_eq!(a.v, b.v);
        assert!(a.v.complex().cells.len() <= 8);
        let c: PwAffineField<Rational> = SceneGen::new(3).continuous2();
        assert!(has_no_vertical_parts(&c));
    }

    #[test]
    fn triangle_interpolation() {
        let r = Rational::ratio;
        let pts = [[r(0, 1), r(0, 1)], [r(1, 1), r(0, 1)], [r(0, 1), r(1, 1)]];
        let a = affine_through([&pts[0], &pts[1], &pts[2]], [&r(1, 1), &r(3, 1), &r(2, 1)]);
        assert_eq!(a, Affine::new(vec![r(2, 1), r(1, 1)], r(1, 1)));
    }
}
