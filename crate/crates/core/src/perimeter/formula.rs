use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::{Measure, Scalar};
use crate::polyset::PolyVerticalSet;
use crate::pwfield::{label_from_trace, CellId, PwAffineField, PwLinear};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Steiner symmetral of `v`.
    F,
    /// `W[v,b]`.
    W,
    /// Region between `u1` and `u2`.
    U,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" | "f" => Ok(Mode::F),
            "W" | "w" => Ok(Mode::W),
            "U" | "u" => Ok(Mode::U),
            other => Err(Error::InvalidMode(format!("unknown perimeter mode {other}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::F => "F",
            Mode::W => "W",
            Mode::U => "U",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub enum FormulaArgs<'a, S: Scalar> {
    F { v: &'a PwAffineField<S> },
    W { v: &'a PwAffineField<S>, b: &'a PwAffineField<S> },
    U { u1: &'a PwAffineField<S>, u2: &'a PwAffineField<S> },
}

impl<S: Scalar> FormulaArgs<'_, S> {
    pub fn mode(&self) -> Mode {
        match self {
            FormulaArgs::F { .. } => Mode::F,
            FormulaArgs::W { .. } => Mode::W,
            FormulaArgs::U { .. } => Mode::U,
        }
    }
}

/// Cells and facets a breakdown is restricted to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Region {
    pub cells: BTreeSet<CellId>,
    pub facets: BTreeSet<usize>,
}

impl Region {
    pub fn new(cells: impl IntoIterator<Item = CellId>, facets: impl IntoIterator<Item = usize>) -> Self {
        Region { cells: cells.into_iter().collect(), facets: facets.into_iter().collect() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellTerm<S: Scalar> {
    pub cell: CellId,
    pub measure: S,
    pub ac: S::Measure,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FacetTerm<S: Scalar> {
    pub facet: usize,
    pub measure: S::Measure,
    pub jump: S::Measure,
    pub boundary: S::Measure,
    /// Minimum of `v^∧` along the facet.
    pub v_inf: S,
    /// Maximum of `v^∨` along the facet.
    pub v_sup: S,
    pub jump_essinf: Option<S>,
    pub crossable: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerimeterBreakdown<S: Scalar> {
    pub mode: Mode,
    pub ac_part: S::Measure,
    pub jump_part: S::Measure,
    pub boundary_zero_part: S::Measure,
    pub total: S::Measure,
    pub cells: Vec<CellTerm<S>>,
    pub facets: Vec<FacetTerm<S>>,
    pub region: Option<Region>,
}

fn graph_density<S: Scalar>(grad: &[S]) -> S::Measure {
    let sq = grad.iter().fold(S::one(), |acc, g| acc + g.clone() * g.clone());
    sq.sqrt_measure()
}

/// Perimeter of the set described by `args`, split into the graph-area
/// term, the facet jump term and the term over `{v^∧ = 0}`.
pub fn perimeter_formula<S: Scalar>(args: FormulaArgs<'_, S>, region: Option<&Region>) -> Result<PerimeterBreakdown<S>> {
    let mode = args.mode();
    // Normalize to (v, b, u1, u2) after validating the input combination.
    let (v, b, u1, u2) = match args {
        FormulaArgs::F { v } => {
            v.validate_slice_length()?;
            let b = v.scale(&S::zero());
            let half = S::one().half();
            (v.clone(), b, v.scale(&-half.clone()), v.scale(&half))
        }
        FormulaArgs::W { v, b } => {
            if !v.same_complex(b) {
                return Err(Error::MismatchedComplexes);
            }
            let e = crate::polyset::build_w(v, b)?;
            (v.clone(), e.barycenter(), e.u1().clone(), e.u2().clone())
        }
        FormulaArgs::U { u1, u2 } => {
            let e = PolyVerticalSet::new(u1.clone(), u2.clone())?;
            let (v, b) = e.slice_and_barycenter();
            (v, b, u1.clone(), u2.clone())
        }
    };
    let cx = v.complex().clone();
    let in_cells = |c: CellId| region.is_none_or(|r| r.cells.contains(&c));
    let in_facets = |f: usize| region.is_none_or(|r| r.facets.contains(&f));
    let half = S::one().half();

    let mut cells = Vec::new();
    for c in v.support().into_iter().filter(|&c| in_cells(c)) {
        let area = cx.cells[c].region.measure();
        let density = match mode {
            Mode::F => {
                let g: Vec<S> = v.piece(c).expect("support").grad.iter().map(|g| g.clone() * half.clone()).collect();
                graph_density::<S>(&g).scale(&S::from_i64(2))
            }
            Mode::W => {
                let (gb, gv) = (&b.piece(c).expect("support").grad, &v.piece(c).expect("support").grad);
                let plus: Vec<S> = gb.iter().zip(gv).map(|(x, y)| x.clone() + y.clone() * half.clone()).collect();
                let minus: Vec<S> = gb.iter().zip(gv).map(|(x, y)| x.clone() - y.clone() * half.clone()).collect();
                graph_density::<S>(&plus) + graph_density::<S>(&minus)
            }
            Mode::U => {
                graph_density::<S>(&u1.piece(c).expect("support").grad)
                    + graph_density::<S>(&u2.piece(c).expect("support").grad)
            }
        };
        cells.push(CellTerm { cell: c, measure: area.clone(), ac: density.scale(&area) });
    }

    let mut facets = Vec::new();
    for (id, facet) in cx.facets.iter().enumerate().filter(|(i, _)| in_facets(*i)) {
        let vt = v.trace(id)?;
        let label = label_from_trace(&vt);
        let positive = label.positive_portion();
        let upper = vt.upper();
        let integrand: PwLinear<S> = match mode {
            Mode::F => vt.jump(),
            Mode::W => {
                let bt = b.trace(id)?;
                let cap = upper.add(&vt.lower());
                cap.min(&vt.jump().max(&bt.jump().scale(&S::from_i64(2))))
            }
            Mode::U => {
                let (t1, t2) = (u1.trace(id)?, u2.trace(id)?);
                let gap = t2.average().sub(&t1.average()).scale(&S::from_i64(2));
                gap.min(&t1.jump().add(&t2.jump()))
            }
        };
        let jump = facet.measure.scale(&integrand.integral_over(&positive));
        let boundary = facet.measure.scale(&upper.integral_over(&label.zero_portion));
        facets.push(FacetTerm {
            facet: id,
            measure: facet.measure.clone(),
            jump,
            boundary,
            v_inf: vt.lower().min_value(),
            v_sup: upper.max_value(),
            crossable: label.crossable(),
            jump_essinf: label.jump_essinf,
        });
    }

    let sum = |it: &mut dyn Iterator<Item = S::Measure>| it.fold(<S::Measure as Measure<S>>::zero(), |a, m| a + m);
    let ac_part = sum(&mut cells.iter().map(|c| c.ac.clone()));
    let jump_part = sum(&mut facets.iter().map(|f| f.jump.clone()));
    let boundary_zero_part = sum(&mut facets.iter().map(|f| f.boundary.clone()));
    let total = ac_part.clone() + jump_part.clone() + boundary_zero_part.clone();
    Ok(PerimeterBreakdown {
        mode,
        ac_part,
        jump_part,
        boundary_zero_part,
        total,
        cells,
        facets,
        region: region.cloned(),
    })
}

/// `perimeter_formula` in mode U applied to the bounds of `e`.
pub fn perimeter_of_set<S: Scalar>(e: &PolyVerticalSet<S>) -> Result<PerimeterBreakdown<S>> {
    perimeter_formula(FormulaArgs::U { u1: e.u1(), u2: e.u2() }, None)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::geometry::{Affine, ConvexRegion};
    use crate::numeric::{Rational, RootSum};
    use crate::pwfield::{BaseCellComplex, CellSpec};

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn rs(n: i64, d: i64) -> RootSum {
        RootSum::rational(r(n, d))
    }

    fn intervals(cuts: &[(i64, i64)]) -> Arc<BaseCellComplex<Rational>> {
        let specs = cuts
            .windows(2)
            .enumerate()
            .map(|(i, w)| CellSpec::new(format!("c{i}"), ConvexRegion::Interval(r(w[0].0, w[0].1), r(w[1].0, w[1].1))))
            .collect();
        Arc::new(BaseCellComplex::build(1, specs).unwrap())
    }

    #[test]
    fn unit_square() {
        let cx = intervals(&[(0, 1), (1, 1)]);
        let v = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1))]);
        let p = perimeter_formula(FormulaArgs::F { v: &v }, None).unwrap();
        assert_eq!((p.ac_part, p.jump_part, p.boundary_zero_part, p.total), (rs(2, 1), rs(0, 1), rs(2, 1), rs(4, 1)));
    }

    #[test]
    fn step_symmetral() {
        let cx = intervals(&[(0, 1), (1, 2), (1, 1)]);
        let v = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1)), Some(r(2, 1))]);
        let p = perimeter_formula(FormulaArgs::F { v: &v }, None).unwrap();
        assert_eq!((p.ac_part, p.jump_part, p.boundary_zero_part), (rs(2, 1), rs(1, 1), rs(3, 1)));
        assert_eq!(p.total, rs(6, 1));
    }

    #[test]
    fn shifted_barycenter() {
        let cx = intervals(&[(0, 1), (1, 2), (1, 1)]);
        let v = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1)), Some(r(1, 1))]);
        let b = PwAffineField::piecewise_constant(&cx, &[Some(r(0, 1)), Some(r(1, 4))]);
        let p = perimeter_formula(FormulaArgs::W { v: &v, b: &b }, None).unwrap();
        assert_eq!(p.facets[1].jump, rs(1, 2));
        assert_eq!(p.total, rs(9, 2));
        let e = crate::polyset::build_w(&v, &b).unwrap();
        assert_eq!(perimeter_of_set(&e).unwrap().total, rs(9, 2));
    }

    #[test]
    fn lifted_step() {
        let cx = intervals(&[(0, 1), (1, 2), (1, 1)]);
        let v = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1)), Some(r(2, 1))]);
        let b = PwAffineField::piecewise_constant(&cx, &[Some(r(0, 1)), Some(r(1, 1))]);
        let p = perimeter_formula(FormulaArgs::W { v: &v, b: &b }, None).unwrap();
        assert_eq!(p.total, rs(7, 1));
    }

    #[test]
    fn sloped_graph_is_irrational() {
        // v = 1 + z on (0,1): ac = 2∫√(1+1/4) = √5
        let cx = intervals(&[(0, 1), (1, 1)]);
        let v = PwAffineField::from_fn(&cx, |_| Some(Affine::new(vec![r(1, 1)], r(1, 1))));
        let p = perimeter_formula(FormulaArgs::F { v: &v }, None).unwrap();
        assert_eq!(p.ac_part, RootSum::sqrt_of(&r(5, 1)));
        assert_eq!(p.total, RootSum::sqrt_of(&r(5, 1)) + rs(3, 1));
    }

    #[test]
    fn region_parts_add_up() {
        let cx = intervals(&[(0, 1), (1, 2), (1, 1)]);
        let v = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1)), Some(r(2, 1))]);
        let left = Region::new([0], [0, 1]);
        let right = Region::new([1], [2]);
        let a = perimeter_formula(FormulaArgs::F { v: &v }, Some(&left)).unwrap();
        let b = perimeter_formula(FormulaArgs::F { v: &v }, Some(&right)).unwrap();
        assert_eq!(a.total + b.total, rs(6, 1));
    }

    #[test]
    fn rejects_bad_inputs() {
        let cx = intervals(&[(0, 1), (1, 1)]);
        let v = PwAffineField::piecewise_constant(&cx, &[Some(r(-1, 1))]);
        assert!(perimeter_formula(FormulaArgs::F { v: &v }, None).is_err());
        assert!("X".parse::<Mode>().is_err());
    }
}
