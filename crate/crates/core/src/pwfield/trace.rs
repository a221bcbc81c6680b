use crate::numeric::Scalar;

use super::field::PwAffineField;
use super::pwlinear::{Portion, PwLinear};

/// One-sided traces of a field along a facet, as functions of `τ ∈ [0,1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetTrace<S> {
    pub facet: usize,
    pub left: PwLinear<S>,
    pub right: PwLinear<S>,
}

impl<S: Scalar> FacetTrace<S> {
    /// `v^∨`
    pub fn upper(&self) -> PwLinear<S> {
        self.left.max(&self.right)
    }

    /// `v^∧`
    pub fn lower(&self) -> PwLinear<S> {
        self.left.min(&self.right)
    }

    /// `[v]`
    pub fn jump(&self) -> PwLinear<S> {
        self.left.sub(&self.right).abs()
    }

    /// `ũ = (u^∨ + u^∧)/2`, the average of the two traces.
    pub fn average(&self) -> PwLinear<S> {
        self.left.add(&self.right).scale(&S::one().half())
    }
}

/// Facet classification of a slice-length field.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetLabel<S> {
    pub facet: usize,
    /// Where `v^∧ = 0`.
    pub zero_portion: Portion<S>,
    /// Closure of `{[v] > 0}`.
    pub jump_portion: Portion<S>,
    /// Infimum of `[v]` over the closed portion where `v^∧ > 0`; `None`
    /// stands for `+∞` (that portion is null).
    pub jump_essinf: Option<S>,
}

impl<S: Scalar> FacetLabel<S> {
    /// Offsetting one side vertically can keep the perimeter: the jump has a
    /// positive lower bound wherever both traces are positive.
    pub fn crossable(&self) -> bool {
        self.jump_essinf.as_ref().is_none_or(|e| e.is_positive_tol())
    }

    /// Closure of `{v^∧ > 0}`.
    pub fn positive_portion(&self) -> Portion<S> {
        self.zero_portion.complement()
    }

    /// Closure of `{[v] > level}`.
    pub fn jump_above(&self, trace: &FacetTrace<S>, level: &S) -> Portion<S> {
        trace.jump().superlevel(level)
    }
}

pub fn label_from_trace<S: Scalar>(trace: &FacetTrace<S>) -> FacetLabel<S> {
    let zero_portion = trace.lower().zero_set();
    let jump = trace.jump();
    let jump_portion = jump.superlevel(&S::zero());
    let positive = zero_portion.complement();
    let jump_essinf = if positive.is_null() { None } else { jump.min_over(&positive) };
    FacetLabel { facet: trace.facet, zero_portion, jump_portion, jump_essinf }
}

pub fn classify_facets<S: Scalar>(v: &PwAffineField<S>) -> Vec<FacetLabel<S>> {
    v.traces().iter().map(label_from_trace).collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::geometry::{Affine, ConvexRegion};
    use crate::numeric::Rational;
    use crate::pwfield::complex::{BaseCellComplex, CellSpec, FacetShape};

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn step() -> PwAffineField<Rational> {
        let cx = Arc::new(
            BaseCellComplex::build(
                1,
                vec![
                    CellSpec::new("l", ConvexRegion::Interval(r(0, 1), r(1, 2))),
                    CellSpec::new("r", ConvexRegion::Interval(r(1, 2), r(1, 1))),
                ],
            )
            .unwrap(),
        );
        PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1)), Some(r(2, 1))])
    }

    fn casetta() -> PwAffineField<Rational> {
        let sq = |x0: Rational, x1: Rational| {
            ConvexRegion::Polygon(vec![
                [x0.clone(), r(0, 1)],
                [x1.clone(), r(0, 1)],
                [x1, r(1, 1)],
                [x0, r(1, 1)],
            ])
        };
        let cx = Arc::new(
            BaseCellComplex::build(
                2,
                vec![CellSpec::new("l", sq(r(0, 1), r(1, 2))), CellSpec::new("r", sq(r(1, 2), r(1, 1)))],
            )
            .unwrap(),
        );
        PwAffineField::from_fn(&cx, |c| {
            Some(if c == 0 {
                Affine::constant(2, r(1, 1))
            } else {
                Affine::new(vec![r(0, 1), r(1, 1)], r(0, 1))
            })
        })
    }

    #[test]
    fn step_traces() {
        let v = step();
        let mid = v.complex().facets.iter().position(|f| f.shape == FacetShape::Point(r(1, 2))).unwrap();
        let t = v.trace(mid).unwrap();
        assert_eq!(t.lower(), PwLinear::constant(r(1, 1)));
        assert_eq!(t.upper(), PwLinear::constant(r(2, 1)));
        assert_eq!(t.jump(), PwLinear::constant(r(1, 1)));
        let t0 = v.trace(0).unwrap();
        assert_eq!((t0.lower(), t0.upper()), (PwLinear::constant(r(0, 1)), PwLinear::constant(r(1, 1))));
        let label = label_from_trace(&t);
        assert!(label.zero_portion.is_empty());
        assert!(label.jump_portion.is_whole());
        assert_eq!(label.jump_essinf, Some(r(1, 1)));
        assert!(label.crossable());
        assert!(v.trace(99).is_err());
    }

    #[test]
    fn tapered_facet() {
        let v = casetta();
        let (id, f) = v.complex().interior_facets().next().unwrap();
        assert_eq!(f.endpoints(), [vec![r(1, 2), r(0, 1)], vec![r(1, 2), r(1, 1)]]);
        let t = v.trace(id).unwrap();
        assert_eq!(t.jump(), PwLinear::affine(r(1, 1), r(0, 1)));
        assert_eq!(t.lower(), PwLinear::affine(r(0, 1), r(1, 1)));
        let label = label_from_trace(&t);
        assert_eq!(label.zero_portion.parts(), &[(r(0, 1), r(0, 1))]);
        assert!(label.zero_portion.is_null());
        assert_eq!(label.jump_essinf, Some(r(0, 1)));
        assert!(!label.crossable());
    }

    #[test]
    fn equal_sides_have_no_jump() {
        let v = step();
        let flat = v.restrict(|_| true).lin_comb(&r(0, 1), &v, &r(0, 1)).unwrap();
        let ones = PwAffineField::piecewise_constant(flat.complex(), &[Some(r(1, 1)), Some(r(1, 1))]);
        let label = &classify_facets(&ones)[1];
        assert!(label.jump_portion.is_empty());
        assert_eq!(label.jump_essinf, Some(r(0, 1)));
    }
}
