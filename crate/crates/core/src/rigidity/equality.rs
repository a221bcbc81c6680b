use crate::error::Result;
use crate::numeric::Scalar;
use crate::perimeter::{perimeter_formula, FormulaArgs};
use crate::polyset::{check_v_distributed, PolyVerticalSet};
use crate::pwfield::{label_from_trace, CellId, PwAffineField};

#[derive(Clone, Debug, PartialEq)]
pub struct EqualityReport<S: Scalar> {
    pub holds: bool,
    /// Support cells where the barycenter is not constant.
    pub gradient_violations: Vec<CellId>,
    /// Facets where `2[b] > [v]` on a non-null part of `{v^∧ > 0}`.
    pub facet_violations: Vec<usize>,
    pub perimeter_e: S::Measure,
    pub perimeter_f: S::Measure,
}

/// Is `E` an equality case of the Steiner inequality for `v`?
///
/// Checks that the barycenter has zero gradient on every support cell and
/// that `2[b] ≤ [v]` along every facet wherever `v^∧ > 0`; both perimeters are
/// reported for comparison.
pub fn check_equality_case<S: Scalar>(e: &PolyVerticalSet<S>, v: &PwAffineField<S>) -> Result<EqualityReport<S>> {
    let (gradient_violations, facet_violations) = equality_violations(e, v)?;
    let b = e.barycenter();
    let perimeter_e = perimeter_formula(FormulaArgs::W { v, b: &b }, None)?.total;
    let perimeter_f = perimeter_formula(FormulaArgs::F { v }, None)?.total;
    Ok(EqualityReport {
        holds: gradient_violations.is_empty() && facet_violations.is_empty(),
        gradient_violations,
        facet_violations,
        perimeter_e,
        perimeter_f,
    })
}

/// The conditions alone, without the perimeters.
pub(crate) fn equality_violations<S: Scalar>(e: &PolyVerticalSet<S>, v: &PwAffineField<S>) -> Result<(Vec<CellId>, Vec<usize>)> {
    check_v_distributed(e, v)?;
    let b = e.barycenter();
    let gradient_violations: Vec<CellId> = v
        .support()
        .into_iter()
        .filter(|&c| !b.piece(c).expect("support").is_constant())
        .collect();
    let mut facet_violations = Vec::new();
    let two = S::from_i64(2);
    for (id, f) in v.complex().interior_facets() {
        let both = f.sides().iter().all(|s| s.cell().is_some_and(|c| v.in_support(c)));
        if !both {
            continue;
        }
        let vt = v.trace(id)?;
        let label = label_from_trace(&vt);
        let positive = label.positive_portion();
        if positive.is_null() {
            continue;
        }
        let slack = vt.jump().sub(&b.trace(id)?.jump().scale(&two));
        if slack.min_over(&positive).is_some_and(|m| m.is_negative_tol()) {
            facet_violations.push(id);
        }
    }
    Ok((gradient_violations, facet_violations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Rational, RootSum};
    use crate::polyset::{prop14_construct, steiner_symmetral};
    use crate::rigidity::gallery;

    #[test]
    fn lifted_step_fails() {
        let v = gallery::<Rational>("fig1a", None).unwrap().scene.field("v").unwrap().clone();
        let lifted = crate::polyset::translate_over_partition(&v, &[Some(0), Some(1)], &[Rational::zero(), Rational::one()]).unwrap();
        let report = check_equality_case(&lifted, &v).unwrap();
        assert!(!report.holds);
        assert_eq!(report.facet_violations.len(), 1);
        assert_eq!(report.perimeter_e, RootSum::rational(Rational::from_i64(7)));
        assert_eq!(report.perimeter_f, RootSum::rational(Rational::from_i64(6)));
        assert!(check_equality_case(&steiner_symmetral(&v).unwrap(), &v).unwrap().holds);
    }

    #[test]
    fn sheared_barycenter_fails() {
        let v = gallery::<Rational>("fig1a", None).unwrap().scene.field("v").unwrap().clone();
        let b = PwAffineField::from_fn(v.complex(), |_| Some(crate::geometry::Affine::new(vec![Rational::one()], Rational::zero())));
        let e = crate::polyset::build_w(&v, &b).unwrap();
        assert_eq!(check_equality_case(&e, &v).unwrap().gradient_violations, vec![0, 1]);
    }

    #[test]
    fn two_field_construction_passes() {
        let v = gallery::<Rational>("fig1a", None).unwrap().scene.field("v").unwrap().clone();
        let zero = v.scale(&Rational::zero());
        let e = prop14_construct(&zero, &v, &Rational::ratio(1, 3)).unwrap();
        let report = check_equality_case(&e, &v).unwrap();
        assert!(report.holds);
        assert_eq!(report.perimeter_e, report.perimeter_f);
    }
}
