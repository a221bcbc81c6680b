use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::connectivity::{essentially_disconnects, Components, Selection};
use crate::error::{Error, Result};
use crate::numeric::Scalar;
use crate::polyset::{translate_over_partition, PolyVerticalSet};
use crate::pwfield::{classify_facets, CellId, FacetLabel, PwAffineField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Rigid,
    NonRigid,
    OutOfClass,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Rigid => "rigid",
            Status::NonRigid => "non_rigid",
            Status::OutOfClass => "out_of_class",
        })
    }
}

/// The characterization that settled a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremPath {
    /// Zeros and jumps together do not disconnect the support.
    Sufficient,
    /// Dimension 1: support an interval, `v` continuous and positive inside.
    Planar,
    /// No jumps where `v^∧ > 0`: rigid iff `F[v]` is indecomposable.
    NoVertical,
    /// Crossable-cut search on the cell graph.
    Polyhedral,
    /// Mismatched stairway property.
    Stairway,
}

impl fmt::Display for TheoremPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremPath::Sufficient => "sufficient",
            TheoremPath::Planar => "planar",
            TheoremPath::NoVertical => "no_vertical",
            TheoremPath::Polyhedral => "polyhedral",
            TheoremPath::Stairway => "stairway",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassHint {
    Auto,
    Planar,
    NoVertical,
    Polyhedral,
    Stairway,
}

impl FromStr for ClassHint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(ClassHint::Auto),
            "planar" => Ok(ClassHint::Planar),
            "no-vertical" | "no_vertical" => Ok(ClassHint::NoVertical),
            "polyhedral" => Ok(ClassHint::Polyhedral),
            "stairway" => Ok(ClassHint::Stairway),
            other => Err(Error::InvalidMode(format!("unknown class {other}"))),
        }
    }
}

/// Vertical translation of `F[v]` by `t` over `plus`, identity over `minus`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<S: Scalar> {
    pub plus: Vec<CellId>,
    pub minus: Vec<CellId>,
    /// Offsets of `minus` and `plus`.
    pub offsets: [S; 2],
    /// Smallest jump over the cut where `v^∧ > 0`; `None` when the cut lies
    /// entirely in `{v^∧ = 0}`.
    pub eps: Option<S>,
    pub set: PolyVerticalSet<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RigidityVerdict<S: Scalar> {
    pub status: Status,
    pub path: TheoremPath,
    pub witness: Option<Witness<S>>,
    pub notes: Vec<String>,
}

/// Partition with one constant per part.
#[derive(Clone, Debug, PartialEq)]
pub struct Stairway<S> {
    pub parts: Vec<Vec<CellId>>,
    pub offsets: Vec<S>,
}

fn support_edges<'a, S: Scalar>(
    v: &'a PwAffineField<S>,
    labels: &'a [FacetLabel<S>],
) -> impl Iterator<Item = (CellId, CellId, &'a FacetLabel<S>)> + 'a {
    v.complex().interior_facets().filter_map(move |(id, f)| {
        let (a, b) = (f.left.cell()?, f.right.cell()?);
        (v.in_support(a) && v.in_support(b)).then_some((a, b, &labels[id]))
    })
}

/// Support cells grouped by non-crossable facets; groups sorted by their
/// smallest cell.
pub fn super_nodes<S: Scalar>(v: &PwAffineField<S>, labels: &[FacetLabel<S>]) -> Vec<Vec<CellId>> {
    let mut comps = Components::new(v.support());
    for (a, b, label) in support_edges(v, labels) {
        if !label.crossable() {
            comps.union(a, b);
        }
    }
    comps.groups()
}

/// Minimum of the jump ess-infs over facets joining `plus` to the rest of
/// the support; errors on a non-crossable facet.
fn cut_threshold<S: Scalar>(v: &PwAffineField<S>, labels: &[FacetLabel<S>], plus: &BTreeSet<CellId>) -> Result<Option<S>> {
    let mut eps: Option<S> = None;
    for (a, b, label) in support_edges(v, labels) {
        if plus.contains(&a) == plus.contains(&b) {
            continue;
        }
        if !label.crossable() {
            return Err(Error::NonCrossableCut { facet: label.facet });
        }
        if let Some(e) = &label.jump_essinf {
            eps = Some(match eps {
                Some(m) if m <= *e => m,
                _ => e.clone(),
            });
        }
    }
    Ok(eps)
}

fn translate_cut<S: Scalar>(v: &PwAffineField<S>, plus: &BTreeSet<CellId>, t: &S) -> Result<PolyVerticalSet<S>> {
    let parts: Vec<Option<usize>> = (0..v.complex().cells.len())
        .map(|c| v.in_support(c).then(|| usize::from(plus.contains(&c))))
        .collect();
    translate_over_partition(v, &parts, &[S::zero(), t.clone()])
}

/// Smallest jump ess-inf over the facets leaving `plus`; `None` when every
/// such facet lies in `{v^∧ = 0}`.
pub fn cut_eps<S: Scalar>(v: &PwAffineField<S>, plus: &[CellId]) -> Result<Option<S>> {
    let plus: BTreeSet<CellId> = plus.iter().copied().filter(|c| v.in_support(*c)).collect();
    cut_threshold(v, &classify_facets(v), &plus)
}

/// `E(t)`: `F[v]` lifted by `t` over `plus`.
pub fn construct_witness<S: Scalar>(v: &PwAffineField<S>, plus: &[CellId], t: &S) -> Result<PolyVerticalSet<S>> {
    let support = v.support();
    let plus: BTreeSet<CellId> = plus.iter().copied().filter(|c| v.in_support(*c)).collect();
    if plus.is_empty() || plus.len() == support.len() {
        return Err(Error::NoCut);
    }
    let labels = classify_facets(v);
    if let Some(eps) = cut_threshold(v, &labels, &plus)? {
        if *t > eps.half() || *t < -eps.half() {
            return Err(Error::OffsetTooLarge { t: t.to_string(), eps: eps.to_string() });
        }
    }
    translate_cut(v, &plus, t)
}

fn polyhedral<S: Scalar>(v: &PwAffineField<S>, labels: &[FacetLabel<S>]) -> Result<Option<Witness<S>>> {
    let groups = super_nodes(v, labels);
    if groups.len() < 2 {
        return Ok(None);
    }
    let minus = groups[0].clone();
    let plus: BTreeSet<CellId> = groups[1..].iter().flatten().copied().collect();
    let eps = cut_threshold(v, labels, &plus)?;
    let t = eps.as_ref().map_or(S::one(), |e| e.half());
    let set = translate_cut(v, &plus, &t)?;
    Ok(Some(Witness { plus: plus.into_iter().collect(), minus, offsets: [S::zero(), t], eps, set }))
}

fn planar_rigid<S: Scalar>(v: &PwAffineField<S>, labels: &[FacetLabel<S>]) -> bool {
    let support = v.support();
    let mut comps = Components::new(support.iter().copied());
    for (a, b, label) in support_edges(v, labels) {
        // continuous and positive at the point
        if label.zero_portion.is_empty() && label.jump_portion.is_empty() {
            comps.union(a, b);
        }
    }
    comps.groups().len() == 1
}

/// No facet carries a jump on a non-null part of `{v^∧ > 0}`.
pub fn has_no_vertical_parts<S: Scalar>(v: &PwAffineField<S>) -> bool {
    let labels = classify_facets(v);
    let flat = support_edges(v, &labels).all(|(_, _, label)| {
        let trace = v.trace(label.facet).expect("facet");
        trace.jump().integral_over(&label.positive_portion()).is_zero_tol()
    });
    flat
}

fn sufficient_rigid<S: Scalar>(v: &PwAffineField<S>, labels: &[FacetLabel<S>]) -> Result<bool> {
    let k = Selection::zero_set(labels).union(&Selection::jump_set(labels));
    Ok(!essentially_disconnects(v.complex(), &k, &v.support())?.disconnects)
}

fn no_vertical_rigid<S: Scalar>(v: &PwAffineField<S>, labels: &[FacetLabel<S>]) -> Result<bool> {
    Ok(!essentially_disconnects(v.complex(), &Selection::zero_set(labels), &v.support())?.disconnects)
}

/// Decides whether every equality case for `v` is a vertical translate of
/// `F[v]`.
///
/// The polyhedral decider always runs and supplies the witness; the path
/// named in the verdict is the first applicable characterization in the
/// order sufficient, planar, no-vertical, polyhedral (or the hinted one).
pub fn decide_rigidity<S: Scalar>(v: &PwAffineField<S>, hint: ClassHint) -> Result<RigidityVerdict<S>> {
    if let Err(e) = v.validate_slice_length() {
        return Ok(RigidityVerdict { status: Status::OutOfClass, path: TheoremPath::Polyhedral, witness: None, notes: vec![e.to_string()] });
    }
    if v.support().is_empty() {
        return Err(Error::EmptySelection);
    }
    let labels = classify_facets(v);
    let dim1 = v.dim() == 1;
    let no_vertical = has_no_vertical_parts(v);
    match hint {
        ClassHint::Planar if !dim1 => return Err(Error::InapplicableClass("planar".into())),
        ClassHint::NoVertical if !no_vertical => return Err(Error::InapplicableClass("no-vertical".into())),
        _ => {}
    }
    let witness = polyhedral(v, &labels)?;
    let reference = if witness.is_some() { Status::NonRigid } else { Status::Rigid };
    let as_status = |rigid: bool| if rigid { Status::Rigid } else { Status::NonRigid };
    let mut notes = Vec::new();
    let mut decided: Option<(TheoremPath, Status)> = None;
    let mut consider = |path: TheoremPath, status: Option<Status>, notes: &mut Vec<String>| {
        if let Some(s) = status {
            notes.push(format!("{path}: {s}"));
            if decided.is_none() {
                decided = Some((path, s));
            }
        }
    };
    match hint {
        ClassHint::Auto => {
            let sufficient = sufficient_rigid(v, &labels)?;
            consider(TheoremPath::Sufficient, sufficient.then_some(Status::Rigid), &mut notes);
            if !sufficient {
                notes.push("sufficient: inconclusive".into());
            }
            if dim1 {
                consider(TheoremPath::Planar, Some(as_status(planar_rigid(v, &labels))), &mut notes);
            }
            if no_vertical {
                consider(TheoremPath::NoVertical, Some(as_status(no_vertical_rigid(v, &labels)?)), &mut notes);
            }
        }
        ClassHint::Planar => consider(TheoremPath::Planar, Some(as_status(planar_rigid(v, &labels))), &mut notes),
        ClassHint::NoVertical => {
            consider(TheoremPath::NoVertical, Some(as_status(no_vertical_rigid(v, &labels)?)), &mut notes)
        }
        ClassHint::Stairway => {
            let (msp, _) = mismatched_stairway_check(v)?;
            consider(TheoremPath::Stairway, Some(as_status(msp)), &mut notes)
        }
        ClassHint::Polyhedral => {}
    }
    consider(TheoremPath::Polyhedral, Some(reference), &mut notes);
    let (path, status) = decided.expect("polyhedral always decides");
    if status != reference {
        notes.push(format!("{path} disagrees with the polyhedral decider"));
    }
    Ok(RigidityVerdict {
        status,
        path,
        witness: if status == Status::NonRigid { witness } else { None },
        notes,
    })
}

/// Mismatched stairway property: every facet-aligned partition with
/// distinct constants has an interface where `2|Δc| > [v]` on a non-null
/// part of `{v^∧ > 0}`. Returns a valid (unmismatched) stairway when it
/// fails.
pub fn mismatched_stairway_check<S: Scalar>(v: &PwAffineField<S>) -> Result<(bool, Option<Stairway<S>>)> {
    let labels = classify_facets(v);
    let groups = super_nodes(v, &labels);
    let k = groups.len();
    if k < 2 {
        return Ok((true, None));
    }
    let mut group_of = vec![usize::MAX; v.complex().cells.len()];
    for (g, cells) in groups.iter().enumerate() {
        for &c in cells {
            group_of[c] = g;
        }
    }
    let mut delta: Option<S> = None;
    for (a, b, label) in support_edges(v, &labels) {
        if group_of[a] != group_of[b] {
            if let Some(e) = &label.jump_essinf {
                delta = Some(match delta {
                    Some(m) if m <= *e => m,
                    _ => e.clone(),
                });
            }
        }
    }
    // 2|c_i − c_j| ≤ δ for all i, j
    let step = match delta {
        Some(d) => d / S::from_i64(2 * (k as i64 - 1)),
        None => S::one(),
    };
    let offsets = (0..k).map(|i| step.clone() * S::from_i64(i as i64)).collect();
    Ok((false, Some(Stairway { parts: groups, offsets })))
}

/// Searches all two-part cuts of the support and offsets `kδ`, `0 < |k| ≤ 32`,
/// for an equality case; returns the first `(plus, offset)` found.
pub fn exhaustive_witness_search<S: Scalar>(v: &PwAffineField<S>) -> Result<Option<(Vec<CellId>, S)>> {
    let support = v.support();
    let n = support.len();
    if n < 2 {
        return Ok(None);
    }
    let labels = classify_facets(v);
    let mut min_jump: Option<S> = None;
    for (_, _, label) in support_edges(v, &labels) {
        let jump = v.trace(label.facet)?.jump();
        for val in jump.values() {
            if val.is_positive_tol() && min_jump.as_ref().is_none_or(|m| val < m) {
                min_jump = Some(val.clone());
            }
        }
    }
    let delta = min_jump.unwrap_or_else(S::one) / S::from_i64(8);
    for mask in 1u64..(1u64 << (n - 1)) {
        // The last support cell always stays in `minus`.
        let plus: BTreeSet<CellId> = (0..n - 1).filter(|i| mask >> i & 1 == 1).map(|i| support[i]).collect();
        for k in (-32i64..=32).filter(|k| *k != 0) {
            let t = delta.clone() * S::from_i64(k);
            let e = translate_cut(v, &plus, &t)?;
            let (grad, facets) = super::equality::equality_violations(&e, v)?;
            if grad.is_empty() && facets.is_empty() {
                return Ok(Some((plus.into_iter().collect(), t)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{measures_agree, Rational, RootSum};
    use crate::perimeter::oracle_perimeter;
    use crate::polyset::{min_translate_symdiff, steiner_symmetral};
    use crate::rigidity::{check_equality_case, gallery};

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn v_of(name: &str) -> PwAffineField<Rational> {
        gallery::<Rational>(name, None).unwrap().scene.field("v").unwrap().clone()
    }

    #[test]
    fn step_is_not_rigid() {
        let v = v_of("fig1a");
        let verdict = decide_rigidity(&v, ClassHint::Auto).unwrap();
        assert_eq!(verdict.status, Status::NonRigid);
        assert_eq!(verdict.path, TheoremPath::Planar);
        let w = verdict.witness.unwrap();
        assert_eq!(w.eps, Some(r(1, 1)));
        assert_eq!(w.offsets, [r(0, 1), r(1, 2)]);
        assert_eq!((w.plus.clone(), w.minus.clone()), (vec![1], vec![0]));
        assert_eq!(oracle_perimeter(&w.set), RootSum::rational(r(6, 1)));
        assert!(check_equality_case(&w.set, &v).unwrap().holds);
        assert_eq!(min_translate_symdiff(&w.set, &v).unwrap().1, r(1, 2));
    }

    #[test]
    fn vanishing_cut_allows_any_offset() {
        let v = v_of("fig1b");
        let verdict = decide_rigidity(&v, ClassHint::Auto).unwrap();
        assert_eq!(verdict.status, Status::NonRigid);
        let w = verdict.witness.unwrap();
        assert_eq!(w.eps, None);
        assert_eq!(w.offsets[1], r(1, 1));
        let far = construct_witness(&v, &[1], &r(10, 1)).unwrap();
        let f = steiner_symmetral(&v).unwrap();
        assert!(measures_agree::<Rational>(&oracle_perimeter(&far), &oracle_perimeter(&f), 0.0));
        assert!(check_equality_case(&far, &v).unwrap().holds);
    }

    #[test]
    fn witness_errors() {
        let v = v_of("fig1a");
        assert_eq!(construct_witness(&v, &[0, 1], &r(1, 4)), Err(Error::NoCut));
        assert!(matches!(construct_witness(&v, &[1], &r(3, 4)), Err(Error::OffsetTooLarge { .. })));
        let casetta = v_of("casetta");
        assert!(matches!(construct_witness(&casetta, &[1], &r(1, 4)), Err(Error::NonCrossableCut { .. })));
    }

    #[test]
    fn rigid_cases() {
        for name in ["casetta", "salsicciotto"] {
            let v = v_of(name);
            let verdict = decide_rigidity(&v, ClassHint::Auto).unwrap();
            assert_eq!(verdict.status, Status::Rigid, "{name}");
            assert!(verdict.witness.is_none());
            assert_eq!(exhaustive_witness_search(&v).unwrap(), None, "{name}");
        }
        let salsicciotto = v_of("salsicciotto");
        assert!(has_no_vertical_parts(&salsicciotto));
        assert_eq!(decide_rigidity(&salsicciotto, ClassHint::Auto).unwrap().path, TheoremPath::Sufficient);
        let hinted = decide_rigidity(&salsicciotto, ClassHint::NoVertical).unwrap();
        assert_eq!((hinted.status, hinted.path), (Status::Rigid, TheoremPath::NoVertical));
        assert!(matches!(
            decide_rigidity(&salsicciotto, ClassHint::Planar),
            Err(Error::InapplicableClass(_))
        ));
        assert!(matches!(
            decide_rigidity(&v_of("casetta"), ClassHint::NoVertical),
            Err(Error::InapplicableClass(_))
        ));
    }

    #[test]
    fn stairway() {
        let (msp, stairs) = mismatched_stairway_check(&v_of("fig1a")).unwrap();
        assert!(!msp);
        assert_eq!(stairs.unwrap().offsets, vec![r(0, 1), r(1, 2)]);
        assert_eq!(mismatched_stairway_check(&v_of("casetta")).unwrap(), (true, None));
        let hinted = decide_rigidity(&v_of("fig1a"), ClassHint::Stairway).unwrap();
        assert_eq!((hinted.status, hinted.path), (Status::NonRigid, TheoremPath::Stairway));
    }

    #[test]
    fn out_of_class() {
        let v = v_of("fig1a").scale(&r(-1, 1));
        assert_eq!(decide_rigidity(&v, ClassHint::Auto).unwrap().status, Status::OutOfClass);
    }

    #[test]
    fn exhaustive_finds_step_cut() {
        let (plus, t) = exhaustive_witness_search(&v_of("fig1a")).unwrap().unwrap();
        assert_eq!(plus, vec![0]);
        assert_eq!(t, r(-1, 2));
    }
}
