//! Essential disconnection reduced to cuts of the cell adjacency graph.
//!
//! A union of facet portions `K` essentially disconnects a union of cells
//! `G` when some nontrivial partition of `G` has its whole interface inside
//! `K` up to a null set. Cells are convex, so no facet union can split a
//! single cell, and it suffices to look at partitions into unions of cells:
//! drop the facets `K` covers and ask whether the rest still connects `G`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::numeric::Scalar;
use crate::pwfield::{classify_facets, BaseCellComplex, CellId, FacetLabel, Portion, PwAffineField};

/// Per-facet portions; absent facets carry the empty portion.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Selection<S> {
    portions: BTreeMap<usize, Portion<S>>,
}

impl<S: Scalar> Selection<S> {
    pub fn new() -> Self {
        Selection { portions: BTreeMap::new() }
    }

    pub fn insert(&mut self, facet: usize, portion: Portion<S>) {
        let merged = match self.portions.get(&facet) {
            Some(old) => old.union(&portion),
            None => portion,
        };
        self.portions.insert(facet, merged);
    }

    pub fn with(mut self, facet: usize, portion: Portion<S>) -> Self {
        self.insert(facet, portion);
        self
    }

    pub fn get(&self, facet: usize) -> Option<&Portion<S>> {
        self.portions.get(&facet)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Portion<S>)> {
        self.portions.iter()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (f, p) in &other.portions {
            out.insert(*f, p.clone());
        }
        out
    }

    /// The facet is covered up to a null set.
    pub fn covers(&self, facet: usize) -> bool {
        self.portions.get(&facet).is_some_and(|p| p.is_whole())
    }

    /// `{v^∧ = 0}` on every facet.
    pub fn zero_set(labels: &[FacetLabel<S>]) -> Self {
        let mut s = Selection::new();
        for l in labels {
            s.insert(l.facet, l.zero_portion.clone());
        }
        s
    }

    /// Closure of `{[v] > 0}` on every facet.
    pub fn jump_set(labels: &[FacetLabel<S>]) -> Self {
        let mut s = Selection::new();
        for l in labels {
            s.insert(l.facet, l.jump_portion.clone());
        }
        s
    }

    /// Closure of `{[v] > ε}` on every facet.
    pub fn jump_above(v: &PwAffineField<S>, eps: &S) -> Self {
        let mut s = Selection::new();
        for t in v.traces() {
            s.insert(t.facet, t.jump().superlevel(eps));
        }
        s
    }
}

/// Support cells with their measures and interior support facets with their
/// classification.
#[derive(Clone, Debug)]
pub struct AdjacencyGraph<S: Scalar> {
    pub nodes: Vec<(CellId, S)>,
    pub edges: Vec<Edge<S>>,
}

#[derive(Clone, Debug)]
pub struct Edge<S: Scalar> {
    pub facet: usize,
    pub ends: (CellId, CellId),
    pub measure: S::Measure,
    pub label: FacetLabel<S>,
}

impl<S: Scalar> AdjacencyGraph<S> {
    pub fn from_field(v: &PwAffineField<S>) -> Self {
        let cx = v.complex();
        let nodes = v.support().into_iter().map(|c| (c, cx.cells[c].region.measure())).collect();
        let labels = classify_facets(v);
        let edges = cx
            .interior_facets()
            .filter_map(|(id, f)| {
                let (a, b) = (f.left.cell()?, f.right.cell()?);
                (v.in_support(a) && v.in_support(b)).then(|| Edge {
                    facet: id,
                    ends: (a, b),
                    measure: f.measure.clone(),
                    label: labels[id].clone(),
                })
            })
            .collect();
        AdjacencyGraph { nodes, edges }
    }
}

/// Union-find over a fixed node set.
pub(crate) struct Components {
    parent: BTreeMap<CellId, CellId>,
}

impl Components {
    pub(crate) fn new(nodes: impl IntoIterator<Item = CellId>) -> Self {
        Components { parent: nodes.into_iter().map(|c| (c, c)).collect() }
    }

    pub(crate) fn find(&mut self, c: CellId) -> CellId {
        let p = self.parent[&c];
        if p == c {
            return c;
        }
        let root = self.find(p);
        self.parent.insert(c, root);
        root
    }

    pub(crate) fn union(&mut self, a: CellId, b: CellId) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent.insert(hi, lo);
        }
    }

    /// Groups sorted by smallest member.
    pub(crate) fn groups(&mut self) -> Vec<Vec<CellId>> {
        let nodes: Vec<CellId> = self.parent.keys().copied().collect();
        let mut by_root: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
        for c in nodes {
            let r = self.find(c);
            by_root.entry(r).or_default().push(c);
        }
        let mut groups: Vec<Vec<CellId>> = by_root.into_values().collect();
        groups.sort();
        groups
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disconnection {
    pub disconnects: bool,
    /// `(G_+, G_-)`; `G_-` is the component holding the smallest cell id.
    pub witness: Option<(Vec<CellId>, Vec<CellId>)>,
}

/// Does `k` essentially disconnect the union of `cells`?
pub fn essentially_disconnects<S: Scalar>(
    complex: &BaseCellComplex<S>,
    k: &Selection<S>,
    cells: &[CellId],
) -> Result<Disconnection> {
    if cells.is_empty() {
        return Err(Error::EmptySelection);
    }
    let set: BTreeSet<CellId> = cells.iter().copied().collect();
    let mut comps = Components::new(set.iter().copied());
    for (id, f) in complex.interior_facets() {
        let (Some(a), Some(b)) = (f.left.cell(), f.right.cell()) else { continue };
        if set.contains(&a) && set.contains(&b) && !k.covers(id) {
            comps.union(a, b);
        }
    }
    let groups = comps.groups();
    if groups.len() < 2 {
        return Ok(Disconnection { disconnects: false, witness: None });
    }
    let minus = groups[0].clone();
    let plus: Vec<CellId> = groups[1..].iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    Ok(Disconnection { disconnects: true, witness: Some((plus, minus)) })
}

/// Is `F[v]` indecomposable?
///
/// Decided from the walls of `F[v]` itself: two support cells are glued when
/// the vertical wall over their common facet, `∫ min(v_left, v_right)`, has
/// positive area, and `F[v]` is indecomposable iff the glued graph is
/// connected.
pub fn is_indecomposable_f<S: Scalar>(v: &PwAffineField<S>) -> Result<bool> {
    let support = v.support();
    if support.is_empty() {
        return Err(Error::EmptySelection);
    }
    let mut comps = Components::new(support.iter().copied());
    for (id, f) in v.complex().interior_facets() {
        let (Some(a), Some(b)) = (f.left.cell(), f.right.cell()) else { continue };
        if v.in_support(a) && v.in_support(b) && v.trace(id)?.lower().integral().is_positive_tol() {
            comps.union(a, b);
        }
    }
    Ok(comps.groups().len() == 1)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::geometry::{Affine, ConvexRegion};
    use crate::numeric::Rational;
    use crate::pwfield::CellSpec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn two_squares() -> Arc<BaseCellComplex<Rational>> {
        let sq = |x0: i64| {
            ConvexRegion::Polygon(vec![[r(x0, 1), r(0, 1)], [r(x0 + 1, 1), r(0, 1)], [r(x0 + 1, 1), r(1, 1)], [r(x0, 1), r(1, 1)]])
        };
        Arc::new(BaseCellComplex::build(2, vec![CellSpec::new("a", sq(0)), CellSpec::new("b", sq(1))]).unwrap())
    }

    #[test]
    fn full_facet_disconnects() {
        let cx = two_squares();
        let (id, _) = cx.interior_facets().next().unwrap();
        let k = Selection::new().with(id, Portion::whole());
        let d = essentially_disconnects(&cx, &k, &[0, 1]).unwrap();
        assert!(d.disconnects);
        assert_eq!(d.witness, Some((vec![1], vec![0])));
        let none = essentially_disconnects(&cx, &Selection::new(), &[0, 1]).unwrap();
        assert!(!none.disconnects);
    }

    #[test]
    fn half_facet_does_not_disconnect() {
        let cx = two_squares();
        let (id, _) = cx.interior_facets().next().unwrap();
        let k = Selection::new().with(id, Portion::from_parts(vec![(r(0, 1), r(1, 2))]));
        assert!(!essentially_disconnects(&cx, &k, &[0, 1]).unwrap().disconnects);
        assert_eq!(essentially_disconnects(&cx, &k, &[]), Err(Error::EmptySelection));
    }

    #[test]
    fn indecomposability() {
        let line = Arc::new(
            BaseCellComplex::build(
                1,
                vec![
                    CellSpec::new("l", ConvexRegion::Interval(r(0, 1), r(1, 2))),
                    CellSpec::new("r", ConvexRegion::Interval(r(1, 2), r(1, 1))),
                ],
            )
            .unwrap(),
        );
        let one = PwAffineField::piecewise_constant(&line, &[Some(r(1, 1)), Some(r(1, 1))]);
        assert!(is_indecomposable_f(&one).unwrap());
        // 2|z − 1/2|: the zero at the midpoint splits F[v].
        let vee = PwAffineField::from_fn(&line, |c| {
            Some(if c == 0 { Affine::new(vec![r(-2, 1)], r(1, 1)) } else { Affine::new(vec![r(2, 1)], r(-1, 1)) })
        });
        assert!(!is_indecomposable_f(&vee).unwrap());
        let labels = classify_facets(&vee);
        let d = essentially_disconnects(&line, &Selection::zero_set(&labels), &vee.support()).unwrap();
        assert!(d.disconnects);
        // Tapered plane field vanishing at one point of the facet only.
        let cx = two_squares();
        let taper = PwAffineField::from_fn(&cx, |c| {
            Some(if c == 0 { Affine::constant(2, r(1, 1)) } else { Affine::new(vec![r(0, 1), r(1, 1)], r(0, 1)) })
        });
        assert!(is_indecomposable_f(&taper).unwrap());
    }
}
