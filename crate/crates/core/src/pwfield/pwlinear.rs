//! Continuous piecewise-linear functions on the facet parameter `τ ∈ [0,1]`
//! and closed sub-portions of `[0,1]`.

use std::cmp::Ordering;

use crate::numeric::{max_s, min_s, sort_dedup, Scalar};

/// Finite union of closed sub-intervals of `[0,1]`, possibly degenerate.
#[derive(Clone, Debug, PartialEq)]
pub struct Portion<S> {
    parts: Vec<(S, S)>,
}

/// Coarse shape of a portion, for reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PortionKind {
    Empty,
    Null,
    Partial,
    Whole,
}

impl<S: Scalar> Portion<S> {
    pub fn empty() -> Self {
        Portion { parts: Vec::new() }
    }

    pub fn whole() -> Self {
        Portion { parts: vec![(S::zero(), S::one())] }
    }

    pub fn point(t: S) -> Self {
        Portion { parts: vec![(t.clone(), t)] }
    }

    /// Normalizes arbitrary intervals: clamps to `[0,1]`, sorts, merges.
    pub fn from_parts(mut raw: Vec<(S, S)>) -> Self {
        raw.retain(|(a, b)| a.cmp_tol(b) != Ordering::Greater);
        for (a, b) in raw.iter_mut() {
            *a = max_s(a, &S::zero());
            *b = min_s(b, &S::one());
        }
        raw.retain(|(a, b)| a.cmp_tol(b) != Ordering::Greater);
        raw.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));
        let mut parts: Vec<(S, S)> = Vec::new();
        for (a, b) in raw {
            if let Some(last) = parts.last_mut() {
                if a.cmp_tol(&last.1) != Ordering::Greater {
                    last.1 = max_s(&last.1, &b);
                    continue;
                }
            }
            parts.push((a, b));
        }
        Portion { parts }
    }

    pub fn parts(&self) -> &[(S, S)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Parameter measure, in `[0,1]`.
    pub fn measure(&self) -> S {
        self.parts
            .iter()
            .fold(S::zero(), |acc, (a, b)| acc + b.clone() - a.clone())
    }

    pub fn is_null(&self) -> bool {
        self.measure().is_zero_tol()
    }

    /// Covers `[0,1]` up to a null set.
    pub fn is_whole(&self) -> bool {
        (S::one() - self.measure()).is_zero_tol()
    }

    pub fn kind(&self) -> PortionKind {
        if self.is_empty() {
            PortionKind::Empty
        } else if self.is_whole() {
            PortionKind::Whole
        } else if self.is_null() {
            PortionKind::Null
        } else {
            PortionKind::Partial
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        Portion::from_parts(self.parts.iter().chain(&other.parts).cloned().collect())
    }

    /// Closure of the complement, keeping only gaps of positive length.
    pub fn complement(&self) -> Self {
        let mut gaps = Vec::new();
        let mut cursor = S::zero();
        for (a, b) in &self.parts {
            if a.cmp_tol(&cursor) == Ordering::Greater {
                gaps.push((cursor.clone(), a.clone()));
            }
            cursor = max_s(&cursor, b);
        }
        if S::one().cmp_tol(&cursor) == Ordering::Greater {
            gaps.push((cursor, S::one()));
        }
        Portion { parts: gaps }
    }

    pub fn contains(&self, t: &S) -> bool {
        self.parts.iter().any(|(a, b)| {
            a.cmp_tol(t) != Ordering::Greater && t.cmp_tol(b) != Ordering::Greater
        })
    }
}

/// Continuous piecewise-linear function on `[0,1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PwLinear<S> {
    knots: Vec<S>,
    values: Vec<S>,
}

impl<S: Scalar> PwLinear<S> {
    pub fn affine(at0: S, at1: S) -> Self {
        PwLinear { knots: vec![S::zero(), S::one()], values: vec![at0, at1] }
    }

    pub fn constant(c: S) -> Self {
        PwLinear::affine(c.clone(), c)
    }

    pub fn knots(&self) -> &[S] {
        &self.knots
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn eval(&self, t: &S) -> S {
        let n = self.knots.len();
        let i = match self.knots.iter().position(|k| k > t) {
            Some(0) => return self.values[0].clone(),
            Some(i) => i - 1,
            None => return self.values[n - 1].clone(),
        };
        let (t0, t1) = (&self.knots[i], &self.knots[i + 1]);
        let (v0, v1) = (&self.values[i], &self.values[i + 1]);
        let w = (t.clone() - t0.clone()) / (t1.clone() - t0.clone());
        v0.clone() + (v1.clone() - v0.clone()) * w
    }

    fn merged_knots(&self, other: &Self) -> Vec<S> {
        let mut knots: Vec<S> = self.knots.iter().chain(&other.knots).cloned().collect();
        sort_dedup(&mut knots);
        knots
    }

    fn combine(&self, other: &Self, crossings: bool, op: impl Fn(&S, &S) -> S) -> Self {
        let mut knots = self.merged_knots(other);
        if crossings {
            let mut extra = Vec::new();
            for w in knots.windows(2) {
                let d0 = self.eval(&w[0]) - other.eval(&w[0]);
                let d1 = self.eval(&w[1]) - other.eval(&w[1]);
                let opposite = (d0.is_negative_tol() && d1.is_positive_tol())
                    || (d0.is_positive_tol() && d1.is_negative_tol());
                if opposite {
                    let s = d0.clone() / (d0 - d1);
                    extra.push(w[0].clone() + (w[1].clone() - w[0].clone()) * s);
                }
            }
            knots.extend(extra);
            sort_dedup(&mut knots);
        }
        let values = knots
            .iter()
            .map(|t| op(&self.eval(t), &other.eval(t)))
            .collect();
        PwLinear { knots, values }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, false, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        PwLinear {
            knots: self.knots.clone(),
            values: self.values.iter().map(|v| v.clone() * k.clone()).collect(),
        }
    }

    pub fn max(&self, other: &Self) -> Self {
        self.combine(other, true, max_s)
    }

    pub fn min(&self, other: &Self) -> Self {
        self.combine(other, true, min_s)
    }

    pub fn abs(&self) -> Self {
        self.max(&self.scale(&-S::one()))
    }

    /// `∫_a^b f dτ`.
    pub fn integral_between(&self, a: &S, b: &S) -> S {
        if a.cmp_tol(b) != Ordering::Less {
            return S::zero();
        }
        let mut pts = vec![a.clone()];
        pts.extend(self.knots.iter().filter(|k| *k > a && *k < b).cloned());
        pts.push(b.clone());
        let mut acc = S::zero();
        for w in pts.windows(2) {
            let avg = (self.eval(&w[0]) + self.eval(&w[1])).half();
            acc = acc + avg * (w[1].clone() - w[0].clone());
        }
        acc
    }

    pub fn integral(&self) -> S {
        self.integral_between(&S::zero(), &S::one())
    }

    pub fn integral_over(&self, portion: &Portion<S>) -> S {
        portion
            .parts()
            .iter()
            .fold(S::zero(), |acc, (a, b)| acc + self.integral_between(a, b))
    }

    /// Minimum over a closed portion; `None` when the portion is empty.
    pub fn min_over(&self, portion: &Portion<S>) -> Option<S> {
        let mut best: Option<S> = None;
        for (a, b) in portion.parts() {
            let candidates = std::iter::once(a.clone())
                .chain(self.knots.iter().filter(|k| *k > a && *k < b).cloned())
                .chain(std::iter::once(b.clone()));
            for t in candidates {
                let v = self.eval(&t);
                best = Some(match best {
                    Some(m) if m <= v => m,
                    _ => v,
                });
            }
        }
        best
    }

    pub fn min_value(&self) -> S {
        self.min_over(&Portion::whole()).expect("non-empty")
    }

    pub fn max_value(&self) -> S {
        self.scale(&-S::one()).min_value() * -S::one()
    }

    /// Closure of `{f > level}`.
    pub fn superlevel(&self, level: &S) -> Portion<S> {
        let g: Vec<S> = self.values.iter().map(|v| v.clone() - level.clone()).collect();
        let mut parts = Vec::new();
        for i in 0..self.knots.len() - 1 {
            let (t0, t1) = (&self.knots[i], &self.knots[i + 1]);
            let (g0, g1) = (&g[i], &g[i + 1]);
            let root = || t0.clone() + (t1.clone() - t0.clone()) * (g0.clone() / (g0.clone() - g1.clone()));
            match (g0.is_positive_tol(), g1.is_positive_tol()) {
                (true, true) => parts.push((t0.clone(), t1.clone())),
                (true, false) => {
                    let end = if g1.is_negative_tol() { root() } else { t1.clone() };
                    parts.push((t0.clone(), end));
                }
                (false, true) => {
                    let start = if g0.is_negative_tol() { root() } else { t0.clone() };
                    parts.push((start, t1.clone()));
                }
                (false, false) => {}
            }
        }
        Portion::from_parts(parts)
    }

    /// `{f = 0}` for a function that is `≥ 0` up to tolerance.
    pub fn zero_set(&self) -> Portion<S> {
        let mut parts = Vec::new();
        for i in 0..self.knots.len() {
            if self.values[i].is_zero_tol() {
                parts.push((self.knots[i].clone(), self.knots[i].clone()));
                if i + 1 < self.knots.len() && self.values[i + 1].is_zero_tol() {
                    parts.push((self.knots[i].clone(), self.knots[i + 1].clone()));
                }
            }
        }
        Portion::from_parts(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn max_inserts_crossing() {
        let f = PwLinear::affine(r(0, 1), r(1, 1));
        let g = PwLinear::affine(r(1, 1), r(0, 1));
        let m = f.max(&g);
        assert_eq!(m.knots(), &[r(0, 1), r(1, 2), r(1, 1)]);
        assert_eq!(m.integral(), r(3, 4));
        assert_eq!(f.sub(&g).abs().integral(), r(1, 2));
    }

    #[test]
    fn zero_and_superlevel_sets() {
        let f = PwLinear::affine(r(1, 1), r(0, 1));
        assert_eq!(f.zero_set().parts(), &[(r(1, 1), r(1, 1))]);
        assert!(f.zero_set().is_null());
        assert_eq!(f.superlevel(&r(1, 2)).parts(), &[(r(0, 1), r(1, 2))]);
        assert!(PwLinear::constant(r(0, 1)).zero_set().is_whole());
        assert!(PwLinear::constant(r(2, 1)).zero_set().is_empty());
    }

    #[test]
    fn portion_algebra() {
        let a = Portion::from_parts(vec![(r(0, 1), r(1, 4)), (r(1, 2), r(3, 4))]);
        let b = Portion::from_parts(vec![(r(1, 4), r(1, 2))]);
        assert_eq!(a.complement().parts(), &[(r(1, 4), r(1, 2)), (r(3, 4), r(1, 1))]);
        assert!(a.union(&b).union(&Portion::point(r(1, 1))).complement().parts().len() == 1);
        assert!(!a.union(&b).is_whole());
        assert_eq!(a.union(&b).measure(), r(3, 4));
        assert_eq!(Portion::<Rational>::point(r(1, 2)).kind(), PortionKind::Null);
    }

    #[test]
    fn min_over_portion() {
        let f = PwLinear::affine(r(2, 1), r(0, 1));
        let p = Portion::from_parts(vec![(r(0, 1), r(1, 2))]);
        assert_eq!(f.min_over(&p), Some(r(1, 1)));
        assert_eq!(f.min_over(&Portion::empty()), None);
    }
}
