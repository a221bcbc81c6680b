use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::Affine;
use crate::numeric::Scalar;

use super::complex::{BaseCellComplex, CellId, Side};
use super::pwlinear::PwLinear;
use super::trace::FacetTrace;

/// Piecewise-affine function on a complex, zero off its support cells.
#[derive(Clone, Debug)]
pub struct PwAffineField<S: Scalar> {
    complex: Arc<BaseCellComplex<S>>,
    pieces: Vec<Option<Affine<S>>>,
}

impl<S: Scalar> PartialEq for PwAffineField<S> {
    fn eq(&self, other: &Self) -> bool {
        self.same_complex(other) && self.pieces == other.pieces
    }
}

impl<S: Scalar> PwAffineField<S> {
    pub fn new(complex: Arc<BaseCellComplex<S>>, pieces: Vec<Option<Affine<S>>>) -> Result<Self> {
        if pieces.len() != complex.cells.len() {
            return Err(Error::InvalidMode(format!(
                "field has {} pieces for {} cells",
                pieces.len(),
                complex.cells.len()
            )));
        }
        for (c, p) in pieces.iter().enumerate() {
            if let Some(p) = p {
                if p.grad.len() != complex.dim {
                    return Err(Error::GradientArity {
                        field: String::new(),
                        cell: complex.cells[c].name.clone(),
                        got: p.grad.len(),
                        expected: complex.dim,
                    });
                }
            }
        }
        Ok(PwAffineField { complex, pieces })
    }

    pub fn from_fn(complex: &Arc<BaseCellComplex<S>>, f: impl Fn(CellId) -> Option<Affine<S>>) -> Self {
        let pieces = (0..complex.cells.len()).map(f).collect();
        PwAffineField::new(complex.clone(), pieces).expect("pieces built with complex arity")
    }

    /// Constant `values[c]` on each cell with `Some` value.
    pub fn piecewise_constant(complex: &Arc<BaseCellComplex<S>>, values: &[Option<S>]) -> Self {
        let dim = complex.dim;
        PwAffineField::from_fn(complex, |c| values[c].clone().map(|v| Affine::constant(dim, v)))
    }

    pub fn complex(&self) -> &Arc<BaseCellComplex<S>> {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.complex.dim
    }

    pub fn piece(&self, cell: CellId) -> Option<&Affine<S>> {
        self.pieces.get(cell).and_then(|p| p.as_ref())
    }

    pub fn pieces(&self) -> &[Option<Affine<S>>] {
        &self.pieces
    }

    pub fn in_support(&self, cell: CellId) -> bool {
        self.piece(cell).is_some()
    }

    pub fn support(&self) -> Vec<CellId> {
        (0..self.pieces.len()).filter(|&c| self.in_support(c)).collect()
    }

    pub fn same_complex(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.complex, &other.complex) || *self.complex == *other.complex
    }

    /// Value of the piece on `side` at `z`, zero outside the support.
    pub fn value_on(&self, side: Side, z: &[S]) -> S {
        match side.cell().and_then(|c| self.piece(c)) {
            Some(p) => p.eval(z),
            None => S::zero(),
        }
    }

    /// `a·self + b·other` on the union of supports.
    pub fn lin_comb(&self, a: &S, other: &Self, b: &S) -> Result<Self> {
        if !self.same_complex(other) {
            return Err(Error::MismatchedComplexes);
        }
        let zero = Affine::constant(self.dim(), S::zero());
        let pieces = self
            .pieces
            .iter()
            .zip(&other.pieces)
            .map(|(p, q)| match (p, q) {
                (None, None) => None,
                _ => {
                    let p = p.as_ref().unwrap_or(&zero);
                    let q = q.as_ref().unwrap_or(&zero);
                    Some(p.scale(a).add(&q.scale(b)))
                }
            })
            .collect();
        PwAffineField::new(self.complex.clone(), pieces)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.lin_comb(&S::one(), other, &S::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.lin_comb(&S::one(), other, &-S::one())
    }

    pub fn scale(&self, k: &S) -> Self {
        PwAffineField {
            complex: self.complex.clone(),
            pieces: self.pieces.iter().map(|p| p.as_ref().map(|p| p.scale(k))).collect(),
        }
    }

    /// Same values, support restricted to cells where `keep` holds.
    pub fn restrict(&self, keep: impl Fn(CellId) -> bool) -> Self {
        PwAffineField {
            complex: self.complex.clone(),
            pieces: self
                .pieces
                .iter()
                .enumerate()
                .map(|(c, p)| if keep(c) { p.clone() } else { None })
                .collect(),
        }
    }

    /// Values on every cell of `support_of`'s support (zero pieces where
    /// `self` is off), nothing elsewhere.
    pub fn on_support_of(&self, support_of: &Self) -> Self {
        let dim = self.dim();
        PwAffineField::from_fn(&self.complex, |c| {
            support_of.in_support(c).then(|| {
                self.piece(c).cloned().unwrap_or_else(|| Affine::constant(dim, S::zero()))
            })
        })
    }

    pub fn is_piecewise_constant(&self) -> bool {
        self.pieces.iter().flatten().all(|p| p.is_constant())
    }

    /// `∫ f` over the base.
    pub fn integral(&self) -> S {
        self.pieces
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.as_ref().map(|p| self.complex.cells[c].region.integrate(p)))
            .fold(S::zero(), |a, b| a + b)
    }

    /// Values at the vertices of a cell, zero off support.
    pub fn vertex_values(&self, cell: CellId) -> Vec<S> {
        self.complex.cells[cell]
            .region
            .vertices()
            .iter()
            .map(|z| self.value_on(Side::Cell(cell), z))
            .collect()
    }

    pub fn trace(&self, facet: usize) -> Result<FacetTrace<S>> {
        let f = self.complex.facet(facet)?;
        let [z0, z1] = f.endpoints();
        let side_fn = |side: Side| PwLinear::affine(self.value_on(side, &z0), self.value_on(side, &z1));
        Ok(FacetTrace { facet, left: side_fn(f.left), right: side_fn(f.right) })
    }

    pub fn traces(&self) -> Vec<FacetTrace<S>> {
        (0..self.complex.facets.len())
            .map(|i| self.trace(i).expect("facet in range"))
            .collect()
    }

    /// Checks the slice-length shape: non-negative on every closed support
    /// cell and not identically zero on any of them.
    pub fn validate_slice_length(&self) -> Result<()> {
        for c in self.support() {
            let name = || self.complex.cells[c].name.clone();
            let values = self.vertex_values(c);
            if values.iter().any(|v| v.is_negative_tol()) {
                return Err(Error::NegativeSliceLength { cell: name() });
            }
            if values.iter().all(|v| v.is_zero_tol()) {
                return Err(Error::VanishingSliceLength { cell: name() });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConvexRegion;
    use crate::numeric::Rational;
    use crate::pwfield::complex::CellSpec;

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

    #[test]
    fn step_integral_and_combination() {
        let cx = halves();
        let v = PwAffineField::piecewise_constant(&cx, &[Some(r(1, 1)), Some(r(2, 1))]);
        assert_eq!(v.integral(), r(3, 2));
        let w = v.lin_comb(&r(1, 2), &v, &r(1, 2)).unwrap();
        assert_eq!(w, v);
        assert!(v.validate_slice_length().is_ok());
    }

    #[test]
    fn slice_validation() {
        let cx = halves();
        let neg = PwAffineField::from_fn(&cx, |_| Some(Affine::new(vec![r(1, 1)], r(-3, 4))));
        assert!(matches!(neg.validate_slice_length(), Err(Error::NegativeSliceLength { .. })));
        let zero = PwAffineField::piecewise_constant(&cx, &[Some(r(0, 1)), Some(r(1, 1))]);
        assert!(matches!(zero.validate_slice_length(), Err(Error::VanishingSliceLength { .. })));
        let touching = PwAffineField::from_fn(&cx, |_| Some(Affine::new(vec![r(2, 1)], r(0, 1))));
        assert!(touching.validate_slice_length().is_ok());
    }
}
