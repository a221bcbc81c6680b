//! Perimeter of sets between graphs: closed-form formulas, an independent
//! boundary oracle, and the slice and coarea checks.

pub mod formula;
pub mod oracle;
pub mod slice;

pub use formula::{perimeter_formula, perimeter_of_set, CellTerm, FacetTerm, FormulaArgs, Mode, PerimeterBreakdown, Region};
pub use oracle::oracle_perimeter;
pub use slice::{coarea_check, positive_lower_facets, slice_inequality_check, CoareaCheck, SliceCheck};
