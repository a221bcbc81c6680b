use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cells {a} and {b} overlap")]
    Overlap { a: String, b: String },
    #[error("cell {cell} is not a convex counterclockwise polygon")]
    NonConvex { cell: String },
    #[error("cell {cell} is degenerate (zero length or area)")]
    Degenerate { cell: String },
    #[error("cell {cell} has the wrong dimension (expected {expected})")]
    DimensionMismatch { cell: String, expected: usize },
    #[error("duplicate cell id {0}")]
    DuplicateCell(String),
    #[error("unknown cell id {0}")]
    UnknownCell(String),
    #[error("unknown facet id {0}")]
    UnknownFacet(usize),
    #[error("complex has no cells")]
    EmptyComplex,
    #[error("field {field}: gradient on cell {cell} has {got} components, expected {expected}")]
    GradientArity { field: String, cell: String, got: usize, expected: usize },
    #[error("slice length is negative on cell {cell}")]
    NegativeSliceLength { cell: String },
    #[error("slice length vanishes on a set of positive measure inside cell {cell}")]
    VanishingSliceLength { cell: String },
    #[error("lower graph exceeds upper graph on cell {cell}")]
    InvertedGraphs { cell: String },
    #[error("fields live on different complexes")]
    MismatchedComplexes,
    #[error("set is not v-distributed on cell {cell}")]
    NotVDistributed { cell: String },
    #[error("support cell {cell} is not assigned to a part")]
    UnassignedCell { cell: String },
    #[error("part {0} has no offset")]
    MissingOffset(usize),
    #[error("lambda must lie in [0,1] and differ from 1/2")]
    InvalidLambda,
    #[error("v2 must be piecewise constant")]
    NotPiecewiseConstant,
    #[error("v2 is constant on the support")]
    ConstantV2,
    #[error("v1 jumps across facet {facet}")]
    DiscontinuousV1 { facet: usize },
    #[error("invalid field combination: {0}")]
    InvalidMode(String),
    #[error("cell set is empty")]
    EmptySelection,
    #[error("class hint {0} does not apply to this input")]
    InapplicableClass(String),
    #[error("no nontrivial cut exists")]
    NoCut,
    #[error("cut crosses non-crossable facet {facet}")]
    NonCrossableCut { facet: usize },
    #[error("offset {t} exceeds half the threshold {eps}")]
    OffsetTooLarge { t: String, eps: String },
    #[error("unknown gallery entry {0}")]
    UnknownGallery(String),
    #[error("gallery depth must be at least 1")]
    InvalidDepth,
    #[error("line {line}: {message}")]
    Scene { line: usize, message: String },
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
