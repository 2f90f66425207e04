use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live on different variable tables")]
    TableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("`{0}` is not a valid variable name")]
    InvalidVariableName(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("polynomial is not a quadratic form in the given coordinates")]
    NotQuadratic,
    #[error("matrix has no entries")]
    EmptyMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("component {index} is not homogeneous in the source coordinates")]
    InhomogeneousComponent { index: usize },
    #[error("components have different degrees ({first} and {other})")]
    MixedDegrees { first: u32, other: u32 },
    #[error("all components are zero")]
    AllZero,
    #[error("map has no components")]
    Empty,
    #[error("arity mismatch: {expected} coordinates expected, {found} given")]
    ArityMismatch { expected: usize, found: usize },
    #[error("hypersurface equation is zero or not homogeneous")]
    InvalidHypersurface,
    #[error("polynomial is not in the span of the basis")]
    NotInSpan,
    #[error("inputs have different degrees")]
    DegreeMismatch,
    #[error("coordinate index set is empty")]
    EmptyClass,
}
