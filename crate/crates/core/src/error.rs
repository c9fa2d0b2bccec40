use thiserror::Error;

/// Everything that can go wrong inside the toolkit.
///
/// Variants are grouped by how a front-end should react to them: input
/// problems, mathematical check failures, and honest "cannot decide" outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degree {0} exceeds the cap of {cap}", cap = crate::polycore::DEGREE_CAP)]
    DegreeCap(u32),
    #[error("singular linear change of coordinates")]
    SingularMatrix,
    #[error("both inputs are zero")]
    BothZero,
    #[error("degenerate conic (rank {0})")]
    DegenerateConic(usize),
    #[error("no rational point found with height <= {0}")]
    NoRationalPointFound(u64),
    #[error("parametrization does not lie on the curve")]
    InconsistentParametrization,
    #[error("curve is a component of the branch curve (pullback vanishes identically)")]
    ComponentOfBranchCurve,
    #[error("no witness found with deg G2 <= {0}")]
    NoWitnessUpToBound(u32),
    #[error("square defect {0} is not a rational square; a witness needs Q(sqrt({0}))")]
    NonRationalSquareConstant(String),
    #[error("G1^2 - G2^2*F1 is not divisible by F2 (remainder {0})")]
    NotDivisible(String),
    #[error("non-isolated singularity")]
    NonIsolated,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("point is not singular")]
    NotSingular,
    #[error("curve is not square-free")]
    NotSquareFree,
    #[error("tangency check failed: {0}")]
    Tangency(String),
    #[error("pencil does not contain the curve")]
    NotContained,
    #[error("not checkable: {0}")]
    NotCheckable(String),
    #[error("extension degree {0} exceeds 6")]
    ExtensionTooLarge(usize),
    #[error("not decidable by rule for signatures without punctures")]
    NotDecidableByRule,
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
