use thiserror::Error;

/// Errors raised by the algebra, calculus, builder and decomposition layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported family {family}({param})")]
    UnsupportedFamily { family: String, param: i64 },
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("empty list of summands")]
    EmptyList,
    #[error("algebra is not compact (Killing form defect {0:.3e})")]
    NotCompact(f64),
    #[error("ideal of dimension {dim} with Cartan dimension {rank} matches no simple type")]
    UnrecognizedIdeal { dim: usize, rank: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid structure constants: {0}")]
    InvalidConstants(String),
    #[error("metric is not symmetric positive definite: {0}")]
    InvalidMetric(String),
    #[error("Jacobi identity fails with defect {0:.3e}")]
    JacobiViolated(f64),

    #[error("torus is not a maximal abelian subalgebra: {0}")]
    NotMaximalTorus(String),
    #[error("positivity covector annihilates a root")]
    IrregularPositivity,
    #[error("metric is not ad-invariant (defect {0:.3e})")]
    NonInvariantMetric(f64),
    #[error("root datum does not belong to this algebra: {0}")]
    MismatchedDatum(String),
    #[error("root index {0} not found")]
    RootNotFound(usize),

    #[error("invalid complex structure: {0}")]
    InvalidComplexStructure(String),
    #[error("complex structure is not integrable (Nijenhuis defect {0:.3e})")]
    NonIntegrable(f64),
    #[error("form degree {degree} too large for dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("Lee form needs complex dimension at least 2, got {0}")]
    LeeFormUndefined(usize),
    #[error("fundamental form is degenerate")]
    DegenerateOmega,

    #[error("unsupported Sasaki model {0:?}")]
    UnsupportedModel(String),
    #[error("Sasaki constant must be positive, got {0}")]
    NonPositiveC(f64),
    #[error("standard spec invalid: {0}")]
    SpecInvariantViolated(String),
    #[error("torus complex structure is not an orthogonal complex structure: {0}")]
    NonUnitaryA(String),
    #[error("spec does not match the built structure: {0}")]
    MismatchedSpec(String),

    #[error("input is not BKL: {0}")]
    NotBkl(String),
    #[error("no J-invariant maximal torus found within {0} refinement steps")]
    NoSamelsonTorus(usize),
    #[error("root block of odd dimension {0}")]
    OddBlock(usize),
    #[error("root plane is not J-invariant (defect {0:.3e})")]
    PlaneNotInvariant(f64),
    #[error("post-check {name} failed: {value:.3e} exceeds {tol:.1e}")]
    PostCheckFailed { name: String, value: f64, tol: f64 },

    #[error("complex dimension {0} outside the supported range 1..=64")]
    DimensionTooLarge(usize),
    #[error("inconsistent bookkeeping: {0}")]
    InconsistentBookkeeping(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
