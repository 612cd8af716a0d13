use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("omega is not an {n}-th root of unity (|omega^n - 1| = {residual:e})")]
    NotRootOfUnity { n: usize, residual: f64 },
    #[error("companion eigensolver did not converge")]
    EigenSolver,
    #[error(
        "polynomials are not numerically coprime (min root distance {min_root_distance:e}, \
         Sylvester condition {condition:e})"
    )]
    CoprimalityFailure { min_root_distance: f64, condition: f64 },
    #[error("Bezout residual {residual:e} above tolerance")]
    BezoutResidual { residual: f64 },
    #[error("circle path needs at least 16 samples, got {0}")]
    TooFewSamples(usize),
    #[error("circle paths have different sample counts ({0} vs {1})")]
    SampleCountMismatch(usize, usize),
    #[error("sample {index} of the path is zero or non-finite")]
    ZeroSample { index: usize },
    #[error("phase jump {jump} at sample {index} is too large; raise the sample count")]
    UndersampledPath { index: usize, jump: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("group order must be at least 1")]
    EmptyGroup,
    #[error("exp(2 pi i {m}/{n}) is not a primitive {n}-th root of unity")]
    NonPrimitiveRoot { n: usize, m: i64 },
    #[error("elements live in different crossed products (n={0}, m={1}) vs (n={2}, m={3})")]
    GroupMismatch(usize, i64, usize, i64),
    #[error("expected {expected} components, got {actual}")]
    ComponentCount { expected: usize, actual: usize },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("determinant vanishes on the circle (|det| = {modulus:e} at sample {index})")]
    VanishingDeterminant { index: usize, modulus: f64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EliminationError {
    #[error("elimination needs a group of order at least 2")]
    GroupTooSmall,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(
        "no admissible perturbation after {attempts} attempts \
         (best root separation {best_separation:e}, required {required:e}; last failure: {last_failure})"
    )]
    PerturbationExhausted {
        attempts: usize,
        best_separation: f64,
        required: f64,
        last_failure: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LiftError {
    #[error("column oracle failed at level k={level}: {reason}")]
    OracleFailure { level: usize, reason: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no generating column after {attempts} perturbations (last failure: {last_failure})")]
    PerturbationExhausted { attempts: usize, last_failure: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MoebiusError {
    #[error("not an element of SU(1,1): |a|^2 - |b|^2 - 1 = {0:e}")]
    NotInSU11(f64),
    #[error("conjugated matrix has imaginary residue {0:e}; input is not in SU(1,1)")]
    NonRealImage(f64),
    #[error("matrix is not in SL(2,R): det - 1 = {0:e}")]
    NotInSL2R(f64),
    #[error("gcd({m}, {order}) != 1")]
    NotCoprime { m: i64, order: usize },
    #[error("subgroup order must be at least {min}, got {order}")]
    BadOrder { order: usize, min: usize },
    #[error("generator has order {actual} in PSU(1,1), not {declared}")]
    OrderMismatch { declared: usize, actual: usize },
    #[error("generator^order is not +-identity (distance {0:e})")]
    NotFiniteOrder(f64),
    #[error("averaged Gram matrix is ill-conditioned (cond {0:e})")]
    IllConditionedGram(f64),
    #[error("conjugation residual {0:e} above tolerance")]
    ConjugationResidual(f64),
    #[error("recovered rotation angle does not match a primitive root: {0}")]
    AngleExtraction(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("{0} must be a positive integer")]
    NonPositive(&'static str),
    #[error("bound overflows 64-bit arithmetic")]
    Overflow,
}
