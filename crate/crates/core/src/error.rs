use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("modulus {0} is not a supported prime")]
    NotPrime(u64),
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}

/// The labelled conditions a Leonard system must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// (i): A and A* are multiplicity-free.
    MultiplicityFree,
    /// (ii): the E_i are the primitive idempotents of A.
    IdempotentsOfA,
    /// (iii): the E*_i are the primitive idempotents of A*.
    IdempotentsOfAStar,
    /// (iv): E_i A* E_j vanishes off the band and not on it.
    DualTridiagonal,
    /// (v): E*_i A E*_j vanishes off the band and not on it.
    Tridiagonal,
}

impl Axiom {
    pub fn label(self) -> &'static str {
        match self {
            Axiom::MultiplicityFree => "(i)",
            Axiom::IdempotentsOfA => "(ii)",
            Axiom::IdempotentsOfAStar => "(iii)",
            Axiom::DualTridiagonal => "(iv)",
            Axiom::Tridiagonal => "(v)",
        }
    }
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeonardError {
    #[error("malformed candidate: {0}")]
    Malformed(String),
    #[error("eigenvalues {0} collide in the requested field")]
    UnusableField(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("axiom {axiom}: {message}")]
    Axiom { axiom: Axiom, message: String },
    #[error(
        "axiom {axiom}: {product} with (i, j) = ({i}, {j}) {failure}; offending entry ({row}, {col}) = {entry}"
    )]
    Support {
        axiom: Axiom,
        product: &'static str,
        i: usize,
        j: usize,
        failure: SupportFailure,
        row: usize,
        col: usize,
        entry: String,
    },
    #[error("antiautomorphism not unique: solution space has dimension {0}")]
    DaggerNotUnique(usize),
    #[error("antiautomorphism matrix is singular")]
    DaggerSingular,
    #[error("cached {0} disagrees with the recomputed value")]
    CacheMismatch(&'static str),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl LeonardError {
    /// The violated axiom, when the failure is an axiom failure.
    pub fn axiom(&self) -> Option<Axiom> {
        match self {
            LeonardError::Axiom { axiom, .. } | LeonardError::Support { axiom, .. } => Some(*axiom),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportFailure {
    /// Nonzero although |i - j| > 1.
    OutsideBand,
    /// Zero although |i - j| = 1.
    Reducible,
}

impl std::fmt::Display for SupportFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SupportFailure::OutsideBand => f.write_str("is nonzero although |i-j| > 1"),
            SupportFailure::Reducible => {
                f.write_str("vanishes although |i-j| = 1 (irreducibility violated)")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum XSpaceError {
    #[error("operation requires d >= {min}, got d = {d}")]
    OutOfRange { d: usize, min: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AwError {
    #[error("operation requires d >= {min}, got d = {d}")]
    OutOfRange { d: usize, min: usize },
    #[error("eigenvalue formula for {name} is inconsistent at index {index}")]
    Inconsistent { name: &'static str, index: usize },
    #[error("not a Leonard system: {0}")]
    NotLeonard(String),
    #[error("matrix is outside the space X")]
    Domain,
    #[error("image of {0} lies outside the algebra generated by the acting matrix")]
    ImageOutsideAlgebra(String),
    #[error("structural identity failed: {0}")]
    Identity(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Error)]
pub enum ExplorerError {
    #[error("exhaustive census refused: about {estimate} candidates for d = {d}, p = {p}; pass the override flag to run anyway")]
    CostGuard { d: usize, p: u64, estimate: u128 },
    #[error("invalid census job: {0}")]
    InvalidJob(String),
    #[error("cannot resume: {0}")]
    Resume(String),
    #[error("invariant violated for candidate {index}: {message}")]
    Invariant { index: u64, message: String },
    #[error(transparent)]
    Leonard(#[from] LeonardError),
    #[error(transparent)]
    Aw(#[from] AwError),
    #[error(transparent)]
    XSpace(#[from] XSpaceError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
