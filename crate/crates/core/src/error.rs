use alloc::string::String;
use core::fmt;

/// Malformed algebra data: the input cannot even be read as a graded algebra.
/// Distinct from [`crate::algebra::Violation`], which reports failed axioms
/// on well-formed data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuralError {
    NoLayers,
    EmptyAlgebra,
    /// Dimension beyond what the exterior-algebra bitmask encoding supports.
    TooLarge { dim: usize, max: usize },
    /// A 1-based basis index outside `1..=dim`.
    IndexOutOfRange { index: usize, dim: usize },
    DuplicateBracket { a: usize, b: usize },
    DuplicateTerm { a: usize, b: usize, k: usize },
    InnerProductShape { rows: usize, cols: usize, dim: usize },
    NonRational(String),
}

impl fmt::Display for StructuralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuralError::NoLayers => write!(f, "no layers given"),
            StructuralError::EmptyAlgebra => write!(f, "algebra has dimension 0"),
            StructuralError::TooLarge { dim, max } => {
                write!(f, "dimension {} exceeds supported maximum {}", dim, max)
            }
            StructuralError::IndexOutOfRange { index, dim } => {
                write!(f, "basis index {} outside 1..={}", index, dim)
            }
            StructuralError::DuplicateBracket { a, b } => {
                write!(f, "bracket [e{}, e{}] listed twice", a, b)
            }
            StructuralError::DuplicateTerm { a, b, k } => {
                write!(f, "term e{} listed twice in [e{}, e{}]", k, a, b)
            }
            StructuralError::InnerProductShape { rows, cols, dim } => {
                write!(f, "inner product is {}x{}, expected {}x{}", rows, cols, dim, dim)
            }
            StructuralError::NonRational(s) => write!(f, "coefficient {:?} is not an exact rational p/q", s),
        }
    }
}

/// Library error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Structural(StructuralError),
    /// Well-formed data that fails the graded Lie algebra axioms.
    InvalidAlgebra(String),
    UnknownModel(String),
    InvalidParameter(String),
    /// Group-level calculus is only implemented for step at most 2.
    StepTooLarge { step: usize },
    /// The graded part of `dδ+δd` is singular on a block of `im δ`.
    SingularBlock { degree: usize, weight: usize },
    /// An asserted operator identity failed; `witness` names the input.
    IdentityFailure { identity: String, witness: String },
    BudgetExceeded(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Structural(e) => write!(f, "malformed algebra data: {}", e),
            Error::InvalidAlgebra(s) => write!(f, "not a graded nilpotent Lie algebra: {}", s),
            Error::UnknownModel(s) => write!(f, "unknown model {:?}", s),
            Error::InvalidParameter(s) => write!(f, "invalid parameter: {}", s),
            Error::StepTooLarge { step } => {
                write!(f, "group calculus restricted to 2-step algebras (got step {})", step)
            }
            Error::SingularBlock { degree, weight } => write!(
                f,
                "graded Laplacian singular on im delta at degree {} weight {}",
                degree, weight
            ),
            Error::IdentityFailure { identity, witness } => {
                write!(f, "identity `{}` fails at {}", identity, witness)
            }
            Error::BudgetExceeded(s) => write!(f, "resource budget exceeded: {}", s),
        }
    }
}

impl From<StructuralError> for Error {
    fn from(e: StructuralError) -> Self {
        Error::Structural(e)
    }
}

pub type Result<T> = core::result::Result<T, Error>;
