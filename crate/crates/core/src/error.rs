//! Crate-wide error type.

use std::fmt;

use crate::scalar::Ring;

/// Everything that can go wrong while building presentations or computing with them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Arithmetic between scalars carrying different ground-ring flags.
    RingMismatch { left: Ring, right: Ring },
    /// An operation combined elements of two incompatible algebras.
    AlgebraMismatch { left: String, right: String },
    /// A symbol did not resolve to a generator (or alias) of the active algebra.
    UnknownGenerator { name: String, algebra: String },
    /// The operation needs the Gaussian rationals but the algebra is over Q.
    NeedsComplexRing { context: String },
    /// Division by zero (scalar inversion).
    DivisionByZero,
    /// The filtration degree of the zero element is undefined.
    ZeroDegree,
    /// Rewriting exceeded the rule-application cap without reaching a normal form.
    RewriteCapExceeded { cap: usize },
    /// A presentation failed its construction-time validation.
    InvalidPresentation(String),
    /// Text failed to parse (expressions, scalars, case files); 1-based position.
    Parse { line: usize, col: usize, message: String },
    /// An algebra definition file is syntactically valid JSON but semantically broken.
    InvalidDefinition(String),
    /// A named endomorphism is not registered on the active algebra.
    UnknownEndomorphism { name: String },
    /// Adjoint of a non-hermitian generator with no declared dagger image.
    MissingAdjointImage { generator: String },
    /// The active algebra has no `*`-structure, so `adj` is unavailable.
    NoStarStructure { algebra: String },
    /// A representation is missing the image of a generator or has the wrong count.
    MissingRepImage { generator: String },
    /// Matrix dimensions (or image counts) disagree.
    DimensionMismatch { expected: usize, found: usize },
    /// Reading a file failed; the payload is the rendered I/O error.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch { left, right } => {
                write!(f, "ring mismatch: {left} vs {right}")
            }
            Error::AlgebraMismatch { left, right } => {
                write!(f, "algebra mismatch: `{left}` vs `{right}`")
            }
            Error::UnknownGenerator { name, algebra } => {
                write!(f, "unknown generator `{name}` in algebra `{algebra}`")
            }
            Error::NeedsComplexRing { context } => {
                write!(f, "{context} requires the ground ring Q(i), not Q")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroDegree => write!(f, "the degree of the zero element is undefined"),
            Error::RewriteCapExceeded { cap } => {
                write!(f, "rewriting did not terminate within {cap} rule applications")
            }
            Error::InvalidPresentation(msg) => write!(f, "invalid presentation: {msg}"),
            Error::Parse { line, col, message } => {
                write!(f, "parse error at {line}:{col}: {message}")
            }
            Error::InvalidDefinition(msg) => write!(f, "invalid algebra definition: {msg}"),
            Error::UnknownEndomorphism { name } => {
                write!(f, "unknown endomorphism `{name}`")
            }
            Error::MissingAdjointImage { generator } => {
                write!(f, "generator `{generator}` is not hermitian and has no declared adjoint image")
            }
            Error::NoStarStructure { algebra } => {
                write!(f, "algebra `{algebra}` carries no *-structure; `adj` is unavailable")
            }
            Error::MissingRepImage { generator } => {
                write!(f, "representation is missing an image for generator `{generator}`")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
