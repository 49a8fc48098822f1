//! Error types shared across the engine.
//!
//! Arithmetic errors are rare and local (division by zero, mismatched
//! towers); build and query errors carry enough context to be rendered
//! directly by the CLI.

use std::fmt;

/// Errors from scalar, polynomial and tower-element arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    DivisionByZero,
    /// Resultant of two zero polynomials is undefined.
    BothZero,
    /// Operands belong to different towers.
    TowerMismatch,
    /// Denominator of a rational function vanished under an evaluation map.
    EvalDenominatorZero,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::DivisionByZero => write!(f, "division by zero"),
            ArithError::BothZero => write!(f, "resultant of two zero polynomials is undefined"),
            ArithError::TowerMismatch => write!(f, "operands belong to different towers"),
            ArithError::EvalDenominatorZero => {
                write!(f, "denominator vanished under evaluation map")
            }
        }
    }
}

impl std::error::Error for ArithError {}

/// Errors from factorization routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorError {
    /// Cannot factor the zero polynomial.
    ZeroPolynomial,
    /// Input degree exceeds the configured cap.
    DegreeCapExceeded { degree: usize, cap: usize },
    /// A bounded internal search ran out of candidates.
    SearchExhausted { what: String },
    Arith(ArithError),
}

impl fmt::Display for FactorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorError::ZeroPolynomial => write!(f, "cannot factor the zero polynomial"),
            FactorError::DegreeCapExceeded { degree, cap } => {
                write!(f, "degree {degree} exceeds factorization cap {cap}")
            }
            FactorError::SearchExhausted { what } => write!(f, "search exhausted: {what}"),
            FactorError::Arith(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FactorError {}

impl From<ArithError> for FactorError {
    fn from(e: ArithError) -> Self {
        FactorError::Arith(e)
    }
}

/// Errors from tower construction and validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    /// A declared minimal polynomial is reducible; carries a proper factor.
    ReducibleMinPoly { symbol: String, factor: String },
    /// A minimal polynomial is not monic in its own symbol.
    NonMonicMinPoly { symbol: String },
    DuplicateSymbol { symbol: String },
    /// A generator polynomial does not involve its own symbol, or uses
    /// symbols not yet introduced.
    MalformedPolynomial { symbol: String, reason: String },
    Factor(FactorError),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::ReducibleMinPoly { symbol, factor } => {
                write!(
                    f,
                    "minimal polynomial for `{symbol}` is reducible; proper factor: {factor}"
                )
            }
            BuildError::NonMonicMinPoly { symbol } => {
                write!(f, "minimal polynomial for `{symbol}` is not monic")
            }
            BuildError::DuplicateSymbol { symbol } => {
                write!(f, "symbol `{symbol}` declared twice")
            }
            BuildError::MalformedPolynomial { symbol, reason } => {
                write!(f, "malformed polynomial for `{symbol}`: {reason}")
            }
            BuildError::Factor(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BuildError {}

impl From<FactorError> for BuildError {
    fn from(e: FactorError) -> Self {
        BuildError::Factor(e)
    }
}

/// Parse errors with position and expectation context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: expected {}, found {}",
            self.line,
            self.col,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

/// Errors from high-level queries (subfields, embeddings, classification).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryError {
    /// A described subfield could not be validated within bounds.
    UnrepresentableSubfield { reason: String },
    /// The ambient field is not algebraic over the given base, so degrees
    /// and minimal polynomials over it do not exist.
    NotAlgebraicOverBase { detail: String },
    /// A declared relation failed to hold under a constructed map.
    RelationCheckFailed { detail: String },
    /// The requested map is singular (e.g. a Mobius matrix with det 0).
    SingularMap,
    /// A partial automorphism does not extend to the requested field.
    DoesNotExtend { detail: String },
    /// Preconditions for the query are not met.
    Unsupported { reason: String },
    Build(BuildError),
    Factor(FactorError),
    Arith(ArithError),
}

impl fmt::Display for QueryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryError::UnrepresentableSubfield { reason } => {
                write!(f, "subfield cannot be represented: {reason}")
            }
            QueryError::NotAlgebraicOverBase { detail } => {
                write!(f, "field is not algebraic over the given base: {detail}")
            }
            QueryError::RelationCheckFailed { detail } => {
                write!(f, "relation check failed: {detail}")
            }
            QueryError::SingularMap => write!(f, "map is singular"),
            QueryError::DoesNotExtend { detail } => {
                write!(f, "map does not extend: {detail}")
            }
            QueryError::Unsupported { reason } => write!(f, "unsupported query: {reason}"),
            QueryError::Build(e) => write!(f, "{e}"),
            QueryError::Factor(e) => write!(f, "{e}"),
            QueryError::Arith(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for QueryError {}

impl From<BuildError> for QueryError {
    fn from(e: BuildError) -> Self {
        QueryError::Build(e)
    }
}

impl From<FactorError> for QueryError {
    fn from(e: FactorError) -> Self {
        QueryError::Factor(e)
    }
}

impl From<ArithError> for QueryError {
    fn from(e: ArithError) -> Self {
        QueryError::Arith(e)
    }
}
