use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// What went wrong while reading a graph file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    DanglingEdge(String),
    #[error("vertex `{id}` has weight {weight}; weights must be negative")]
    NonNegativeWeight { id: String, weight: BigInt },
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("repeated edge `{0}`-`{1}`")]
    MultiEdge(String, String),
    #[error("graph is not a tree: {0}")]
    NotATree(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
}

/// A parse failure with a 1-based source location. Structural failures
/// detected after the whole file is read (cycles, disconnection) report
/// line 0.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
        }
    }
}

impl ParseError {
    pub fn structural(kind: ParseErrorKind) -> Self {
        ParseError {
            line: 0,
            column: 0,
            kind,
        }
    }
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Math,
    Cap,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error("intersection form is not negative definite: recursion denominator at `{vertex}` is {denominator}")]
    DefinitenessFailure { vertex: String, denominator: BigRational },
    #[error("matrix is singular")]
    Singular,
    #[error("Schur complement vanishes (e(Y) = 0): boundary is not a rational homology sphere")]
    ZeroSchurComplement,
    #[error("rational Euler number {0} is not negative")]
    NonNegativeEuler(BigRational),
    #[error("central weight {0} must be at most {1}")]
    CentralWeight(BigInt, i64),
    #[error("invalid pair {p}/{q}: need 0 < q < p")]
    InvalidPair { p: BigInt, q: BigInt },
    #[error("{q} and {p} are not coprime")]
    NotCoprime { q: BigInt, p: BigInt },
    #[error("invalid continued fraction: {0}")]
    InvalidExpansion(String),
    #[error("fraction {0} must be positive")]
    NonPositiveFraction(BigRational),
    #[error("graph is not minimal: vertex `{0}` has weight -1")]
    NotMinimal(String),
    #[error("invalid rotation vector: {0}")]
    InvalidRotation(String),
    #[error("enumeration of {size} vectors exceeds the cap of {cap}")]
    CapExceeded { size: BigInt, cap: u64 },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) => ErrorClass::Parse,
            Error::CapExceeded { .. } => ErrorClass::Cap,
            _ => ErrorClass::Math,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
