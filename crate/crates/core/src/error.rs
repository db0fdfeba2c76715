use thiserror::Error;

use crate::classify::VarietyLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid operation table: {0}")]
    InvalidTable(String),

    #[error("order is not a lattice: {x} and {y} have no unique {bound}")]
    NotLattice { x: usize, y: usize, bound: &'static str },

    #[error("requires at least {required}, algebra classifies as {actual}")]
    Precondition {
        required: VarietyLabel,
        actual: VarietyLabel,
    },

    #[error("operation undefined on the trivial algebra")]
    TrivialAlgebra,

    #[error("algebra is not totally ordered: {x} and {y} are incomparable")]
    NotChain { x: usize, y: usize },

    #[error("subset is not an ideal: {0}")]
    NotIdeal(String),

    #[error("ideal is not absorbent: {a}·{b} escapes")]
    NotAbsorbent { a: usize, b: usize },

    #[error("quotient operations are ill-defined: {0}")]
    IllDefinedQuotient(String),

    #[error("map is not a homomorphism: {0}")]
    NotHom(String),

    #[error("element {0} is idempotent for neither ⊕ nor ·")]
    NotIdempotent(usize),

    #[error("product escapes the unit segment at {a} · {b}")]
    ProductEscapesSegment { a: String, b: String },

    #[error("ring is not semi-low: {a} · {b} is not below {a} ∧ {b}")]
    NotSemiLow { a: String, b: String },

    #[error("{what} exceeds the budget of {limit}")]
    BudgetExceeded { what: String, limit: usize },

    #[error("size limit: {0}")]
    TooLarge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Size and budget errors mean "too big to decide", not "failed".
    pub fn is_size_error(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::TooLarge(_))
    }
}
