use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not a group: {reason}")]
    NotAGroup { reason: String },

    #[error("not a group homomorphism: {reason}")]
    NotAHomomorphism { reason: String },

    #[error("not a group action: {reason}")]
    NotAnAction { reason: String },

    #[error("subgroup {0:?} is not normal")]
    NotNormal(Vec<usize>),

    #[error("element list {0:?} is not a subgroup")]
    NotASubgroup(Vec<usize>),

    #[error("group is not abelian")]
    NotAbelian,

    #[error("action of {g} is not an automorphism: ({a}*{b})^g != a^g * b^g")]
    NotAutomorphism { g: usize, a: usize, b: usize },

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("equivariance violated: d(m^g) != g^-1 d(m) g for m={m}, g={g}")]
    EquivarianceViolation { m: usize, g: usize },

    #[error("Peiffer identity violated: m^(d n) != n^-1 m n for m={m}, n={n}")]
    PeifferViolation { m: usize, n: usize },

    #[error("ill-defined construction: {0}")]
    IllDefined(String),

    #[error("invariant failure: {0}")]
    InvariantFailure(String),

    #[error("non-integer multiplicity {value} for {context}")]
    NonIntegerMultiplicity { context: String, value: String },

    #[error("transparency criteria disagree on simple {index}: {detail}")]
    CriterionMismatch { index: usize, detail: String },

    #[error("projector rank {found} does not match expected {expected}")]
    ProjectorRankMismatch { expected: usize, found: usize },

    #[error("ill-defined quotient: {0}")]
    IllDefinedQuotient(String),

    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("shape error in field `{field}`: {message}")]
    Shape { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NumericalDegeneracy(_) => 3,
            Error::InvariantFailure(_)
            | Error::NonIntegerMultiplicity { .. }
            | Error::CriterionMismatch { .. }
            | Error::ProjectorRankMismatch { .. }
            | Error::IllDefinedQuotient(_)
            | Error::IllDefined(_) => 2,
            _ => 1,
        }
    }
}
