use thiserror::Error;

use crate::registry::LieGroup;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("p-component of 0 is undefined")]
    UndefinedPComponent,
    #[error("{n}! exceeds the factorial bound {bound}")]
    FactorialBound { n: u32, bound: u32 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("entry {value} is not {prime}-integral")]
    NotIntegral { value: String, prime: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),

    #[error("class `{0}` is not defined")]
    MissingClass(String),
    #[error("malformed recipe: {0}")]
    MalformedRecipe(String),
    #[error("invalid target degrees: {0}")]
    TargetDegrees(String),

    #[error("factor {degrees:?} is not of the shape B(2n-1, 2n+2p-3) at p = {prime}")]
    WrongFactorShape { degrees: Vec<u32>, prime: u32 },

    #[error("({group}, {prime}) is not supported: {reason}")]
    Unsupported {
        group: LieGroup,
        prime: u32,
        reason: String,
    },
    #[error("factor {index} of {group} at p = {prime} is trivial")]
    TrivialFactor {
        group: LieGroup,
        prime: u32,
        index: u32,
    },

    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("case `{id}` failed validation: {failures}")]
    InvalidCase { id: String, failures: String },
    #[error("no strategy determines gamma_{index}({group}, {prime})")]
    NoStrategy {
        group: LieGroup,
        prime: u32,
        index: u32,
    },
    #[error("gamma_{index}({group}, {prime}) = {value} exceeds the homotopy bound {bound}")]
    BoundViolated {
        group: LieGroup,
        prime: u32,
        index: u32,
        value: String,
        bound: String,
    },
    #[error("gamma_{index}({group}, {prime}): computed {computed} but attested {attested}")]
    AttestedMismatch {
        group: LieGroup,
        prime: u32,
        index: u32,
        computed: String,
        attested: String,
    },
    #[error("gamma({group}) computed as {computed}, expected {expected}")]
    GlobalMismatch {
        group: LieGroup,
        computed: String,
        expected: String,
    },
    #[error("lift of case `{0}` is outside the rational span of the image")]
    LiftOutsideSpan(String),

    #[error("case database: {0}")]
    Database(String),
}
