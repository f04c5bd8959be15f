use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorization budget exceeded: |{value}| > 2^{bound_bits}")]
    FactorBudget { value: String, bound_bits: u32 },

    #[error("archimedean place has no discrete valuation")]
    Archimedean,

    #[error("not a unit at {place}")]
    NotAUnit { place: String },

    #[error("wild place unsupported: residue characteristic of {place} equals p = {p}")]
    WildPlace { place: String, p: u64 },

    #[error("pairing degenerate: p does not divide N(P) - 1")]
    DegeneratePairing,

    #[error("no proper H exists: T-bar is the whole class space")]
    NoProperH,

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("place/element mismatch: {0}")]
    Mismatch(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
