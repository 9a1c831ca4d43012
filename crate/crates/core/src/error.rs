use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("field of order {0} exceeds the supported maximum of 256")]
    FieldTooLarge(u128),
    #[error("conjugation needs an even extension degree, field has degree {0}")]
    OddDegree(u32),
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("{l} divides {q}, so q has no multiplicative order modulo l")]
    NoMultiplicativeOrder { l: u64, q: u64 },
    #[error("the field of order {field} has no cyclic subgroup of order {order}")]
    NoRootsOfUnity { field: u64, order: u64 },
    #[error("enumeration budget of {limit} elements exceeded (reached {reached})")]
    Budget { limit: usize, reached: usize },
    #[error("relation check failed: {0}")]
    Relation(String),
    #[error("elements are not in the group")]
    NotSubset,
    #[error("subgroup is not central")]
    NotCentral,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("selected subset is not closed: {0}")]
    NotClosed(String),
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("{what}: enumerated order {enumerated} disagrees with closed form {formula}")]
    OrderMismatch {
        what: String,
        enumerated: u128,
        formula: u128,
    },
    #[error("inapplicable parameters: {0}")]
    Inapplicable(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::FieldTooLarge(_))
    }
}
