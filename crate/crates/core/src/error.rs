use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator {index} is not a bijection of 0..{degree}")]
    NotBijective { index: usize, degree: usize },

    #[error("group too large: order {order} exceeds the construction bound {bound}; reduce n/N or group size")]
    GroupTooLarge { order: u128, bound: usize },

    #[error("isomorphism test out of range: order {order} exceeds the isomorphism bound {bound}")]
    IsoOutOfRange { order: usize, bound: usize },

    #[error("invalid multiplication table: {0}")]
    BadTable(String),

    #[error("element {index} does not belong to a group of order {order}")]
    ForeignElement { index: usize, order: usize },

    #[error("map is not a group homomorphism")]
    NotHomomorphism,

    #[error("homomorphism is not injective")]
    NotInjective,

    #[error("groups do not match: {0}")]
    GroupMismatch(String),

    #[error("not a group action: {0}")]
    NotAnAction(String),

    #[error("cell set is not invariant under the subgroup")]
    NotInvariant,

    #[error("element does not fix cell {cell}")]
    NotFixed { cell: usize },

    #[error("invalid bundle data: {0}")]
    BadBundle(String),

    #[error("weight vector has length {len}, order {k} needs at least {k}")]
    WeightsTooShort { len: usize, k: usize },

    #[error("sum {sum} is not divisible by the group order {order}")]
    InexactDivision { sum: String, order: usize },

    #[error("series has a non-unit constant term")]
    NonUnitConstant,

    #[error("series truncation orders differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid descriptor at {field}: {message}")]
    Descriptor { field: String, message: String },

    #[error("unknown group class handle {0}")]
    UnknownClass(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn descriptor(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Descriptor { field: field.into(), message: message.into() }
    }
}
