use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Galois index {index}: not coprime to {modulus}")]
    InvalidGaloisIndex { index: i64, modulus: u64 },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("group order {order} exceeds the order cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("subgroup of order {order} is not normal in {group}")]
    NotNormal { group: String, order: usize },

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("element {0} does not belong to the group")]
    NotAnElement(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("invalid biset: {0}")]
    InvalidBiset(String),

    #[error("index {index} out of range (length {len})")]
    OutOfRange { index: usize, len: usize },

    #[error("no prime p = 1 mod {exponent} with p > {lower} found below {bound}")]
    NoSuitablePrime { exponent: u32, lower: u64, bound: u64 },

    #[error("field {inner} is not contained in {outer} at modulus {modulus}")]
    FieldContainment { inner: String, outer: String, modulus: u32 },

    #[error("class function is not in the functor: {0}")]
    NotInFunctor(String),

    #[error("input does not describe an ideal: {0}")]
    NotAnIdeal(String),

    #[error(
        "cyclic shortcut not licensed for H = {h} with shift G = {g}; supply the groups of smaller order explicitly"
    )]
    ShortcutNotLicensed { h: String, g: String },

    #[error("order {m} is not coprime to |G| = {order}")]
    NotCoprime { m: u64, order: usize },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error at position {pos} in {input:?}: expected {expected}")]
    Parse { input: String, pos: usize, expected: String },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::InvariantViolation(_))
    }
}
