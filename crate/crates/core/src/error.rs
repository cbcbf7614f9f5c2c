use thiserror::Error;

/// Errors raised by the library. Verification failures that are meaningful
/// results (a set that is not a GSHDS, an identity that does not hold) are
/// reported through the corresponding report types, not through this enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("a group needs at least one cyclic factor")]
    EmptyExponents,
    #[error("cyclic factor exponents must be positive")]
    ZeroExponent,
    #[error("group too large for explicit enumeration: {0}")]
    TooLarge(String),
    #[error("element {0:?} is not valid for the group")]
    InvalidElement(Vec<u64>),
    #[error("operands live in different groups")]
    GroupMismatch,
    #[error("element set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("pairing rejected: {0}")]
    BadPairing(String),
    #[error("orbit representatives rejected: {0}")]
    BadOrbitReps(String),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("ring parameters rejected: {0}")]
    BadRing(String),
    #[error("extension degree {0} is even; quadratic-residue representatives need an odd degree")]
    EvenDegree(u32),
    #[error("not a quadratic residue slice: {0}")]
    NotQrs(String),
    #[error("not a GSHDS: {0}")]
    NotGshds(String),
    #[error("group order p^{0} is a square; GSHDS cannot exist in groups of square order")]
    SquareOrder(u32),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
