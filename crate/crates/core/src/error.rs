use thiserror::Error;

use crate::scalar::Valuation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u32, right: u32 },

    #[error("element is not a unit (valuation {valuation})")]
    NonUnit { valuation: Valuation },

    #[error("affine map with zero slope")]
    DegenerateAffine,

    #[error("radius exponent out of range: {0}")]
    RadiusOutOfRange(i64),

    #[error("requested precision {requested} exceeds available precision {available}")]
    Precision { requested: u32, available: u32 },

    #[error("size {required} exceeds the limit {limit}")]
    SizeLimit { required: u128, limit: u128 },

    #[error("successor {value} at index {index} is out of range for {size} vertices")]
    OutOfRange {
        index: usize,
        value: usize,
        size: usize,
    },

    #[error("digit {digit} at position {index} is not below {p}")]
    DigitOutOfRange { index: usize, digit: u64, p: u32 },

    #[error("{size} states do not fit into {p}^{depth} cylinders")]
    DepthTooSmall { p: u32, depth: u32, size: usize },

    #[error("balls {0} and {1} are not disjoint")]
    OverlappingBalls(usize, usize),

    #[error("ball system is malformed: {0}")]
    MalformedSystem(String),

    #[error("centers {0} and {1} coincide")]
    DuplicateCenters(usize, usize),

    #[error("linear dominance does not hold on this ball")]
    DominanceRequired,

    #[error("conjugating map is not an isometry (valuation of the slope is {0})")]
    NotIsometry(Valuation),

    #[error("not congruence-preserving modulo {d}: {x} = {y} (mod {d}) but images differ")]
    NotCongruencePreserving { d: u64, x: usize, y: usize },

    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(u64, u64),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("modulus is invalid: {0}")]
    InvalidModulus(String),

    #[error("elements belong to different unramified contexts")]
    ContextMismatch,

    #[error("tower is malformed: {0}")]
    InvalidTower(String),

    #[error("interpreter has not been certified: {0}")]
    NotCertified(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
