use thiserror::Error;

use crate::etatheta::ThetaKind;
use crate::series::Ring;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),

    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),

    #[error("expected {expected} coefficients for truncation order {trunc}, got {got}")]
    CoeffLength {
        trunc: usize,
        expected: usize,
        got: usize,
    },

    #[error("constant term is not a unit in {0}")]
    NonUnitConstant(Ring),

    #[error("coefficient of q^{n} requested, but the series is only known through q^{trunc}")]
    BeyondTruncation { n: usize, trunc: usize },

    #[error("residue class {j} is outside [0, {m})")]
    ResidueOutOfRange { j: usize, m: usize },

    #[error("eta subscript must be a positive integer")]
    ZeroSubscript,

    #[error("eta exponent must be nonzero")]
    ZeroExponent,

    #[error("{0} has no sparse-sum expansion")]
    NoDirectSum(ThetaKind),

    #[error("{0} has no eta-quotient form")]
    NoEtaForm(ThetaKind),

    #[error("truncation order {got} is too small, need at least {min}")]
    DepthTooSmall { min: usize, got: usize },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("prime {p} does not satisfy the family constraint: {constraint}")]
    PrimeConstraint { p: u64, constraint: String },

    #[error("unknown family id `{0}`")]
    UnknownFamily(String),

    #[error("colors ({r}, {s}) out of range: both color counts must be >= 1")]
    ColorsOutOfRange { r: i64, s: i64 },

    #[error("exponent gap at f_{subscript} is {gap}, not a multiple of {step}")]
    LiftingGap {
        subscript: u64,
        gap: i64,
        step: u64,
    },

    #[error("shift constant {c} is outside [1, {max}]")]
    ShiftOutOfRange { c: u64, max: u64 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
