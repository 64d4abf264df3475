//! Exact arithmetic for F_q, F_q[T] and its finite quotients, ideals, primes,
//! units and the first-order ring properties used by the group modules.

pub mod arith;
pub mod field;
pub mod firstorder;
pub mod ideal;
pub mod kornblum;
pub mod poly;
pub mod ring;
pub mod units;

use thiserror::Error;

pub use arith::{ext_gcd, factor, is_irreducible, poly_is_irreducible};
pub use field::{Fe, FieldDesc};
pub use firstorder::{
    exp_witness_check, stable_range_3_2_check, stable_range_one_check, ExpWitness, WitnessReport,
};
pub use ideal::{divisor_of, residue_f2_primes, vn2_ideal, Divisor, IdealHandle, Place};
pub use kornblum::kornblum_search;
pub use poly::Poly;
pub use ring::{FiniteRing, Integers, Ring, RingElem, RingHandle, RingKind};
pub use units::{gen_search, unit_group_exponent};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no field of order {0}^{1} is supported (need q <= 256 with a registry modulus)")]
    FieldTooLarge(u32, u32),
    #[error("field modulus is reducible")]
    ReducibleModulus,
    #[error("quotient modulus is zero")]
    ZeroModulus,
    #[error("ring is infinite")]
    Infinite,
    #[error("ring has {0} elements, too many for this operation")]
    TooLarge(u64),
    #[error("operation needs {0}")]
    WrongKind(&'static str),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("input must be non-constant")]
    ConstantInput,
    #[error("input must be a nonzero non-unit")]
    TrivialInput,
    #[error("inputs are not coprime")]
    NotCoprime,
    #[error("search cap exhausted ({0}); this does not show nonexistence")]
    CapExhausted(String),
    #[error("needs characteristic 2")]
    OddCharacteristic,
    #[error("witness shape mismatch: {0}")]
    WitnessShape(String),
}
