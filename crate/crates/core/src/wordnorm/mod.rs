//! Finite-group engine: enumeration, conjugacy classes, normal closures,
//! conjugation-invariant norms, Δ_l and the characteristic-2 certificates.

mod cache;
mod char2;
mod norm;
mod store;

use thiserror::Error;

use crate::chevmat::ChevError;
use crate::ffring::RingError;

pub use cache::{cache_key, CacheError, NormCache};
pub use char2::{
    char_gen_check, lower_bound_construction, sp4_char2_identity, g2_char2_identity, vn2_epsilon_certificate,
    CharGenReport, ConjProduct, G2IdentityReport, EpsilonCertificate, EpsilonEntry, IdentityReport, LowerBoundCertificate,
};
pub use norm::{
    abelianization_order, ball, ball_from_table, conjugate_closure, delta_l, epsilon_set, norm_table,
    normal_closure, normally_generates, Delta, DeltaReport, NormTable,
};
pub use store::{Classes, GroupStore, DEFAULT_ELEMENT_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordNormError {
    #[error("element cap of {0} exceeded")]
    Cap(usize),
    #[error("store has no Chevalley model")]
    NotChevalley,
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Chev(#[from] ChevError),
}
