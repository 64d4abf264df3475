//! Bounded generation in practice: Euclidean factorization in SL_n(F_q[T]),
//! unipotent cover exponents of finite groups, the G_2 to SL_3 distance and
//! coset rewriting of words modulo an ideal.

mod cover;
mod factor;
mod rewrite;

use thiserror::Error;

use crate::chevmat::ChevError;
use crate::ffring::RingError;
use crate::wordnorm::WordNormError;

pub use cover::{cover_exponent, g2_to_sl3_distance, unipotent_set, CoverReport, DistanceReport};
pub use factor::{elementary_factorize_sln, elementary_root, FactorizationReport};
pub use rewrite::{coset_rewrite, residue_system, CosetRewrite, NormalLetter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundGenError {
    #[error("determinant is not 1")]
    DetNotOne,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("not a complete residue system: {0}")]
    NotResidueSystem(String),
    #[error(transparent)]
    WordNorm(#[from] WordNormError),
    #[error(transparent)]
    Chev(#[from] ChevError),
    #[error(transparent)]
    Ring(#[from] RingError),
}
