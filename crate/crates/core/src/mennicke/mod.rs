//! W(I), I-equivalence, completions to SL_2 and Mennicke symbols into the
//! relative quotients C(Φ, R, I)/E(Φ, R, I), decided over finite rings.

mod sift;
mod symbol;
mod wpair;

use thiserror::Error;

use crate::chevmat::ChevError;
use crate::ffring::RingError;
use crate::rootdata::RootType;

pub use sift::{identity_elt, Elt, Filtration, PcSubgroup, Sift};
pub use symbol::{
    mennicke_axioms, relative_quotient, square_symbol_check, symbol_class, AxiomReport, Check, MennickeContext,
    RelativeQuotient, SymbolCertificate, DEFAULT_BASIS_CAP,
};
pub use wpair::{apply_move, EquivMove, WPair, WPairError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MennickeError {
    #[error("symbol classes are only decided over finite rings")]
    Infinite,
    #[error("no Mennicke symbol target for {0}")]
    Unsupported(RootType),
    #[error(transparent)]
    WPair(#[from] WPairError),
    #[error(transparent)]
    Chev(#[from] ChevError),
    #[error(transparent)]
    Ring(#[from] RingError),
}
