//! Matrix models of the split groups SL_{n+1}, Sp_4 and G_2: root and Weyl
//! elements, membership, reduction, level ideals and commutator relations.

mod groupmat;
mod matrix;
mod model;
mod relations;

use thiserror::Error;

pub use groupmat::{embed_phi_beta, level_ideal, level_ideal_set, reduce_mod, GroupMat, Word};
pub use matrix::Matrix;
pub use model::{symplectic_form, ChevModel, IntMat};
pub use relations::{
    check_relation, commutator, derive_sign_table, expand_terms, relation_suite, root_commutator, RelationFailure,
    RelationReport,
};

use crate::ffring::{RingElem, RingError};
use crate::rootdata::{structure_constants, Root, RootType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevError {
    #[error("matrix size {got}, model needs {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("operation not defined for {0}")]
    Unsupported(RootType),
    #[error("determinant is not 1")]
    DetNotOne,
    #[error("ideal must be nonzero")]
    ZeroIdeal,
    #[error("ring mismatch")]
    RingMismatch,
    #[error("empty input set")]
    Empty,
    #[error("roots must satisfy alpha + beta != 0")]
    OppositeRoots,
    #[error("decode error: {0}")]
    Decode(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `(e_alpha(a), e_beta(b))` computed as matrices equals the expansion in the
/// golden sign table.
pub fn verify_commutator_relation(
    ty: RootType,
    alpha: &Root,
    beta: &Root,
    a: &RingElem,
    b: &RingElem,
) -> Result<bool, ChevError> {
    if alpha.add(beta).is_zero() {
        return Err(ChevError::OppositeRoots);
    }
    if a.ring() != b.ring() {
        return Err(ChevError::RingMismatch);
    }
    let model = ChevModel::get(ty);
    let table = structure_constants(model.system()).map_err(|e| ChevError::Decode(e.to_string()))?;
    Ok(check_relation(&model, &table, a.ring(), alpha, beta, a.poly(), b.poly()))
}
