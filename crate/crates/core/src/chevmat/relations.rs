//! Commutators of root elements: deriving the sign table from the models and
//! checking it over arbitrary rings.

use serde::Serialize;

use super::matrix::Matrix;
use super::model::ChevModel;
use crate::ffring::{FiniteRing, Integers, Ring};
use crate::rootdata::{CommTerm, Root, SignTable};

/// `(A, B) = A B A^-1 B^-1` given both inverses.
pub fn commutator<R: Ring>(
    ring: &R,
    a: &Matrix<R::E>,
    a_inv: &Matrix<R::E>,
    b: &Matrix<R::E>,
    b_inv: &Matrix<R::E>,
) -> Matrix<R::E> {
    a.mul(b, ring).mul(a_inv, ring).mul(b_inv, ring)
}

/// `(e_phi(a), e_psi(b))` computed from matrices.
pub fn root_commutator<R: Ring>(model: &ChevModel, ring: &R, phi: usize, psi: usize, a: &R::E, b: &R::E) -> Matrix<R::E> {
    let x = model.root_element(ring, phi, a);
    let xi = model.root_element(ring, phi, &ring.neg(a));
    let y = model.root_element(ring, psi, b);
    let yi = model.root_element(ring, psi, &ring.neg(b));
    commutator(ring, &x, &xi, &y, &yi)
}

/// Right-hand side of a relation: the product of `e_term(c a^i b^j)`.
pub fn expand_terms<R: Ring>(model: &ChevModel, ring: &R, terms: &[CommTerm], a: &R::E, b: &R::E) -> Matrix<R::E> {
    let pow = |x: &R::E, k: u32| (0..k).fold(ring.one(), |acc, _| ring.mul(&acc, x));
    terms.iter().fold(Matrix::identity(ring, model.dim()), |acc, t| {
        let c = ring.mul(&ring.from_int(t.coeff), &ring.mul(&pow(a, t.i), &pow(b, t.j)));
        acc.mul(&model.root_element(ring, model.root_index(&t.root), &c), ring)
    })
}

/// Root combinations `i phi + j psi` (i, j >= 1), in multiplication order.
fn combinations(model: &ChevModel, phi: &Root, psi: &Root) -> Vec<(u32, u32, Root)> {
    let mut out = Vec::new();
    for s in 2..=6u32 {
        for i in 1..s {
            let j = s - i;
            let r = phi.scale(i as i64).add(&psi.scale(j as i64));
            if model.system().contains(&r) {
                out.push((i, j, r));
            }
        }
    }
    out
}

/// Sign table of a model, read off integer commutators.
///
/// The model bases are weight bases, so in `prod_k e_{g_k}(c_k)` the entries
/// of weight `g_1` come only from `c_1 D_1(g_1)`: every other factor, and
/// every higher power, has strictly larger `i + j`. Dividing out the first
/// factor and repeating recovers all coefficients.
pub fn derive_sign_table(model: &ChevModel) -> SignTable {
    let z = Integers;
    let roots = model.system().roots().to_vec();
    let mut table = SignTable::new();
    for (pi, phi) in roots.iter().enumerate() {
        for (qi, psi) in roots.iter().enumerate() {
            if pi == qi || *phi == psi.neg() {
                continue;
            }
            let combos = combinations(model, phi, psi);
            if combos.is_empty() {
                continue;
            }
            let mut m = root_commutator(model, &z, pi, qi, &1, &1);
            let mut terms = Vec::new();
            for (i, j, g) in combos {
                let gi = model.root_index(&g);
                let d1 = &model.terms(gi)[0];
                let mut coeff = None;
                for (k, &d) in d1.entries().iter().enumerate() {
                    if d == 0 {
                        continue;
                    }
                    let (r, c) = (k / model.dim(), k % model.dim());
                    let v = m.get(r, c) - i64::from(r == c);
                    assert_eq!(v % d, 0, "non-integral coefficient for {g:?}");
                    match coeff {
                        None => coeff = Some(v / d),
                        Some(prev) => assert_eq!(prev, v / d, "inconsistent coefficient for {g:?}"),
                    }
                }
                let c = coeff.expect("root element is not the identity");
                if c != 0 {
                    m = model.root_element(&z, gi, &-c).mul(&m, &z);
                    terms.push(CommTerm { i, j, root: g, coeff: c });
                }
            }
            assert!(m.is_identity(&z), "commutator of {phi:?}, {psi:?} not exhausted");
            table.insert(phi.clone(), psi.clone(), terms);
        }
    }
    table
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationFailure {
    pub phi: String,
    pub psi: String,
    pub a: u8,
    pub b: u8,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub phi: String,
    pub ring: String,
    pub pairs: usize,
    pub checks: usize,
    pub failures: Vec<RelationFailure>,
}

/// Check `(e_phi(a), e_psi(b))` against the table for one pair and one
/// parameter choice.
pub fn check_relation<R: Ring>(
    model: &ChevModel,
    table: &SignTable,
    ring: &R,
    phi: &Root,
    psi: &Root,
    a: &R::E,
    b: &R::E,
) -> bool {
    let lhs = root_commutator(model, ring, model.root_index(phi), model.root_index(psi), a, b);
    let rhs = expand_terms(model, ring, table.get(phi, psi), a, b);
    lhs == rhs
}

/// Every ordered pair `phi != -psi` and every `(a, b)` in a finite ring.
pub fn relation_suite(model: &ChevModel, table: &SignTable, ring: &FiniteRing) -> RelationReport {
    use rayon::prelude::*;
    let roots = model.system().roots().to_vec();
    let pairs: Vec<(Root, Root)> = roots
        .iter()
        .flat_map(|p| roots.iter().map(move |q| (p.clone(), q.clone())))
        .filter(|(p, q)| *p != q.neg())
        .collect();
    let n = ring.order();
    let failures: Vec<RelationFailure> = pairs
        .par_iter()
        .flat_map_iter(|(phi, psi)| {
            let mut out = Vec::new();
            for a in 0..n as u8 {
                for b in 0..n as u8 {
                    if !check_relation(model, table, ring, phi, psi, &a, &b) {
                        out.push(RelationFailure { phi: phi.coords(), psi: psi.coords(), a, b });
                    }
                }
            }
            out
        })
        .collect();
    RelationReport {
        phi: model.ty().label(),
        ring: ring.spec().to_string(),
        pairs: pairs.len(),
        checks: pairs.len() * n * n,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{structure_constants, RootType};

    #[test]
    fn golden_table_matches_models() {
        for ty in [RootType::A(2), RootType::A(3), RootType::A(4), RootType::C2, RootType::G2] {
            let model = ChevModel::get(ty);
            let golden = structure_constants(model.system()).unwrap();
            assert_eq!(derive_sign_table(&model), golden, "{ty}");
        }
    }

    #[test]
    fn extraspecial_pairs_have_positive_leading_sign() {
        for ty in [RootType::A(2), RootType::C2, RootType::G2] {
            let model = ChevModel::get(ty);
            let t = derive_sign_table(&model);
            let (a, b) = (model.system().simple(0), model.system().simple(1));
            assert!(t.get(&a, &b)[0].coeff > 0, "{ty}");
        }
    }
}
