//! Splitting a word of root elements into conjugates of I-letters and a word
//! in coset representatives.

use super::BoundGenError;
use crate::chevmat::{GroupMat, Word};
use crate::ffring::poly::all_below_degree;
use crate::ffring::{IdealHandle, Poly, RingElem, RingKind};
use crate::rootdata::{Root, RootType};

#[derive(Clone, Debug)]
pub struct NormalLetter {
    pub root: Root,
    /// Lies in I.
    pub coeff: RingElem,
    /// The conjugator is the product of the first `prefix` tail letters.
    pub prefix: usize,
}

#[derive(Clone, Debug)]
pub struct CosetRewrite {
    pub normal: Vec<NormalLetter>,
    pub tail: Word,
    pub verified: bool,
}

/// The residues of degree below `deg g`.
pub fn residue_system(ideal: &IdealHandle) -> Vec<RingElem> {
    let ring = ideal.ring();
    let d = ideal.gen_poly().deg().unwrap_or(0);
    all_below_degree(d, ring.q()).map(|p| ring.elem(p)).collect()
}

fn inverse(w: &Word) -> Word {
    Word { letters: w.letters.iter().rev().map(|(phi, x)| (phi.clone(), x.neg())).collect() }
}

/// `prod e_{phi_i}(a_i) = prod_i X_{i-1} e_{phi_i}(b_i) X_{i-1}^-1 * X_V` with
/// `a_i = b_i + x_i`, `b_i` in `I`, `x_i` in `reps` and
/// `X_i = e_{phi_1}(x_1) ... e_{phi_i}(x_i)`.
pub fn coset_rewrite(
    ty: RootType,
    word: &Word,
    ideal: &IdealHandle,
    reps: &[RingElem],
) -> Result<CosetRewrite, BoundGenError> {
    let ring = ideal.ring();
    if ring.kind() != RingKind::PolyRing || ideal.is_zero() {
        return Err(BoundGenError::Unsupported("need a nonzero ideal of F_q[T]".into()));
    }
    let f = ring.field();
    let g = ideal.gen_poly();
    let expected = (ring.q() as u64).pow(g.deg().unwrap_or(0) as u32);
    if reps.len() as u64 != expected {
        return Err(BoundGenError::NotResidueSystem(format!("{} representatives, expected {expected}", reps.len())));
    }
    let mut residues: Vec<Poly> = reps.iter().map(|r| r.poly().rem(g, f)).collect();
    residues.sort();
    if residues.windows(2).any(|w| w[0] == w[1]) {
        return Err(BoundGenError::NotResidueSystem("two representatives are congruent".into()));
    }
    let mut normal = Vec::new();
    let mut tail = Word::new();
    for (i, (phi, a)) in word.letters.iter().enumerate() {
        let r = a.poly().rem(g, f);
        let x = reps.iter().find(|c| c.poly().rem(g, f) == r).expect("complete residue system");
        normal.push(NormalLetter { root: phi.clone(), coeff: a.sub(x), prefix: i });
        tail.push(phi.clone(), x.clone());
    }
    let mut lhs = GroupMat::identity(ty, ring);
    for n in &normal {
        let prefix = Word { letters: tail.letters[..n.prefix].to_vec() };
        let conj = prefix.eval(ty, ring);
        lhs = lhs
            .mul(&conj)
            .mul(&GroupMat::root_element(ty, ring, &n.root, &n.coeff))
            .mul(&inverse(&prefix).eval(ty, ring));
    }
    lhs = lhs.mul(&tail.eval(ty, ring));
    let verified = lhs == word.eval(ty, ring) && normal.iter().all(|n| ideal.contains(&n.coeff));
    Ok(CosetRewrite { normal, tail, verified })
}
