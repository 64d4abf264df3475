//! Mennicke symbols into C(Φ, R, I)/E(Φ, R, I) for Φ = A_2 or C_2 over a
//! finite ring with nilpotent I, and the exact relative quotient.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::sift::{identity_elt, Elt, Filtration, PcSubgroup, Sift};
use super::wpair::{apply_move, EquivMove, WPair};
use super::MennickeError;
use crate::chevmat::{embed_phi_beta, ChevModel, GroupMat, Matrix};
use crate::ffring::{FiniteRing, IdealHandle, Poly, RingHandle};
use crate::rootdata::RootType;

/// Default bound on the number of basis elements of E(Φ, R, I).
pub const DEFAULT_BASIS_CAP: usize = 256;

/// Everything needed to compare symbol classes: the ring tables, the
/// filtration of C(I) and a basis of E(Φ, R, I).
pub struct MennickeContext {
    ty: RootType,
    ring: RingHandle,
    fr: Arc<FiniteRing>,
    ideal: IdealHandle,
    e: PcSubgroup,
}

fn check_target(ty: RootType) -> Result<(), MennickeError> {
    match ty {
        RootType::A(2) | RootType::C2 => Ok(()),
        other => Err(MennickeError::Unsupported(other)),
    }
}

/// `e_phi(x)` with its inverse, for every root and every `x` in `coeffs`.
fn root_elts(model: &ChevModel, fr: &FiniteRing, coeffs: &[u8]) -> Vec<Elt> {
    let mut out = Vec::new();
    for i in 0..model.system().len() {
        for &x in coeffs.iter().filter(|&&x| x != 0) {
            out.push(Elt::new(model.root_element(fr, i, &x), model.root_element(fr, i, &fr.negi(x))));
        }
    }
    out
}

impl MennickeContext {
    pub fn new(ty: RootType, ideal: &IdealHandle, cap: usize) -> Result<MennickeContext, MennickeError> {
        check_target(ty)?;
        let ring = ideal.ring().clone();
        let filt = Arc::new(Filtration::new(ideal)?);
        let fr = filt.ring().clone();
        let model = ChevModel::get(ty);
        let basis = fr.fp_basis();
        let g = fr.index(ideal.gen_poly());
        let ideal_span: Vec<u8> = basis.iter().map(|&b| fr.muli(g, b)).collect();
        let seeds = root_elts(&model, &fr, &ideal_span);
        let ambient = root_elts(&model, &fr, &basis);
        let e = PcSubgroup::normal_closure(filt, &seeds, &ambient, cap)?;
        Ok(MennickeContext { ty, ring, fr, ideal: ideal.clone(), e })
    }

    pub fn ty(&self) -> RootType {
        self.ty
    }
    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }
    /// E(Φ, R, I) as a layered subgroup.
    pub fn elementary(&self) -> &PcSubgroup {
        &self.e
    }

    /// `phi_beta` of an SL_2 matrix, with its inverse.
    pub fn embed(&self, m: &Matrix<Poly>) -> Result<Elt, MennickeError> {
        let f = self.ring.field();
        let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
        let inv = Matrix::from_vec(2, vec![d.clone(), b.neg(f), c.neg(f), a.clone()]);
        let fwd = embed_phi_beta(m, &self.ring, self.ty)?.to_finite()?.1;
        let back = embed_phi_beta(&inv, &self.ring, self.ty)?.to_finite()?.1;
        Ok(Elt::new(fwd, back))
    }

    /// `phi_beta` of the congruence completion of `(b, a)`.
    pub fn symbol(&self, w: &WPair) -> Elt {
        self.embed(&w.complete_congruence()).expect("completion has determinant 1")
    }

    /// `g E = h E`.
    pub fn same_class(&self, g: &Elt, h: &Elt) -> bool {
        self.e.contains(&g.inverse().mul(h, &self.fr))
    }

    pub fn in_congruence(&self, g: &Elt) -> bool {
        self.e.filtration().level(&g.m) >= 1
    }

    fn encode(&self, m: &Matrix<u8>) -> String {
        hex::encode(GroupMat::from_finite(self.ty, &self.ring, m).expect("member").encode())
    }

    pub fn certificate(&self, w: &WPair) -> SymbolCertificate {
        let g = self.symbol(w);
        let residue = match self.e.sift(&g) {
            Sift::Member => identity_elt(&self.fr, g.m.dim()),
            Sift::Residue { el, .. } => el,
        };
        SymbolCertificate {
            b: w.b().to_string(),
            a: w.a().to_string(),
            embedded: self.encode(&g.m),
            in_congruence: self.in_congruence(&g),
            trivial: self.e.contains(&g),
            residue: self.encode(&residue.m),
            closure_log_p: self.e.log_order(),
        }
    }

    fn pairs(&self) -> Vec<WPair> {
        WPair::enumerate(&self.ideal).expect("finite ring")
    }

    /// MS(1) for `(b, a) -> f(b, a)`: every single move keeps the class.
    fn ms1(&self, pairs: &[WPair], f: &(dyn Fn(&WPair) -> Elt + Sync)) -> Check {
        let ring = &self.ring;
        let all: Vec<u8> = self.fr.elements().collect();
        let ideal_elems: Vec<u8> = self.fr.ideal_members(self.fr.index(self.ideal.gen_poly()));
        let results: Vec<Check> = pairs
            .par_iter()
            .map(|w| {
                let base = f(w);
                let mut c = Check::default();
                let moves = all
                    .iter()
                    .map(|&x| EquivMove::Column(ring.elem(self.fr.poly(x))))
                    .chain(ideal_elems.iter().map(|&y| EquivMove::Row(ring.elem(self.fr.poly(y)))));
                for m in moves {
                    let (next, _) = apply_move(w, &m).expect("valid move");
                    c.record(self.same_class(&base, &f(&next)), || format!("{w:?} via {m:?}"));
                }
                c
            })
            .collect();
        Check::merge(results)
    }

    /// `f(b1 b2, a) = f(b1, a) f(b2, a)` for all admissible triples, with
    /// `g` applied to `b1` on the left (`g = f` for MS(2)).
    fn product_rule(
        &self,
        pairs: &[WPair],
        left: &(dyn Fn(&WPair) -> Elt + Sync),
        combine: &(dyn Fn(&WPair, &WPair) -> WPair + Sync),
        f: &(dyn Fn(&WPair) -> Elt + Sync),
    ) -> Check {
        let results: Vec<Check> = pairs
            .par_iter()
            .map(|w1| {
                let mut c = Check::default();
                for w2 in pairs.iter().filter(|w2| w2.a() == w1.a()) {
                    let lhs = left(w1).mul(&f(w2), &self.fr);
                    let rhs = f(&combine(w1, w2));
                    c.record(self.same_class(&lhs, &rhs), || format!("{w1:?} * {w2:?}"));
                }
                c
            })
            .collect();
        Check::merge(results)
    }
}

/// Pass/fail tally of one exhaustive check.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Check {
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl Check {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }
    fn merge(parts: Vec<Check>) -> Check {
        parts.into_iter().fold(Check::default(), |mut acc, c| {
            acc.checked += c.checked;
            acc.failed += c.failed;
            if acc.first_failure.is_none() {
                acc.first_failure = c.first_failure;
            }
            acc
        })
    }
    pub fn holds(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolCertificate {
    pub b: String,
    pub a: String,
    /// Hex of the embedded matrix encoding.
    pub embedded: String,
    pub in_congruence: bool,
    /// The class is that of E(Φ, R, I).
    pub trivial: bool,
    /// Hex encoding of the sifted residue (identity for the trivial class).
    pub residue: String,
    /// `log_p |E(Φ, R, I)|`.
    pub closure_log_p: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub phi: String,
    pub ring: String,
    pub ideal: String,
    pub pairs: usize,
    pub ms1: Check,
    pub ms2: Check,
    /// Square-symbol product rule (C_2 only).
    pub square_rule: Option<Check>,
    pub square_ms1: Option<Check>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.ms1.holds()
            && self.ms2.holds()
            && self.square_rule.as_ref().is_none_or(Check::holds)
            && self.square_ms1.as_ref().is_none_or(Check::holds)
    }
}

fn with_b(w: &WPair, b: crate::ffring::RingElem) -> WPair {
    WPair::new(b, w.a().clone(), w.ideal().clone()).expect("product stays in W(I)")
}

/// Symbol class of one pair (builds E(Φ, R, I) first).
pub fn symbol_class(w: &WPair, ty: RootType) -> Result<SymbolCertificate, MennickeError> {
    if !w.ideal().ring().is_finite() {
        return Err(MennickeError::Infinite);
    }
    let ctx = MennickeContext::new(ty, w.ideal(), DEFAULT_BASIS_CAP)?;
    Ok(ctx.certificate(w))
}

/// MS(1) and MS(2) for `{b, a}` exhaustively over W(I). For C_2 the square
/// symbol `[b, a] = {b^2, a}` is checked as well: MS(1), MS(2) and
/// `[b1, a] {b2, a} = {b1^2 b2, a}`.
pub fn mennicke_axioms(ty: RootType, ideal: &IdealHandle) -> Result<AxiomReport, MennickeError> {
    if !ideal.ring().is_finite() {
        return Err(MennickeError::Infinite);
    }
    let ctx = MennickeContext::new(ty, ideal, DEFAULT_BASIS_CAP)?;
    let pairs = ctx.pairs();
    let curly = |w: &WPair| ctx.symbol(w);
    let square = |w: &WPair| ctx.symbol(&with_b(w, w.b().mul(w.b())));
    let times = |w1: &WPair, w2: &WPair| with_b(w1, w1.b().mul(w2.b()));
    let ms1 = ctx.ms1(&pairs, &curly);
    let (ms2, square_rule, square_ms1) = if ty == RootType::C2 {
        let sq_times = |w1: &WPair, w2: &WPair| with_b(w1, w1.b().mul(w1.b()).mul(w2.b()));
        (
            ctx.product_rule(&pairs, &square, &times, &square),
            Some(ctx.product_rule(&pairs, &square, &sq_times, &curly)),
            Some(ctx.ms1(&pairs, &square)),
        )
    } else {
        (ctx.product_rule(&pairs, &curly, &times, &curly), None, None)
    };
    Ok(AxiomReport {
        phi: ty.label(),
        ring: ideal.ring().spec(),
        ideal: format!("{:?}", ideal.gen_poly().coeffs()),
        pairs: pairs.len(),
        ms1,
        ms2,
        square_rule,
        square_ms1,
    })
}

/// The C_2 square-symbol rule together with MS(1) and MS(2) for `[., .]`.
pub fn square_symbol_check(ideal: &IdealHandle) -> Result<bool, MennickeError> {
    Ok(mennicke_axioms(RootType::C2, ideal)?.holds())
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeQuotient {
    pub phi: String,
    pub ring: String,
    pub ideal: String,
    /// `log_p |C(Φ, R, I)|` from the tangent bound `|I|^dim G`.
    pub c_log_p: usize,
    pub e_log_p: usize,
    pub e_layer_dims: Vec<usize>,
    /// `[C : E]` when `C` attains the tangent bound.
    pub index: u64,
    /// Distinct classes met by `phi_beta(SL_2(R, I))`, as hex encodings.
    pub representatives: Vec<String>,
    /// `C = phi_beta(SL_2(R, I)) E`: the classes above number `index`.
    pub covering_holds: bool,
    /// Products of representatives stay among the representatives.
    pub closed: bool,
}

/// `[C(Φ, R, I) : E(Φ, R, I)]` for a proper nonzero nilpotent ideal.
///
/// `E` is computed exactly as a normal closure. `C` is bounded above by
/// `|I|^dim G` (each layer embeds in the Lie algebra tensored with
/// `I^i/I^{i+1}`), so `|E|` reaching the bound proves `C = E`.
pub fn relative_quotient(ty: RootType, ideal: &IdealHandle, cap: usize) -> Result<RelativeQuotient, MennickeError> {
    if !ideal.ring().is_finite() {
        return Err(MennickeError::Infinite);
    }
    let ctx = MennickeContext::new(ty, ideal, cap)?;
    let fr = &ctx.fr;
    let f = ctx.ring.field();
    let sys = ChevModel::get(ty);
    let dim_g = sys.system().len() + sys.system().rank();
    let modulus_deg = ctx.ring.modulus().and_then(Poly::deg).unwrap_or(0);
    let ideal_deg = ideal.gen_poly().deg().unwrap_or(0);
    let c_log_p = dim_g * (modulus_deg - ideal_deg) * f.m() as usize;
    let e_log_p = ctx.e.log_order();
    let p = u64::from(f.p());
    let index = u32::try_from(c_log_p.saturating_sub(e_log_p))
        .ok()
        .and_then(|k| p.checked_pow(k))
        .ok_or(MennickeError::Ring(crate::RingError::TooLarge(u64::MAX)))?;

    // SL_2(R, I) = {[[a, b], [c, d]] : a, d = 1, b, c = 0 mod I, det 1}
    let members = fr.ideal_members(fr.index(ideal.gen_poly()));
    let one = fr.index(&Poly::one());
    let mut reps: Vec<Elt> = Vec::new();
    'outer: for &b in &members {
        for &c in &members {
            for &x in &members {
                let a = fr.addi(one, x);
                let target = fr.addi(one, fr.muli(b, c));
                for &y in &members {
                    let d = fr.addi(one, y);
                    if fr.muli(a, d) != target {
                        continue;
                    }
                    let m = Matrix::from_vec(2, vec![fr.poly(a), fr.poly(b), fr.poly(c), fr.poly(d)]);
                    let g = ctx.embed(&m)?;
                    if !reps.iter().any(|r| ctx.same_class(r, &g)) {
                        reps.push(g);
                        if reps.len() as u64 > index {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    let closed = reps.iter().all(|x| reps.iter().all(|y| {
        let xy = x.mul(y, fr);
        reps.iter().any(|r| ctx.same_class(r, &xy))
    }));
    Ok(RelativeQuotient {
        phi: ty.label(),
        ring: ctx.ring.spec(),
        ideal: ideal.gen_poly().display(f),
        c_log_p,
        e_log_p,
        e_layer_dims: ctx.e.layer_dims(),
        index,
        covering_holds: reps.len() as u64 == index,
        representatives: reps.iter().map(|r| ctx.encode(&r.m)).collect(),
        closed,
    })
}
