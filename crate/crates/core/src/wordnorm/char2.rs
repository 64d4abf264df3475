//! Characteristic-2 computations: the commutator identities behind the
//! ε-set bound, an explicit conjugate-product certificate for
//! `(x^2 - x) R ⊆ ε(A, -β, 6)`, the generation criterion checked on both
//! sides, and the lower-bound construction over F_q[T].

use std::sync::Arc;

use serde::Serialize;

use super::norm::{norm_table, normally_generates};
use super::store::GroupStore;
use super::WordNormError;
use crate::chevmat::{level_ideal_set, ChevModel, GroupMat};
use crate::ffring::{is_irreducible, residue_f2_primes, vn2_ideal, FiniteRing, Poly, RingHandle, RingKind};
use crate::mennicke::{identity_elt, Elt};
use crate::rootdata::{Root, RootType};

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub phi: RootType,
    pub ring: String,
    pub checked: usize,
    /// Parameters (as ring-element indices) where the sides differ.
    pub failures: Vec<Vec<u8>>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn char2_ring(ring: &RingHandle) -> Result<Arc<FiniteRing>, WordNormError> {
    if ring.characteristic() != 2 {
        return Err(WordNormError::Input(format!("{} does not have characteristic 2", ring.spec())));
    }
    Ok(ring.finite()?)
}

struct Roots {
    model: Arc<ChevModel>,
    fr: Arc<FiniteRing>,
}

impl Roots {
    fn e(&self, c: &[i64], x: u8) -> Elt {
        let i = self.model.root_index(&Root(c.to_vec()));
        let r = &*self.fr;
        Elt::new(self.model.root_element(r, i, &x), self.model.root_element(r, i, &r.negi(x)))
    }
    fn w(&self, c: &[i64]) -> Elt {
        let i = self.model.root_index(&Root(c.to_vec()));
        let j = self.model.root_index(&Root(c.iter().map(|v| -v).collect()));
        let r = &*self.fr;
        let m = self.model.weyl_element(r, i);
        // w^-1 = e_phi(-1) e_{-phi}(1) e_phi(-1)
        let (a, b) = (self.model.root_element(r, i, &r.negi(1)), self.model.root_element(r, j, &1));
        Elt::new(m, a.mul(&b, r).mul(&a, r))
    }
    fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        a.mul(b, &self.fr)
    }
}

fn pow(r: &FiniteRing, x: u8, k: u32) -> u8 {
    (0..k).fold(1, |acc, _| r.muli(acc, x))
}

/// `(e_{α+β}(1) e_{2α+β}(1), e_{-β}(x)) = e_α(x) e_{2α+β}(x)` in Sp_4 for
/// every `x` of a characteristic-2 ring.
pub fn sp4_char2_identity(ring: &RingHandle) -> Result<IdentityReport, WordNormError> {
    let fr = char2_ring(ring)?;
    let g = Roots { model: ChevModel::get(RootType::C2), fr: fr.clone() };
    let a = g.mul(&g.e(&[1, 1], 1), &g.e(&[2, 1], 1));
    let mut failures = Vec::new();
    for x in fr.elements() {
        let lhs = a.commutator(&g.e(&[0, -1], x), &fr);
        let rhs = g.mul(&g.e(&[1, 0], x), &g.e(&[2, 1], x));
        if lhs.m != rhs.m {
            failures.push(vec![x]);
        }
    }
    Ok(IdentityReport { phi: RootType::C2, ring: ring.spec(), checked: fr.order(), failures })
}

#[derive(Clone, Debug, Serialize)]
pub struct G2IdentityReport {
    pub ring: String,
    pub checked: usize,
    /// Pairs `(x, y)` where the three-term product differs from the left side.
    pub literal_failures: Vec<Vec<u8>>,
    /// Pairs where the side with `e_{3α+2β}(x^3 y^2)` differs.
    pub exact_failures: Vec<Vec<u8>>,
    /// At every literal failure the quotient of the two sides is
    /// `e_{3α+2β}(x^2 y^2)`.
    pub defect_is_long_root: bool,
}

impl G2IdentityReport {
    pub fn literal_holds(&self) -> bool {
        self.literal_failures.is_empty()
    }
    pub fn exact_holds(&self) -> bool {
        self.exact_failures.is_empty()
    }
}

/// `(e_β(xy), e_α(1)) (e_β(y), e_α(x))` against
/// `e_{2α+β}((x+x^2)y) e_{3α+β}(xy+x^3y) e_{3α+2β}(c)` in G_2 for all
/// `x, y`, with `c = x^2y^2 + x^3y^2` (literal form) and `c = x^3y^2`.
///
/// Multiplying the two commutators moves `e_{α+β}(xy)` past
/// `e_{2α+β}(xy)`, which costs `e_{3α+2β}(3 x^2 y^2)`; the literal form
/// omits that long-root factor.
pub fn g2_char2_identity(ring: &RingHandle) -> Result<G2IdentityReport, WordNormError> {
    let fr = char2_ring(ring)?;
    let r = &*fr;
    let g = Roots { model: ChevModel::get(RootType::G2), fr: fr.clone() };
    let mut literal_failures = Vec::new();
    let mut exact_failures = Vec::new();
    let mut defect_is_long_root = true;
    for x in r.elements() {
        for y in r.elements() {
            let xy = r.muli(x, y);
            let lhs = g.mul(
                &g.e(&[0, 1], xy).commutator(&g.e(&[1, 0], 1), r),
                &g.e(&[0, 1], y).commutator(&g.e(&[1, 0], x), r),
            );
            let c1 = r.muli(r.addi(x, pow(r, x, 2)), y);
            let c2 = r.addi(xy, r.muli(pow(r, x, 3), y));
            let y2 = pow(r, y, 2);
            let short = g.mul(&g.e(&[2, 1], c1), &g.e(&[3, 1], c2));
            let literal = g.mul(&short, &g.e(&[3, 2], r.muli(r.addi(pow(r, x, 2), pow(r, x, 3)), y2)));
            let exact = g.mul(&short, &g.e(&[3, 2], r.muli(pow(r, x, 3), y2)));
            if lhs.m != literal.m {
                literal_failures.push(vec![x, y]);
                let defect = g.mul(&lhs, &literal.inverse());
                defect_is_long_root &= defect.m == g.e(&[3, 2], r.muli(pow(r, x, 2), y2)).m;
            }
            if lhs.m != exact.m {
                exact_failures.push(vec![x, y]);
            }
        }
    }
    Ok(G2IdentityReport {
        ring: ring.spec(),
        checked: r.order() * r.order(),
        literal_failures,
        exact_failures,
        defect_is_long_root,
    })
}

/// `prod_k c_k A^{s_k} c_k^-1` for a fixed `A`.
#[derive(Clone, Debug)]
pub struct ConjProduct {
    pub factors: Vec<(Elt, i8)>,
}

impl ConjProduct {
    /// `(A, g) = A (g A^-1 g^-1)`.
    fn commutator_with(id: &Elt, g: &Elt) -> ConjProduct {
        ConjProduct { factors: vec![(id.clone(), 1), (g.clone(), -1)] }
    }
    fn conj(&self, x: &Elt, r: &FiniteRing) -> ConjProduct {
        ConjProduct { factors: self.factors.iter().map(|(c, s)| (x.mul(c, r), *s)).collect() }
    }
    fn inverse(&self) -> ConjProduct {
        ConjProduct { factors: self.factors.iter().rev().map(|(c, s)| (c.clone(), -s)).collect() }
    }
    fn then(mut self, o: &ConjProduct) -> ConjProduct {
        self.factors.extend(o.factors.iter().cloned());
        self
    }
    /// `(P, g) = P (g P^-1 g^-1)`.
    fn commutator(&self, g: &Elt, r: &FiniteRing) -> ConjProduct {
        self.clone().then(&self.inverse().conj(g, r))
    }
    pub fn len(&self) -> usize {
        self.factors.len()
    }
    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
    pub fn eval(&self, a: &Elt, r: &FiniteRing) -> Elt {
        let n = a.m.dim();
        self.factors.iter().fold(identity_elt(r, n), |acc, (c, s)| {
            let p = if *s > 0 { a.clone() } else { a.inverse() };
            acc.mul(&p.conj_by(c, r), r)
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonEntry {
    /// `z`, `x`, `y` as ring-element indices with `z = (x^2 - x) y`.
    pub z: u8,
    pub x: Option<u8>,
    pub y: Option<u8>,
    pub conjugates: usize,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonCertificate {
    pub ring: String,
    pub ideal: String,
    pub bound: usize,
    pub entries: Vec<EpsilonEntry>,
}

impl EpsilonCertificate {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.verified && e.conjugates <= self.bound)
    }
}

/// For each `z` of the image of vn_2, an explicit product of at most six
/// conjugates of `A^{±1}`, `A = e_{α+β}(1) e_{2α+β}(1)` in Sp_4, equal to
/// `e_{-β}(z)`, checked by multiplication.
///
/// With `D(x) = (A, e_{-β}(x)) = e_α(x) e_{2α+β}(x)`:
/// `E(x)`, the conjugate of `D(x)` by `w_β w_α w_β`, is `e_α(x) e_{-β}(x)`;
/// `G = e_α(y) (D(y), e_{-(α+β)}(x)) e_α(y)^-1` is `e_{-β}(x^2 y) e_α(xy)`,
/// so `G E(xy) = e_{-β}((x^2 + x) y)` uses 4 + 2 conjugates.
pub fn vn2_epsilon_certificate(ring: &RingHandle) -> Result<EpsilonCertificate, WordNormError> {
    let fr = char2_ring(ring)?;
    let r = &*fr;
    let ideal = vn2_ideal(ring)?;
    let g = Roots { model: ChevModel::get(RootType::C2), fr: fr.clone() };
    let a = g.mul(&g.e(&[1, 1], 1), &g.e(&[2, 1], 1));
    let id = identity_elt(r, a.m.dim());
    let d = |x: u8| ConjProduct::commutator_with(&id, &g.e(&[0, -1], x));
    let w = g.mul(&g.mul(&g.w(&[0, 1]), &g.w(&[1, 0])), &g.w(&[0, 1]));
    let gen = r.index(ideal.gen_poly());
    let mut entries = Vec::new();
    for z in r.ideal_members(gen) {
        let found = r.elements().find_map(|x| {
            let s = r.subi(r.muli(x, x), x);
            r.elements().find(|&y| r.muli(s, y) == z).map(|y| (x, y))
        });
        let Some((x, y)) = found else {
            entries.push(EpsilonEntry { z, x: None, y: None, conjugates: 0, verified: false });
            continue;
        };
        let xy = r.muli(x, y);
        let f = d(y).commutator(&g.e(&[-1, -1], x), r);
        let gp = f.conj(&g.e(&[1, 0], r.negi(y)), r);
        let cert = gp.then(&d(xy).conj(&w, r));
        let verified = cert.eval(&a, r).m == g.e(&[0, -1], z).m;
        entries.push(EpsilonEntry { z, x: Some(x), y: Some(y), conjugates: cert.len(), verified });
    }
    Ok(EpsilonCertificate { ring: ring.spec(), ideal: ideal.gen_poly().display(ring.field()), bound: 6, entries })
}

#[derive(Clone, Debug, Serialize)]
pub struct CharGenReport {
    pub phi: RootType,
    pub ring: String,
    /// `<<S>> = G(Φ, R)`.
    pub lhs: bool,
    /// `l(S) = R`.
    pub level_whole: bool,
    /// The product of the residue-F_2 primes dividing the modulus.
    pub f2_part: String,
    /// Image of `S` normally generates `G(Φ, R/J)`.
    pub image_generates: bool,
    pub rhs: bool,
    pub agree: bool,
}

fn check_c2_g2(ty: RootType) -> Result<(), WordNormError> {
    match ty {
        RootType::C2 | RootType::G2 => Ok(()),
        _ => Err(WordNormError::Input(format!("{ty} is not C2 or G2"))),
    }
}

fn indices(store: &GroupStore, s: &[GroupMat], ring: &RingHandle) -> Result<Vec<u32>, WordNormError> {
    s.iter()
        .map(|m| {
            let m = GroupMat::new(m.ty(), ring, m.matrix().clone())?;
            let (_, fm) = m.to_finite()?;
            store.index_of(&fm).ok_or_else(|| WordNormError::Input("element outside the group".into()))
        })
        .collect()
}

/// Both sides of the generation criterion over a finite quotient `R` of
/// F_2[T]: `<<S>> = G(Φ, R)` against `l(S) = R` together with normal
/// generation of the image in `G(Φ, R/J)`, `J` the product of the primes of
/// `R` with residue field F_2.
pub fn char_gen_check(ty: RootType, ring: &RingHandle, s: &[GroupMat], cap: usize) -> Result<CharGenReport, WordNormError> {
    check_c2_g2(ty)?;
    let modulus = match (ring.kind(), ring.modulus()) {
        (RingKind::Quotient, Some(g)) if ring.q() == 2 => g.clone(),
        _ => return Err(WordNormError::Input(format!("{} is not a quotient of F_2[T]", ring.spec()))),
    };
    let f = ring.field();
    let store = GroupStore::chevalley(ty, ring, cap)?;
    let lhs = !s.is_empty() && normally_generates(&store, &indices(&store, s, ring)?);
    let level_whole = !s.is_empty() && level_ideal_set(s)?.is_whole();
    let j = residue_f2_primes(&ring.base_poly_ring())?
        .into_iter()
        .filter(|p| p.divides(&modulus, f))
        .fold(Poly::one(), |acc, p| acc.mul(&p, f));
    let image_generates = if j.is_one() {
        true
    } else if s.is_empty() {
        false
    } else {
        let target = RingHandle::quotient(f.clone(), &j)?;
        let small = GroupStore::chevalley(ty, &target, cap)?;
        normally_generates(&small, &indices(&small, s, &target)?)
    };
    let rhs = level_whole && image_generates;
    Ok(CharGenReport {
        phi: ty,
        ring: ring.spec(),
        lhs,
        level_whole,
        f2_part: j.display(f),
        image_generates,
        rhs,
        agree: lhs == rhs,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundCertificate {
    pub phi: RootType,
    pub l: usize,
    pub r: usize,
    pub primes: Vec<String>,
    pub y: Vec<String>,
    /// The short root `φ` with `S = {e_φ(y_i)}`.
    pub root: Vec<i64>,
    pub level_whole: bool,
    pub quotient: String,
    pub quotient_order: usize,
    pub image_generates: bool,
    /// Diameter of the norm of the image of `S` in the product quotient.
    pub diameter: Option<u32>,
    pub holds: bool,
}

/// `S = {e_φ(y_i)}` with `y_i` the product of all chosen primes but the
/// i-th: the residue-F_2 primes of `F_q[T]` followed by `extra`. Certifies
/// `l(S) = F_q[T]`, normal generation of the image of `S` in
/// `G(Φ, F_q[T]/(prod of the primes))` and a diameter of at least `l` there.
pub fn lower_bound_construction(
    ty: RootType,
    base: &RingHandle,
    l: usize,
    extra: &[Poly],
    cap: usize,
) -> Result<(Vec<GroupMat>, LowerBoundCertificate), WordNormError> {
    check_c2_g2(ty)?;
    let f = base.field().clone();
    let mut primes = residue_f2_primes(base)?;
    let r = primes.len();
    if l < r || extra.len() != l - r {
        return Err(WordNormError::Input(format!("need l >= r = {r} and exactly l - r extra primes")));
    }
    for p in extra {
        let monic = p.is_monic() && p.deg().is_some_and(|d| d >= 1);
        if !monic || !is_irreducible(&base.elem(p.clone()))? || primes.contains(p) {
            return Err(WordNormError::Input(format!("{} is not a new monic irreducible", p.display(&f))));
        }
        primes.push(p.clone());
    }
    let model = ChevModel::get(ty);
    let phi = model.system().simple(0);
    let y: Vec<Poly> = (0..l)
        .map(|i| primes.iter().enumerate().filter(|&(k, _)| k != i).fold(Poly::one(), |acc, (_, p)| acc.mul(p, &f)))
        .collect();
    let s: Vec<GroupMat> = y.iter().map(|p| GroupMat::root_element(ty, base, &phi, &base.elem(p.clone()))).collect();
    let level_whole = !s.is_empty() && level_ideal_set(&s)?.is_whole();
    let m = primes.iter().fold(Poly::one(), |acc, p| acc.mul(p, &f));
    let quot = RingHandle::quotient(f.clone(), &m)?;
    let store = GroupStore::chevalley(ty, &quot, cap)?;
    let t = indices(&store, &s, &quot)?;
    let table = norm_table(&store, &t);
    let image_generates = table.normally_generates();
    let holds = level_whole && image_generates && table.diameter.is_some_and(|d| d as usize >= l);
    let cert = LowerBoundCertificate {
        phi: ty,
        l,
        r,
        primes: primes.iter().map(|p| p.display(&f)).collect(),
        y: y.iter().map(|p| p.display(&f)).collect(),
        root: phi.0.clone(),
        level_whole,
        quotient: quot.spec(),
        quotient_order: store.len(),
        image_generates,
        diameter: table.diameter,
        holds,
    };
    Ok((s, cert))
}

