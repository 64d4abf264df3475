//! Coefficient rings: F_q, F_q[T] and F_q[T]/(g), the ring-spec grammar, and
//! byte-indexed tables for small finite rings.

use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use super::field::{Fe, FieldDesc};
use super::poly::Poly;
use super::RingError;

/// Arithmetic used by the matrix layer. Elements are plain values; the ring
/// object carries whatever context the operations need.
pub trait Ring: Send + Sync {
    type E: Clone + Eq + Hash + fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Image of an integer.
    fn from_int(&self, n: i64) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
    fn is_zero(&self, a: &Self::E) -> bool {
        *a == self.zero()
    }
}

/// The integers, with overflow treated as a bug.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl Ring for Integers {
    type E = i64;
    fn zero(&self) -> i64 {
        0
    }
    fn one(&self) -> i64 {
        1
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("integer overflow")
    }
    fn neg(&self, a: &i64) -> i64 {
        -a
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.checked_mul(*b).expect("integer overflow")
    }
    fn from_int(&self, n: i64) -> i64 {
        n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Field,
    PolyRing,
    Quotient,
}

/// Largest finite ring given byte-indexed tables.
pub const MAX_TABLE_RING: u64 = 256;

struct RingDesc {
    kind: RingKind,
    field: Arc<FieldDesc>,
    modulus: Option<Poly>,
    tables: OnceLock<Option<Arc<FiniteRing>>>,
}

#[derive(Clone)]
pub struct RingHandle(Arc<RingDesc>);

impl PartialEq for RingHandle {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
            || (self.0.kind == o.0.kind && self.0.field == o.0.field && self.0.modulus == o.0.modulus)
    }
}
impl Eq for RingHandle {}

impl fmt::Debug for RingHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingHandle({})", self.spec())
    }
}

impl RingHandle {
    fn new(kind: RingKind, field: Arc<FieldDesc>, modulus: Option<Poly>) -> RingHandle {
        RingHandle(Arc::new(RingDesc { kind, field, modulus, tables: OnceLock::new() }))
    }
    pub fn field_ring(field: Arc<FieldDesc>) -> RingHandle {
        Self::new(RingKind::Field, field, None)
    }
    pub fn poly_ring(field: Arc<FieldDesc>) -> RingHandle {
        Self::new(RingKind::PolyRing, field, None)
    }
    /// F_q[T]/(g); `g` is made monic and must have degree at least 1.
    pub fn quotient(field: Arc<FieldDesc>, g: &Poly) -> Result<RingHandle, RingError> {
        match g.deg() {
            None => Err(RingError::ZeroModulus),
            Some(0) => Err(RingError::Parse("quotient modulus must have degree >= 1".into())),
            Some(_) => {
                let g = g.monic(&field);
                Ok(Self::new(RingKind::Quotient, field, Some(g)))
            }
        }
    }

    /// Parse an element given as a coefficient list in the ring-spec syntax,
    /// e.g. `0,1,1` for `T + T^2`; the result is reduced.
    pub fn parse_elem(&self, s: &str) -> Result<RingElem, RingError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let p = parse_coeff_list(&t, self.field()).map_err(|m| RingError::Parse(format!("{m} in element {s:?}")))?;
        if self.kind() == RingKind::Field && p.deg().is_some_and(|d| d > 0) {
            return Err(RingError::Parse(format!("element {s:?} of a field must be a constant")));
        }
        Ok(self.elem(p))
    }

    /// Parse a ring spec such as `GF(2)[T]/(1,1,1)`.
    pub fn parse(spec: &str) -> Result<RingHandle, RingError> {
        parse_spec(spec)
    }

    pub fn kind(&self) -> RingKind {
        self.0.kind
    }
    pub fn field(&self) -> &Arc<FieldDesc> {
        &self.0.field
    }
    pub fn q(&self) -> u32 {
        self.0.field.order()
    }
    pub fn characteristic(&self) -> u32 {
        self.0.field.p()
    }
    /// The quotient modulus (monic), if any.
    pub fn modulus(&self) -> Option<&Poly> {
        self.0.modulus.as_ref()
    }
    pub fn is_finite(&self) -> bool {
        self.0.kind != RingKind::PolyRing
    }
    /// Number of elements; `None` for F_q[T] or if it overflows.
    pub fn order(&self) -> Option<u64> {
        match self.0.kind {
            RingKind::Field => Some(self.q() as u64),
            RingKind::PolyRing => None,
            RingKind::Quotient => {
                let d = self.modulus().and_then(Poly::deg)? as u32;
                (self.q() as u64).checked_pow(d)
            }
        }
    }
    /// Length of coefficient vectors of reduced elements (`None` for F_q[T]).
    pub fn width(&self) -> Option<usize> {
        match self.0.kind {
            RingKind::Field => Some(1),
            RingKind::PolyRing => None,
            RingKind::Quotient => self.modulus().and_then(Poly::deg),
        }
    }

    /// The underlying F_q[T] (for a field, F_q[T] itself).
    pub fn base_poly_ring(&self) -> RingHandle {
        Self::poly_ring(self.0.field.clone())
    }

    /// Canonical reduced representative.
    pub fn reduce(&self, p: &Poly) -> Poly {
        match self.0.kind {
            RingKind::PolyRing => p.clone(),
            RingKind::Field => Poly::constant(eval_const(p)),
            RingKind::Quotient => p.rem(self.modulus().unwrap(), &self.0.field),
        }
    }

    pub fn elem(&self, p: Poly) -> RingElem {
        RingElem { c: self.reduce(&p), ring: self.clone() }
    }
    pub fn elem_from(&self, coeffs: &[Fe]) -> RingElem {
        self.elem(Poly::from_coeffs(coeffs.to_vec()))
    }
    pub fn t(&self) -> RingElem {
        self.elem(Poly::t())
    }

    /// Byte tables for a finite ring of at most 256 elements.
    pub fn finite(&self) -> Result<Arc<FiniteRing>, RingError> {
        if !self.is_finite() {
            return Err(RingError::Infinite);
        }
        self.0
            .tables
            .get_or_init(|| {
                let n = self.order()?;
                (n <= MAX_TABLE_RING).then(|| Arc::new(FiniteRing::build(self)))
            })
            .clone()
            .ok_or(RingError::TooLarge(self.order().unwrap_or(u64::MAX)))
    }

    /// Canonical spec string accepted by [`RingHandle::parse`].
    pub fn spec(&self) -> String {
        let f = &self.0.field;
        let base = f.spec();
        match self.0.kind {
            RingKind::Field => base,
            RingKind::PolyRing => format!("{base}[T]"),
            RingKind::Quotient => {
                let g = self.modulus().unwrap();
                let cs: Vec<String> = (0..=g.deg().unwrap())
                    .map(|i| coeff_spec(f, g.coeff(i)))
                    .collect();
                format!("{base}[T]/({})", cs.join(","))
            }
        }
    }

    /// All elements of a finite ring in index order.
    pub fn elements(&self) -> Result<Vec<RingElem>, RingError> {
        let n = self.order().ok_or(RingError::Infinite)?;
        if n > 1 << 24 {
            return Err(RingError::TooLarge(n));
        }
        Ok((0..n).map(|i| self.elem(Poly::from_index(i, self.q()))).collect())
    }
}

// F_q as a ring has no T; only constants are meaningful there.
fn eval_const(p: &Poly) -> Fe {
    assert!(p.deg().unwrap_or(0) == 0, "non-constant element of a field ring");
    p.coeff(0)
}

fn coeff_spec(f: &FieldDesc, c: Fe) -> String {
    if f.m() == 1 {
        c.to_string()
    } else {
        let mut d = f.digits(c);
        while d.len() > 1 && d.last() == Some(&0) {
            d.pop();
        }
        d.iter().map(u32::to_string).collect::<Vec<_>>().join(":")
    }
}

fn parse_spec(spec: &str) -> Result<RingHandle, RingError> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| RingError::Parse(format!("{msg} in ring spec {spec:?}"));
    let rest = s.strip_prefix("GF(").ok_or_else(|| err("expected GF("))?;
    let close = rest.find(')').ok_or_else(|| err("unclosed GF("))?;
    let inner = &rest[..close];
    let rest = &rest[close + 1..];
    let (p, m) = match inner.split_once('^') {
        Some((p, m)) => (
            p.parse::<u32>().map_err(|_| err("bad characteristic"))?,
            m.parse::<u32>().map_err(|_| err("bad extension degree"))?,
        ),
        None => {
            let q: u32 = inner.parse().map_err(|_| err("bad field order"))?;
            prime_power(q).ok_or_else(|| err("field order is not a prime power"))?
        }
    };
    let field = FieldDesc::get(p, m)?;
    if rest.is_empty() {
        return Ok(RingHandle::field_ring(field));
    }
    let rest = rest.strip_prefix("[T]").ok_or_else(|| err("expected [T]"))?;
    if rest.is_empty() {
        return Ok(RingHandle::poly_ring(field));
    }
    let list = rest
        .strip_prefix("/(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| err("expected /(c0,...,cn)"))?;
    let coeffs = parse_coeff_list(list, &field).map_err(err)?;
    RingHandle::quotient(field.clone(), &coeffs)
}

/// `c0,c1,...` little-endian, each coefficient `d0:d1:...` over F_p.
fn parse_coeff_list(list: &str, field: &FieldDesc) -> Result<Poly, &'static str> {
    let mut coeffs = Vec::new();
    for c in list.split(',') {
        let digits: Vec<u32> =
            c.split(':').map(|d| d.parse::<u32>().map_err(|_| "bad coefficient")).collect::<Result<_, _>>()?;
        if digits.len() > field.m() as usize || digits.iter().any(|&d| d >= field.p()) {
            return Err("coefficient out of range");
        }
        coeffs.push(field.from_digits(&digits));
    }
    Ok(Poly::from_coeffs(coeffs))
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

/// An element of a [`RingHandle`], stored as its reduced representative.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElem {
    ring: RingHandle,
    c: Poly,
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c.display(self.ring.field()))
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c.display(self.ring.field()))
    }
}

impl RingElem {
    pub fn ring(&self) -> &RingHandle {
        &self.ring
    }
    pub fn poly(&self) -> &Poly {
        &self.c
    }
    pub fn coeffs(&self) -> &[Fe] {
        self.c.coeffs()
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }
    pub fn deg(&self) -> Option<usize> {
        self.c.deg()
    }
    fn f(&self) -> &FieldDesc {
        self.ring.field()
    }
    fn same(&self, o: &RingElem) {
        assert!(self.ring == o.ring, "elements of different rings");
    }
    pub fn add(&self, o: &RingElem) -> RingElem {
        self.same(o);
        self.ring.elem(self.c.add(&o.c, self.f()))
    }
    pub fn sub(&self, o: &RingElem) -> RingElem {
        self.same(o);
        self.ring.elem(self.c.sub(&o.c, self.f()))
    }
    pub fn neg(&self) -> RingElem {
        self.ring.elem(self.c.neg(self.f()))
    }
    pub fn mul(&self, o: &RingElem) -> RingElem {
        self.same(o);
        self.ring.elem(self.c.mul(&o.c, self.f()))
    }
    /// Multiplicative inverse, if a unit.
    pub fn inv(&self) -> Option<RingElem> {
        let f = self.f();
        match self.ring.kind() {
            RingKind::Field | RingKind::PolyRing => {
                if self.c.deg() == Some(0) {
                    Some(self.ring.elem(Poly::constant(f.inv(self.c.lc())?)))
                } else {
                    None
                }
            }
            RingKind::Quotient => {
                let (d, u, _) = self.c.ext_gcd(self.ring.modulus().unwrap(), f)?;
                d.is_one().then(|| self.ring.elem(u))
            }
        }
    }
    pub fn is_unit(&self) -> bool {
        self.inv().is_some()
    }
    pub fn pow(&self, e: u64) -> RingElem {
        let f = self.f();
        match self.ring.modulus() {
            Some(m) => self.ring.elem(self.c.pow_mod(e, m, f)),
            None => self.ring.elem(self.c.pow(e, f)),
        }
    }
}

/// A finite ring with at most 256 elements and full operation tables.
/// Element `i` is the residue whose coefficient vector is the base-q
/// expansion of `i`.
pub struct FiniteRing {
    spec: String,
    q: u32,
    p: u32,
    n: usize,
    field: Arc<FieldDesc>,
    modulus: Option<Poly>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<Option<u8>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({})", self.spec)
    }
}

impl FiniteRing {
    fn build(h: &RingHandle) -> FiniteRing {
        let n = h.order().unwrap() as usize;
        let q = h.q();
        let f = h.field().clone();
        let el: Vec<Poly> = (0..n as u64).map(|i| Poly::from_index(i, q)).collect();
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        let mut neg = vec![0u8; n];
        let mut inv = vec![None; n];
        for i in 0..n {
            neg[i] = el[i].neg(&f).to_index(q) as u8;
            for j in 0..n {
                add[i * n + j] = el[i].add(&el[j], &f).to_index(q) as u8;
                let m = h.reduce(&el[i].mul(&el[j], &f)).to_index(q) as u8;
                mul[i * n + j] = m;
                if m == 1 {
                    inv[i] = Some(j as u8);
                }
            }
        }
        FiniteRing {
            spec: h.spec(),
            q,
            p: f.p(),
            n,
            modulus: h.modulus().cloned(),
            field: f,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }
    pub fn order(&self) -> usize {
        self.n
    }
    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn field(&self) -> &Arc<FieldDesc> {
        &self.field
    }
    pub fn modulus(&self) -> Option<&Poly> {
        self.modulus.as_ref()
    }
    #[inline]
    pub fn addi(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.n + b as usize]
    }
    #[inline]
    pub fn muli(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.n + b as usize]
    }
    #[inline]
    pub fn negi(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn subi(&self, a: u8, b: u8) -> u8 {
        self.addi(a, self.negi(b))
    }
    pub fn invi(&self, a: u8) -> Option<u8> {
        self.inv[a as usize]
    }
    pub fn is_unit(&self, a: u8) -> bool {
        self.inv[a as usize].is_some()
    }
    pub fn poly(&self, a: u8) -> Poly {
        Poly::from_index(a as u64, self.q)
    }
    /// Index of a polynomial after reduction.
    pub fn index(&self, p: &Poly) -> u8 {
        let r = match &self.modulus {
            Some(m) => p.rem(m, &self.field),
            None => p.clone(),
        };
        r.to_index(self.q) as u8
    }
    /// Index of `T` (or of 0 in a field ring, where T is not defined).
    pub fn t(&self) -> u8 {
        match self.modulus {
            Some(_) => self.index(&Poly::t()),
            None => 0,
        }
    }
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.n).map(|i| i as u8)
    }
    pub fn units(&self) -> Vec<u8> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }
    /// Elements of the ideal generated by `g`.
    pub fn ideal_members(&self, g: u8) -> Vec<u8> {
        let mut v: Vec<u8> = self.elements().map(|x| self.muli(x, g)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
    /// An F_p-basis of the additive group: `w^j T^i` for a field basis `w^j`.
    pub fn fp_basis(&self) -> Vec<u8> {
        let width = self.modulus.as_ref().and_then(Poly::deg).unwrap_or(1);
        let m = self.field.m();
        let mut out = Vec::new();
        for i in 0..width {
            for j in 0..m {
                let c = self.field.from_digits(&{
                    let mut d = vec![0; m as usize];
                    d[j as usize] = 1;
                    d
                });
                out.push(self.index(&Poly::monomial(c, i)));
            }
        }
        out
    }
}

impl Ring for FiniteRing {
    type E = u8;
    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn add(&self, a: &u8, b: &u8) -> u8 {
        self.addi(*a, *b)
    }
    fn neg(&self, a: &u8) -> u8 {
        self.negi(*a)
    }
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        self.muli(*a, *b)
    }
    fn from_int(&self, n: i64) -> u8 {
        n.rem_euclid(self.p as i64) as u8
    }
    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }
}

impl Ring for RingHandle {
    type E = Poly;
    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        self.reduce(&Poly::one())
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b, self.field())
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg(self.field())
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&a.mul(b, self.field()))
    }
    fn from_int(&self, n: i64) -> Poly {
        Poly::constant(self.field().from_i64(n))
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}

impl<R: Ring> Ring for Arc<R> {
    type E = R::E;
    fn zero(&self) -> R::E {
        (**self).zero()
    }
    fn one(&self) -> R::E {
        (**self).one()
    }
    fn add(&self, a: &R::E, b: &R::E) -> R::E {
        (**self).add(a, b)
    }
    fn neg(&self, a: &R::E) -> R::E {
        (**self).neg(a)
    }
    fn mul(&self, a: &R::E, b: &R::E) -> R::E {
        (**self).mul(a, b)
    }
    fn from_int(&self, n: i64) -> R::E {
        (**self).from_int(n)
    }
    fn sub(&self, a: &R::E, b: &R::E) -> R::E {
        (**self).sub(a, b)
    }
    fn is_zero(&self, a: &R::E) -> bool {
        (**self).is_zero(a)
    }
}
