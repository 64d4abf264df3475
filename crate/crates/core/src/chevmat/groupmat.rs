//! Group elements over a ring handle, words, reduction, level ideals, the
//! phi_beta embeddings and the canonical byte encoding.

use std::sync::Arc;

use super::matrix::Matrix;
use super::model::ChevModel;
use super::ChevError;
use crate::ffring::{FiniteRing, IdealHandle, Poly, RingElem, RingHandle, RingKind};
use crate::rootdata::{Root, RootType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMat {
    ty: RootType,
    ring: RingHandle,
    m: Matrix<Poly>,
}

impl GroupMat {
    pub fn new(ty: RootType, ring: &RingHandle, m: Matrix<Poly>) -> Result<GroupMat, ChevError> {
        let model = ChevModel::get(ty);
        if m.dim() != model.dim() {
            return Err(ChevError::SizeMismatch { expected: model.dim(), got: m.dim() });
        }
        let m = m.map(|p| ring.reduce(p));
        Ok(GroupMat { ty, ring: ring.clone(), m })
    }
    pub fn identity(ty: RootType, ring: &RingHandle) -> GroupMat {
        let n = ChevModel::get(ty).dim();
        GroupMat { ty, ring: ring.clone(), m: Matrix::identity(ring, n) }
    }
    pub fn root_element(ty: RootType, ring: &RingHandle, phi: &Root, x: &RingElem) -> GroupMat {
        let model = ChevModel::get(ty);
        let m = model.root_element(ring, model.root_index(phi), x.poly());
        GroupMat { ty, ring: ring.clone(), m }
    }
    pub fn weyl_element(ty: RootType, ring: &RingHandle, phi: &Root) -> GroupMat {
        let model = ChevModel::get(ty);
        let m = model.weyl_element(ring, model.root_index(phi));
        GroupMat { ty, ring: ring.clone(), m }
    }

    pub fn ty(&self) -> RootType {
        self.ty
    }
    pub fn ring(&self) -> &RingHandle {
        &self.ring
    }
    pub fn matrix(&self) -> &Matrix<Poly> {
        &self.m
    }
    pub fn entry(&self, r: usize, c: usize) -> RingElem {
        self.ring.elem(self.m.get(r, c).clone())
    }
    pub fn mul(&self, o: &GroupMat) -> GroupMat {
        assert!(self.ty == o.ty && self.ring == o.ring, "incompatible group elements");
        GroupMat { ty: self.ty, ring: self.ring.clone(), m: self.m.mul(&o.m, &self.ring) }
    }
    pub fn is_identity(&self) -> bool {
        self.m.is_identity(&self.ring)
    }
    pub fn is_member(&self) -> bool {
        ChevModel::get(self.ty).is_member(&self.ring, &self.m)
    }

    /// Byte-indexed matrix over the finite ring.
    pub fn to_finite(&self) -> Result<(Arc<FiniteRing>, Matrix<u8>), ChevError> {
        let fr = self.ring.finite()?;
        let m = self.m.map(|p| fr.index(p));
        Ok((fr, m))
    }
    pub fn from_finite(ty: RootType, ring: &RingHandle, m: &Matrix<u8>) -> Result<GroupMat, ChevError> {
        let fr = ring.finite()?;
        GroupMat::new(ty, ring, m.map(|&i| fr.poly(i)))
    }

    /// Canonical encoding: magic `CGM1`, model tag, rank, ring spec (u16
    /// length prefix), dimension, then each entry row-major as a u16 count
    /// of little-endian field-element bytes.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = b"CGM1".to_vec();
        let (tag, rank) = match self.ty {
            RootType::A(n) => (b'A', n),
            RootType::C2 => (b'C', 2),
            RootType::G2 => (b'G', 2),
        };
        out.push(tag);
        out.push(rank);
        let spec = self.ring.spec();
        out.extend_from_slice(&(spec.len() as u16).to_le_bytes());
        out.extend_from_slice(spec.as_bytes());
        out.push(self.m.dim() as u8);
        for e in self.m.entries() {
            out.extend_from_slice(&(e.coeffs().len() as u16).to_le_bytes());
            out.extend_from_slice(e.coeffs());
        }
        out
    }

    /// Inverse of [`GroupMat::encode`]; rejects anything non-canonical.
    pub fn decode(bytes: &[u8]) -> Result<GroupMat, ChevError> {
        let bad = |m: &str| ChevError::Decode(m.into());
        let mut cur = bytes.strip_prefix(b"CGM1").ok_or_else(|| bad("missing magic"))?;
        let mut take = |n: usize| -> Result<&[u8], ChevError> {
            if cur.len() < n {
                return Err(bad("truncated"));
            }
            let (h, t) = cur.split_at(n);
            cur = t;
            Ok(h)
        };
        let hdr = take(2)?;
        let ty = match (hdr[0], hdr[1]) {
            (b'A', n @ 1..=4) => RootType::A(n),
            (b'C', 2) => RootType::C2,
            (b'G', 2) => RootType::G2,
            _ => return Err(bad("unknown model tag")),
        };
        let len = u16::from_le_bytes(take(2)?.try_into().unwrap()) as usize;
        let spec = std::str::from_utf8(take(len)?).map_err(|_| bad("ring spec is not UTF-8"))?;
        let ring = RingHandle::parse(spec)?;
        if ring.spec() != spec {
            return Err(bad("ring spec is not canonical"));
        }
        let dim = take(1)?[0] as usize;
        if dim != ChevModel::get(ty).dim() {
            return Err(bad("dimension does not match model"));
        }
        let q = ring.q();
        let width = ring.width();
        let mut entries = Vec::with_capacity(dim * dim);
        for _ in 0..dim * dim {
            let n = u16::from_le_bytes(take(2)?.try_into().unwrap()) as usize;
            let c = take(n)?;
            if c.iter().any(|&x| x as u32 >= q) || c.last() == Some(&0) {
                return Err(bad("non-canonical coefficient vector"));
            }
            if width.is_some_and(|w| n > w) {
                return Err(bad("entry not reduced"));
            }
            entries.push(Poly::from_coeffs(c.to_vec()));
        }
        if !cur.is_empty() {
            return Err(bad("trailing bytes"));
        }
        Ok(GroupMat { ty, ring, m: Matrix::from_vec(dim, entries) })
    }
}

/// A product of root elements, left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<(Root, RingElem)>,
}

impl Word {
    pub fn new() -> Word {
        Word { letters: Vec::new() }
    }
    pub fn len(&self) -> usize {
        self.letters.len()
    }
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
    pub fn push(&mut self, phi: Root, x: RingElem) {
        self.letters.push((phi, x));
    }
    pub fn eval(&self, ty: RootType, ring: &RingHandle) -> GroupMat {
        self.letters
            .iter()
            .fold(GroupMat::identity(ty, ring), |acc, (phi, x)| acc.mul(&GroupMat::root_element(ty, ring, phi, x)))
    }
}

impl Default for Word {
    fn default() -> Self {
        Word::new()
    }
}

/// Entrywise reduction F_q[T] -> F_q[T]/I.
pub fn reduce_mod(a: &GroupMat, ideal: &IdealHandle) -> Result<GroupMat, ChevError> {
    if a.ring.kind() != RingKind::PolyRing || ideal.ring() != &a.ring {
        return Err(ChevError::RingMismatch);
    }
    if ideal.is_zero() {
        return Err(ChevError::ZeroIdeal);
    }
    let target = ideal.quotient_ring()?;
    GroupMat::new(a.ty, &target, a.m.clone())
}

/// Level ideal: generated by off-diagonal entries and diagonal differences.
pub fn level_ideal(a: &GroupMat) -> Result<IdealHandle, ChevError> {
    level_ideal_set(std::slice::from_ref(a))
}

/// Sum of the level ideals of a set (zero ideal for the empty set).
pub fn level_ideal_set(set: &[GroupMat]) -> Result<IdealHandle, ChevError> {
    let Some(first) = set.first() else {
        return Err(ChevError::Empty);
    };
    let ring = first.ring.clone();
    let f = ring.field().clone();
    let mut g = Poly::zero();
    for a in set {
        if !matches!(a.ty, RootType::C2 | RootType::G2) {
            return Err(ChevError::Unsupported(a.ty));
        }
        if a.ring != ring {
            return Err(ChevError::RingMismatch);
        }
        let n = a.m.dim();
        for r in 0..n {
            for c in 0..n {
                let x = if r == c {
                    if r == 0 {
                        continue;
                    }
                    a.m.get(r, r).sub(a.m.get(0, 0), &f)
                } else {
                    a.m.get(r, c).clone()
                };
                g = g.gcd(&x, &f);
            }
        }
    }
    Ok(IdealHandle::new(&ring, &g))
}

/// The phi_beta embedding of `[[a, b], [c, d]]`: block diagonal into SL_3,
/// or onto the coordinates {e1, f1} of Sp_4.
pub fn embed_phi_beta(m: &Matrix<Poly>, ring: &RingHandle, target: RootType) -> Result<GroupMat, ChevError> {
    if m.dim() != 2 {
        return Err(ChevError::SizeMismatch { expected: 2, got: m.dim() });
    }
    if m.det(ring) != ring.reduce(&Poly::one()) {
        return Err(ChevError::DetNotOne);
    }
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let one = Poly::one();
    let z = Poly::zero();
    let full = match target {
        RootType::A(2) => Matrix::from_vec(
            3,
            vec![a.clone(), b.clone(), z.clone(), c.clone(), d.clone(), z.clone(), z.clone(), z.clone(), one],
        ),
        RootType::C2 => Matrix::from_fn(4, |r, col| match (r, col) {
            (0, 0) => a.clone(),
            (0, 2) => b.clone(),
            (2, 0) => c.clone(),
            (2, 2) => d.clone(),
            (1, 1) | (3, 3) => one.clone(),
            _ => z.clone(),
        }),
        other => return Err(ChevError::Unsupported(other)),
    };
    GroupMat::new(target, ring, full)
}
