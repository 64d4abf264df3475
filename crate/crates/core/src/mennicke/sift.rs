//! Subgroups of a congruence kernel C(I) for a nilpotent ideal I of a finite
//! ring, via the filtration C(I) ⊇ C(I^2) ⊇ ... ⊇ C(I^N) = 1.
//!
//! Each layer C(I^i)/C(I^{i+1}) is elementary abelian: `1 + X -> X mod
//! I^{i+1}` is additive there because `X Y` lies in I^{2i}. A subgroup is
//! stored as an echelon list of elements per layer; a product of powers of
//! the basis elements, layer by layer, reaches every subgroup element exactly
//! once, so the order is `p^(basis size)`.

use std::sync::Arc;

use crate::chevmat::Matrix;
use crate::ffring::{FiniteRing, IdealHandle, Poly, Ring, RingError};

/// A group element with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elt {
    pub m: Matrix<u8>,
    pub inv: Matrix<u8>,
}

impl Elt {
    pub fn new(m: Matrix<u8>, inv: Matrix<u8>) -> Elt {
        Elt { m, inv }
    }
    pub fn mul(&self, o: &Elt, r: &FiniteRing) -> Elt {
        Elt { m: self.m.mul(&o.m, r), inv: o.inv.mul(&self.inv, r) }
    }
    pub fn inverse(&self) -> Elt {
        Elt { m: self.inv.clone(), inv: self.m.clone() }
    }
    pub fn pow(&self, k: u32, r: &FiniteRing) -> Elt {
        let id = Matrix::identity(r, self.m.dim());
        (0..k).fold(Elt { m: id.clone(), inv: id }, |acc, _| acc.mul(self, r))
    }
    /// `(self, o) = self o self^-1 o^-1`.
    pub fn commutator(&self, o: &Elt, r: &FiniteRing) -> Elt {
        self.mul(o, r).mul(&self.inverse(), r).mul(&o.inverse(), r)
    }
    /// `x self x^-1`.
    pub fn conj_by(&self, x: &Elt, r: &FiniteRing) -> Elt {
        x.mul(self, r).mul(&x.inverse(), r)
    }
}

/// Depth and layer coordinates for the powers of a nilpotent ideal.
#[derive(Debug)]
pub struct Filtration {
    ring: Arc<FiniteRing>,
    /// `depth[e]` = largest `i` with `e` in I^i (N for zero).
    depth: Vec<usize>,
    /// `coords[i][e]`: F_p digits of `e mod I^{i+1}`.
    coords: Vec<Vec<Vec<u8>>>,
    top: usize,
}

impl Filtration {
    /// Fails with [`RingError::WrongKind`] unless `ideal` is a proper,
    /// nonzero, nilpotent ideal of a finite quotient ring.
    pub fn new(ideal: &IdealHandle) -> Result<Filtration, RingError> {
        let ring = ideal.ring();
        let fr = ring.finite()?;
        if ideal.is_zero() || ideal.is_whole() {
            return Err(RingError::WrongKind("proper nonzero ideal"));
        }
        let f = ring.field().clone();
        let g = ideal.gen_poly().clone();
        let mut gens = vec![Poly::one()];
        loop {
            let next = IdealHandle::new(ring, &gens.last().unwrap().mul(&g, &f));
            if next.is_zero() {
                break;
            }
            if gens.len() > 64 {
                return Err(RingError::WrongKind("nilpotent ideal"));
            }
            if *next.gen_poly() == *gens.last().unwrap() {
                return Err(RingError::WrongKind("nilpotent ideal"));
            }
            gens.push(next.gen_poly().clone());
        }
        // gens[i] generates I^i for i < top; I^top = 0.
        let top = gens.len();
        let modulus = ring.modulus().cloned().expect("quotient ring");
        gens.push(modulus);
        let p = f.p() as usize;
        let depth = fr
            .elements()
            .map(|e| {
                let x = fr.poly(e);
                if x.is_zero() {
                    top
                } else {
                    (0..top).rev().find(|&i| gens[i].divides(&x, &f)).unwrap_or(0)
                }
            })
            .collect();
        let coords = (0..top)
            .map(|i| {
                let h = &gens[i + 1];
                let width = h.deg().unwrap_or(0) * f.m() as usize;
                fr.elements()
                    .map(|e| {
                        let mut idx = fr.poly(e).rem(h, &f).to_index(f.order());
                        (0..width)
                            .map(|_| {
                                let d = (idx % p as u64) as u8;
                                idx /= p as u64;
                                d
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Filtration { ring: fr, depth, coords, top })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }
    /// `N` with I^N = 0.
    pub fn top(&self) -> usize {
        self.top
    }
    pub fn p(&self) -> u32 {
        self.ring.characteristic()
    }

    fn diff(&self, m: &Matrix<u8>, r: usize, c: usize) -> u8 {
        let v = *m.get(r, c);
        if r == c {
            self.ring.subi(v, self.ring.one())
        } else {
            v
        }
    }

    /// Largest `i` with `m = 1 mod I^i`; `top()` for the identity.
    pub fn level(&self, m: &Matrix<u8>) -> usize {
        let n = m.dim();
        let mut lvl = self.top;
        for r in 0..n {
            for c in 0..n {
                lvl = lvl.min(self.depth[self.diff(m, r, c) as usize]);
            }
        }
        lvl
    }

    /// Image of `m` in layer `i` as an F_p vector.
    pub fn lead(&self, m: &Matrix<u8>, i: usize) -> Vec<u8> {
        let n = m.dim();
        let mut v = Vec::new();
        for r in 0..n {
            for c in 0..n {
                v.extend_from_slice(&self.coords[i][self.diff(m, r, c) as usize]);
            }
        }
        v
    }
}

#[derive(Clone, Debug)]
struct BasisElt {
    el: Elt,
    pivot: usize,
}

/// A subgroup of C(I), stored layer by layer.
#[derive(Debug)]
pub struct PcSubgroup {
    filt: Arc<Filtration>,
    basis: Vec<Vec<BasisElt>>,
}

/// Result of sifting: member, or the residue and the layer where it stuck.
pub enum Sift {
    Member,
    Residue { el: Elt, layer: usize, lead: Vec<u8> },
}

impl PcSubgroup {
    pub fn trivial(filt: Arc<Filtration>) -> PcSubgroup {
        let n = filt.top();
        PcSubgroup { filt, basis: vec![Vec::new(); n] }
    }
    pub fn filtration(&self) -> &Filtration {
        &self.filt
    }
    /// `log_p` of the order.
    pub fn log_order(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }
    /// Basis sizes per layer.
    pub fn layer_dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Divide `g` by basis elements until it is the identity or its leading
    /// term is independent of the basis. `g` must lie in C(I).
    pub fn sift(&self, g: &Elt) -> Sift {
        let r = self.filt.ring();
        let p = self.filt.p() as u8;
        let mut g = g.clone();
        loop {
            let i = self.filt.level(&g.m);
            if i == self.filt.top() {
                return Sift::Member;
            }
            assert!(i >= 1, "element outside the congruence kernel");
            for b in &self.basis[i] {
                let k = self.filt.lead(&g.m, i)[b.pivot];
                if k != 0 {
                    // lead(g b^{p-k}) = lead(g) - k lead(b)
                    g = g.mul(&b.el.pow(u32::from(p - k), r), r);
                }
            }
            let lead = self.filt.lead(&g.m, i);
            if lead.iter().any(|&x| x != 0) {
                return Sift::Residue { el: g, layer: i, lead };
            }
        }
    }

    pub fn contains(&self, g: &Elt) -> bool {
        matches!(self.sift(g), Sift::Member)
    }

    /// Add a sifted residue as a basis element; returns it.
    fn insert(&mut self, el: Elt, layer: usize, lead: Vec<u8>) -> Elt {
        let r = self.filt.ring().clone();
        let p = self.filt.p();
        let pivot = lead.iter().position(|&x| x != 0).unwrap();
        let inv = (1..p).find(|s| (s * u32::from(lead[pivot])) % p == 1).unwrap();
        let el = el.pow(inv, &r);
        self.basis[layer].push(BasisElt { el: el.clone(), pivot });
        el
    }

    /// Normal closure of `seeds` under conjugation by `ambient`, which must
    /// normalize C(I). Fails once the basis would exceed `cap` elements.
    pub fn normal_closure(
        filt: Arc<Filtration>,
        seeds: &[Elt],
        ambient: &[Elt],
        cap: usize,
    ) -> Result<PcSubgroup, RingError> {
        let r = filt.ring().clone();
        let p = filt.p();
        let mut h = PcSubgroup::trivial(filt);
        let mut queue: std::collections::VecDeque<Elt> = seeds.iter().cloned().collect();
        while let Some(g) = queue.pop_front() {
            if let Sift::Residue { el, layer, lead } = h.sift(&g) {
                if h.log_order() >= cap {
                    return Err(RingError::CapExhausted(format!("subgroup basis exceeds {cap}")));
                }
                let b = h.insert(el, layer, lead);
                queue.push_back(b.pow(p, &r));
                for other in h.basis.iter().flatten() {
                    queue.push_back(b.commutator(&other.el, &r));
                }
                for x in ambient {
                    queue.push_back(b.conj_by(x, &r));
                }
            }
        }
        Ok(h)
    }
}

/// Identity element of size `n`.
pub fn identity_elt(r: &FiniteRing, n: usize) -> Elt {
    let id = Matrix::identity(r, n);
    Elt { m: id.clone(), inv: id }
}
