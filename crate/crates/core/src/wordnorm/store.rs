//! Breadth-first enumeration of a finite matrix group with dense indices.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::WordNormError;
use crate::chevmat::{ChevModel, Matrix};
use crate::ffring::{FiniteRing, RingHandle};
use crate::rootdata::{Root, RootType};

/// Largest supported matrix size is 14 (G_2).
const MAX_ENTRIES: usize = 196;

/// Element keys: entries bit-packed into 256 bits when they fit.
enum Index {
    Small(FxHashMap<[u64; 4], u32>),
    Large(FxHashMap<Box<[u8]>, u32>),
}

fn pack(m: &[u8], bits: u32) -> [u64; 4] {
    let mut out = [0u64; 4];
    let mut pos = 0u32;
    for &v in m {
        out[(pos / 64) as usize] |= (v as u64) << (pos % 64);
        if pos % 64 + bits > 64 {
            out[(pos / 64) as usize + 1] |= (v as u64) >> (64 - pos % 64);
        }
        pos += bits;
    }
    out
}

/// Default bound on the number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 20_000_000;

/// Conjugacy classes, numbered by their smallest element index.
#[derive(Debug)]
pub struct Classes {
    pub class_of: Vec<u32>,
    /// Members of each class in increasing index order.
    pub members: Vec<Vec<u32>>,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn rep(&self, c: usize) -> u32 {
        self.members[c][0]
    }
}

/// A finite group of `n x n` matrices over a table ring. Index 0 is the
/// identity; indices follow breadth-first order over the generators.
pub struct GroupStore {
    ring: Arc<FiniteRing>,
    handle: Option<RingHandle>,
    ty: Option<RootType>,
    n: usize,
    bits: u32,
    elems: Vec<u8>,
    index: Index,
    gens: Vec<u32>,
    /// Generators used for conjugacy classes (a generating subset).
    class_gens: Vec<u32>,
    parent: Vec<(u32, u16)>,
    inv: Vec<u32>,
    classes: OnceLock<Classes>,
}

impl std::fmt::Debug for GroupStore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupStore({} elements over {})", self.len(), self.ring.spec())
    }
}

impl GroupStore {
    /// Close `gens` under multiplication.
    pub fn enumerate(ring: Arc<FiniteRing>, gens: &[Matrix<u8>], cap: usize) -> Result<GroupStore, WordNormError> {
        let n = gens.first().map_or(1, Matrix::dim);
        let bits = usize::BITS - (ring.order() - 1).leading_zeros();
        let mut st = GroupStore {
            ring,
            handle: None,
            ty: None,
            n,
            bits: bits.max(1),
            elems: Vec::new(),
            index: if n * n * bits.max(1) as usize <= 256 { Index::Small(FxHashMap::default()) } else { Index::Large(FxHashMap::default()) },
            gens: Vec::new(),
            class_gens: Vec::new(),
            parent: Vec::new(),
            inv: Vec::new(),
            classes: OnceLock::new(),
        };
        let id = Matrix::identity(&*st.ring, n);
        st.push(id.entries(), (0, 0));
        let gen_data: Vec<Vec<u8>> = gens.iter().map(|g| g.entries().to_vec()).collect();
        let mut start = 0;
        while start < st.len() {
            let end = st.len();
            let stref = &st;
            let products: Vec<Vec<u8>> = (start..end)
                .into_par_iter()
                .flat_map_iter(|i| {
                    let a = stref.entries(i as u32);
                    gen_data.iter().map(move |g| stref.mul_raw(a, g))
                })
                .collect();
            for (k, m) in products.into_iter().enumerate() {
                if st.lookup(&m).is_none() {
                    if st.len() >= cap {
                        return Err(WordNormError::Cap(cap));
                    }
                    let par = (start + k / gen_data.len()) as u32;
                    st.push(&m, (par, (k % gen_data.len()) as u16));
                }
            }
            start = end;
        }
        st.gens = gen_data.iter().map(|g| st.lookup(g).expect("generator in group")).collect();
        st.class_gens = st.gens.clone();
        st.compute_inverses();
        Ok(st)
    }

    /// `G(Φ, R)` generated by `e_phi(x)`, `x` running over an F_p-basis of
    /// `R`, all roots in canonical order.
    pub fn chevalley(ty: RootType, ring: &RingHandle, cap: usize) -> Result<GroupStore, WordNormError> {
        let fr = ring.finite()?;
        let model = ChevModel::get(ty);
        let basis = fr.fp_basis();
        let gens: Vec<Matrix<u8>> = (0..model.system().len())
            .flat_map(|i| basis.iter().map(move |&x| (i, x)))
            .map(|(i, x)| model.root_element(&*fr, i, &x))
            .collect();
        let mut st = GroupStore::enumerate(fr, &gens, cap)?;
        // The simple roots and their negatives already generate.
        let sys = model.system();
        let simple: Vec<usize> = (0..sys.rank())
            .flat_map(|i| [sys.simple(i), sys.simple(i).neg()])
            .map(|r| sys.index_of(&r).expect("simple root"))
            .collect();
        st.class_gens = simple.iter().flat_map(|&i| st.gens[i * basis.len()..(i + 1) * basis.len()].to_vec()).collect();
        st.handle = Some(ring.clone());
        st.ty = Some(ty);
        Ok(st)
    }

    fn push(&mut self, m: &[u8], parent: (u32, u16)) {
        let i = self.len() as u32;
        match &mut self.index {
            Index::Small(h) => {
                h.insert(pack(m, self.bits), i);
            }
            Index::Large(h) => {
                h.insert(m.into(), i);
            }
        }
        self.elems.extend_from_slice(m);
        self.parent.push(parent);
    }

    fn mul_raw(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.n * self.n];
        self.mul_into(a, b, &mut out);
        out
    }

    fn mul_into(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let n = self.n;
        let r = &*self.ring;
        out.fill(0);
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = b[k * n + j];
                    if y != 0 {
                        out[i * n + j] = r.addi(out[i * n + j], r.muli(x, y));
                    }
                }
            }
        }
    }

    fn compute_inverses(&mut self) {
        // Generator inverses: g^(ord - 1).
        let gen_inv: Vec<u32> = self
            .gens
            .iter()
            .map(|&g| {
                let mut p = g;
                loop {
                    let next = self.mul(p, g);
                    if next == 0 {
                        return p;
                    }
                    p = next;
                }
            })
            .collect();
        let mut inv = vec![0u32; self.len()];
        // parents precede children, so one pass in index order suffices
        for e in 1..self.len() {
            let (p, s) = self.parent[e];
            inv[e] = self.mul(gen_inv[s as usize], inv[p as usize]);
        }
        self.inv = inv;
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }
    /// The ring handle and model, for stores built by [`GroupStore::chevalley`].
    pub fn handle(&self) -> Option<&RingHandle> {
        self.handle.as_ref()
    }
    pub fn root_type(&self) -> Option<RootType> {
        self.ty
    }
    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn len(&self) -> usize {
        self.parent.len()
    }
    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }
    pub fn generators(&self) -> &[u32] {
        &self.gens
    }
    pub fn entries(&self, i: u32) -> &[u8] {
        let s = self.n * self.n;
        &self.elems[i as usize * s..(i as usize + 1) * s]
    }
    pub fn matrix(&self, i: u32) -> Matrix<u8> {
        Matrix::from_vec(self.n, self.entries(i).to_vec())
    }
    pub fn lookup(&self, m: &[u8]) -> Option<u32> {
        match &self.index {
            Index::Small(h) => h.get(&pack(m, self.bits)).copied(),
            Index::Large(h) => h.get(m).copied(),
        }
    }
    pub fn index_of(&self, m: &Matrix<u8>) -> Option<u32> {
        self.lookup(m.entries())
    }
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut buf = [0u8; MAX_ENTRIES];
        let m = &mut buf[..self.n * self.n];
        self.mul_into(self.entries(a), self.entries(b), m);
        self.lookup(m).expect("group closed under multiplication")
    }
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }
    /// `x a x^-1`.
    pub fn conj(&self, a: u32, x: u32) -> u32 {
        let (mut b1, mut b2) = ([0u8; MAX_ENTRIES], [0u8; MAX_ENTRIES]);
        let s = self.n * self.n;
        self.mul_into(self.entries(x), self.entries(a), &mut b1[..s]);
        self.mul_into(&b1[..s], self.entries(self.inv(x)), &mut b2[..s]);
        self.lookup(&b2[..s]).expect("group closed under conjugation")
    }
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Index of `e_phi(x)` (Chevalley stores only).
    pub fn root_element(&self, phi: &Root, x: u8) -> Option<u32> {
        let model = ChevModel::get(self.ty?);
        let m = model.root_element(&*self.ring, model.root_index(phi), &x);
        self.index_of(&m)
    }

    /// Conjugacy classes (orbits under conjugation by the generators).
    pub fn classes(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let n = self.len();
            let images: Vec<Vec<u32>> = (0..n as u32)
                .into_par_iter()
                .map(|e| self.class_gens.iter().map(|&g| self.conj(e, g)).collect())
                .collect();
            let mut parent: Vec<u32> = (0..n as u32).collect();
            fn find(p: &mut [u32], mut x: u32) -> u32 {
                while p[x as usize] != x {
                    p[x as usize] = p[p[x as usize] as usize];
                    x = p[x as usize];
                }
                x
            }
            for (e, imgs) in images.iter().enumerate() {
                for &f in imgs {
                    let (a, b) = (find(&mut parent, e as u32), find(&mut parent, f));
                    if a != b {
                        let (lo, hi) = (a.min(b), a.max(b));
                        parent[hi as usize] = lo;
                    }
                }
            }
            let mut class_of = vec![u32::MAX; n];
            let mut members: Vec<Vec<u32>> = Vec::new();
            let mut root_class: FxHashMap<u32, u32> = FxHashMap::default();
            for e in 0..n as u32 {
                let r = find(&mut parent, e);
                let c = *root_class.entry(r).or_insert_with(|| {
                    members.push(Vec::new());
                    (members.len() - 1) as u32
                });
                class_of[e as usize] = c;
                members[c as usize].push(e);
            }
            Classes { class_of, members }
        })
    }
}
