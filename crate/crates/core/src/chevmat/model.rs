//! Integer root-element data for the matrix models SL_{n+1}, Sp_4 and the
//! 14-dimensional adjoint G_2.
//!
//! Every root element is a polynomial in its parameter with integer matrix
//! coefficients, `e_phi(x) = I + x D_1 + x^2 D_2 + ...`, so one table serves
//! every coefficient ring.

use std::sync::{Arc, OnceLock};

use super::matrix::Matrix;
use crate::ffring::{Integers, Ring};
use crate::rootdata::{LieConstants, Root, RootSystem, RootType};

pub type IntMat = Matrix<i64>;

#[derive(Debug)]
pub struct ChevModel {
    sys: RootSystem,
    dim: usize,
    /// `terms[root][k-1] = D_k`.
    terms: Vec<Vec<IntMat>>,
    lie: Option<LieConstants>,
}

fn unit(n: usize, r: usize, c: usize) -> IntMat {
    Matrix::from_fn(n, |i, j| i64::from(i == r && j == c))
}

fn combo(n: usize, parts: &[(usize, usize, i64)]) -> IntMat {
    Matrix::from_fn(n, |i, j| parts.iter().filter(|p| p.0 == i && p.1 == j).map(|p| p.2).sum())
}

impl ChevModel {
    /// Shared model for a root system label (built once per process).
    pub fn get(ty: RootType) -> Arc<ChevModel> {
        static CACHE: OnceLock<std::sync::Mutex<Vec<(RootType, Arc<ChevModel>)>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("model cache poisoned");
        if let Some((_, m)) = guard.iter().find(|(t, _)| *t == ty) {
            return m.clone();
        }
        let m = Arc::new(ChevModel::build(ty));
        guard.push((ty, m.clone()));
        m
    }

    fn build(ty: RootType) -> ChevModel {
        let sys = RootSystem::build(ty).expect("supported root system");
        match ty {
            RootType::A(n) => {
                let d = n as usize + 1;
                let terms = sys
                    .roots()
                    .iter()
                    .map(|r| {
                        // sum_{l=i}^{j-1} alpha_l  <->  e_i - e_j
                        let nz: Vec<usize> = (0..r.0.len()).filter(|&k| r.0[k] != 0).collect();
                        let (i, j) = (nz[0], nz[nz.len() - 1] + 1);
                        if r.is_positive() {
                            vec![unit(d, i, j)]
                        } else {
                            vec![unit(d, j, i)]
                        }
                    })
                    .collect();
                ChevModel { sys, dim: d, terms, lie: None }
            }
            RootType::C2 => {
                // Basis e1, e2, f1, f2 for the form J = [[0, I], [-I, 0]];
                // alpha = eps2 - eps1 is short, beta = 2 eps1 is long.
                let x = |c: &[i64]| -> IntMat {
                    match c {
                        [1, 0] => combo(4, &[(1, 0, 1), (2, 3, -1)]),
                        [0, 1] => combo(4, &[(0, 2, 1)]),
                        [1, 1] => combo(4, &[(0, 3, 1), (1, 2, 1)]),
                        [2, 1] => combo(4, &[(1, 3, 1)]),
                        [-1, 0] => combo(4, &[(0, 1, 1), (3, 2, -1)]),
                        [0, -1] => combo(4, &[(2, 0, 1)]),
                        [-1, -1] => combo(4, &[(3, 0, 1), (2, 1, 1)]),
                        [-2, -1] => combo(4, &[(3, 1, 1)]),
                        _ => unreachable!("C2 root"),
                    }
                };
                let terms = sys.roots().iter().map(|r| vec![x(&r.0)]).collect();
                ChevModel { sys, dim: 4, terms, lie: None }
            }
            RootType::G2 => {
                let lie = LieConstants::compute(&sys).expect("G2 structure constants");
                let d = lie.dim();
                let terms = (0..sys.len())
                    .map(|i| {
                        let ad = Matrix::from_fn(d, |r, c| lie.ad(i)[r][c]);
                        divided_powers(&ad)
                    })
                    .collect();
                ChevModel { sys, dim: d, terms, lie: Some(lie) }
            }
        }
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }
    pub fn ty(&self) -> RootType {
        self.sys.ty()
    }
    /// Matrix size n_Phi.
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn lie(&self) -> Option<&LieConstants> {
        self.lie.as_ref()
    }
    /// `D_1, D_2, ...` for the root with index `i`.
    pub fn terms(&self, i: usize) -> &[IntMat] {
        &self.terms[i]
    }
    pub fn root_index(&self, r: &Root) -> usize {
        self.sys.index_of(r).unwrap_or_else(|| panic!("{r:?} is not a root of {}", self.ty()))
    }

    /// `e_phi(x)` for the root with index `i`.
    pub fn root_element<R: Ring>(&self, ring: &R, i: usize, x: &R::E) -> Matrix<R::E> {
        let mut m = Matrix::identity(ring, self.dim);
        if ring.is_zero(x) {
            return m;
        }
        let mut xp = x.clone();
        for d in &self.terms[i] {
            for (k, v) in d.entries().iter().enumerate() {
                if *v != 0 {
                    let (r, c) = (k / self.dim, k % self.dim);
                    let add = ring.mul(&ring.from_int(*v), &xp);
                    let cur = m.get(r, c).clone();
                    m.set(r, c, ring.add(&cur, &add));
                }
            }
            xp = ring.mul(&xp, x);
        }
        m
    }

    /// `w_phi = e_phi(1) e_{-phi}(-1) e_phi(1)`.
    pub fn weyl_element<R: Ring>(&self, ring: &R, i: usize) -> Matrix<R::E> {
        let one = ring.one();
        let neg = self.root_index(&self.sys.roots()[i].neg());
        let a = self.root_element(ring, i, &one);
        let b = self.root_element(ring, neg, &ring.neg(&one));
        a.mul(&b, ring).mul(&a, ring)
    }

    /// Membership in the model group: det 1 for SL, `A^T J A = J` for Sp_4,
    /// Lie automorphism with det 1 for G_2.
    pub fn is_member<R: Ring>(&self, ring: &R, a: &Matrix<R::E>) -> bool {
        if a.dim() != self.dim {
            return false;
        }
        match self.ty() {
            RootType::A(_) => a.det(ring) == ring.one(),
            RootType::C2 => {
                let j = symplectic_form(ring);
                a.transpose().mul(&j, ring).mul(a, ring) == j
            }
            RootType::G2 => self.is_lie_automorphism(ring, a) && a.det(ring) == ring.one(),
        }
    }

    /// `A [x, y] = [A x, A y]` on all pairs of basis vectors.
    pub fn is_lie_automorphism<R: Ring>(&self, ring: &R, a: &Matrix<R::E>) -> bool {
        let lie = self.lie.as_ref().expect("G2 model");
        let d = self.dim;
        let table: Vec<Vec<Vec<(usize, R::E)>>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| lie.bracket(i, j).into_iter().map(|(k, c)| (k, ring.from_int(c))).collect())
                    .collect()
            })
            .collect();
        let col = |j: usize| -> Vec<(usize, R::E)> {
            (0..d).filter(|&r| !ring.is_zero(a.get(r, j))).map(|r| (r, a.get(r, j).clone())).collect()
        };
        let cols: Vec<_> = (0..d).map(col).collect();
        for i in 0..d {
            for j in i + 1..d {
                // left: A applied to [e_i, e_j]
                let mut left = vec![ring.zero(); d];
                for (k, c) in &table[i][j] {
                    for (r, v) in &cols[*k] {
                        left[*r] = ring.add(&left[*r], &ring.mul(c, v));
                    }
                }
                // right: [A e_i, A e_j]
                let mut right = vec![ring.zero(); d];
                for (k, x) in &cols[i] {
                    for (l, y) in &cols[j] {
                        let xy = ring.mul(x, y);
                        for (m, c) in &table[*k][*l] {
                            right[*m] = ring.add(&right[*m], &ring.mul(&xy, c));
                        }
                    }
                }
                if left != right {
                    return false;
                }
            }
        }
        true
    }
}

/// `J = [[0, I_2], [-I_2, 0]]`.
pub fn symplectic_form<R: Ring>(ring: &R) -> Matrix<R::E> {
    let (z, o, m) = (ring.zero(), ring.one(), ring.neg(&ring.one()));
    Matrix::from_fn(4, |r, c| match (r, c) {
        (0, 2) | (1, 3) => o.clone(),
        (2, 0) | (3, 1) => m.clone(),
        _ => z.clone(),
    })
}

/// `A^k / k!` for `k >= 1` until the powers vanish; panics if a divided power
/// is not integral.
fn divided_powers(a: &IntMat) -> Vec<IntMat> {
    let z = Integers;
    let mut out = Vec::new();
    let mut p = a.clone();
    let mut fact = 1i64;
    let mut k = 1;
    while p.entries().iter().any(|&v| v != 0) {
        fact *= k;
        assert!(
            p.entries().iter().all(|v| v % fact == 0),
            "non-integral divided power of order {k}"
        );
        out.push(p.map(|v| v / fact));
        p = p.mul(a, &z);
        k += 1;
        assert!(k <= 8, "ad e_phi is not nilpotent");
    }
    out
}
