//! Left row reduction of SL_n over F_q or F_q[T] to the identity.

use super::BoundGenError;
use crate::chevmat::{Matrix, Word};
use crate::ffring::{Poly, RingHandle, RingKind};
use crate::rootdata::{Root, RootType};

#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub input: Matrix<Poly>,
    pub ty: RootType,
    /// Letters `E_ij(x)` as roots `e_i - e_j` of A(n-1).
    pub word: Word,
    pub length: usize,
    pub verified: bool,
}

/// The root `e_i - e_j` of A(n-1) in simple-root coordinates.
pub fn elementary_root(n: usize, i: usize, j: usize) -> Root {
    let mut c = vec![0i64; n - 1];
    let (lo, hi, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
    for v in &mut c[lo..hi] {
        *v = s;
    }
    Root(c)
}

struct Reducer<'a> {
    m: Matrix<Poly>,
    ring: &'a RingHandle,
    /// `(i, j, x)`: row_i += x row_j, in order of application.
    ops: Vec<(usize, usize, Poly)>,
}

impl Reducer<'_> {
    fn op(&mut self, i: usize, j: usize, x: Poly) {
        if x.is_zero() {
            return;
        }
        let f = self.ring.field();
        for c in 0..self.m.dim() {
            let v = self.m.get(i, c).add(&self.m.get(j, c).mul(&x, f), f);
            self.m.set(i, c, v);
        }
        self.ops.push((i, j, x));
    }
}

/// Write `a` (det 1, 2 <= n <= 5) as a product of elementary matrices.
///
/// Column by column: Euclidean descent on the rows below the pivot, move the
/// remaining unit into place with two operations (three if it already sits
/// there but differs from 1), then clear the column. The word is the inverse
/// of the operation sequence.
pub fn elementary_factorize_sln(a: &Matrix<Poly>, ring: &RingHandle) -> Result<FactorizationReport, BoundGenError> {
    let n = a.dim();
    if !(2..=5).contains(&n) {
        return Err(BoundGenError::Unsupported(format!("SL_{n}")));
    }
    if !matches!(ring.kind(), RingKind::Field | RingKind::PolyRing) {
        return Err(BoundGenError::Unsupported(format!("{} is not Euclidean", ring.spec())));
    }
    let a = a.map(|p| ring.reduce(p));
    if a.det(ring) != Poly::one() {
        return Err(BoundGenError::DetNotOne);
    }
    let f = ring.field().clone();
    let mut red = Reducer { m: a.clone(), ring, ops: Vec::new() };
    for c in 0..n {
        loop {
            let live: Vec<usize> = (c..n).filter(|&r| !red.m.get(r, c).is_zero()).collect();
            if live.len() <= 1 {
                break;
            }
            let p = *live.iter().min_by_key(|&&r| (red.m.get(r, c).deg(), r)).expect("nonempty");
            for &r in &live {
                if r != p {
                    let (q, _) = red.m.get(r, c).divrem(red.m.get(p, c), &f);
                    red.op(r, p, q.neg(&f));
                }
            }
        }
        let p = (c..n).find(|&r| !red.m.get(r, c).is_zero()).expect("det 1 leaves a pivot");
        let u = red.m.get(p, c).clone();
        let uinv = Poly::constant(f.inv(u.coeff(0)).expect("pivot is a unit"));
        if p != c {
            red.op(c, p, uinv);
            red.op(p, c, u.neg(&f));
        } else if !u.is_one() {
            let k = if c + 1 < n { c + 1 } else { c - 1 };
            let one_minus = Poly::one().sub(&u, &f);
            red.op(k, c, one_minus.mul(&uinv, &f));
            red.op(c, k, Poly::one());
            red.op(k, c, one_minus.neg(&f));
        }
        for r in 0..n {
            if r != c {
                let x = red.m.get(r, c).neg(&f);
                red.op(r, c, x);
            }
        }
    }
    debug_assert!(red.m.is_identity(ring));
    let ty = RootType::A((n - 1) as u8);
    let mut word = Word::new();
    for (i, j, x) in red.ops {
        word.push(elementary_root(n, i, j), ring.elem(x.neg(&f)));
    }
    let verified = word.eval(ty, ring).matrix() == &a;
    Ok(FactorizationReport { input: a, ty, length: word.len(), word, verified })
}
