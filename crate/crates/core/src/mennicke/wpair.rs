use thiserror::Error;

use crate::chevmat::{Matrix, Word};
use crate::ffring::{IdealHandle, Poly, RingElem, RingError, RingKind};
use crate::rootdata::Root;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WPairError {
    #[error("(b, a) is not congruent to (0, 1) modulo the ideal")]
    Congruence,
    #[error("a and b do not generate the unit ideal")]
    NotUnimodular,
    #[error("entries live in different rings")]
    RingMismatch,
    #[error("row move coefficient is not in the ideal")]
    RowOutsideIdeal,
}

/// An element `(b, a)` of W(I): `(b, a) = (0, 1) mod I` and `aR + bR = R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WPair {
    b: RingElem,
    a: RingElem,
    ideal: IdealHandle,
}

impl WPair {
    pub fn new(b: RingElem, a: RingElem, ideal: IdealHandle) -> Result<WPair, WPairError> {
        let ring = ideal.ring();
        if b.ring() != ring || a.ring() != ring {
            return Err(WPairError::RingMismatch);
        }
        let one = ring.elem(Poly::one());
        if !ideal.contains(&b) || !ideal.contains(&a.sub(&one)) {
            return Err(WPairError::Congruence);
        }
        if !IdealHandle::principal(&a).sum(&IdealHandle::principal(&b)).is_whole() {
            return Err(WPairError::NotUnimodular);
        }
        Ok(WPair { b, a, ideal })
    }
    pub fn b(&self) -> &RingElem {
        &self.b
    }
    pub fn a(&self) -> &RingElem {
        &self.a
    }
    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }
}

/// An I-equivalence step: `Column(x)` sends `a` to `a + x b`, `Row(y)` sends
/// `b` to `b + y a` and needs `y` in I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivMove {
    Column(RingElem),
    Row(RingElem),
}

impl EquivMove {
    pub fn coefficient(&self) -> &RingElem {
        match self {
            EquivMove::Column(x) | EquivMove::Row(x) => x,
        }
    }
}

/// Apply a move. The returned one-letter SL_2 word `w` satisfies: `M * w`
/// has top row `(a', b')` whenever `M` has top row `(a, b)`.
pub fn apply_move(w: &WPair, m: &EquivMove) -> Result<(WPair, Word), WPairError> {
    let ring = w.ideal.ring();
    if m.coefficient().ring() != ring {
        return Err(WPairError::RingMismatch);
    }
    let mut word = Word::new();
    let next = match m {
        EquivMove::Column(x) => {
            word.push(Root(vec![-1]), x.clone());
            WPair { b: w.b.clone(), a: w.a.add(&x.mul(&w.b)), ideal: w.ideal.clone() }
        }
        EquivMove::Row(y) => {
            if !w.ideal.contains(y) {
                return Err(WPairError::RowOutsideIdeal);
            }
            word.push(Root(vec![1]), y.clone());
            WPair { b: w.b.add(&y.mul(&w.a)), a: w.a.clone(), ideal: w.ideal.clone() }
        }
    };
    Ok((next, word))
}

fn two_by_two(a: &RingElem, b: &RingElem, c: &Poly, d: &Poly) -> Matrix<Poly> {
    Matrix::from_vec(2, vec![a.poly().clone(), b.poly().clone(), c.clone(), d.clone()])
}

/// First `(c, d)` in index order with `a d - b c = 1` and `c` in `c_ideal`.
fn complete_finite(w: &WPair, c_ideal: &IdealHandle) -> Matrix<Poly> {
    let ring = w.ideal.ring();
    let fr = ring.finite().expect("finite ring");
    let (a, b) = (fr.index(w.a.poly()), fr.index(w.b.poly()));
    let one = fr.index(&Poly::one());
    for c in fr.elements().filter(|&c| c_ideal.contains_poly(&fr.poly(c))) {
        let target = fr.addi(one, fr.muli(b, c));
        if let Some(d) = fr.elements().find(|&d| fr.muli(a, d) == target) {
            return two_by_two(&w.a, &w.b, &fr.poly(c), &fr.poly(d));
        }
    }
    unreachable!("unimodular row without completion")
}

/// Over F_q[T]: `c = -b^{-1} mod a`, lifted by CRT to be `0 mod g`, reduced
/// to minimal degree; `d = (1 + b c) / a`.
fn complete_poly(w: &WPair, g: &Poly) -> Matrix<Poly> {
    let f = w.ideal.ring().field().clone();
    let (a, b) = (w.a.poly(), w.b.poly());
    let (_, _, v) = a.ext_gcd(b, &f).expect("unimodular");
    // u a + v b = 1, so b^{-1} = v mod a.
    let c0 = v.neg(&f).rem(a, &f);
    let c = if g.is_zero() || g.deg() == Some(0) {
        c0
    } else {
        // c = c0 + a k with a k = -c0 mod g
        let (_, ainv, _) = a.ext_gcd(g, &f).expect("a = 1 mod I");
        let k = c0.neg(&f).mul(&ainv, &f).rem(g, &f);
        c0.add(&a.mul(&k, &f), &f).rem(&a.mul(g, &f), &f)
    };
    let (d, r) = Poly::one().add(&b.mul(&c, &f), &f).divrem(a, &f);
    debug_assert!(r.is_zero());
    two_by_two(&w.a, &w.b, &c, &d)
}

impl WPair {
    /// `[[a, b], [c, d]]` with determinant 1 and `c` of minimal degree (over a
    /// finite ring: minimal index).
    pub fn complete(&self) -> Matrix<Poly> {
        let whole = IdealHandle::whole(self.ideal.ring());
        match self.ideal.ring().kind() {
            RingKind::PolyRing => complete_poly(self, &Poly::one()),
            _ => complete_finite(self, &whole),
        }
    }

    /// Completion inside SL_2(R, I): as [`WPair::complete`] but with `c` in I,
    /// so that the embedded matrix lies in the congruence subgroup.
    pub fn complete_congruence(&self) -> Matrix<Poly> {
        match self.ideal.ring().kind() {
            RingKind::PolyRing => complete_poly(self, self.ideal.gen_poly()),
            _ => complete_finite(self, &self.ideal),
        }
    }

    /// All of W(I) over a finite ring, in index order of `(b, a)`.
    pub fn enumerate(ideal: &IdealHandle) -> Result<Vec<WPair>, RingError> {
        let ring = ideal.ring();
        let fr = ring.finite()?;
        let mut out = Vec::new();
        for b in fr.elements() {
            for a in fr.elements() {
                if let Ok(w) = WPair::new(ring.elem(fr.poly(b)), ring.elem(fr.poly(a)), ideal.clone()) {
                    out.push(w);
                }
            }
        }
        Ok(out)
    }
}
