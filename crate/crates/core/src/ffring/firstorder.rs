//! Stable range checks and the Exp(t,l) witness validator.

use serde::Serialize;

use super::ring::{RingElem, RingHandle, RingKind};
use super::RingError;
use crate::mennicke::WPair;

#[derive(Clone, Debug)]
pub struct StableRangeReport {
    pub holds: bool,
    /// A unimodular pair `(a0, a1)` with no `x` making `a1 - x a0` a unit.
    pub counterexample: Option<(RingElem, RingElem)>,
}

/// Exhaustive stable-range-one test on a finite ring.
pub fn stable_range_one_check(ring: &RingHandle) -> Result<StableRangeReport, RingError> {
    let fr = ring.finite()?;
    let f = ring.field();
    let unimodular = |a: u8, b: u8| -> bool {
        let g = fr.poly(a).gcd(&fr.poly(b), f);
        match fr.modulus() {
            Some(m) => g.gcd(m, f).is_one(),
            None => g.is_one(),
        }
    };
    for a0 in fr.elements() {
        for a1 in fr.elements() {
            if !unimodular(a0, a1) {
                continue;
            }
            let ok = fr.elements().any(|x| fr.is_unit(fr.subi(a1, fr.muli(x, a0))));
            if !ok {
                return Ok(StableRangeReport {
                    holds: false,
                    counterexample: Some((ring.elem(fr.poly(a0)), ring.elem(fr.poly(a1)))),
                });
            }
        }
    }
    Ok(StableRangeReport { holds: true, counterexample: None })
}

/// Stable range one for F_q[T]/(a), `a` a nonzero non-unit.
pub fn stable_range_3_2_check(a: &RingElem) -> Result<StableRangeReport, RingError> {
    if a.ring().kind() != RingKind::PolyRing {
        return Err(RingError::WrongKind("an element of F_q[T]"));
    }
    match a.deg() {
        None | Some(0) => Err(RingError::TrivialInput),
        Some(_) => {
            let r = RingHandle::quotient(a.ring().field().clone(), a.poly())?;
            stable_range_one_check(&r)
        }
    }
}

/// Per-index part of an Exp(t,l) witness.
#[derive(Clone, Debug)]
pub struct ExpWitnessRow {
    pub u: RingElem,
    pub f: RingElem,
    pub g: RingElem,
    pub b1: RingElem,
    pub d1: RingElem,
}

/// Witness data `a', c, d` and rows `(u_i, f_i, g_i, b'_i, d'_i)`.
#[derive(Clone, Debug)]
pub struct ExpWitness {
    pub a1: RingElem,
    pub c: RingElem,
    pub d: RingElem,
    pub rows: Vec<ExpWitnessRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub holds: bool,
    /// Clause letters `a`..`f` that fail, in order.
    pub failing: Vec<char>,
}

impl WitnessReport {
    pub fn first_failing(&self) -> Option<char> {
        self.failing.first().copied()
    }
}

fn divides(q: &RingElem, x: &RingElem) -> bool {
    if q.is_zero() {
        return x.is_zero();
    }
    x.poly().rem(q.poly(), q.ring().field()).is_zero()
}

/// Membership of `[[x, y], [z, w]]` in C(A_1, R, qR).
fn in_congruence(q: &RingElem, x: &RingElem, y: &RingElem, z: &RingElem, w: &RingElem) -> bool {
    let one = q.ring().elem(super::Poly::one());
    x.mul(w).sub(&y.mul(z)) == one
        && divides(q, &x.sub(&one))
        && divides(q, y)
        && divides(q, z)
        && divides(q, &w.sub(&one))
}

/// Check every clause of the Exp(t,l) condition for `(b, a)` in W(qR) and
/// report all failing clauses.
pub fn exp_witness_check(
    qe: &RingElem,
    pair: &WPair,
    w: &ExpWitness,
    t: u32,
) -> Result<WitnessReport, RingError> {
    let ring = qe.ring();
    if qe.is_zero() {
        return Err(RingError::ZeroInput);
    }
    if w.rows.is_empty() {
        return Err(RingError::WitnessShape("no rows (l = 0)".into()));
    }
    let all = [&w.a1, &w.c, &w.d, pair.a(), pair.b()]
        .into_iter()
        .chain(w.rows.iter().flat_map(|r| [&r.u, &r.f, &r.g, &r.b1, &r.d1]));
    for x in all {
        if x.ring() != ring {
            return Err(RingError::WitnessShape("entries over different rings".into()));
        }
    }
    let one = ring.elem(super::Poly::one());
    let (a, b) = (pair.a(), pair.b());
    let mut failing = Vec::new();

    let ca = divides(b, &w.a1.sub(a));
    let cb = in_congruence(qe, &w.a1, b, &w.c, &w.d);
    let cc = w.rows.iter().all(|r| in_congruence(qe, &w.a1, &r.b1, &w.c, &r.d1));
    let cd = w.rows.iter().all(|r| {
        let x = r.f.add(&r.g.mul(&w.a1));
        let y = r.g.mul(&r.b1);
        let z = r.g.mul(&w.c);
        let v = r.f.add(&r.g.mul(&r.d1));
        in_congruence(qe, &x, &y, &z, &v)
    });
    let prod = w.rows.iter().fold(one.clone(), |acc, r| {
        let s = r.f.add(&r.g.mul(&w.a1));
        acc.mul(&s).mul(&s)
    });
    let ce = divides(&w.c, &prod.sub(&w.a1.pow(t as u64)));
    let cf = w.rows.iter().all(|r| {
        r.u.is_unit() && divides(&r.b1, &r.f.add(&r.g.mul(&w.a1)).sub(&r.u))
    });
    for (ok, tag) in [(ca, 'a'), (cb, 'b'), (cc, 'c'), (cd, 'd'), (ce, 'e'), (cf, 'f')] {
        if !ok {
            failing.push(tag);
        }
    }
    Ok(WitnessReport { holds: failing.is_empty(), failing })
}

/// A valid witness with l = 1 for the pair `(b, a)` with `a = 1 + b y + b s`
/// where `b, y` lie in qR: the matrix `E12(b) E21(y) = [[1+by, b], [y, 1]]`
/// serves for clauses (b)-(d) with `f = 0, g = 1`, and `a' = 1 + by` is
/// congruent to 1 modulo both `y` and `b`, which gives (e) and (f) for any t.
pub fn elementary_exp_witness(b: &RingElem, y: &RingElem) -> ExpWitness {
    let ring = b.ring();
    let one = ring.elem(super::Poly::one());
    let zero = ring.elem(super::Poly::zero());
    let a1 = one.add(&b.mul(y));
    ExpWitness {
        a1,
        c: y.clone(),
        d: one.clone(),
        rows: vec![ExpWitnessRow { u: one.clone(), f: zero, g: one.clone(), b1: b.clone(), d1: one }],
    }
}
