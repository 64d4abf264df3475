//! Gcd, irreducibility and factorization in F_q[T].

use super::field::FieldDesc;
use super::poly::{monic_of_degree, Poly};
use super::ring::{RingElem, RingKind};
use super::RingError;

fn require_poly(f: &RingElem) -> Result<(), RingError> {
    if f.ring().kind() == RingKind::PolyRing {
        Ok(())
    } else {
        Err(RingError::WrongKind("an element of F_q[T]"))
    }
}

/// `(d, u, v)` with `d = u f + v g` monic.
pub fn ext_gcd(f: &RingElem, g: &RingElem) -> Result<(RingElem, RingElem, RingElem), RingError> {
    require_poly(f)?;
    require_poly(g)?;
    let r = f.ring();
    let (d, u, v) = f.poly().ext_gcd(g.poly(), r.field()).ok_or(RingError::ZeroInput)?;
    Ok((r.elem(d), r.elem(u), r.elem(v)))
}

/// Ben-Or: a degree-n polynomial is irreducible iff it shares no factor with
/// `T^{q^i} - T` for `i <= n/2`.
pub fn poly_is_irreducible(f: &Poly, field: &FieldDesc) -> bool {
    let n = match f.deg() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let f = f.monic(field);
    let q = field.order() as u64;
    let t = Poly::t();
    let mut h = t.clone();
    for _ in 1..=n / 2 {
        h = h.pow_mod(q, &f, field);
        if !f.gcd(&h.sub(&t, field), field).is_one() {
            return false;
        }
    }
    true
}

pub fn is_irreducible(f: &RingElem) -> Result<bool, RingError> {
    require_poly(f)?;
    match f.deg() {
        None | Some(0) => Err(RingError::ConstantInput),
        Some(_) => Ok(poly_is_irreducible(f.poly(), f.ring().field())),
    }
}

/// Monic irreducible factors with multiplicities, ordered by degree then
/// index. The leading coefficient is dropped. Trial division in increasing
/// degree: once all smaller factors are removed, any monic divisor found is
/// irreducible.
pub fn factor(f: &Poly, field: &FieldDesc) -> Vec<(Poly, u32)> {
    let mut rest = f.monic(field);
    let mut out = Vec::new();
    let q = field.order();
    let mut d = 1;
    while let Some(n) = rest.deg() {
        if n == 0 {
            break;
        }
        if 2 * d > n || poly_is_irreducible(&rest, field) {
            out.push((rest, 1));
            break;
        }
        for p in monic_of_degree(d, q) {
            let mut e = 0;
            loop {
                let (quo, r) = rest.divrem(&p, field);
                if !r.is_zero() {
                    break;
                }
                rest = quo;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            if rest.deg().unwrap_or(0) < 2 * d {
                break;
            }
        }
        d += 1;
    }
    // Merge in case the cofactor repeats an earlier factor (it cannot, but
    // keep the output canonical regardless).
    out.sort_by_key(|a| (a.0.deg(), a.0.to_index(q)));
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (p, e) in out {
        match merged.last_mut() {
            Some((lp, le)) if *lp == p => *le += e,
            _ => merged.push((p, e)),
        }
    }
    merged
}
