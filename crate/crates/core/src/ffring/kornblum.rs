//! Irreducibles in an arithmetic progression with a prescribed degree class.

use super::arith::poly_is_irreducible;
use super::poly::{monic_of_degree, Poly};
use super::ring::{RingElem, RingKind};
use super::RingError;

/// Smallest monic irreducible `f' = (f mod g) + g s`, with `s` in index
/// order, such that `deg f' = -m0 (mod n0)` and `deg f' <= deg_cap`.
///
/// The order condition at infinity is `ord_inf(f') = -deg f'`, which is where
/// the degree congruence comes from. When `g` is a unit the progression is
/// all of F_q[T] and candidates run over monic polynomials in index order.
pub fn kornblum_search(
    f: &RingElem,
    g: &RingElem,
    deg_class: (i64, u64),
    deg_cap: usize,
) -> Result<RingElem, RingError> {
    let ring = f.ring();
    if ring.kind() != RingKind::PolyRing || g.ring() != ring {
        return Err(RingError::WrongKind("elements of F_q[T]"));
    }
    let (m0, n0) = deg_class;
    if n0 == 0 {
        return Err(RingError::Parse("degree modulus must be positive".into()));
    }
    let fd = ring.field();
    if !f.poly().gcd(g.poly(), fd).is_one() {
        return Err(RingError::NotCoprime);
    }
    let want = (-m0).rem_euclid(n0 as i64) as usize;
    let good = |p: &Poly| {
        p.is_monic()
            && p.deg().is_some_and(|d| d >= 1 && d % n0 as usize == want)
            && poly_is_irreducible(p, fd)
    };
    let q = ring.q();
    let found = match g.deg() {
        // Coprimality forces f to be a unit, which is never irreducible.
        None => None,
        Some(0) => (1..=deg_cap)
            .filter(|d| d % n0 as usize == want)
            .flat_map(|d| monic_of_degree(d, q))
            .find(|p| good(p)),
        Some(dg) => {
            let r = f.poly().rem(g.poly(), fd);
            let span = deg_cap.checked_sub(dg).map_or(0, |k| (q as u64).pow(k as u32 + 1));
            std::iter::once(r.clone())
                .chain((1..span).map(|i| r.add(&g.poly().mul(&Poly::from_index(i, q), fd), fd)))
                .find(|p| good(p))
        }
    };
    found.map(|p| ring.elem(p)).ok_or_else(|| {
        RingError::CapExhausted(format!("no candidate of degree <= {deg_cap}"))
    })
}
