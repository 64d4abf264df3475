//! Unit groups of F_q[T]/(a): exponents and the cyclicity search.

use std::collections::HashSet;

use super::field::FieldDesc;
use super::kornblum::kornblum_search;
use super::poly::{all_below_degree, Poly};
use super::ring::{RingElem, RingKind};
use super::RingError;

/// Largest residue ring whose units are enumerated.
pub const UNIT_ENUM_CAP: u64 = 1 << 20;

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Reduced units of F_q[T]/(h), in index order. Empty modulus degree means
/// the zero ring, whose unit group is trivial.
pub fn residue_units(h: &Poly, f: &FieldDesc) -> Result<Vec<Poly>, RingError> {
    let d = h.deg().ok_or(RingError::ZeroInput)?;
    let n = (f.order() as u64)
        .checked_pow(d as u32)
        .filter(|&n| n <= UNIT_ENUM_CAP)
        .ok_or(RingError::TooLarge(u64::MAX))?;
    if d == 0 {
        return Ok(vec![Poly::zero()]);
    }
    Ok(all_below_degree(d, f.order())
        .take(n as usize)
        .filter(|x| x.gcd(h, f).is_one())
        .collect())
}

fn element_order(x: &Poly, group_order: u64, h: &Poly, f: &FieldDesc) -> u64 {
    let mut n = group_order;
    for l in prime_factors(group_order) {
        while n.is_multiple_of(l) && x.pow_mod(n / l, h, f).is_one() {
            n /= l;
        }
    }
    n
}

/// Exponent of (F_q[T]/(a))^*, as the lcm of the orders of all units.
pub fn unit_group_exponent(a: &RingElem) -> Result<u64, RingError> {
    if a.ring().kind() != RingKind::PolyRing {
        return Err(RingError::WrongKind("an element of F_q[T]"));
    }
    let d = a.deg().ok_or(RingError::ZeroInput)?;
    if d == 0 {
        return Ok(1);
    }
    let f = a.ring().field();
    let h = a.poly();
    let units = residue_units(h, f)?;
    let n = units.len() as u64;
    Ok(units.iter().fold(1, |e, u| lcm_u64(e, element_order(u, n, h, f))))
}

/// Whether U(hR)/U(hR)^t is cyclic, by direct computation in the finite group.
pub fn unit_quotient_cyclic(h: &Poly, t: u64, f: &FieldDesc) -> Result<bool, RingError> {
    if h.deg() == Some(0) {
        return Ok(true);
    }
    let units = residue_units(h, f)?;
    let powers: HashSet<Poly> = units.iter().map(|u| u.pow_mod(t, h, f)).collect();
    let index = units.len() / powers.len();
    if index == 1 {
        return Ok(true);
    }
    // A generator of the quotient is a unit whose image has order `index`.
    Ok(units.iter().any(|u| {
        let mut x = u.clone();
        for k in 1..=index {
            if powers.contains(&x) {
                return k == index;
            }
            x = x.mul(u, f).rem(h, f);
        }
        false
    }))
}

/// Some `h` in `a + bR` with U(hR)/U(hR)^t cyclic. Irreducible `h` (a field
/// quotient, hence a cyclic unit group) is tried first; otherwise candidates
/// `(a mod b) + b s` are checked directly, `s` in index order up to
/// `deg h <= deg_cap`.
pub fn gen_search(a: &RingElem, b: &RingElem, t: u64, deg_cap: usize) -> Result<RingElem, RingError> {
    let ring = a.ring();
    if ring.kind() != RingKind::PolyRing || b.ring() != ring {
        return Err(RingError::WrongKind("elements of F_q[T]"));
    }
    let f = ring.field();
    if !a.poly().gcd(b.poly(), f).is_one() {
        return Err(RingError::NotCoprime);
    }
    if b.is_zero() {
        // a is a unit and the progression is {a}.
        return Ok(a.clone());
    }
    match kornblum_search(a, b, (0, 1), deg_cap) {
        Ok(h) => return Ok(h),
        Err(RingError::CapExhausted(_)) => {}
        Err(e) => return Err(e),
    }
    let q = ring.q();
    let r = a.poly().rem(b.poly(), f);
    let dg = b.deg().unwrap();
    let span = deg_cap.checked_sub(dg).map_or(1, |k| (q as u64).pow(k as u32 + 1));
    for i in 0..span {
        let h = r.add(&b.poly().mul(&Poly::from_index(i, q), f), f);
        if h.is_zero() {
            continue;
        }
        if unit_quotient_cyclic(&h, t, f)? {
            return Ok(ring.elem(h));
        }
    }
    Err(RingError::CapExhausted(format!("no cyclic candidate of degree <= {deg_cap}")))
}

fn legendre(n: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut k = p;
    while k <= n {
        v += n / k;
        k = match k.checked_mul(p) {
            Some(k) => k,
            None => break,
        };
    }
    v
}

fn valuation(mut n: u64, p: u64) -> u64 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `ceil(log2 q)`.
fn ceil_log2(q: u64) -> u64 {
    64 - (q - 1).leading_zeros() as u64
}

/// p-adic valuation of `(q-1)!^ceil(log2 q)`.
pub fn factorial_bound_valuation(q: u64, p: u64) -> u64 {
    legendre(q - 1, p) * ceil_log2(q)
}

/// Whether `gcd(e, n)` divides `(q-1)!^ceil(log2 q)`, compared prime by prime.
pub fn gcd_divides_factorial_bound(e: u64, n: u64, q: u64) -> bool {
    let g = gcd_u64(e, n);
    prime_factors(g).into_iter().all(|p| valuation(g, p) <= factorial_bound_valuation(q, p))
}

/// Exponent of (Z/p^s)^*.
fn unit_exponent_mod_prime_power(p: u64, s: u64) -> u64 {
    if p == 2 {
        match s {
            0..=1 => 1,
            2 => 2,
            _ => 1 << (s - 2),
        }
    } else {
        p.pow(s as u32 - 1) * (p - 1)
    }
}

/// An irreducible `f'` with `f' = f (mod g)`, `f'` prime to `h`, whose unit
/// exponent meets `n` only inside `(q-1)!^ceil(log2 q)`.
///
/// First `f` is moved within its class mod g to a unit modulo `gh` (stable
/// range one of the finite quotient), then the Kornblum search runs modulo
/// `gh` with degree congruent to 1 modulo the lcm of the exponents of
/// (Z/p^{r(p)+1})^* for the primes p of n.
pub fn exp_prep_element(
    f: &RingElem,
    g: &RingElem,
    h: &RingElem,
    n: u64,
    deg_cap: usize,
) -> Result<RingElem, RingError> {
    let ring = f.ring();
    let fd = ring.field();
    if h.is_zero() || n == 0 {
        return Err(RingError::ZeroInput);
    }
    if !f.poly().gcd(g.poly(), fd).is_one() {
        return Err(RingError::NotCoprime);
    }
    let gh = g.mul(h);
    let q = ring.q() as u64;
    let start = match gh.deg() {
        None => f.clone(),
        Some(0) => f.clone(),
        Some(d) => {
            let mut found = None;
            for x in all_below_degree(d, q as u32) {
                let c = f.poly().sub(&x.mul(g.poly(), fd), fd);
                if c.gcd(gh.poly(), fd).is_one() {
                    found = Some(ring.elem(c));
                    break;
                }
            }
            found.ok_or(RingError::NotCoprime)?
        }
    };
    let l = prime_factors(n).into_iter().fold(1u64, |acc, p| {
        let r = factorial_bound_valuation(q, p);
        lcm_u64(acc, unit_exponent_mod_prime_power(p, r + 1))
    });
    let modulus = if g.is_zero() { g.clone() } else { gh };
    kornblum_search(&start, &modulus, (-1, l), deg_cap)
}
