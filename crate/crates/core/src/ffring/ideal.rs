//! Principal ideals, divisors of rational functions, vn_2 and the primes
//! with residue field F_2.

use std::fmt;

use super::arith::factor;
use super::field::FieldDesc;
use super::poly::{monic_of_degree, Poly};
use super::ring::{RingElem, RingHandle, RingKind};
use super::RingError;

/// A principal ideal. The stored generator is a normalized lift to F_q[T]:
/// monic (or zero) over F_q[T]; a monic divisor of the modulus over a
/// quotient, where the modulus itself stands for the zero ideal; 0 or 1 over
/// a field.
#[derive(Clone, PartialEq, Eq)]
pub struct IdealHandle {
    ring: RingHandle,
    gen: Poly,
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) in {}", self.gen.display(self.ring.field()), self.ring.spec())
    }
}

impl IdealHandle {
    pub fn new(ring: &RingHandle, gen: &Poly) -> IdealHandle {
        let f = ring.field();
        let gen = match ring.kind() {
            RingKind::PolyRing => gen.monic(f),
            RingKind::Field => {
                if gen.is_zero() {
                    Poly::zero()
                } else {
                    Poly::one()
                }
            }
            RingKind::Quotient => ring.modulus().unwrap().gcd(gen, f),
        };
        IdealHandle { ring: ring.clone(), gen }
    }
    pub fn principal(x: &RingElem) -> IdealHandle {
        Self::new(x.ring(), x.poly())
    }
    pub fn whole(ring: &RingHandle) -> IdealHandle {
        Self::new(ring, &Poly::one())
    }
    pub fn zero(ring: &RingHandle) -> IdealHandle {
        Self::new(ring, &Poly::zero())
    }
    /// Ideal given by a little-endian coefficient list of its generator.
    pub fn from_coeffs(ring: &RingHandle, c: &[u8]) -> IdealHandle {
        Self::new(ring, &Poly::from_coeffs(c.to_vec()))
    }

    pub fn ring(&self) -> &RingHandle {
        &self.ring
    }
    /// Normalized generator, as a polynomial over F_q.
    pub fn gen_poly(&self) -> &Poly {
        &self.gen
    }
    /// Generator as an element of the ring.
    pub fn gen(&self) -> RingElem {
        self.ring.elem(self.gen.clone())
    }
    pub fn is_zero(&self) -> bool {
        match self.ring.kind() {
            RingKind::Quotient => Some(&self.gen) == self.ring.modulus(),
            _ => self.gen.is_zero(),
        }
    }
    pub fn is_whole(&self) -> bool {
        self.gen.is_one()
    }
    pub fn contains(&self, x: &RingElem) -> bool {
        assert!(x.ring() == &self.ring, "element of another ring");
        if self.is_zero() {
            return x.is_zero();
        }
        x.poly().rem(&self.gen, self.ring.field()).is_zero()
    }
    pub fn contains_poly(&self, x: &Poly) -> bool {
        self.contains(&self.ring.elem(x.clone()))
    }
    pub fn sum(&self, o: &IdealHandle) -> IdealHandle {
        Self::new(&self.ring, &self.gen.gcd(&o.gen, self.ring.field()))
    }
    pub fn product(&self, o: &IdealHandle) -> IdealHandle {
        Self::new(&self.ring, &self.gen.mul(&o.gen, self.ring.field()))
    }
    /// R / I as a ring handle (only for a nonzero ideal of F_q[T] or of a
    /// quotient).
    pub fn quotient_ring(&self) -> Result<RingHandle, RingError> {
        match self.ring.kind() {
            RingKind::Field => Err(RingError::WrongKind("an ideal of F_q[T] or a quotient")),
            _ if self.gen.is_zero() => Err(RingError::ZeroModulus),
            _ if self.gen.is_one() => Err(RingError::Parse("quotient by the unit ideal".into())),
            _ => RingHandle::quotient(self.ring.field().clone(), &self.gen),
        }
    }
    /// The same ideal read in another ring over the same field (lift of the
    /// generator, then normalization there).
    pub fn transfer(&self, ring: &RingHandle) -> IdealHandle {
        let g = if self.is_zero() { Poly::zero() } else { self.gen.clone() };
        Self::new(ring, &ring.reduce(&g))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.deg().unwrap_or(0),
            Place::Infinity => 1,
        }
    }
}

/// A divisor on P^1 over F_q: finitely many places with orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub places: Vec<(Place, i64)>,
}

impl Divisor {
    /// `sum deg(P) ord_P`; zero for every principal divisor.
    pub fn degree(&self) -> i64 {
        self.places.iter().map(|(p, o)| p.degree() as i64 * o).sum()
    }
    pub fn ord(&self, place: &Place) -> i64 {
        self.places.iter().find(|(p, _)| p == place).map_or(0, |(_, o)| *o)
    }
    pub fn display(&self, f: &FieldDesc) -> String {
        let parts: Vec<String> = self
            .places
            .iter()
            .map(|(p, o)| match p {
                Place::Finite(p) => format!("({},{o})", p.display(f)),
                Place::Infinity => format!("(inf,{o})"),
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Divisor of a nonzero polynomial: its prime factorization plus
/// `(inf, -deg f)`. Constants have the empty divisor.
pub fn divisor_of(f: &RingElem) -> Result<Divisor, RingError> {
    if f.ring().kind() != RingKind::PolyRing {
        return Err(RingError::WrongKind("an element of F_q[T]"));
    }
    let d = f.deg().ok_or(RingError::ZeroInput)?;
    if d == 0 {
        return Ok(Divisor { places: Vec::new() });
    }
    let mut places: Vec<(Place, i64)> = factor(f.poly(), f.ring().field())
        .into_iter()
        .map(|(p, e)| (Place::Finite(p), e as i64))
        .collect();
    places.push((Place::Infinity, -(d as i64)));
    Ok(Divisor { places })
}

/// Generator of vn_2(R) = (x^2 - x | x in R) in characteristic 2.
///
/// x -> x^2 - x is additive in characteristic 2, and modulo T^2 - T every
/// T^k (k >= 1) is congruent to T, so the ideal is already generated by
/// T^2 - T and w^2 - w for w running through an F_2-basis of F_q.
pub fn vn2_ideal(ring: &RingHandle) -> Result<IdealHandle, RingError> {
    if ring.characteristic() != 2 {
        return Err(RingError::OddCharacteristic);
    }
    let f = ring.field();
    let sq_minus = |x: &Poly| x.mul(x, f).sub(x, f);
    let mut g = Poly::zero();
    for j in 0..f.m() {
        let mut d = vec![0; f.m() as usize];
        d[j as usize] = 1;
        let w = Poly::constant(f.from_digits(&d));
        g = g.gcd(&sq_minus(&w), f);
    }
    if ring.kind() != RingKind::Field {
        g = g.gcd(&sq_minus(&Poly::t()), f);
    }
    Ok(IdealHandle::new(ring, &g))
}

/// Monic irreducibles P with F_q[T]/(P) = F_2; their number is r(R).
pub fn residue_f2_primes(ring: &RingHandle) -> Result<Vec<Poly>, RingError> {
    if ring.kind() != RingKind::PolyRing {
        return Err(RingError::WrongKind("F_q[T]"));
    }
    // |F_q[T]/(P)| = q^deg P, which is 2 only for q = 2 and degree 1.
    if ring.q() != 2 {
        return Ok(Vec::new());
    }
    Ok(monic_of_degree(1, 2).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_ideal_normalization() {
        let r = RingHandle::parse("GF(2)[T]/(0,1,1)").unwrap();
        let z = IdealHandle::zero(&r);
        assert!(z.is_zero());
        let i = IdealHandle::new(&r, &Poly::from_coeffs(vec![0, 1, 1, 1]));
        // T^3+T^2+T = T(T^2+T+1), gcd with T^2+T is T
        assert_eq!(i.gen_poly(), &Poly::t());
    }

    #[test]
    fn vn2_quotient_is_zero() {
        let r = RingHandle::parse("GF(2)[T]/(0,1,1)").unwrap();
        assert!(vn2_ideal(&r).unwrap().is_zero());
        let f2 = RingHandle::parse("GF(2)").unwrap();
        assert!(vn2_ideal(&f2).unwrap().is_zero());
        let f4 = RingHandle::parse("GF(4)").unwrap();
        assert!(vn2_ideal(&f4).unwrap().is_whole());
    }
}
