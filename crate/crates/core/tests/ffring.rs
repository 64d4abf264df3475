//! Ring arithmetic against brute-force oracles: trial division for
//! irreducibility, explicit unit enumeration for exponents, exhaustive
//! gcds for vn_2.

use chevfq::ffring::firstorder::{elementary_exp_witness, exp_witness_check, ExpWitness, ExpWitnessRow};
use chevfq::ffring::poly::{all_below_degree, monic_of_degree};
use chevfq::ffring::units::{exp_prep_element, gcd_divides_factorial_bound};
use chevfq::ffring::{
    divisor_of, ext_gcd, factor, gen_search, is_irreducible, kornblum_search, poly_is_irreducible,
    residue_f2_primes, unit_group_exponent, vn2_ideal, FieldDesc, IdealHandle, Place, Poly, RingError, RingHandle,
};
use chevfq::ffring::firstorder::{stable_range_3_2_check, stable_range_one_check};
use chevfq::mennicke::WPair;
use proptest::prelude::*;
use std::sync::Arc;

fn field(q: u32) -> Arc<FieldDesc> {
    match q {
        2 | 3 | 5 | 7 => FieldDesc::get(q, 1).unwrap(),
        4 => FieldDesc::get(2, 2).unwrap(),
        9 => FieldDesc::get(3, 2).unwrap(),
        _ => unreachable!(),
    }
}

fn fq_t(q: u32) -> RingHandle {
    RingHandle::poly_ring(field(q))
}

fn poly(c: &[u8]) -> Poly {
    Poly::from_coeffs(c.to_vec())
}

/// Trial division by all monic polynomials of degree at most deg/2.
fn irreducible_oracle(p: &Poly, f: &FieldDesc) -> bool {
    let Some(d) = p.deg() else { return false };
    d >= 1 && (1..=d / 2).all(|k| monic_of_degree(k, f.order()).all(|m| !m.divides(p, f)))
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Exponent of (F_q[T]/(h))^* by listing residues and multiplying out.
fn unit_exponent_oracle(h: &Poly, f: &FieldDesc) -> u64 {
    let d = h.deg().unwrap();
    let mut e = 1u64;
    for x in all_below_degree(d, f.order()) {
        if !x.gcd(h, f).is_one() {
            continue;
        }
        let mut k = 1u64;
        let mut y = x.rem(h, f);
        while !y.is_one() {
            y = y.mul(&x, f).rem(h, f);
            k += 1;
        }
        e = e / gcd_u64(e, k) * k;
    }
    e
}

fn poly_strategy(q: u32, max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0..q as u8, 0..=max_deg + 1).prop_map(Poly::from_coeffs)
}

#[test]
fn ring_specs() {
    let r = RingHandle::parse("GF(2)[T]").unwrap();
    assert!(!r.is_finite());
    let f4 = RingHandle::parse("GF(2)[T]/(1,1,1)").unwrap();
    assert_eq!(f4.elements().unwrap().len(), 4);
    assert_eq!(f4.order(), Some(4));
    // every nonzero residue is a unit: F_2[T]/(T^2+T+1) is a field
    assert!(f4.elements().unwrap().iter().filter(|x| !x.is_zero()).all(|x| x.is_unit()));
    let gf4 = FieldDesc::get(2, 2).unwrap();
    let m: Vec<u8> = gf4.modulus().iter().map(|&c| c as u8).collect();
    assert_eq!(m, vec![1, 1, 1]);
    assert!(irreducible_oracle(&poly(&m), &FieldDesc::get(2, 1).unwrap()));
    for bad in ["GF(6)", "GF(2)[T]/()", "GF(2)[X]", "GF(2)[T]/(0)", "GF(3)[T]/(1,5)", ""] {
        assert!(RingHandle::parse(bad).is_err(), "{bad}");
    }
}

#[test]
fn parse_elements() {
    let r = RingHandle::parse("GF(4)[T]/(0,0,1)").unwrap();
    let x = r.parse_elem("1:1, 1").unwrap();
    assert_eq!(x.deg(), Some(1));
    assert_eq!(r.parse_elem("0,0,1").unwrap(), r.parse_elem("0").unwrap());
    assert!(r.parse_elem("1:1:1").is_err());
    assert!(r.parse_elem("x").is_err());
    let f = RingHandle::parse("GF(5)").unwrap();
    assert!(f.parse_elem("0,1").is_err());
    assert_eq!(f.parse_elem("7").err(), Some(RingError::Parse("coefficient out of range in element \"7\"".into())));
}

#[test]
fn gcd_examples() {
    let r = fq_t(2);
    let (d, u, v) = ext_gcd(&r.elem(poly(&[0, 1])), &r.elem(poly(&[1, 1]))).unwrap();
    assert_eq!((d.poly(), u.poly(), v.poly()), (&Poly::one(), &Poly::one(), &Poly::one()));
    let (d, ..) = ext_gcd(&r.elem(poly(&[0, 1, 1])), &r.elem(poly(&[0, 1]))).unwrap();
    assert_eq!(d.poly(), &poly(&[0, 1]));
    let r3 = fq_t(3);
    let (d, u, v) = ext_gcd(&r3.elem(poly(&[1, 2])), &r3.elem(Poly::zero())).unwrap();
    assert_eq!(d.poly(), &poly(&[2, 1]));
    assert_eq!(u.poly(), &poly(&[2]));
    assert!(v.is_zero());
}

#[test]
fn irreducibility_examples() {
    let f2 = field(2);
    assert!(poly_is_irreducible(&poly(&[1, 1, 1]), &f2));
    assert!(!poly_is_irreducible(&poly(&[1, 0, 1]), &f2));
    assert!(poly_is_irreducible(&poly(&[0, 1]), &field(3)));
    assert!(!poly_is_irreducible(&Poly::one(), &f2));
    let r = fq_t(2);
    assert!(is_irreducible(&r.elem(poly(&[1, 1, 0, 1]))).unwrap());
}

#[test]
fn kornblum_examples() {
    let r = fq_t(2);
    let f2 = field(2);
    let h = kornblum_search(&r.elem(Poly::one()), &r.elem(poly(&[0, 1])), (1, 1), 4).unwrap();
    assert_eq!(h.poly(), &poly(&[1, 1]));
    // empty congruence: the first monic irreducible of degree = 2 (mod 3)
    let h = kornblum_search(&r.elem(Poly::one()), &r.elem(Poly::one()), (1, 3), 8).unwrap();
    assert_eq!(h.poly(), &poly(&[1, 1, 1]));
    let g = poly(&[1, 1, 1]);
    let h = kornblum_search(&r.elem(Poly::t()), &r.elem(g.clone()), (0, 2), 10).unwrap();
    assert!(irreducible_oracle(h.poly(), &f2));
    assert_eq!(h.deg().unwrap() % 2, 0);
    assert_eq!(h.poly().rem(&g, &f2), Poly::t());
    // cap exhaustion is not nonexistence
    let e = kornblum_search(&r.elem(Poly::t()), &r.elem(g), (0, 2), 2).unwrap_err();
    assert!(matches!(e, RingError::CapExhausted(_)));
    let e = kornblum_search(&r.elem(Poly::t()), &r.elem(poly(&[0, 0, 1])), (0, 1), 8).unwrap_err();
    assert_eq!(e, RingError::NotCoprime);
}

#[test]
fn divisor_examples() {
    let r = fq_t(2);
    let d = divisor_of(&r.elem(poly(&[0, 1, 1]))).unwrap();
    assert_eq!(d.ord(&Place::Finite(poly(&[0, 1]))), 1);
    assert_eq!(d.ord(&Place::Finite(poly(&[1, 1]))), 1);
    assert_eq!(d.ord(&Place::Infinity), -2);
    assert_eq!(d.places.len(), 3);
    assert!(divisor_of(&r.elem(Poly::one())).unwrap().places.is_empty());
    let r3 = fq_t(3);
    let d = divisor_of(&r3.elem(poly(&[0, 0, 0, 1]))).unwrap();
    assert_eq!(d.places, vec![(Place::Finite(Poly::t()), 3), (Place::Infinity, -3)]);
    assert_eq!(divisor_of(&r.elem(Poly::zero())).unwrap_err(), RingError::ZeroInput);
}

#[test]
fn unit_exponent_examples() {
    let r = fq_t(2);
    assert_eq!(unit_group_exponent(&r.elem(poly(&[0, 1]))).unwrap(), 1);
    assert_eq!(unit_group_exponent(&r.elem(poly(&[1, 1, 1]))).unwrap(), 3);
    assert_eq!(unit_group_exponent(&r.elem(poly(&[0, 0, 1]))).unwrap(), 2);
    // (q-1)!^ceil(log2 q) is 1 for q = 2 and 2^2 for q = 3
    assert!(!gcd_divides_factorial_bound(3, 3, 2));
    assert!(gcd_divides_factorial_bound(8, 4, 3));
    assert!(!gcd_divides_factorial_bound(8, 8, 3));
}

#[test]
fn vn2_examples() {
    let f2t = fq_t(2);
    assert_eq!(vn2_ideal(&f2t).unwrap().gen_poly(), &poly(&[0, 1, 1]));
    assert!(vn2_ideal(&fq_t(4)).unwrap().is_whole());
    let q = RingHandle::parse("GF(2)[T]/(0,1,1)").unwrap();
    assert!(vn2_ideal(&q).unwrap().is_zero());
    assert_eq!(vn2_ideal(&fq_t(3)).unwrap_err(), RingError::OddCharacteristic);
    assert_eq!(residue_f2_primes(&f2t).unwrap(), vec![poly(&[0, 1]), poly(&[1, 1])]);
    assert!(residue_f2_primes(&fq_t(3)).unwrap().is_empty());
    assert!(residue_f2_primes(&fq_t(4)).unwrap().is_empty());
}

/// The generator agrees with the gcd of x^2 - x over every x of degree < 4.
#[test]
fn vn2_against_enumeration() {
    for q in [2, 4] {
        let f = field(q);
        let g = all_below_degree(4, q).fold(Poly::zero(), |acc, x| acc.gcd(&x.mul(&x, &f).sub(&x, &f), &f));
        assert_eq!(vn2_ideal(&fq_t(q)).unwrap().gen_poly(), &g, "q = {q}");
    }
}

#[test]
fn vn2_is_radical_with_f2_primes() {
    let r = fq_t(2);
    let g = vn2_ideal(&r).unwrap();
    let fs = factor(g.gen_poly(), r.field());
    assert!(fs.iter().all(|(_, e)| *e == 1));
    assert_eq!(fs.into_iter().map(|(p, _)| p).collect::<Vec<_>>(), residue_f2_primes(&r).unwrap());
}

#[test]
fn stable_range_examples() {
    for s in ["GF(4)", "GF(2)[T]/(0,0,1)", "GF(2)[T]/(0,1,1)"] {
        assert!(stable_range_one_check(&RingHandle::parse(s).unwrap()).unwrap().holds, "{s}");
    }
    let r = fq_t(2);
    for c in [&[0u8, 0, 1][..], &[0, 1, 1], &[0, 1, 0, 1]] {
        assert!(stable_range_3_2_check(&r.elem(poly(c))).unwrap().holds);
    }
    assert_eq!(stable_range_3_2_check(&r.elem(Poly::one())).unwrap_err(), RingError::TrivialInput);
}

/// Every quotient F_q[T]/(g) with deg g <= 3 has stable range one.
#[test]
fn stable_range_one_on_all_small_quotients() {
    for q in [2, 3, 4] {
        let f = field(q);
        for d in 1..=3 {
            for g in monic_of_degree(d, q) {
                let r = RingHandle::quotient(f.clone(), &g).unwrap();
                let rep = stable_range_one_check(&r).unwrap();
                assert!(rep.holds, "GF({q})[T]/({}) fails at {:?}", g.display(&f), rep.counterexample);
            }
        }
    }
}

#[test]
fn gen_search_examples() {
    let r = fq_t(2);
    let one = r.elem(Poly::one());
    assert_eq!(gen_search(&one, &r.elem(Poly::zero()), 2, 4).unwrap(), one);
    assert_eq!(gen_search(&one, &r.elem(Poly::t()), 2, 4).unwrap().poly(), &poly(&[1, 1]));
    assert_eq!(gen_search(&r.elem(Poly::t()), &r.elem(poly(&[1, 1])), 4, 4).unwrap().poly(), &Poly::t());
}

#[test]
fn exp_witnesses() {
    let r = fq_t(2);
    let one = r.elem(Poly::one());
    let zero = r.elem(Poly::zero());
    let qe = r.elem(poly(&[0, 0, 1]));
    let ideal = IdealHandle::principal(&qe);
    let pair = WPair::new(zero.clone(), one.clone(), ideal.clone()).unwrap();
    let row = ExpWitnessRow { u: one.clone(), f: one.clone(), g: zero.clone(), b1: zero.clone(), d1: one.clone() };
    let mut w = ExpWitness { a1: one.clone(), c: zero.clone(), d: one.clone(), rows: vec![row] };
    assert!(exp_witness_check(&qe, &pair, &w, 2).unwrap().holds);
    w.rows[0].f = zero.clone();
    let rep = exp_witness_check(&qe, &pair, &w, 2).unwrap();
    assert!(!rep.holds);
    assert!(matches!(rep.first_failing(), Some('d' | 'e' | 'f')), "{rep:?}");
    assert!(rep.failing.contains(&'e') || rep.failing.contains(&'f'));
    w.rows.clear();
    assert!(matches!(exp_witness_check(&qe, &pair, &w, 2), Err(RingError::WitnessShape(_))));
}

/// A pair built from the elementary witness recipe, with b, y in (T^2).
#[test]
fn elementary_witnesses_validate() {
    let r = fq_t(2);
    let qe = r.elem(poly(&[0, 0, 1]));
    let ideal = IdealHandle::principal(&qe);
    let f = r.field();
    for (b, y, s) in [(&[0u8, 0, 1][..], &[0u8, 0, 1][..], &[1u8][..]), (&[0, 0, 1, 1], &[0, 0, 0, 1], &[0, 1]), (&[0, 0, 1], &[0, 0, 1, 0, 1], &[])] {
        let (b, y, s) = (poly(b), poly(y), poly(s));
        let a = Poly::one().add(&b.mul(&y, f), f).add(&b.mul(&s, f), f);
        let pair = WPair::new(r.elem(b.clone()), r.elem(a), ideal.clone()).unwrap();
        let w = elementary_exp_witness(&r.elem(b), &r.elem(y));
        for t in [1, 2, 5] {
            assert!(exp_witness_check(&qe, &pair, &w, t).unwrap().holds);
        }
    }
}

proptest! {
    #[test]
    fn bezout(q in prop::sample::select(vec![2u32, 3, 4, 5]), a in prop::collection::vec(0u8..9, 0..7), b in prop::collection::vec(0u8..9, 0..7)) {
        let f = field(q);
        let r = fq_t(q);
        let a = Poly::from_coeffs(a.into_iter().map(|c| c % q as u8).collect());
        let b = Poly::from_coeffs(b.into_iter().map(|c| c % q as u8).collect());
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (d, u, v) = ext_gcd(&r.elem(a.clone()), &r.elem(b.clone())).unwrap();
        prop_assert!(d.poly().is_monic());
        prop_assert_eq!(u.poly().mul(&a, &f).add(&v.poly().mul(&b, &f), &f), d.poly().clone());
        prop_assert!(d.poly().divides(&a, &f) && d.poly().divides(&b, &f));
    }

    #[test]
    fn irreducibility_matches_trial_division(q in prop::sample::select(vec![2u32, 3, 4]), p in poly_strategy(4, 6)) {
        let f = field(q);
        let p = Poly::from_coeffs(p.coeffs().iter().map(|c| c % q as u8).collect());
        prop_assert_eq!(poly_is_irreducible(&p, &f), irreducible_oracle(&p, &f));
    }

    #[test]
    fn factorization_multiplies_back(q in prop::sample::select(vec![2u32, 3, 5]), p in poly_strategy(5, 8)) {
        let f = field(q);
        let p = Poly::from_coeffs(p.coeffs().iter().map(|c| c % q as u8).collect());
        prop_assume!(p.deg().is_some_and(|d| d >= 1));
        let fs = factor(&p, &f);
        let prod = fs.iter().fold(Poly::one(), |acc, (g, e)| acc.mul(&g.pow(*e as u64, &f), &f));
        prop_assert_eq!(prod, p.monic(&f));
        for (g, _) in &fs {
            prop_assert!(g.is_monic() && irreducible_oracle(g, &f));
        }
    }

    #[test]
    fn divisors_have_degree_zero(q in prop::sample::select(vec![2u32, 3, 4]), p in poly_strategy(4, 8)) {
        let f = field(q);
        let p = Poly::from_coeffs(p.coeffs().iter().map(|c| c % q as u8).collect());
        prop_assume!(!p.is_zero());
        let d = divisor_of(&fq_t(q).elem(p.clone())).unwrap();
        prop_assert_eq!(d.degree(), 0);
        if p.is_monic() && irreducible_oracle(&p, &f) {
            prop_assert_eq!(d.ord(&Place::Infinity), -(p.deg().unwrap() as i64));
            // deg(fR) = log_q |R/fR|
            let quot = RingHandle::quotient(f.clone(), &p).unwrap();
            prop_assert_eq!(quot.order(), Some((q as u64).pow(p.deg().unwrap() as u32)));
        }
    }

    #[test]
    fn kornblum_output_is_verified(
        q in prop::sample::select(vec![2u32, 3]),
        f in prop::collection::vec(0u8..3, 0..4),
        g in prop::collection::vec(0u8..3, 0..4),
        n0 in 1u64..=4,
        m0 in -3i64..4,
    ) {
        let fd = field(q);
        let r = fq_t(q);
        let f = Poly::from_coeffs(f.into_iter().map(|c| c % q as u8).collect());
        let mut g: Vec<u8> = g.into_iter().map(|c| c % q as u8).collect();
        g.push(1);
        let g = Poly::from_coeffs(g);
        prop_assume!(f.gcd(&g, &fd).is_one());
        let h = kornblum_search(&r.elem(f.clone()), &r.elem(g.clone()), (m0, n0), g.deg().unwrap() + 12).unwrap();
        let d = h.deg().unwrap() as i64;
        prop_assert!(irreducible_oracle(h.poly(), &fd));
        prop_assert!(h.poly().sub(&f, &fd).rem(&g, &fd).is_zero());
        prop_assert_eq!((d + m0).rem_euclid(n0 as i64), 0);
    }

    #[test]
    fn unit_exponent_matches_enumeration(q in prop::sample::select(vec![2u32, 3, 4]), p in poly_strategy(4, 4)) {
        let f = field(q);
        let p = Poly::from_coeffs(p.coeffs().iter().map(|c| c % q as u8).collect());
        prop_assume!(p.deg().is_some_and(|d| d >= 1));
        prop_assert_eq!(unit_group_exponent(&fq_t(q).elem(p.clone())).unwrap(), unit_exponent_oracle(&p, &f));
    }

    #[test]
    fn unit_exponent_is_lcm_on_coprime_factors(q in prop::sample::select(vec![2u32, 3]), a in poly_strategy(3, 3), b in poly_strategy(3, 3)) {
        let f = field(q);
        let r = fq_t(q);
        let a = Poly::from_coeffs(a.coeffs().iter().map(|c| c % q as u8).collect());
        let b = Poly::from_coeffs(b.coeffs().iter().map(|c| c % q as u8).collect());
        prop_assume!(!a.is_zero() && !b.is_zero() && a.gcd(&b, &f).is_one());
        let (ea, eb) = (unit_group_exponent(&r.elem(a.clone())).unwrap(), unit_group_exponent(&r.elem(b.clone())).unwrap());
        let lcm = ea / gcd_u64(ea, eb) * eb;
        prop_assert_eq!(unit_group_exponent(&r.elem(a.mul(&b, &f))).unwrap(), lcm);
    }

    #[test]
    fn exp_prep_meets_the_factorial_bound(
        q in prop::sample::select(vec![2u32, 3]),
        f in prop::collection::vec(0u8..3, 0..3),
        g in prop::collection::vec(0u8..3, 0..3),
        n in 1u64..13,
    ) {
        let fd = field(q);
        let r = fq_t(q);
        let f = Poly::from_coeffs(f.into_iter().map(|c| c % q as u8).collect());
        let mut g: Vec<u8> = g.into_iter().map(|c| c % q as u8).collect();
        g.push(1);
        let g = Poly::from_coeffs(g);
        let h = poly(&[1, 1]);
        prop_assume!(f.gcd(&g, &fd).is_one());
        let p = exp_prep_element(&r.elem(f.clone()), &r.elem(g.clone()), &r.elem(h.clone()), n, 14).unwrap();
        prop_assert!(irreducible_oracle(p.poly(), &fd));
        prop_assert!(p.poly().sub(&f, &fd).rem(&g, &fd).is_zero());
        prop_assert!(p.poly().gcd(&h, &fd).is_one());
        // p irreducible: the residue field's unit group is cyclic of order q^d - 1
        let e = (q as u64).pow(p.deg().unwrap() as u32) - 1;
        prop_assert!(gcd_divides_factorial_bound(e, n, q as u64));
    }
}
