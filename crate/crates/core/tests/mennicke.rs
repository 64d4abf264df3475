use std::collections::{HashSet, VecDeque};

use chevfq::chevmat::{ChevModel, Matrix};
use chevfq::ffring::{IdealHandle, Poly, RingElem, RingHandle};
use chevfq::mennicke::{
    apply_move, mennicke_axioms, relative_quotient, square_symbol_check, symbol_class, EquivMove, MennickeContext,
    MennickeError, WPair, WPairError, DEFAULT_BASIS_CAP,
};
use chevfq::rootdata::RootType;
use proptest::prelude::*;

fn ring(spec: &str) -> RingHandle {
    RingHandle::parse(spec).unwrap()
}
fn el(r: &RingHandle, c: &[u8]) -> RingElem {
    r.elem(Poly::from_coeffs(c.to_vec()))
}

#[test]
fn wpair_validation() {
    let r = ring("GF(2)[T]");
    let t2 = IdealHandle::from_coeffs(&r, &[0, 0, 1]);
    assert!(WPair::new(el(&r, &[]), el(&r, &[1]), t2.clone()).is_ok());
    assert!(WPair::new(el(&r, &[0, 0, 1]), el(&r, &[1, 0, 1]), t2.clone()).is_ok());
    assert_eq!(WPair::new(el(&r, &[0, 1]), el(&r, &[1]), t2.clone()), Err(WPairError::Congruence));
    // gcd(1 + T^2, T^2 + T^4) = (1 + T)^2
    let b = el(&r, &[0, 0, 1, 0, 1]);
    let a = el(&r, &[1, 0, 1]);
    assert_eq!(WPair::new(b, a, t2), Err(WPairError::NotUnimodular));
}

#[test]
fn completion_examples() {
    let r = ring("GF(2)[T]");
    let i = IdealHandle::from_coeffs(&r, &[0, 1]);
    let w = WPair::new(el(&r, &[0, 1]), el(&r, &[1, 1]), i).unwrap();
    let m = w.complete();
    let want: Vec<Poly> = [&[1u8, 1][..], &[0, 1], &[1], &[1]].iter().map(|c| Poly::from_coeffs(c.to_vec())).collect();
    assert_eq!(m.entries(), &want[..]);
    let base = WPair::new(el(&r, &[]), el(&r, &[1]), IdealHandle::from_coeffs(&r, &[0, 1])).unwrap();
    assert!(base.complete().is_identity(&r));
    // congruence completion puts c in I
    let mc = w.complete_congruence();
    assert!(IdealHandle::from_coeffs(&r, &[0, 1]).contains_poly(mc.get(1, 0)));
    assert_eq!(mc.det(&r), Poly::one());
}

#[test]
fn moves_follow_the_definition() {
    let r = ring("GF(2)[T]");
    let t2 = IdealHandle::from_coeffs(&r, &[0, 0, 1]);
    let w = WPair::new(el(&r, &[0, 0, 1]), el(&r, &[1, 0, 1]), t2).unwrap();
    let (w1, word) = apply_move(&w, &EquivMove::Column(el(&r, &[1]))).unwrap();
    assert_eq!((w1.b(), w1.a()), (&el(&r, &[0, 0, 1]), &el(&r, &[1])));
    assert_eq!(word.len(), 1);
    let (w2, _) = apply_move(&w1, &EquivMove::Row(el(&r, &[0, 0, 1]))).unwrap();
    assert_eq!((w2.b(), w2.a()), (&el(&r, &[]), &el(&r, &[1])));
    assert_eq!(
        apply_move(&w1, &EquivMove::Row(el(&r, &[0, 1]))).unwrap_err(),
        WPairError::RowOutsideIdeal
    );
    let (same, _) = apply_move(&w, &EquivMove::Column(el(&r, &[]))).unwrap();
    assert_eq!(same, w);
}

#[test]
fn symbol_requires_finite_ring() {
    let r = ring("GF(2)[T]");
    let w = WPair::new(el(&r, &[]), el(&r, &[1]), IdealHandle::from_coeffs(&r, &[0, 1])).unwrap();
    assert_eq!(symbol_class(&w, RootType::A(2)).unwrap_err(), MennickeError::Infinite);
}

#[test]
fn base_point_has_trivial_class() {
    let r = ring("GF(2)[T]/(0,0,0,0,1)");
    let i = IdealHandle::from_coeffs(&r, &[0, 0, 1]);
    let w = WPair::new(el(&r, &[]), el(&r, &[1]), i).unwrap();
    let cert = symbol_class(&w, RootType::C2).unwrap();
    assert!(cert.trivial && cert.in_congruence);
}

#[test]
fn improper_ideal_rejected() {
    let r = ring("GF(2)[T]/(0,0,1)");
    let whole = IdealHandle::whole(&r);
    assert!(relative_quotient(RootType::A(2), &whole, DEFAULT_BASIS_CAP).is_err());
    // (T + 1) is not nilpotent in F_2[T]/(T^2 + T)
    let r = ring("GF(2)[T]/(0,1,1)");
    assert!(relative_quotient(RootType::A(2), &IdealHandle::from_coeffs(&r, &[1, 1]), DEFAULT_BASIS_CAP).is_err());
}

#[test]
fn relative_quotients_are_trivial() {
    for (spec, gen) in [
        ("GF(2)[T]/(0,0,1)", &[0u8, 1][..]),
        ("GF(2)[T]/(0,0,0,0,1)", &[0, 0, 1]),
        ("GF(3)[T]/(0,0,0,1)", &[0, 1]),
    ] {
        let r = ring(spec);
        let i = IdealHandle::from_coeffs(&r, gen);
        for ty in [RootType::A(2), RootType::C2] {
            let q = relative_quotient(ty, &i, DEFAULT_BASIS_CAP).unwrap();
            assert_eq!(q.index, 1, "{ty} {spec}");
            assert_eq!(q.c_log_p, q.e_log_p);
            assert!(q.covering_holds && q.closed);
            assert_eq!(q.representatives.len(), 1);
        }
    }
}

#[test]
fn axioms_hold_on_test_rings() {
    for (spec, gen) in [("GF(2)[T]/(0,0,0,0,1)", &[0u8, 0, 1][..]), ("GF(3)[T]/(0,0,0,1)", &[0, 1])] {
        let r = ring(spec);
        let i = IdealHandle::from_coeffs(&r, gen);
        let a2 = mennicke_axioms(RootType::A(2), &i).unwrap();
        assert!(a2.holds(), "{a2:?}");
        assert!(a2.ms1.checked > 0 && a2.ms2.checked > 0);
        assert!(square_symbol_check(&i).unwrap());
    }
}

// Brute-force oracle: enumerate the whole group, count the congruence kernel
// and the normal closure of the ideal root elements by plain BFS.
fn bfs_closure(r: &chevfq::ffring::FiniteRing, gens: &[Matrix<u8>], start: &[Matrix<u8>]) -> HashSet<Matrix<u8>> {
    let mut seen: HashSet<Matrix<u8>> = start.iter().cloned().collect();
    let mut queue: VecDeque<Matrix<u8>> = start.iter().cloned().collect();
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.mul(s, r);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

#[test]
fn sift_orders_match_brute_force() {
    for (spec, gen, ty) in [
        ("GF(2)[T]/(0,0,1)", &[0u8, 1][..], RootType::A(2)),
        ("GF(2)[T]/(0,0,1)", &[0u8, 1][..], RootType::C2),
        ("GF(2)[T]/(0,0,0,1)", &[0u8, 0, 1][..], RootType::A(2)),
    ] {
        let rh = ring(spec);
        let fr = rh.finite().unwrap();
        let i = IdealHandle::from_coeffs(&rh, gen);
        let g = fr.index(i.gen_poly());
        let model = ChevModel::get(ty);
        let basis = fr.fp_basis();
        let mut ambient = Vec::new();
        let mut seeds = Vec::new();
        for k in 0..model.system().len() {
            for &x in &basis {
                let inv = fr.negi(x);
                ambient.push((model.root_element(&*fr, k, &x), model.root_element(&*fr, k, &inv)));
                let y = fr.muli(x, g);
                if y != 0 {
                    seeds.push(model.root_element(&*fr, k, &y));
                }
            }
        }
        let n = model.dim();
        let id = Matrix::identity(&*fr, n);
        let ctx = MennickeContext::new(ty, &i, DEFAULT_BASIS_CAP).unwrap();

        // normal closure by repeated conjugation of generators
        let mut gens = seeds.clone();
        let mut e = bfs_closure(&fr, &gens, std::slice::from_ref(&id));
        loop {
            let extra: Vec<Matrix<u8>> = gens
                .iter()
                .flat_map(|h| ambient.iter().map(move |(a, ai)| (h, a, ai)))
                .map(|(h, a, ai)| a.mul(h, &*fr).mul(ai, &*fr))
                .filter(|c| !e.contains(c))
                .collect();
            if extra.is_empty() {
                break;
            }
            gens.extend(extra);
            e = bfs_closure(&fr, &gens, std::slice::from_ref(&id));
        }
        let p = u64::from(fr.characteristic());
        assert_eq!(p.pow(ctx.elementary().log_order() as u32), e.len() as u64, "{ty} {spec}");

        // |C| by enumerating the whole group, against the tangent bound
        if spec == "GF(2)[T]/(0,0,1)" {
            let all: Vec<Matrix<u8>> = ambient.iter().map(|(a, _)| a.clone()).collect();
            let group = bfs_closure(&fr, &all, std::slice::from_ref(&id));
            let kernel = group.iter().filter(|g| ctx.elementary().filtration().level(g) >= 1).count() as u64;
            let q = relative_quotient(ty, &i, DEFAULT_BASIS_CAP).unwrap();
            assert_eq!(kernel, p.pow(q.c_log_p as u32), "{ty}");
            assert_eq!(group.len() as u64, kernel * if ty == RootType::C2 { 720 } else { 168 });
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn completion_has_det_one(b in prop::collection::vec(0u8..3, 0..5), k in prop::collection::vec(0u8..3, 0..4)) {
        let r = ring("GF(3)[T]");
        let f = r.field().clone();
        let g = Poly::from_coeffs(vec![0, 1]);
        let b = Poly::from_coeffs(b).mul(&g, &f);
        let a = Poly::one().add(&Poly::from_coeffs(k).mul(&g, &f), &f);
        let ideal = IdealHandle::new(&r, &g);
        if let Ok(w) = WPair::new(r.elem(b.clone()), r.elem(a.clone()), ideal.clone()) {
            for m in [w.complete(), w.complete_congruence()] {
                prop_assert_eq!(m.det(&r), Poly::one());
                prop_assert_eq!(m.get(0, 0), &a);
                prop_assert_eq!(m.get(0, 1), &b);
            }
            prop_assert!(ideal.contains_poly(w.complete_congruence().get(1, 0)));
        }
    }

    #[test]
    fn move_witness_replays(x in prop::collection::vec(0u8..2, 0..4), row in any::<bool>()) {
        let r = ring("GF(2)[T]");
        let f = r.field().clone();
        let i = IdealHandle::from_coeffs(&r, &[0, 1]);
        let w = WPair::new(el(&r, &[0, 1, 1]), el(&r, &[1, 1, 0, 1]), i).unwrap();
        let c = Poly::from_coeffs(x);
        let mv = if row { EquivMove::Row(r.elem(c.mul(&Poly::t(), &f))) } else { EquivMove::Column(r.elem(c)) };
        let (next, word) = apply_move(&w, &mv).unwrap();
        let m = w.complete().mul(word.eval(RootType::A(1), &r).matrix(), &r);
        prop_assert_eq!(m.get(0, 0), next.a().poly());
        prop_assert_eq!(m.get(0, 1), next.b().poly());
        prop_assert_eq!(m.det(&r), Poly::one());
    }
}
