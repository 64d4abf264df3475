use std::collections::{BTreeSet, HashSet};

use chevfq::rootdata::{
    golden_hash, parse_sign_table, structure_constants, Root, RootError, RootSystem, RootType, SignTable, GOLDEN_SIGN_TABLE,
};
use proptest::prelude::*;

const TYPES: [&str; 6] = ["A1", "A2", "A3", "A4", "C2", "G2"];

fn sys(label: &str) -> RootSystem {
    RootSystem::from_label(label).unwrap()
}

fn r(c: &[i64]) -> Root {
    Root(c.to_vec())
}

/// Cartan matrix `a_ij = <alpha_i, alpha_j^vee>`, written out by hand.
fn cartan(label: &str) -> Vec<Vec<i64>> {
    match label {
        "C2" => vec![vec![2, -1], vec![-2, 2]],
        "G2" => vec![vec![2, -1], vec![-3, 2]],
        _ => {
            let n: usize = label[1..].parse().unwrap();
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { 2 } else if i.abs_diff(j) == 1 { -1 } else { 0 }).collect())
                .collect()
        }
    }
}

/// Roots as the orbit of the simple roots under simple reflections.
fn orbit_roots(label: &str) -> BTreeSet<Vec<i64>> {
    let a = cartan(label);
    let n = a.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut todo: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| (k == i) as i64).collect()).collect();
    while let Some(x) = todo.pop() {
        if !seen.insert(x.clone()) {
            continue;
        }
        for j in 0..n {
            // <x, alpha_j^vee> = sum_i x_i a_ij
            let p: i64 = (0..n).map(|i| x[i] * a[i][j]).sum();
            let mut y = x.clone();
            y[j] -= p;
            todo.push(y);
        }
    }
    seen
}

#[test]
fn root_sets_match_weyl_orbits() {
    for (label, count) in [("A1", 2), ("A2", 6), ("A3", 12), ("A4", 20), ("C2", 8), ("G2", 12)] {
        let s = sys(label);
        let got: BTreeSet<Vec<i64>> = s.roots().iter().map(|x| x.0.clone()).collect();
        assert_eq!(got.len(), s.len(), "{label}: duplicate roots");
        assert_eq!(s.len(), count, "{label}");
        assert_eq!(got, orbit_roots(label), "{label}");
    }
    // n(n+1) for A_n
    for n in 1..=4usize {
        assert_eq!(orbit_roots(&format!("A{n}")).len(), n * (n + 1));
    }
}

#[test]
fn unsupported_labels() {
    for bad in ["A0", "A5", "B2", "C3", "G", "", "g2"] {
        assert!(matches!(RootSystem::from_label(bad), Err(RootError::Unsupported(_))), "{bad}");
    }
}

#[test]
fn positive_roots_and_order() {
    let c2: Vec<_> = sys("C2").positive().to_vec();
    assert_eq!(c2, vec![r(&[1, 0]), r(&[0, 1]), r(&[1, 1]), r(&[2, 1])]);
    let g2: Vec<_> = sys("G2").positive().to_vec();
    assert_eq!(g2, vec![r(&[1, 0]), r(&[0, 1]), r(&[1, 1]), r(&[2, 1]), r(&[3, 1]), r(&[3, 2])]);
    for label in TYPES {
        let s = sys(label);
        let pos = s.positive();
        // height, then coordinates descending so simple roots come in index order
        let key = |x: &Root| (x.height(), std::cmp::Reverse(x.0.clone()));
        assert!(pos.windows(2).all(|w| key(&w[0]) < key(&w[1])), "{label}");
        for (i, p) in pos.iter().enumerate() {
            assert!(p.0.iter().all(|&c| c >= 0), "{label}");
            assert_eq!(s.negative()[i], p.neg(), "{label}");
        }
        for i in 0..s.rank() {
            assert_eq!(s.simple(i).height(), 1);
        }
    }
}

#[test]
fn lengths() {
    let c2 = sys("C2");
    let short: BTreeSet<_> = c2.roots().iter().filter(|x| !c2.is_long(x)).cloned().collect();
    let want: BTreeSet<_> = [[1, 0], [-1, 0], [1, 1], [-1, -1]].iter().map(|c| r(c)).collect();
    assert_eq!(short, want);
    let long: BTreeSet<_> = c2.long_roots().into_iter().map(|i| c2.roots()[i].clone()).collect();
    let want: BTreeSet<_> = [[0, 1], [0, -1], [2, 1], [-2, -1]].iter().map(|c| r(c)).collect();
    assert_eq!(long, want);
    // ratio of squared lengths
    assert_eq!(c2.norm(&r(&[0, 1])), 2 * c2.norm(&r(&[1, 0])));
    let g2 = sys("G2");
    assert_eq!(g2.norm(&r(&[0, 1])), 3 * g2.norm(&r(&[1, 0])));
    for label in ["A1", "A2", "A3", "A4"] {
        let s = sys(label);
        assert_eq!(s.long_roots().len(), s.len(), "{label}");
    }
}

#[test]
fn g2_long_roots_form_a2() {
    let g2 = sys("G2");
    let long: Vec<Root> = g2.long_roots().into_iter().map(|i| g2.roots()[i].clone()).collect();
    assert_eq!(long.len(), 6);
    let set: HashSet<_> = long.iter().cloned().collect();
    // closed: a sum of two long roots that is a root is long
    for x in &long {
        for y in &long {
            let z = x.add(y);
            if g2.contains(&z) {
                assert!(set.contains(&z));
            }
        }
    }
    // same pairing multiset as A2
    let a2 = sys("A2");
    let pairings = |s: &RootSystem, rs: &[Root]| {
        let mut v: Vec<i64> = rs.iter().flat_map(|x| rs.iter().map(move |y| (x, y))).map(|(x, y)| s.pairing(x, y)).collect();
        v.sort();
        v
    };
    assert_eq!(pairings(&g2, &long), pairings(&a2, a2.roots()));
}

#[test]
fn weyl_examples() {
    let c2 = sys("C2");
    let (a, b) = (r(&[1, 0]), r(&[0, 1]));
    assert_eq!(c2.weyl_reflect(&a, &a).unwrap(), a.neg());
    assert_eq!(c2.pairing(&a, &b), -1);
    assert_eq!(c2.weyl_reflect(&a, &b).unwrap(), r(&[1, 1]));
    let g2 = sys("G2");
    assert_eq!(g2.pairing(&b, &a), -3);
    assert_eq!(g2.weyl_reflect(&b, &a).unwrap(), r(&[3, 1]));
    assert!(matches!(g2.weyl_reflect(&r(&[2, 2]), &a), Err(RootError::NotARoot(_))));
    assert!(c2.weyl_reflect(&a, &r(&[1, 2])).is_err());
}

#[test]
fn root_string_examples() {
    let (a, b) = (r(&[1, 0]), r(&[0, 1]));
    assert_eq!(sys("A2").root_string(&a, &b).unwrap(), (0, 1));
    assert_eq!(sys("C2").root_string(&a, &b).unwrap(), (0, 2));
    assert_eq!(sys("G2").root_string(&a, &b).unwrap(), (0, 3));
    let g2 = sys("G2");
    assert_eq!(g2.root_string(&a, &r(&[1, 1])).unwrap(), (1, 2));
    assert_eq!(g2.root_string(&a, &a), Err(RootError::Proportional));
    assert_eq!(g2.root_string(&a, &a.neg()), Err(RootError::Proportional));
}

#[test]
fn golden_table_is_frozen() {
    assert_eq!(golden_hash(), "ff1a293c9c7f78470365f509aa996c2f179edc39cb824d2ebb63bc3e54a7593f");
    let all = parse_sign_table(GOLDEN_SIGN_TABLE).unwrap();
    let labels: Vec<String> = all.keys().map(|t| t.label()).collect();
    assert_eq!(labels, ["A2", "A3", "A4", "C2", "G2"]);
    let lines: usize = all.iter().map(|(ty, t)| t.to_lines(*ty).len()).sum();
    let data = GOLDEN_SIGN_TABLE.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')).count();
    assert_eq!(lines, data);
    // to_lines re-parses to the same tables
    let mut text = String::new();
    for (ty, t) in &all {
        for l in t.to_lines(*ty) {
            text.push_str(&l);
            text.push('\n');
        }
    }
    assert_eq!(parse_sign_table(&text).unwrap(), all);
    for (ty, t) in &all {
        assert_eq!(&structure_constants(&RootSystem::build(*ty).unwrap()).unwrap(), t);
    }
    assert!(structure_constants(&sys("A1")).unwrap().is_empty());
}

#[test]
fn bad_table_lines() {
    for bad in [
        "A2 1,0 0,1 1,1 + 1",
        "A2 1,0 0,1 1,1 * 1 a^1*b^1",
        "A2 1,0 0,1 1,1 + 0 a^1*b^1",
        "A2 1,0 0,1 2,1 + 1 a^1*b^1",
        "A2 1,0 0,1 1,1 + 1 a^2*b^1",
        "A2 2,0 0,1 1,1 + 1 a^1*b^1",
        "B2 1,0 0,1 1,1 + 1 a^1*b^1",
        "A2 1,0,0 0,1 1,1 + 1 a^1*b^1",
    ] {
        assert!(parse_sign_table(bad).is_err(), "{bad}");
    }
}

fn table(label: &str) -> SignTable {
    structure_constants(&sys(label)).unwrap()
}

/// `(i, j, |c|)` sorted, for the pair `(phi, psi)`.
fn shape(t: &SignTable, phi: &Root, psi: &Root) -> Vec<(u32, u32, i64)> {
    let mut v: Vec<_> = t.get(phi, psi).iter().map(|c| (c.i, c.j, c.coeff.abs())).collect();
    v.sort();
    v
}

#[test]
fn term_shapes_match_the_commutator_lemma() {
    let a2 = table("A2");
    assert_eq!(shape(&a2, &r(&[1, 0]), &r(&[0, 1])), [(1, 1, 1)]);
    assert_eq!(shape(&a2, &r(&[0, 1]), &r(&[1, 0])), [(1, 1, 1)]);

    // (e_psi(b), e_phi(a)) in the table's (e_phi(a), e_psi(b)) keying
    let c2 = table("C2");
    assert_eq!(shape(&c2, &r(&[0, 1]), &r(&[1, 0])), [(1, 1, 1), (1, 2, 1)]);
    assert_eq!(shape(&c2, &r(&[1, 1]), &r(&[1, 0])), [(1, 1, 2)]);
    assert!(shape(&c2, &r(&[0, 1]), &r(&[2, 1])).is_empty());

    let g2 = table("G2");
    assert_eq!(shape(&g2, &r(&[0, 1]), &r(&[1, 0])), [(1, 1, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]);
    assert_eq!(shape(&g2, &r(&[1, 1]), &r(&[1, 0])), [(1, 1, 2), (1, 2, 3), (2, 1, 3)]);
    assert_eq!(shape(&g2, &r(&[2, 1]), &r(&[1, 0])), [(1, 1, 3)]);
    assert_eq!(shape(&g2, &r(&[0, 1]), &r(&[3, 1])), [(1, 1, 1)]);
    assert_eq!(shape(&g2, &r(&[1, 1]), &r(&[2, 1])), [(1, 1, 3)]);
    assert!(shape(&g2, &r(&[0, 1]), &r(&[3, 2])).is_empty());
}

#[test]
fn every_pair_is_a_weyl_image_of_a_listed_shape() {
    // Shapes are W-invariant, and each term root i phi + j psi is a root.
    for label in ["A2", "A3", "A4", "C2", "G2"] {
        let s = sys(label);
        let t = table(label);
        for phi in s.roots() {
            for psi in s.roots() {
                if phi == psi || *phi == psi.neg() {
                    assert!(t.get(phi, psi).is_empty());
                    continue;
                }
                let terms = t.get(phi, psi);
                assert_eq!(terms.is_empty(), !s.contains(&phi.add(psi)), "{label} {phi:?} {psi:?}");
                for c in terms {
                    assert_eq!(c.root, phi.scale(c.i as i64).add(&psi.scale(c.j as i64)));
                    assert!(s.contains(&c.root));
                }
                // |N_{phi,psi}| = p + 1 on the phi-string through psi
                if let Some(c) = terms.iter().find(|c| (c.i, c.j) == (1, 1)) {
                    let (p, _) = s.root_string(phi, psi).unwrap();
                    assert_eq!(c.coeff.abs(), p as i64 + 1, "{label} {phi:?} {psi:?}");
                }
                for k in 0..s.rank() {
                    let w = s.simple(k);
                    let (wp, ws) = (s.weyl_reflect(phi, &w).unwrap(), s.weyl_reflect(psi, &w).unwrap());
                    assert_eq!(shape(&t, phi, psi), shape(&t, &wp, &ws), "{label}");
                }
            }
        }
    }
}

/// Pairs whose commutator is still non-trivial once coefficients are read mod `p`.
fn surviving(label: &str, p: i64) -> usize {
    table(label).pairs().filter(|(_, _, ts)| ts.iter().any(|c| c.coeff % p != 0)).count()
}

/// Ordered pairs of short roots whose sum is a long root.
fn short_pairs_with_long_sum(s: &RootSystem) -> usize {
    let short: Vec<&Root> = s.roots().iter().filter(|x| !s.is_long(x)).collect();
    short.iter().flat_map(|x| short.iter().map(move |y| x.add(y))).filter(|z| s.contains(z) && s.is_long(z)).count()
}

#[test]
fn small_characteristic_degenerations() {
    // Non-commuting pairs: phi + psi a root.
    for label in ["A2", "C2", "G2"] {
        let s = sys(label);
        let n = s.roots().iter().flat_map(|x| s.roots().iter().map(move |y| x.add(y))).filter(|z| s.contains(z)).count();
        assert_eq!(table(label).len(), n, "{label}");
    }
    // The only relations to die are short-short ones with a long sum,
    // whose single coefficient is the squared length ratio.
    let (c2, g2) = (sys("C2"), sys("G2"));
    assert_eq!(short_pairs_with_long_sum(&c2), 8);
    assert_eq!(short_pairs_with_long_sum(&g2), 12);
    assert_eq!(surviving("C2", 2), table("C2").len() - 8);
    assert_eq!(surviving("C2", 3), table("C2").len());
    assert_eq!(surviving("G2", 2), table("G2").len());
    assert_eq!(surviving("G2", 3), table("G2").len() - 12);
    // Mod 2 the 2ab term of (e_{a+b}, e_a) goes, mod 3 only it remains.
    let t = table("G2");
    let t = t.get(&r(&[1, 1]), &r(&[1, 0]));
    assert!(t.iter().filter(|c| c.coeff % 2 != 0).all(|c| (c.i, c.j) != (1, 1)));
    assert!(t.iter().filter(|c| c.coeff % 3 != 0).all(|c| (c.i, c.j) == (1, 1)));
}

fn any_system() -> impl Strategy<Value = RootSystem> {
    prop::sample::select(TYPES.to_vec()).prop_map(sys)
}

proptest! {
    #[test]
    fn reflections_permute_roots(s in any_system(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let a = s.roots()[i.index(s.len())].clone();
        let x = s.roots()[j.index(s.len())].clone();
        let img: BTreeSet<_> = s.roots().iter().map(|y| s.weyl_reflect(y, &a).unwrap()).collect();
        prop_assert_eq!(img.len(), s.len());
        prop_assert!(img.iter().all(|y| s.contains(y)));
        let wx = s.weyl_reflect(&x, &a).unwrap();
        prop_assert_eq!(s.weyl_reflect(&wx, &a).unwrap(), x.clone());
        prop_assert_eq!(s.norm(&wx), s.norm(&x));
        prop_assert!(s.contains(&x.neg()));
        prop_assert!(x.0.iter().all(|&c| c >= 0) || x.0.iter().all(|&c| c <= 0));
    }

    #[test]
    fn root_strings_are_unbroken(s in any_system(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let a = s.roots()[i.index(s.len())].clone();
        let b = s.roots()[j.index(s.len())].clone();
        if a == b || a == b.neg() {
            prop_assert_eq!(s.root_string(&a, &b), Err(RootError::Proportional));
        } else {
            let (p, q) = s.root_string(&a, &b).unwrap();
            prop_assert_eq!(p as i64 - q as i64, s.pairing(&b, &a));
            prop_assert!(p + q <= 3);
            // the string reflects onto itself
            let top = b.add(&a.scale(q as i64));
            prop_assert_eq!(s.weyl_reflect(&top, &a).unwrap(), b.add(&a.scale(-(p as i64))));
        }
    }
}
