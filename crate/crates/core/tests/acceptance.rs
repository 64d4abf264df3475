//! One line per acceptance criterion. Each criterion builds a JSON report
//! (no timings); criterion 12 reruns 1-11 under one and eight worker threads
//! and compares the serialized reports byte for byte.

use std::time::{Duration, Instant};

use chevfq::boundgen::{cover_exponent, elementary_factorize_sln, g2_to_sl3_distance};
use chevfq::chevmat::{relation_suite, ChevModel, Matrix};
use chevfq::ffring::poly::monic_of_degree;
use chevfq::ffring::{
    divisor_of, kornblum_search, residue_f2_primes, vn2_ideal, FieldDesc, IdealHandle, Poly, RingHandle,
};
use chevfq::mennicke::{mennicke_axioms, relative_quotient, DEFAULT_BASIS_CAP};
use chevfq::rootdata::{structure_constants, RootType};
use chevfq::wordnorm::{
    abelianization_order, delta_l, g2_char2_identity, lower_bound_construction, sp4_char2_identity, Delta,
    GroupStore, DEFAULT_ELEMENT_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const CAP: usize = DEFAULT_ELEMENT_CAP;

struct Outcome {
    pass: bool,
    summary: String,
    report: Value,
}

fn ring(s: &str) -> RingHandle {
    RingHandle::parse(s).expect("ring spec")
}

fn poly(c: &[u8]) -> Poly {
    Poly::from_coeffs(c.to_vec())
}

fn c1_relations() -> Outcome {
    let mut reports = Vec::new();
    let mut failures = 0;
    for ty in [RootType::A(2), RootType::C2, RootType::G2] {
        let model = ChevModel::get(ty);
        let table = structure_constants(model.system()).expect("golden table");
        for spec in ["GF(2)", "GF(3)", "GF(4)", "GF(5)", "GF(2)[T]/(0,0,0,1)"] {
            let fr = ring(spec).finite().expect("finite");
            let rep = relation_suite(&model, &table, &fr);
            failures += rep.failures.len();
            reports.push(serde_json::to_value(&rep).unwrap());
        }
    }
    let checks: usize = reports.iter().map(|r| r["checks"].as_u64().unwrap() as usize).sum();
    Outcome {
        pass: failures == 0,
        summary: format!("{checks} relation checks over 15 (type, ring) pairs, {failures} failures"),
        report: json!(reports),
    }
}

fn c2_sp4_identity() -> Outcome {
    let rep = sp4_char2_identity(&ring("GF(2)[T]/(0,0,0,1)")).unwrap();
    Outcome {
        pass: rep.holds() && rep.checked == 8,
        summary: format!("{}/{} values of x", rep.checked - rep.failures.len(), rep.checked),
        report: serde_json::to_value(&rep).unwrap(),
    }
}

fn c3_g2_identity() -> Outcome {
    let rep = g2_char2_identity(&ring("GF(2)[T]/(0,0,1)")).unwrap();
    Outcome {
        pass: rep.literal_holds() && rep.checked == 16,
        summary: format!(
            "literal form {}/16; with e_(3a+2b)(x^3y^2) as last factor {}/16; defect is e_(3a+2b)(x^2y^2): {}",
            16 - rep.literal_failures.len(),
            16 - rep.exact_failures.len(),
            rep.defect_is_long_root
        ),
        report: serde_json::to_value(&rep).unwrap(),
    }
}

fn c4_vn2() -> Outcome {
    let f2 = RingHandle::poly_ring(FieldDesc::get(2, 1).unwrap());
    let i = vn2_ideal(&f2).unwrap();
    let primes = residue_f2_primes(&f2).unwrap();
    let radical = {
        let fs = chevfq::ffring::factor(i.gen_poly(), f2.field());
        fs.iter().all(|(_, m)| *m == 1) && fs.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>() == primes
    };
    let f4 = RingHandle::poly_ring(FieldDesc::get(2, 2).unwrap());
    let whole = vn2_ideal(&f4).unwrap().is_whole();
    let pass = i.gen_poly() == &poly(&[0, 1, 1]) && primes == vec![poly(&[0, 1]), poly(&[1, 1])] && radical && whole;
    Outcome {
        pass,
        summary: format!("vn2(F2[T]) = ({}), r = {}, radical {radical}, vn2(F4[T]) = (1): {whole}", i.gen_poly().display(f2.field()), primes.len()),
        report: json!({
            "vn2_f2": i.gen_poly().display(f2.field()),
            "primes": primes.iter().map(|p| p.display(f2.field())).collect::<Vec<_>>(),
            "radical": radical,
            "vn2_f4_whole": whole,
        }),
    }
}

fn c5_orders() -> Outcome {
    let sp4 = GroupStore::chevalley(RootType::C2, &ring("GF(2)"), CAP).unwrap();
    let g2 = GroupStore::chevalley(RootType::G2, &ring("GF(2)"), CAP).unwrap();
    let (a, b) = (abelianization_order(&sp4), abelianization_order(&g2));
    let prod = GroupStore::chevalley(RootType::C2, &ring("GF(2)[T]/(0,1,1)"), CAP).unwrap();
    let d1 = delta_l(&prod, 1, 100_000).unwrap();
    let pass = sp4.len() == 720 && g2.len() == 12096 && a == 2 && b == 2 && d1.value == Delta::NegInfinity;
    Outcome {
        pass,
        summary: format!(
            "|Sp4(F2)| = {}, |G2(F2)| = {}, abelianizations {a} and {b}; Delta_1 over F2[T]/(T^2+T) = {:?} ({} classes)",
            sp4.len(),
            g2.len(),
            d1.value,
            d1.classes
        ),
        report: json!({
            "sp4": sp4.len(), "g2": g2.len(), "ab_sp4": a, "ab_g2": b,
            "product_order": prod.len(), "delta1": serde_json::to_value(&d1).unwrap(),
        }),
    }
}

fn c6_cover() -> Outcome {
    let cases = [
        (RootType::A(2), "GF(2)"),
        (RootType::A(2), "GF(3)"),
        (RootType::C2, "GF(2)"),
        (RootType::C2, "GF(3)"),
        (RootType::G2, "GF(2)"),
        (RootType::A(2), "GF(2)[T]/(0,0,1)"),
    ];
    let mut pass = true;
    let mut reports = Vec::new();
    let mut lmins = Vec::new();
    for (ty, spec) in cases {
        let rep = cover_exponent(ty, &ring(spec), CAP).unwrap();
        let monotone = rep.sizes.windows(2).all(|w| w[0] < w[1]);
        pass &= rep.l_min.is_some() && monotone && rep.sizes.last() == Some(&rep.order);
        lmins.push(format!("{ty}/{spec}:{}", rep.l_min.map_or("none".into(), |l| l.to_string())));
        reports.push(serde_json::to_value(&rep).unwrap());
    }
    Outcome { pass, summary: format!("L_min {}", lmins.join(" ")), report: json!(reports) }
}

fn c7_distance() -> Outcome {
    let rep = g2_to_sl3_distance(&ring("GF(2)"), CAP).unwrap();
    Outcome {
        pass: rep.max_distance <= 18 && rep.order == 12096,
        summary: format!("max distance {} over {} elements (subgroup order {})", rep.max_distance, rep.order, rep.subgroup_order),
        report: serde_json::to_value(&rep).unwrap(),
    }
}

fn c8_mennicke() -> Outcome {
    let mut pass = true;
    let mut reports = Vec::new();
    for (spec, gen) in [("GF(2)[T]/(0,0,0,0,1)", &[0u8, 0, 1][..]), ("GF(3)[T]/(0,0,0,1)", &[0, 1])] {
        let i = IdealHandle::from_coeffs(&ring(spec), gen);
        for ty in [RootType::A(2), RootType::C2] {
            let ax = mennicke_axioms(ty, &i).unwrap();
            let q = relative_quotient(ty, &i, DEFAULT_BASIS_CAP).unwrap();
            pass &= ax.holds() && q.index == 1;
            if ty == RootType::C2 {
                pass &= ax.square_rule.as_ref().is_some_and(|c| c.holds() && c.checked > 0);
            }
            reports.push(json!({"axioms": ax, "quotient": q}));
        }
    }
    Outcome { pass, summary: "MS(1), MS(2), square rule and [C:E] = 1 on both test rings".into(), report: json!(reports) }
}

/// Trial division by every monic polynomial of degree at most deg/2.
fn irreducible_by_trial_division(p: &Poly, f: &FieldDesc) -> bool {
    let Some(d) = p.deg() else { return false };
    d >= 1 && (1..=d / 2).all(|k| monic_of_degree(k, f.order()).all(|m| !m.divides(p, f)))
}

fn c9_kornblum() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ok = 0;
    let mut rows = Vec::new();
    for q in [2u32, 3] {
        let field = FieldDesc::get(q, 1).unwrap();
        let r = RingHandle::poly_ring(field.clone());
        let mut done = 0;
        while done < 100 {
            let dg = rng.gen_range(1..=6);
            let mut gc: Vec<u8> = (0..dg).map(|_| rng.gen_range(0..q as u8)).collect();
            gc.push(1);
            let g = poly(&gc);
            let fc: Vec<u8> = (0..dg).map(|_| rng.gen_range(0..q as u8)).collect();
            let f = poly(&fc);
            if !f.gcd(&g, &field).is_one() {
                continue;
            }
            done += 1;
            let n0 = rng.gen_range(1..=4u64);
            let m0 = rng.gen_range(0..n0 as i64);
            let res = kornblum_search(&r.elem(f.clone()), &r.elem(g.clone()), (m0, n0), dg + 12);
            let verified = res.as_ref().is_ok_and(|p| {
                let p = p.poly();
                let d = p.deg().unwrap() as i64;
                irreducible_by_trial_division(p, &field)
                    && p.sub(&f, &field).rem(&g, &field).is_zero()
                    && (d + m0).rem_euclid(n0 as i64) == 0
            });
            ok += verified as usize;
            rows.push(json!({
                "q": q, "f": f.display(&field), "g": g.display(&field), "class": [m0, n0],
                "found": res.map(|p| p.poly().display(&field)).ok(), "verified": verified,
            }));
        }
    }
    Outcome { pass: ok == 200, summary: format!("{ok}/200 searches verified independently"), report: json!(rows) }
}

fn c10_factorization() -> Outcome {
    let field = FieldDesc::get(2, 1).unwrap();
    let r = RingHandle::poly_ring(field.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut good = 0;
    let mut lengths = Vec::new();
    for _ in 0..1000 {
        let mut m = Matrix::identity(&r, 3);
        for _ in 0..rng.gen_range(1..=6) {
            let i = rng.gen_range(0..3);
            let j = (i + rng.gen_range(1..3)) % 3;
            let c: Vec<u8> = (0..=4).map(|_| rng.gen_range(0..2)).collect();
            let mut e = Matrix::identity(&r, 3);
            e.set(i, j, poly(&c));
            m = m.mul(&e, &r);
        }
        let rep = elementary_factorize_sln(&m, &r).unwrap();
        good += (rep.verified && rep.word.eval(rep.ty, &r).matrix() == &m) as usize;
        lengths.push(rep.length);
    }
    let mut div_ok = 0;
    for _ in 0..1000 {
        let d = rng.gen_range(0..=12);
        let mut c: Vec<u8> = (0..d).map(|_| rng.gen_range(0..2)).collect();
        c.push(1);
        div_ok += (divisor_of(&r.elem(poly(&c))).unwrap().degree() == 0) as usize;
    }
    Outcome {
        pass: good == 1000 && div_ok == 1000,
        summary: format!("{good}/1000 words re-factorized exactly (max length {}); {div_ok}/1000 divisors of degree 0", lengths.iter().max().unwrap()),
        report: json!({"lengths": lengths, "divisors_ok": div_ok}),
    }
}

fn c11_lower_bound() -> Outcome {
    let base = RingHandle::poly_ring(FieldDesc::get(2, 1).unwrap());
    let (_, cert) = lower_bound_construction(RootType::C2, &base, 2, &[], CAP).unwrap();
    Outcome {
        pass: cert.holds && cert.quotient_order == 518_400,
        summary: format!(
            "y = {:?}, l(S) = R: {}, image generates: {}, diameter {:?} in {} elements",
            cert.y, cert.level_whole, cert.image_generates, cert.diameter, cert.quotient_order
        ),
        report: serde_json::to_value(&cert).unwrap(),
    }
}

type Criterion = (usize, &'static str, fn() -> Outcome, Option<Duration>);

const CRITERIA: [Criterion; 11] = [
    (1, "commutator relations", c1_relations, Some(Duration::from_secs(60))),
    (2, "Sp4 char-2 identity", c2_sp4_identity, None),
    (3, "G2 char-2 product identity", c3_g2_identity, None),
    (4, "vn2 and r(R)", c4_vn2, None),
    (5, "group orders and quotient obstruction", c5_orders, Some(Duration::from_secs(600))),
    (6, "cover exponents", c6_cover, None),
    (7, "G2 to SL3 distance", c7_distance, None),
    (8, "Mennicke axioms", c8_mennicke, None),
    (9, "Kornblum search", c9_kornblum, None),
    (10, "factorization soundness", c10_factorization, None),
    (11, "lower-bound certificate", c11_lower_bound, Some(Duration::from_secs(1800))),
];

/// Criteria that cannot pass as stated, with the reason.
const KNOWN_FAILURES: [(usize, &str); 1] = [(
    3,
    "the stated right side drops the factor e_(3a+2b)(x^2y^2) that reordering the two commutators produces",
)];

fn run_all(threads: usize, print: bool) -> (Vec<String>, Vec<usize>) {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| {
        let mut reports = Vec::new();
        let mut failed = Vec::new();
        for (id, name, f, limit) in CRITERIA {
            let t = Instant::now();
            let out = f();
            let el = t.elapsed();
            let in_time = limit.is_none_or(|l| el <= l);
            let pass = out.pass && in_time;
            if !pass {
                failed.push(id);
            }
            if print {
                let note = KNOWN_FAILURES.iter().find(|(k, _)| *k == id).filter(|_| !pass).map(|(_, w)| format!(" [known: {w}]"));
                let limit = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
                println!(
                    "criterion {id:>2} {}: {name}: {} [{:.1}s{limit}]{}",
                    if pass { "PASS" } else { "FAIL" },
                    out.summary,
                    el.as_secs_f64(),
                    note.unwrap_or_default()
                );
            }
            reports.push(serde_json::to_string(&out.report).unwrap());
        }
        (reports, failed)
    })
}

fn main() {
    let (single, failed) = run_all(1, true);
    let (multi, _) = run_all(8, false);
    let same = single == multi;
    let differing: Vec<usize> = (0..single.len()).filter(|&i| single[i] != multi[i]).map(|i| i + 1).collect();
    println!(
        "criterion 12 {}: determinism: reports of criteria 1-11 are {} under 1 and 8 threads{}",
        if same { "PASS" } else { "FAIL" },
        if same { "byte-identical" } else { "different" },
        if same { String::new() } else { format!(" (criteria {differing:?})") }
    );
    let unexpected: Vec<usize> =
        failed.iter().copied().filter(|id| !KNOWN_FAILURES.iter().any(|(k, _)| k == id)).collect();
    if !unexpected.is_empty() || !same {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
