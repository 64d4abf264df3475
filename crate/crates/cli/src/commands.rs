//! One function per subcommand. Each returns the `result` and `witnesses`
//! parts of the report and whether the checked property held.

use std::path::Path;

use chevfq::boundgen::{cover_exponent, elementary_factorize_sln, BoundGenError};
use chevfq::chevmat::{check_relation, relation_suite, ChevError, ChevModel, GroupMat, Matrix};
use chevfq::ffring::poly::all_below_degree;
use chevfq::ffring::{
    kornblum_search, poly_is_irreducible, residue_f2_primes, vn2_ideal, IdealHandle, RingError, RingHandle, RingKind,
};
use chevfq::mennicke::{mennicke_axioms, relative_quotient, MennickeError, DEFAULT_BASIS_CAP};
use chevfq::rootdata::{structure_constants, Root, RootType};
use chevfq::wordnorm::{
    ball_from_table, cache_key, delta_l, lower_bound_construction, norm_table, vn2_epsilon_certificate, GroupStore,
    NormCache, WordNormError,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::parse;

pub struct Outcome {
    pub paper_ref: &'static str,
    pub result: Value,
    pub witnesses: Vec<Value>,
    pub pass: bool,
    /// A persistent intermediate cache (norm tables) was reused.
    pub cache_hit: bool,
}

impl Outcome {
    fn new(paper_ref: &'static str, result: Value, pass: bool) -> Outcome {
        Outcome { paper_ref, result, witnesses: Vec::new(), pass, cache_hit: false }
    }
}

#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit code 1.
    Usage(String),
    /// A resource cap was hit: exit code 3, with what is known so far.
    Cap { message: String, partial: Value },
}

impl Failure {
    fn cap(message: impl ToString) -> Failure {
        Failure::Cap { message: message.to_string(), partial: Value::Null }
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Failure {
        match e {
            RingError::CapExhausted(_) => Failure::cap(e),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ChevError> for Failure {
    fn from(e: ChevError) -> Failure {
        match e {
            ChevError::Ring(r) => r.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<WordNormError> for Failure {
    fn from(e: WordNormError) -> Failure {
        match e {
            WordNormError::Cap(_) => Failure::cap(e),
            WordNormError::Ring(r) => r.into(),
            WordNormError::Chev(c) => c.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<BoundGenError> for Failure {
    fn from(e: BoundGenError) -> Failure {
        match e {
            BoundGenError::WordNorm(w) => w.into(),
            BoundGenError::Chev(c) => c.into(),
            BoundGenError::Ring(r) => r.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<MennickeError> for Failure {
    fn from(e: MennickeError) -> Failure {
        match e {
            MennickeError::Ring(r) => r.into(),
            MennickeError::Chev(c) => c.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

/// Inputs shared by the subcommands, already parsed.
pub struct Inputs {
    pub ring: Option<RingHandle>,
    pub phi: Option<RootType>,
    pub ideal: Option<String>,
    pub l: Option<usize>,
    pub t: Option<String>,
    pub k: Option<u32>,
    pub deg_cap: usize,
    pub element_cap: usize,
    pub cache_dir: Option<std::path::PathBuf>,
}

impl Inputs {
    fn ring(&self) -> Result<&RingHandle, Failure> {
        self.ring.as_ref().ok_or_else(|| Failure::Usage("--ring is required".into()))
    }
    fn phi(&self) -> Result<RootType, Failure> {
        self.phi.ok_or_else(|| Failure::Usage("--phi is required".into()))
    }
    fn l(&self) -> Result<usize, Failure> {
        self.l.ok_or_else(|| Failure::Usage("--l is required".into()))
    }
    fn ideal(&self) -> Result<IdealHandle, Failure> {
        let ring = self.ring()?;
        let s = self.ideal.as_deref().ok_or_else(|| Failure::Usage("--ideal is required".into()))?;
        Ok(IdealHandle::principal(&ring.parse_elem(s)?))
    }
}

fn mat_json(g: &GroupMat) -> Value {
    let m = g.matrix();
    let f = g.ring().field();
    let n = m.dim();
    json!((0..n).map(|r| (0..n).map(|c| m.get(r, c).display(f)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn store_mat_json(ty: RootType, store: &GroupStore, ring: &RingHandle, e: u32) -> Result<Value, Failure> {
    Ok(mat_json(&GroupMat::from_finite(ty, ring, &store.matrix(e))?))
}

pub fn relations(inp: &Inputs) -> Result<Outcome, Failure> {
    let ty = inp.phi()?;
    let ring = inp.ring()?;
    let model = ChevModel::get(ty);
    let table = structure_constants(model.system()).map_err(|e| Failure::Usage(e.to_string()))?;
    let f = ring.field();
    let paper_ref = "commutator relations between root elements";
    if ring.is_finite() {
        let fr = ring.finite()?;
        let rep = relation_suite(&model, &table, &fr);
        let witnesses = rep
            .failures
            .iter()
            .map(|w| json!({"phi": w.phi, "psi": w.psi, "a": fr.poly(w.a).display(f), "b": fr.poly(w.b).display(f)}))
            .collect();
        let result = json!({"phi": rep.phi, "ring": rep.ring, "pairs": rep.pairs, "checks": rep.checks, "failures": rep.failures.len()});
        return Ok(Outcome { witnesses, ..Outcome::new(paper_ref, result, rep.failures.is_empty()) });
    }
    if ring.kind() != RingKind::PolyRing {
        return Err(Failure::Usage("relations needs a finite ring or F_q[T]".into()));
    }
    // F_q[T]: every pair of coefficients of degree below --deg-cap.
    let grid: Vec<_> = all_below_degree(inp.deg_cap, ring.q()).collect();
    let roots = model.system().roots().to_vec();
    let pairs: Vec<(Root, Root)> = roots
        .iter()
        .flat_map(|p| roots.iter().map(move |q| (p.clone(), q.clone())))
        .filter(|(p, q)| *p != q.neg())
        .collect();
    let witnesses: Vec<Value> = pairs
        .par_iter()
        .flat_map_iter(|(phi, psi)| {
            let mut out = Vec::new();
            for a in &grid {
                for b in &grid {
                    if !check_relation(&model, &table, ring, phi, psi, a, b) {
                        out.push(json!({"phi": phi.coords(), "psi": psi.coords(), "a": a.display(f), "b": b.display(f)}));
                    }
                }
            }
            out
        })
        .collect();
    let result = json!({
        "phi": ty.label(), "ring": ring.spec(), "pairs": pairs.len(),
        "checks": pairs.len() * grid.len() * grid.len(), "degree_below": inp.deg_cap, "failures": witnesses.len(),
    });
    let pass = witnesses.is_empty();
    Ok(Outcome { witnesses, ..Outcome::new(paper_ref, result, pass) })
}

pub fn cover(inp: &Inputs) -> Result<Outcome, Failure> {
    let rep = cover_exponent(inp.phi()?, inp.ring()?, inp.element_cap)?;
    let pass = rep.l_min.is_some();
    Ok(Outcome::new("bounded generation by unipotent subgroups", json!(rep), pass))
}

pub fn factorize(inp: &Inputs, matrix: &str) -> Result<Outcome, Failure> {
    let ring = inp.ring()?;
    let m: Matrix<_> = parse::matrix(ring, matrix).map_err(Failure::Usage)?;
    let rep = elementary_factorize_sln(&m, ring)?;
    let word: Vec<Value> = rep.word.letters.iter().map(|(phi, x)| json!({"root": phi.coords(), "coeff": x.to_string()})).collect();
    let result = json!({"type": rep.ty.label(), "ring": ring.spec(), "length": rep.length, "verified": rep.verified, "word": word});
    Ok(Outcome::new("elementary factorization in SL_n", result, rep.verified))
}

pub fn ball(inp: &Inputs) -> Result<Outcome, Failure> {
    let ty = inp.phi()?;
    let ring = inp.ring()?;
    let t_spec = inp.t.as_deref().ok_or_else(|| Failure::Usage("--t is required".into()))?;
    let t = parse::root_elements(ty, ring, t_spec).map_err(Failure::Usage)?;
    if t.is_empty() {
        return Err(Failure::Usage("--t is empty".into()));
    }
    let store = GroupStore::chevalley(ty, ring, inp.element_cap)?;
    let base: Vec<u32> = t
        .iter()
        .map(|g| {
            let (_, fm) = g.to_finite()?;
            store.index_of(&fm).ok_or_else(|| Failure::Usage("element of --t outside the group".into()))
        })
        .collect::<Result<_, Failure>>()?;
    let key = cache_key(&ring.spec(), &ty.label(), &t);
    let cached = inp.cache_dir.as_deref().and_then(|d| NormCache::load(d, &key)).and_then(|c| c.to_table(&store, base.clone()).ok());
    let cache_hit = cached.is_some();
    let table = match cached {
        Some(t) => t,
        None => {
            let table = norm_table(&store, &base);
            if let Some(dir) = inp.cache_dir.as_deref() {
                save_norms(dir, NormCache::from_table(key, &store, &table));
            }
            table
        }
    };
    let cl = store.classes();
    let mut histogram = vec![0usize; table.diameter.map_or(0, |d| d as usize + 1)];
    let mut unreachable = 0usize;
    for e in 0..store.len() as u32 {
        match table.class_norm[cl.class_of[e as usize] as usize] {
            Some(d) => {
                if histogram.len() <= d as usize {
                    histogram.resize(d as usize + 1, 0);
                }
                histogram[d as usize] += 1
            }
            None => unreachable += 1,
        }
    }
    let mut result = json!({
        "phi": ty.label(), "ring": ring.spec(), "order": store.len(), "classes": cl.len(),
        "normally_generates": table.normally_generates(), "diameter": table.diameter,
        "norm_histogram": histogram, "outside_normal_closure": unreachable,
    });
    if let Some(k) = inp.k {
        result["k"] = json!(k);
        result["ball_size"] = json!(ball_from_table(&store, &table, k).len());
    }
    Ok(Outcome { cache_hit, ..Outcome::new("conjugation-invariant word norm", result, true) })
}

fn save_norms(dir: &Path, cache: NormCache) {
    // A cache that cannot be written only costs time on the next run.
    if let Err(e) = cache.save(dir) {
        eprintln!("warning: could not write norm cache in {}: {e}", dir.display());
    }
}

pub fn delta(inp: &Inputs) -> Result<Outcome, Failure> {
    let ty = inp.phi()?;
    let ring = inp.ring()?;
    let l = inp.l()?;
    let store = GroupStore::chevalley(ty, ring, inp.element_cap)?;
    let rep = match delta_l(&store, l, inp.element_cap) {
        Err(WordNormError::Cap(c)) => {
            return Err(Failure::Cap {
                message: format!("more than {c} candidate sets"),
                partial: json!({"phi": ty.label(), "ring": ring.spec(), "l": l, "order": store.len(), "classes": store.classes().len()}),
            })
        }
        r => r?,
    };
    let witnesses = rep.witness.iter().map(|&e| store_mat_json(ty, &store, ring, e)).collect::<Result<_, _>>()?;
    let mut result = json!(rep);
    result["phi"] = json!(ty.label());
    result["ring"] = json!(ring.spec());
    result["order"] = json!(store.len());
    Ok(Outcome { witnesses, ..Outcome::new("strong boundedness constant Delta_l", result, true) })
}

pub fn kornblum(inp: &Inputs, f: &str, g: &str, class: &str) -> Result<Outcome, Failure> {
    let ring = inp.ring()?;
    if ring.kind() != RingKind::PolyRing {
        return Err(Failure::Usage("kornblum needs --ring GF(q)[T]".into()));
    }
    let (f, g) = (ring.parse_elem(f)?, ring.parse_elem(g)?);
    let (m0, n0) = parse::degree_class(class).map_err(Failure::Usage)?;
    let h = kornblum_search(&f, &g, (m0, n0), inp.deg_cap)?;
    let fd = ring.field();
    let d = h.deg().expect("irreducible is nonzero") as i64;
    let irreducible = poly_is_irreducible(h.poly(), fd);
    let in_progression = h.poly().sub(f.poly(), fd).rem(g.poly(), fd).is_zero();
    let degree_ok = (d + m0).rem_euclid(n0 as i64) == 0;
    let result = json!({
        "ring": ring.spec(), "f": f.to_string(), "g": g.to_string(), "class": [m0, n0],
        "found": h.to_string(), "degree": d,
        "irreducible": irreducible, "in_progression": in_progression, "degree_class_holds": degree_ok,
    });
    Ok(Outcome::new("irreducibles in progressions with prescribed degree", result, irreducible && in_progression && degree_ok))
}

pub fn vn2(inp: &Inputs) -> Result<Outcome, Failure> {
    let ring = inp.ring()?;
    let f = ring.field();
    let ideal = vn2_ideal(ring)?;
    let mut result = json!({"ring": ring.spec(), "vn2": ideal.gen_poly().display(f), "whole": ideal.is_whole()});
    let mut pass = true;
    if ring.kind() == RingKind::PolyRing {
        let primes = residue_f2_primes(ring)?;
        result["residue_f2_primes"] = json!(primes.iter().map(|p| p.display(f)).collect::<Vec<_>>());
        result["r"] = json!(primes.len());
    }
    let mut witnesses = Vec::new();
    if ring.is_finite() {
        let cert = vn2_epsilon_certificate(ring)?;
        pass = cert.holds();
        result["epsilon_bound"] = json!(cert.bound);
        result["epsilon_certificate_holds"] = json!(pass);
        witnesses = cert.entries.iter().map(|e| json!(e)).collect();
    }
    Ok(Outcome { witnesses, ..Outcome::new("vn_2 and short-root elements as bounded products of conjugates", result, pass) })
}

pub fn mennicke(inp: &Inputs) -> Result<Outcome, Failure> {
    let ty = inp.phi()?;
    let ideal = inp.ideal()?;
    let ax = mennicke_axioms(ty, &ideal)?;
    let q = relative_quotient(ty, &ideal, DEFAULT_BASIS_CAP)?;
    let pass = ax.holds() && q.covering_holds && q.closed;
    let witnesses = [Some(&ax.ms1), Some(&ax.ms2), ax.square_rule.as_ref(), ax.square_ms1.as_ref()]
        .into_iter()
        .flatten()
        .filter_map(|c| c.first_failure.clone())
        .map(Value::String)
        .collect();
    Ok(Outcome { witnesses, ..Outcome::new("Mennicke symbol axioms and relative quotient", json!({"axioms": ax, "quotient": q}), pass) })
}

pub fn lowerbound(inp: &Inputs, extra: Option<&str>) -> Result<Outcome, Failure> {
    let ty = inp.phi.unwrap_or(RootType::C2);
    let default_base;
    let base = match &inp.ring {
        Some(r) => r,
        None => {
            default_base = RingHandle::parse("GF(2)[T]")?;
            &default_base
        }
    };
    if base.kind() != RingKind::PolyRing {
        return Err(Failure::Usage("lowerbound needs --ring GF(q)[T]".into()));
    }
    let extra = extra.map(|s| parse::poly_list(base, s)).transpose().map_err(Failure::Usage)?.unwrap_or_default();
    let (s, cert) = lower_bound_construction(ty, base, inp.l()?, &extra, inp.element_cap)?;
    let witnesses = s.iter().map(mat_json).collect();
    let pass = cert.holds;
    Ok(Outcome { witnesses, ..Outcome::new("lower bounds for strong boundedness in rank two", json!(cert), pass) })
}
