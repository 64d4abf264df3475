//! The pinned commutator sign table and its text format.
//!
//! One line per term of a commutator expansion:
//!
//! ```text
//! <label> <phi> <psi> <term root> <sign> <magnitude> a^i*b^j
//! ```
//!
//! meaning that `(e_phi(a), e_psi(b))` contains the factor
//! `e_{i phi + j psi}(sign * magnitude * a^i b^j)`. Factors of one
//! commutator are listed in the order they multiply (by `i + j`, then `i`).
//! Pairs with no line commute.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{Root, RootSystem, RootType};

pub const GOLDEN_SIGN_TABLE: &str = include_str!("../../data/sign_table.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignTableError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("no entries for {0}")]
    Missing(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommTerm {
    pub i: u32,
    pub j: u32,
    pub root: Root,
    /// Signed integer coefficient of `a^i b^j`.
    pub coeff: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignTable {
    entries: BTreeMap<(Root, Root), Vec<CommTerm>>,
}

impl SignTable {
    pub fn new() -> SignTable {
        SignTable::default()
    }
    pub fn insert(&mut self, phi: Root, psi: Root, terms: Vec<CommTerm>) {
        if !terms.is_empty() {
            self.entries.insert((phi, psi), terms);
        }
    }
    /// Terms of `(e_phi(a), e_psi(b))`; empty when the pair commutes.
    pub fn get(&self, phi: &Root, psi: &Root) -> &[CommTerm] {
        self.entries.get(&(phi.clone(), psi.clone())).map_or(&[], Vec::as_slice)
    }
    pub fn pairs(&self) -> impl Iterator<Item = (&Root, &Root, &[CommTerm])> {
        self.entries.iter().map(|((a, b), t)| (a, b, t.as_slice()))
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lines in the golden-file format for one root system.
    pub fn to_lines(&self, ty: RootType) -> Vec<String> {
        let mut out = Vec::new();
        for ((phi, psi), terms) in &self.entries {
            for t in terms {
                let sign = if t.coeff < 0 { '-' } else { '+' };
                out.push(format!(
                    "{} {} {} {} {} {} a^{}*b^{}",
                    ty.label(),
                    phi.coords(),
                    psi.coords(),
                    t.root.coords(),
                    sign,
                    t.coeff.abs(),
                    t.i,
                    t.j
                ));
            }
        }
        out
    }
}

fn parse_monomial(s: &str) -> Option<(u32, u32)> {
    let (a, b) = s.split_once('*')?;
    Some((a.strip_prefix("a^")?.parse().ok()?, b.strip_prefix("b^")?.parse().ok()?))
}

/// Parse a sign-table file into one table per root system.
pub fn parse_sign_table(text: &str) -> Result<BTreeMap<RootType, SignTable>, SignTableError> {
    let mut out: BTreeMap<RootType, SignTable> = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let bad = |msg: &str| SignTableError::Syntax { line, msg: msg.into() };
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 7 {
            return Err(bad("expected 7 fields"));
        }
        let ty: RootType = f[0].parse().map_err(|_| bad("unknown root system"))?;
        let sys = RootSystem::build(ty).map_err(|_| bad("unknown root system"))?;
        let root = |s: &str| -> Result<Root, SignTableError> {
            let r = Root::parse_coords(s).ok_or_else(|| bad("bad coordinates"))?;
            if r.0.len() != sys.rank() || !sys.contains(&r) {
                return Err(bad("not a root"));
            }
            Ok(r)
        };
        let (phi, psi, term) = (root(f[1])?, root(f[2])?, root(f[3])?);
        let sign = match f[4] {
            "+" => 1,
            "-" => -1,
            _ => return Err(bad("sign must be + or -")),
        };
        let mag: i64 = f[5].parse().ok().filter(|&m| m > 0 && m < 1000).ok_or_else(|| bad("bad magnitude"))?;
        let (i, j) = parse_monomial(f[6]).ok_or_else(|| bad("bad monomial"))?;
        if i == 0 || j == 0 || i > 4 || j > 4 || phi.scale(i as i64).add(&psi.scale(j as i64)) != term {
            return Err(bad("term root does not match monomial"));
        }
        let table = out.entry(ty).or_default();
        table
            .entries
            .entry((phi, psi))
            .or_default()
            .push(CommTerm { i, j, root: term, coeff: sign * mag });
    }
    Ok(out)
}

/// The golden sign table for `sys`.
pub fn structure_constants(sys: &RootSystem) -> Result<SignTable, SignTableError> {
    let mut all = parse_sign_table(GOLDEN_SIGN_TABLE)?;
    match sys.ty() {
        RootType::A(1) => Ok(SignTable::new()),
        ty => all.remove(&ty).ok_or_else(|| SignTableError::Missing(ty.label())),
    }
}

/// Hex SHA-256 of the golden table; any change to it invalidates caches.
pub fn golden_hash() -> String {
    hex::encode(Sha256::digest(GOLDEN_SIGN_TABLE.as_bytes()))
}
