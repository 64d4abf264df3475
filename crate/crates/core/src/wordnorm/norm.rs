//! Conjugation-invariant word norms, balls, diameters and Δ_l.
//!
//! `B_T(k)` is a union of conjugacy classes, and for a class `C` with
//! representative `r` the classes met by `C S` (with `S` the conjugates of
//! `T ∪ T^-1`) are exactly the classes of `r s`, `s` in `S`. So the
//! breadth-first search runs over classes, one representative each.

use rayon::prelude::*;
use serde::Serialize;

use super::store::GroupStore;
use super::WordNormError;
use crate::rootdata::Root;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormTable {
    /// The base set `T` as element indices.
    pub base: Vec<u32>,
    /// Norm of each conjugacy class; `None` is infinity.
    pub class_norm: Vec<Option<u32>>,
    /// Max norm when `T` normally generates, otherwise `None`.
    pub diameter: Option<u32>,
}

impl NormTable {
    pub fn norm(&self, store: &GroupStore, e: u32) -> Option<u32> {
        self.class_norm[store.classes().class_of[e as usize] as usize]
    }
    pub fn normally_generates(&self) -> bool {
        self.diameter.is_some()
    }
}

/// All conjugates of `T ∪ T^-1`, sorted.
pub fn conjugate_closure(store: &GroupStore, t: &[u32]) -> Vec<u32> {
    let cl = store.classes();
    let mut ids: Vec<u32> =
        t.iter().flat_map(|&x| [cl.class_of[x as usize], cl.class_of[store.inv(x) as usize]]).collect();
    ids.sort_unstable();
    ids.dedup();
    let mut out: Vec<u32> = ids.iter().flat_map(|&c| cl.members[c as usize].iter().copied()).collect();
    out.sort_unstable();
    out
}

/// `‖.‖_T` on every class, and the diameter.
pub fn norm_table(store: &GroupStore, t: &[u32]) -> NormTable {
    let cl = store.classes();
    let s = conjugate_closure(store, t);
    let mut dist: Vec<Option<u32>> = vec![None; cl.len()];
    let id_class = cl.class_of[0] as usize;
    dist[id_class] = Some(0);
    let mut frontier = vec![id_class];
    let mut k = 0;
    while !frontier.is_empty() {
        k += 1;
        let mut hit: Vec<u32> = frontier
            .par_iter()
            .flat_map_iter(|&c| {
                let r = cl.rep(c);
                s.iter().map(move |&x| cl.class_of[store.mul(r, x) as usize])
            })
            .collect();
        hit.sort_unstable();
        hit.dedup();
        frontier = hit.into_iter().map(|c| c as usize).filter(|&c| dist[c].is_none()).collect();
        for &c in &frontier {
            dist[c] = Some(k);
        }
    }
    let diameter = if dist.iter().all(Option::is_some) { dist.iter().flatten().max().copied() } else { None };
    NormTable { base: t.to_vec(), class_norm: dist, diameter }
}

/// `B_T(k)` as sorted element indices.
pub fn ball(store: &GroupStore, t: &[u32], k: u32) -> Vec<u32> {
    let table = norm_table(store, t);
    ball_from_table(store, &table, k)
}

pub fn ball_from_table(store: &GroupStore, table: &NormTable, k: u32) -> Vec<u32> {
    let cl = store.classes();
    let mut out: Vec<u32> = (0..cl.len())
        .filter(|&c| table.class_norm[c].is_some_and(|d| d <= k))
        .flat_map(|c| cl.members[c].iter().copied())
        .collect();
    out.sort_unstable();
    out
}

/// Membership vector of the normal closure `<<S>>`.
pub fn normal_closure(store: &GroupStore, s: &[u32]) -> Vec<bool> {
    let table = norm_table(store, s);
    let cl = store.classes();
    (0..store.len()).map(|e| table.class_norm[cl.class_of[e] as usize].is_some()).collect()
}

pub fn normally_generates(store: &GroupStore, s: &[u32]) -> bool {
    norm_table(store, s).normally_generates()
}

/// `|G / [G, G]|`, with `[G, G]` the normal closure of the commutators of
/// the generators.
pub fn abelianization_order(store: &GroupStore) -> u64 {
    let g = store.generators();
    let comms: Vec<u32> = g.iter().flat_map(|&a| g.iter().map(move |&b| (a, b))).map(|(a, b)| store.commutator(a, b)).collect();
    let derived = normal_closure(store, &comms).iter().filter(|&&x| x).count() as u64;
    store.len() as u64 / derived
}

/// `ε(T, φ, k)`: ring elements (as table indices) with `e_phi(x)` in `B_T(k)`.
pub fn epsilon_set(store: &GroupStore, t: &[u32], phi: &Root, k: u32) -> Result<Vec<u8>, WordNormError> {
    let table = norm_table(store, t);
    let mut out = Vec::new();
    for x in store.ring().elements() {
        let e = store.root_element(phi, x).ok_or(WordNormError::NotChevalley)?;
        if table.norm(store, e).is_some_and(|d| d <= k) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Value of Δ_l: `-inf` when no set of size at most `l` normally generates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Delta {
    NegInfinity,
    Finite(u32),
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub l: usize,
    pub value: Delta,
    pub classes: usize,
    pub searched: usize,
    /// Class representatives of a set attaining the value.
    pub witness: Vec<u32>,
}

/// Δ_l by search over multisets of conjugacy classes of size at most `l`.
/// Fails if more than `cap` candidate sets would be examined.
pub fn delta_l(store: &GroupStore, l: usize, cap: usize) -> Result<DeltaReport, WordNormError> {
    let cl = store.classes();
    let k = cl.len();
    // multisets of size l over k classes (a repeated class stands for a smaller set)
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) -> bool {
        if out.len() > cap {
            return false;
        }
        if left == 0 {
            out.push(cur.clone());
            return true;
        }
        for c in start..k {
            cur.push(c);
            let ok = rec(c, k, left - 1, cur, out, cap);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    if l > 0 && (!rec(0, k, l, &mut cur, &mut sets, cap) || sets.len() > cap) {
        return Err(WordNormError::Cap(cap));
    }
    let results: Vec<Option<u32>> = sets
        .par_iter()
        .map(|set| {
            let t: Vec<u32> = set.iter().map(|&c| cl.rep(c)).collect();
            norm_table(store, &t).diameter
        })
        .collect();
    let best = results.iter().enumerate().filter_map(|(i, d)| d.map(|d| (d, i))).max_by_key(|&(d, i)| (d, std::cmp::Reverse(i)));
    let (value, witness) = match best {
        Some((d, i)) => (Delta::Finite(d), sets[i].iter().map(|&c| cl.rep(c)).collect()),
        None if store.len() == 1 => (Delta::Finite(0), Vec::new()),
        None => (Delta::NegInfinity, Vec::new()),
    };
    Ok(DeltaReport { l, value, classes: k, searched: sets.len(), witness })
}
