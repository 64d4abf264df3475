//! Exact products of unipotent subsets in finite Chevalley groups.

use std::collections::VecDeque;

use serde::Serialize;

use super::BoundGenError;
use crate::chevmat::ChevModel;
use crate::ffring::RingHandle;
use crate::rootdata::{Root, RootType};
use crate::wordnorm::GroupStore;

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub phi: RootType,
    pub ring: String,
    pub order: usize,
    pub u_plus: usize,
    pub u_minus: usize,
    /// Least `L` with `(U+ U-)^L = G`; `None` if the products stop growing
    /// short of `G`.
    pub l_min: Option<usize>,
    /// `|(U+ U-)^i|` for `i = 1, 2, ...`.
    pub sizes: Vec<usize>,
}

/// `X * {e_phi(x) : x in R}` as a membership vector.
fn times_root(store: &GroupStore, set: &[u32], phi: &Root) -> Vec<u32> {
    let factors: Vec<u32> =
        store.ring().elements().map(|x| store.root_element(phi, x).expect("Chevalley store")).collect();
    product(store, set, &factors)
}

fn product(store: &GroupStore, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut seen = vec![false; store.len()];
    let mut out = Vec::new();
    for &x in a {
        for &y in b {
            let z = store.mul(x, y);
            if !seen[z as usize] {
                seen[z as usize] = true;
                out.push(z);
            }
        }
    }
    out.sort_unstable();
    out
}

/// `prod_{phi in roots} e_phi(x_phi)` over all coefficient choices, in the
/// given root order.
pub fn unipotent_set(store: &GroupStore, roots: &[Root]) -> Vec<u32> {
    roots.iter().fold(vec![0], |acc, phi| times_root(store, &acc, phi))
}

/// `L_min` with `G = (U+ U-)^L`, positive roots in height-then-lex order and
/// negative roots in the matching order.
pub fn cover_exponent(ty: RootType, ring: &RingHandle, cap: usize) -> Result<CoverReport, BoundGenError> {
    if !ring.is_finite() {
        return Err(BoundGenError::Unsupported(format!("{} is infinite", ring.spec())));
    }
    let store = GroupStore::chevalley(ty, ring, cap)?;
    let model = ChevModel::get(ty);
    let sys = model.system();
    let up = unipotent_set(&store, sys.positive());
    let down = unipotent_set(&store, sys.negative());
    let mut x = vec![0u32];
    let mut sizes = Vec::new();
    let mut l_min = None;
    loop {
        let next = product(&store, &product(&store, &x, &up), &down);
        let grew = next.len() > x.len();
        sizes.push(next.len());
        x = next;
        if x.len() == store.len() {
            l_min = Some(sizes.len());
            break;
        }
        if !grew {
            break;
        }
    }
    Ok(CoverReport {
        phi: ty,
        ring: ring.spec(),
        order: store.len(),
        u_plus: up.len(),
        u_minus: down.len(),
        l_min,
        sizes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    pub ring: String,
    pub order: usize,
    /// Order of the subgroup generated by the long root elements.
    pub subgroup_order: usize,
    pub max_distance: u32,
    /// Number of elements at each distance.
    pub histogram: Vec<usize>,
}

/// For every element of G_2(R), the least number of root elements to
/// multiply by on the right to land in the long-root subgroup.
pub fn g2_to_sl3_distance(ring: &RingHandle, cap: usize) -> Result<DistanceReport, BoundGenError> {
    let store = GroupStore::chevalley(RootType::G2, ring, cap)?;
    let model = ChevModel::get(RootType::G2);
    let sys = model.system();
    let nonzero: Vec<u8> = store.ring().elements().filter(|&x| x != 0).collect();
    let all: Vec<u32> = sys
        .roots()
        .iter()
        .flat_map(|phi| nonzero.iter().map(move |&x| (phi, x)))
        .map(|(phi, x)| store.root_element(phi, x).expect("Chevalley store"))
        .collect();
    let long: Vec<u32> = sys
        .long_roots()
        .into_iter()
        .flat_map(|i| nonzero.iter().map(move |&x| (i, x)))
        .map(|(i, x)| store.root_element(&sys.roots()[i], x).expect("Chevalley store"))
        .collect();
    let n = store.len();
    let mut dist: Vec<Option<u32>> = vec![None; n];
    // The subgroup: closure of the identity under the long root elements.
    dist[0] = Some(0);
    let mut queue = VecDeque::from([0u32]);
    while let Some(e) = queue.pop_front() {
        for &g in &long {
            let f = store.mul(e, g);
            if dist[f as usize].is_none() {
                dist[f as usize] = Some(0);
                queue.push_back(f);
            }
        }
    }
    let subgroup_order = dist.iter().flatten().count();
    // Right multiplication is invertible, so distance to H from x equals the
    // BFS distance from H under right multiplication by inverses; the set of
    // root elements is closed under inversion.
    let mut frontier: Vec<u32> = (0..n as u32).filter(|&e| dist[e as usize].is_some()).collect();
    let mut k = 0;
    while !frontier.is_empty() {
        k += 1;
        let mut next = Vec::new();
        for &e in &frontier {
            for &g in &all {
                let f = store.mul(e, g);
                if dist[f as usize].is_none() {
                    dist[f as usize] = Some(k);
                    next.push(f);
                }
            }
        }
        frontier = next;
    }
    let max_distance = dist.iter().map(|d| d.expect("root elements generate")).max().unwrap_or(0);
    let mut histogram = vec![0; max_distance as usize + 1];
    for d in dist.iter().flatten() {
        histogram[*d as usize] += 1;
    }
    Ok(DistanceReport { ring: ring.spec(), order: n, subgroup_order, max_distance, histogram })
}
