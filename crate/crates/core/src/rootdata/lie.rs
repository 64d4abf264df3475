//! Chevalley basis structure constants.
//!
//! Magnitudes are forced: `|N(phi, psi)| = p + 1` where `psi - p phi` is the
//! start of the phi-string through psi. Signs are fixed by
//! `N(psi, phi) = -N(phi, psi)`, `N(-phi, -psi) = -N(phi, psi)`, positivity on
//! extraspecial pairs, and the Jacobi identity. The remaining free signs are
//! few enough for rank two that we simply try all of them.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use super::{Root, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("{0} free signs is too many for exhaustive search")]
    TooManySigns(usize),
    #[error("no sign assignment satisfies the Jacobi identity")]
    NoSolution,
    #[error("{0} sign assignments satisfy the Jacobi identity")]
    Ambiguous(usize),
}

const MAX_FREE_SIGNS: usize = 16;

/// Bracket table of the Chevalley basis `{e_phi} U {h_1..h_r}`. Basis index
/// `i < |Phi|` is `e` of root `i` in canonical order; the rest are the
/// simple coroots.
#[derive(Clone, Debug)]
pub struct LieConstants {
    sys: RootSystem,
    n: HashMap<(usize, usize), i64>,
}

type Vector = BTreeMap<usize, i64>;

impl LieConstants {
    pub fn compute(sys: &RootSystem) -> Result<LieConstants, LieError> {
        let roots = sys.roots();
        // Ordered pairs with a root sum, grouped into classes of
        // (phi, psi) ~ -(psi, phi) ~ -(-phi, -psi) ~ (-psi, -phi).
        let mut class_of: HashMap<(usize, usize), (usize, i64)> = HashMap::new();
        let mut classes: Vec<(usize, usize, i64)> = Vec::new(); // rep pair and magnitude
        for i in 0..roots.len() {
            for j in 0..roots.len() {
                let s = roots[i].add(&roots[j]);
                if s.is_zero() || !sys.contains(&s) || class_of.contains_key(&(i, j)) {
                    continue;
                }
                let (p, _) = sys.root_string(&roots[i], &roots[j]).expect("independent roots");
                let c = classes.len();
                classes.push((i, j, p as i64 + 1));
                let ni = sys.index_of(&roots[i].neg()).unwrap();
                let nj = sys.index_of(&roots[j].neg()).unwrap();
                for (pair, sign) in [((i, j), 1), ((j, i), -1), ((ni, nj), -1), ((nj, ni), 1)] {
                    class_of.entry(pair).or_insert((c, sign));
                }
            }
        }
        // Extraspecial pairs fix their class sign to +.
        let mut fixed: HashMap<usize, i64> = HashMap::new();
        for xi in sys.positive() {
            if xi.height() == 1 {
                continue;
            }
            let (i, j) = sys
                .positive()
                .iter()
                .find_map(|phi| {
                    let rest = xi.add(&phi.neg());
                    (rest.is_positive() && sys.contains(&rest))
                        .then(|| (sys.index_of(phi).unwrap(), sys.index_of(&rest).unwrap()))
                })
                .expect("non-simple positive root is a sum");
            let (c, s) = class_of[&(i, j)];
            fixed.insert(c, s);
        }
        let free: Vec<usize> = (0..classes.len()).filter(|c| !fixed.contains_key(c)).collect();
        if free.len() > MAX_FREE_SIGNS {
            return Err(LieError::TooManySigns(free.len()));
        }
        let mut solutions = Vec::new();
        for mask in 0u32..(1 << free.len()) {
            let mut class_sign = vec![1i64; classes.len()];
            for (c, s) in &fixed {
                class_sign[*c] = *s;
            }
            for (bit, c) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    class_sign[*c] = -1;
                }
            }
            let n: HashMap<(usize, usize), i64> = class_of
                .iter()
                .map(|(&pair, &(c, s))| (pair, s * class_sign[c] * classes[c].2))
                .collect();
            let cand = LieConstants { sys: sys.clone(), n };
            if cand.jacobi_holds() {
                solutions.push(cand);
            }
        }
        match solutions.len() {
            0 => Err(LieError::NoSolution),
            1 => Ok(solutions.pop().unwrap()),
            k => Err(LieError::Ambiguous(k)),
        }
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }
    pub fn dim(&self) -> usize {
        self.sys.len() + self.sys.rank()
    }
    /// `N(phi, psi)` by root index; zero when `phi + psi` is not a root.
    pub fn n(&self, i: usize, j: usize) -> i64 {
        self.n.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Bracket of two basis elements.
    pub fn bracket(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let nr = self.sys.len();
        let roots = self.sys.roots();
        match (x < nr, y < nr) {
            (true, true) => {
                let s = roots[x].add(&roots[y]);
                if s.is_zero() {
                    let h = self.sys.coroot(&roots[x]);
                    h.into_iter()
                        .enumerate()
                        .filter(|(_, c)| *c != 0)
                        .map(|(i, c)| (nr + i, c))
                        .collect()
                } else {
                    match self.sys.index_of(&s) {
                        Some(k) => vec![(k, self.n(x, y))],
                        None => vec![],
                    }
                }
            }
            (false, true) => {
                let a = self.sys.simple(x - nr);
                let c = self.sys.pairing(&roots[y], &a);
                if c == 0 {
                    vec![]
                } else {
                    vec![(y, c)]
                }
            }
            (true, false) => self.bracket(y, x).into_iter().map(|(k, c)| (k, -c)).collect(),
            (false, false) => vec![],
        }
    }

    fn bracket_vec(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, &a) in x {
            for (&j, &b) in y {
                for (k, c) in self.bracket(i, j) {
                    *out.entry(k).or_insert(0) += a * b * c;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim();
        let unit = |i: usize| Vector::from([(i, 1)]);
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let mut s = self.bracket_vec(&x, &self.bracket_vec(&y, &z));
                    for (key, v) in self.bracket_vec(&y, &self.bracket_vec(&z, &x)) {
                        *s.entry(key).or_insert(0) += v;
                    }
                    for (key, v) in self.bracket_vec(&z, &self.bracket_vec(&x, &y)) {
                        *s.entry(key).or_insert(0) += v;
                    }
                    if s.values().any(|&v| v != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Matrix of `ad(b)` for basis element `b`: entry `[r][c]` is the
    /// coefficient of basis `r` in `[b, basis c]`.
    pub fn ad(&self, b: usize) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut m = vec![vec![0; d]; d];
        for c in 0..d {
            for (r, v) in self.bracket(b, c) {
                m[r][c] = v;
            }
        }
        m
    }

    /// Basis index of `e_phi`.
    pub fn e(&self, phi: &Root) -> Option<usize> {
        self.sys.index_of(phi)
    }
}
