//! Root systems A1..A4, C2 and G2 in simple-root coordinates.

mod lie;
mod signs;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lie::{LieConstants, LieError};
pub use signs::{golden_hash, parse_sign_table, structure_constants, CommTerm, SignTable, SignTableError, GOLDEN_SIGN_TABLE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported root system label {0:?}")]
    Unsupported(String),
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("root string needs beta != +-alpha")]
    Proportional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum RootType {
    A(u8),
    C2,
    G2,
}

impl RootType {
    pub fn rank(self) -> usize {
        match self {
            RootType::A(n) => n as usize,
            RootType::C2 | RootType::G2 => 2,
        }
    }
    pub fn label(self) -> String {
        match self {
            RootType::A(n) => format!("A{n}"),
            RootType::C2 => "C2".into(),
            RootType::G2 => "G2".into(),
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for RootType {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        match s.trim() {
            "A1" => Ok(RootType::A(1)),
            "A2" => Ok(RootType::A(2)),
            "A3" => Ok(RootType::A(3)),
            "A4" => Ok(RootType::A(4)),
            "C2" => Ok(RootType::C2),
            "G2" => Ok(RootType::G2),
            other => Err(RootError::Unsupported(other.into())),
        }
    }
}

/// A root as integer coordinates in the basis of simple roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coords())
    }
}

impl Root {
    /// Comma-joined coordinates, e.g. `2,1`.
    pub fn coords(&self) -> String {
        self.0.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    }
    pub fn parse_coords(s: &str) -> Option<Root> {
        s.split(',').map(|c| c.trim().parse().ok()).collect::<Option<Vec<i64>>>().map(Root)
    }
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }
    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
    pub fn add(&self, o: &Root) -> Root {
        Root(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
    pub fn scale(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: RootType,
    gram: Vec<Vec<i64>>,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl PartialEq for RootSystem {
    fn eq(&self, o: &Self) -> bool {
        self.ty == o.ty
    }
}

impl RootSystem {
    pub fn build(ty: RootType) -> Result<RootSystem, RootError> {
        let n = ty.rank();
        let gram: Vec<Vec<i64>> = match ty {
            RootType::A(k) if (1..=4).contains(&k) => (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match i.abs_diff(j) {
                            0 => 2,
                            1 => -1,
                            _ => 0,
                        })
                        .collect()
                })
                .collect(),
            RootType::A(_) => return Err(RootError::Unsupported(ty.label())),
            // alpha short, beta long
            RootType::C2 => vec![vec![2, -2], vec![-2, 4]],
            RootType::G2 => vec![vec![2, -3], vec![-3, 6]],
        };
        let simple: Vec<Root> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                Root(v)
            })
            .collect();
        let mut sys = RootSystem { ty, gram, roots: simple.clone(), index: HashMap::new() };
        // Closure of the simple roots under simple reflections.
        let mut seen: Vec<Root> = simple.clone();
        let mut i = 0;
        while i < seen.len() {
            let r = seen[i].clone();
            for s in &simple {
                let w = sys.reflect_raw(&r, s);
                if !seen.contains(&w) {
                    seen.push(w);
                }
            }
            i += 1;
        }
        let mut pos: Vec<Root> = seen.into_iter().filter(Root::is_positive).collect();
        pos.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        let neg: Vec<Root> = pos.iter().map(Root::neg).collect();
        sys.roots = pos.into_iter().chain(neg).collect();
        sys.index = sys.roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(sys)
    }

    pub fn from_label(label: &str) -> Result<RootSystem, RootError> {
        Self::build(label.parse()?)
    }

    pub fn ty(&self) -> RootType {
        self.ty
    }
    pub fn rank(&self) -> usize {
        self.ty.rank()
    }
    /// All roots: positives by height (ties: `alpha` before `beta`), then
    /// their negatives in the same order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }
    pub fn len(&self) -> usize {
        self.roots.len()
    }
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
    pub fn positive(&self) -> &[Root] {
        &self.roots[..self.roots.len() / 2]
    }
    pub fn negative(&self) -> &[Root] {
        &self.roots[self.roots.len() / 2..]
    }
    pub fn simple(&self, i: usize) -> Root {
        self.roots[i].clone()
    }
    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }
    pub fn contains(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }
    /// Root from coordinates, e.g. `[2, 1]` for `2 alpha + beta`.
    pub fn root(&self, c: &[i64]) -> Result<Root, RootError> {
        let r = Root(c.to_vec());
        if self.contains(&r) {
            Ok(r)
        } else {
            Err(RootError::NotARoot(c.to_vec()))
        }
    }
    fn check(&self, r: &Root) -> Result<(), RootError> {
        if self.contains(r) {
            Ok(())
        } else {
            Err(RootError::NotARoot(r.0.clone()))
        }
    }

    /// The invariant form `(x, y)` in simple-root coordinates.
    pub fn form(&self, x: &Root, y: &Root) -> i64 {
        let mut s = 0;
        for (i, a) in x.0.iter().enumerate() {
            for (j, b) in y.0.iter().enumerate() {
                s += a * b * self.gram[i][j];
            }
        }
        s
    }
    pub fn norm(&self, r: &Root) -> i64 {
        self.form(r, r)
    }
    pub fn is_long(&self, r: &Root) -> bool {
        let max = (0..self.rank()).map(|i| self.gram[i][i]).max().unwrap();
        self.norm(r) == max
    }
    /// `<x, y^vee> = 2 (x, y) / (y, y)`.
    pub fn pairing(&self, x: &Root, y: &Root) -> i64 {
        2 * self.form(x, y) / self.norm(y)
    }
    fn reflect_raw(&self, x: &Root, a: &Root) -> Root {
        x.add(&a.scale(-self.pairing(x, a)))
    }
    /// `w_alpha(phi) = phi - <phi, alpha^vee> alpha`.
    pub fn weyl_reflect(&self, phi: &Root, alpha: &Root) -> Result<Root, RootError> {
        self.check(phi)?;
        self.check(alpha)?;
        Ok(self.reflect_raw(phi, alpha))
    }
    /// Largest `(p, q)` with `beta - p alpha, ..., beta + q alpha` all roots.
    pub fn root_string(&self, alpha: &Root, beta: &Root) -> Result<(u32, u32), RootError> {
        self.check(alpha)?;
        self.check(beta)?;
        if alpha == beta || *alpha == beta.neg() {
            return Err(RootError::Proportional);
        }
        let mut p = 0;
        while self.contains(&beta.add(&alpha.scale(-(p as i64 + 1)))) {
            p += 1;
        }
        let mut q = 0;
        while self.contains(&beta.add(&alpha.scale(q as i64 + 1))) {
            q += 1;
        }
        Ok((p, q))
    }
    /// Coordinates of the coroot `phi^vee` in the basis of simple coroots.
    pub fn coroot(&self, phi: &Root) -> Vec<i64> {
        let n = self.norm(phi);
        (0..self.rank()).map(|i| phi.0[i] * self.gram[i][i] / n).collect()
    }
    /// The long roots, as indices into [`RootSystem::roots`].
    pub fn long_roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_long(&self.roots[i])).collect()
    }
}
