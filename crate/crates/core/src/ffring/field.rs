//! The finite field of constants F_q, q = p^m <= 256, with table arithmetic.
//!
//! Elements are encoded as integers `sum c_i p^i` where `c_i` are the
//! coefficients (little-endian) of the representing polynomial over F_p
//! reduced modulo the field modulus.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::RingError;

/// Largest field handled by the table arithmetic.
pub const MAX_FIELD_ORDER: u32 = 256;

const REGISTRY: &str = include_str!("../../data/field_registry.txt");

/// A field element, encoded as its index in the canonical enumeration.
pub type Fe = u8;

pub struct FieldDesc {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDesc")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for FieldDesc {}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn registry() -> &'static HashMap<(u32, u32), Vec<u32>> {
    static REG: OnceLock<HashMap<(u32, u32), Vec<u32>>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut map = HashMap::new();
        for line in REGISTRY.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let p: u32 = it.next().and_then(|s| s.parse().ok()).expect("registry: p");
            let m: u32 = it.next().and_then(|s| s.parse().ok()).expect("registry: m");
            let coeffs: Vec<u32> = it
                .next()
                .expect("registry: modulus")
                .split(',')
                .map(|c| c.parse().expect("registry: coefficient"))
                .collect();
            map.insert((p, m), coeffs);
        }
        map
    })
}

fn field_cache() -> &'static std::sync::Mutex<HashMap<(u32, Vec<u32>), Arc<FieldDesc>>> {
    static CACHE: OnceLock<std::sync::Mutex<HashMap<(u32, Vec<u32>), Arc<FieldDesc>>>> =
        OnceLock::new();
    CACHE.get_or_init(Default::default)
}

// Plain F_p polynomial helpers used only while building the tables.
fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    fp_trim(&mut a);
    let lead_inv = pow_mod(*b.last().unwrap(), p - 2, p);
    while a.len() >= b.len() {
        let c = a[a.len() - 1] * lead_inv % p;
        let shift = a.len() - b.len();
        for (i, &y) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * y % p) % p;
        }
        fp_trim(&mut a);
    }
    a
}

fn pow_mod(mut b: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u32;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Brute-force irreducibility over F_p: no monic divisor of degree 1..=deg/2.
pub(crate) fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut g: Vec<u32> = (0..d).map(|i| (idx / p.pow(i as u32)) % p).collect();
            g.push(1);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldDesc {
    /// The field F_{p^m} with the registry modulus.
    pub fn get(p: u32, m: u32) -> Result<Arc<FieldDesc>, RingError> {
        if !is_prime(p) {
            return Err(RingError::Parse(format!("{p} is not prime")));
        }
        if m == 0 || (p as u64).pow(m) > MAX_FIELD_ORDER as u64 {
            return Err(RingError::FieldTooLarge(p, m));
        }
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            registry()
                .get(&(p, m))
                .cloned()
                .ok_or(RingError::FieldTooLarge(p, m))?
        };
        Self::with_modulus(p, &modulus)
    }

    /// The field F_p[X]/(modulus); the modulus must be monic and irreducible.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Arc<FieldDesc>, RingError> {
        if !is_prime(p) {
            return Err(RingError::Parse(format!("{p} is not prime")));
        }
        let mut modulus: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        fp_trim(&mut modulus);
        if modulus.len() < 2 {
            return Err(RingError::ReducibleModulus);
        }
        let m = (modulus.len() - 1) as u32;
        if (p as u64).pow(m) > MAX_FIELD_ORDER as u64 {
            return Err(RingError::FieldTooLarge(p, m));
        }
        let lead_inv = pow_mod(*modulus.last().unwrap(), p - 2, p);
        for c in modulus.iter_mut() {
            *c = *c * lead_inv % p;
        }
        if !fp_is_irreducible(&modulus, p) {
            return Err(RingError::ReducibleModulus);
        }
        let key = (p, modulus.clone());
        let mut cache = field_cache().lock().expect("field cache poisoned");
        if let Some(f) = cache.get(&key) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(p, m, modulus));
        cache.insert(key, field.clone());
        Ok(field)
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> FieldDesc {
        let q = p.pow(m);
        let digits = |x: u32| -> Vec<u32> { (0..m).map(|i| (x / p.pow(i)) % p).collect() };
        let index = |v: &[u32]| -> u32 {
            v.iter().enumerate().map(|(i, &c)| c * p.pow(i as u32)).sum()
        };
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..q {
            let da = digits(a);
            let na: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = index(&na) as Fe;
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = index(&s) as Fe;
                let mut prod = vec![0u32; 2 * m as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = fp_rem(&prod, &modulus, p);
                r.resize(m as usize, 0);
                let c = index(&r) as Fe;
                mul[a as usize * qs + b as usize] = c;
                if c == 1 {
                    inv[a as usize] = b as Fe;
                }
            }
        }
        FieldDesc { p, m, q, modulus, add, mul, neg, inv }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    /// Little-endian modulus over F_p (monic, degree m).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }
    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_i64(&self, n: i64) -> Fe {
        n.rem_euclid(self.p as i64) as Fe
    }

    /// Base-p digits of an element (its coordinates over F_p).
    pub fn digits(&self, a: Fe) -> Vec<u32> {
        (0..self.m).map(|i| (a as u32 / self.p.pow(i)) % self.p).collect()
    }

    pub fn from_digits(&self, d: &[u32]) -> Fe {
        d.iter()
            .enumerate()
            .map(|(i, &c)| (c % self.p) * self.p.pow(i as u32))
            .sum::<u32>() as Fe
    }

    /// `GF(p)` or `GF(p^m)`.
    pub fn spec(&self) -> String {
        if self.m == 1 {
            format!("GF({})", self.p)
        } else {
            format!("GF({}^{})", self.p, self.m)
        }
    }
}
