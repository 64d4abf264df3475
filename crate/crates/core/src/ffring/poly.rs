//! Dense univariate polynomials over a table field, little-endian.

use std::fmt;

use super::field::{Fe, FieldDesc};

/// Coefficients `c[0] + c[1] T + ...`, never with a trailing zero.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(Vec<Fe>);

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.0)
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }
    pub fn one() -> Poly {
        Poly(vec![1])
    }
    pub fn t() -> Poly {
        Poly(vec![0, 1])
    }
    pub fn constant(c: Fe) -> Poly {
        Poly::from_coeffs(vec![c])
    }
    pub fn monomial(c: Fe, d: usize) -> Poly {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Poly::from_coeffs(v)
    }
    pub fn from_coeffs(mut v: Vec<Fe>) -> Poly {
        while v.last() == Some(&0) {
            v.pop();
        }
        Poly(v)
    }
    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }
    pub fn coeff(&self, i: usize) -> Fe {
        self.0.get(i).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }
    /// `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
    pub fn lc(&self) -> Fe {
        self.0.last().copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    /// Polynomial whose coefficient vector is the base-q expansion of `idx`.
    pub fn from_index(mut idx: u64, q: u32) -> Poly {
        let mut v = Vec::new();
        while idx > 0 {
            v.push((idx % q as u64) as Fe);
            idx /= q as u64;
        }
        Poly(v)
    }
    pub fn to_index(&self, q: u32) -> u64 {
        self.0.iter().rev().fold(0u64, |acc, &c| acc * q as u64 + c as u64)
    }

    pub fn add(&self, b: &Poly, f: &FieldDesc) -> Poly {
        let n = self.0.len().max(b.0.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), b.coeff(i))).collect())
    }
    pub fn sub(&self, b: &Poly, f: &FieldDesc) -> Poly {
        let n = self.0.len().max(b.0.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), b.coeff(i))).collect())
    }
    pub fn neg(&self, f: &FieldDesc) -> Poly {
        Poly(self.0.iter().map(|&c| f.neg(c)).collect())
    }
    pub fn scale(&self, c: Fe, f: &FieldDesc) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&x| f.mul(x, c)).collect())
    }
    pub fn mul(&self, b: &Poly, f: &FieldDesc) -> Poly {
        if self.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0; self.0.len() + b.0.len() - 1];
        for (i, &x) in self.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(x, y));
            }
        }
        Poly::from_coeffs(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, b: &Poly, f: &FieldDesc) -> (Poly, Poly) {
        let db = b.deg().expect("division by zero polynomial");
        let inv = f.inv(b.lc()).expect("nonzero leading coefficient");
        let mut r = self.0.clone();
        if r.len() <= db {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![0; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - db] = c;
            for (j, &y) in b.0.iter().enumerate() {
                r[i - db + j] = f.sub(r[i - db + j], f.mul(c, y));
            }
        }
        r.truncate(db);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }
    pub fn rem(&self, b: &Poly, f: &FieldDesc) -> Poly {
        self.divrem(b, f).1
    }
    pub fn divides(&self, b: &Poly, f: &FieldDesc) -> bool {
        if self.is_zero() {
            return b.is_zero();
        }
        b.rem(self, f).is_zero()
    }

    /// Scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self, f: &FieldDesc) -> Poly {
        match f.inv(self.lc()) {
            Some(i) => self.scale(i, f),
            None => Poly::zero(),
        }
    }

    pub fn gcd(&self, b: &Poly, f: &FieldDesc) -> Poly {
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// `(d, u, v)` with `d = u a + v b` monic; `None` if both are zero.
    pub fn ext_gcd(&self, b: &Poly, f: &FieldDesc) -> Option<(Poly, Poly, Poly)> {
        if self.is_zero() && b.is_zero() {
            return None;
        }
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, f);
            let s = s0.sub(&q.mul(&s1, f), f);
            let t = t0.sub(&q.mul(&t1, f), f);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = f.inv(r0.lc()).expect("nonzero gcd");
        Some((r0.scale(inv, f), s0.scale(inv, f), t0.scale(inv, f)))
    }

    pub fn pow(&self, mut e: u64, f: &FieldDesc) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly, f: &FieldDesc) -> Poly {
        let mut base = self.rem(m, f);
        let mut acc = Poly::one().rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f).rem(m, f);
            }
        }
        acc
    }

    /// Human-readable form such as `T^2+T+1`; F_{p^m} coefficients print as
    /// their index in brackets.
    pub fn display(&self, f: &FieldDesc) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if f.m() == 1 {
                c.to_string()
            } else {
                format!("[{c}]")
            };
            parts.push(match (i, c) {
                (0, _) => coef,
                (1, 1) => "T".into(),
                (1, _) => format!("{coef}*T"),
                (_, 1) => format!("T^{i}"),
                _ => format!("{coef}*T^{i}"),
            });
        }
        parts.join("+")
    }
}

/// All polynomials of degree < `d`, in index order.
pub fn all_below_degree(d: usize, q: u32) -> impl Iterator<Item = Poly> {
    let n = (q as u64).pow(d as u32);
    (0..n).map(move |i| Poly::from_index(i, q))
}

/// Monic polynomials of exact degree `d`, in index order.
pub fn monic_of_degree(d: usize, q: u32) -> impl Iterator<Item = Poly> {
    let n = (q as u64).pow(d as u32);
    (0..n).map(move |i| {
        let mut p = Poly::from_index(i, q).0;
        p.resize(d, 0);
        p.push(1);
        Poly(p)
    })
}
