//! Square matrices over any [`Ring`].

use std::fmt;

use crate::ffring::Ring;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    n: usize,
    data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.n {
            writeln!(f, "  {:?}", &self.data[r * self.n..(r + 1) * self.n])?;
        }
        write!(f, "]")
    }
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(n: usize, data: Vec<E>) -> Matrix<E> {
        assert_eq!(data.len(), n * n, "matrix data length");
        Matrix { n, data }
    }
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Matrix<E> {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Matrix { n, data }
    }
    pub fn dim(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.n + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.n + c] = v;
    }
    /// Row-major entries.
    pub fn entries(&self) -> &[E] {
        &self.data
    }
    pub fn into_entries(self) -> Vec<E> {
        self.data
    }
    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }
    pub fn transpose(&self) -> Matrix<E> {
        Matrix::from_fn(self.n, |r, c| self.get(c, r).clone())
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn identity<R: Ring<E = E>>(ring: &R, n: usize) -> Matrix<E> {
        let (z, o) = (ring.zero(), ring.one());
        Matrix::from_fn(n, |r, c| if r == c { o.clone() } else { z.clone() })
    }
    pub fn zero<R: Ring<E = E>>(ring: &R, n: usize) -> Matrix<E> {
        Matrix { n, data: vec![ring.zero(); n * n] }
    }
    pub fn is_identity<R: Ring<E = E>>(&self, ring: &R) -> bool {
        let (z, o) = (ring.zero(), ring.one());
        (0..self.n).all(|r| (0..self.n).all(|c| *self.get(r, c) == if r == c { o.clone() } else { z.clone() }))
    }
    pub fn mul<R: Ring<E = E>>(&self, b: &Matrix<E>, ring: &R) -> Matrix<E> {
        let n = self.n;
        assert_eq!(n, b.n, "dimension mismatch");
        let mut out = Vec::with_capacity(n * n);
        for r in 0..n {
            let row = &self.data[r * n..(r + 1) * n];
            for c in 0..n {
                let mut acc = ring.zero();
                for (k, x) in row.iter().enumerate() {
                    if ring.is_zero(x) {
                        continue;
                    }
                    let y = &b.data[k * n + c];
                    if ring.is_zero(y) {
                        continue;
                    }
                    acc = ring.add(&acc, &ring.mul(x, y));
                }
                out.push(acc);
            }
        }
        Matrix { n, data: out }
    }
    pub fn add<R: Ring<E = E>>(&self, b: &Matrix<E>, ring: &R) -> Matrix<E> {
        Matrix { n: self.n, data: self.data.iter().zip(&b.data).map(|(x, y)| ring.add(x, y)).collect() }
    }
    pub fn sub<R: Ring<E = E>>(&self, b: &Matrix<E>, ring: &R) -> Matrix<E> {
        Matrix { n: self.n, data: self.data.iter().zip(&b.data).map(|(x, y)| ring.sub(x, y)).collect() }
    }
    pub fn scale<R: Ring<E = E>>(&self, s: &E, ring: &R) -> Matrix<E> {
        Matrix { n: self.n, data: self.data.iter().map(|x| ring.mul(s, x)).collect() }
    }

    /// Division-free determinant (Berkowitz).
    pub fn det<R: Ring<E = E>>(&self, ring: &R) -> E {
        let n = self.n;
        if n == 0 {
            return ring.one();
        }
        // Characteristic polynomial coefficients of the leading r x r block,
        // extended one row/column at a time.
        let a = |r: usize, c: usize| self.get(r, c).clone();
        let mut poly: Vec<E> = vec![ring.one(), ring.neg(&a(0, 0))];
        for r in 1..n {
            // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C
            let row: Vec<E> = (0..r).map(|c| a(r, c)).collect();
            let mut col: Vec<E> = (0..r).map(|k| a(k, r)).collect();
            let mut t = vec![ring.one(), ring.neg(&a(r, r))];
            for _ in 0..r {
                let dot = row.iter().zip(&col).fold(ring.zero(), |s, (x, y)| ring.add(&s, &ring.mul(x, y)));
                t.push(ring.neg(&dot));
                col = (0..r)
                    .map(|i| (0..r).fold(ring.zero(), |s, k| ring.add(&s, &ring.mul(&a(i, k), &col[k]))))
                    .collect();
            }
            // new poly = T * poly (lower-triangular Toeplitz product)
            let mut next = Vec::with_capacity(r + 2);
            for i in 0..r + 2 {
                let mut s = ring.zero();
                for j in 0..=i.min(poly.len() - 1) {
                    if i - j < t.len() {
                        s = ring.add(&s, &ring.mul(&t[i - j], &poly[j]));
                    }
                }
                next.push(s);
            }
            poly = next;
        }
        let c = poly[n].clone();
        if n.is_multiple_of(2) {
            c
        } else {
            ring.neg(&c)
        }
    }
}
