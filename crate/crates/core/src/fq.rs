//! Dense matrices over a prime field `F_q`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    q: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

pub fn inv_mod(a: u32, q: u32) -> u32 {
    assert!(a % q != 0, "zero has no inverse");
    pow_mod(a, q - 2, q)
}

pub fn pow_mod(a: u32, mut e: u32, q: u32) -> u32 {
    let (mut base, mut acc) = (a as u64 % q as u64, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        e >>= 1;
    }
    acc as u32
}

/// A generator of the multiplicative group of `F_q`.
pub fn primitive_root(q: u32) -> u32 {
    if q == 2 {
        return 1;
    }
    let n = q - 1;
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            factors.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..q)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, n / f, q) != 1))
        .expect("prime fields have primitive roots")
}

impl FqMatrix {
    pub fn zeros(q: u32, rows: usize, cols: usize) -> Self {
        Self {
            q,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(q: u32, n: usize) -> Self {
        let mut m = Self::zeros(q, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Entries are reduced mod `q`; negative values are allowed.
    pub fn from_rows(q: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(q, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x.rem_euclid(q as i64) as u32);
            }
        }
        m
    }

    pub fn from_vec(q: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self {
            q,
            rows,
            cols,
            data: data.into_iter().map(|x| x % q).collect(),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.q;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.q, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.q, rhs.q);
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let q = self.q as u64;
        let mut out = Self::zeros(self.q, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * rhs.get(k, j) as u64) % q) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, x.len());
        let q = self.q as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % q) as u32
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let q = self.q;
        Self {
            q,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| (a + b) % q)
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let q = self.q as u64;
        Self {
            q: self.q,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|&a| (a as u64 * (c as u64 % q) % q) as u32)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(self.q - 1))
    }

    /// Stack matrices with equal column counts vertically.
    pub fn vstack(parts: &[&Self]) -> Self {
        let q = parts[0].q;
        let cols = parts[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Self {
            q,
            rows,
            cols,
            data,
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let q = self.q as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), self.q) as u64;
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = (m.data[idx] as u64 * inv % q) as u32;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f * m.get(r, j) as u64 % q;
                    let idx = i * m.cols + j;
                    m.data[idx] = ((m.data[idx] as u64 + q - sub) % q) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rows of the result form a basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.q, free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (row, &p) in pivots.iter().enumerate() {
                let x = r.get(row, f);
                if x != 0 {
                    out.set(k, p, self.q - x);
                }
            }
        }
        out
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.q, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.q, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(self.q, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Display for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// A subspace of `F_q^n` stored as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FqMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_rref(basis: FqMatrix, pivots: Vec<usize>) -> Self {
        Self { basis, pivots }
    }

    /// Span of the given rows.
    pub fn span(rows: &FqMatrix) -> Self {
        let (r, pivots) = rows.rref();
        let mut basis = FqMatrix::zeros(rows.q(), pivots.len(), rows.cols());
        for i in 0..pivots.len() {
            for j in 0..rows.cols() {
                basis.set(i, j, r.get(i, j));
            }
        }
        Self { basis, pivots }
    }

    pub fn zero(q: u32, n: usize) -> Self {
        Self {
            basis: FqMatrix::zeros(q, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(q: u32, n: usize) -> Self {
        Self {
            basis: FqMatrix::identity(q, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot coordinates; the standard vectors there span a complement.
    pub fn complement_coords(&self) -> Vec<usize> {
        (0..self.ambient())
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// `x` minus its component along the pivot coordinates.
    pub fn reduce(&self, x: &[u32]) -> Vec<u32> {
        let q = self.basis.q() as u64;
        let mut y = x.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let f = y[p] as u64;
            if f == 0 {
                continue;
            }
            for (j, yj) in y.iter_mut().enumerate() {
                let sub = f * self.basis.get(r, j) as u64 % q;
                *yj = ((*yj as u64 + q - sub) % q) as u32;
            }
        }
        y
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        self.reduce(x).iter().all(|&c| c == 0)
    }

    /// Coordinates of a member in the echelon basis.
    pub fn coords(&self, x: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&p| x[p]).collect()
    }

    /// Coordinates of `x` modulo the subspace, in the complement basis.
    pub fn quotient_coords(&self, x: &[u32]) -> Vec<u32> {
        let y = self.reduce(x);
        self.complement_coords().iter().map(|&c| y[c]).collect()
    }
}

/// All `k`-dimensional subspaces of `F_q^n`, in a fixed order.
pub fn subspaces(q: u32, n: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(q, n, k, 0, &mut pivots, &mut out);
    out
}

fn choose_pivots(
    q: u32,
    n: usize,
    k: usize,
    start: usize,
    pivots: &mut Vec<usize>,
    out: &mut Vec<Subspace>,
) {
    if pivots.len() == k {
        // free positions: (row r, column c) with c > pivot r and c not a pivot
        let mut free = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for c in p + 1..n {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let total = (q as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut m = FqMatrix::zeros(q, k, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, 1);
            }
            let mut c = code;
            for &(r, col) in &free {
                m.set(r, col, (c % q as u64) as u32);
                c /= q as u64;
            }
            out.push(Subspace::from_rref(m, pivots.clone()));
        }
        return;
    }
    for p in start..n {
        pivots.push(p);
        choose_pivots(q, n, k, p + 1, pivots, out);
        pivots.pop();
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n` (0 when out of range).
pub fn grassmannian_count(k: i64, n: i64, q: u64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k as u32 {
        num *= q.pow(n as u32 - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: usize, q: u64) -> u128 {
    let q = q as u128;
    (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).product()
}

pub fn check_prime_field(q: u64) -> Result<u32> {
    if crate::scalar::is_prime(q) && q < 1 << 16 {
        Ok(q as u32)
    } else {
        Err(Error::NotPrime(q))
    }
}
