//! Exact arithmetic and linear algebra over a prime field `F_q`.
//!
//! Residues are plain `u64` values in `[0, q)`. Products go through a
//! 128-bit intermediate, so any 64-bit prime modulus works.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A residue modulo the field prime.
pub type Residue = u64;

/// A vector of reduced residues.
pub type FieldVec = Vec<Residue>;

/// The Mersenne prime 2^61 - 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// A prime modulus, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldPrime(u64);

impl TryFrom<u64> for FieldPrime {
    type Error = Error;

    fn try_from(q: u64) -> Result<Self> {
        FieldPrime::new(q)
    }
}

impl From<FieldPrime> for u64 {
    fn from(q: FieldPrime) -> u64 {
        q.0
    }
}

impl Default for FieldPrime {
    fn default() -> Self {
        FieldPrime(MERSENNE_61)
    }
}

impl std::fmt::Display for FieldPrime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl FieldPrime {
    pub fn new(q: u64) -> Result<Self> {
        if is_prime(q) {
            Ok(FieldPrime(q))
        } else {
            Err(Error::NotPrime(q))
        }
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.0
    }

    /// Reduces an arbitrary `u64` into `[0, q)`.
    #[inline]
    pub fn reduce(self, a: u64) -> Residue {
        a % self.0
    }

    #[inline]
    pub fn is_reduced(self, a: u64) -> bool {
        a < self.0
    }

    #[inline]
    pub fn add(self, a: Residue, b: Residue) -> Residue {
        let (s, overflow) = a.overflowing_add(b);
        if overflow || s >= self.0 {
            s.wrapping_sub(self.0)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: Residue, b: Residue) -> Residue {
        if a >= b {
            a - b
        } else {
            self.0 - (b - a)
        }
    }

    #[inline]
    pub fn neg(self, a: Residue) -> Residue {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: Residue, b: Residue) -> Residue {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, mut base: Residue, mut exp: u64) -> Residue {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `(-1)^i` as a residue.
    #[inline]
    pub fn sign(self, i: u64) -> Residue {
        if i.is_multiple_of(2) {
            1
        } else {
            self.0 - 1
        }
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(self, a: Residue) -> Result<Residue> {
        let a = a % self.0;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.0 - 2))
    }
}

/// Multiplicative inverse of `a` modulo `q`.
pub fn inv(a: Residue, q: FieldPrime) -> Result<Residue> {
    q.inv(a)
}

/// Deterministic Miller-Rabin for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense row-major matrix of residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Residue>,
}

impl FieldMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Residue>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(FieldMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FieldMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Vandermonde matrix with rows `(1, x, x^2, ..., x^(cols-1))` for each node.
    pub fn vandermonde(nodes: &[Residue], cols: usize, q: FieldPrime) -> Self {
        let mut data = Vec::with_capacity(nodes.len() * cols);
        for &x in nodes {
            let x = q.reduce(x);
            let mut p = q.reduce(1);
            for _ in 0..cols {
                data.push(p);
                p = q.mul(p, x);
            }
        }
        FieldMatrix {
            rows: nodes.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn data(&self) -> &[Residue] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Residue {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Residue) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Residue] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn is_reduced(&self, q: FieldPrime) -> bool {
        self.data.iter().all(|&a| q.is_reduced(a))
    }

    pub fn mul_vec(&self, x: &[Residue], q: FieldPrime) -> Result<FieldVec> {
        if x.len() != self.cols {
            return Err(Error::DimMismatch {
                expected: self.cols,
                actual: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| q.add(acc, q.mul(a, b)))
            })
            .collect())
    }

    pub fn rank(&self, q: FieldPrime) -> usize {
        let mut m = self.clone();
        m.row_reduce(q).len()
    }

    /// Reduces `self` in place to reduced row echelon form and returns the
    /// pivot columns in order. Pivots are the first nonzero entry at or below
    /// the current row; column order is untouched.
    fn row_reduce(&mut self, q: FieldPrime) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let scale = q.inv(self.get(row, col)).expect("pivot is nonzero");
            for c in col..self.cols {
                let v = self.get(row, c);
                self.set(row, c, q.mul(v, scale));
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let v = q.sub(self.get(r, c), q.mul(factor, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

/// Outcome of [`solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// Full column rank: exactly one solution.
    Unique(FieldVec),
    /// The solution set is `particular + span(kernel)` with `free_dims`
    /// kernel vectors.
    Underdetermined {
        rank: usize,
        free_dims: usize,
        particular: FieldVec,
        kernel: Vec<FieldVec>,
    },
}

impl Solution {
    pub fn rank_report(&self) -> (usize, usize) {
        match self {
            Solution::Unique(x) => (x.len(), 0),
            Solution::Underdetermined {
                rank, free_dims, ..
            } => (*rank, *free_dims),
        }
    }

    pub fn unique(self) -> Option<FieldVec> {
        match self {
            Solution::Unique(x) => Some(x),
            Solution::Underdetermined { .. } => None,
        }
    }
}

/// Solves `m * x = b` over `F_q` by Gauss-Jordan elimination.
pub fn solve_linear(m: &FieldMatrix, b: &[Residue], q: FieldPrime) -> Result<Solution> {
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::DimMismatch {
            expected: 1,
            actual: 0,
        });
    }
    if b.len() != m.rows {
        return Err(Error::DimMismatch {
            expected: m.rows,
            actual: b.len(),
        });
    }
    let n = m.cols;
    let mut aug = FieldMatrix::zeros(m.rows, n + 1);
    for r in 0..m.rows {
        aug.data[r * (n + 1)..r * (n + 1) + n].copy_from_slice(m.row(r));
        aug.data[r * (n + 1) + n] = q.reduce(b[r]);
    }
    let pivots = aug.row_reduce(q);
    if pivots.last() == Some(&n) {
        return Err(Error::Inconsistent);
    }
    let rank = pivots.len();
    let mut particular = vec![0; n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug.get(r, n);
    }
    if rank == n {
        return Ok(Solution::Unique(particular));
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = q.neg(aug.get(r, f));
            }
            v
        })
        .collect();
    Ok(Solution::Underdetermined {
        rank,
        free_dims: free.len(),
        particular,
        kernel,
    })
}

/// Value at zero of the interpolating polynomial through `points`, computed as
/// `sum_j y_j * prod_{x != x_j} x / (x - x_j)`.
pub fn lagrange_at_zero(points: &[(Residue, Residue)], q: FieldPrime) -> Result<Residue> {
    let nodes: Vec<Residue> = points.iter().map(|&(x, _)| q.reduce(x)).collect();
    for (i, &x) in nodes.iter().enumerate() {
        if x == 0 {
            return Err(Error::InvalidNode(points[i].0));
        }
        if nodes[..i].contains(&x) {
            return Err(Error::DuplicateNode(points[i].0));
        }
    }
    let mut acc = 0;
    for (j, &(_, y)) in points.iter().enumerate() {
        let xj = nodes[j];
        let mut num = 1;
        let mut den = 1;
        for (m, &x) in nodes.iter().enumerate() {
            if m != j {
                num = q.mul(num, x);
                den = q.mul(den, q.sub(x, xj));
            }
        }
        let basis = q.mul(num, q.inv(den)?);
        acc = q.add(acc, q.mul(q.reduce(y), basis));
    }
    Ok(acc)
}

/// `C(j, l) mod q`, computed as the falling factorial `(j)_l` over `l!`.
/// Zero whenever `j < l`. Requires `l < q`.
pub fn binom_mod(j: u64, l: u64, q: FieldPrime) -> Residue {
    if j < l {
        return 0;
    }
    let mut num = q.reduce(1);
    let mut den = q.reduce(1);
    for m in 0..l {
        num = q.mul(num, q.reduce(j - m));
        den = q.mul(den, q.reduce(m + 1));
    }
    q.mul(num, q.inv(den).expect("l < q keeps l! invertible"))
}
