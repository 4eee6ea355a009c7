//! Exact linear algebra over the rationals and prime fields.
//!
//! Every rank, solve and dimension count in the crate goes through this
//! module. Rational rank uses fraction-free (Bareiss) elimination on
//! integer-scaled rows; everything else uses the generic [`Field`] layer,
//! which is what lets the graded-dimension code switch between exact
//! rational arithmetic and a mod-p fast path.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("matrix shape mismatch: expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("right-hand side has length {got}, matrix has {rows} rows")]
    RhsLength { rows: usize, got: usize },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("linear system has non-unique solutions (column rank {rank} < {cols})")]
    NonUnique { rank: usize, cols: usize },
    #[error("unique solution is not integral: component {index} = {value}")]
    NonIntegral { index: usize, value: String },
    #[error("{p} is not a prime")]
    NotPrime { p: u64 },
    #[error("denominator divisible by p = {p}")]
    BadPrime { p: u64 },
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, KernelError> {
    let t = s.trim();
    let err = || KernelError::ParseRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` form; the denominator is always written, even when it is 1.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, KernelError> {
        if entries.len() != rows * cols {
            return Err(KernelError::Shape { expected: rows * cols, got: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from integer rows. All rows must have equal length.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, KernelError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(KernelError::Shape { expected: rows.len() * cols, got: entries.len() + r.len() });
            }
            entries.extend(r.iter().map(|&v| int(v)));
        }
        Ok(Self { rows: rows.len(), cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self, KernelError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(KernelError::Shape { expected: n * cols, got: r.len() });
            }
            entries.extend(r);
        }
        Ok(Self { rows: n, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Reorders rows and columns: entry `(r, c)` of the result is entry
    /// `(row_perm[r], col_perm[c])` of `self`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        for (r, &pr) in row_perm.iter().enumerate() {
            for (c, &pc) in col_perm.iter().enumerate() {
                m.set(r, c, self.get(pr, pc).clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.rows).map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// Rows scaled by the lcm of their denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
            })
            .collect()
    }
}

/// Fraction-free elimination in place. Returns the rank and the product of sign
/// changes and final pivot (the determinant when the matrix is square and full rank).
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> (usize, BigInt) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1i32;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                let v = &pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    let det = if sign < 0 { -prev } else { prev };
    (rank, det)
}

/// Rank over the rationals.
pub fn rank_rational(m: &ExactMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut a = m.integer_rows();
    bareiss(&mut a, m.cols).0
}

/// Determinant of a square integer matrix (1 for the empty matrix).
pub fn det_integer<R: AsRef<[i64]>>(rows: &[R]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)).collect()).collect();
    let (rank, det) = bareiss(&mut a, n);
    if rank < n {
        BigInt::zero()
    } else {
        det
    }
}

/// Nonzero invariant factors (Smith normal form diagonal) of an integer matrix.
pub fn smith_invariants<R: AsRef<[i64]>>(rows: &[R]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)).collect()).collect();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry in the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..n {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..n {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..m {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the remaining block by the pivot
        let pivot = a[t][t].clone();
        if let Some(i) = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &pivot).is_zero())) {
            for j in t..n {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        out.push(pivot.abs());
        t += 1;
    }
    out
}

/// Unique integral solution of `m x = rhs`.
pub fn solve_unique_integer(m: &ExactMatrix, rhs: &[Rational]) -> Result<Vec<BigInt>, KernelError> {
    if rhs.len() != m.rows {
        return Err(KernelError::RhsLength { rows: m.rows, got: rhs.len() });
    }
    let rank = rank_rational(m);
    if rank < m.cols {
        return Err(KernelError::NonUnique { rank, cols: m.cols });
    }
    let field = RationalField;
    let mut aug: Vec<Vec<Rational>> = (0..m.rows)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let pivots = gauss_jordan(&field, &mut aug, m.cols + 1);
    if pivots.contains(&m.cols) {
        return Err(KernelError::NoSolution);
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][m.cols].clone();
    }
    x.into_iter()
        .enumerate()
        .map(|(index, v)| {
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(KernelError::NonIntegral { index, value: v.to_string() })
            }
        })
        .collect()
}

/// Rank of the reduction of `m` modulo the prime `p`.
pub fn rank_modp(m: &ExactMatrix, p: u64) -> Result<usize, KernelError> {
    let field = PrimeField::new(p)?;
    let mut basis = EchelonBasis::new(&field, m.cols);
    for r in 0..m.rows {
        let row = m.row(r).iter().map(|q| field.from_rational(q)).collect::<Result<Vec<_>, _>>()?;
        basis.insert(row);
    }
    Ok(basis.rank())
}

/// Scalar arithmetic of a coefficient field.
pub trait Field: Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `a` must be nonzero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_rational(&self, q: &Rational) -> Result<Self::Elem, KernelError>;
    fn label(&self) -> String;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
    fn from_rational(&self, q: &Rational) -> Result<Rational, KernelError> {
        Ok(q.clone())
    }
    fn label(&self) -> String {
        "Q".to_string()
    }
}

/// The prime field F_p for word-sized p.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, KernelError> {
        // keep products below 2^64
        if !is_prime(p) || p >= (1 << 31) {
            return Err(KernelError::NotPrime { p });
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }
    fn from_rational(&self, q: &Rational) -> Result<u64, KernelError> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64().expect("residue fits");
        let den = q.denom().mod_floor(&p).to_u64().expect("residue fits");
        if den == 0 {
            return Err(KernelError::BadPrime { p: self.p });
        }
        Ok(num * self.inv(&den) % self.p)
    }
    fn label(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// Gauss–Jordan elimination in place over `field`; returns pivot columns.
fn gauss_jordan<F: Field>(field: &F, a: &mut [Vec<F::Elem>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(p, r);
        let inv = field.inv(&a[r][c]);
        for v in a[r].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = field.sub(v, &field.mul(&f, pv));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Incrementally maintained reduced row echelon basis of a subspace of F^n.
///
/// After any sequence of inserts the stored rows are fully reduced: each has a
/// unit pivot and every other stored row is zero in that column. `reduce`
/// therefore yields the canonical representative of a vector modulo the span,
/// supported on the non-pivot columns.
pub struct EchelonBasis<'f, F: Field> {
    field: &'f F,
    dim: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<'f, F: Field> EchelonBasis<'f, F> {
    pub fn new(field: &'f F, dim: usize) -> Self {
        Self { field, dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.iter().any(|(c, _)| *c == col)
    }

    /// Columns not used as pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut used = vec![false; self.dim];
        for (c, _) in &self.rows {
            used[*c] = true;
        }
        (0..self.dim).filter(|&c| !used[c]).collect()
    }

    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = self.field;
        for (c, row) in &self.rows {
            if f.is_zero(&v[*c]) {
                continue;
            }
            let coef = v[*c].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&coef, r));
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if f.is_zero(&row[pc]) {
                continue;
            }
            let coef = row[pc].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&coef, r));
                }
            }
        }
        let at = self.rows.partition_point(|(c, _)| *c < pc);
        self.rows.insert(at, (pc, v));
        true
    }
}

/// Rank over an arbitrary field via the echelon basis (an independent route
/// from the fraction-free rational rank).
pub fn rank_over<F: Field>(field: &F, m: &ExactMatrix) -> Result<usize, KernelError> {
    let mut basis = EchelonBasis::new(field, m.cols);
    for r in 0..m.rows {
        let row = m.row(r).iter().map(|q| field.from_rational(q)).collect::<Result<Vec<_>, _>>()?;
        basis.insert(row);
    }
    Ok(basis.rank())
}
