//! Dense linear algebra over the prime field GF(p).
//!
//! Entries are stored reduced in `0..p` and every arithmetic step reduces
//! immediately. Row reduction picks the first nonzero entry scanning columns
//! left to right and rows top to bottom, so results are deterministic.

use std::fmt;
use std::io::{BufRead, Write};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime below 65536")]
    NotPrime(u32),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("moduli differ: {0} vs {1}")]
    Modulus(u32, u32),
    #[error("malformed matrix dump: {0}")]
    Parse(String),
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The field GF(p) together with a precomputed reduction constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    p: u32,
    magic: u64,
}

impl Field {
    pub fn new(p: u32) -> Result<Self, LinalgError> {
        if p >= 1 << 16 || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field {
            p,
            magic: u64::MAX / p as u64 + 1,
        })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// `a mod p` for any 32-bit `a`.
    #[inline(always)]
    pub fn reduce(self, a: u32) -> u32 {
        let low = self.magic.wrapping_mul(a as u64);
        ((low as u128 * self.p as u128) >> 64) as u32
    }

    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        self.reduce(a * b)
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(
            !a.is_multiple_of(self.p),
            "inverse of zero in GF({})",
            self.p
        );
        self.pow(a, self.p as u64 - 2)
    }

    /// `dst += c * src`, entrywise.
    #[inline]
    pub fn axpy(self, dst: &mut [u32], c: u32, src: &[u32]) {
        if c == 0 {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.reduce(*d + c * s);
        }
    }

    pub fn scale_in_place(self, v: &mut [u32], c: u32) {
        for x in v {
            *x = self.mul(*x, c);
        }
    }
}

/// A dense `rows x cols` matrix over GF(p), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix over GF({}) {}x{}",
            self.field.p, self.rows, self.cols
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = field.from_i64(x);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from already reduced row vectors of equal length `cols`.
    pub fn from_vecs(field: Field, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Matrix {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.field, self.rows)
    }

    fn check_same(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::Modulus(self.field.p, other.field.p));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    f.axpy(dst, a, other.row(k));
                }
            }
        }
        Ok(out)
    }

    /// Panicking product for internal use where shapes are known to agree.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product shape")
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            self.field.axpy(&mut out, a, self.row(k));
        }
        out
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::Shape(
                "sum of differently shaped matrices".into(),
            ));
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.try_add(other).expect("matrix sum shape")
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(self.field.p - 1))
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        let c = f.reduce(c);
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self - I` for square matrices.
    pub fn minus_identity(&self) -> Matrix {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i);
            m.data[i * self.cols + i] = self.field.sub(v, 1);
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for r in 0..self.rows {
            let row = self.row(r);
            data.extend(idx.iter().map(|&c| row[c]));
        }
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Subtracts `c` times row `src` from row `dst`.
    fn eliminate(&mut self, dst: usize, src: usize, c: u32) {
        let f = self.field;
        let neg = f.neg(c);
        let cols = self.cols;
        let (d, s) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * cols);
            (&mut lo[dst * cols..(dst + 1) * cols], &hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * cols);
            (&mut hi[..cols], &lo[src * cols..(src + 1) * cols])
        };
        f.axpy(d, neg, s);
    }

    /// Reduces in place; `full` also clears entries above pivots and
    /// normalizes pivots to 1. Returns pivot columns.
    fn reduce_in_place(&mut self, full: bool) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c));
            if full {
                f.scale_in_place(self.row_mut(r), inv);
            }
            let start = if full { 0 } else { r + 1 };
            for i in start..self.rows {
                if i == r {
                    continue;
                }
                let v = self.get(i, c);
                if v != 0 {
                    let factor = if full { v } else { f.mul(v, inv) };
                    self.eliminate(i, r, factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(true);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = if self.rows > self.cols {
            self.transpose()
        } else {
            self.clone()
        };
        m.reduce_in_place(false).len()
    }

    /// Basis of the right null space: rows `v` with `self * v^T = 0`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Matrix::from_vecs(f, self.cols, basis)
    }

    /// Basis of the left null space: rows `v` with `v * self = 0`.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().kernel_basis()
    }

    /// Some `x` with `self * x^T = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Shape(format!(
                "right side has {} entries, expected {}",
                b.len(),
                self.rows
            )));
        }
        let col = Matrix::from_flat(
            self.field,
            self.rows,
            1,
            b.iter().map(|&x| self.field.reduce(x)).collect(),
        );
        let (r, pivots) = self.hstack(&col).rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(r.select_cols(&idx))
    }

    /// Echelon basis (nonzero rows of the rref) of the row space.
    pub fn rowspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let idx: Vec<usize> = (0..pivots.len()).collect();
        r.select_rows(&idx)
    }

    /// Basis of the intersection of the row spaces of `self` and `other`.
    pub fn intersect_rowspaces(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::Shape(
                "row spaces live in different dimensions".into(),
            ));
        }
        let zero = Matrix::zeros(self.field, other.rows, self.cols);
        let stacked = self.hstack(self).vstack(&other.hstack(&zero));
        let (r, pivots) = stacked.rref();
        let n = self.cols;
        let rows: Vec<usize> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= n)
            .map(|(i, _)| i)
            .collect();
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(r.select_rows(&rows).select_cols(&right).rowspace())
    }

    /// Writes `p rows cols` followed by row-major entries.
    pub fn dump<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "{} {} {}", self.field.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn parse_dump<R: BufRead>(input: &mut R) -> Result<Matrix, LinalgError> {
        let mut header = String::new();
        input
            .read_line(&mut header)
            .map_err(|e| LinalgError::Parse(e.to_string()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| LinalgError::Parse(format!("bad header {header:?}")))
            })
            .collect::<Result<_, _>>()?;
        let [p, rows, cols] = nums[..] else {
            return Err(LinalgError::Parse(format!("bad header {header:?}")));
        };
        let field = Field::new(p as u32)?;
        let mut data = Vec::with_capacity(rows * cols);
        let mut line = String::new();
        for _ in 0..rows {
            line.clear();
            input
                .read_line(&mut line)
                .map_err(|e| LinalgError::Parse(e.to_string()))?;
            for t in line.split_whitespace() {
                let v: u32 = t
                    .parse()
                    .map_err(|_| LinalgError::Parse(format!("bad entry {t:?}")))?;
                if v >= field.p {
                    return Err(LinalgError::Parse(format!("entry {v} not reduced mod {p}")));
                }
                data.push(v);
            }
        }
        if data.len() != rows * cols {
            return Err(LinalgError::Parse(format!(
                "expected {} entries, found {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }
}

/// An echelonized list of vectors that remembers how each echelon row is
/// written in terms of the vectors inserted so far.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<u32>>,
    originals: usize,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            originals: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Reduces `v` against the basis. Returns the remainder and the
    /// coordinates of `v - remainder` in terms of the inserted vectors.
    pub fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = self.field;
        let mut rem = v.to_vec();
        let mut coords = vec![0; self.originals];
        for (i, row) in self.rows.iter().enumerate() {
            let c = rem[self.pivots[i]];
            if c != 0 {
                f.axpy(&mut rem, f.neg(c), row);
                f.axpy(&mut coords, c, &self.combos[i]);
            }
        }
        (rem, coords)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Inserts `v` if independent; otherwise returns its coordinates.
    pub fn insert(&mut self, v: &[u32]) -> Result<(), Vec<u32>> {
        let (mut rem, mut coords) = self.reduce(v);
        let Some(piv) = rem.iter().position(|&x| x != 0) else {
            return Err(coords);
        };
        let f = self.field;
        for c in &mut self.combos {
            c.push(0);
        }
        // rem = v - sum coords_j * b_j, so in inserted coordinates it is (-coords, 1).
        for x in &mut coords {
            *x = f.neg(*x);
        }
        coords.push(1);
        self.originals += 1;
        let inv = f.inv(rem[piv]);
        f.scale_in_place(&mut rem, inv);
        f.scale_in_place(&mut coords, inv);
        self.rows.push(rem);
        self.pivots.push(piv);
        self.combos.push(coords);
        Ok(())
    }
}
