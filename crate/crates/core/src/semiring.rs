//! Commutative semirings and dense matrices over them.
//!
//! Two instances are provided: the Boolean semiring (`bool`, with `1 + 1 = 1`)
//! used for language membership, and the natural numbers (`u64`) used for
//! counting paths. Nothing here ever subtracts.
//!
//! Matrices are stored row-major. The Kronecker product uses the row-major
//! convention over factor pairs: entry `((i1, i2), (j1, j2))` of `A ⊗ B` lives
//! at row `i1 * B.rows + i2` and column `j1 * B.cols + j2`, so the left factor
//! is the slow index. Every tensor evaluation in this crate uses that order.

use std::fmt;

use crate::error::{Error, Result};

/// A commutative semiring whose elements are small `Copy` values.
pub trait Semiring: Copy + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const ZERO: Self;
    const ONE: Self;

    fn add(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;

    fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Self::ONE
        } else {
            Self::ZERO
        }
    }
}

impl Semiring for bool {
    const ZERO: Self = false;
    const ONE: Self = true;

    #[inline]
    fn add(self, other: Self) -> Self {
        self | other
    }

    #[inline]
    fn mul(self, other: Self) -> Self {
        self & other
    }
}

/// Natural numbers. Counts at desk scale stay far below `u64::MAX`; overflow
/// panics rather than wrapping.
impl Semiring for u64 {
    const ZERO: Self = 0;
    const ONE: Self = 1;

    #[inline]
    fn add(self, other: Self) -> Self {
        self.checked_add(other).expect("path count overflowed u64")
    }

    #[inline]
    fn mul(self, other: Self) -> Self {
        self.checked_mul(other).expect("path count overflowed u64")
    }
}

/// Dense row-major matrix over a semiring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Matrix over the Boolean semiring.
pub type BoolMat = Matrix<bool>;

impl<S: Semiring> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Column vector (`n × 1`).
    pub fn column(entries: Vec<S>) -> Self {
        Matrix {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    /// Row vector (`1 × n`).
    pub fn row(entries: Vec<S>) -> Self {
        Matrix {
            rows: 1,
            cols: entries.len(),
            data: entries,
        }
    }

    /// `1 × 1` matrix holding a scalar.
    pub fn scalar(s: S) -> Self {
        Matrix {
            rows: 1,
            cols: 1,
            data: vec![s],
        }
    }

    /// Elementary matrix `e_i e_jᵀ`.
    pub fn elementary(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(i, j, S::ONE);
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row_slice(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    /// The single entry of a `1 × 1` matrix.
    pub fn as_scalar(&self) -> Option<S> {
        (self.rows == 1 && self.cols == 1).then(|| self.data[0])
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out: Matrix<S> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let b_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o = S::add(*o, S::mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Result<Matrix<S>> {
        if self.shape() != rhs.shape() {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a.add(b)).collect(),
        })
    }

    pub fn transpose(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn kron(&self, rhs: &Matrix<S>) -> Matrix<S> {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Matrix::zeros(rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..rhs.rows {
                    for j2 in 0..rhs.cols {
                        out.data[(i1 * rhs.rows + i2) * cols + j1 * rhs.cols + j2] = a.mul(rhs.get(i2, j2));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "trace of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).fold(S::ZERO, |acc, i| acc.add(self.get(i, i))))
    }

    /// Integer power of a square matrix; `pow(0)` is the identity.
    pub fn pow(&self, n: u32) -> Result<Matrix<S>> {
        if !self.is_square() {
            return Err(Error::Shape("power of non-square matrix".into()));
        }
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Apply an entrywise map, possibly into another semiring.
    pub fn map<T: Semiring>(&self, f: impl Fn(S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Entrywise `self ≤ other` in the natural order `a ≤ b ⟺ a + b = b`.
    pub fn le(&self, other: &Matrix<S>) -> Result<bool> {
        Ok(self.add(other)? == *other)
    }

    /// Sum of all entries.
    pub fn sum(&self) -> S {
        self.data.iter().fold(S::ZERO, |acc, &x| acc.add(x))
    }

    pub(crate) fn into_parts(self) -> (usize, usize, Vec<S>) {
        (self.rows, self.cols, self.data)
    }

    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<S>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }
}

impl BoolMat {
    /// Reinterpret a Boolean matrix over any semiring (0 ↦ 0, 1 ↦ 1).
    pub fn lift<S: Semiring>(&self) -> Matrix<S> {
        self.map(S::from_bool)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }
}

impl<S: Semiring> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for (j, x) in self.row_slice(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Prints one row per line with entries separated by single spaces; Boolean
/// entries print as `0`/`1`.
impl<S: Semiring> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, x) in self.row_slice(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", ElemDisplay(*x))?;
            }
        }
        Ok(())
    }
}

/// Formats semiring elements compactly: `bool` as `0`/`1`, numbers as-is.
pub struct ElemDisplay<S>(pub S);

impl<S: Semiring> fmt::Display for ElemDisplay<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0.to_string();
        match s.as_str() {
            "true" => f.write_str("1"),
            "false" => f.write_str("0"),
            other => f.write_str(other),
        }
    }
}
