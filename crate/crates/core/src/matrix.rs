//! Dense exact-rational matrices with the linear-algebra kernels the rest of
//! the crate needs: arithmetic, rank, null space, and exact solving.

use crate::error::{Error, Result};
use crate::scalar::{rat_int, Rational};
use num::{One, Zero};

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    /// Build from integer entries, row major.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let data = rows.iter().flat_map(|row| row.iter().map(|&x| rat_int(x))).collect();
        QMatrix::new(r, c, data).expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        QMatrix::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        QMatrix::new(self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        QMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> QMatrix {
        self.scale(&rat_int(-1))
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    /// a*b - b*a.
    pub fn commutator(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
        a.mul(b)?.sub(&b.mul(a)?)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimMismatch(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Rational::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out[i] += a * &v[j];
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form; returns (rref, pivot column indices).
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // find a nonzero pivot in this column
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(row * m.cols + j, p * m.cols + j);
                }
            }
            let inv = m.get(row, col).recip();
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for j in col..m.cols {
                        let v = m.get(r, j) - &factor * m.get(row, j);
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the exact null space, as column vectors of length `cols`.
    pub fn null_space_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (row_idx, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row_idx, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Exact solution X of `self * X = b`, or None if the system is
    /// inconsistent. When the coefficient matrix has full column rank the
    /// solution is unique; otherwise free variables are set to zero.
    pub fn solve(&self, b: &QMatrix) -> Result<Option<QMatrix>> {
        if b.rows != self.rows {
            return Err(Error::DimMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, b.rows
            )));
        }
        // row reduce the augmented matrix [self | b]
        let mut aug = QMatrix::zero(self.rows, self.cols + b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..b.cols {
                aug.set(i, self.cols + j, b.get(i, j).clone());
            }
        }
        let (r, pivots) = aug.rref();
        // a pivot in the rhs block means inconsistency
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = QMatrix::zero(self.cols, b.cols);
        for (row_idx, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(row_idx, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Exact inverse, or None if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        match self.solve(&QMatrix::identity(self.rows)) {
            Ok(Some(inv)) if self.rank() == self.rows => Some(inv),
            _ => None,
        }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &QMatrix) -> QMatrix {
        let mut out = QMatrix::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    fn check_same_shape(&self, other: &QMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl std::fmt::Display for QMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| crate::scalar::format_rational(self.get(i, j)))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
