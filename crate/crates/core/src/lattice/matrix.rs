use std::fmt;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::IntVector;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: &[IntVector], cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.entries().iter().cloned()).collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vs: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        Self::from_rows(&vs, cols).expect("ragged literal matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[IntVector], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a matrix with {rows} rows",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
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
    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vector(&self, r: usize) -> IntVector {
        IntVector::new(self.row(r).to_vec())
    }

    pub fn row_vectors(&self) -> Vec<IntVector> {
        (0..self.rows).map(|r| self.row_vector(r)).collect()
    }

    pub fn column(&self, c: usize) -> IntVector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn mul_vec(&self, v: &IntVector) -> Result<IntVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Int::zero();
                for (a, x) in self.row(r).iter().zip(v.iter()) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn in_kernel(&self, v: &IntVector) -> bool {
        self.mul_vec(v).map(|w| w.is_zero()).unwrap_or(false)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} columns on {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    pub fn has_zero_column(&self) -> bool {
        (0..self.cols).any(|c| (0..self.rows).all(|r| self.get(r, c).is_zero()))
    }

    /// Row selection in the given order.
    pub fn select_rows(&self, order: &[usize]) -> IntMatrix {
        let rows: Vec<IntVector> = order.iter().map(|&r| self.row_vector(r)).collect();
        IntMatrix::from_rows(&rows, self.cols).expect("same width")
    }

    pub fn select_columns(&self, order: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, order.len());
        for r in 0..self.rows {
            for (j, &c) in order.iter().enumerate() {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    /// Rank over the rationals, via fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Int>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                let g = pivot_row[c].gcd(&f);
                let a = pivot_row[c].div_exact(&g);
                let b = f.div_exact(&g);
                for k in c..row.len() {
                    row[k] = &(&row[k] * &a) - &(&pivot_row[k] * &b);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for (i, x) in self.row(r).iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x:>2}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
