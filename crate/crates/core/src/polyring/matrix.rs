use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Polynomial;
use crate::error::{Error, Result};

/// Dense matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Polynomial::zero(); rows * cols] }
    }

    /// `c · Id_n`.
    pub fn scalar(n: usize, c: &Polynomial) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::MatrixIndex { row: bad, col: rows[bad].len() });
        }
        Ok(PolyMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        assert!(row < self.rows && col < self.cols, "matrix index out of range");
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Polynomial) {
        assert!(row < self.rows && col < self.cols, "matrix index out of range");
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Polynomial] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::MatrixIndex { row: other.rows, col: other.cols });
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact determinant by Laplace expansion along the sparsest remaining
    /// column, memoized on the `(rows, cols)` masks of each minor.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        assert!(self.rows <= 64, "determinant supports at most 64x64 matrices");
        let full = mask(self.rows);
        let mut memo = HashMap::new();
        Ok(self.minor_det(full, full, &mut memo))
    }

    fn minor_det(&self, rows: u64, cols: u64, memo: &mut HashMap<(u64, u64), Polynomial>) -> Polynomial {
        if cols == 0 {
            return Polynomial::one();
        }
        if let Some(d) = memo.get(&(rows, cols)) {
            return d.clone();
        }
        let nonzero = |c: usize| bits(rows).filter(|&r| !self.get(r, c).is_zero()).count();
        let col = bits(cols).min_by_key(|&c| (nonzero(c), c)).expect("nonempty column mask");
        let col_pos = (cols & ((1u64 << col) - 1)).count_ones() as usize;

        let mut acc = Polynomial::zero();
        for (row_pos, r) in bits(rows).enumerate() {
            let entry = self.get(r, col);
            if entry.is_zero() {
                continue;
            }
            let sub = self.minor_det(rows & !(1 << r), cols & !(1 << col), memo);
            if sub.is_zero() {
                continue;
            }
            let term = entry * &sub;
            if (row_pos + col_pos).is_multiple_of(2) {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        memo.insert((rows, cols), acc.clone());
        acc
    }
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(m: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m & (1u64 << i) != 0)
}

/// Free-function form of [`PolyMatrix::determinant`].
pub fn determinant(m: &PolyMatrix) -> Result<Polynomial> {
    m.determinant()
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            f.write_str("[")?;
            for (c, e) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
            if r + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl Serialize for PolyMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Polynomial>>::deserialize(d)?;
        PolyMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
