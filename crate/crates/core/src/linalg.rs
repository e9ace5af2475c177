//! Exact linear algebra over GF(2) and the integers.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A dense 0/1 matrix over GF(2), rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    /// Reduction mod 2 of an integer matrix.
    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set(r, c, m.get(r, c).rem_euclid(2) == 1);
            }
        }
        out
    }

    pub fn to_int(&self) -> IntMatrix {
        let rows = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| i64::from(self.get(r, c))).collect())
            .collect();
        IntMatrix::new(rows).expect("rectangular")
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.rows.min(self.cols)).all(|i| !self.get(i, i))
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }
}

impl Serialize for Gf2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<u8>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| u8::from(self.get(r, c))).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Rank over GF(2) by Gaussian elimination on packed rows.
pub fn gf2_rank(m: &Gf2Matrix) -> usize {
    let mut rows: Vec<Vec<u64>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let mut rank = 0;
    for c in 0..m.cols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            if rows.iter().any(|r| r.len() != first.len()) {
                return Err(Error::Malformed("ragged matrix".into()));
            }
        }
        Ok(Self { rows })
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.rows[r][c]
    }

    pub fn as_rows(&self) -> &[Vec<i64>] {
        &self.rows
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination in checked
/// 128-bit arithmetic.
pub fn int_det(m: &IntMatrix) -> Result<i128> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::NotSquare);
    }
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m.rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                    .ok_or(Error::DeterminantOverflow)?;
                // Bareiss guarantees exact division.
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    a[n - 1][n - 1].checked_mul(sign).ok_or(Error::DeterminantOverflow)
}

/// `M_n`: zero diagonal, ones everywhere else.
pub fn ladder_matrix(n: usize) -> Result<IntMatrix> {
    if n < 1 {
        return Err(Error::Malformed("ladder matrix size must be at least 1".into()));
    }
    Ok(IntMatrix { rows: (0..n).map(|i| (0..n).map(|j| i64::from(i != j)).collect()).collect() })
}
