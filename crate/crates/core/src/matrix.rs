//! Sparse integer matrices with arbitrary-precision entries, stored by column.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    /// Per column, `(row, value)` sorted by row with nonzero values.
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (k, col) in m.columns.iter_mut().enumerate() {
            col.push((k, BigInt::from(1)));
        }
        m
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed and zeros dropped.
    ///
    /// # Panics
    /// If a triplet lies outside the given shape.
    pub fn from_triplets<I, V>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, V)>,
        V: Into<BigInt>,
    {
        let mut columns: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            columns[c].push((r, v.into()));
        }
        for col in &mut columns {
            normalize_column(col);
        }
        IntMatrix { rows, cols, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let triplets = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(c, &v)| (r, c, v))
        });
        Self::from_triplets(n_rows, n_cols, triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.columns[c]
            .binary_search_by_key(&r, |(row, _)| *row)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_default()
    }

    /// Nonzero entries in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut dense = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            dense[r][c] = v.clone();
        }
        dense
    }

    /// Matrix product `self * rhs`.
    ///
    /// # Panics
    /// On a shape mismatch.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let columns = rhs
            .columns
            .iter()
            .map(|rcol| {
                let mut acc: Vec<(usize, BigInt)> = Vec::new();
                for (k, b) in rcol {
                    for (r, a) in &self.columns[*k] {
                        acc.push((*r, a * b));
                    }
                }
                normalize_column(&mut acc);
                acc
            })
            .collect();
        IntMatrix { rows: self.rows, cols: rhs.cols, columns }
    }

    pub fn transpose(&self) -> IntMatrix {
        let triplets = self.triplets().map(|(r, c, v)| (c, r, v.clone()));
        IntMatrix::from_triplets(self.cols, self.rows, triplets)
    }

    /// Each column holds exactly one entry, equal to +-1, and no two columns share a row.
    pub fn is_signed_injection(&self) -> bool {
        let mut used = vec![false; self.rows];
        self.columns.iter().all(|col| {
            col.len() == 1 && {
                let (r, v) = &col[0];
                let fresh = !used[*r];
                used[*r] = true;
                fresh && (v == &BigInt::from(1) || v == &BigInt::from(-1))
            }
        })
    }
}

fn normalize_column(col: &mut Vec<(usize, BigInt)>) {
    col.sort_by_key(|(r, _)| *r);
    let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(col.len());
    for (r, v) in col.drain(..) {
        match merged.last_mut() {
            Some((last, acc)) if *last == r => *acc += v,
            _ => merged.push((r, v)),
        }
    }
    merged.retain(|(_, v)| !v.is_zero());
    *col = merged;
}

impl fmt::Display for IntMatrix {
    /// One `(row, col, value)` triplet per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, c, v) in self.triplets() {
            writeln!(f, "({r}, {c}, {v})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = IntMatrix::from_triplets(2, 2, [(0, 0, 1), (0, 0, -1), (1, 0, 2), (1, 0, 3), (0, 1, 4)]);
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(1, 0), BigInt::from(5));
        assert_eq!(m.get(0, 0), BigInt::from(0));
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_dense(&[vec![1, 2], vec![0, 1]]);
        let b = IntMatrix::from_dense(&[vec![1, -2], vec![0, 1]]);
        assert_eq!(a.mul(&b), IntMatrix::identity(2));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().get(1, 0), BigInt::from(2));
    }

    #[test]
    fn signed_injection() {
        assert!(IntMatrix::from_dense(&[vec![0, -1], vec![1, 0], vec![0, 0]]).is_signed_injection());
        assert!(!IntMatrix::from_dense(&[vec![1, 1], vec![0, 0]]).is_signed_injection());
        assert!(!IntMatrix::from_dense(&[vec![2]]).is_signed_injection());
    }
}
