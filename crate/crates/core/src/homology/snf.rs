//! Invariant factors of sparse integer matrices.
//!
//! Elimination runs on row-major sparse storage. Unit pivots are taken
//! column by column, shortest column first and shortest row within it, which
//! keeps fill-in low on the mostly-unimodular differentials this crate
//! produces. Whatever is left is reduced with a global minimal-magnitude
//! pivot. Entries start as `i64` with checked arithmetic; on the first
//! overflow the working matrix is promoted to `BigInt` and elimination
//! continues where it stopped.
//!
//! Only the diagonal is kept, so the result is normalised to a divisibility
//! chain afterwards by pairwise gcd/lcm.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fmt::Debug;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero invariant factors in ascending divisibility order, units included.
    pub invariant_factors: Vec<BigUint>,
    pub rank: usize,
}

impl SnfResult {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(matrix: &IntMatrix) -> SnfResult {
    let diagonal = match Reducer::<i64>::from_matrix(matrix) {
        Some(mut small) => match small.run() {
            Ok(()) => small.diagonal,
            Err(Overflow) => {
                let mut big = small.promote();
                big.run().expect("arbitrary precision elimination cannot overflow");
                big.diagonal
            }
        },
        None => {
            let mut big = Reducer::<BigInt>::from_matrix(matrix).expect("every entry is a BigInt");
            big.run().expect("arbitrary precision elimination cannot overflow");
            big.diagonal
        }
    };
    let rank = diagonal.len();
    SnfResult { invariant_factors: divisibility_chain(diagonal), rank }
}

/// Smith form of a diagonal matrix: units first, then the non-units made
/// into a chain `d_1 | d_2 | ...`.
pub(crate) fn divisibility_chain(diagonal: Vec<BigUint>) -> Vec<BigUint> {
    let (units, mut rest): (Vec<BigUint>, Vec<BigUint>) = diagonal.into_iter().partition(|d| d.is_one());
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if rest[i].is_one() {
                break;
            }
            if (&rest[j] % &rest[i]).is_zero() {
                continue;
            }
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut factors = units;
    factors.extend(rest);
    factors.sort();
    factors
}

#[derive(Debug)]
struct Overflow;

trait Scalar: Clone + Debug {
    type Magnitude: Ord + Clone;
    fn zero() -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn magnitude(&self) -> Self::Magnitude;
    fn is_unit(&self) -> bool;
    /// Nearest quotient `q` with `|a - q b| <= |b| / 2`.
    fn quotient(a: &Self, b: &Self) -> Option<Self>;
    /// `a - q * b`.
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self>;
    fn abs_unsigned(&self) -> BigUint;
}

impl Scalar for i64 {
    type Magnitude = u64;

    fn zero() -> Self {
        0
    }

    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn magnitude(&self) -> u64 {
        self.unsigned_abs()
    }

    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }

    fn quotient(a: &Self, b: &Self) -> Option<Self> {
        let (a, b) = (i128::from(*a), i128::from(*b));
        let mut q = a / b;
        let r = a - q * b;
        if 2 * r.abs() > b.abs() {
            q += r.signum() * b.signum();
        }
        i64::try_from(q).ok()
    }

    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|t| a.checked_sub(t))
    }

    fn abs_unsigned(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Scalar for BigInt {
    type Magnitude = BigUint;

    fn zero() -> Self {
        Zero::zero()
    }

    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn magnitude(&self) -> BigUint {
        self.magnitude().clone()
    }

    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }

    fn quotient(a: &Self, b: &Self) -> Option<Self> {
        let (mut q, r) = a.div_rem(b);
        if (&r.abs() * 2u32) > b.abs() {
            let step = if (r.sign() == Sign::Minus) == (b.sign() == Sign::Minus) { 1 } else { -1 };
            q += step;
        }
        Some(q)
    }

    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        Some(a - q * b)
    }

    fn abs_unsigned(&self) -> BigUint {
        self.magnitude().clone()
    }
}

struct Reducer<T> {
    /// Per row, `(col, value)` sorted by column, values nonzero.
    rows: Vec<Vec<(u32, T)>>,
    /// Per column, the rows holding an entry (unordered).
    col_rows: Vec<Vec<u32>>,
    col_done: Vec<bool>,
    deferred: Vec<bool>,
    diagonal: Vec<BigUint>,
}

impl<T: Scalar> Reducer<T> {
    fn from_matrix(matrix: &IntMatrix) -> Option<Self> {
        let mut rows: Vec<Vec<(u32, T)>> = vec![Vec::new(); matrix.rows()];
        let mut col_rows = vec![Vec::new(); matrix.cols()];
        for c in 0..matrix.cols() {
            for (r, v) in matrix.column(c) {
                rows[*r].push((c as u32, T::from_big(v)?));
                col_rows[c].push(*r as u32);
            }
        }
        Some(Reducer {
            rows,
            col_rows,
            col_done: vec![false; matrix.cols()],
            deferred: vec![false; matrix.cols()],
            diagonal: Vec::new(),
        })
    }

    fn entry(&self, r: u32, c: u32) -> Option<&T> {
        let row = &self.rows[r as usize];
        row.binary_search_by_key(&c, |(col, _)| *col).ok().map(|k| &row[k].1)
    }

    fn run(&mut self) -> Result<(), Overflow> {
        self.unit_phase()?;
        self.residual_phase()
    }

    fn unit_phase(&mut self) -> Result<(), Overflow> {
        let mut heap: BinaryHeap<Reverse<(usize, u32)>> = (0..self.col_rows.len())
            .filter(|&c| !self.col_done[c] && !self.deferred[c])
            .map(|c| Reverse((self.col_rows[c].len(), c as u32)))
            .collect();
        while let Some(Reverse((len, c))) = heap.pop() {
            let cu = c as usize;
            if self.col_done[cu] || self.deferred[cu] || self.col_rows[cu].len() != len {
                continue;
            }
            if len == 0 {
                self.col_done[cu] = true;
                continue;
            }
            let pivot_row = self.col_rows[cu]
                .iter()
                .copied()
                .filter(|&r| self.entry(r, c).is_some_and(T::is_unit))
                .min_by_key(|&r| (self.rows[r as usize].len(), r));
            match pivot_row {
                Some(r) => {
                    let touched = self.eliminate(r, c)?;
                    for col in touched {
                        let k = col as usize;
                        if !self.col_done[k] && !self.deferred[k] {
                            heap.push(Reverse((self.col_rows[k].len(), col)));
                        }
                    }
                }
                None => self.deferred[cu] = true,
            }
        }
        Ok(())
    }

    fn residual_phase(&mut self) -> Result<(), Overflow> {
        loop {
            let mut best: Option<(T::Magnitude, usize, u32, u32)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                for (c, v) in row {
                    let cost = (row.len() - 1) * (self.col_rows[*c as usize].len() - 1);
                    let key = (v.magnitude(), cost, r as u32, *c);
                    let better = match &best {
                        None => true,
                        Some(b) => key.cmp(b) == Ordering::Less,
                    };
                    if better {
                        best = Some(key);
                    }
                }
            }
            let Some((_, _, r, c)) = best else {
                return Ok(());
            };
            self.eliminate(r, c)?;
        }
    }

    /// Reduce around `(r, c)` until the pivot is alone in its row and column,
    /// record it, and drop that row and column. Returns the columns whose
    /// occupancy changed.
    fn eliminate(&mut self, mut pr: u32, mut pc: u32) -> Result<Vec<u32>, Overflow> {
        let mut touched = Vec::new();
        loop {
            // row operations: clear column pc below/above the pivot
            let pivot = self.entry(pr, pc).expect("pivot entry").clone();
            let others: Vec<u32> = self.col_rows[pc as usize].iter().copied().filter(|&r| r != pr).collect();
            let mut smaller: Option<(T::Magnitude, u32)> = None;
            for r in others {
                let a = self.entry(r, pc).expect("column index is consistent").clone();
                let q = T::quotient(&a, &pivot).ok_or(Overflow)?;
                if !q.is_zero() {
                    self.row_sub_mul(r, &q, pr, &mut touched)?;
                }
                if let Some(rem) = self.entry(r, pc) {
                    let m = rem.magnitude();
                    if smaller.as_ref().is_none_or(|(best, _)| m < *best) {
                        smaller = Some((m, r));
                    }
                }
            }
            if let Some((_, r)) = smaller {
                pr = r;
                continue;
            }

            // column operations: column pc now holds only the pivot, so they
            // only change row pr
            let pivot = self.entry(pr, pc).expect("pivot entry").clone();
            let mut updated = Vec::with_capacity(self.rows[pr as usize].len());
            let mut smaller: Option<(T::Magnitude, u32)> = None;
            for (c, b) in &self.rows[pr as usize] {
                if *c == pc {
                    updated.push((*c, b.clone()));
                    continue;
                }
                let q = T::quotient(b, &pivot).ok_or(Overflow)?;
                let rem = T::sub_mul(b, &q, &pivot).ok_or(Overflow)?;
                if !rem.is_zero() {
                    let m = rem.magnitude();
                    if smaller.as_ref().is_none_or(|(best, _)| m < *best) {
                        smaller = Some((m, *c));
                    }
                    updated.push((*c, rem));
                }
            }
            let old = std::mem::replace(&mut self.rows[pr as usize], updated);
            for (c, _) in &old {
                if self.entry(pr, *c).is_none() {
                    remove_row(&mut self.col_rows[*c as usize], pr);
                    touched.push(*c);
                }
            }
            if let Some((_, c)) = smaller {
                pc = c;
                continue;
            }

            self.diagonal.push(pivot.abs_unsigned());
            self.rows[pr as usize].clear();
            self.col_rows[pc as usize].clear();
            self.col_done[pc as usize] = true;
            return Ok(touched);
        }
    }

    /// `row[target] -= q * row[source]`, atomically.
    fn row_sub_mul(&mut self, target: u32, q: &T, source: u32, touched: &mut Vec<u32>) -> Result<(), Overflow> {
        let (t, s) = (target as usize, source as usize);
        let src = &self.rows[s];
        let dst = &self.rows[t];
        let zero = T::zero();
        let mut merged = Vec::with_capacity(dst.len() + src.len());
        let mut created = Vec::new();
        let mut cancelled = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < dst.len() || j < src.len() {
            let order = match (dst.get(i), src.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            match order {
                Ordering::Less => {
                    merged.push(dst[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (c, b) = &src[j];
                    let v = T::sub_mul(&zero, q, b).ok_or(Overflow)?;
                    merged.push((*c, v));
                    created.push(*c);
                    j += 1;
                }
                Ordering::Equal => {
                    let (c, a) = &dst[i];
                    let v = T::sub_mul(a, q, &src[j].1).ok_or(Overflow)?;
                    if v.is_zero() {
                        cancelled.push(*c);
                    } else {
                        merged.push((*c, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        self.rows[t] = merged;
        for c in created {
            self.col_rows[c as usize].push(target);
            touched.push(c);
        }
        for c in cancelled {
            remove_row(&mut self.col_rows[c as usize], target);
            touched.push(c);
        }
        Ok(())
    }
}

impl Reducer<i64> {
    fn promote(self) -> Reducer<BigInt> {
        Reducer {
            rows: self
                .rows
                .into_iter()
                .map(|row| row.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
                .collect(),
            col_rows: self.col_rows,
            col_done: self.col_done,
            deferred: vec![false; self.deferred.len()],
            diagonal: self.diagonal,
        }
    }
}

fn remove_row(rows: &mut Vec<u32>, r: u32) {
    if let Some(k) = rows.iter().position(|&x| x == r) {
        rows.swap_remove(k);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<u64> {
        smith_normal_form(&IntMatrix::from_dense(rows))
            .invariant_factors
            .iter()
            .map(|d| d.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn diagonal_two_three() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn zero_and_identity() {
        let z = smith_normal_form(&IntMatrix::zeros(3, 4));
        assert_eq!(z.rank, 0);
        assert!(z.invariant_factors.is_empty());
        let id = smith_normal_form(&IntMatrix::identity(5));
        assert_eq!(id.rank, 5);
        assert!(id.invariant_factors.iter().all(One::is_one));
    }

    #[test]
    fn classic_examples() {
        assert_eq!(factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(factors(&[vec![4, 0], vec![0, 6]]), vec![2, 12]);
        assert_eq!(factors(&[vec![6, 10, 15]]), vec![1]);
        assert_eq!(factors(&[vec![2, 2], vec![2, 2]]), vec![2]);
    }

    #[test]
    fn overflow_promotes_to_bigint() {
        let big = i64::MAX / 2;
        let rows = vec![vec![big, big - 1], vec![big - 1, big - 3]];
        // det = big*(big-3) - (big-1)^2 = -big - 1
        let snf = smith_normal_form(&IntMatrix::from_dense(&rows));
        assert_eq!(snf.rank, 2);
        assert!(snf.invariant_factors[0].is_one());
        assert_eq!(snf.invariant_factors[1], BigUint::from(big as u64 + 1));
    }

    #[test]
    fn entries_beyond_i64() {
        let huge: BigInt = BigInt::from(i64::MAX) * 4;
        let m = IntMatrix::from_triplets(1, 2, [(0, 0, huge.clone()), (0, 1, huge.clone() * 3)]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.invariant_factors, vec![huge.magnitude().clone()]);
    }
}
