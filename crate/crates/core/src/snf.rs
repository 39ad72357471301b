//! Smith normal form of sparse integer matrices.
//!
//! Unit pivots are eliminated first on the sparse matrix, choosing by a
//! Markowitz-style cost. The remainder has no unit entries and is usually
//! small; it is finished densely with a minimal-magnitude pivot, in `i64`
//! with overflow checks and in `BigInt` when those fail.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::matrix::SparseMatrix;

/// Elementary divisors of a matrix: `unit_count` ones followed by the
/// nontrivial divisors `d_1 | d_2 | …`, all greater than one.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SnfResult {
    pub unit_count: usize,
    pub nontrivial: Vec<BigUint>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.unit_count + self.nontrivial.len()
    }

    /// The full divisor chain, ones included.
    pub fn divisors(&self) -> Vec<BigUint> {
        let mut out = vec![BigUint::one(); self.unit_count];
        out.extend(self.nontrivial.iter().cloned());
        out
    }
}

pub fn smith_normal_form(m: &SparseMatrix) -> SnfResult {
    let mut sparse = SparseElim::new(m);
    match sparse.eliminate_units() {
        Some(units) => {
            let dense = sparse.remainder();
            let mut out = finish_dense(dense);
            out.unit_count += units;
            out
        }
        // overflow during the sparse phase: redo everything densely in big integers
        None => {
            let d: Vec<Vec<BigInt>> = m.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            dense_snf(d).expect("big integers do not overflow")
        }
    }
}

fn finish_dense(d: Vec<Vec<i64>>) -> SnfResult {
    if let Some(r) = dense_snf(d.clone()) {
        return r;
    }
    let big = d.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    dense_snf(big).expect("big integers do not overflow")
}

struct SparseElim {
    /// Rows as sorted `(col, value)` lists; `None` once eliminated.
    rows: Vec<Option<Vec<(u32, i64)>>>,
    /// Rows that may have an entry in each column (possibly stale).
    cols: Vec<Vec<u32>>,
    col_alive: Vec<bool>,
}

impl SparseElim {
    fn new(m: &SparseMatrix) -> Self {
        let mut rows = vec![Vec::new(); m.nrows()];
        let mut cols = vec![Vec::new(); m.ncols()];
        for (j, col) in m.columns().enumerate() {
            for &(i, v) in col {
                rows[i as usize].push((j as u32, v));
                cols[j].push(i);
            }
        }
        Self { rows: rows.into_iter().map(Some).collect(), cols, col_alive: vec![true; m.ncols()] }
    }

    fn entry(&self, r: u32, c: u32) -> i64 {
        match &self.rows[r as usize] {
            Some(row) => row.binary_search_by_key(&c, |e| e.0).map_or(0, |k| row[k].1),
            None => 0,
        }
    }

    fn refresh_col(&mut self, c: usize) {
        let mut live = core::mem::take(&mut self.cols[c]);
        live.sort_unstable();
        live.dedup();
        live.retain(|&r| self.entry(r, c as u32) != 0);
        self.cols[c] = live;
    }

    /// Eliminates unit pivots until none remain; returns how many.
    fn eliminate_units(&mut self) -> Option<usize> {
        let mut heap: BinaryHeap<Reverse<(usize, u32)>> = BinaryHeap::new();
        for c in 0..self.cols.len() {
            self.refresh_col(c);
            heap.push(Reverse((self.cols[c].len(), c as u32)));
        }
        let mut units = 0;
        while let Some(Reverse((count, c))) = heap.pop() {
            let cu = c as usize;
            if !self.col_alive[cu] {
                continue;
            }
            self.refresh_col(cu);
            if self.cols[cu].len() != count {
                heap.push(Reverse((self.cols[cu].len(), c)));
                continue;
            }
            if count == 0 {
                self.col_alive[cu] = false;
                continue;
            }
            // shortest row holding a unit in this column
            let pivot = self.cols[cu]
                .iter()
                .copied()
                .filter(|&r| self.entry(r, c).abs() == 1)
                .min_by_key(|&r| self.rows[r as usize].as_ref().map_or(0, Vec::len));
            let Some(pr) = pivot else {
                // no unit here now; the column stays for the dense phase
                continue;
            };
            let prow = self.rows[pr as usize].take().unwrap();
            let p = prow[prow.binary_search_by_key(&c, |e| e.0).unwrap()].1;
            let others: Vec<u32> = self.cols[cu].iter().copied().filter(|&r| r != pr).collect();
            for r in others {
                let row = self.rows[r as usize].as_mut().unwrap();
                let a = row[row.binary_search_by_key(&c, |e| e.0).unwrap()].1;
                // row -= (a / p) * prow, with p = ±1
                let f = a.checked_mul(p)?;
                let merged = axpy(row, &prow, f)?;
                for &(cc, _) in &merged {
                    if cc != c {
                        self.cols[cc as usize].push(r);
                    }
                }
                *row = merged;
            }
            self.col_alive[cu] = false;
            self.cols[cu].clear();
            units += 1;
            // columns touched by the pivot row may now be cheaper or have new units
            for &(cc, _) in &prow {
                if cc != c && self.col_alive[cc as usize] {
                    self.refresh_col(cc as usize);
                    heap.push(Reverse((self.cols[cc as usize].len(), cc)));
                }
            }
        }
        Some(units)
    }

    /// Dense copy of what is left, dropping empty rows and columns.
    fn remainder(&self) -> Vec<Vec<i64>> {
        let live_cols: Vec<u32> = (0..self.cols.len() as u32).filter(|&c| self.col_alive[c as usize]).collect();
        let mut pos = vec![u32::MAX; self.cols.len()];
        for (k, &c) in live_cols.iter().enumerate() {
            pos[c as usize] = k as u32;
        }
        let mut out = Vec::new();
        for row in self.rows.iter().flatten() {
            let mut dense = vec![0i64; live_cols.len()];
            let mut any = false;
            for &(c, v) in row {
                let k = pos[c as usize];
                if k != u32::MAX {
                    dense[k as usize] = v;
                    any = true;
                }
            }
            if any {
                out.push(dense);
            }
        }
        out
    }
}

/// `row - f * pivot` for sorted sparse rows.
fn axpy(row: &[(u32, i64)], pivot: &[(u32, i64)], f: i64) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i]);
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, pivot[j].1.checked_mul(f)?.checked_neg()?));
            j += 1;
        } else {
            let v = row[i].1.checked_sub(pivot[j].1.checked_mul(f)?)?;
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Arithmetic needed by the dense phase. `None` signals overflow.
trait Ring: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul {
    fn to_biguint(&self) -> BigUint;
}

impl Ring for i64 {
    fn to_biguint(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Ring for BigInt {
    fn to_biguint(&self) -> BigUint {
        self.magnitude().clone()
    }
}

/// Smith normal form of a dense matrix by minimal-pivot elimination.
#[allow(clippy::needless_range_loop)] // rows t and i are read together
fn dense_snf<T: Ring>(mut a: Vec<Vec<T>>) -> Option<SnfResult> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag: Vec<T> = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            // clear column t below the pivot
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = a[i][j].checked_sub(&q.checked_mul(&a[t][j])?)?;
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = row[j].checked_sub(&q.checked_mul(&row[t])?)?;
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // pivot must divide the whole trailing block
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[t][j].checked_add(&a[i][j])?;
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    let unit_count = diag.iter().filter(|d| d.is_one()).count();
    let nontrivial = diag.iter().filter(|d| !d.is_one()).map(Ring::to_biguint).collect();
    Some(SnfResult { unit_count, nontrivial })
}

/// Rank over the field with `p` elements, `p` prime and below `2^31`.
pub fn rank_mod_prime(m: &SparseMatrix, p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = vec![vec![0; m.ncols()]; m.nrows()];
    for (j, col) in m.columns().enumerate() {
        for &(i, v) in col {
            rows[i as usize][j] = v.rem_euclid(p as i64) as u64;
        }
    }
    let inv = |a: u64| -> u64 {
        // Fermat inverse
        let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..m.ncols() {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let f = inv(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = *v * f % p;
        }
        let prow = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let g = row[c];
                for (v, &q) in row.iter_mut().zip(&prow) {
                    *v = (*v + p - g * q % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Factors `d > 1` into prime powers `(p, e)` with `p` ascending.
pub fn factor(d: &BigUint) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if let Some(mut x) = d.to_u64() {
        let mut p = 2u64;
        while p * p <= x {
            let mut e = 0;
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if x > 1 {
            out.push((x, 1));
        }
        return out;
    }
    // torsion orders here have small prime factors; trial division suffices
    let mut x = d.clone();
    let mut p = 2u64;
    loop {
        let bp = BigUint::from(p);
        if &bp * &bp > x {
            break;
        }
        let mut e = 0;
        while (&x % &bp).is_zero() {
            x /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if !x.is_one() {
        out.push((x.to_u64().expect("prime factor exceeds u64"), 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(rows: &[Vec<i64>]) -> (usize, Vec<u64>) {
        let r = smith_normal_form(&SparseMatrix::from_dense(rows));
        (r.unit_count, r.nontrivial.iter().map(|d| d.to_u64().unwrap()).collect())
    }

    #[test]
    fn small_cases() {
        assert_eq!(snf(&[vec![3]]), (0, vec![3]));
        assert_eq!(snf(&[vec![2, 4], vec![6, 8]]), (0, vec![2, 4]));
        assert_eq!(snf(&[vec![0, 0], vec![0, 0]]), (0, vec![]));
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), (1, vec![6]));
        assert_eq!(snf(&[vec![1, 2], vec![3, 4]]), (1, vec![2]));
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 2;
        let r = smith_normal_form(&SparseMatrix::from_dense(&[vec![big, big - 1], vec![big - 2, big]]));
        assert_eq!(r.rank(), 2);
    }

    #[test]
    fn factoring() {
        assert_eq!(factor(&BigUint::from(360u32)), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor(&BigUint::from(7u32)), vec![(7, 1)]);
    }

    #[test]
    fn modular_rank() {
        let m = SparseMatrix::from_dense(&[vec![2, 4], vec![1, 2]]);
        assert_eq!(rank_mod_prime(&m, 7), 1);
        assert_eq!(rank_mod_prime(&SparseMatrix::from_dense(&[vec![2, 0], vec![0, 3]]), 2), 1);
    }
}
