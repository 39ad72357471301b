//! Column-major sparse integer matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Sparse matrix stored column by column; each column is a list of
/// `(row, coefficient)` pairs sorted by row with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, q: i64) -> Self {
        let cols = (0..n).map(|i| if q == 0 { Vec::new() } else { vec![(i as u32, q)] }).collect();
        Self { nrows: n, cols }
    }

    /// Builds a matrix from unsorted columns; duplicate rows are summed and
    /// zeros dropped.
    pub fn from_columns(nrows: usize, cols: Vec<Vec<(u32, i64)>>) -> Result<Self> {
        let mut out = Vec::with_capacity(cols.len());
        for mut col in cols {
            col.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
            for (r, v) in col {
                if r as usize >= nrows {
                    return Err(Error::DimensionMismatch("row index out of range"));
                }
                match merged.last_mut() {
                    Some(last) if last.0 == r => {
                        last.1 = last.1.checked_add(v).ok_or(Error::CoefficientOverflow)?
                    }
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            out.push(merged);
        }
        Ok(Self { nrows, cols: out })
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| (i as u32, rows[i][j]))
                    .collect()
            })
            .collect();
        Self { nrows, cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                d[i as usize][j] = v;
            }
        }
        d
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[(u32, i64)]> {
        self.cols.iter().map(Vec::as_slice)
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        let col = &self.cols[j];
        match col.binary_search_by_key(&(i as u32), |e| e.0) {
            Ok(k) => col[k].1,
            Err(_) => 0,
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                cols[i as usize].push((j as u32, v));
            }
        }
        Self { nrows: self.ncols(), cols }
    }

    pub fn scaled(&self, q: i64) -> Result<SparseMatrix> {
        if q == 0 {
            return Ok(Self::zero(self.nrows, self.ncols()));
        }
        let cols = self
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .map(|&(i, v)| v.checked_mul(q).map(|p| (i, p)).ok_or(Error::CoefficientOverflow))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { nrows: self.nrows, cols })
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ncols() != rhs.nrows {
            return Err(Error::DimensionMismatch("inner dimensions differ"));
        }
        let mut acc = vec![0i64; self.nrows];
        let mut touched: Vec<u32> = Vec::new();
        let mut cols = Vec::with_capacity(rhs.ncols());
        for rcol in &rhs.cols {
            for &(k, b) in rcol {
                for &(i, a) in &self.cols[k as usize] {
                    let slot = &mut acc[i as usize];
                    if *slot == 0 {
                        touched.push(i);
                    }
                    let p = a.checked_mul(b).ok_or(Error::CoefficientOverflow)?;
                    *slot = slot.checked_add(p).ok_or(Error::CoefficientOverflow)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut col = Vec::new();
            for &i in &touched {
                let v = core::mem::take(&mut acc[i as usize]);
                if v != 0 {
                    col.push((i, v));
                }
            }
            touched.clear();
            cols.push(col);
        }
        Ok(Self { nrows: self.nrows, cols })
    }

    /// `self - rhs`.
    pub fn sub(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.nrows != rhs.nrows || self.ncols() != rhs.ncols() {
            return Err(Error::DimensionMismatch("operands differ in shape"));
        }
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| {
                let mut col: Vec<(u32, i64)> = a.clone();
                col.extend(b.iter().map(|&(i, v)| (i, -v)));
                col
            })
            .collect();
        Self::from_columns(self.nrows, cols)
    }

    /// Places `blocks` along a block matrix grid: each entry is
    /// `(row_offset, col_offset, block)`.
    pub fn assemble(nrows: usize, ncols: usize, blocks: &[(usize, usize, &SparseMatrix)]) -> Result<SparseMatrix> {
        let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); ncols];
        for &(r0, c0, block) in blocks {
            if r0 + block.nrows > nrows || c0 + block.ncols() > ncols {
                return Err(Error::DimensionMismatch("block exceeds target"));
            }
            for (j, col) in block.cols.iter().enumerate() {
                cols[c0 + j].extend(col.iter().map(|&(i, v)| (i + r0 as u32, v)));
            }
        }
        Self::from_columns(nrows, cols)
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_map = vec![u32::MAX; self.nrows];
        for (new, &old) in rows.iter().enumerate() {
            row_map[old] = new as u32;
        }
        let cols = cols
            .iter()
            .map(|&j| {
                let mut col: Vec<(u32, i64)> = self.cols[j]
                    .iter()
                    .filter(|e| row_map[e.0 as usize] != u32::MAX)
                    .map(|&(i, v)| (row_map[i as usize], v))
                    .collect();
                col.sort_unstable_by_key(|e| e.0);
                col
            })
            .collect();
        Self { nrows: rows.len(), cols }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_transpose() {
        let a = SparseMatrix::from_dense(&[vec![1, 2], vec![0, 3]]);
        let b = SparseMatrix::from_dense(&[vec![4, 0], vec![-1, 1]]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.to_dense(), vec![vec![2, 2], vec![-3, 3]]);
        assert_eq!(a.transpose().to_dense(), vec![vec![1, 0], vec![2, 3]]);
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn shape_errors() {
        let a = SparseMatrix::zero(2, 3);
        assert!(a.mul(&a).is_err());
        assert!(SparseMatrix::from_columns(1, vec![vec![(3, 1)]]).is_err());
    }

    #[test]
    fn overflow_detected() {
        let a = SparseMatrix::scalar(1, i64::MAX);
        assert_eq!(a.mul(&SparseMatrix::scalar(1, 2)), Err(Error::CoefficientOverflow));
    }

    #[test]
    fn select_rows_and_columns() {
        let a = SparseMatrix::from_dense(&[vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(a.select(&[1], &[2, 0]).to_dense(), vec![vec![6, 4]]);
    }
}
