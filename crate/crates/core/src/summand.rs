//! The weight summand `⟦w⟧`: the subcomplex spanned by the wedges of
//! modified weight `w`.
//!
//! Wedges are enumerated row by row. Row `i` contributes `e_{i×M_i}`, and
//! the weight condition forces `|M_i| = w_i - i + in_i`, where `in_i` is
//! already known once the rows above are fixed.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::complex::{Cell, ChainGroup, GradedComplex};
use crate::error::Result;
use crate::exterior::{Generator, Monomial};
use crate::matrix::SparseMatrix;
use crate::weights::WeightVector;

/// A built summand together with a lookup from wedge to basis position.
#[derive(Clone, Debug)]
pub struct Summand {
    weight: WeightVector,
    complex: GradedComplex,
    index: HashMap<Monomial, u32>,
}

impl Summand {
    pub fn weight(&self) -> &WeightVector {
        &self.weight
    }

    pub fn complex(&self) -> &GradedComplex {
        &self.complex
    }

    pub fn into_complex(self) -> GradedComplex {
        self.complex
    }

    /// Degree and position of `m`, if it belongs to the summand.
    pub fn locate(&self, m: Monomial) -> Option<(i32, usize)> {
        self.index.get(&m).map(|&i| (m.degree() as i32, i as usize))
    }

    pub fn basis(&self, degree: i32) -> impl Iterator<Item = Monomial> + '_ {
        self.complex.cells(degree).iter().filter_map(|c| c.monomial())
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
}

/// Calls `visit` on every wedge of weight `w`. Stops early, returning
/// `false`, as soon as `visit` does.
pub fn for_each_wedge<F: FnMut(Monomial) -> bool>(w: &WeightVector, mut visit: F) -> bool {
    let n = w.n();
    if n == 0 {
        return visit(Monomial::EMPTY);
    }
    let mut walker = Walker { n, w: w.entries(), indeg: vec![0; n + 1], visit: &mut visit };
    walker.row(1, Monomial::EMPTY)
}

struct Walker<'a, F> {
    n: usize,
    w: &'a [u8],
    indeg: Vec<usize>,
    visit: &'a mut F,
}

impl<F: FnMut(Monomial) -> bool> Walker<'_, F> {
    fn target(&self, i: usize) -> Option<usize> {
        let out = self.w[i - 1] as isize - i as isize + self.indeg[i] as isize;
        (out >= 0 && out as usize <= self.n - i).then_some(out as usize)
    }

    /// Column `j` can still reach an admissible in-degree once rows `..=i`
    /// are fixed.
    fn feasible(&self, i: usize) -> bool {
        (i + 1..=self.n).all(|j| {
            let base = j as isize - self.w[j - 1] as isize;
            let lo = base.max(0);
            let hi = (base + (self.n - j) as isize).min(j as isize - 1);
            let have = self.indeg[j] as isize;
            have <= hi && have + (j - 1 - i) as isize >= lo
        })
    }

    fn row(&mut self, i: usize, m: Monomial) -> bool {
        let Some(out) = self.target(i) else { return true };
        if i == self.n {
            return out != 0 || (self.visit)(m);
        }
        self.choose(i, i + 1, out, m)
    }

    fn choose(&mut self, i: usize, col: usize, left: usize, m: Monomial) -> bool {
        if left == 0 {
            return !self.feasible(i) || self.row(i + 1, m);
        }
        if self.n + 1 - col < left {
            return true;
        }
        // take column `col`
        self.indeg[col] += 1;
        let g = Generator::new_unchecked(i as u8, col as u8);
        let go_on = self.choose(i, col + 1, left - 1, m.with(g));
        self.indeg[col] -= 1;
        go_on && self.choose(i, col + 1, left, m)
    }
}

/// Number of wedges of weight `w`, counting no further than `limit`.
pub fn summand_size(w: &WeightVector, limit: u64) -> u64 {
    let mut count = 0u64;
    for_each_wedge(w, |_| {
        count += 1;
        count < limit
    });
    count
}

/// Builds `⟦w⟧` with each degree's basis sorted lexicographically.
pub fn build_summand(w: &WeightVector) -> Result<Summand> {
    let mut by_degree: Vec<Vec<Monomial>> = Vec::new();
    for_each_wedge(w, |m| {
        let d = m.degree();
        if by_degree.len() <= d {
            by_degree.resize(d + 1, Vec::new());
        }
        by_degree[d].push(m);
        true
    });
    let Some(lo) = by_degree.iter().position(|b| !b.is_empty()) else {
        return Ok(Summand { weight: w.clone(), complex: GradedComplex::zero(), index: HashMap::new() });
    };
    let mut index = HashMap::new();
    for basis in &mut by_degree[lo..] {
        basis.sort_unstable();
        for (i, m) in basis.iter().enumerate() {
            index.insert(*m, i as u32);
        }
    }
    let mut groups = Vec::with_capacity(by_degree.len() - lo);
    for d in lo..by_degree.len() {
        let basis = &by_degree[d];
        let nrows = if d == lo { 0 } else { by_degree[d - 1].len() };
        let cols = basis
            .iter()
            .map(|m| {
                let mut col = Vec::new();
                if d > lo {
                    m.for_each_boundary_term(|t, c| {
                        let row = *index.get(&t).expect("boundary preserves weight");
                        col.push((row, c));
                    });
                }
                col
            })
            .collect();
        groups.push(ChainGroup {
            cells: basis.iter().map(|&m| Cell::Wedge(m)).collect(),
            boundary: SparseMatrix::from_columns(nrows, cols)?,
        });
    }
    let complex = GradedComplex::new(lo as i32, groups)?;
    Ok(Summand { weight: w.clone(), complex, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn wv(v: &[u8]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn names(s: &Summand, d: i32) -> Vec<alloc::string::String> {
        s.basis(d).map(|m| m.to_string()).collect()
    }

    #[test]
    fn worked_summands() {
        let s = build_summand(&wv(&[1, 2, 3])).unwrap();
        assert_eq!(names(&s, 0), ["∅"]);
        let s = build_summand(&wv(&[2, 3, 2, 3])).unwrap();
        assert_eq!(names(&s, 2), ["e13e24", "e14e23"]);
        assert_eq!(names(&s, 3), ["e12e23e24", "e13e23e34"]);
        let s = build_summand(&wv(&[2, 2, 2])).unwrap();
        assert_eq!(names(&s, 1), ["e13"]);
        assert_eq!(names(&s, 2), ["e12e23"]);
    }

    #[test]
    fn partition_of_full_basis() {
        for n in 1..=6 {
            let total: usize = crate::weights::enumerate_weights(n)
                .iter()
                .map(|w| build_summand(w).unwrap().len())
                .sum();
            assert_eq!(total, 1 << (n * (n - 1) / 2));
        }
    }

    #[test]
    fn size_counter_respects_limit() {
        let w = wv(&[2, 4, 7, 5, 4, 2, 5, 7]);
        assert_eq!(summand_size(&w, u64::MAX), 192);
        assert_eq!(summand_size(&w, 10), 10);
    }
}
