//! Graded chain complexes of free abelian groups and the operations used to
//! combine them: shift, direct sum, mapping cone, sub- and quotient complexes.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exterior::Monomial;
use crate::matrix::SparseMatrix;

/// Label of a basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Wedge(Monomial),
    /// A basis element with no monomial meaning, e.g. in a mapping cone.
    Opaque(u32),
}

impl Cell {
    pub fn monomial(self) -> Option<Monomial> {
        match self {
            Cell::Wedge(m) => Some(m),
            Cell::Opaque(_) => None,
        }
    }
}

/// One degree of a complex: its basis and the boundary into the degree below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainGroup {
    pub cells: Vec<Cell>,
    /// Rows index the basis one degree lower (zero rows at the bottom degree).
    pub boundary: SparseMatrix,
}

/// A bounded chain complex `C_lo, ..., C_hi` with an extra homological shift.
///
/// Groups are stored contiguously from raw degree `base`; the degree reported
/// to callers is `raw + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedComplex {
    base: i32,
    groups: Vec<ChainGroup>,
    shift: i32,
}

impl GradedComplex {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Assembles a complex whose lowest group sits at reported degree `lowest`.
    pub fn new(lowest: i32, groups: Vec<ChainGroup>) -> Result<Self> {
        let mut below = 0usize;
        for g in &groups {
            if g.boundary.ncols() != g.cells.len() || g.boundary.nrows() != below {
                return Err(Error::DimensionMismatch("boundary does not match adjacent bases"));
            }
            below = g.cells.len();
        }
        Ok(Self { base: lowest, groups, shift: 0 })
    }

    /// Single-degree complex of rank `rank` at `degree` with opaque labels.
    pub fn free(degree: i32, rank: usize) -> Self {
        let cells = (0..rank as u32).map(Cell::Opaque).collect();
        let group = ChainGroup { cells, boundary: SparseMatrix::zero(0, rank) };
        Self { base: degree, groups: vec![group], shift: 0 }
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// The same complex with every degree raised by `k`.
    pub fn shifted(&self, k: i32) -> Self {
        let mut c = self.clone();
        c.shift += k;
        c
    }

    /// Reported degree of the lowest stored group.
    pub fn lowest_degree(&self) -> i32 {
        self.base + self.shift
    }

    /// Reported degrees carrying a stored group, ascending.
    pub fn degrees(&self) -> core::ops::Range<i32> {
        let lo = self.lowest_degree();
        lo..lo + self.groups.len() as i32
    }

    fn index(&self, degree: i32) -> Option<usize> {
        let i = degree - self.lowest_degree();
        (i >= 0 && (i as usize) < self.groups.len()).then_some(i as usize)
    }

    pub fn group(&self, degree: i32) -> Option<&ChainGroup> {
        self.index(degree).map(|i| &self.groups[i])
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.group(degree).map_or(0, |g| g.cells.len())
    }

    pub fn cells(&self, degree: i32) -> &[Cell] {
        self.group(degree).map_or(&[], |g| g.cells.as_slice())
    }

    /// Boundary `C_degree -> C_{degree-1}`; `None` when `C_degree` is not stored.
    pub fn boundary(&self, degree: i32) -> Option<&SparseMatrix> {
        self.group(degree).map(|g| &g.boundary)
    }

    /// Boundary as a matrix even where one side is missing (then it is empty).
    pub fn boundary_or_zero(&self, degree: i32) -> SparseMatrix {
        match self.boundary(degree) {
            Some(b) => b.clone(),
            None => SparseMatrix::zero(self.dim(degree - 1), self.dim(degree)),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.groups.iter().map(|g| g.cells.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Verifies `∂∘∂ = 0` in every degree.
    pub fn check_complex(&self) -> Result<()> {
        for k in self.degrees().skip(1) {
            let upper = &self.groups[self.index(k).unwrap()].boundary;
            let lower = &self.groups[self.index(k - 1).unwrap()].boundary;
            if !lower.mul(upper)?.is_zero() {
                return Err(Error::NotAComplex { degree: k });
            }
        }
        Ok(())
    }

    /// Euler characteristic `Σ (-1)^k dim C_k` in reported degrees.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| if k.rem_euclid(2) == 0 { self.dim(k) as i64 } else { -(self.dim(k) as i64) })
            .sum()
    }

    /// Restriction to the cells accepted by `keep`, which must span a subcomplex.
    pub fn subcomplex<F: Fn(i32, usize, &Cell) -> bool>(&self, keep: F) -> Result<GradedComplex> {
        let kept: Vec<Vec<usize>> = self
            .degrees()
            .map(|k| (0..self.dim(k)).filter(|&i| keep(k, i, &self.cells(k)[i])).collect())
            .collect();
        // boundaries of kept cells may not leave the kept set
        for (idx, k) in self.degrees().enumerate().skip(1) {
            let lower = &kept[idx - 1];
            let b = &self.groups[idx].boundary;
            let mut in_lower = vec![false; b.nrows()];
            for &r in lower {
                in_lower[r] = true;
            }
            for &j in &kept[idx] {
                if b.column(j).iter().any(|e| !in_lower[e.0 as usize]) {
                    return Err(Error::NotAComplex { degree: k });
                }
            }
        }
        Ok(self.restrict(&kept))
    }

    /// Quotient by the subcomplex spanned by the cells accepted by `drop`.
    pub fn quotient<F: Fn(i32, usize, &Cell) -> bool>(&self, drop: F) -> Result<GradedComplex> {
        // the dropped cells must themselves form a subcomplex
        self.subcomplex(&drop)?;
        let kept: Vec<Vec<usize>> = self
            .degrees()
            .map(|k| (0..self.dim(k)).filter(|&i| !drop(k, i, &self.cells(k)[i])).collect())
            .collect();
        Ok(self.restrict(&kept))
    }

    fn restrict(&self, kept: &[Vec<usize>]) -> GradedComplex {
        let groups = self
            .groups
            .iter()
            .enumerate()
            .map(|(idx, g)| {
                let rows: &[usize] = if idx == 0 { &[] } else { &kept[idx - 1] };
                ChainGroup {
                    cells: kept[idx].iter().map(|&i| g.cells[i]).collect(),
                    boundary: g.boundary.select(rows, &kept[idx]),
                }
            })
            .collect();
        GradedComplex { base: self.base, groups, shift: self.shift }
    }

    /// Re-labels every cell as opaque, numbering within each degree.
    pub fn forget_labels(&self) -> GradedComplex {
        let mut c = self.clone();
        for g in &mut c.groups {
            for (i, cell) in g.cells.iter_mut().enumerate() {
                *cell = Cell::Opaque(i as u32);
            }
        }
        c
    }

    /// The same bases with every boundary negated.
    pub fn negated(&self) -> Result<GradedComplex> {
        let mut c = self.clone();
        for g in &mut c.groups {
            g.boundary = g.boundary.scaled(-1)?;
        }
        Ok(c)
    }

    /// Raw access for transformations that rebuild a complex degree by degree.
    pub fn groups(&self) -> impl Iterator<Item = (i32, &ChainGroup)> {
        self.degrees().zip(self.groups.iter())
    }
}

/// Degree-wise direct sum with block-diagonal boundaries.
pub fn direct_sum(parts: &[GradedComplex]) -> GradedComplex {
    let nonempty: Vec<&GradedComplex> = parts.iter().filter(|c| !c.groups.is_empty()).collect();
    let Some(lo) = nonempty.iter().map(|c| c.lowest_degree()).min() else {
        return GradedComplex::zero();
    };
    let hi = nonempty.iter().map(|c| c.degrees().end).max().unwrap();
    let mut groups = Vec::new();
    for k in lo..hi {
        let mut cells = Vec::new();
        let mut blocks = Vec::new();
        let mut blocks_owned = Vec::new();
        let (mut r0, mut c0) = (0, 0);
        for c in &nonempty {
            cells.extend_from_slice(c.cells(k));
            blocks_owned.push((r0, c0, c.boundary_or_zero(k)));
            r0 += c.dim(k - 1);
            c0 += c.dim(k);
        }
        for (r, c, b) in &blocks_owned {
            blocks.push((*r, *c, b));
        }
        let rows = if k == lo { 0 } else { r0 };
        let boundary = SparseMatrix::assemble(rows, c0, &blocks).expect("blocks fit by construction");
        groups.push(ChainGroup { cells, boundary });
    }
    GradedComplex { base: lo, groups, shift: 0 }
}

/// A degree-preserving map between two complexes, given per reported degree
/// as matrices with rows indexing the target and columns the source.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: GradedComplex,
    target: GradedComplex,
    components: BTreeMap<i32, SparseMatrix>,
}

impl ChainMap {
    /// Checks shapes and the commutation `f ∂ = ∂ f` in every degree.
    pub fn new(source: GradedComplex, target: GradedComplex, components: BTreeMap<i32, SparseMatrix>) -> Result<Self> {
        for (&k, m) in &components {
            if m.nrows() != target.dim(k) || m.ncols() != source.dim(k) {
                return Err(Error::DimensionMismatch("chain map component has wrong shape"));
            }
        }
        let map = Self { source, target, components };
        let lo = map.source.lowest_degree().min(map.target.lowest_degree());
        let hi = map.source.degrees().end.max(map.target.degrees().end);
        for k in lo..=hi {
            let left = map.component(k - 1).mul(&map.source.boundary_or_zero(k))?;
            let right = map.target.boundary_or_zero(k).mul(&map.component(k))?;
            if left != right {
                return Err(Error::NotAChainMap { degree: k });
            }
        }
        Ok(map)
    }

    /// Multiplication by `q` on a complex.
    pub fn scalar(complex: &GradedComplex, q: i64) -> Self {
        let components = complex.degrees().map(|k| (k, SparseMatrix::scalar(complex.dim(k), q))).collect();
        Self { source: complex.clone(), target: complex.clone(), components }
    }

    pub fn identity(complex: &GradedComplex) -> Self {
        Self::scalar(complex, 1)
    }

    pub fn source(&self) -> &GradedComplex {
        &self.source
    }

    pub fn target(&self) -> &GradedComplex {
        &self.target
    }

    pub fn component(&self, degree: i32) -> SparseMatrix {
        self.components
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.target.dim(degree), self.source.dim(degree)))
    }
}

/// Mapping cone of `f: B -> C`: `D_n = B_{n-1} ⊕ C_n` with
/// `∂(b, c) = (∂b, f(b) - ∂c)`.
pub fn cone(f: &ChainMap) -> Result<GradedComplex> {
    let (b, c) = (f.source(), f.target());
    if b.is_zero() && c.is_zero() {
        return Ok(GradedComplex::zero());
    }
    let lo = (b.lowest_degree() + 1).min(c.lowest_degree());
    let hi = b.degrees().end.max(c.degrees().end);
    let dim = |k: i32| b.dim(k - 1) + c.dim(k);
    let mut groups = Vec::new();
    for n in lo..=hi {
        let mut cells: Vec<Cell> = Vec::with_capacity(dim(n));
        cells.extend((0..dim(n) as u32).map(Cell::Opaque));
        let rows = if n == lo { 0 } else { dim(n - 1) };
        let boundary = if rows == 0 {
            SparseMatrix::zero(0, dim(n))
        } else {
            let db = b.boundary_or_zero(n - 1);
            let dc = c.boundary_or_zero(n).scaled(-1)?;
            let fb = f.component(n - 1);
            SparseMatrix::assemble(
                rows,
                dim(n),
                &[(0, 0, &db), (b.dim(n - 2), 0, &fb), (b.dim(n - 2), b.dim(n - 1), &dc)],
            )?
        };
        groups.push(ChainGroup { cells, boundary });
    }
    GradedComplex::new(lo, groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> GradedComplex {
        // ℤ² in degree 0, ℤ in degree 1 with ∂ = (1, -1)ᵀ
        GradedComplex::new(
            0,
            vec![
                ChainGroup { cells: vec![Cell::Opaque(0), Cell::Opaque(1)], boundary: SparseMatrix::zero(0, 2) },
                ChainGroup { cells: vec![Cell::Opaque(0)], boundary: SparseMatrix::from_dense(&[vec![1], vec![-1]]) },
            ],
        )
        .unwrap()
    }

    #[test]
    fn shift_composes() {
        let c = interval();
        assert_eq!(c.shifted(0), c);
        assert_eq!(c.shifted(2).shifted(-5), c.shifted(-3));
        assert_eq!(c.shifted(1).dim(2), 1);
    }

    #[test]
    fn direct_sum_of_nothing_is_zero() {
        assert!(direct_sum(&[]).is_zero());
        let s = direct_sum(&[interval(), interval().shifted(1)]);
        assert_eq!(s.total_dim(), 6);
        assert_eq!(s.dim(1), 3);
        s.check_complex().unwrap();
    }

    #[test]
    fn cone_of_scalar_is_a_complex() {
        let c = interval();
        let d = cone(&ChainMap::scalar(&c, 3)).unwrap();
        d.check_complex().unwrap();
        assert_eq!(d.total_dim(), 2 * c.total_dim());
        assert_eq!(d.euler_characteristic(), 0);
    }

    #[test]
    fn non_chain_map_rejected() {
        let c = interval();
        let mut comps = BTreeMap::new();
        comps.insert(1, SparseMatrix::identity(1));
        assert_eq!(ChainMap::new(c.clone(), c, comps).err(), Some(Error::NotAChainMap { degree: 1 }));
    }

    #[test]
    fn sub_and_quotient() {
        let c = interval();
        let sub = c.subcomplex(|k, _, _| k == 0).unwrap();
        assert_eq!(sub.total_dim(), 2);
        assert!(c.subcomplex(|k, _, _| k == 1).is_err());
        let q = c.quotient(|k, i, _| k == 0 && i == 1).unwrap();
        assert_eq!(q.boundary(1).unwrap().to_dense(), vec![vec![1]]);
    }
}
