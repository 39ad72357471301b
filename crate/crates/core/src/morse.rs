//! Algebraic Morse theory: validation of matchings, the reduced boundary on
//! critical cells, and the explicit matchings used for weight summands.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::complex::{ChainGroup, ChainMap, GradedComplex};
use crate::error::{Error, Result};
use crate::exterior::{Generator, Monomial};
use crate::matrix::SparseMatrix;
use crate::summand::Summand;

/// A matched edge from `upper` (in `degree`) to `lower` (in `degree - 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatchedPair {
    pub degree: i32,
    pub upper: usize,
    pub lower: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<MatchedPair>,
}

impl Matching {
    pub fn new(mut pairs: Vec<MatchedPair>) -> Self {
        pairs.sort_unstable();
        Self { pairs }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn pairs(&self) -> &[MatchedPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Critical(u32),
    /// Upper end of a pair.
    Source,
    /// Lower end of a pair; holds the index of the upper end.
    Target(u32),
}

/// Per-degree roles of all cells under a matching.
struct Roles {
    lo: i32,
    roles: Vec<Vec<Role>>,
}

impl Roles {
    fn of(&self, degree: i32, i: usize) -> Role {
        self.roles[(degree - self.lo) as usize][i]
    }
}

fn assign_roles(c: &GradedComplex, m: &Matching) -> Result<Roles> {
    let lo = c.lowest_degree();
    let mut roles: Vec<Vec<Option<Role>>> = c.degrees().map(|k| vec![None; c.dim(k)]).collect();
    for p in m.pairs() {
        if p.upper >= c.dim(p.degree) || p.lower >= c.dim(p.degree - 1) {
            return Err(Error::DimensionMismatch("matched cell out of range"));
        }
        let coefficient = c.boundary(p.degree).map_or(0, |b| b.get(p.lower, p.upper));
        if coefficient.abs() != 1 {
            return Err(Error::NonInvertibleEdge { degree: p.degree, upper: p.upper, lower: p.lower, coefficient });
        }
        for (d, i, role) in [(p.degree, p.upper, Role::Source), (p.degree - 1, p.lower, Role::Target(p.upper as u32))] {
            let slot = &mut roles[(d - lo) as usize][i];
            if slot.is_some() {
                return Err(Error::DuplicateMatch { degree: d, cell: i });
            }
            *slot = Some(role);
        }
    }
    let roles = roles
        .into_iter()
        .map(|layer| {
            let mut next = 0;
            layer
                .into_iter()
                .map(|r| {
                    r.unwrap_or_else(|| {
                        next += 1;
                        Role::Critical(next - 1)
                    })
                })
                .collect()
        })
        .collect();
    Ok(Roles { lo, roles })
}

/// Checks invertibility and acyclicity of a matching.
pub fn validate_matching(c: &GradedComplex, m: &Matching) -> Result<()> {
    let roles = assign_roles(c, m)?;
    for k in c.degrees().skip(1) {
        check_layer(c, &roles, k)?;
    }
    Ok(())
}

/// Kahn sort on the graph between degrees `k` and `k-1`, with matched edges
/// reversed. Nodes `0..a` are upper cells, `a..a+b` lower cells.
fn check_layer(c: &GradedComplex, roles: &Roles, k: i32) -> Result<()> {
    let b = c.boundary(k).unwrap();
    let a = c.dim(k);
    let total = a + c.dim(k - 1);
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); total];
    let mut indeg = vec![0u32; total];
    for (u, col) in b.columns().enumerate() {
        for &(v, _) in col {
            let lower = a + v as usize;
            let matched = matches!(roles.of(k - 1, v as usize), Role::Target(up) if up as usize == u);
            let (from, to) = if matched { (lower, u) } else { (u, lower) };
            adj[from].push(to as u32);
            indeg[to] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..total).filter(|&x| indeg[x] == 0).collect();
    let mut seen = 0;
    while let Some(x) = queue.pop() {
        seen += 1;
        for &y in &adj[x] {
            indeg[y as usize] -= 1;
            if indeg[y as usize] == 0 {
                queue.push(y as usize);
            }
        }
    }
    if seen == total {
        return Ok(());
    }
    // walk inside the leftover nodes until a node repeats
    let alive = |x: usize| indeg[x] > 0;
    let start = (0..total).find(|&x| alive(x)).unwrap();
    let mut path = vec![start];
    let mut pos: BTreeMap<usize, usize> = BTreeMap::new();
    pos.insert(start, 0);
    loop {
        let x = *path.last().unwrap();
        let y = adj[x].iter().map(|&y| y as usize).find(|&y| alive(y)).unwrap();
        if let Some(&i) = pos.get(&y) {
            let cycle = path[i..]
                .iter()
                .map(|&z| if z < a { (k, z) } else { (k - 1, z - a) })
                .collect();
            return Err(Error::DirectedCycle { degree: k, cycle });
        }
        pos.insert(y, path.len());
        path.push(y);
    }
}

/// The complex on critical cells with the zig-zag boundary.
#[derive(Clone, Debug)]
pub struct ReducedComplex {
    pub complex: GradedComplex,
    /// For each degree of the reduced complex, the original indices of its cells.
    pub critical: BTreeMap<i32, Vec<usize>>,
    pub matching: Matching,
}

pub fn reduce_by_matching(c: &GradedComplex, m: &Matching) -> Result<ReducedComplex> {
    validate_matching(c, m)?;
    let roles = assign_roles(c, m)?;
    let mut critical = BTreeMap::new();
    for k in c.degrees() {
        let list: Vec<usize> = (0..c.dim(k)).filter(|&i| matches!(roles.of(k, i), Role::Critical(_))).collect();
        critical.insert(k, list);
    }
    let mut groups = Vec::new();
    for k in c.degrees() {
        let cells = critical[&k].iter().map(|&i| c.cells(k)[i]).collect();
        let ncols = critical[&k].len();
        let boundary = if k == c.lowest_degree() {
            SparseMatrix::zero(0, ncols)
        } else {
            let mut phi = Flow::new(c, &roles, k - 1);
            let b = c.boundary(k).unwrap();
            let mut cols = Vec::with_capacity(ncols);
            for &u in &critical[&k] {
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for &(v, a) in b.column(u) {
                    for &(t, x) in phi.get(v as usize)? {
                        let e = acc.entry(t).or_insert(0);
                        *e = e.checked_add(a.checked_mul(x).ok_or(Error::CoefficientOverflow)?).ok_or(Error::CoefficientOverflow)?;
                    }
                }
                cols.push(acc.into_iter().filter(|e| e.1 != 0).collect());
            }
            SparseMatrix::from_columns(critical[&(k - 1)].len(), cols)?
        };
        groups.push(ChainGroup { cells, boundary });
    }
    let complex = GradedComplex::new(c.lowest_degree(), groups)?;
    Ok(ReducedComplex { complex, critical, matching: m.clone() })
}

/// Memoised images of degree-`d` cells in the critical cells of degree `d`,
/// following zig-zag paths through matched pairs.
struct Flow<'a> {
    c: &'a GradedComplex,
    roles: &'a Roles,
    degree: i32,
    memo: Vec<Option<Vec<(u32, i64)>>>,
}

impl<'a> Flow<'a> {
    fn new(c: &'a GradedComplex, roles: &'a Roles, degree: i32) -> Self {
        Self { c, roles, degree, memo: vec![None; c.dim(degree)] }
    }

    fn get(&mut self, v: usize) -> Result<&[(u32, i64)]> {
        if self.memo[v].is_none() {
            self.fill(v)?;
        }
        Ok(self.memo[v].as_deref().unwrap())
    }

    fn fill(&mut self, root: usize) -> Result<()> {
        let up = self.c.boundary(self.degree + 1);
        let mut stack = vec![root];
        while let Some(&v) = stack.last() {
            if self.memo[v].is_some() {
                stack.pop();
                continue;
            }
            match self.roles.of(self.degree, v) {
                Role::Critical(i) => self.memo[v] = Some(vec![(i, 1)]),
                Role::Source => self.memo[v] = Some(Vec::new()),
                Role::Target(u) => {
                    let col = up.unwrap().column(u as usize);
                    if let Some(&(next, _)) = col.iter().find(|e| e.0 as usize != v && self.memo[e.0 as usize].is_none()) {
                        stack.push(next as usize);
                        continue;
                    }
                    // v = -b (Σ_{v' ≠ v} [∂u : v'] v') with b = [∂u : v] = ±1
                    let b = col.iter().find(|e| e.0 as usize == v).unwrap().1;
                    let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                    for &(w, a) in col {
                        if w as usize == v {
                            continue;
                        }
                        for &(t, x) in self.memo[w as usize].as_ref().unwrap() {
                            let term = a.checked_mul(x).and_then(|y| y.checked_mul(-b)).ok_or(Error::CoefficientOverflow)?;
                            let e = acc.entry(t).or_insert(0);
                            *e = e.checked_add(term).ok_or(Error::CoefficientOverflow)?;
                        }
                    }
                    self.memo[v] = Some(acc.into_iter().filter(|e| e.1 != 0).collect());
                }
            }
            stack.pop();
        }
        Ok(())
    }
}

fn gen(r: u8, c: u8) -> Generator {
    Generator::new_unchecked(r, c)
}

/// The unique `e_1x` in a wedge of a summand with `w_1 = 2`.
fn first_row_target(m: Monomial) -> Option<u8> {
    m.generators().find(|g| g.row() == 1).map(|g| g.col())
}

/// Perfect matching `e12 e2i e_M → e1i e_M` on a summand with `w_1 = w_2 = 2`.
pub fn matching_two_two(s: &Summand) -> Result<Matching> {
    let w = s.weight();
    if w.n() < 2 || w.at(1) != 2 || w.at(2) != 2 {
        return Err(Error::PatternMismatch("(2,2,…)"));
    }
    let mut pairs = Vec::new();
    for d in s.complex().degrees() {
        for (upper, m) in s.basis(d).enumerate() {
            if !m.contains(gen(1, 2)) {
                continue;
            }
            let i = m.generators().find(|g| g.row() == 2).ok_or(Error::PatternMismatch("(2,2,…)"))?.col();
            let target = m.without(gen(1, 2)).without(gen(2, i)).with(gen(1, i));
            let (_, lower) = s.locate(target).ok_or(Error::PatternMismatch("(2,2,…)"))?;
            pairs.push(MatchedPair { degree: d, upper, lower });
        }
    }
    Ok(Matching::new(pairs))
}

/// For `w = (2,3,3,…)`: the quotient of `⟦w⟧` by the wedges containing some
/// `e_1i` with `i ≥ 4`, and the matching `e12 e23 e_M → e13 e_M` on it.
/// The critical cells are the wedges `e13 e23 …` and `e12 e2a e2b …`.
pub fn matching_two_three_three(s: &Summand) -> Result<(GradedComplex, Matching)> {
    let w = s.weight();
    if w.n() < 3 || w.entries()[..3] != [2, 3, 3] {
        return Err(Error::PatternMismatch("(2,3,3,…)"));
    }
    let far = |m: Monomial| first_row_target(m).is_some_and(|x| x >= 4);
    let q = s.complex().quotient(|_, _, cell| cell.monomial().is_some_and(far))?;
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for d in q.degrees() {
        for (i, cell) in q.cells(d).iter().enumerate() {
            index.insert(cell.monomial().unwrap(), i);
        }
    }
    let mut pairs = Vec::new();
    for d in q.degrees() {
        for (upper, cell) in q.cells(d).iter().enumerate() {
            let m = cell.monomial().unwrap();
            if m.contains(gen(1, 2)) && m.contains(gen(2, 3)) {
                let target = m.without(gen(1, 2)).without(gen(2, 3)).with(gen(1, 3));
                let &lower = index.get(&target).ok_or(Error::PatternMismatch("(2,3,3,…)"))?;
                pairs.push(MatchedPair { degree: d, upper, lower });
            }
        }
    }
    Ok((q, Matching::new(pairs)))
}

/// Reduction of a summand `w = (2, w_2, …, w_{k-1}, 2, w_{k+1}, …, w_n)`
/// onto the critical cells `A ∪ B`, where every wedge holds exactly one
/// `e_1x` and
///
/// * `A`: `x = k` and row `k` has one entry `e_ka`,
/// * `B`: `x > k`.
///
/// `B` spans a subcomplex and `A` the quotient, so the reduced complex is the
/// cone of the `A → B` part of its boundary.
#[derive(Clone, Debug)]
pub struct SecondTwoReduction {
    pub k: usize,
    pub reduced: ReducedComplex,
    /// `A` with its own boundary, one degree down.
    pub phi: ChainMap,
    /// Original wedges of `A` and `B` per degree, in reduced-basis order.
    pub a_cells: BTreeMap<i32, Vec<Monomial>>,
    pub b_cells: BTreeMap<i32, Vec<Monomial>>,
}

impl SecondTwoReduction {
    /// `ι(e_{1k} e_{ka} e_M) = e_{1a} e_M`, the bijection from `A` onto the
    /// part of `B` one degree lower.
    pub fn iota(&self, a: Monomial) -> Option<Monomial> {
        let k = self.k as u8;
        let x = a.generators().find(|g| g.row() == k)?.col();
        Some(a.without(gen(1, k)).without(gen(k, x)).with(gen(1, x)))
    }
}

/// Builds the matching `e_1a e_ak e_M → e_1k e_M` (for `a < k`) and the
/// resulting reduction. `k` is the 1-based position of the second 2.
pub fn matching_second_two(s: &Summand, k: usize) -> Result<SecondTwoReduction> {
    let w = s.weight();
    if k < 2 || k > w.n() || w.at(1) != 2 || w.at(k) != 2 {
        return Err(Error::PatternMismatch("(2,…,2 at k,…)"));
    }
    let kk = k as u8;
    let c = s.complex();
    let mut pairs = Vec::new();
    let mut is_b = BTreeSet::new();
    for d in c.degrees() {
        for (upper, m) in s.basis(d).enumerate() {
            let x = first_row_target(m).ok_or(Error::PatternMismatch("(2,…)"))?;
            if x < kk {
                let target = m.without(gen(1, x)).without(gen(x, kk)).with(gen(1, kk));
                let (_, lower) = s.locate(target).ok_or(Error::PatternMismatch("(2,…,2 at k,…)"))?;
                pairs.push(MatchedPair { degree: d, upper, lower });
            } else if x > kk {
                is_b.insert(m);
            }
        }
    }
    let matching = Matching::new(pairs);
    let reduced = reduce_by_matching(c, &matching)?;
    let rc = &reduced.complex;
    let in_b = |cell: &crate::complex::Cell| cell.monomial().is_some_and(|m| is_b.contains(&m));
    let b = rc.subcomplex(|_, _, cell| in_b(cell))?;
    let a = rc.quotient(|_, _, cell| in_b(cell))?;
    let mut components = BTreeMap::new();
    let mut a_cells = BTreeMap::new();
    let mut b_cells = BTreeMap::new();
    for d in rc.degrees() {
        let (ai, bi): (Vec<usize>, Vec<usize>) = (0..rc.dim(d)).partition(|&i| !in_b(&rc.cells(d)[i]));
        a_cells.insert(d, ai.iter().map(|&i| rc.cells(d)[i].monomial().unwrap()).collect());
        b_cells.insert(d, bi.iter().map(|&i| rc.cells(d)[i].monomial().unwrap()).collect());
        if d > rc.lowest_degree() {
            let rows: Vec<usize> = (0..rc.dim(d - 1)).filter(|&i| in_b(&rc.cells(d - 1)[i])).collect();
            components.insert(d - 1, rc.boundary(d).unwrap().select(&rows, &ai));
        }
    }
    let phi = ChainMap::new(a.shifted(-1), b.negated()?, components)?;
    Ok(SecondTwoReduction { k, reduced, phi, a_cells, b_cells })
}
