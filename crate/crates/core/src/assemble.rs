//! Whole-algebra tables: the Mahonian free part plus torsion summed over the
//! summands of `T_n`, one computation per symmetry class.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result, UnfinishedOrbit};
use crate::exterior::MAX_N;
use crate::homology::{DegreeHomology, HomologyProfile, PrimePower};
use crate::reduce::{
    rule_adjacent_pair, rule_cone_33, rule_cone_two_two, rule_triple, ProfileCache, Reducer, RuleSet,
};
use crate::reference::reference_rows;
use crate::summand::summand_size;
use crate::weights::{canonicalize, for_each_weight, inversion_monomial, orbit, weight_of, Permutation, WeightClass, WeightVector};

/// Number of permutations of `[n]` with `k` inversions.
pub fn mahonian(n: usize, k: usize) -> u64 {
    free_part(n).get(k).copied().unwrap_or(0)
}

/// Mahonian row `T(n, 0..=n(n-1)/2)` via `T(n,k) = Σ_{j ≤ min(k,n-1)} T(n-1,k-j)`.
pub fn free_part(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for m in 2..=n {
        let len = row.len() + m - 1;
        row = (0..len).map(|k| (0..m.min(k + 1)).filter_map(|j| row.get(k - j)).sum()).collect();
    }
    row
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableRow {
    pub free_rank: u64,
    /// Multiplicity of each cyclic factor.
    pub torsion: BTreeMap<PrimePower, u64>,
}

impl TableRow {
    fn add(&mut self, h: &DegreeHomology) {
        self.free_rank += h.free_rank;
        for &t in &h.torsion {
            *self.torsion.entry(t).or_insert(0) += 1;
        }
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(exp("ℤ".into(), self.free_rank));
        }
        for (g, &c) in &self.torsion {
            parts.push(exp(alloc::format!("{g}"), c));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

fn exp(base: alloc::string::String, count: u64) -> alloc::string::String {
    if count == 1 {
        base
    } else {
        alloc::format!("{base}^{count}")
    }
}

/// Contribution of one symmetry class to a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitContribution {
    pub canonical: WeightVector,
    pub members: u64,
    /// Homology of the canonical summand itself.
    pub profile: HomologyProfile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilTable {
    pub n: usize,
    /// Every degree `0..=n(n-1)/2`, trivial ones included.
    pub rows: BTreeMap<i32, TableRow>,
    pub provenance: Vec<OrbitContribution>,
}

impl NilTable {
    pub fn empty(n: usize) -> Self {
        let rows = (0..=top(n)).map(|k| (k, TableRow::default())).collect();
        Self { n, rows, provenance: Vec::new() }
    }

    pub fn top_degree(&self) -> i32 {
        top(self.n)
    }

    pub fn row(&self, k: i32) -> TableRow {
        self.rows.get(&k).cloned().unwrap_or_default()
    }

    pub fn add_profile(&mut self, p: &HomologyProfile) {
        for (d, h) in p.iter() {
            self.rows.entry(d).or_default().add(h);
        }
    }

    /// The published table, `2 <= n <= 8`.
    pub fn reference(n: usize) -> Result<Self> {
        let mut t = Self::empty(n);
        for r in reference_rows(n)? {
            t.rows.insert(r.degree, TableRow { free_rank: r.free_rank, torsion: r.torsion.into_iter().collect() });
        }
        Ok(t)
    }

    /// Degrees `k` where the torsion differs from that in `N - 1 - k`.
    pub fn duality_failures(&self) -> Vec<i32> {
        let n = self.top_degree();
        (0..n).filter(|&k| self.row(k).torsion != self.row(n - 1 - k).torsion).collect()
    }

    /// Degrees `k` where the free rank differs from that in `N - k`.
    pub fn palindrome_failures(&self) -> Vec<i32> {
        let n = self.top_degree();
        (0..=n).filter(|&k| self.row(k).free_rank != self.row(n - k).free_rank).collect()
    }

    /// Torsion primes larger than `n - 2`.
    pub fn dwyer_violations(&self) -> Vec<(i32, u64)> {
        let bound = self.n as u64 - 2;
        self.rows
            .iter()
            .flat_map(|(&k, r)| r.torsion.keys().filter(move |g| g.prime > bound).map(move |g| (k, g.prime)))
            .collect()
    }

    pub fn torsion_orders(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.rows.values().flat_map(|r| r.torsion.keys().map(|g| g.order())).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for NilTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "H_k(nil_{}; ℤ)", self.n)?;
        let width = alloc::format!("{}", self.top_degree()).len();
        for (k, r) in &self.rows {
            writeln!(f, "{k:>width$}  {r}")?;
        }
        Ok(())
    }
}

fn top(n: usize) -> i32 {
    (n * n.saturating_sub(1) / 2) as i32
}

/// The symmetry classes of `T_n` and their sizes.
#[derive(Clone, Debug)]
pub struct TablePlan {
    n: usize,
    classes: BTreeMap<WeightVector, u64>,
}

impl TablePlan {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::AmbientOutOfRange { n, max: MAX_N });
        }
        let mut classes = BTreeMap::new();
        for_each_weight(n, |e| {
            let w = WeightVector::new_unchecked(e.to_vec());
            if !w.is_permutation() {
                *classes.entry(canonicalize(&w).canonical).or_insert(0) += 1;
            }
        });
        Ok(Self { n, classes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> impl Iterator<Item = (&WeightVector, u64)> {
        self.classes.iter().map(|(w, &c)| (w, c))
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Combines per-class profiles (in canonical coordinates) into the table,
    /// transporting each to every member of its class.
    pub fn assemble(&self, results: &BTreeMap<WeightVector, HomologyProfile>) -> NilTable {
        let mut table = NilTable::empty(self.n);
        for (k, r) in free_part(self.n).into_iter().enumerate() {
            table.rows.get_mut(&(k as i32)).unwrap().free_rank = r;
        }
        for_each_weight(self.n, |e| {
            let w = WeightVector::new_unchecked(e.to_vec());
            if w.is_permutation() {
                return;
            }
            let cert = canonicalize(&w);
            if let Some(p) = results.get(&cert.canonical) {
                table.add_profile(&cert.transport(p));
            }
        });
        table.provenance = self
            .classes
            .iter()
            .filter_map(|(w, &members)| {
                results.get(w).map(|p| OrbitContribution { canonical: w.clone(), members, profile: p.clone() })
            })
            .collect();
        table
    }
}

/// Vectors in the middle of `S_n`, where the largest summands sit.
pub fn central_vectors(n: usize) -> Vec<WeightVector> {
    let h = n.div_ceil(2) as u8;
    let v: Vec<u8> = if n % 2 == 1 {
        vec![h; n]
    } else {
        (0..n).map(|i| if i % 2 == 0 { h } else { h + 1 }).collect()
    };
    vec![WeightVector::new_unchecked(v)]
}

/// Whether the reducer settles `w` by pattern alone (no recursion needed to
/// decide that a rule applies).
pub fn settled_by_pattern(w: &WeightVector, rules: RuleSet) -> bool {
    let c = canonicalize(w).canonical;
    matches!(c.classify(), WeightClass::Permutation(_))
        || (rules.strip && (c.contains(1) || c.contains(c.n() as u8)))
        || (rules.triple && rule_triple(&c))
        || (rules.adjacent && rule_adjacent_pair(&c))
        || (rules.cone && orbit(&c).iter().any(|(u, _)| rule_cone_33(u).is_some() || rule_cone_two_two(u).is_some()))
}

/// Fails fast when a central summand that no pattern settles exceeds `cap`.
pub fn preflight(n: usize, cap: u64, rules: RuleSet) -> Result<()> {
    let mut unfinished = Vec::new();
    for w in central_vectors(n) {
        if settled_by_pattern(&w, rules) {
            continue;
        }
        let size = summand_size(&w, cap.saturating_add(1));
        if size > cap {
            unfinished.push(UnfinishedOrbit { weight: canonicalize(&w).canonical, basis_size: size });
        }
    }
    if unfinished.is_empty() {
        Ok(())
    } else {
        Err(Error::ResourceLimitExceeded { cap, unfinished })
    }
}

/// Computes every class of the plan in turn. Classes over the cap are
/// collected and reported together.
pub fn full_table<C: ProfileCache + ?Sized>(n: usize, reducer: &Reducer<'_, C>) -> Result<NilTable> {
    let plan = TablePlan::new(n)?;
    let mut results = BTreeMap::new();
    let mut unfinished = Vec::new();
    for (w, _) in plan.classes() {
        match reducer.profile(w) {
            Ok(p) => {
                results.insert(w.clone(), p);
            }
            Err(Error::ResourceLimitExceeded { unfinished: u, .. }) => unfinished.extend(u),
            Err(e) => return Err(e),
        }
    }
    if !unfinished.is_empty() {
        return Err(Error::ResourceLimitExceeded { cap: reducer.config().cap, unfinished });
    }
    Ok(plan.assemble(&results))
}

/// A class in rational cohomology: `±x_σ` or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CupClass {
    Zero,
    Class { sign: i64, permutation: Permutation },
}

impl CupClass {
    pub fn unit(n: usize) -> Self {
        CupClass::Class { sign: 1, permutation: Permutation::identity(n) }
    }
}

/// `x_π ⌣ x_π'`: the dual of `e_π ∧ e_π'` when that wedge is the inversion
/// wedge of some permutation, and zero otherwise.
pub fn cup_product(a: &Permutation, b: &Permutation) -> Result<CupClass> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch("permutations of different sizes"));
    }
    let Some((sign, m)) = inversion_monomial(a).wedge(inversion_monomial(b)) else {
        return Ok(CupClass::Zero);
    };
    let w = weight_of(m, a.n());
    Ok(match w.classify() {
        WeightClass::Permutation(p) if inversion_monomial(&p) == m => CupClass::Class { sign, permutation: p },
        _ => CupClass::Zero,
    })
}

/// Product of classes, extending [`cup_product`] bilinearly.
pub fn cup_classes(a: &CupClass, b: &CupClass) -> Result<CupClass> {
    match (a, b) {
        (CupClass::Class { sign: s, permutation: p }, CupClass::Class { sign: t, permutation: q }) => {
            Ok(match cup_product(p, q)? {
                CupClass::Class { sign, permutation } => CupClass::Class { sign: sign * s * t, permutation },
                CupClass::Zero => CupClass::Zero,
            })
        }
        _ => Ok(CupClass::Zero),
    }
}

/// Where a table disagrees with the published one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub degree: i32,
    /// `None` for the free part, otherwise the cyclic factor.
    pub group: Option<PrimePower>,
    pub expected: u64,
    pub actual: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group {
            None => write!(f, "H_{}: rank of ℤ is {}, expected {}", self.degree, self.actual, self.expected),
            Some(g) => write!(f, "H_{}: multiplicity of {g} is {}, expected {}", self.degree, self.actual, self.expected),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every degree's free rank and torsion multiplicities.
pub fn verify_against_reference(table: &NilTable) -> Result<VerificationReport> {
    let reference = NilTable::reference(table.n)?;
    Ok(VerificationReport { n: table.n, mismatches: compare(&reference, table) })
}

pub fn compare(expected: &NilTable, actual: &NilTable) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let degrees: alloc::collections::BTreeSet<i32> = expected.rows.keys().chain(actual.rows.keys()).copied().collect();
    for k in degrees {
        let (e, a) = (expected.row(k), actual.row(k));
        if e.free_rank != a.free_rank {
            out.push(Mismatch { degree: k, group: None, expected: e.free_rank, actual: a.free_rank });
        }
        let groups: alloc::collections::BTreeSet<PrimePower> = e.torsion.keys().chain(a.torsion.keys()).copied().collect();
        for g in groups {
            let (x, y) = (e.torsion.get(&g).copied().unwrap_or(0), a.torsion.get(&g).copied().unwrap_or(0));
            if x != y {
                out.push(Mismatch { degree: k, group: Some(g), expected: x, actual: y });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::{LocalCache, ReduceConfig};

    #[test]
    fn mahonian_values() {
        assert_eq!(mahonian(4, 2), 5);
        assert_eq!(mahonian(5, 3), 15);
        assert_eq!(mahonian(7, 0), 1);
        assert_eq!(free_part(4), vec![1, 3, 5, 6, 5, 3, 1]);
        assert_eq!(free_part(2), vec![1, 1]);
        for n in 1..=8u64 {
            assert_eq!(free_part(n as usize).iter().sum::<u64>(), (1..=n).product());
        }
    }

    #[test]
    fn small_tables_match() {
        for n in 2..=5 {
            let cache = LocalCache::new();
            let t = full_table(n, &Reducer::new(ReduceConfig::default(), &cache)).unwrap();
            let report = verify_against_reference(&t).unwrap();
            assert!(report.passed(), "n={n}: {:?}", report.mismatches);
        }
    }

    #[test]
    fn corrupted_table_reported() {
        let mut t = NilTable::reference(4).unwrap();
        t.rows.get_mut(&2).unwrap().torsion.insert(PrimePower::new(3, 1), 1);
        let r = verify_against_reference(&t).unwrap();
        assert_eq!(r.mismatches, vec![Mismatch { degree: 2, group: Some(PrimePower::new(3, 1)), expected: 0, actual: 1 }]);
    }

    #[test]
    fn cup_examples() {
        let p = |v: &[u8]| Permutation::new(v.to_vec()).unwrap();
        assert_eq!(cup_product(&p(&[2, 1, 3]), &p(&[2, 1, 3])).unwrap(), CupClass::Zero);
        assert_eq!(cup_product(&p(&[2, 1, 3]), &p(&[1, 3, 2])).unwrap(), CupClass::Zero);
        match cup_product(&p(&[1, 3, 2]), &p(&[3, 1, 2])).unwrap() {
            CupClass::Class { permutation, .. } => assert_eq!(permutation, p(&[3, 2, 1])),
            CupClass::Zero => panic!("expected a class"),
        }
    }

    #[test]
    fn preflight_limits() {
        assert!(preflight(6, 200_000, RuleSet::ALL).is_ok());
        assert!(matches!(preflight(9, 200_000, RuleSet::ALL), Err(Error::ResourceLimitExceeded { .. })));
    }
}
