//! Rewriting a summand into smaller problems.
//!
//! Each rule is a standalone function so it can be checked against a direct
//! computation; [`Reducer`] chains them with memoisation and falls back to a
//! Smith normal form when nothing applies.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::complex::{cone, ChainMap};
use crate::error::{Error, Result, UnfinishedOrbit};
use crate::homology::{homology_profile, HomologyProfile};
use crate::summand::{build_summand, summand_size};
use crate::weights::{canonicalize, orbit, WeightClass, WeightVector};

/// Removes one extreme entry. A `1` (first occurrence) is preferred: at
/// 1-based position `k` it is dropped with shift `k - 1` and every other entry
/// is decremented. Otherwise an `n` at position `k` is dropped with shift `n - k`.
/// A result of `None` means the summand is empty (e.g. a second `1` would
/// become `0`).
pub fn strip_extremes(w: &WeightVector) -> Result<(Option<WeightVector>, i32)> {
    let n = w.n();
    let e = w.entries();
    if let Some(p) = e.iter().position(|&v| v == 1) {
        let rest: Vec<i64> = e.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, &v)| v as i64 - 1).collect();
        return Ok((inner_vector(&rest), p as i32));
    }
    if let Some(p) = e.iter().position(|&v| v as usize == n) {
        let rest: Vec<i64> = e.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, &v)| v as i64).collect();
        return Ok((inner_vector(&rest), (n - p - 1) as i32));
    }
    Err(Error::NoExtreme)
}

/// Three entries share a value in `{2, n-1}`.
pub fn rule_triple(w: &WeightVector) -> bool {
    let n = w.n();
    if n < 3 {
        return false;
    }
    [2, n - 1].iter().any(|&v| w.entries().iter().filter(|&&x| x as usize == v).count() >= 3)
}

/// Two cyclically adjacent entries both equal 2 or both equal `n-1`.
pub fn rule_adjacent_pair(w: &WeightVector) -> bool {
    let n = w.n();
    if n < 3 {
        return false;
    }
    let e = w.entries();
    (0..n).any(|i| {
        let (a, b) = (e[i] as usize, e[(i + 1) % n] as usize);
        a == b && (a == 2 || a == n - 1)
    })
}

/// `⟦w⟧` has the homology of the cone of multiplication by `multiplier` on
/// `⟦inner⟧_shift`. An `inner` of `None` stands for an empty summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeRule {
    pub multiplier: u64,
    pub inner: Option<WeightVector>,
    pub shift: i32,
}

impl ConeRule {
    /// The literal cone complex; `None` when the inner summand is empty.
    pub fn complex(&self) -> Result<Option<crate::complex::GradedComplex>> {
        let Some(inner) = &self.inner else { return Ok(None) };
        let c = build_summand(inner)?.into_complex().shifted(self.shift);
        Ok(Some(cone(&ChainMap::scalar(&c, self.multiplier as i64))?))
    }
}

fn inner_vector(entries: &[i64]) -> Option<WeightVector> {
    WeightVector::from_i64(entries).ok()
}

/// `w = (2, w_2, …, w_k, 3, 3, w_{k+3}, …, w_n)` gives multiplier 2 on
/// `⟦w_2-2, …, w_k-2, 3, w_{k+3}-2, …, w_n-2⟧_k`. The smallest `k` is used.
pub fn rule_cone_33(w: &WeightVector) -> Option<ConeRule> {
    let n = w.n();
    let e = w.entries();
    if n < 3 || e[0] != 2 {
        return None;
    }
    let k = (1..=n - 2).find(|&k| e[k] == 3 && e[k + 1] == 3)?;
    let mut inner: Vec<i64> = e[1..k].iter().map(|&v| v as i64 - 2).collect();
    inner.push(3);
    inner.extend(e[k + 2..].iter().map(|&v| v as i64 - 2));
    Some(ConeRule { multiplier: 2, inner: inner_vector(&inner), shift: k as i32 })
}

/// `w = (2, w_2, …, w_{n-2}, 2, w_n)` gives multiplier `w_n - 1` on
/// `⟦w_2-1, …, w_{n-2}-1, 1, w_n⟧_1`.
pub fn rule_cone_two_two(w: &WeightVector) -> Option<ConeRule> {
    let n = w.n();
    let e = w.entries();
    if n < 3 || e[0] != 2 || e[n - 2] != 2 {
        return None;
    }
    let mut inner: Vec<i64> = e[1..n - 2].iter().map(|&v| v as i64 - 1).collect();
    inner.push(1);
    inner.push(e[n - 1] as i64);
    Some(ConeRule { multiplier: e[n - 1] as u64 - 1, inner: inner_vector(&inner), shift: 1 })
}

/// For `w = (2, w_2, …, w_n)`: the summand whose acyclicity licenses the
/// rotation of `w_2` to the end, `(w_2, w_3-1, …, w_n-1)`. `None` when it is
/// empty (and so trivially acyclic).
pub fn rotation_hypothesis(w: &WeightVector) -> Option<WeightVector> {
    let e = w.entries();
    let mut h = vec![e[1] as i64];
    h.extend(e[2..].iter().map(|&v| v as i64 - 1));
    inner_vector(&h)
}

/// If `w_1 = 2` and [`rotation_hypothesis`] is acyclic (decided by
/// `acyclic`), `⟦w⟧ ≅ ⟦2, w_3, …, w_n, w_2⟧_{2w_2-n-2}`.
pub fn rule_rotate_second<F>(w: &WeightVector, mut acyclic: F) -> Result<Option<(WeightVector, i32)>>
where
    F: FnMut(&WeightVector) -> Result<bool>,
{
    let n = w.n();
    if n < 3 || w.at(1) != 2 {
        return Ok(None);
    }
    if let Some(h) = rotation_hypothesis(w) {
        if !acyclic(&h)? {
            return Ok(None);
        }
    }
    Ok(Some(rotated_second(w)))
}

fn rotated_second(w: &WeightVector) -> (WeightVector, i32) {
    let e = w.entries();
    let n = e.len() as i32;
    let mut v = vec![2];
    v.extend_from_slice(&e[2..]);
    v.push(e[1]);
    (WeightVector::new_unchecked(v), 2 * e[1] as i32 - n - 2)
}

/// One summand of a filtration quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationPiece {
    /// 1-based positions `i_1 < … < i_t` of the `e_1i` in the wedge.
    pub indices: Vec<usize>,
    /// Filtration level `i_1 + … + i_t`.
    pub level: usize,
    pub weight: WeightVector,
    pub shift: i32,
}

/// Filtration of `⟦w⟧` by the first row. With `t = w_1 - 1`, each choice of
/// positions `I` gives the piece `(w'_2, …, w'_n)_t` with `w'_j = w_j` for
/// `j ∈ I` and `w_j - 1` otherwise. Choices that give no valid weight
/// vector are empty and skipped.
pub fn filtration_split(w: &WeightVector) -> Vec<FiltrationPiece> {
    let n = w.n();
    if n == 0 {
        return Vec::new();
    }
    let t = w.at(1) as usize - 1;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(t);
    fn go(w: &WeightVector, t: usize, next: usize, chosen: &mut Vec<usize>, out: &mut Vec<FiltrationPiece>) {
        let n = w.n();
        if chosen.len() == t {
            let entries: Vec<i64> =
                (2..=n).map(|j| w.at(j) as i64 - if chosen.contains(&j) { 0 } else { 1 }).collect();
            if let Ok(weight) = WeightVector::from_i64(&entries) {
                out.push(FiltrationPiece {
                    indices: chosen.clone(),
                    level: chosen.iter().sum(),
                    weight,
                    shift: t as i32,
                });
            }
            return;
        }
        for j in next..=n {
            chosen.push(j);
            go(w, t, j + 1, chosen, out);
            chosen.pop();
        }
    }
    go(w, t, 2, &mut chosen, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Symmetry,
    StripExtremes,
    Permutation,
    Triple,
    AdjacentPair,
    Cone33,
    ConeTwoTwo,
    RotateSecond,
    Filtration,
    DirectSnf,
}

impl Rule {
    pub const ALL: [Rule; 10] = [
        Rule::Symmetry,
        Rule::StripExtremes,
        Rule::Permutation,
        Rule::Triple,
        Rule::AdjacentPair,
        Rule::Cone33,
        Rule::ConeTwoTwo,
        Rule::RotateSecond,
        Rule::Filtration,
        Rule::DirectSnf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Symmetry => "symmetry",
            Rule::StripExtremes => "strip-extremes",
            Rule::Permutation => "permutation",
            Rule::Triple => "triple",
            Rule::AdjacentPair => "adjacent-pair",
            Rule::Cone33 => "cone-33",
            Rule::ConeTwoTwo => "cone-two-two",
            Rule::RotateSecond => "rotate-second",
            Rule::Filtration => "filtration",
            Rule::DirectSnf => "direct-snf",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub input: WeightVector,
    pub output: String,
    pub shift: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Terminal {
    DirectSnf,
    Acyclic,
    Cone { multiplier: u64, inner: Option<WeightVector> },
    Permutation,
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Terminal::DirectSnf => f.write_str("direct SNF"),
            Terminal::Acyclic => f.write_str("acyclic"),
            Terminal::Permutation => f.write_str("permutation"),
            Terminal::Cone { multiplier, inner: Some(v) } => write!(f, "cone of ·{multiplier} on {v}"),
            Terminal::Cone { multiplier, inner: None } => write!(f, "cone of ·{multiplier} on an empty summand"),
        }
    }
}

/// The rules that fired, in order, and how the chain ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
    pub terminal: Terminal,
}

impl ReductionTrace {
    fn terminal(terminal: Terminal) -> Self {
        Self { steps: Vec::new(), terminal }
    }

    fn prepend(mut self, step: Step) -> Self {
        self.steps.insert(0, step);
        self
    }

    /// Sum of the step shifts (meaningful when no `γ` step occurs).
    pub fn total_shift(&self) -> i32 {
        self.steps.iter().map(|s| s.shift).sum()
    }
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{:<15} {} -> {} (shift {:+})", s.rule.name(), s.input, s.output, s.shift)?;
        }
        write!(f, "terminal: {}", self.terminal)
    }
}

/// Which rules the reducer may use. The direct SNF fallback is always on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleSet {
    pub symmetry: bool,
    pub strip: bool,
    pub triple: bool,
    pub adjacent: bool,
    pub cone: bool,
    pub rotate: bool,
    pub filtration: bool,
}

impl RuleSet {
    pub const ALL: RuleSet =
        RuleSet { symmetry: true, strip: true, triple: true, adjacent: true, cone: true, rotate: true, filtration: true };
    pub const NONE: RuleSet = RuleSet {
        symmetry: false,
        strip: false,
        triple: false,
        adjacent: false,
        cone: false,
        rotate: false,
        filtration: false,
    };
}

impl Default for RuleSet {
    fn default() -> Self {
        Self::ALL
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceConfig {
    /// Largest summand (in wedges) the fallback will build.
    pub cap: u64,
    /// Nesting limit for recursive rules; deeper calls go straight to the fallback.
    pub max_depth: usize,
    pub rules: RuleSet,
}

pub const DEFAULT_CAP: u64 = 200_000;

impl Default for ReduceConfig {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP, max_depth: 64, rules: RuleSet::ALL }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoEntry {
    pub profile: HomologyProfile,
    pub trace: ReductionTrace,
}

/// Memo of profiles keyed by canonical weight vector.
pub trait ProfileCache {
    fn get(&self, key: &WeightVector) -> Option<MemoEntry>;
    fn insert(&self, key: WeightVector, entry: MemoEntry);
}

/// Single-threaded in-memory cache.
#[derive(Debug, Default)]
pub struct LocalCache(RefCell<BTreeMap<WeightVector, MemoEntry>>);

impl LocalCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.borrow().is_empty()
    }
}

impl ProfileCache for LocalCache {
    fn get(&self, key: &WeightVector) -> Option<MemoEntry> {
        self.0.borrow().get(key).cloned()
    }

    fn insert(&self, key: WeightVector, entry: MemoEntry) {
        self.0.borrow_mut().insert(key, entry);
    }
}

/// A cache that remembers nothing.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoCache;

impl ProfileCache for NoCache {
    fn get(&self, _: &WeightVector) -> Option<MemoEntry> {
        None
    }

    fn insert(&self, _: WeightVector, _: MemoEntry) {}
}

/// Outcome for one query vector, in its own degree coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub profile: HomologyProfile,
    pub trace: ReductionTrace,
}

pub struct Reducer<'c, C: ProfileCache + ?Sized> {
    config: ReduceConfig,
    cache: &'c C,
}

impl<'c, C: ProfileCache + ?Sized> Reducer<'c, C> {
    pub fn new(config: ReduceConfig, cache: &'c C) -> Self {
        Self { config, cache }
    }

    pub fn config(&self) -> &ReduceConfig {
        &self.config
    }

    pub fn reduce_summand(&self, w: &WeightVector) -> Result<Reduction> {
        let (profile, trace) = self.solve(w, 0)?;
        Ok(Reduction { profile, trace })
    }

    pub fn profile(&self, w: &WeightVector) -> Result<HomologyProfile> {
        Ok(self.solve(w, 0)?.0)
    }

    fn solve(&self, w: &WeightVector, depth: usize) -> Result<(HomologyProfile, ReductionTrace)> {
        if w.n() <= 1 {
            return Ok((HomologyProfile::free_at(0), ReductionTrace::terminal(Terminal::Permutation)));
        }
        if !self.config.rules.symmetry {
            let e = self.evaluate(w, depth)?;
            return Ok((e.profile, e.trace));
        }
        let cert = canonicalize(w);
        let entry = match self.cache.get(&cert.canonical) {
            Some(e) => e,
            None => {
                let e = self.evaluate(&cert.canonical, depth)?;
                self.cache.insert(cert.canonical.clone(), e.clone());
                e
            }
        };
        let profile = cert.transport(&entry.profile);
        let mut trace = entry.trace;
        if !cert.transform_word.is_empty() {
            let word: String = cert.transform_word.iter().map(|s| format!("{s}")).collect();
            trace = trace.prepend(Step {
                rule: Rule::Symmetry,
                input: w.clone(),
                output: format!("{} via {word}", cert.canonical),
                shift: cert.degree_shift,
            });
        }
        Ok((profile, trace))
    }

    fn sub(&self, w: &WeightVector, depth: usize) -> Result<(HomologyProfile, ReductionTrace)> {
        self.solve(w, depth + 1)
    }

    fn evaluate(&self, c: &WeightVector, depth: usize) -> Result<MemoEntry> {
        let rules = self.config.rules;
        if depth < self.config.max_depth {
            if let Some(e) = self.evaluate_by_rules(c, depth, rules)? {
                return Ok(e);
            }
        }
        self.direct(c)
    }

    fn evaluate_by_rules(&self, c: &WeightVector, depth: usize, rules: RuleSet) -> Result<Option<MemoEntry>> {
        let step = |rule, output: String, shift| Step { rule, input: c.clone(), output, shift };
        if rules.strip && (c.contains(1) || c.contains(c.n() as u8)) {
            let (v, s) = strip_extremes(c)?;
            let Some(v) = v else {
                return Ok(Some(acyclic(step(Rule::StripExtremes, "∅".into(), s))));
            };
            let (p, t) = self.sub(&v, depth)?;
            let trace = t.prepend(step(Rule::StripExtremes, format!("{v}"), s));
            return Ok(Some(MemoEntry { profile: p.shifted(s), trace }));
        }
        if let WeightClass::Permutation(pi) = c.classify() {
            let trace =
                ReductionTrace::terminal(Terminal::Permutation).prepend(step(Rule::Permutation, format!("ℤ at {}", pi.inversions()), 0));
            return Ok(Some(MemoEntry { profile: HomologyProfile::free_at(pi.inversions() as i32), trace }));
        }
        if rules.triple && rule_triple(c) {
            return Ok(Some(acyclic(step(Rule::Triple, "0".into(), 0))));
        }
        if rules.adjacent && rule_adjacent_pair(c) {
            return Ok(Some(acyclic(step(Rule::AdjacentPair, "0".into(), 0))));
        }
        if rules.cone {
            for (u, s) in orbit(c) {
                let found = rule_cone_33(&u).map(|r| (Rule::Cone33, r)).or_else(|| rule_cone_two_two(&u).map(|r| (Rule::ConeTwoTwo, r)));
                if let Some((rule, cr)) = found {
                    let p = self.cone_profile(&cr, depth)?;
                    let inner = cr.inner.as_ref().map_or_else(|| String::from("∅"), |v| format!("{v}"));
                    let mut trace = ReductionTrace::terminal(Terminal::Cone { multiplier: cr.multiplier, inner: cr.inner.clone() })
                        .prepend(Step { rule, input: u.clone(), output: format!("·{} on {inner}_{}", cr.multiplier, cr.shift), shift: cr.shift });
                    if u != *c {
                        trace = trace.prepend(step(Rule::Symmetry, format!("{u}"), s));
                    }
                    return Ok(Some(MemoEntry { profile: p.shifted(s), trace }));
                }
            }
        }
        if rules.rotate {
            for (u, s) in orbit(c) {
                if u.at(1) != 2 {
                    continue;
                }
                let (target, r) = rotated_second(&u);
                if !self.resolves_syntactically(&target, rules) {
                    continue;
                }
                let hyp = rule_rotate_second(&u, |h| Ok(self.sub(h, depth)?.0.is_zero()))?;
                if hyp.is_none() {
                    continue;
                }
                let (p, t) = self.sub(&target, depth)?;
                let mut trace = t.prepend(Step { rule: Rule::RotateSecond, input: u.clone(), output: format!("{target}"), shift: r });
                if u != *c {
                    trace = trace.prepend(step(Rule::Symmetry, format!("{u}"), s));
                }
                return Ok(Some(MemoEntry { profile: p.shifted(r + s), trace }));
            }
        }
        if rules.filtration {
            let pieces = filtration_split(c);
            let mut all_zero = true;
            for piece in &pieces {
                if !self.sub(&piece.weight, depth)?.0.is_zero() {
                    all_zero = false;
                    break;
                }
            }
            if all_zero {
                return Ok(Some(acyclic(step(Rule::Filtration, format!("{} acyclic pieces", pieces.len()), 0))));
            }
        }
        Ok(None)
    }

    /// Cheap test that a rotation target will be settled without another rotation.
    fn resolves_syntactically(&self, w: &WeightVector, rules: RuleSet) -> bool {
        let c = canonicalize(w).canonical;
        if self.cache.get(&c).is_some() || c.is_permutation() {
            return true;
        }
        (rules.strip && (c.contains(1) || c.contains(c.n() as u8)))
            || (rules.triple && rule_triple(&c))
            || (rules.adjacent && rule_adjacent_pair(&c))
            || (rules.cone && orbit(&c).iter().any(|(u, _)| rule_cone_33(u).is_some() || rule_cone_two_two(u).is_some()))
    }

    fn cone_profile(&self, cr: &ConeRule, depth: usize) -> Result<HomologyProfile> {
        let Some(inner) = &cr.inner else { return Ok(HomologyProfile::zero()) };
        let p = self.sub(inner, depth)?.0.shifted(cr.shift);
        if p.is_zero() {
            return Ok(p);
        }
        if let Some(d) = p.single_free_class() {
            return Ok(HomologyProfile::cyclic_at(d, cr.multiplier));
        }
        // anything richer is computed on the literal cone
        self.check_cap(inner)?;
        homology_profile(&cr.complex()?.expect("inner summand present"))
    }

    fn check_cap(&self, w: &WeightVector) -> Result<u64> {
        let size = summand_size(w, self.config.cap.saturating_add(1));
        if size > self.config.cap {
            return Err(Error::ResourceLimitExceeded {
                cap: self.config.cap,
                unfinished: vec![UnfinishedOrbit { weight: w.clone(), basis_size: size }],
            });
        }
        Ok(size)
    }

    /// Builds the summand and takes its Smith normal form.
    pub fn direct(&self, w: &WeightVector) -> Result<MemoEntry> {
        let size = self.check_cap(w)?;
        let profile = homology_profile(build_summand(w)?.complex())?;
        let step = Step { rule: Rule::DirectSnf, input: w.clone(), output: format!("{size} wedges"), shift: 0 };
        Ok(MemoEntry { profile, trace: ReductionTrace::terminal(Terminal::DirectSnf).prepend(step) })
    }
}

fn acyclic(step: Step) -> MemoEntry {
    MemoEntry { profile: HomologyProfile::zero(), trace: ReductionTrace::terminal(Terminal::Acyclic).prepend(step) }
}

/// Homology of `⟦w⟧` by building it and taking the Smith normal form, with no
/// rules and no cap. This is the reference the rules are checked against.
pub fn direct_profile(w: &WeightVector) -> Result<HomologyProfile> {
    homology_profile(build_summand(w)?.complex())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(v: &[u8]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn stripping() {
        assert_eq!(strip_extremes(&wv(&[2, 3, 1, 4])).unwrap(), (Some(wv(&[1, 2, 3])), 2));
        assert_eq!(strip_extremes(&wv(&[1, 1, 4, 4])).unwrap(), (None, 0));
        assert_eq!(strip_extremes(&wv(&[2, 3, 2, 3])), Err(Error::NoExtreme));
        assert_eq!(strip_extremes(&wv(&[3, 2, 4, 1])).unwrap().1, 3);
        assert_eq!(strip_extremes(&wv(&[2, 3, 3, 2])).unwrap_err(), Error::NoExtreme);
    }

    #[test]
    fn syntactic_rules() {
        assert!(rule_triple(&wv(&[2, 2, 2, 4])));
        assert!(!rule_triple(&wv(&[2, 3, 2, 3])));
        assert!(rule_adjacent_pair(&wv(&[2, 2, 3, 3])));
        assert!(rule_adjacent_pair(&wv(&[3, 3, 2, 2])));
        assert!(!rule_adjacent_pair(&wv(&[2, 3, 2, 3])));
    }

    #[test]
    fn cone_rules() {
        let r = rule_cone_33(&wv(&[2, 3, 3, 3, 4])).unwrap();
        assert_eq!((r.multiplier, r.inner, r.shift), (2, Some(wv(&[3, 1, 2])), 1));
        let r = rule_cone_33(&wv(&[2, 3, 3, 4, 3])).unwrap();
        assert_eq!(r.inner, Some(wv(&[3, 2, 1])));
        let r = rule_cone_two_two(&wv(&[2, 3, 4, 2, 4])).unwrap();
        assert_eq!((r.multiplier, r.inner, r.shift), (3, Some(wv(&[2, 3, 1, 4])), 1));
        let r = rule_cone_two_two(&wv(&[2, 3, 2, 3])).unwrap();
        assert_eq!((r.multiplier, r.inner), (2, Some(wv(&[2, 1, 3]))));
        assert!(rule_cone_33(&wv(&[3, 3, 2, 2])).is_none());
    }

    #[test]
    fn filtration_top_piece() {
        let pieces = filtration_split(&wv(&[3, 3, 3, 3, 3]));
        let top = pieces.iter().max_by_key(|p| p.level).unwrap();
        assert_eq!((top.level, &top.weight, top.shift), (9, &wv(&[2, 2, 3, 3]), 2));
        let pieces = filtration_split(&wv(&[1, 3, 2]));
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].weight, wv(&[2, 1]));
    }

    #[test]
    fn reducer_examples() {
        let cache = LocalCache::new();
        let r = Reducer::new(ReduceConfig::default(), &cache);
        assert!(r.profile(&wv(&[3, 3, 3, 3, 3])).unwrap().is_zero());
        assert_eq!(r.profile(&wv(&[2, 3, 4, 2, 4])).unwrap(), HomologyProfile::cyclic_at(3, 3));
        assert_eq!(r.profile(&wv(&[2, 3, 2, 3])).unwrap(), HomologyProfile::cyclic_at(2, 2));
        assert_eq!(r.profile(&wv(&[3, 2, 3, 2])).unwrap(), HomologyProfile::cyclic_at(3, 2));
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = ReduceConfig { cap: 10, rules: RuleSet::NONE, ..ReduceConfig::default() };
        let r = Reducer::new(cfg, &NoCache);
        let err = r.profile(&wv(&[2, 4, 7, 5, 4, 2, 5, 7])).unwrap_err();
        assert!(matches!(err, Error::ResourceLimitExceeded { cap: 10, .. }));
    }
}
