//! Verification suites shared by the `verify` subcommand and the test targets.
//!
//! Every lemma check compares what a reduction rule predicts with the
//! homology of the summand computed directly by Smith normal form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::Instant;

use nilhom_core::assemble::{cup_classes, cup_product, free_part, mahonian, verify_against_reference, CupClass, NilTable};
use nilhom_core::complex::cone;
use nilhom_core::morse::{matching_second_two, matching_two_three_three, matching_two_two, reduce_by_matching};
use nilhom_core::reduce::{
    direct_profile, filtration_split, rule_adjacent_pair, rule_cone_33, rule_cone_two_two, rule_rotate_second, rule_triple,
    strip_extremes, ConeRule, LocalCache, ReduceConfig, Reducer,
};
use nilhom_core::summand::summand_size;
use nilhom_core::weights::{dual_gamma, enumerate_weights, reverse_beta, rotate_alpha, weight_of};
use nilhom_core::{build_summand, canonicalize, homology_profile, Generator, HomologyProfile, Monomial, Permutation, Result, WeightVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cache::SharedCache;
use crate::run::{compute_table, TableOptions};

pub const DEFAULT_SEED: u64 = 20_140_301;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &'static str) -> Self {
        Self { suite, checks: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        let failed = self.failures().count();
        write!(f, "{}: {} checks, {} failed", self.suite, self.checks.len(), failed)
    }
}

/// Direct Smith normal form homology, memoized.
#[derive(Default)]
pub struct Oracle(HashMap<WeightVector, HomologyProfile>);

impl Oracle {
    pub fn profile(&mut self, w: &WeightVector) -> Result<HomologyProfile> {
        if let Some(p) = self.0.get(w) {
            return Ok(p.clone());
        }
        let p = direct_profile(w)?;
        self.0.insert(w.clone(), p.clone());
        Ok(p)
    }
}

type Verdict = std::result::Result<(), String>;

fn expect_eq(what: &str, predicted: &HomologyProfile, actual: &HomologyProfile) -> Verdict {
    if predicted == actual {
        Ok(())
    } else {
        Err(format!("{what}: predicted {predicted}, direct {actual}"))
    }
}

struct Lemma {
    name: &'static str,
    applies: fn(&WeightVector, &mut Oracle) -> Result<bool>,
    check: fn(&WeightVector, &mut Oracle) -> Result<Verdict>,
}

fn always(_: &WeightVector, _: &mut Oracle) -> Result<bool> {
    Ok(true)
}

fn is_torsion(w: &WeightVector, _: &mut Oracle) -> Result<bool> {
    Ok(!w.is_permutation())
}

fn check_cone(cr: &ConeRule, w: &WeightVector, o: &mut Oracle) -> Result<Verdict> {
    let actual = o.profile(w)?;
    let literal = match cr.complex()? {
        Some(c) => homology_profile(&c)?,
        None => HomologyProfile::zero(),
    };
    if let Err(e) = expect_eq("literal cone", &literal, &actual) {
        return Ok(Err(e));
    }
    // a single free class must turn into one cyclic group of the multiplier's order
    if let Some(inner) = &cr.inner {
        if let Some(d) = o.profile(inner)?.shifted(cr.shift).single_free_class() {
            return Ok(expect_eq("cyclic transform", &HomologyProfile::cyclic_at(d, cr.multiplier), &actual));
        }
    }
    Ok(Ok(()))
}

const LEMMAS: &[Lemma] = &[
    Lemma {
        name: "complement-reversal",
        applies: always,
        check: |w, o| Ok(expect_eq("β", &o.profile(&reverse_beta(w))?, &o.profile(w)?)),
    },
    Lemma {
        name: "rotation",
        applies: always,
        check: |w, o| {
            let (v, s) = rotate_alpha(w);
            Ok(expect_eq("α", &o.profile(&v)?.shifted(s), &o.profile(w)?))
        },
    },
    Lemma {
        name: "strip-extremes",
        applies: |w, _| Ok(w.contains(1) || w.contains(w.n() as u8)),
        check: |w, o| {
            let (v, s) = strip_extremes(w)?;
            let predicted = match v {
                Some(v) => o.profile(&v)?.shifted(s),
                None => HomologyProfile::zero(),
            };
            Ok(expect_eq("strip", &predicted, &o.profile(w)?))
        },
    },
    Lemma {
        name: "triple",
        applies: |w, _| Ok(rule_triple(w)),
        check: |w, o| Ok(expect_eq("triple", &HomologyProfile::zero(), &o.profile(w)?)),
    },
    Lemma {
        name: "adjacent-pair",
        applies: |w, _| Ok(rule_adjacent_pair(w)),
        check: |w, o| Ok(expect_eq("adjacent pair", &HomologyProfile::zero(), &o.profile(w)?)),
    },
    Lemma {
        name: "two-two-matching",
        applies: |w, _| Ok(w.n() >= 2 && w.at(1) == 2 && w.at(2) == 2),
        check: |w, o| {
            let s = build_summand(w)?;
            let m = matching_two_two(&s)?;
            if 2 * m.len() != s.len() {
                return Ok(Err(format!("{} of {} wedges matched", 2 * m.len(), s.len())));
            }
            let r = reduce_by_matching(s.complex(), &m)?;
            if !r.complex.is_zero() {
                return Ok(Err("critical cells remain".into()));
            }
            Ok(expect_eq("(2,2,…)", &HomologyProfile::zero(), &o.profile(w)?))
        },
    },
    Lemma {
        name: "rotate-second",
        applies: |w, o| {
            if w.n() < 3 || w.at(1) != 2 {
                return Ok(false);
            }
            Ok(rule_rotate_second(w, |h| Ok(o.profile(h)?.is_zero()))?.is_some())
        },
        check: |w, o| {
            let (target, r) = rule_rotate_second(w, |h| Ok(o.profile(h)?.is_zero()))?.expect("applies");
            Ok(expect_eq("rotate second", &o.profile(&target)?.shifted(r), &o.profile(w)?))
        },
    },
    Lemma {
        name: "cone-33",
        applies: |w, _| Ok(rule_cone_33(w).is_some()),
        check: |w, o| check_cone(&rule_cone_33(w).expect("applies"), w, o),
    },
    Lemma {
        name: "two-three-three-matching",
        applies: |w, _| Ok(w.n() >= 3 && w.entries()[..3] == [2, 3, 3]),
        check: |w, o| {
            let s = build_summand(w)?;
            let (q, m) = matching_two_three_three(&s)?;
            let r = reduce_by_matching(&q, &m)?;
            // one critical cell on each side of the cone for every wedge of the inner summand
            let inner = rule_cone_33(w).and_then(|c| c.inner).map_or(0, |v| summand_size(&v, u64::MAX));
            if r.complex.total_dim() as u64 != 2 * inner {
                return Ok(Err(format!("{} critical cells for an inner summand of {inner}", r.complex.total_dim())));
            }
            let reduced = homology_profile(&r.complex)?;
            if let Err(e) = expect_eq("matching", &reduced, &homology_profile(&q)?) {
                return Ok(Err(e));
            }
            Ok(expect_eq("quotient", &reduced, &o.profile(w)?))
        },
    },
    Lemma {
        name: "second-two-cone",
        applies: |w, _| Ok(w.n() >= 3 && w.at(1) == 2 && (2..=w.n()).any(|k| w.at(k) == 2)),
        check: |w, o| {
            let s = build_summand(w)?;
            let actual = o.profile(w)?;
            for k in (2..=w.n()).filter(|&k| w.at(k) == 2) {
                let red = matching_second_two(&s, k)?;
                if let Err(e) = expect_eq(&format!("reduced, k={k}"), &homology_profile(&red.reduced.complex)?, &actual) {
                    return Ok(Err(e));
                }
                if let Err(e) = expect_eq(&format!("cone, k={k}"), &homology_profile(&cone(&red.phi)?)?, &actual) {
                    return Ok(Err(e));
                }
                if k == w.n() - 1 {
                    if let Err(e) = phi_is_multiple_of_iota(w, &red) {
                        return Ok(Err(e));
                    }
                }
            }
            Ok(Ok(()))
        },
    },
    Lemma {
        name: "cone-two-two",
        applies: |w, _| Ok(rule_cone_two_two(w).is_some()),
        check: |w, o| check_cone(&rule_cone_two_two(w).expect("applies"), w, o),
    },
    Lemma {
        name: "filtration",
        applies: |w, _| Ok(w.at(1) >= 2),
        check: |w, o| {
            let pieces = filtration_split(w);
            let total: u64 = pieces.iter().map(|p| summand_size(&p.weight, u64::MAX)).sum();
            let size = summand_size(w, u64::MAX);
            if total != size {
                return Ok(Err(format!("pieces hold {total} wedges, summand {size}")));
            }
            let chi: i64 = pieces
                .iter()
                .map(|p| Ok(o.profile(&p.weight)?.euler_characteristic() * if p.shift % 2 == 0 { 1 } else { -1 }))
                .sum::<Result<i64>>()?;
            let actual = o.profile(w)?;
            if chi != actual.euler_characteristic() {
                return Ok(Err(format!("Euler characteristic {chi} from pieces, {} direct", actual.euler_characteristic())));
            }
            let mut all_zero = true;
            for p in &pieces {
                all_zero &= o.profile(&p.weight)?.is_zero();
            }
            if all_zero && !actual.is_zero() {
                return Ok(Err(format!("all pieces acyclic but direct {actual}")));
            }
            Ok(Ok(()))
        },
    },
    Lemma {
        name: "torsion-only",
        applies: is_torsion,
        check: |w, o| {
            let p = o.profile(w)?;
            if p.total_free_rank() != 0 || p.euler_characteristic() != 0 {
                return Ok(Err(format!("{p}")));
            }
            Ok(Ok(()))
        },
    },
    Lemma {
        name: "reversal-duality",
        applies: is_torsion,
        check: |w, o| {
            let p = o.profile(w)?;
            let r = o.profile(&dual_gamma(w)?)?;
            let top = w.top_degree();
            for k in -1..=top + 1 {
                if r.get(k).torsion != p.get(top - 1 - k).torsion {
                    return Ok(Err(format!("TH_{k} of reversal differs from TH_{} ({r} vs {p})", top - 1 - k)));
                }
            }
            Ok(Ok(()))
        },
    },
    Lemma {
        name: "reducer",
        applies: always,
        check: |w, o| {
            let cache = LocalCache::new();
            let reduced = Reducer::new(ReduceConfig::default(), &cache).profile(w)?;
            Ok(expect_eq("reducer", &reduced, &o.profile(w)?))
        },
    },
];

/// For `k = n - 1`: `φ(a) = ±(w_n - 1) ι(a)`, the sign depending on `a`.
fn phi_is_multiple_of_iota(w: &WeightVector, red: &nilhom_core::morse::SecondTwoReduction) -> Verdict {
    let q = w.at(w.n()) as i64 - 1;
    for (&d, cells) in &red.a_cells {
        let phi = red.phi.component(d - 1);
        let b = red.b_cells.get(&(d - 1)).map(Vec::as_slice).unwrap_or(&[]);
        for (i, &a) in cells.iter().enumerate() {
            let image = red.iota(a).ok_or_else(|| format!("ι undefined on {a}"))?;
            let row = b.iter().position(|&x| x == image).ok_or_else(|| format!("ι({a}) = {image} is not in B"))?;
            let col = phi.column(i).to_vec();
            if col.len() != 1 || col[0].0 as usize != row || col[0].1.abs() != q {
                return Err(format!("φ({a}) = {col:?}, expected ±{q} at {image}"));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
pub struct LemmaOptions {
    /// Largest ambient size; sizes 4 and 5 get `samples` draws each and size
    /// 6 gets `spot_samples`.
    pub n_max: usize,
    pub samples: usize,
    pub spot_samples: usize,
    pub seed: u64,
}

impl Default for LemmaOptions {
    fn default() -> Self {
        Self { n_max: 5, samples: 200, spot_samples: 20, seed: DEFAULT_SEED }
    }
}

pub fn lemma_suite(opts: &LemmaOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemmas");
    let mut oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sizes: Vec<(usize, usize)> = (4..=opts.n_max.min(6))
        .map(|n| (n, if n <= 5 { opts.samples } else { opts.spot_samples }))
        .collect();
    let weights: BTreeMap<usize, Vec<WeightVector>> = sizes.iter().map(|&(n, _)| (n, enumerate_weights(n))).collect();
    for lemma in LEMMAS {
        let mut checked = Vec::new();
        let mut failure = None;
        for &(n, count) in &sizes {
            let mut pool = Vec::new();
            for w in &weights[&n] {
                if (lemma.applies)(w, &mut oracle)? {
                    pool.push(w);
                }
            }
            if pool.is_empty() || count == 0 {
                continue;
            }
            for _ in 0..count {
                let w = pool[rng.gen_range(0..pool.len())];
                if let Err(e) = (lemma.check)(w, &mut oracle)? {
                    failure.get_or_insert(format!("{w}: {e}"));
                }
            }
            checked.push(format!("{count} at n={n} (of {})", pool.len()));
        }
        let passed = failure.is_none() && !checked.is_empty();
        let detail = failure.unwrap_or_else(|| {
            if checked.is_empty() {
                "no instances".into()
            } else {
                format!("agree with direct SNF: {}", checked.join(", "))
            }
        });
        report.push(lemma.name, passed, detail);
    }
    Ok(report)
}

/// Computes the tables for `2..=n_max` and compares them with the published ones.
pub fn table_suite(n_max: usize, opts: &TableOptions, cache: &SharedCache) -> Result<(SuiteReport, Vec<NilTable>)> {
    let mut report = SuiteReport::new("tables");
    let mut tables = Vec::new();
    for n in 2..=n_max {
        let start = Instant::now();
        let table = compute_table(n, opts, cache)?;
        let verdict = verify_against_reference(&table)?;
        let elapsed = start.elapsed().as_secs_f64();
        let detail = if verdict.passed() {
            format!("matches the published table ({elapsed:.2}s)")
        } else {
            verdict.mismatches.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("; ")
        };
        report.push(format!("table n={n}"), verdict.passed(), detail);
        tables.push(table);
    }
    Ok((report, tables))
}

/// The worked examples: the `ℤ_q` family, the `ℤ_8` witness, `(3,3,3,3,3)` and
/// the small summands.
pub fn example_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("examples");
    let cache = LocalCache::new();
    let reducer = Reducer::new(ReduceConfig::default(), &cache);
    for q in 2..=5u8 {
        let mut e: Vec<u8> = (2..=q + 1).collect();
        e.extend([2, q + 1]);
        let w = WeightVector::new(e)?;
        let expected = HomologyProfile::cyclic_at(q as i32, q as u64);
        let direct = direct_profile(&w)?;
        let reduced = reducer.profile(&w)?;
        let ok = direct == expected && reduced == expected;
        report.push(format!("cyclic family q={q}"), ok, format!("{w}: direct {direct}, reduced {reduced}"));
    }

    let start = Instant::now();
    let w = WeightVector::new(vec![2, 4, 7, 5, 4, 2, 5, 7])?;
    let s = build_summand(&w)?;
    let p = homology_profile(s.complex())?;
    let mut expected = HomologyProfile::cyclic_at(10, 8);
    expected.add(&HomologyProfile::cyclic_at(11, 8));
    let secs = start.elapsed().as_secs_f64();
    report.push(
        "order-8 witness",
        s.len() == 192 && p == expected,
        format!("{w}: {} wedges, {p} ({secs:.2}s)", s.len()),
    );

    let w = WeightVector::new(vec![3, 3, 3, 3, 3])?;
    let p = direct_profile(&w)?;
    let top = filtration_split(&w).into_iter().max_by_key(|piece| piece.level).expect("pieces");
    let top_ok = top.level == 9 && top.weight.entries() == [2, 2, 3, 3] && top.shift == 2;
    report.push(
        "(3,3,3,3,3) acyclic",
        p.is_zero() && top_ok && direct_profile(&top.weight)?.is_zero(),
        format!("direct {p}; top piece {}_{} at level {}", top.weight, top.shift, top.level),
    );

    let mut small = |entries: Vec<u8>, expected: HomologyProfile| -> Result<()> {
        let w = WeightVector::new(entries)?;
        let p = direct_profile(&w)?;
        report.push(format!("summand {w}"), p == expected, format!("{p}"));
        Ok(())
    };
    small(vec![2, 2, 2], HomologyProfile::zero())?;
    small(vec![2, 3, 2, 3], HomologyProfile::cyclic_at(2, 2))?;
    small(vec![3, 2, 3, 2], HomologyProfile::cyclic_at(3, 2))?;

    let cert = canonicalize(&WeightVector::new(vec![3, 2, 3, 2])?);
    report.push(
        "orbit of (3,2,3,2)",
        cert.canonical.entries() == [2, 3, 2, 3] && cert.degree_shift == 1,
        format!("canonical {} shift {:+}", cert.canonical, cert.degree_shift),
    );
    let b = WeightVector::new(vec![2, 3, 3, 3, 4])?;
    report.push("β fixes (2,3,3,3,4)", reverse_beta(&b) == b, format!("{}", reverse_beta(&b)));
    Ok(report)
}

#[derive(Clone, Copy, Debug)]
pub struct StructuralOptions {
    /// Ambient sizes for the per-summand checks.
    pub n_max: usize,
    /// Ambient sizes of the assembled tables to check.
    pub tables_n_max: usize,
}

impl Default for StructuralOptions {
    fn default() -> Self {
        Self { n_max: 5, tables_n_max: 6 }
    }
}

fn mahonian_polynomial(n: usize) -> Vec<u64> {
    let mut poly = vec![1u64];
    for i in 1..=n {
        let mut next = vec![0u64; poly.len() + i - 1];
        for (d, &c) in poly.iter().enumerate() {
            for e in 0..i {
                next[d + e] += c;
            }
        }
        poly = next;
    }
    poly
}

pub fn structural_suite(opts: &StructuralOptions, cache: &SharedCache) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("structure");
    for n in 2..=opts.n_max {
        let mut bad_complex = None;
        let mut bad_torsion = None;
        let mut total = 0u64;
        for w in enumerate_weights(n) {
            let s = build_summand(&w)?;
            total += s.len() as u64;
            if let Err(e) = s.complex().check_complex() {
                bad_complex.get_or_insert(format!("{w}: {e}"));
            }
            if !w.is_permutation() {
                let p = homology_profile(s.complex())?;
                if p.total_free_rank() != 0 || p.euler_characteristic() != 0 || s.complex().euler_characteristic() != 0 {
                    bad_torsion.get_or_insert(format!("{w}: {p}"));
                }
            }
        }
        let partition = total == 1u64 << (n * (n - 1) / 2);
        report.push(
            format!("summands square to zero n={n}"),
            bad_complex.is_none() && partition,
            bad_complex.unwrap_or_else(|| format!("{total} wedges over all summands")),
        );
        report.push(
            format!("torsion-only and zero Euler characteristic n={n}"),
            bad_torsion.is_none(),
            bad_torsion.unwrap_or_else(|| "every w outside the permutations".into()),
        );

        let gens: Vec<Generator> =
            (1..=n as u8).flat_map(|i| (i + 1..=n as u8).map(move |j| (i, j))).map(|(i, j)| Generator::new(i, j)).collect::<Result<_>>()?;
        let mut bad_weight = None;
        for mask in 0u32..(1 << gens.len()) {
            let chosen: Vec<Generator> = gens.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &g)| g).collect();
            let m = Monomial::from_sorted(&chosen).expect("distinct generators");
            let w = weight_of(m, n);
            let d = m.boundary();
            if let Some((t, _)) = d.iter().find(|(t, _)| weight_of(*t, n) != w) {
                bad_weight.get_or_insert(format!("∂({m}) contains {t}"));
            }
            if !d.boundary().is_zero() {
                bad_weight.get_or_insert(format!("∂∂({m}) ≠ 0"));
            }
        }
        report.push(
            format!("boundary preserves weight n={n}"),
            bad_weight.is_none(),
            bad_weight.unwrap_or_else(|| format!("{} monomials", 1u64 << gens.len())),
        );
    }

    for n in 2..=8 {
        let poly = mahonian_polynomial(n);
        let free = free_part(n);
        let fact: u64 = (1..=n as u64).product();
        let by_fn: Vec<u64> = (0..poly.len()).map(|k| mahonian(n, k)).collect();
        let ok = free == poly && by_fn == poly && free.iter().sum::<u64>() == fact;
        report.push(format!("Mahonian free ranks n={n}"), ok, format!("total {}", free.iter().sum::<u64>()));
    }

    let opts_t = TableOptions::default();
    for n in 2..=opts.tables_n_max {
        let t = compute_table(n, &opts_t, cache)?;
        let dual = t.duality_failures();
        report.push(format!("torsion duality n={n}"), dual.is_empty(), format!("failing degrees {dual:?}"));
        let dwyer = t.dwyer_violations();
        report.push(format!("no prime above n-2, n={n}"), dwyer.is_empty(), format!("violations {dwyer:?}"));
    }
    Ok(report)
}

/// Rational cup products of the free classes for `n ≤ n_max`.
pub fn cup_suite(n_max: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("cups");
    for n in 2..=n_max {
        let perms = Permutation::all(n);
        let class = |p: &Permutation| CupClass::Class { sign: 1, permutation: p.clone() };
        let mut table = BTreeMap::new();
        for a in &perms {
            for b in &perms {
                table.insert((a.clone(), b.clone()), cup_product(a, b)?);
            }
        }

        let mut bad = None;
        for ((a, b), ab) in &table {
            let ba = &table[&(b.clone(), a.clone())];
            let sign = if (a.inversions() * b.inversions()) % 2 == 0 { 1 } else { -1 };
            let expected = match ba {
                CupClass::Class { sign: s, permutation } => CupClass::Class { sign: s * sign, permutation: permutation.clone() },
                CupClass::Zero => CupClass::Zero,
            };
            if *ab != expected {
                bad.get_or_insert(format!("{a:?} ⌣ {b:?}"));
            }
        }
        report.push(format!("graded commutative n={n}"), bad.is_none(), bad.unwrap_or_else(|| format!("{} products", table.len())));

        let mut bad = None;
        let mut triples = 0;
        let inv = |p: &Permutation| p.inversion_pairs().collect::<Vec<_>>();
        let disjoint = |x: &[(u8, u8)], y: &[(u8, u8)]| x.iter().all(|e| !y.contains(e));
        for a in &perms {
            for b in &perms {
                if !disjoint(&inv(a), &inv(b)) {
                    continue;
                }
                for c in &perms {
                    if !disjoint(&inv(a), &inv(c)) || !disjoint(&inv(b), &inv(c)) {
                        continue;
                    }
                    triples += 1;
                    let left = cup_classes(&table[&(a.clone(), b.clone())], &class(c))?;
                    let right = cup_classes(&class(a), &table[&(b.clone(), c.clone())])?;
                    if left != right {
                        bad.get_or_insert(format!("({a:?} ⌣ {b:?}) ⌣ {c:?}"));
                    }
                }
            }
        }
        report.push(format!("associative n={n}"), bad.is_none(), bad.unwrap_or_else(|| format!("{triples} disjoint triples")));

        let unit = CupClass::unit(n);
        let unit_ok = perms.iter().all(|p| cup_classes(&unit, &class(p)).ok() == Some(class(p)));
        report.push(format!("unit n={n}"), unit_ok, "x_id ⌣ x_π = x_π");
    }

    if n_max >= 3 {
        let p = |v: Vec<u8>| Permutation::new(v);
        let x = cup_product(&p(vec![1, 3, 2])?, &p(vec![3, 1, 2])?)?;
        let ok = matches!(&x, CupClass::Class { sign, permutation } if sign.abs() == 1 && permutation.entries() == [3, 2, 1]);
        report.push("x_(1,3,2) ⌣ x_(3,1,2)", ok, format!("{x:?}"));
        let z = cup_product(&p(vec![2, 1, 3])?, &p(vec![1, 3, 2])?)?;
        report.push("x_(2,1,3) ⌣ x_(1,3,2)", z == CupClass::Zero, format!("{z:?}"));
    }
    Ok(report)
}
