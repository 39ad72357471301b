//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The n = 7 criterion asks for an exact match with a published table that
//! misprints `H_17` (it lists `ℤ_2^4`; duality with `H_3` forces `ℤ_2^35`).
//! That line is reported as FAIL, and the run only tolerates that exact
//! difference. Any other failure makes the process exit nonzero.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nilhom::cache::SharedCache;
use nilhom::run::{compute_table, TableOptions};
use nilhom::suites::{cup_suite, lemma_suite, structural_suite, LemmaOptions, StructuralOptions, SuiteReport};
use nilhom_core::assemble::{verify_against_reference, Mismatch};
use nilhom_core::reduce::{direct_profile, LocalCache, ReduceConfig, Reducer};
use nilhom_core::{build_summand, homology_profile, HomologyProfile, PrimePower, WeightVector};

const SMALL_TABLES_BUDGET: Duration = Duration::from_secs(30);
const SIX_BUDGET: Duration = Duration::from_secs(30 * 60);
const WITNESS_BUDGET: Duration = Duration::from_secs(10);
const WITNESS_WEDGES: usize = 192;
const LEMMA_SAMPLES: usize = 200;
const LEMMA_SPOT_SAMPLES: usize = 20;

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

struct Outcome {
    passed: bool,
    detail: String,
    /// A failure that is known and accepted (see the module comment).
    tolerated: bool,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into(), tolerated: false }
}

fn mismatch_text(ms: &[Mismatch]) -> String {
    ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("; ")
}

fn table_criterion(ns: &[usize], budget: Option<Duration>) -> Outcome {
    let cache = SharedCache::in_memory();
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for &n in ns {
        match compute_table(n, &TableOptions::default(), &cache).and_then(|t| verify_against_reference(&t)) {
            Ok(r) => mismatches.extend(r.mismatches),
            Err(e) => return outcome(false, format!("n={n}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let budget_text = budget.map_or(String::new(), |b| format!(" (budget {}s)", b.as_secs()));
    let detail = if mismatches.is_empty() {
        format!("exact match in {:.2}s{budget_text}", elapsed.as_secs_f64())
    } else {
        format!("{} in {:.2}s", mismatch_text(&mismatches), elapsed.as_secs_f64())
    };
    let mut o = outcome(mismatches.is_empty() && in_time, detail);
    let misprint = Mismatch { degree: 17, group: Some(PrimePower::new(2, 1)), expected: 4, actual: 35 };
    if ns == [7] && mismatches == [misprint] {
        o.tolerated = true;
        o.detail.push_str(" (published entry misprinted: duality with H_3 requires ℤ_2^35)");
    }
    o
}

fn witness() -> Outcome {
    let start = Instant::now();
    let w = WeightVector::new(vec![2, 4, 7, 5, 4, 2, 5, 7]).unwrap();
    let s = build_summand(&w).unwrap();
    let p = homology_profile(s.complex()).unwrap();
    let elapsed = start.elapsed();
    let mut expected = HomologyProfile::cyclic_at(10, 8);
    expected.add(&HomologyProfile::cyclic_at(11, 8));
    outcome(
        s.len() == WITNESS_WEDGES && p == expected && elapsed <= WITNESS_BUDGET,
        format!("{w}: {} wedges, {p}, {:.3}s", s.len(), elapsed.as_secs_f64()),
    )
}

fn cyclic_family() -> Outcome {
    let cache = LocalCache::new();
    let reducer = Reducer::new(ReduceConfig::default(), &cache);
    let mut parts = Vec::new();
    let mut ok = true;
    for q in 2..=5u8 {
        let mut e: Vec<u8> = (2..=q + 1).collect();
        e.extend([2, q + 1]);
        let w = WeightVector::new(e).unwrap();
        let expected = HomologyProfile::cyclic_at(q as i32, q as u64);
        let direct = direct_profile(&w).unwrap();
        let reduced = reducer.profile(&w).unwrap();
        ok &= direct == expected && reduced == expected;
        parts.push(format!("{w} → {direct}"));
    }
    outcome(ok, parts.join("; "))
}

fn suite(r: nilhom_core::Result<SuiteReport>) -> Outcome {
    match r {
        Ok(r) => {
            let failed: Vec<String> = r.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
            if failed.is_empty() {
                outcome(true, format!("{} checks", r.checks.len()))
            } else {
                outcome(false, failed.join("; "))
            }
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("tables n <= 5", Box::new(|| table_criterion(&[2, 3, 4, 5], Some(SMALL_TABLES_BUDGET)))),
        ("table n = 6", Box::new(|| table_criterion(&[6], Some(SIX_BUDGET)))),
        ("table n = 7 (stretch)", Box::new(|| table_criterion(&[7], None))),
        ("order-8 witness", Box::new(witness)),
        ("cyclic torsion family", Box::new(cyclic_family)),
        (
            "lemma oracle suite",
            Box::new(|| {
                let opts = LemmaOptions { n_max: 6, samples: LEMMA_SAMPLES, spot_samples: LEMMA_SPOT_SAMPLES, ..LemmaOptions::default() };
                suite(lemma_suite(&opts))
            }),
        ),
        (
            "structural suite",
            Box::new(|| {
                let opts = StructuralOptions { n_max: 6, tables_n_max: 7 };
                suite(structural_suite(&opts, &SharedCache::in_memory()))
            }),
        ),
        ("cup product suite", Box::new(|| suite(cup_suite(4)))),
    ];

    let mut hard_failures = 0;
    for (name, run) in &criteria {
        let o = run();
        println!("{} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        if !o.passed && !o.tolerated {
            hard_failures += 1;
        }
    }
    if hard_failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
