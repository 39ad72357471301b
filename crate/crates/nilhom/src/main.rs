use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nilhom::cache::SharedCache;
use nilhom::format::{profile_rows, TableDto, TraceDto};
use nilhom::run::{compute_table, TableOptions};
use nilhom::suites::{self, LemmaOptions, StructuralOptions, SuiteReport};
use nilhom_core::assemble::verify_against_reference;
use nilhom_core::reduce::{ReduceConfig, Reducer, RuleSet, DEFAULT_CAP};
use nilhom_core::summand::summand_size;
use nilhom_core::weights::{dual_gamma, orbit};
use nilhom_core::{build_summand, canonicalize, homology_profile, Error, WeightClass, WeightVector};
use serde_json::json;

const EXIT_MISMATCH: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_BAD_INPUT: u8 = 4;

#[derive(Parser)]
#[command(name = "nilhom", version, about = "Integral homology of the Lie ring nil_n")]
struct Cli {
    /// Directory for cached summand profiles (default: $NILHOM_CACHE_DIR, else none).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Show {
    Basis,
    Boundary,
    Profile,
    Trace,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Lemmas,
    Tables,
    Examples,
    Structure,
    Cups,
}

#[derive(Subcommand)]
enum Command {
    /// H_k(nil_n; ℤ) for every k.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Largest summand, in wedges, that may be built directly.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        /// Compare with the published table; exit 2 on any difference.
        #[arg(long)]
        verify: bool,
        /// Skip the size check of the central summands.
        #[arg(long)]
        no_preflight: bool,
        /// Use direct Smith normal form only.
        #[arg(long)]
        no_rules: bool,
    },
    /// One weight summand.
    Summand {
        /// Comma-separated weight vector, e.g. 2,3,2,3.
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value = "profile")]
        show: Show,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// The symmetry class of a weight vector.
    Orbit {
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = suites::DEFAULT_SEED)]
        seed: u64,
        /// Draws per rule at n = 4 and n = 5.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

enum Failure {
    Core(Error),
    Input(String),
    Io(std::io::Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn parse_weight(s: &str) -> Result<WeightVector, Failure> {
    let entries = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Input(format!("not a comma-separated list of integers: {s:?}")))?;
    Ok(WeightVector::from_i64(&entries)?)
}

fn print_json(out: &mut impl Write, v: &impl serde::Serialize) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable"))
}

fn cmd_table(out: &mut impl Write, cache: &SharedCache, n: usize, format: Format, opts: TableOptions, verify: bool) -> Result<(), Failure> {
    if n < 2 {
        return Err(Failure::Input(format!("n must be at least 2, got {n}")));
    }
    let table = compute_table(n, &opts, cache)?;
    let report = if verify { Some(verify_against_reference(&table)?) } else { None };
    match format {
        Format::Json => print_json(out, &TableDto::from_table(&table, report.as_ref().map(|r| r.passed()))),
        Format::Text => write!(out, "{table}"),
    }?;
    if let Some(r) = report {
        for m in &r.mismatches {
            eprintln!("mismatch: {m}");
        }
        if !r.passed() {
            return Err(Failure::Mismatch);
        }
    }
    if cache.write_failures() > 0 {
        eprintln!("warning: {} cache entries could not be written", cache.write_failures());
    }
    Ok(())
}

fn cmd_summand(out: &mut impl Write, cache: &SharedCache, w: &WeightVector, show: Show, format: Format, cap: u64) -> Result<(), Failure> {
    let config = ReduceConfig { cap, ..ReduceConfig::default() };
    if let Show::Trace = show {
        let r = Reducer::new(config, cache).reduce_summand(w)?;
        match format {
            Format::Json => print_json(out, &json!({
                "weight": w.entries(),
                "profile": profile_rows(&r.profile),
                "trace": TraceDto::from_trace(&r.trace),
            })),
            Format::Text => writeln!(out, "{}\n{}\nH = {}", w, r.trace, r.profile),
        }?;
        return Ok(());
    }
    let size = summand_size(w, cap.saturating_add(1));
    if size > cap {
        return Err(Error::ResourceLimitExceeded {
            cap,
            unfinished: vec![nilhom_core::UnfinishedOrbit { weight: w.clone(), basis_size: size }],
        }
        .into());
    }
    let s = build_summand(w)?;
    let c = s.complex();
    match (show, format) {
        (Show::Profile, Format::Json) => {
            print_json(out, &json!({ "weight": w.entries(), "profile": profile_rows(&homology_profile(c)?) }))?
        }
        (Show::Profile, Format::Text) => writeln!(out, "{}", homology_profile(c)?)?,
        (Show::Basis, Format::Json) => {
            let basis: serde_json::Map<_, _> = c
                .degrees()
                .map(|d| (d.to_string(), json!(s.basis(d).map(|m| m.to_string()).collect::<Vec<_>>())))
                .collect();
            print_json(out, &json!({ "weight": w.entries(), "size": s.len(), "basis": basis }))?;
        }
        (Show::Basis, Format::Text) => {
            writeln!(out, "{w}: {} monomials", s.len())?;
            for d in c.degrees() {
                let ms: Vec<String> = s.basis(d).map(|m| m.to_string()).collect();
                writeln!(out, "{d:>3}  {}", ms.join(" "))?;
            }
        }
        (Show::Boundary, format) => {
            let mut lines = Vec::new();
            for d in c.degrees() {
                let Some(b) = c.boundary(d) else { continue };
                let lower: Vec<_> = s.basis(d - 1).collect();
                for (j, m) in s.basis(d).enumerate() {
                    let terms: Vec<String> =
                        b.column(j).iter().map(|&(i, v)| format!("{v:+}·{}", lower[i as usize])).collect();
                    if !terms.is_empty() {
                        lines.push((m.to_string(), terms.join(" ")));
                    }
                }
            }
            match format {
                Format::Json => print_json(out, &json!({
                    "weight": w.entries(),
                    "boundary": lines.iter().map(|(m, t)| json!({"wedge": m, "image": t})).collect::<Vec<_>>(),
                }))?,
                Format::Text => {
                    for (m, t) in lines {
                        writeln!(out, "∂({m}) = {t}")?;
                    }
                }
            }
        }
        (Show::Trace, _) => unreachable!(),
    }
    Ok(())
}

fn cmd_orbit(out: &mut impl Write, w: &WeightVector, format: Format) -> Result<(), Failure> {
    let cert = canonicalize(w);
    let class = match w.classify() {
        WeightClass::Permutation(_) => "permutation",
        WeightClass::Torsion => "torsion",
    };
    let mut members: Vec<(WeightVector, i32, bool)> = orbit(w).into_iter().map(|(v, s)| (v, s, false)).collect();
    if class == "torsion" {
        members.extend(orbit(&dual_gamma(w)?).into_iter().map(|(v, s)| (v, s, true)));
    }
    let word: String = cert.transform_word.iter().map(|s| s.to_string()).collect();
    match format {
        Format::Json => print_json(out, &json!({
            "weight": w.entries(),
            "class": class,
            "canonical": cert.canonical.entries(),
            "shift": cert.degree_shift,
            "dualized": cert.dualized,
            "word": word,
            "orbit": members.iter().map(|(v, s, g)| json!({"weight": v.entries(), "shift": s, "gamma": g})).collect::<Vec<_>>(),
        }))?,
        Format::Text => {
            writeln!(out, "weight     {w}")?;
            writeln!(out, "class      {class}")?;
            writeln!(out, "canonical  {}", cert.canonical)?;
            writeln!(out, "shift      {:+}", cert.degree_shift)?;
            writeln!(out, "dualized   {}", cert.dualized)?;
            writeln!(out, "word       {}", if word.is_empty() { "(none)" } else { &word })?;
            writeln!(out, "orbit")?;
            for (v, s, g) in members {
                writeln!(out, "  {v}  shift {s:+}{}", if g { "  (γ)" } else { "" })?;
            }
        }
    }
    Ok(())
}

fn report(out: &mut impl Write, r: &SuiteReport) -> Result<(), Failure> {
    writeln!(out, "{r}")?;
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn cmd_verify(out: &mut impl Write, cache: &SharedCache, suite: Suite, n_max: Option<usize>, seed: u64, samples: usize, jobs: usize) -> Result<(), Failure> {
    match suite {
        Suite::Lemmas => {
            let opts = LemmaOptions { n_max: n_max.unwrap_or(5), samples, seed, ..LemmaOptions::default() };
            report(out, &suites::lemma_suite(&opts)?)
        }
        Suite::Tables => {
            let opts = TableOptions { jobs, ..TableOptions::default() };
            report(out, &suites::table_suite(n_max.unwrap_or(6), &opts, cache)?.0)
        }
        Suite::Examples => report(out, &suites::example_suite()?),
        Suite::Structure => {
            let defaults = StructuralOptions::default();
            let opts = StructuralOptions { n_max: n_max.unwrap_or(defaults.n_max), ..defaults };
            report(out, &suites::structural_suite(&opts, cache)?)
        }
        Suite::Cups => report(out, &suites::cup_suite(n_max.unwrap_or(4))?),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let cache = SharedCache::open(cli.cache_dir.as_deref())?;
    match cli.command {
        Command::Table { n, format, jobs, cap, verify, no_preflight, no_rules } => {
            let rules = if no_rules { RuleSet::NONE } else { RuleSet::ALL };
            let config = ReduceConfig { cap, rules, ..ReduceConfig::default() };
            cmd_table(out, &cache, n, format, TableOptions { jobs, config, preflight: !no_preflight }, verify)
        }
        Command::Summand { w, show, format, cap } => cmd_summand(out, &cache, &parse_weight(&w)?, show, format, cap),
        Command::Orbit { w, format } => cmd_orbit(out, &parse_weight(&w)?, format),
        Command::Verify { suite, n_max, seed, samples, jobs } => cmd_verify(out, &cache, suite, n_max, seed, samples, jobs),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let outcome = run(cli, &mut out).and_then(|()| out.flush().map_err(Failure::Io));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(EXIT_MISMATCH),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BAD_INPUT)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceLimitExceeded { cap, unfinished } => {
                    for u in unfinished {
                        // sizes are counted only up to one past the cap
                        let more = if u.basis_size > cap { " or more" } else { "" };
                        eprintln!("  unfinished {}  ({} wedges{more})", u.weight, u.basis_size);
                    }
                    ExitCode::from(EXIT_RESOURCE)
                }
                Error::WeightSumMismatch { .. }
                | Error::EntryOutOfRange { .. }
                | Error::AmbientOutOfRange { .. }
                | Error::InvalidGenerator { .. }
                | Error::NotTorsion
                | Error::UnknownN { .. } => ExitCode::from(EXIT_BAD_INPUT),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
