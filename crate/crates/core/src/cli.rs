//! The `ara` command line front end.
//!
//! Exit codes: 0 certified, 1 refuted, 2 inconclusive, 3 input error.
//! `ARA_WORKERS` sets the number of worker threads.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{certify_ara, verify_with_reference, OrderKind, Verdict, VerificationReport, VerifyOptions};
use crate::monomial::{MonomialIdeal, Variable};
use crate::polyring::FieldSpec;
use crate::simplicial::{cycle_complex, SimplicialComplex};
use crate::witness::{
    cone_lift, cycle5_witness, example4_witness, family_ideal, family_witness, schmitt_vogel, ConeLiftOptions,
    SVPartition, Trace, WitnessSet,
};

pub const EXIT_INPUT: i32 = 3;

/// Construct and verify arithmetical-rank witnesses of Stanley-Reisner ideals.
#[derive(Debug, Parser)]
#[command(name = "ara", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a simplicial complex.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Build a witness.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Verify that a witness generates its target up to radical.
    Verify(VerifyArgs),
    /// Rebuild and verify every worked example.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Subcommand)]
pub enum ComplexCommand {
    /// Height, dimension, purity, minimal primes and the 1-dimensional CM test.
    Info {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Include intermediate matrices.
    #[arg(long)]
    pub trace: bool,
    /// Also write the witness JSON to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// The three-element witness of the 5-cycle.
    Cycle5 {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lift a complete intersection witness to a cone over a facet.
    Cone {
        #[arg(long)]
        complex: PathBuf,
        /// Comma separated facet, e.g. `x1,x2`.
        #[arg(long, value_delimiter = ',', required = true)]
        facet: Vec<Variable>,
        /// Base witness JSON.
        #[arg(long)]
        base: PathBuf,
        #[arg(long, default_value = "x0")]
        apex: Variable,
        /// Do not verify the base witness first.
        #[arg(long)]
        skip_base_check: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The determinantal witness of `I_n`, n >= 6.
    Family {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The four-element witness built from the 3x3 matrix `C`.
    Example4 {
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Witness JSON.
    pub witness: PathBuf,
    /// Replace the witness target by this ideal or complex JSON.
    #[arg(long)]
    pub ideal: Option<PathBuf>,
    #[arg(long, default_value = "q")]
    pub field: FieldSpec,
    #[arg(long, default_value = "degrevlex")]
    pub order: OrderKind,
    /// Search explicit exponents `g^k ∈ J`.
    #[arg(long)]
    pub powers: bool,
    /// Largest exponent tried with `--powers`.
    #[arg(long, default_value_t = 64, requires = "powers")]
    pub cap: u32,
    /// Skip the comparison of the Krull bound with the witness size.
    #[arg(long)]
    pub skip_ara: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value = "q")]
    pub field: FieldSpec,
}

/// Entry point used by the binary; returns the process exit code.
pub fn main() -> i32 {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { 0 };
        }
    };
    init_workers();
    let mut stdout = std::io::stdout().lock();
    match run(&config) {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.output.as_bytes());
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn init_workers() {
    if let Some(n) = std::env::var("ARA_WORKERS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Text printed on standard output together with the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    match &config.command {
        Command::Complex(ComplexCommand::Info { path, json }) => complex_info(path, *json).map(Outcome::ok),
        Command::Witness(w) => witness(w).map(Outcome::ok),
        Command::Verify(args) => verify(args),
        Command::Reproduce(args) => reproduce(args),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Json(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug, Serialize)]
struct ComplexInfo {
    vertices: Vec<Variable>,
    facets: Vec<Vec<Variable>>,
    ideal: MonomialIdeal,
    height: usize,
    dimension: usize,
    pure: bool,
    minimal_primes: Vec<Vec<Variable>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cohen_macaulay: Option<bool>,
}

pub fn complex_info(path: &Path, json: bool) -> Result<String> {
    let complex: SimplicialComplex = parse_json(path)?;
    let ideal = complex.stanley_reisner_ideal();
    let primes = complex.minimal_primes();
    let cm = complex.is_cm_one_dimensional().ok();
    if json {
        return to_json(&ComplexInfo {
            vertices: complex.vertices().to_vec(),
            facets: complex.facets().to_vec(),
            ideal,
            height: complex.height(),
            dimension: complex.dimension(),
            pure: complex.is_pure(),
            minimal_primes: primes.into_iter().map(|p| p.variables).collect(),
            cohen_macaulay: cm,
        });
    }
    let mut s = String::new();
    let _ = writeln!(s, "complex: {complex}");
    if ideal.is_empty() {
        let _ = writeln!(s, "ideal: 0 (the complex is a simplex)");
    } else {
        let _ = writeln!(s, "ideal: {ideal}");
    }
    let _ = writeln!(s, "height: {}", complex.height());
    let _ = writeln!(s, "dimension: {}", complex.dimension());
    let _ = writeln!(s, "pure: {}", yes_no(complex.is_pure()));
    let ps: Vec<String> = primes.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "minimal primes ({}): {}", ps.len(), ps.join(" ∩ "));
    match cm {
        Some(cm) => {
            let _ = writeln!(s, "cohen-macaulay: {}", yes_no(cm));
        }
        None => {
            let _ = writeln!(s, "cohen-macaulay: not decided (only pure 1-dimensional complexes are tested)");
        }
    }
    Ok(s)
}

fn witness(cmd: &WitnessCommand) -> Result<String> {
    let (w, output) = match cmd {
        WitnessCommand::Cycle5 { output } => (cycle5_witness(), output),
        WitnessCommand::Cone { complex, facet, base, apex, skip_base_check, output } => {
            let complex: SimplicialComplex = parse_json(complex)?;
            let base: WitnessSet = parse_json(base)?;
            let opts = ConeLiftOptions { skip_base_verification: *skip_base_check, ..ConeLiftOptions::default() };
            (cone_lift(&complex, facet, &base, *apex, &opts)?.0, output)
        }
        WitnessCommand::Family { n, output } => (family_witness(*n)?, output),
        WitnessCommand::Example4 { output } => (example4_witness()?.0, output),
    };
    let w = if output.trace { w } else { w.without_trace() };
    if let Some(path) = &output.out {
        fs::write(path, to_json(&w)?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    if output.json {
        return to_json(&w);
    }
    let mut s = w.to_string();
    if let Some(trace) = &w.trace {
        s.push_str(&render_trace(trace));
    }
    Ok(s)
}

fn render_trace(trace: &Trace) -> String {
    let mut s = String::new();
    match trace {
        Trace::ConeLift(t) => {
            let cols: Vec<String> = t.columns.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "columns: {}", cols.join(", "));
            let _ = writeln!(s, "assignment: {}", t.assignment);
            let _ = write!(s, "A:\n{}\nA_bar:\n{}\nA_prime:\n{}\n", t.a, t.a_bar, t.a_prime);
            let _ = writeln!(s, "D: {}", t.d);
        }
        Trace::Family(t) => {
            let _ = write!(s, "B:\n{}\ndet B: {}\n", t.b, t.det_b);
        }
        Trace::Example4(t) => {
            let _ = write!(s, "C:\n{}\ndet C: {}\n", t.c, t.det_c);
        }
        Trace::SchmittVogel(p) => {
            for (l, level) in p.levels.iter().enumerate() {
                let items: Vec<String> = level.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "P{l}: {}", items.join(", "));
            }
        }
    }
    s
}

fn load_target(path: &Path) -> Result<MonomialIdeal> {
    let text = read(path)?;
    if let Ok(ideal) = serde_json::from_str::<MonomialIdeal>(&text) {
        return Ok(ideal);
    }
    let complex: SimplicialComplex =
        serde_json::from_str(&text).map_err(|e| Error::Json(format!("{}: {e}", path.display())))?;
    Ok(complex.stanley_reisner_ideal())
}

fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let mut w: WitnessSet = parse_json(&args.witness)?;
    if let Some(path) = &args.ideal {
        w.target = load_target(path)?;
    }
    let opts = VerifyOptions {
        field: args.field,
        order: args.order,
        explicit_power: args.powers,
        cap: args.cap,
        certify_ara: !args.skip_ara,
    };
    let report = verify_with_reference(&w, &opts)?;
    let output = if args.json { to_json(&report)? } else { format!("{report}\n") };
    Ok(Outcome { output, code: report.verdict.exit_code() })
}

/// One worked example: how to build it and what it must certify.
struct Case {
    name: &'static str,
    constructions: &'static [&'static str],
    expected_ara: usize,
    expected_sci: bool,
    build: fn() -> Result<WitnessSet>,
}

fn v(i: u32) -> Variable {
    Variable(i)
}

fn cone_over_cycle() -> Result<WitnessSet> {
    let c5 = cycle_complex(5)?;
    Ok(cone_lift(&c5, &[v(1), v(2)], &cycle5_witness(), v(0), &ConeLiftOptions::default())?.0)
}

/// `I_7` as the cone over the relabeled 6-cycle of `I_6`.
fn cone_over_family() -> Result<WitnessSet> {
    let rename = |x: Variable| match x.0 {
        5 => v(6),
        6 => v(7),
        _ => x,
    };
    let base = family_witness(6)?;
    let relabeled = WitnessSet::new(
        base.target.rename(rename),
        base.elements.iter().map(|e| e.rename(rename)).collect(),
        base.provenance,
    );
    let hexagon = crate::simplicial::complex_from_ideal(&family_ideal(6)?, &(1..=6).map(v).collect::<Vec<_>>())?
        .rename(rename)?;
    Ok(cone_lift(&hexagon, &[v(4), v(6)], &relabeled, v(5), &ConeLiftOptions::default())?.0)
}

fn sv_case() -> Result<WitnessSet> {
    let m = |s: &str| s.parse().expect("well-formed literal");
    schmitt_vogel(&SVPartition::from_monomials(vec![vec![m("x3*x6")], vec![m("x3*x5"), m("x4*x6")]]))
}

fn cases() -> Vec<Case> {
    vec![
        Case {
            name: "C5",
            constructions: &["cycle5"],
            expected_ara: 3,
            expected_sci: true,
            build: || Ok(cycle5_witness()),
        },
        Case {
            name: "cone over C5",
            constructions: &["cycle5", "cone_lift"],
            expected_ara: 4,
            expected_sci: false,
            build: cone_over_cycle,
        },
        Case {
            name: "I6",
            constructions: &["family_ideal", "family_matrix_B", "family_witness"],
            expected_ara: 4,
            expected_sci: true,
            build: || family_witness(6),
        },
        Case {
            name: "I7",
            constructions: &["family_ideal", "family_matrix_B", "family_witness"],
            expected_ara: 5,
            expected_sci: false,
            build: || family_witness(7),
        },
        Case {
            name: "I7 as cone over I6",
            constructions: &["family_witness", "cone_lift"],
            expected_ara: 5,
            expected_sci: false,
            build: cone_over_family,
        },
        Case {
            name: "I8",
            constructions: &["family_ideal", "family_matrix_B", "family_witness"],
            expected_ara: 6,
            expected_sci: false,
            build: || family_witness(8),
        },
        Case {
            name: "I9",
            constructions: &["family_ideal", "family_matrix_B", "family_witness"],
            expected_ara: 7,
            expected_sci: false,
            build: || family_witness(9),
        },
        Case {
            name: "example 4",
            constructions: &["example4_witness"],
            expected_ara: 4,
            expected_sci: true,
            build: || example4_witness().map(|(w, _)| w),
        },
        Case {
            name: "example 4 sub-case",
            constructions: &["validate_sv", "schmitt_vogel"],
            expected_ara: 2,
            expected_sci: true,
            build: sv_case,
        },
    ]
}

/// One row of the reproduction table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproduceRow {
    pub name: String,
    pub constructions: Vec<String>,
    pub witness_size: usize,
    pub generators: usize,
    pub ara_lower: usize,
    pub ara_upper: usize,
    pub sci: bool,
    pub verdict: Verdict,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub seconds: f64,
}

/// Builds and certifies every case; rows come back in table order.
pub fn reproduce_rows(field: FieldSpec) -> Vec<ReproduceRow> {
    cases()
        .par_iter()
        .map(|case| {
            let start = Instant::now();
            let result = (case.build)().and_then(|w| {
                let opts = VerifyOptions { field, ..VerifyOptions::default() };
                certify_ara(&w, &opts).map(|r| (w, r))
            });
            let seconds = start.elapsed().as_secs_f64();
            let mut row = ReproduceRow {
                name: case.name.into(),
                constructions: case.constructions.iter().map(|s| s.to_string()).collect(),
                witness_size: 0,
                generators: 0,
                ara_lower: 0,
                ara_upper: 0,
                sci: false,
                verdict: Verdict::Refuted,
                matches: false,
                error: None,
                seconds,
            };
            match result {
                Ok((w, report)) => fill_row(&mut row, &w, &report, case),
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect()
}

fn fill_row(row: &mut ReproduceRow, w: &WitnessSet, report: &VerificationReport, case: &Case) {
    row.witness_size = w.len();
    row.generators = w.target.len();
    row.verdict = report.verdict;
    if let Some(a) = &report.ara {
        row.ara_lower = a.lower;
        row.ara_upper = a.upper;
        row.sci = a.sci;
    }
    row.matches = report.verdict == Verdict::Certified
        && report.ara.as_ref().and_then(|a| a.exact) == Some(case.expected_ara)
        && row.sci == case.expected_sci;
    if !row.matches && row.error.is_none() {
        row.error = Some(format!(
            "expected ara {} (SCI {}), got {}",
            case.expected_ara,
            yes_no(case.expected_sci),
            report.summary()
        ));
    }
}

fn reproduce(args: &ReproduceArgs) -> Result<Outcome> {
    let rows = reproduce_rows(args.field);
    let failed: Vec<&str> = rows.iter().filter(|r| !r.matches).map(|r| r.name.as_str()).collect();
    let output = if args.json {
        to_json(&rows)?
    } else {
        let mut s = format!(
            "{:<22} {:>7} {:>10} {:>9} {:>4} {:>12} {:>9}\n",
            "ideal", "witness", "generators", "ara", "SCI", "verdict", "time (s)"
        );
        for r in &rows {
            let ara = if r.ara_lower == r.ara_upper {
                r.ara_lower.to_string()
            } else {
                format!("[{}, {}]", r.ara_lower, r.ara_upper)
            };
            let _ = writeln!(
                s,
                "{:<22} {:>7} {:>10} {:>9} {:>4} {:>12} {:>9.3}",
                r.name,
                r.witness_size,
                r.generators,
                ara,
                yes_no(r.sci),
                r.verdict.to_string(),
                r.seconds
            );
        }
        for r in rows.iter().filter(|r| !r.matches) {
            let _ = writeln!(s, "mismatch: {}: {}", r.name, r.error.as_deref().unwrap_or("unexpected result"));
        }
        s
    };
    if !failed.is_empty() {
        eprintln!("mismatch in: {}", failed.join(", "));
    }
    Ok(Outcome { output, code: if failed.is_empty() { 0 } else { 1 } })
}
