//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use ara_core::groebner::{certify_ara, ideal_member, verify_up_to_radical, TermOrder, Verdict, VerifyOptions};
use ara_core::simplicial::cycle_complex;
use ara_core::witness::{
    cone_lift, cycle5_witness, example4_witness, family_ideal, family_witness, schmitt_vogel, validate_sv,
    ConeLiftOptions, SVPartition, Trace, WitnessSet,
};
use ara_core::{FieldSpec, Monomial, MonomialIdeal, PolyMatrix, Polynomial, SimplicialComplex, Variable};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("cone over C5 golden", cone_golden),
        ("I6 and I7 goldens", family_goldens),
        ("C-matrix example golden", example4_golden),
        ("radical equality of the worked examples over Q, F2, F3, F5", worked_examples_verify),
        ("ara certificates", ara_values),
        ("cone lift on random Schmitt-Vogel complexes", random_cone_lifts),
        ("determinant term invariants for n = 6..12", determinant_invariants),
        ("Schmitt-Vogel soundness on random partitions", random_sv_partitions),
        ("Groebner membership and determinant oracles", oracle_agreement),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.2} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({secs:.2} s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// Runs the `ara` binary; returns stdout, exit code and wall time.
fn ara(args: &[&str]) -> Result<(String, i32, Duration), String> {
    let start = Instant::now();
    let out =
        Command::new(env!("CARGO_BIN_EXE_ara")).args(args).output().map_err(|e| format!("cannot run ara: {e}"))?;
    let elapsed = start.elapsed();
    let code = out.status.code().unwrap_or(-1);
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok((stdout, code, elapsed))
}

/// Converts TeX monomial notation (`2x_1x_2^3-x_{10}`) to a polynomial.
fn tex(s: &str) -> Polynomial {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}').collect();
    let cleaned = cleaned.replace("x_", "x");
    let mut out = String::new();
    for c in cleaned.chars() {
        if c == 'x' && out.chars().last().is_some_and(|p| p.is_ascii_digit()) {
            out.push('*');
        }
        out.push(c);
    }
    out.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn canonical(ss: &[&str]) -> Vec<String> {
    ss.iter().map(|s| tex(s).to_string()).collect()
}

fn lines(s: &str) -> Vec<String> {
    s.lines().map(str::to_string).collect()
}

fn timed_golden(args: &[&str], expected: &[&str], budget: Duration) -> Result<Duration, String> {
    let (out, code, elapsed) = ara(args)?;
    ensure(code == 0, || format!("`ara {}` exited with {code}", args.join(" ")))?;
    let got = lines(&out);
    let want = canonical(expected);
    ensure(got == want, || format!("`ara {}` printed {got:?}, expected {want:?}", args.join(" ")))?;
    ensure(elapsed < budget, || format!("`ara {}` took {elapsed:?}", args.join(" ")))?;
    Ok(elapsed)
}

const CONE_C5_GOLDEN: [&str; 4] = [
    "x_1^4x_3^3x_4x_5+x_0x_1^2x_3^2x_4x_5+x_0x_1^2x_3^3x_5+x_0^2x_3^2x_5
     +x_0x_1^4x_3x_4+x_0^2x_1^2x_4 +x_0^2x_1^2x_3-x_1^2x_2^4x_3x_4x_5-x_0x_2^4x_4x_5",
    "x_1^2x_3^2+x_0x_3",
    "x_1^2x_4^2+x_2^2x_5^2+x_0x_4",
    "x_2^2x_4^2+x_3^2x_5^2+x_0x_5",
];

const I6_GOLDEN: [&str; 4] =
    ["x_1^2x_3- x_1x_2x_4 -x_2x_3^2x_5", "x_1x_4+x_3x_5^2+x_2x_6", "x_2x_4+x_1x_5+x_4x_6", "x_2x_5+x_3x_6"];

const I7_GOLDEN: [&str; 5] = [
    "x_1^3x_3-x_1^2x_2x_5-x_1x_2x_3^2x_6+x_1x_2^2x_4-x_1x_2x_3^2x_5+x_2^2x_3x_5^2",
    "x_1x_4+x_3x_5^2+x_2x_7",
    "x_2x_4+x_1x_5+x_3x_6^2+x_4x_7",
    "x_2x_5+x_1x_6+x_5x_7",
    "x_2x_6+x_3x_7",
];

const EXAMPLE4_GOLDEN: [&str; 4] =
    ["x_1x_2x_3-x_1^2x_4", "x_1x_4+x_2x_5+x_3x_6", "x_2x_4+x_3x_5+x_4x_6", "x_1x_5+x_2x_6"];

const DET_C_GOLDEN: &str = "2x_1x_2x_3-x_1^2x_4-x_2^3";

fn cone_golden() -> Outcome {
    let c5 = data("c5.json");
    let base = data("eqq.json");
    let args =
        ["witness", "cone", "--complex", c5.to_str().unwrap(), "--facet", "x1,x2", "--base", base.to_str().unwrap()];
    let t = timed_golden(&args, &CONE_C5_GOLDEN, Duration::from_secs(1))?;
    let d = tex(CONE_C5_GOLDEN[0]);
    ensure(d.num_terms() == 9, || format!("D has {} terms", d.num_terms()))?;
    Ok(format!("4 polynomials, D with 9 terms, {:.3} s", t.as_secs_f64()))
}

fn family_goldens() -> Outcome {
    let t6 = timed_golden(&["witness", "family", "--n", "6"], &I6_GOLDEN, Duration::from_secs(1))?;
    let t7 = timed_golden(&["witness", "family", "--n", "7"], &I7_GOLDEN, Duration::from_secs(1))?;
    Ok(format!("n = 6 in {:.3} s, n = 7 in {:.3} s", t6.as_secs_f64(), t7.as_secs_f64()))
}

fn example4_golden() -> Outcome {
    timed_golden(&["witness", "example4"], &EXAMPLE4_GOLDEN, Duration::from_secs(1))?;
    let (out, code, _) = ara(&["witness", "example4", "--trace"])?;
    ensure(code == 0, || format!("exit {code}"))?;
    let det = out.lines().find_map(|l| l.strip_prefix("det C: ")).ok_or("no det C line in the trace")?;
    let want = tex(DET_C_GOLDEN).to_string();
    ensure(det == want, || format!("det C printed as {det}, expected {want}"))?;
    let (_, c) = example4_witness().map_err(|e| e.to_string())?;
    let det = c.determinant().map_err(|e| e.to_string())?;
    ensure(det == tex(DET_C_GOLDEN), || format!("library det C = {det}"))?;
    Ok("D, q1..q3 and det C".into())
}

/// Writes each worked example's witness JSON into `dir` via the CLI.
fn worked_example_files(dir: &Path) -> Result<Vec<(&'static str, PathBuf)>, String> {
    let c5 = data("c5.json");
    let base = data("eqq.json");
    let cases: [(&str, Vec<&str>); 5] = [
        ("C5", vec!["witness", "cycle5"]),
        (
            "cone over C5",
            vec![
                "witness",
                "cone",
                "--complex",
                c5.to_str().unwrap(),
                "--facet",
                "x1,x2",
                "--base",
                base.to_str().unwrap(),
            ],
        ),
        ("I6", vec!["witness", "family", "--n", "6"]),
        ("I7", vec!["witness", "family", "--n", "7"]),
        ("C-matrix example", vec!["witness", "example4"]),
    ];
    let mut files = Vec::new();
    for (i, (name, args)) in cases.into_iter().enumerate() {
        let path = dir.join(format!("w{i}.json"));
        let mut args = args;
        args.extend(["--out", path.to_str().unwrap()]);
        let (_, code, _) = ara(&args)?;
        ensure(code == 0, || format!("building {name} exited with {code}"))?;
        files.push((name, path));
    }
    Ok(files)
}

fn worked_examples_verify() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let files = worked_example_files(dir.path())?;
    let mut slowest = Duration::ZERO;
    for (name, path) in &files {
        for field in ["q", "fp:2", "fp:3", "fp:5"] {
            let (out, code, elapsed) = ara(&["verify", path.to_str().unwrap(), "--field", field, "--json"])?;
            slowest = slowest.max(elapsed);
            let report: Value = serde_json::from_str(&out).map_err(|e| format!("{name} over {field}: {e}"))?;
            ensure(code == 0 && report["verdict"] == "certified", || {
                format!("{name} over {field}: exit {code}, verdict {}", report["verdict"])
            })?;
            if field != "q" {
                ensure(report["characteristic_dependent"] == false, || {
                    format!("{name} over {field}: verdict differs from the rational run")
                })?;
            }
            ensure(elapsed < Duration::from_secs(60), || format!("{name} over {field} took {elapsed:?}"))?;
        }
    }
    Ok(format!("{} witnesses x 4 fields, slowest {:.2} s", files.len(), slowest.as_secs_f64()))
}

fn ara_of(w: &WitnessSet) -> Result<(usize, bool), String> {
    let r = certify_ara(w, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::Certified, || format!("{}: {}", w.target, r.summary()))?;
    let a = r.ara.expect("requested");
    Ok((a.exact.expect("certified implies exact"), a.sci))
}

fn ara_values() -> Outcome {
    let c5 = cycle_complex(5).map_err(|e| e.to_string())?;
    let v = Variable;
    let (cone, _) = cone_lift(&c5, &[v(1), v(2)], &cycle5_witness(), v(0), &ConeLiftOptions::default())
        .map_err(|e| e.to_string())?;
    let (a, sci) = ara_of(&cone)?;
    ensure(a == 4 && !sci, || format!("cone over C5: ara {a}, SCI {sci}"))?;
    let mut seen = vec![format!("cone over C5 -> {a}")];
    for n in 6..=9 {
        let w = family_witness(n).map_err(|e| e.to_string())?;
        let (a, sci) = ara_of(&w)?;
        ensure(a == n - 2, || format!("I{n}: ara {a}, expected {}", n - 2))?;
        ensure(sci == (n == 6), || format!("I{n}: SCI flag {sci}"))?;
        seen.push(format!("I{n} -> {a}{}", if sci { " SCI" } else { "" }));
    }
    Ok(seen.join(", "))
}

/// A random pure complex on at most seven vertices `x1..xn`.
fn random_pure_complex(rng: &mut ChaCha8Rng) -> Option<SimplicialComplex> {
    let n = rng.gen_range(4..=7u32);
    let dim = rng.gen_range(1..=3usize);
    let count = rng.gen_range(2..=6usize);
    let all: Vec<Vec<Variable>> = (1..=n).map(Variable).combinations(dim).collect();
    let mut facets: Vec<Vec<Variable>> = all.choose_multiple(rng, count.min(all.len())).cloned().collect();
    facets.sort();
    let vertices: Vec<Variable> = facets.iter().flatten().copied().sorted().dedup().collect();
    SimplicialComplex::new(vertices, facets).ok()
}

fn random_cone_lifts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut seen = Vec::new();
    let mut heights = Vec::new();
    let mut attempts = 0;
    while seen.len() < 20 {
        attempts += 1;
        ensure(attempts <= 20_000, || format!("only {} suitable complexes in {attempts} draws", seen.len()))?;
        let Some(complex) = random_pure_complex(&mut rng) else { continue };
        let ideal = complex.stanley_reisner_ideal();
        if ideal.is_empty() || seen.contains(&complex) {
            continue;
        }
        let height = complex.height();
        let Some(partition) = ara_core::witness::find_sv_partition(&ideal, height, 50_000) else { continue };
        let base = schmitt_vogel(&partition).map_err(|e| e.to_string())?;
        let facet = complex.facets().choose(&mut rng).expect("nonempty").clone();
        let (lifted, _) = cone_lift(&complex, &facet, &base, Variable(0), &ConeLiftOptions::default())
            .map_err(|e| format!("{complex}: {e}"))?;
        let coned = complex.cone(&facet, Variable(0)).map_err(|e| e.to_string())?;
        ensure(lifted.target == coned.stanley_reisner_ideal(), || {
            format!("{complex}: wrong target {}", lifted.target)
        })?;
        let report = certify_ara(&lifted, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        ensure(report.verdict == Verdict::Certified, || format!("{complex} over {facet:?}: {}", report.summary()))?;
        ensure(lifted.len() == height + 1, || format!("{complex}: {} elements for height {height}", lifted.len()))?;
        heights.push(height);
        seen.push(complex);
    }
    heights.sort();
    heights.dedup();
    Ok(format!("20 complexes from {attempts} draws, heights {heights:?}"))
}

fn determinant_invariants() -> Outcome {
    for n in 6..=12usize {
        let w = family_witness(n).map_err(|e| e.to_string())?;
        let ideal = family_ideal(n).map_err(|e| e.to_string())?;
        let Some(Trace::Family(trace)) = &w.trace else { return Err(format!("n = {n}: no trace")) };
        let d = &w.elements[0];
        let det = trace.b.determinant().map_err(|e| e.to_string())?;
        ensure(trace.det_b == det, || format!("n = {n}: recorded det B differs"))?;
        for (m, _) in d.terms() {
            ensure(ideal.contains_monomial(m), || format!("n = {n}: term {m} of D outside I_n"))?;
        }
        let lead = Monomial::from_exponents(vec![0, (n - 4) as u32, 0, 1]);
        let rest = d - &Polynomial::from(lead);
        ensure(rest.num_terms() + 1 == d.num_terms(), || format!("n = {n}: D lacks x1^{}*x3", n - 4))?;
        for (m, _) in rest.terms() {
            ensure(m.exponent(Variable(2)) > 0, || format!("n = {n}: {m} not divisible by x2"))?;
            ensure((4..=n as u32).any(|j| m.exponent(Variable(j)) > 0), || {
                format!("n = {n}: {m} not divisible by any of x4..x{n}")
            })?;
        }
    }
    Ok("n = 6..12".into())
}

fn random_squarefree(rng: &mut ChaCha8Rng, vars: u32) -> Monomial {
    let size = rng.gen_range(1..=3.min(vars) as usize);
    let picked: Vec<Variable> =
        (1..=vars).map(Variable).collect::<Vec<_>>().choose_multiple(rng, size).copied().collect();
    Monomial::product(picked)
}

/// A valid partition with at least one level of two or more elements.
fn random_partition(rng: &mut ChaCha8Rng) -> Option<SVPartition> {
    let vars = rng.gen_range(2..=6u32);
    let mut ms: Vec<Monomial> = (0..rng.gen_range(3..=7)).map(|_| random_squarefree(rng, vars)).collect();
    ms.sort();
    ms.dedup();
    ms.shuffle(rng);
    if ms.len() < 3 {
        return None;
    }
    let levels = rng.gen_range(2..ms.len());
    let mut parts: Vec<Vec<Monomial>> = vec![Vec::new(); levels];
    parts[0].push(ms[0].clone());
    for (i, m) in ms[1..].iter().enumerate() {
        let l = if i + 1 < levels { i + 1 } else { rng.gen_range(1..levels) };
        parts[l].push(m.clone());
    }
    if parts.iter().all(|p| p.len() < 2) {
        return None;
    }
    let exponents = parts.iter().map(|p| p.iter().map(|_| rng.gen_range(1..=2)).collect()).collect();
    let partition = SVPartition::from_monomials(parts).with_exponents(exponents);
    validate_sv(&partition).ok().map(|_| partition)
}

fn random_sv_partitions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    let mut attempts = 0;
    while done < 100 {
        attempts += 1;
        ensure(attempts <= 200_000, || format!("only {done} valid partitions in {attempts} draws"))?;
        let Some(p) = random_partition(&mut rng) else { continue };
        let w = schmitt_vogel(&p).map_err(|e| e.to_string())?;
        let report = verify_up_to_radical(&w, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        ensure(report.verdict == Verdict::Certified, || format!("{:?}: {}", p.levels, report.summary()))?;
        done += 1;
    }
    Ok(format!("100 partitions from {attempts} draws"))
}

fn random_poly(rng: &mut ChaCha8Rng, vars: u32, terms: RangeInclusive<usize>, deg: u32) -> Polynomial {
    let mut f = Polynomial::zero();
    for _ in 0..rng.gen_range(terms) {
        let exps: Vec<u32> = (0..=vars).map(|i| if i == 0 { 0 } else { rng.gen_range(0..=deg) }).collect();
        let c = rng.gen_range(1..=5i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        f = &f + &(&Polynomial::integer(c) * &Polynomial::from(Monomial::from_exponents(exps)));
    }
    f
}

fn permutation_determinant(m: &PolyMatrix) -> Polynomial {
    let n = m.rows();
    let mut total = Polynomial::zero();
    for perm in (0..n).permutations(n) {
        let inversions =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let mut term = Polynomial::integer(if inversions % 2 == 0 { 1 } else { -1 });
        for (r, &c) in perm.iter().enumerate() {
            term = &term * m.get(r, c);
        }
        total = &total + &term;
    }
    total
}

fn oracle_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let order = TermOrder::degrevlex();
    let mut members = 0;
    for i in 0..1000 {
        let gens: Vec<Monomial> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let exps = (0..=4).map(|k| if k == 0 { 0 } else { rng.gen_range(0..=2) }).collect();
                Monomial::from_exponents(exps)
            })
            .collect();
        let ideal = MonomialIdeal::new(gens.clone());
        let f = if i % 2 == 0 {
            gens.iter().fold(Polynomial::zero(), |acc, g| {
                &acc + &(&random_poly(&mut rng, 4, 2..=2, 1) * &Polynomial::from(g.clone()))
            })
        } else {
            random_poly(&mut rng, 4, 1..=4, 2)
        };
        let polys: Vec<Polynomial> = gens.iter().cloned().map(Polynomial::from).collect();
        let by_groebner = ideal_member(&f, &polys, &order, FieldSpec::Rationals).map_err(|e| e.to_string())?;
        let by_terms = ideal.contains(&f);
        ensure(by_groebner == by_terms, || format!("{f} in {ideal}: Groebner {by_groebner}, terms {by_terms}"))?;
        members += usize::from(by_terms);
    }
    for _ in 0..50 {
        let rows: Vec<Vec<Polynomial>> =
            (0..4).map(|_| (0..4).map(|_| random_poly(&mut rng, 3, 0..=2, 2)).collect()).collect();
        let m = PolyMatrix::from_rows(rows).map_err(|e| e.to_string())?;
        let det = m.determinant().map_err(|e| e.to_string())?;
        let expected = permutation_determinant(&m);
        ensure(det == expected, || format!("determinant mismatch: {det} vs {expected}"))?;
    }
    Ok(format!("1000 membership pairs ({members} members), 50 determinants"))
}
