//! Acceptance checks. Prints one line per criterion and exits nonzero if any
//! fails. Every comparison is exact: tolerance is zero coefficients.

use qseries::expr::{evaluate, parse};
use qseries::verify::{registry, run_cases, run_suite, IdentityCase, RunOptions, Suite};
use qseries::{Execution, Exponent};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

const TOLERANCE: u32 = 0;
const FUZZ_INPUTS: usize = 100_000;
const FUZZ_SEED: u64 = 0x5eed;
const CORPUS: &str = include_str!("../../core/tests/data/roundtrip.txt");

struct Criterion {
    number: u8,
    title: &'static str,
    budget: Duration,
    check: fn() -> Result<String, String>,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { number: 1, title: "level 1-4 theta quotients", budget: secs(60), check: level_quotients },
        Criterion { number: 2, title: "double sum vs bilateral sum", budget: secs(60), check: oracle },
        Criterion { number: 3, title: "eta-quotient examples", budget: secs(120), check: kp_examples },
        Criterion { number: 4, title: "closed-form evaluations", budget: secs(120), check: evaluations },
        Criterion { number: 5, title: "double-sum expansions", budget: secs(120), check: structural },
        Criterion { number: 6, title: "Appell-Lerch laws", budget: secs(120), check: appell },
        Criterion { number: 7, title: "theta laws", budget: secs(120), check: theta },
        Criterion { number: 8, title: "parser robustness", budget: secs(300), check: parser },
        Criterion { number: 9, title: "determinism and precision", budget: secs(300), check: determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(c.check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let (verdict, detail) = match result {
            Ok(d) if took <= c.budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget")),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {}: {verdict}  {}: {detail} [tolerance {TOLERANCE}, {:.2} s of {} s]",
            c.number,
            c.title,
            took.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn with_prefix(prefix: &str) -> Vec<&'static IdentityCase> {
    registry().iter().filter(|c| c.id.starts_with(prefix)).collect()
}

/// Runs `cases` at `order` (or their defaults) and reports failures by id.
fn run(cases: &[&IdentityCase], order: Option<i64>) -> Result<usize, String> {
    let opts = RunOptions { order: order.map(Exponent::int), ..RunOptions::default() };
    let report = run_cases(cases, &opts);
    let bad: Vec<String> =
        report.cases.iter().filter(|c| !c.status.is_pass()).map(|c| format!("{} ({:?})", c.case_id, c.status)).collect();
    if bad.is_empty() {
        Ok(cases.len())
    } else {
        Err(format!("{} of {} failed: {}", bad.len(), cases.len(), bad.join("; ")))
    }
}

fn expect_count(what: &str, got: usize, want: usize) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: expected {want} cases, found {got}"))
    }
}

fn level_quotients() -> Result<String, String> {
    let cases = with_prefix("strings_levels/theta-side/");
    // levels 1..4 have 2, 6, 12 and 20 labels with 0 <= m < 2N
    expect_count("theta-side rows", cases.len(), 40)?;
    for (label, text) in [("N=1,", "J_1^2"), ("N=2,l=0,m=0", "J_1 J_2"), ("N=3,", "J_1 J_{6,15}"), ("N=4,", "J_{1,4} J_{6,12}")] {
        if !cases.iter().any(|c| c.id.contains(label)) {
            return Err(format!("no row for {label} ({text})"));
        }
    }
    let n = run(&cases, Some(30))?;
    Ok(format!("{n} rows equal at O(q^30)"))
}

fn oracle() -> Result<String, String> {
    let cases = with_prefix("strings_levels/oracle/");
    expect_count("labels with N <= 4", cases.len(), 40)?;
    let n = run(&cases, Some(25))?;
    Ok(format!("{n} labels equal at O(q^25)"))
}

fn kp_examples() -> Result<String, String> {
    let cases = with_prefix("kp_examples/");
    expect_count("identities", cases.len(), 5)?;
    for c in &cases {
        if c.default_order != Exponent::int(10) {
            return Err(format!("{} runs at O(q^{}), expected O(q^10)", c.id, c.default_order));
        }
    }
    let dens: Vec<String> = cases.iter().map(|c| c.lattice_den.to_string()).collect();
    let n = run(&cases, None)?;
    Ok(format!("{n} identities equal at O(q^10) on Z/{}", dens.join(", Z/")))
}

fn evaluations() -> Result<String, String> {
    let mut total = 0;
    for (prefix, want) in
        [("hecke/f131/", 3), ("hecke/f141/", 4), ("hecke/level-four-sum/", 7), ("strings_levels/level-four/", 7)]
    {
        let cases = with_prefix(prefix);
        expect_count(prefix, cases.len(), want)?;
        total += run(&cases, Some(30))?;
    }
    Ok(format!("{total} evaluations equal at O(q^30)"))
}

fn structural() -> Result<String, String> {
    let mut groups: Vec<String> = Vec::new();
    for p in 1..=3 {
        groups.push(format!("hecke/expansion-g/p={p},"));
    }
    for n in 2..=3 {
        groups.push(format!("hecke/expansion-h/n={n},"));
    }
    for p in 2..=4 {
        groups.push(format!("hecke/expansion-big-theta/p={p},"));
    }
    for p in 2..=3 {
        for l in 0..=2 {
            groups.push(format!("hecke/expansion-shifted/p={p},l={l},"));
        }
    }
    groups.push("hecke/shift/".into());
    groups.push("hecke/flip/".into());
    let mut total = 0;
    for g in &groups {
        let cases = with_prefix(g);
        if cases.len() < 3 {
            return Err(format!("{g}: only {} sample points", cases.len()));
        }
        total += run(&cases, Some(20))?;
    }
    Ok(format!("{} groups, {total} sample points, each equal at O(q^20)", groups.len()))
}

fn appell() -> Result<String, String> {
    let mut total = 0;
    for law in ["z-periodicity", "inversion", "x-shift", "changing-z"] {
        let cases = with_prefix(&format!("appell/{law}/"));
        expect_count(law, cases.len(), 5)?;
        total += run(&cases, Some(25))?;
    }
    let evals = with_prefix("appell/evaluation/");
    expect_count("evaluations", evals.len(), 2)?;
    total += run(&evals, Some(40))?;
    Ok(format!("{total} cases: laws at O(q^25), 1/2 and 0 at O(q^40)"))
}

fn theta() -> Result<String, String> {
    let cases: Vec<_> = registry().iter().filter(|c| c.suite == Suite::Theta).collect();
    for group in [
        "triple-product/",
        "j-elliptic/",
        "j-reflection/",
        "j-modulus-split/n=2",
        "j-modulus-split/n=3",
        "j-power/n=2",
        "j-power/n=4",
        "weierstrass/",
        "two-theta-product/",
        "two-theta-difference/",
        "two-theta-sum/",
        "theta-product-expansion/n=1",
        "theta-product-expansion/n=2",
        "j-split/m=2",
        "j-split/m=3",
        "j-split/m=12",
        "level-four-theta-evaluation",
        "level-four-j-split",
        "product/",
    ] {
        if !cases.iter().any(|c| c.id.starts_with(&format!("theta/{group}"))) {
            return Err(format!("missing group {group}"));
        }
    }
    for c in &cases {
        let want = if c.lattice_den >= 12 { 10 } else { 30 };
        if c.default_order < Exponent::int(want) {
            return Err(format!("{} runs at O(q^{}), expected at least O(q^{want})", c.id, c.default_order));
        }
    }
    let n = run(&cases, None)?;
    Ok(format!("{n} cases equal at O(q^30), fine lattices at O(q^10)"))
}

fn parser() -> Result<String, String> {
    const ALPHABET: &[u8] = b"qi0123456789()[]^-+*/,;. JmfjhgCetab_ \t";
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED);
    let mut parsed = 0;
    let mut crashes = Vec::new();
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    for k in 0..FUZZ_INPUTS {
        let len = rng.random_range(0..48);
        let bytes: Vec<u8> = if k % 2 == 0 {
            (0..len).map(|_| rng.random()).collect()
        } else {
            (0..len).map(|_| ALPHABET[rng.random_range(0..ALPHABET.len())]).collect()
        };
        let src = String::from_utf8_lossy(&bytes).into_owned();
        match panic::catch_unwind(|| parse(&src).map(|ast| evaluate(&ast, Exponent::int(3)).is_ok())) {
            Ok(Ok(_)) => parsed += 1,
            Ok(Err(_)) => {}
            Err(_) => crashes.push(src),
        }
    }
    panic::set_hook(hook);
    if !crashes.is_empty() {
        return Err(format!("{} crashing inputs, first {:?}", crashes.len(), crashes[0]));
    }

    let corpus: Vec<&str> = CORPUS.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    expect_count("round-trip corpus", corpus.len(), 50)?;
    for src in &corpus {
        let ast = parse(src).map_err(|e| format!("corpus `{src}`: {e}"))?;
        let printed = ast.to_string();
        let again = parse(&printed).map_err(|e| format!("`{printed}`: {e}"))?;
        if again != ast || again.to_string() != printed {
            return Err(format!("`{src}` does not round-trip through `{printed}`"));
        }
    }

    for (args, code) in [
        (&["eval", "J[1] +", "--order", "5"][..], 2),
        (&["eval", "m(q, q^2, q^2)", "--order", "5"][..], 3),
        (&["string", "--N", "3", "--ell", "1", "--m", "2"][..], 4),
    ] {
        let out = Command::new(env!("CARGO_BIN_EXE_qseries")).args(args).output().map_err(|e| e.to_string())?;
        if out.status.code() != Some(code) {
            return Err(format!("`qseries {}` exited with {:?}, expected {code}", args.join(" "), out.status.code()));
        }
    }
    Ok(format!(
        "{FUZZ_INPUTS} fuzz inputs without a crash ({parsed} parsed), {} corpus round trips, exit codes 2, 3, 4",
        corpus.len()
    ))
}

fn determinism() -> Result<String, String> {
    for suite in Suite::ALL {
        let par = RunOptions::default();
        let seq = RunOptions { exec: Execution::Sequential, ..RunOptions::default() };
        let runs = [run_suite(Some(suite), &par), run_suite(Some(suite), &par), run_suite(Some(suite), &seq)];
        let json: Vec<String> = runs.iter().map(|r| r.to_json(false)).collect();
        if json[0] != json[1] || json[0] != json[2] {
            return Err(format!("{suite}: JSON differs between runs"));
        }
        if !runs[0].all_pass() {
            return Err(format!("{suite}: {} failures", runs[0].failures()));
        }
    }
    let mut compared = 0;
    for case in registry() {
        let o = case.default_order;
        let a = case.expand(o, Exponent::ONE).map_err(|e| format!("{}: {e}", case.id))?;
        let b = case.expand(o, Exponent::int(2)).map_err(|e| format!("{}: {e}", case.id))?;
        if a.0.truncate(o) != b.0.truncate(o) || a.1.truncate(o) != b.1.truncate(o) {
            return Err(format!("{}: doubling the margin changed a coefficient", case.id));
        }
        compared += 1;
    }
    Ok(format!(
        "{} suites byte-identical over 3 runs (parallel, parallel, sequential); {compared} cases unchanged with margin 2",
        Suite::ALL.len()
    ))
}
