//! `qseries`: evaluate q-series expressions, print string functions and run
//! the identity registry.

use clap::{Parser, Subcommand, ValueEnum};
use qseries::expr::{self, ParseError};
use qseries::strings::{c_full_expr, calc_hecke_expr, s_exponent, symmetry_reduce, StringLabel};
use qseries::verify::{self, RunOptions, Suite};
use qseries::{Execution, Exponent, Monomial, QSeries};
use std::process::ExitCode;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_EVAL: u8 = 3;
const EXIT_LABEL: u8 = 4;

/// `print!` that exits quietly once stdout is closed, e.g. piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = write!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("failed writing to stdout: {e}");
        }
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => { out!("{}\n", format_args!($($arg)*)) };
}

#[derive(Parser)]
#[command(name = "qseries", version, about = "Exact truncated q-series, string functions and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression, e.g. `f(1,2,1; q,q; 1) - J[1]^2`.
    Eval {
        expr: String,
        /// Truncation order, a positive rational such as 30 or 25/2.
        #[arg(long, default_value = "30", value_parser = parse_order)]
        order: Exponent,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the string function C^N_{m,l} = q^s CC^N_{m,l}.
    String {
        #[arg(long = "N")]
        level: i64,
        #[arg(long, allow_hyphen_values = true)]
        ell: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Print CC^N_{m,l} itself rather than the full string function.
        #[arg(long)]
        normalized: bool,
        /// Order of the series CC^N_{m,l}.
        #[arg(long, default_value = "30", value_parser = parse_order)]
        order: Exponent,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check registered identities; exits 1 if any case fails.
    Verify {
        /// A suite name, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: SuiteChoice,
        /// Overrides every case's default order.
        #[arg(long, value_parser = parse_order)]
        order: Option<Exponent>,
        /// Worker threads; 1 runs sequentially.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include per-case timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// List registered cases.
    List {
        /// Keep ids containing this substring.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy)]
struct SuiteChoice(Option<Suite>);

fn parse_suite(s: &str) -> Result<SuiteChoice, String> {
    if s == "all" {
        return Ok(SuiteChoice(None));
    }
    s.parse::<Suite>().map(|x| SuiteChoice(Some(x))).map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("expected `all` or one of {}", names.join(", "))
    })
}

fn parse_order(s: &str) -> Result<Exponent, String> {
    let e: Exponent = s.parse().map_err(|e: qseries::series::ParseExponentError| e.to_string())?;
    if e.is_positive() {
        Ok(e)
    } else {
        Err("order must be positive".into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { expr, order, format } => eval(&expr, order, format),
        Command::String { level, ell, m, normalized, order, format } => string(level, ell, m, normalized, order, format),
        Command::Verify { suite, order, jobs, format, timings } => run_verify(suite.0, order, jobs, format, timings),
        Command::List { filter, format } => list(filter.as_deref(), format),
    }
}

fn caret(src: &str, e: &ParseError) -> String {
    let col = src[..e.position().min(src.len())].chars().count();
    format!("error: {e}\n  {src}\n  {}^", " ".repeat(col))
}

fn print_series(s: &QSeries, format: Format) {
    match format {
        Format::Text => outln!("{s}"),
        Format::Json => outln!("{}", serde_json::to_string_pretty(&s.to_json()).expect("series serializes")),
    }
}

fn eval(src: &str, order: Exponent, format: Format) -> ExitCode {
    let ast = match expr::parse(src) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{}", caret(src, &e));
            return ExitCode::from(EXIT_PARSE);
        }
    };
    match expr::evaluate(&ast, order) {
        Ok(s) => {
            print_series(&s, format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_EVAL)
        }
    }
}

fn string(level: i64, ell: i64, m: i64, normalized: bool, order: Exponent, format: Format) -> ExitCode {
    let lbl = match StringLabel::new(level, ell, m) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_LABEL);
        }
    };
    let (reduced, note) = if (0..2 * level).contains(&m) {
        (lbl, None)
    } else {
        let r = symmetry_reduce(&lbl).expect("label already validated");
        (r, Some(format!("{lbl} = {r} by symmetry")))
    };
    let s = s_exponent(&lbl);
    // CC for the requested label: q^(-s) C, with C computed at the representative.
    let expr = if reduced == lbl {
        calc_hecke_expr(&lbl)
    } else {
        c_full_expr(&reduced).shift(Monomial::q(-s))
    };
    let series = match expr.eval(order) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_EVAL);
        }
    };
    let name = format!("C^{level}_{{{m},{ell}}}");
    let cc = format!("CC^{level}_{{{m},{ell}}}");
    match format {
        Format::Text => {
            if let Some(n) = &note {
                outln!("note: {n}");
            }
            outln!("s = {s}");
            if normalized {
                outln!("{cc} = {series}");
            } else {
                outln!("{name} = q^({s}) * ({series})");
            }
        }
        Format::Json => {
            let v = serde_json::json!({
                "label": { "N": level, "l": ell, "m": m },
                "reduced_to": note.as_ref().map(|_| serde_json::json!({ "N": reduced.level, "l": reduced.ell, "m": reduced.m })),
                "s": s.to_string(),
                "normalized": normalized,
                "series": series.to_json(),
            });
            outln!("{}", serde_json::to_string_pretty(&v).expect("json value serializes"));
        }
    }
    ExitCode::SUCCESS
}

fn run_verify(suite: Option<Suite>, order: Option<Exponent>, jobs: Option<u32>, format: Format, timings: bool) -> ExitCode {
    let exec = if jobs == Some(1) { Execution::Sequential } else { Execution::default() };
    let opts = RunOptions { order, exec, jobs: jobs.map(|j| j as usize), ..RunOptions::default() };
    let report = verify::run_suite(suite, &opts);
    match format {
        Format::Text => out!("{}", report.to_text(timings)),
        Format::Json => outln!("{}", report.to_json(timings)),
    }
    eprintln!(
        "{} case(s), {} failed, {} ms",
        report.cases.len(),
        report.failures(),
        report.wall_millis
    );
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    }
}

fn list(filter: Option<&str>, format: Format) -> ExitCode {
    let cases = verify::list_cases(filter);
    match format {
        Format::Text => {
            for c in cases {
                outln!("{}\t{}\t{}", c.id, c.default_order, c.reference);
            }
        }
        Format::Json => {
            let rows: Vec<_> = cases
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "case_id": c.id,
                        "suite": c.suite.name(),
                        "order": c.default_order.to_string(),
                        "lattice_den": c.lattice_den,
                        "reference": c.reference,
                    })
                })
                .collect();
            outln!("{}", serde_json::to_string_pretty(&rows).expect("json value serializes"));
        }
    }
    ExitCode::SUCCESS
}

