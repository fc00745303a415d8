//! Registry of identities with a runner that expands both sides and reports
//! the first coefficient where they disagree.

mod cases;

use crate::error::{Error, Result};
use num_integer::Integer;
use crate::lazy::{EvalCtx, Lazy};
use crate::par::{self, Execution};
use crate::series::{Comparison, Exponent, QSeries};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

/// Groups of related cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Notation,
    Theta,
    Appell,
    Hecke,
    StringsLevels,
    StringsSymmetries,
    Mps,
    KpExamples,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Notation,
        Suite::Theta,
        Suite::Appell,
        Suite::Hecke,
        Suite::StringsLevels,
        Suite::StringsSymmetries,
        Suite::Mps,
        Suite::KpExamples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Notation => "notation",
            Suite::Theta => "theta",
            Suite::Appell => "appell",
            Suite::Hecke => "hecke",
            Suite::StringsLevels => "strings_levels",
            Suite::StringsSymmetries => "strings_symmetries",
            Suite::Mps => "mps",
            Suite::KpExamples => "kp_examples",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

type Builder = Arc<dyn Fn() -> Result<Lazy> + Send + Sync>;

/// One identity `lhs = rhs` at one instantiation.
#[derive(Clone)]
pub struct IdentityCase {
    pub id: String,
    pub suite: Suite,
    lhs: Builder,
    rhs: Builder,
    /// Every exponent of either side should be a multiple of `1/lattice_den`.
    pub lattice_den: i64,
    pub default_order: Exponent,
    /// The identity in words or symbols.
    pub reference: String,
}

impl fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCase")
            .field("id", &self.id)
            .field("suite", &self.suite)
            .field("lattice_den", &self.lattice_den)
            .field("default_order", &self.default_order)
            .finish_non_exhaustive()
    }
}

impl IdentityCase {
    pub fn lhs(&self) -> Result<Lazy> {
        (self.lhs)()
    }

    pub fn rhs(&self) -> Result<Lazy> {
        (self.rhs)()
    }

    /// Both sides below `q^order`, each leaf expanded `margin` further.
    pub fn expand(&self, order: Exponent, margin: Exponent) -> Result<(QSeries, QSeries)> {
        let l = self.lhs()?.eval_with(order, &EvalCtx::new(margin))?;
        let r = self.rhs()?.eval_with(order, &EvalCtx::new(margin))?;
        Ok((l, r))
    }

    /// A copy whose right side has `extra` added.
    pub fn with_rhs_added(&self, extra: Lazy) -> IdentityCase {
        let rhs = self.rhs.clone();
        IdentityCase {
            id: format!("{}+perturbed", self.id),
            rhs: Arc::new(move || Ok(rhs()? + extra.clone())),
            ..self.clone()
        }
    }
}

/// Outcome of one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// Least exponent below the order where the sides differ.
    Mismatch { exponent: Exponent, lhs: String, rhs: String },
    BuilderError { message: String },
}

impl Status {
    pub fn is_pass(&self) -> bool {
        *self == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub case_id: String,
    pub suite: Suite,
    pub status: Status,
    pub order: Exponent,
    pub millis: u128,
    pub reference: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub cases: Vec<CaseReport>,
    pub wall_millis: u128,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.status.is_pass()).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }

    /// JSON array of case records. Timings are included only on request so
    /// that repeated runs give identical bytes.
    pub fn to_json(&self, timings: bool) -> String {
        #[derive(Serialize)]
        struct Mismatch<'a> {
            exponent: String,
            lhs: &'a str,
            rhs: &'a str,
        }
        #[derive(Serialize)]
        struct Row<'a> {
            case_id: &'a str,
            suite: Suite,
            status: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            mismatch: Option<Mismatch<'a>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            error: Option<&'a str>,
            order: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            millis: Option<u128>,
            reference: &'a str,
        }
        let rows: Vec<Row> = self
            .cases
            .iter()
            .map(|c| {
                let (status, mismatch, error) = match &c.status {
                    Status::Pass => ("pass", None, None),
                    Status::Mismatch { exponent, lhs, rhs } => {
                        ("mismatch", Some(Mismatch { exponent: exponent.to_string(), lhs, rhs }), None)
                    }
                    Status::BuilderError { message } => ("builder_error", None, Some(message.as_str())),
                };
                Row {
                    case_id: &c.case_id,
                    suite: c.suite,
                    status,
                    mismatch,
                    error,
                    order: c.order.to_string(),
                    millis: timings.then_some(c.millis),
                    reference: &c.reference,
                }
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("plain data serializes")
    }

    /// One line per case and a summary line.
    pub fn to_text(&self, timings: bool) -> String {
        let width = self.cases.iter().map(|c| c.case_id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.cases {
            let verdict = match &c.status {
                Status::Pass => "PASS".to_string(),
                Status::Mismatch { exponent, lhs, rhs } => {
                    format!("FAIL at q^{exponent}: lhs {lhs}, rhs {rhs}")
                }
                Status::BuilderError { message } => format!("ERROR {message}"),
            };
            let time = if timings { format!("  {} ms", c.millis) } else { String::new() };
            out.push_str(&format!("{:<width$}  O(q^{})  {verdict}{time}\n", c.case_id, c.order));
        }
        let n = self.cases.len();
        out.push_str(&format!("{} of {n} passed", n - self.failures()));
        if timings {
            out.push_str(&format!(" in {} ms", self.wall_millis));
        }
        out.push('\n');
        out
    }
}

/// Runner settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Replaces every case's default order.
    pub order: Option<Exponent>,
    pub exec: Execution,
    /// Worker threads for parallel execution; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Extra precision for every leaf expansion.
    pub margin: Exponent,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { order: None, exec: Execution::default(), jobs: None, margin: Exponent::ONE }
    }
}

/// The full registry, in its fixed order.
pub fn registry() -> &'static [IdentityCase] {
    static REGISTRY: OnceLock<Vec<IdentityCase>> = OnceLock::new();
    REGISTRY.get_or_init(cases::build)
}

/// Cases whose id contains `filter`, in registry order.
pub fn list_cases(filter: Option<&str>) -> Vec<&'static IdentityCase> {
    registry().iter().filter(|c| filter.is_none_or(|f| c.id.contains(f))).collect()
}

/// Expands and compares one case.
pub fn run_case(case: &IdentityCase, opts: &RunOptions) -> CaseReport {
    let order = opts.order.unwrap_or(case.default_order);
    let start = Instant::now();
    let status = match case.expand(order, opts.margin) {
        Err(e) => Status::BuilderError { message: e.to_string() },
        Ok((l, r)) => judge(case, &l, &r, order),
    };
    CaseReport {
        case_id: case.id.clone(),
        suite: case.suite,
        status,
        order,
        millis: start.elapsed().as_millis(),
        reference: case.reference.clone(),
    }
}

fn judge(case: &IdentityCase, l: &QSeries, r: &QSeries, order: Exponent) -> Status {
    match l.compare(r, order) {
        Err(e) => return Status::BuilderError { message: e.to_string() },
        Ok(Comparison::FirstMismatch { exponent, lhs, rhs }) => {
            return Status::Mismatch { exponent, lhs: lhs.to_string(), rhs: rhs.to_string() }
        }
        Ok(Comparison::Equal) => {}
    }
    for (side, s) in [("left", l), ("right", r)] {
        // the order itself may be fractional; only stored exponents count
        let d = s.truncate(order).terms().fold(1, |d, (e, _)| d.lcm(&e.denom()));
        if case.lattice_den % d != 0 {
            return Status::BuilderError {
                message: format!("{side} side has exponents in Z/{d}, expected Z/{}", case.lattice_den),
            };
        }
    }
    Status::Pass
}

/// Runs the given cases; the report lists them in the order given.
pub fn run_cases(cases: &[&IdentityCase], opts: &RunOptions) -> VerifyReport {
    let start = Instant::now();
    let work = || par::map(opts.exec, cases, |c| run_case(c, opts));
    let reports = match (opts.exec.is_parallel(), opts.jobs) {
        (true, Some(k)) => par::with_threads(k, work),
        _ => work(),
    };
    VerifyReport { cases: reports, wall_millis: start.elapsed().as_millis() }
}

/// Runs one suite, or every suite for `None`.
pub fn run_suite(suite: Option<Suite>, opts: &RunOptions) -> VerifyReport {
    let cases: Vec<&IdentityCase> = registry().iter().filter(|c| suite.is_none_or(|s| c.suite == s)).collect();
    run_cases(&cases, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Monomial;

    const MANIFEST: &str = include_str!("manifest.txt");

    #[test]
    fn registry_matches_manifest() {
        let ids: Vec<&str> = registry().iter().map(|c| c.id.as_str()).collect();
        // QSERIES_BLESS=1 rewrites the manifest after an intended registry change.
        if std::env::var_os("QSERIES_BLESS").is_some() {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/src/verify/manifest.txt");
            std::fs::write(path, ids.join("\n") + "\n").expect("write manifest");
            return;
        }
        let expected: Vec<&str> = MANIFEST.lines().filter(|l| !l.trim().is_empty()).collect();
        assert_eq!(ids, expected);
    }

    #[test]
    fn ids_are_unique_and_suites_prefix_them() {
        let mut seen = std::collections::HashSet::new();
        for c in registry() {
            assert!(seen.insert(&c.id), "duplicate id {}", c.id);
            assert!(c.id.starts_with(&format!("{}/", c.suite)), "{}", c.id);
            assert!(c.lattice_den > 0);
        }
        assert!(registry().len() >= 60);
    }

    #[test]
    fn listing_filters() {
        let f131: Vec<_> = list_cases(Some("f131")).into_iter().map(|c| c.id.clone()).collect();
        assert_eq!(f131.len(), 3, "{f131:?}");
        assert!(list_cases(Some("nonexistent")).is_empty());
        assert_eq!(list_cases(None).len(), registry().len());
    }

    #[test]
    fn kp_suite_passes() {
        let r = run_suite(Some(Suite::KpExamples), &RunOptions::default());
        assert_eq!(r.cases.len(), 5);
        assert!(r.all_pass(), "{}", r.to_text(false));
    }

    #[test]
    fn perturbed_case_fails_at_five() {
        let case = &list_cases(Some("hecke/f131/"))[0];
        let bad = case.with_rhs_added(Lazy::monomial(Monomial::q(5)));
        let r = run_case(&bad, &RunOptions::default());
        match r.status {
            Status::Mismatch { exponent, .. } => assert_eq!(exponent, Exponent::int(5)),
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
