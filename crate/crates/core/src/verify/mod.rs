//! Seeded property suites. Every suite draws its cases from a ChaCha8
//! stream derived from the user seed and the suite name, so reports are
//! reproducible and independent of which other suites run.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

mod clifford;
mod fcalc;
mod gen;
mod genus;
mod mackey;
mod pin;

pub use gen::{random_multivector, random_rational, random_signature, random_vector};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Clifford,
    PinSpin,
    Genus,
    Mackey,
    FunctionalCalculus,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::Clifford, Suite::PinSpin, Suite::Genus, Suite::Mackey, Suite::FunctionalCalculus];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::PinSpin => "pin-spin",
            Suite::Genus => "genus",
            Suite::Mackey => "mackey",
            Suite::FunctionalCalculus => "functional-calculus",
        }
    }

    fn stream(self, seed: u64) -> ChaCha8Rng {
        let tag =
            self.name().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
        ChaCha8Rng::seed_from_u64(seed ^ tag)
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
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Outcome of one named property over its cases.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    /// Largest residual seen, for floating-point checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn ok(&self) -> bool {
        self.passed == self.cases
    }
}

/// Accumulates cases for one [`CheckResult`].
pub(crate) struct Tally {
    result: CheckResult,
}

impl Tally {
    pub(crate) fn exact(name: &str) -> Self {
        Self {
            result: CheckResult {
                name: name.into(),
                cases: 0,
                passed: 0,
                max_residual: None,
                tolerance: None,
                first_failure: None,
            },
        }
    }

    pub(crate) fn within(name: &str, tol: f64) -> Self {
        let mut t = Self::exact(name);
        t.result.tolerance = Some(tol);
        t.result.max_residual = Some(0.0);
        t
    }

    fn fail(&mut self, detail: String) {
        if self.result.first_failure.is_none() {
            self.result.first_failure = Some(detail);
        }
    }

    /// Records an exact outcome; errors count as failures.
    pub(crate) fn check(&mut self, outcome: Result<bool>, case: impl FnOnce() -> String) {
        self.result.cases += 1;
        match outcome {
            Ok(true) => self.result.passed += 1,
            Ok(false) => self.fail(case()),
            Err(e) => self.fail(format!("{}: {e}", case())),
        }
    }

    /// Records a residual compared against the tolerance.
    pub(crate) fn residual(&mut self, outcome: Result<f64>, case: impl FnOnce() -> String) {
        let tol = self.result.tolerance.expect("residual check needs a tolerance");
        self.result.cases += 1;
        match outcome {
            Ok(r) if r.is_finite() => {
                let m = self.result.max_residual.get_or_insert(0.0);
                *m = m.max(r);
                if r < tol {
                    self.result.passed += 1;
                } else {
                    self.fail(format!("{}: residual {r:e}", case()));
                }
            }
            Ok(r) => self.fail(format!("{}: residual {r}", case())),
            Err(e) => self.fail(format!("{}: {e}", case())),
        }
    }

    pub(crate) fn finish(self) -> CheckResult {
        self.result
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub cases: usize,
    pub tolerance: f64,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

/// Parameters shared by all suites.
#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    /// Cases for the exact checks; floating-point checks use a tenth.
    pub cases: usize,
    pub tol: f64,
}

impl Config {
    pub fn float_cases(&self) -> usize {
        (self.cases / 10).max(1)
    }
}

pub fn run_suite(suite: Suite, cfg: &Config) -> SuiteReport {
    let mut rng = suite.stream(cfg.seed);
    let checks = match suite {
        Suite::Clifford => clifford::run(cfg, &mut rng),
        Suite::PinSpin => pin::run(cfg, &mut rng),
        Suite::Genus => genus::run(cfg, &mut rng),
        Suite::Mackey => mackey::run(cfg, &mut rng),
        Suite::FunctionalCalculus => fcalc::run(cfg, &mut rng),
    };
    let passed = checks.iter().all(CheckResult::ok);
    SuiteReport { suite, seed: cfg.seed, cases: cfg.cases, checks, passed }
}

/// Runs `suites` in the given order.
pub fn run_verify(suites: &[Suite], cfg: &Config) -> VerifyReport {
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, cfg)).collect();
    let passed = reports.iter().all(|r| r.passed);
    VerifyReport { seed: cfg.seed, cases: cfg.cases, tolerance: cfg.tol, suites: reports, passed }
}
