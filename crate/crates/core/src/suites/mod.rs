//! Named verification suites over exhaustive monomial families, run in parallel.

mod algebra;
mod nuscan;
mod poisson;
mod report;
mod sv;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::psido::HalfInt;
use crate::ring::GaussRat;

pub use nuscan::{nu_scan, NuFit, NuScanRow};
pub use report::{Failure, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteName {
    PsidoAxioms,
    Theta,
    Timeshift,
    Cocycles,
    EmbeddingDefect,
    Invariance,
    Homomorphism,
    Coadjoint,
    DpiRep,
    DsigmaRep,
    PoissonMoments,
    NuScan,
}

impl SuiteName {
    pub const ALL: [SuiteName; 12] = [
        SuiteName::PsidoAxioms,
        SuiteName::Theta,
        SuiteName::Timeshift,
        SuiteName::Cocycles,
        SuiteName::EmbeddingDefect,
        SuiteName::Invariance,
        SuiteName::Homomorphism,
        SuiteName::Coadjoint,
        SuiteName::DpiRep,
        SuiteName::DsigmaRep,
        SuiteName::PoissonMoments,
        SuiteName::NuScan,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::PsidoAxioms => "psido-axioms",
            SuiteName::Theta => "theta",
            SuiteName::Timeshift => "timeshift",
            SuiteName::Cocycles => "cocycles",
            SuiteName::EmbeddingDefect => "lemma26",
            SuiteName::Invariance => "lemma33",
            SuiteName::Homomorphism => "theorem51",
            SuiteName::Coadjoint => "theorem61",
            SuiteName::DpiRep => "dpi-rep",
            SuiteName::DsigmaRep => "dsigma-rep",
            SuiteName::PoissonMoments => "poisson-lemma71",
            SuiteName::NuScan => "nu-scan",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Parameters shared by all suites.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Lowest symbol order that must be trusted.
    pub floor: HalfInt,
    /// Bound on Laurent indices, x-degrees and orders.
    pub range: i64,
    /// Central charge.
    pub c: GaussRat,
    pub nu: GaussRat,
    /// Weight compared against in the coadjoint suite and added to the representation suites.
    pub mu: GaussRat,
    /// Render with `M = i/2` substituted.
    pub normalize_mass: bool,
    /// Extra random polynomial cases per suite.
    pub random: usize,
    pub seed: u64,
    pub nu_grid: Vec<GaussRat>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            floor: HalfInt::halves(-7),
            range: 3,
            c: GaussRat::int(2),
            nu: GaussRat::zero(),
            mu: GaussRat::zero(),
            normalize_mass: false,
            random: 0,
            seed: 0,
            nu_grid: [(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)].into_iter().map(|(n, d)| GaussRat::frac(n, d)).collect(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.range < 0 {
            return Err(Error::Domain(format!("range {} is negative", self.range)));
        }
        if self.floor > HalfInt::int(-1) {
            return Err(Error::Domain(format!("floor {} is above -1; traces and cocycles need order -1", self.floor)));
        }
        Ok(())
    }
}

/// Outcome of one case: both sides rendered, and whether they agree.
pub(crate) struct Check {
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

impl Check {
    pub fn new(ok: bool, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Check { ok, lhs: lhs.into(), rhs: rhs.into() }
    }

    pub fn eq<T: PartialEq + Normal>(lhs: &T, rhs: &T, norm: bool) -> Self {
        Check::new(lhs == rhs, lhs.show(norm), rhs.show(norm))
    }

    /// Prefix the left side with where it was observed.
    pub fn with_context(mut self, ctx: &str) -> Self {
        self.lhs = format!("at {ctx}: {}", self.lhs);
        self
    }

    /// A quantity that must vanish.
    pub fn zero<T: Normal>(value: &T, is_zero: bool, norm: bool) -> Self {
        Check::new(is_zero, value.show(norm), "0")
    }
}

/// Rendering with optional `M = i/2` substitution.
pub(crate) trait Normal: fmt::Display {
    fn normal(&self) -> String;

    fn show(&self, norm: bool) -> String {
        if norm {
            self.normal()
        } else {
            self.to_string()
        }
    }
}

macro_rules! normal_via_method {
    ($($t:ty),*) => {$(
        impl Normal for $t {
            fn normal(&self) -> String {
                self.normalize_mass().to_string()
            }
        }
    )*};
}

normal_via_method!(
    crate::ring::Scalar,
    crate::ring::CoeffFn,
    crate::psido::Symbol,
    crate::diffop2::DiffOp2,
    crate::kacmoody::GDual,
    crate::poisson::LocalFunctional
);

impl Normal for crate::svaction::SchrodPoint {
    fn normal(&self) -> String {
        crate::svaction::SchrodPoint::new(self.a.normalize_mass(), self.v.normalize_mass()).to_string()
    }
}

impl Normal for crate::kacmoody::GElement {
    fn normal(&self) -> String {
        crate::kacmoody::GElement {
            w: self.w.normalize_mass(),
            big_w: self.big_w.normalize_mass(),
            alpha: self.alpha.normalize_mass(),
        }
        .to_string()
    }
}

type CaseFn = Box<dyn Fn() -> Result<Check> + Send + Sync>;

/// A named input together with the computation checking it.
pub(crate) struct Case {
    inputs: String,
    run: CaseFn,
}

impl Case {
    pub fn new(inputs: impl Into<String>, run: impl Fn() -> Result<Check> + Send + Sync + 'static) -> Self {
        Case { inputs: inputs.into(), run: Box::new(run) }
    }
}

/// Failures kept per report.
const MAX_FAILURES: usize = 20;

pub(crate) fn execute(name: SuiteName, cases: Vec<Case>, notes: Vec<String>, started: Instant) -> SuiteReport {
    let outcomes: Vec<(String, Result<Check>)> = cases.into_par_iter().map(|c| ((c.run)(), c.inputs)).map(|(r, i)| (i, r)).collect();
    let mut report = SuiteReport::new(name.as_str());
    report.notes = notes;
    for (inputs, outcome) in outcomes {
        report.cases += 1;
        match outcome {
            Ok(check) if check.ok => report.passed += 1,
            Ok(check) => report.push_failure(Failure { inputs, lhs: check.lhs, rhs: check.rhs }, MAX_FAILURES),
            Err(e) => report.push_failure(Failure { inputs, lhs: format!("error: {e}"), rhs: String::new() }, MAX_FAILURES),
        }
    }
    report.millis = started.elapsed().as_millis();
    report
}

/// Run one suite.
pub fn run_suite(name: SuiteName, config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let started = Instant::now();
    let cfg = Arc::new(config.clone());
    let (cases, notes) = match name {
        SuiteName::PsidoAxioms => (algebra::psido_axioms(&cfg), vec![]),
        SuiteName::Theta => (algebra::theta(&cfg), vec![]),
        SuiteName::Timeshift => (algebra::timeshift(&cfg), vec![]),
        SuiteName::Cocycles => (algebra::cocycles(&cfg), vec![]),
        SuiteName::EmbeddingDefect => (sv::embedding_defect_suite(&cfg), vec![]),
        SuiteName::Invariance => (sv::invariance_suite(&cfg), vec![]),
        SuiteName::Homomorphism => (sv::homomorphism_suite(&cfg), vec![]),
        SuiteName::Coadjoint => (sv::coadjoint_suite(&cfg), vec![]),
        SuiteName::DpiRep => (sv::dpi_rep(&cfg), vec![]),
        SuiteName::DsigmaRep => (sv::dsigma_rep(&cfg), vec![]),
        SuiteName::PoissonMoments => poisson::moment_suite(&cfg),
        SuiteName::NuScan => nuscan::suite(&cfg)?,
    };
    Ok(execute(name, cases, notes, started))
}

/// Run the selected suites in order on a pool sized by `SVPSIDO_THREADS` when set.
pub fn run_suites(names: &[SuiteName], config: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    config.validate()?;
    let threads = std::env::var("SVPSIDO_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    pool.install(|| names.iter().map(|&n| run_suite(n, config)).collect())
}
