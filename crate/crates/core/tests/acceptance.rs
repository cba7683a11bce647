//! Runs every acceptance criterion at the default configuration and prints one PASS/FAIL line each.

use std::time::{Duration, Instant};

use svpsido::suites::{run_suites, SuiteConfig, SuiteName};

struct Criterion {
    id: u32,
    title: &'static str,
    suites: &'static [SuiteName],
    budget: Duration,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, title: "symbol algebra axioms", suites: &[SuiteName::PsidoAxioms], budget: secs(60) },
    Criterion { id: 2, title: "theta transform", suites: &[SuiteName::Theta, SuiteName::Timeshift], budget: secs(60) },
    Criterion { id: 3, title: "embedding bracket defect", suites: &[SuiteName::EmbeddingDefect], budget: secs(30) },
    Criterion { id: 4, title: "invariance and expansions", suites: &[SuiteName::Invariance], budget: secs(60) },
    Criterion { id: 5, title: "homomorphism into g", suites: &[SuiteName::Homomorphism], budget: secs(120) },
    Criterion { id: 6, title: "coadjoint action", suites: &[SuiteName::Coadjoint], budget: secs(300) },
    Criterion { id: 7, title: "representations", suites: &[SuiteName::DpiRep, SuiteName::DsigmaRep], budget: secs(60) },
    Criterion { id: 8, title: "poisson layer", suites: &[SuiteName::PoissonMoments], budget: secs(300) },
    Criterion { id: 9, title: "cocycles", suites: &[SuiteName::Cocycles], budget: secs(120) },
    Criterion { id: 10, title: "nu scan", suites: &[SuiteName::NuScan], budget: secs(120) },
];

fn main() {
    let config = SuiteConfig::default();
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let started = Instant::now();
        let reports = run_suites(c.suites, &config).expect("default configuration is valid");
        let elapsed = started.elapsed();
        let ok = reports.iter().all(|r| r.ok());
        let cases: usize = reports.iter().map(|r| r.cases).sum();
        let passed: usize = reports.iter().map(|r| r.passed).sum();
        let timing = if elapsed <= c.budget { "" } else { " (over time budget)" };
        println!(
            "{} criterion {:>2} {}: {passed}/{cases} cases, {:.1} s of {} s{timing}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
        );
        for r in &reports {
            for note in &r.notes {
                println!("    {}: {note}", r.suite);
            }
            if !r.ok() {
                print!("{r}");
            }
        }
        if !ok {
            failed.push(c.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
