//! Run configuration, suite orchestration and report files.

mod config;
pub mod suites;

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

pub use config::{
    ClosedFormConfig, GeometryConfig, GridConfig, RestrictionConfig, RunConfig, StrichartzConfig, Suite, OUTPUT_ENV,
};

use crate::error::{Error, Result};

pub const SUMMARY_FILE: &str = "summary.json";
pub const TIMINGS_FILE: &str = "timings.json";

/// One invariant check: `value relation bound`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub relation: &'static str,
    pub bound: f64,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, relation: "<=", bound, passed: value <= bound }
    }

    pub fn at_least(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, relation: ">=", bound, passed: value >= bound }
    }

    /// A boolean property, recorded as 1 or 0.
    pub fn holds(name: &str, ok: bool) -> Self {
        Self { name: name.into(), value: if ok { 1.0 } else { 0.0 }, relation: "==", bound: 1.0, passed: ok }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    /// largest value among the `<=` checks
    pub max_residual: f64,
    pub checks: Vec<Check>,
    /// CSV files written, relative to the output directory
    pub files: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: Suite, checks: Vec<Check>, files: Vec<String>) -> Self {
        let max_residual = checks.iter().filter(|c| c.relation == "<=").map(|c| c.value).fold(0.0, f64::max);
        Self { suite, passed: checks.iter().all(|c| c.passed), max_residual, checks, files }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Deterministic part of a run: identical for identical config and seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub geometry: GeometryConfig,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub threads: usize,
    pub suites: Vec<(Suite, f64)>,
    pub total_seconds: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub summary: Summary,
    pub timings: Timings,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.summary.passed {
            0
        } else {
            1
        }
    }
}

fn run_suite(suite: Suite, cfg: &RunConfig, out: &Path) -> Result<SuiteReport> {
    match suite {
        Suite::VerifyCore => suites::verify_core(cfg, out),
        Suite::VerifyTransforms => suites::verify_transforms(cfg, out),
        Suite::VerifyClosedForms => suites::verify_closed_forms(cfg, out),
        Suite::RestrictionScan => suites::restriction_scan(cfg, out),
        Suite::SchattenScan => suites::schatten_scan(cfg, out),
        Suite::StrichartzScan => suites::strichartz_scan(cfg, out),
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Format(e.to_string()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Runs the selected suites in order on a pool of `parallelism` threads and
/// writes the CSVs, `summary.json` and `timings.json` into the output directory.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let out = cfg.output_dir.as_path();
    std::fs::create_dir_all(out)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut times = Vec::new();
    for &suite in &cfg.suites {
        let t = Instant::now();
        reports.push(pool.install(|| run_suite(suite, cfg, out))?);
        times.push((suite, t.elapsed().as_secs_f64()));
    }
    let summary = Summary {
        seed: cfg.seed,
        geometry: cfg.geometry.clone(),
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    };
    let timings = Timings { threads: pool.current_num_threads(), suites: times, total_seconds: start.elapsed().as_secs_f64() };
    write_json(&out.join(SUMMARY_FILE), &summary)?;
    write_json(&out.join(TIMINGS_FILE), &timings)?;
    Ok(RunOutcome { summary, timings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scratch(name: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!("dunkl-lab-cli-{name}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn empty_suite_list_passes_with_empty_summary() {
        let cfg = RunConfig { output_dir: scratch("empty"), ..Default::default() };
        let outcome = run(&cfg).unwrap();
        assert_eq!(outcome.exit_code(), 0);
        assert!(outcome.summary.suites.is_empty());
        assert!(cfg.output_dir.join(SUMMARY_FILE).exists());
    }

    #[test]
    fn verify_core_reports_c_kappa() {
        let cfg = RunConfig { suites: vec![Suite::VerifyCore], output_dir: scratch("core"), ..Default::default() };
        let outcome = run(&cfg).unwrap();
        let report = &outcome.summary.suites[0];
        let c = report.checks.iter().find(|c| c.name == "c_kappa").unwrap();
        assert!(c.value <= 1e-8, "{c:?}");
        assert!(report.passed, "{:?}", report.failures().collect::<Vec<_>>());
        let csv = std::fs::read_to_string(cfg.output_dir.join("verify-core.csv")).unwrap();
        assert!(csv.starts_with("check,value,relation,bound,passed\n"));
    }

    #[test]
    fn failing_check_fails_the_run() {
        let mut r = SuiteReport::new(Suite::VerifyCore, vec![Check::at_most("x", 2.0, 1.0)], vec![]);
        assert!(!r.passed);
        r = SuiteReport::new(Suite::VerifyCore, vec![Check::at_most("x", f64::NAN, 1.0)], vec![]);
        assert!(!r.passed, "NaN must not pass");
        assert!(Check::at_least("y", 0.2, 0.1).passed);
    }
}
