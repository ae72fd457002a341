//! Runs the check suites and renders their reports.

use std::fmt::Write as _;
use std::thread;

use serde::Serialize;
use thiserror::Error;
use twistor_core::checks::{registry, suite};
use twistor_core::report::{run_check, Backend, CheckMode, CheckReport, FloatConfig, Status, Suite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteArg {
    Prop1,
    Cp3,
    F12,
    All,
}

impl SuiteArg {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Prop1 => "prop1",
            Self::Cp3 => "cp3",
            Self::F12 => "f12",
            Self::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub suite: SuiteArg,
    pub backend: BackendArg,
    pub seed: u64,
    pub trials: usize,
    pub tolerance: f64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suite: SuiteArg::All,
            backend: BackendArg::Both,
            seed: 0,
            trials: 10_000,
            tolerance: 1e-9,
            format: Format::Text,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("tolerance must be a positive finite number")]
    BadTolerance,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(ConfigError::BadTolerance);
        }
        Ok(())
    }

    fn modes(&self) -> Vec<CheckMode> {
        let float = CheckMode::Float(FloatConfig {
            seed: self.seed,
            trials: self.trials,
            tolerance: self.tolerance,
        });
        match self.backend {
            BackendArg::Exact => vec![CheckMode::Exact],
            BackendArg::Float => vec![float],
            BackendArg::Both => vec![CheckMode::Exact, float],
        }
    }
}

/// Runs the selected checks in parallel; reports come back ordered by
/// (id, backend).
pub fn execute(cfg: &RunConfig) -> Vec<CheckReport> {
    let checks = match cfg.suite {
        SuiteArg::All => registry(),
        SuiteArg::Prop1 => suite(Suite::Prop1),
        SuiteArg::Cp3 => suite(Suite::Cp3),
        SuiteArg::F12 => suite(Suite::F12),
    };
    let jobs: Vec<_> = checks
        .iter()
        .flat_map(|c| {
            cfg.modes()
                .into_iter()
                .filter(|m| c.backends.contains(&m.backend()))
                .map(move |m| (c, m))
        })
        .collect();
    let mut reports: Vec<CheckReport> = thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(c, m)| s.spawn(move || run_check(c, m)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    });
    reports.sort_by(|a, b| (a.id.as_str(), a.backend).cmp(&(b.id.as_str(), b.backend)));
    reports
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

pub fn summarize(reports: &[CheckReport]) -> Summary {
    let pass = reports.iter().filter(|r| r.passed()).count();
    Summary {
        pass,
        fail: reports.len() - pass,
    }
}

#[derive(Serialize)]
struct JsonRun<'a> {
    schema: u32,
    suite: &'static str,
    checks: &'a [CheckReport],
    summary: Summary,
}

pub fn render_json(cfg: &RunConfig, reports: &[CheckReport]) -> String {
    let doc = JsonRun {
        schema: 1,
        suite: cfg.suite.name(),
        checks: reports,
        summary: summarize(reports),
    };
    serde_json::to_string_pretty(&doc).expect("reports serialize")
}

fn conclusion(suite: SuiteArg) -> &'static str {
    match suite {
        SuiteArg::Prop1 => "Curvature identities confirmed.",
        SuiteArg::Cp3 => "All CP3 contradictions confirmed.",
        SuiteArg::F12 => "All F12 contradictions confirmed.",
        SuiteArg::All => {
            "All contradictions confirmed: no hypersurface of CP3 or F12 satisfies Aφ = φA."
        }
    }
}

fn status_label(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Degenerate => "DEGENERATE",
    }
}

pub fn render_text(suite: SuiteArg, reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let backend = match r.backend {
            Backend::Exact => "exact",
            Backend::Float => "float",
        };
        let _ = writeln!(
            out,
            "{:<10} {:<5} {:<34} residual={} ({:.1} ms)",
            status_label(r.status),
            backend,
            r.id,
            r.residual.as_deref().unwrap_or("-"),
            r.elapsed_ms
        );
        let _ = writeln!(out, "           {}", r.paper_anchor);
        if let Some(c) = &r.certificate {
            let _ = writeln!(out, "           certificate: {c}");
        }
    }
    let s = summarize(reports);
    let _ = writeln!(out, "\n{} passed, {} failed", s.pass, s.fail);
    if s.fail == 0 {
        let _ = writeln!(out, "{}", conclusion(suite));
    }
    out
}

/// Executes `cfg` and writes the rendered reports; returns the exit code
/// (0 when every check passes, 1 otherwise).
pub fn run(cfg: &RunConfig, out: &mut impl std::io::Write) -> std::io::Result<i32> {
    let reports = execute(cfg);
    let text = match cfg.format {
        Format::Json => render_json(cfg, &reports),
        Format::Text => render_text(cfg.suite, &reports),
    };
    writeln!(out, "{text}")?;
    Ok(if summarize(&reports).fail == 0 { 0 } else { 1 })
}

/// Exit code for invalid invocations.
pub const USAGE_ERROR: i32 = 2;
