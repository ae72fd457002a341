//! Check reports and the execution mode shared by every check.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::scalar::{approx_eq, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub paper_anchor: String,
    pub backend: Backend,
    pub status: Status,
    pub residual: Option<String>,
    pub certificate: Option<String>,
    pub elapsed_ms: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatConfig {
    pub seed: u64,
    pub trials: usize,
    pub tolerance: f64,
}

impl Default for FloatConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 10_000,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CheckMode {
    Exact,
    Float(FloatConfig),
}

impl CheckMode {
    pub fn backend(&self) -> Backend {
        match self {
            Self::Exact => Backend::Exact,
            Self::Float(_) => Backend::Float,
        }
    }
}

/// Generator for one check: the run seed mixed with a hash of the check id,
/// so checks draw independent streams whatever order they run in.
pub fn check_rng(seed: u64, id: &str) -> ChaCha8Rng {
    // FNV-1a: stable across platforms and toolchains.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// What a check body returns; timing and identity are added by [`run_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub residual: Option<String>,
    pub certificate: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Self::from_bool(true)
    }

    pub fn fail() -> Self {
        Self::from_bool(false)
    }

    pub fn degenerate() -> Self {
        Self {
            status: Status::Degenerate,
            residual: None,
            certificate: None,
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        Self {
            status: if ok { Status::Pass } else { Status::Fail },
            residual: None,
            certificate: None,
        }
    }

    pub fn residual(mut self, r: impl Into<String>) -> Self {
        self.residual = Some(r.into());
        self
    }

    pub fn certificate(mut self, c: impl Into<String>) -> Self {
        self.certificate = Some(c.into());
        self
    }

    /// Appends a note to the certificate.
    pub fn note(mut self, c: impl AsRef<str>) -> Self {
        self.certificate = Some(match self.certificate.take() {
            Some(prev) => format!("{prev}; {}", c.as_ref()),
            None => c.as_ref().to_string(),
        });
        self
    }

    /// Combines the outcome of several sub-checks; the first failure wins.
    pub fn and(self, other: Outcome) -> Outcome {
        match (self.status, other.status) {
            (Status::Pass, _) => {
                let mut out = other;
                if let Some(c) = self.certificate {
                    out.certificate = Some(match out.certificate {
                        Some(o) => format!("{c}; {o}"),
                        None => c,
                    });
                }
                if out.residual.is_none() {
                    out.residual = self.residual;
                }
                out
            }
            _ => self,
        }
    }
}

/// Running maximum of float discrepancies.
#[derive(Debug, Clone, Copy)]
pub struct FloatResidual {
    pub max: f64,
    pub tolerance: f64,
    pub samples: usize,
    ok: bool,
}

impl FloatResidual {
    pub fn new(tolerance: f64) -> Self {
        Self {
            max: 0.0,
            tolerance,
            samples: 0,
            ok: true,
        }
    }

    /// Records a comparison of `got` against `want`.
    pub fn compare(&mut self, got: f64, want: f64) {
        self.samples += 1;
        let d = (got - want).abs();
        if !d.is_finite() || !approx_eq(got, want, self.tolerance) {
            self.ok = false;
        }
        if d > self.max || d.is_nan() {
            self.max = d;
        }
    }

    pub fn ok(&self) -> bool {
        self.ok
    }

    pub fn outcome(&self) -> Outcome {
        Outcome::from_bool(self.ok).residual(format_float(self.max)).note(format!(
            "{} samples, tolerance {:e}",
            self.samples, self.tolerance
        ))
    }
}

pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.3e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Prop1,
    Cp3,
    F12,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Prop1 => "prop1",
            Self::Cp3 => "cp3",
            Self::F12 => "f12",
        }
    }
}

/// A registered check: `run` is called once per requested backend.
#[derive(Clone, Copy)]
pub struct Check {
    pub id: &'static str,
    pub paper_anchor: &'static str,
    pub suite: Suite,
    pub backends: &'static [Backend],
    pub run: fn(&CheckMode) -> Outcome,
}

pub const BOTH: &[Backend] = &[Backend::Exact, Backend::Float];
pub const EXACT_ONLY: &[Backend] = &[Backend::Exact];

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check").field("id", &self.id).finish()
    }
}

pub fn run_check(check: &Check, mode: &CheckMode) -> CheckReport {
    let start = Instant::now();
    let out = (check.run)(mode);
    CheckReport {
        id: check.id.to_string(),
        paper_anchor: check.paper_anchor.to_string(),
        backend: mode.backend(),
        status: out.status,
        residual: out.residual,
        certificate: out.certificate,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Wraps the outcome of a deliberately mutated computation: the control
/// passes when the mutation is detected.
pub fn control(mutated: Outcome) -> Outcome {
    let detected = mutated.status != Status::Pass;
    let mut out = Outcome::from_bool(detected);
    out.residual = mutated.residual;
    out.note(if detected {
        "mutation detected"
    } else {
        "mutation NOT detected"
    })
    .note(mutated.certificate.unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn rng_depends_on_seed_and_id() {
        let a: u64 = check_rng(1, "x").gen();
        let b: u64 = check_rng(1, "x").gen();
        let c: u64 = check_rng(2, "x").gen();
        let d: u64 = check_rng(1, "y").gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn outcome_combination() {
        let o = Outcome::pass().certificate("a").and(Outcome::fail().residual("r"));
        assert_eq!(o.status, Status::Fail);
        assert_eq!(o.residual.as_deref(), Some("r"));
        let c = control(Outcome::fail());
        assert_eq!(c.status, Status::Pass);
        assert_eq!(control(Outcome::pass()).status, Status::Fail);
    }

    #[test]
    fn float_residual_tracks_max() {
        let mut r = FloatResidual::new(1e-9);
        r.compare(1.0, 1.0 + 1e-12);
        assert!(r.ok());
        r.compare(2.0, 2.5);
        assert!(!r.ok());
        assert_eq!(r.max, 0.5);
    }

    #[test]
    fn json_field_names() {
        let rep = CheckReport {
            id: "x".into(),
            paper_anchor: "y".into(),
            backend: Backend::Exact,
            status: Status::Pass,
            residual: None,
            certificate: None,
            elapsed_ms: 0.0,
        };
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["backend"], "exact");
        assert_eq!(v["status"], "PASS");
    }
}
