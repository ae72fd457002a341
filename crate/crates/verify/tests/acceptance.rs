//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;
use twistor_core::checks::registry;
use twistor_core::report::{run_check, CheckMode, CheckReport, FloatConfig};
use twistor_core::scalar::{int, rat, Rational};
use twistor_core::twistor::derive_constants;

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Self { ok, detail: detail.into() }
    }
}

fn run(id: &str, mode: CheckMode) -> CheckReport {
    let check = registry()
        .into_iter()
        .find(|c| c.id == id)
        .unwrap_or_else(|| panic!("no check {id}"));
    run_check(&check, &mode)
}

fn exact(id: &str) -> CheckReport {
    run(id, CheckMode::Exact)
}

fn float(id: &str) -> CheckReport {
    run(id, CheckMode::Float(FloatConfig::default()))
}

fn cert(r: &CheckReport) -> &str {
    r.certificate.as_deref().unwrap_or("")
}

/// Collects failed expectations for one criterion.
#[derive(Default)]
struct Tally(Vec<String>);

impl Tally {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.0.push(what.into());
        }
    }

    fn passed(&mut self, r: &CheckReport) {
        self.expect(r.passed(), format!("{} {:?} is {:?}", r.id, r.backend, r.status));
    }

    fn contains(&mut self, r: &CheckReport, needle: &str) {
        self.expect(cert(r).contains(needle), format!("{} lacks `{needle}`", r.id));
    }

    fn verdict(self, ok_detail: impl Into<String>) -> Verdict {
        if self.0.is_empty() {
            Verdict::new(true, ok_detail)
        } else {
            Verdict::new(false, self.0.join("; "))
        }
    }
}

fn constants() -> Verdict {
    let mut t = Tally::default();
    let start = Instant::now();
    let sphere = derive_constants(&int(12), &rat(1, 2)).expect("positive");
    let cp2 = derive_constants(&int(24), &rat(1, 4)).expect("positive");
    let took = start.elapsed();
    // a = s/24 − t(s/24)², b = t(s/24)², c = 1/t.
    let oracle = |s: i64, t: Rational| {
        let q = rat(s, 24);
        (q.clone() - t.clone() * q.clone() * q.clone(), t.clone() * q.clone() * q, int(1) / t)
    };
    for (got, s, fibre, printed) in [
        (&sphere, 12, rat(1, 2), (rat(3, 8), rat(1, 8), int(2))),
        (&cp2, 24, rat(1, 4), (rat(3, 4), rat(1, 4), int(4))),
    ] {
        let triple = (got.a.clone(), got.b.clone(), got.c.clone());
        t.expect(triple == printed, format!("s={s}: printed values"));
        t.expect(triple == oracle(s, fibre), format!("s={s}: closed form"));
    }
    t.expect(took < Duration::from_millis(1), format!("took {took:?}"));
    t.verdict(format!("(3/8, 1/8, 2) and (3/4, 1/4, 4) in {took:?}"))
}

fn equivalence() -> Verdict {
    let mut t = Tally::default();
    let start = Instant::now();
    for id in ["prop1.equivalence.s4", "prop1.equivalence.cp2"] {
        t.passed(&exact(id));
        let f = float(id);
        t.passed(&f);
        let max: f64 = f.residual.as_deref().unwrap_or("nan").parse().unwrap_or(f64::NAN);
        t.expect(max <= 1e-9, format!("{id} float residual {max}"));
    }
    let took = start.elapsed();
    t.expect(took < Duration::from_secs(30), format!("took {took:?}"));
    t.verdict(format!("exact and 10⁴ float samples per space in {took:.1?}"))
}

fn symmetries() -> Verdict {
    let mut t = Tally::default();
    for id in ["prop1.symmetries.s4", "prop1.symmetries.cp2"] {
        let r = exact(id);
        t.passed(&r);
        t.contains(&r, "first Bianchi");
    }
    t.verdict("antisymmetry, pair symmetry and Bianchi exact on S4 and CP2")
}

fn contracted() -> Verdict {
    let mut t = Tally::default();
    for id in ["prop1.corollary1.s4", "prop1.corollary1.cp2"] {
        t.passed(&exact(id));
    }
    t.verdict("R(J2N,J2X,X,N) closed form exact for X ⟂ N, J2N")
}

fn cp3_chain() -> Verdict {
    let mut t = Tally::default();
    for id in ["cp3.expansions", "cp3.eq3-forcing", "cp3.must-be-horizontal"] {
        t.passed(&exact(id));
    }
    let v = exact("cp3.vertical-normal");
    t.passed(&v);
    t.expect(
        v.residual.as_deref() == Some("3/8·y1² + 3/8·y2² + 3/8·y3² + 3/8·y4²"),
        format!("vertical residual {:?}", v.residual),
    );
    let h = exact("cp3.horizontal-normal");
    t.passed(&h);
    // −½(0 −1; 1 0) = (0 1/2; −1/2 0).
    t.contains(&h, "F = (0 1/2; -1/2 0)");
    t.contains(&h, "FI + IF = (1 0; 0 1)");
    for c in registry().iter().filter(|c| c.id.starts_with("cp3.control.")) {
        t.passed(&exact(c.id));
    }
    t.verdict("expansions, forcing, residual 3/8|Xh|², F = −½(0 −1; 1 0), FI + IF = id; controls detect")
}

fn f12_chain() -> Verdict {
    let mut t = Tally::default();

    let e = exact("f12.eigen-equation");
    t.passed(&e);
    t.contains(&e, "gh(N,X)²: 7/4, gh(N,J2X)²: −21/4, gh(JN,X)²: 2, gh(JN,J2X)²: −1");

    t.passed(&exact("f12.dagger-roots"));
    for (c, s) in [(0.0f64, 1.0f64), (0.6, 0.8), (-0.28, 0.96), (0.8, -0.6)] {
        // Roots of 3s²δ² − 6csδ − (7 − 3c²) by the quadratic formula.
        let (qa, qb, qc) = (3.0 * s * s, -6.0 * c * s, -(7.0 - 3.0 * c * c));
        let disc = (qb * qb - 4.0 * qa * qc).sqrt();
        let mut want = [(-qb + disc) / (2.0 * qa), (-qb - disc) / (2.0 * qa)];
        let (p, m) = twistor_core::checks::f12::dagger_roots(c, s).expect("s ≠ 0");
        let mut got = [p, m];
        want.sort_by(f64::total_cmp);
        got.sort_by(f64::total_cmp);
        t.expect(
            got.iter().zip(&want).all(|(g, w)| (g - w).abs() < 1e-12),
            format!("roots at ({c}, {s})"),
        );
        t.expect((p * m + (7.0 - 3.0 * c * c) / (3.0 * s * s)).abs() < 1e-12, "root product");
    }

    let d = exact("f12.dagger-system");
    t.passed(&d);
    t.contains(&d, "0 outside the planes");
    // At (0, 1) the system is 3z₂² + 7z₁² = 0 with z₁ = x + iy, z₂ = z + it.
    let mut grid_hits = 0;
    for x in -2i64..=2 {
        for y in -2i64..=2 {
            for z in -2i64..=2 {
                for w in -2i64..=2 {
                    let re = 3 * (z * z - w * w) + 7 * (x * x - y * y);
                    let im = 3 * 2 * z * w + 7 * 2 * x * y;
                    if re == 0 && im == 0 {
                        grid_hits += 1;
                        t.expect((x, y, z, w) == (0, 0, 0, 0), format!("grid point ({x},{y},{z},{w})"));
                    }
                }
            }
        }
    }
    t.expect(grid_hits == 1, format!("{grid_hits} grid solutions"));

    t.passed(&exact("f12.injectivity-rank"));

    let g = exact("f12.gray-residual");
    t.passed(&g);
    t.expect(g.residual.as_deref() == Some("−4·δ²·h⁴·v⁴"), format!("Gray residual {:?}", g.residual));
    // −4δ₊²h⁴v⁴ at δ₊ = √84/6, h = v = 1/√2.
    let dp = 84f64.sqrt() / 6.0;
    let value = -4.0 * dp * dp * 0.25 * 0.25;
    t.expect((value + 7.0 / 12.0).abs() < 1e-9, "closed-form value");
    t.contains(&g, "-0.583333333");

    let h = exact("f12.horizontal-normal");
    t.passed(&h);
    for needle in [
        "R(e1∧e3) = (−1)·J⁺ + (−3·c̃·s̃)·I⁻ + (−3·s̃²)·J⁻",
        "hat = (−2)·K⁺",
        "F = (0 −1; 1 0)",
        "FI + IF = (−2 0; 0 −2)",
    ] {
        t.contains(&h, needle);
    }
    t.verdict("coefficients 7/4, −21/4, 2, −1; δ±; planes only; rank 4; −4δ²h⁴v⁴ and −7/12; F and −2·id")
}

fn strip_elapsed(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_elapsed);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_elapsed),
        _ => {}
    }
}

fn end_to_end() -> Verdict {
    let mut t = Tally::default();
    let bin = env!("CARGO_BIN_EXE_verify");
    let mut outputs = Vec::new();
    let mut slowest = Duration::ZERO;
    for _ in 0..2 {
        let start = Instant::now();
        let out = Command::new(bin)
            .args(["all", "--backend", "both", "--format", "json", "--seed", "7"])
            .output()
            .expect("verify runs");
        slowest = slowest.max(start.elapsed());
        t.expect(out.status.code() == Some(0), format!("exit {:?}", out.status.code()));
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
        let n = v["checks"].as_array().map_or(0, |a| a.len());
        t.expect(n >= 20, format!("{n} reports"));
        strip_elapsed(&mut v);
        outputs.push(serde_json::to_string(&v).expect("serializable"));
    }
    t.expect(outputs[0] == outputs[1], "JSON differs between runs");
    t.expect(slowest < Duration::from_secs(60), format!("took {slowest:?}"));
    let bad = Command::new(bin).args(["cp3", "--trials", "0"]).output().expect("verify runs");
    t.expect(bad.status.code() == Some(2), format!("--trials 0 exit {:?}", bad.status.code()));
    t.verdict(format!("exit 0 in {slowest:.1?}, identical JSON, usage error exits 2"))
}

fn sensitivity() -> Verdict {
    let mut t = Tally::default();
    let controls: Vec<_> = registry().into_iter().filter(|c| c.id.contains(".control.")).collect();
    for c in &controls {
        for r in [exact(c.id), run(c.id, CheckMode::Float(FloatConfig { trials: 500, ..FloatConfig::default() }))] {
            t.passed(&r);
            t.contains(&r, "mutation detected");
        }
    }
    for id in ["cp3.control.sign-flip", "cp3.control.kappa-scaled-f", "f12.control.eigen-coefficient"] {
        t.expect(controls.iter().any(|c| c.id == id), format!("{id} missing"));
    }
    t.verdict(format!("{} controls flip their check on both backends", controls.len()))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("constants", constants),
        ("curvature formula equivalence", equivalence),
        ("curvature symmetries", symmetries),
        ("contracted curvature", contracted),
        ("CP3 chain", cp3_chain),
        ("F12 chain", f12_chain),
        ("end to end", end_to_end),
        ("sensitivity", sensitivity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f();
        let status = if v.ok { "PASS" } else { "FAIL" };
        println!("criterion {} {status} {name}: {} ({:.1?})", i + 1, v.detail, start.elapsed());
        if !v.ok {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
