//! Constants, the two curvature formulas and the contracted corollary.

use crate::curvature::{corollary1_rhs, r_apostolov_j1, r_prop1};
use crate::report::{check_rng, CheckMode, Check, FloatResidual, Outcome, Suite, BOTH};
use crate::scalar::{format_rational, int, rat, Rational, RingElem, Scalar};
use crate::symbolic::{symbolic_base, symbolic_vector, vector_ring, BaseKind};
use crate::twistor::{derive_constants, TwistorContext, TwistorVector};

use super::sample;

pub const CHECKS: &[Check] = &[
    Check {
        id: "prop1.constants",
        paper_anchor: "constants a, b, c of the curvature formula for S4 (t = 1/2) and CP2 (t = 1/4)",
        suite: Suite::Prop1,
        backends: BOTH,
        run: check_constants,
    },
    Check {
        id: "prop1.equivalence.s4",
        paper_anchor: "curvature formula in J2 form equals the J1 form, twistor space of S4",
        suite: Suite::Prop1,
        backends: BOTH,
        run: |m| check_equivalence(m, BaseKind::Sphere4),
    },
    Check {
        id: "prop1.equivalence.cp2",
        paper_anchor: "curvature formula in J2 form equals the J1 form, twistor space of CP2",
        suite: Suite::Prop1,
        backends: BOTH,
        run: |m| check_equivalence(m, BaseKind::Cp2Bar),
    },
    Check {
        id: "prop1.symmetries.s4",
        paper_anchor: "curvature tensor symmetries of the J2 formula, twistor space of S4",
        suite: Suite::Prop1,
        backends: BOTH,
        run: |m| check_symmetries(m, BaseKind::Sphere4),
    },
    Check {
        id: "prop1.symmetries.cp2",
        paper_anchor: "curvature tensor symmetries of the J2 formula, twistor space of CP2",
        suite: Suite::Prop1,
        backends: BOTH,
        run: |m| check_symmetries(m, BaseKind::Cp2Bar),
    },
    Check {
        id: "prop1.corollary1.s4",
        paper_anchor: "contracted curvature R(J2N, J2X, X, N) for X orthogonal to N and J2N, S4",
        suite: Suite::Prop1,
        backends: BOTH,
        run: |m| check_corollary1(m, BaseKind::Sphere4),
    },
    Check {
        id: "prop1.corollary1.cp2",
        paper_anchor: "contracted curvature R(J2N, J2X, X, N) for X orthogonal to N and J2N, CP2",
        suite: Suite::Prop1,
        backends: BOTH,
        run: |m| check_corollary1(m, BaseKind::Cp2Bar),
    },
];

fn check_constants(mode: &CheckMode) -> Outcome {
    let cases = [
        ((12, rat(1, 2)), [rat(3, 8), rat(1, 8), int(2)]),
        ((24, rat(1, 4)), [rat(3, 4), rat(1, 4), int(4)]),
    ];
    match mode {
        CheckMode::Exact => {
            let mut ok = true;
            let mut cert = Vec::new();
            for ((s, t), want) in &cases {
                let k = derive_constants(&int(*s), t).expect("positive parameters");
                ok &= [&k.a, &k.b, &k.c] == [&want[0], &want[1], &want[2]];
                cert.push(format!(
                    "s={s}: ({}, {}, {})",
                    format_rational(&k.a),
                    format_rational(&k.b),
                    format_rational(&k.c)
                ));
            }
            let flat = derive_constants(&int(12), &int(2)).expect("positive parameters");
            ok &= Scalar::is_zero(&flat.a);
            Outcome::from_bool(ok).residual("0").certificate(cert.join("; "))
        }
        CheckMode::Float(cfg) => {
            let mut r = FloatResidual::new(cfg.tolerance);
            for ((s, t), want) in &cases {
                let k = derive_constants(&(*s as f64), &t.to_f64().unwrap_or(0.0))
                    .expect("positive parameters");
                for (got, w) in [k.a, k.b, k.c].iter().zip(want) {
                    r.compare(*got, w.to_f64().unwrap_or(f64::NAN));
                }
            }
            r.outcome()
        }
    }
}

fn symbolic_context(
    kind: BaseKind,
    prefixes: &[&str],
    kappa: &Rational,
) -> (TwistorContext<RingElem>, Vec<TwistorVector<RingElem>>) {
    let ring = vector_ring("free-vectors", kind, prefixes, None).expect("free ring is confluent");
    let ctx = TwistorContext::nearly_kahler(symbolic_base(&ring, kind), RingElem::constant(kappa.clone()))
        .expect("positive parameters");
    let vs = prefixes.iter().map(|p| symbolic_vector(&ring, p)).collect();
    (ctx, vs)
}

fn check_equivalence(mode: &CheckMode, kind: BaseKind) -> Outcome {
    match mode {
        CheckMode::Exact => {
            let mut out = Outcome::pass().residual("0");
            for kappa in sample::kappas(kind) {
                let (ctx, v) = symbolic_context(kind, &["x", "y", "z", "t"], &kappa);
                let d = r_prop1(&ctx, &v[0], &v[1], &v[2], &v[3])
                    - r_apostolov_j1(&ctx, &v[0], &v[1], &v[2], &v[3]);
                if !d.is_zero() {
                    return Outcome::fail().residual(d.render_brief(super::BRIEF));
                }
                out = out.note(format!("κ={}: difference normal form 0 in 24 free components", format_rational(&kappa)));
            }
            out
        }
        CheckMode::Float(cfg) => {
            let mut rng = check_rng(cfg.seed, "prop1.equivalence");
            let mut r = FloatResidual::new(cfg.tolerance);
            for _ in 0..cfg.trials {
                let ctx = sample::float_context(kind, 1.0, &mut rng);
                let v: Vec<_> = (0..4).map(|_| sample::vector(&mut rng)).collect();
                r.compare(
                    r_prop1(&ctx, &v[0], &v[1], &v[2], &v[3]),
                    r_apostolov_j1(&ctx, &v[0], &v[1], &v[2], &v[3]),
                );
            }
            r.outcome()
        }
    }
}

/// Antisymmetry in each pair, pair symmetry and the first Bianchi identity,
/// as four residuals.
fn symmetry_residuals<S: Scalar>(ctx: &TwistorContext<S>, v: &[TwistorVector<S>]) -> [S; 4] {
    let r = |a: usize, b: usize, c: usize, d: usize| r_prop1(ctx, &v[a], &v[b], &v[c], &v[d]);
    let base = r(0, 1, 2, 3);
    [
        base.clone() + r(1, 0, 2, 3),
        base.clone() + r(0, 1, 3, 2),
        base.clone() - r(2, 3, 0, 1),
        base + r(1, 2, 0, 3) + r(2, 0, 1, 3),
    ]
}

fn check_symmetries(mode: &CheckMode, kind: BaseKind) -> Outcome {
    match mode {
        CheckMode::Exact => {
            for kappa in sample::kappas(kind) {
                let (ctx, v) = symbolic_context(kind, &["x", "y", "z", "t"], &kappa);
                for (name, res) in ["antisymmetry XY", "antisymmetry ZT", "pair symmetry", "first Bianchi"]
                    .iter()
                    .zip(symmetry_residuals(&ctx, &v))
                {
                    if !res.is_zero() {
                        return Outcome::fail().residual(res.render_brief(super::BRIEF)).certificate(*name);
                    }
                }
            }
            Outcome::pass()
                .residual("0")
                .certificate("antisymmetry XY, antisymmetry ZT, pair symmetry, first Bianchi: all 0")
        }
        CheckMode::Float(cfg) => {
            let mut rng = check_rng(cfg.seed, "prop1.symmetries");
            let mut r = FloatResidual::new(cfg.tolerance);
            for _ in 0..cfg.trials {
                let ctx = sample::float_context(kind, 1.0, &mut rng);
                let v: Vec<_> = (0..4).map(|_| sample::vector(&mut rng)).collect();
                for res in symmetry_residuals(&ctx, &v) {
                    r.compare(res, 0.0);
                }
            }
            r.outcome()
        }
    }
}

fn check_corollary1(mode: &CheckMode, kind: BaseKind) -> Outcome {
    match mode {
        CheckMode::Exact => {
            let mut out = Outcome::pass().residual("0");
            for kappa in sample::kappas(kind) {
                let p = sample::symbolic_pair(kind, &kappa).expect("unit-normal ring is confluent");
                let lhs = r_prop1(&p.ctx, &p.ctx.j2(&p.n), &p.ctx.j2(&p.x), &p.x, &p.n);
                let rhs = match corollary1_rhs(&p.ctx, &p.n, &p.x) {
                    Ok(v) => v,
                    Err(e) => return Outcome::fail().certificate(e.to_string()),
                };
                let d = lhs - rhs;
                if !d.is_zero() {
                    return Outcome::fail().residual(d.render_brief(super::BRIEF));
                }
                out = out.note(format!(
                    "κ={}: difference 0 modulo ‖N‖² = 1",
                    format_rational(&kappa)
                ));
            }
            out
        }
        CheckMode::Float(cfg) => {
            let mut rng = check_rng(cfg.seed, "prop1.corollary1");
            let mut r = FloatResidual::new(cfg.tolerance);
            for _ in 0..cfg.trials {
                let ctx = sample::float_context(kind, 1.0, &mut rng);
                let (n, x) = sample::admissible_pair(&ctx, &mut rng);
                let lhs = r_prop1(&ctx, &ctx.j2(&n), &ctx.j2(&x), &x, &n);
                match corollary1_rhs(&ctx, &n, &x) {
                    Ok(rhs) => r.compare(lhs, rhs),
                    Err(e) => return Outcome::fail().certificate(e.to_string()),
                }
            }
            r.outcome()
        }
    }
}
