//! Twistor space of S⁴: the coefficient expansions, the forcing of
//! gʰ(X,N) = gʰ(J₂X,N) = 0, and the vertical, mixed and horizontal normals.

use std::sync::Arc;

use crate::base::{BaseSpace, CurvatureSign};
use crate::curvature::{corollary1_rhs, r_prop1};
use crate::frame::Bivector;
use crate::germ::{
    block_certificate, commutation_feasible, full_commutator, lemma2_constraint, phi_block,
    swap_horizontal, vertical_block, BlockShapeOperator, Mat2, WedgeOrder,
};
use crate::linalg::Matrix;
use crate::report::{check_rng, control, Check, CheckMode, FloatResidual, Outcome, Status, Suite, BOTH};
use crate::scalar::ideals::{circle_relation, COS, SIN};
use crate::scalar::{format_rational, int, rat, Polynomial, Rational, RelationIdeal, RingElem, Scalar};
use crate::symbolic::{homogeneous_membership, symbolic_base, BaseKind};
use crate::twistor::{TwistorContext, TwistorVector};

use super::{sample, BRIEF};

type V<S> = TwistorVector<S>;

pub const CHECKS: &[Check] = &[
    Check {
        id: "cp3.expansions",
        paper_anchor: "R(J2N, J2X, X, N) = 7/8 gh(X,N)^2 - 17/8 gh(J2X,N)^2 + ... and its twin for -R(J2N, X, J2X, N)",
        suite: Suite::Cp3,
        backends: BOTH,
        run: |m| check_expansions(m, &Expansion::printed()),
    },
    Check {
        id: "cp3.eq3-forcing",
        paper_anchor: "gh(X,N)^2 = gh(J2X,N)^2 for eigenvectors, applied again to X + J2X, forces gh(X,N) = gh(J2X,N) = 0",
        suite: Suite::Cp3,
        backends: BOTH,
        run: |m| check_eq3_forcing(m, &Expansion::printed()),
    },
    Check {
        id: "cp3.vertical-normal",
        paper_anchor: "the normal cannot be vertical: a |Xh|^2 = 0 with a = 3/8",
        suite: Suite::Cp3,
        backends: BOTH,
        run: |m| check_vertical_normal(m, BaseKind::Sphere4, None),
    },
    Check {
        id: "cp3.must-be-horizontal",
        paper_anchor: "a normal with nonzero vertical part must be horizontal",
        suite: Suite::Cp3,
        backends: BOTH,
        run: check_must_be_horizontal,
    },
    Check {
        id: "cp3.horizontal-normal",
        paper_anchor: "N cannot be horizontal: (Ae3)v = -1/2 K+, (Ae4)v = 1/2 J+, F = -1/2 (0 -1; 1 0)",
        suite: Suite::Cp3,
        backends: BOTH,
        run: |m| check_horizontal_normal(m, CurvatureSign::Standard, None),
    },
    Check {
        id: "cp3.control.expansion-coefficient",
        paper_anchor: "control: coefficient 7/8 replaced by 1 in the first expansion",
        suite: Suite::Cp3,
        backends: BOTH,
        run: |m| {
            let mut e = Expansion::printed();
            e.alpha = int(1);
            control(check_expansions(m, &e))
        },
    },
    Check {
        id: "cp3.control.degenerate-twin",
        paper_anchor: "control: coefficient -17/8 replaced by 7/8, so both expansions coincide",
        suite: Suite::Cp3,
        backends: BOTH,
        run: |m| {
            let mut e = Expansion::printed();
            e.beta = rat(7, 8);
            control(check_eq3_forcing(m, &e))
        },
    },
    Check {
        id: "cp3.control.a-zero",
        paper_anchor: "control: constant a set to 0 removes the vertical-normal contradiction",
        suite: Suite::Cp3,
        backends: BOTH,
        run: |m| control(check_vertical_normal(m, BaseKind::Sphere4, Some(Rational::from_integer(0.into())))),
    },
    Check {
        id: "cp3.control.sign-flip",
        paper_anchor: "control: curvature endomorphism with the opposite sign convention",
        suite: Suite::Cp3,
        backends: BOTH,
        run: |m| control(check_horizontal_normal(m, CurvatureSign::Flipped, None)),
    },
    Check {
        id: "cp3.control.kappa-scaled-f",
        paper_anchor: "control: block F scaled by the fibre size 1/2",
        suite: Suite::Cp3,
        backends: BOTH,
        run: |m| control(check_horizontal_normal(m, CurvatureSign::Standard, Some(rat(1, 2)))),
    },
];

/// Coefficients of the two expansions: α p² + β q² + a(‖Xʰ‖² + ‖Nʰ‖²‖X‖²) + m‖Xʰ‖²‖Nʰ‖²
/// and its twin with α, β exchanged, where p = gʰ(X,N) and q = gʰ(J₂X,N).
#[derive(Debug, Clone)]
pub(crate) struct Expansion {
    pub alpha: Rational,
    pub beta: Rational,
    pub a: Rational,
    pub m: Rational,
}

impl Expansion {
    pub fn printed() -> Self {
        Self {
            alpha: rat(7, 8),
            beta: rat(-17, 8),
            a: rat(3, 8),
            m: rat(-7, 8),
        }
    }

    /// α − β: the constant in front of p² − q² in the eigenvector constraint.
    pub fn gap(&self) -> Rational {
        &self.alpha - &self.beta
    }

    fn displays<S: Scalar>(&self, ctx: &TwistorContext<S>, n: &V<S>, x: &V<S>) -> (S, S) {
        let k = |q: &Rational| S::from_rational(q);
        let p = ctx.metric_h(x, n);
        let q = ctx.metric_h(&ctx.j2(x), n);
        let xh = ctx.metric_h(x, x);
        let nh = ctx.metric_h(n, n);
        let common = k(&self.a) * (xh.clone() + nh.clone() * ctx.norm_sq(x)) + k(&self.m) * xh * nh;
        let first = k(&self.alpha) * p.square() + k(&self.beta) * q.square() + common.clone();
        let twin = k(&self.beta) * p.square() + k(&self.alpha) * q.square() + common;
        (first, twin)
    }
}

/// Residuals: first display − R(J₂N,J₂X,X,N), twin + R(J₂N,X,J₂X,N), and
/// π*R(J₂N,J₂X,X,N) − gʰ(J₂X,N)².
fn expansion_residuals<S: Scalar>(e: &Expansion, ctx: &TwistorContext<S>, n: &V<S>, x: &V<S>) -> [S; 3] {
    let (jn, jx) = (ctx.j2(n), ctx.j2(x));
    let (first, twin) = e.displays(ctx, n, x);
    let pullback = ctx.base.curvature(&jn.h, &jx.h, &x.h, &n.h);
    [
        first - r_prop1(ctx, &jn, &jx, x, n),
        twin + r_prop1(ctx, &jn, x, &jx, n),
        pullback - ctx.metric_h(&jx, n).square(),
    ]
}

const EXPANSION_NAMES: [&str; 3] = ["first expansion", "twin expansion", "S4 pullback"];

fn check_expansions(mode: &CheckMode, e: &Expansion) -> Outcome {
    match mode {
        CheckMode::Exact => {
            for kappa in sample::kappas(BaseKind::Sphere4) {
                let p = sample::symbolic_pair(BaseKind::Sphere4, &kappa).expect("unit-normal ring is confluent");
                for (name, r) in EXPANSION_NAMES.iter().zip(expansion_residuals(e, &p.ctx, &p.n, &p.x)) {
                    if !r.is_zero() {
                        return Outcome::fail()
                            .residual(r.render_brief(BRIEF))
                            .certificate(format!("{name} mismatch at κ={}", format_rational(&kappa)));
                    }
                }
            }
            Outcome::pass()
                .residual("0")
                .certificate("both expansions and the pullback hold for unit N, X ⟂ N, J₂N at κ = 1, 1/2")
        }
        CheckMode::Float(cfg) => {
            let mut rng = check_rng(cfg.seed, "cp3.expansions");
            let mut r = FloatResidual::new(cfg.tolerance);
            for _ in 0..cfg.trials {
                let ctx = sample::float_context(BaseKind::Sphere4, 1.0, &mut rng);
                let (n, x) = sample::admissible_pair(&ctx, &mut rng);
                for res in expansion_residuals(e, &ctx, &n, &x) {
                    r.compare(res, 0.0);
                }
            }
            r.outcome()
        }
    }
}

/// X + J₂X, again orthogonal to N and J₂N.
fn rotated<S: Scalar>(ctx: &TwistorContext<S>, x: &V<S>) -> V<S> {
    x.clone() + ctx.j2(x)
}

/// Eigenvector constraint at X and at X + J₂X, against (α − β)(p² − q²) and
/// 4(α − β)pq.
fn forcing_residuals<S: Scalar>(e: &Expansion, ctx: &TwistorContext<S>, n: &V<S>, x: &V<S>) -> [S; 2] {
    let gap = S::from_rational(&e.gap());
    let p = ctx.metric_h(x, n);
    let q = ctx.metric_h(&ctx.j2(x), n);
    let (first, twin) = e.displays(ctx, n, x);
    let zero = S::zero();
    let at_x = lemma2_constraint(ctx, n, x, &zero, &zero).expect("admissible pair").0;
    let at_rot = lemma2_constraint(ctx, n, &rotated(ctx, x), &zero, &zero)
        .expect("admissible pair")
        .0;
    [
        at_x - (first - twin),
        at_rot - gap * S::from_i64(4) * p * q,
    ]
}

/// The constraints k(p² − q²) and 4k·pq in ℚ[p, q], and the membership of p⁴
/// and q⁴ in the ideal they generate.
fn forcing_certificate(gap: &Rational) -> Outcome {
    let p = Polynomial::var(0);
    let q = Polynomial::var(1);
    let k = Polynomial::constant(gap.clone());
    let c1 = &k * &(&(&p * &p) - &(&q * &q));
    let c2 = &(&k * &Polynomial::constant(int(4))) * &(&p * &q);
    let gens = [c1, c2];
    let names = vec!["p".to_string(), "q".to_string()];
    let mut cert = vec![format!(
        "constraints {} = 0, {} = 0 with p = gh(X,N), q = gh(J2X,N)",
        gens[0].render(&names),
        gens[1].render(&names)
    )];
    for (label, target) in [("p⁴", p.pow(4)), ("q⁴", q.pow(4))] {
        match homogeneous_membership(&gens, &target, 2) {
            Some(cof) => cert.push(format!(
                "{label} = ({})·C1 + ({})·C2",
                cof[0].render(&names),
                cof[1].render(&names)
            )),
            None => {
                return Outcome::fail().certificate(format!("{label} not in the ideal generated by the constraints"))
            }
        }
    }
    let squares_in = homogeneous_membership(&gens, &(&p * &p), 2).is_some();
    cert.push(format!(
        "p² {} the ideal, so p = q = 0 follows over the reals from p⁴ = q⁴ = 0",
        if squares_in { "lies in" } else { "does not lie in" }
    ));
    Outcome::pass().certificate(cert.join("; "))
}

fn check_eq3_forcing(mode: &CheckMode, e: &Expansion) -> Outcome {
    match mode {
        CheckMode::Exact => {
            let cert = forcing_certificate(&e.gap());
            if cert.status != Status::Pass {
                return cert;
            }
            for kappa in sample::kappas(BaseKind::Sphere4) {
                let p = sample::symbolic_pair(BaseKind::Sphere4, &kappa).expect("unit-normal ring is confluent");
                for (name, r) in ["X", "X + J2X"].iter().zip(forcing_residuals(e, &p.ctx, &p.n, &p.x)) {
                    if !r.is_zero() {
                        return Outcome::fail()
                            .residual(r.render_brief(BRIEF))
                            .certificate(format!("eigenvector constraint at {name} differs from the expansions"));
                    }
                }
            }
            cert.residual("0")
        }
        CheckMode::Float(cfg) => {
            let mut rng = check_rng(cfg.seed, "cp3.eq3-forcing");
            let mut r = FloatResidual::new(cfg.tolerance);
            let mut violated = 0usize;
            for _ in 0..cfg.trials {
                let ctx = sample::float_context(BaseKind::Sphere4, 1.0, &mut rng);
                let (n, x) = sample::admissible_pair(&ctx, &mut rng);
                for res in forcing_residuals(e, &ctx, &n, &x) {
                    r.compare(res, 0.0);
                }
                let zero = 0.0;
                let at_x = lemma2_constraint(&ctx, &n, &x, &zero, &zero).expect("admissible pair").0;
                let at_rot = lemma2_constraint(&ctx, &n, &rotated(&ctx, &x), &zero, &zero)
                    .expect("admissible pair")
                    .0;
                if ctx.metric_h(&x, &n).abs() > 1e-3 && (at_x.abs() > 1e-9 || at_rot.abs() > 1e-9) {
                    violated += 1;
                }
            }
            let mut out = r.outcome();
            if cfg.trials > 0 && violated == 0 {
                out = Outcome::fail().residual(format!("{violated}")).certificate("no sample with gh(X,N) ≠ 0 violated the eigenvector constraint");
            }
            out.note(format!("{violated} samples with gh(X,N) ≠ 0 violate the eigenvector constraint"))
        }
    }
}

/// Twistor space of the base with N vertical and unit, X horizontal; the
/// relation κ(n5² + n6²) = 1 is imposed.
fn vertical_normal_ring(kind: BaseKind, kappa: &Rational) -> Arc<RelationIdeal> {
    let mut b = RelationIdeal::builder("vertical-normal");
    if kind == BaseKind::Cp2Bar {
        b = b.variable(COS).variable(SIN);
    }
    b = b.variables(["n5", "n6", "y1", "y2", "y3", "y4"]);
    if kind == BaseKind::Cp2Bar {
        let rel = circle_relation(&b.symbol(COS), &b.symbol(SIN));
        b = b.relation(rel);
    }
    let (n5, n6) = (b.symbol("n5"), b.symbol("n6"));
    let unit = &(&(&n5 * &n5) + &(&n6 * &n6)).scale(kappa) - &Polynomial::constant(int(1));
    b.relation(unit).build().expect("vertical-normal ring is confluent")
}

/// With Nʰ = 0 the corollary reduces to a‖Xʰ‖²; a ≠ 0 is the contradiction.
pub(crate) fn check_vertical_normal(mode: &CheckMode, kind: BaseKind, a_override: Option<Rational>) -> Outcome {
    let expected_a = |ctx_a: &Rational| a_override.clone().unwrap_or_else(|| ctx_a.clone());
    match mode {
        CheckMode::Exact => {
            let mut residual = String::new();
            let mut a_used = Rational::from_integer(0.into());
            for kappa in sample::kappas(kind) {
                let ring = vertical_normal_ring(kind, &kappa);
                let sym = |s: &str| ring.symbol(s).expect("declared");
                let mut ctx = TwistorContext::nearly_kahler(symbolic_base(&ring, kind), RingElem::constant(kappa.clone()))
                    .expect("positive parameters");
                let a = expected_a(&ctx.consts.a.as_constant().expect("a is a constant"));
                let mut k = ctx.consts.clone();
                k.a = RingElem::constant(a.clone());
                ctx = ctx.with_constants(k);
                let n = V::vertical([sym("n5"), sym("n6")]);
                let x = V::horizontal(crate::frame::Vector4::new([sym("y1"), sym("y2"), sym("y3"), sym("y4")]));
                let lhs = r_prop1(&ctx, &ctx.j2(&n), &ctx.j2(&x), &x, &n);
                let rhs = match corollary1_rhs(&ctx, &n, &x) {
                    Ok(v) => v,
                    Err(e) => return Outcome::fail().certificate(e.to_string()),
                };
                let target = ctx.consts.a.clone() * ctx.metric_h(&x, &x);
                if !(lhs.clone() - target.clone()).is_zero() || !(rhs - target).is_zero() {
                    return Outcome::fail()
                        .residual(lhs.render_brief(BRIEF))
                        .certificate(format!("R(J2N,J2X,X,N) is not a|Xh|^2 at κ={}", format_rational(&kappa)));
                }
                residual = lhs.render();
                a_used = a;
            }
            let note = "λ = 0 on horizontal X from g(N, ½[X,X]) = 0 (O'Neill, taken as input)";
            if Scalar::is_zero(&a_used) {
                return Outcome::fail()
                    .residual(residual)
                    .certificate("NO CONTRADICTION: a = 0")
                    .note(note);
            }
            Outcome::pass()
                .residual(residual)
                .certificate(format!(
                    "R(J2N,J2X,X,N) = a|Xh|^2 with a = {} ≠ 0 at κ = 1, {}",
                    format_rational(&a_used),
                    format_rational(&sample::kappas(kind)[1])
                ))
                .note(note)
        }
        CheckMode::Float(cfg) => {
            let id = match kind {
                BaseKind::Sphere4 => "cp3.vertical-normal",
                BaseKind::Cp2Bar => "f12.vertical-normal",
            };
            let mut rng = check_rng(cfg.seed, id);
            let mut r = FloatResidual::new(cfg.tolerance.min(1e-12));
            let mut a = 0.0;
            for _ in 0..cfg.trials {
                let mut ctx = sample::float_context(kind, 1.0, &mut rng);
                if let Some(q) = &a_override {
                    let mut k = ctx.consts.clone();
                    k.a = q.to_f64().unwrap_or(f64::NAN);
                    ctx = ctx.with_constants(k);
                }
                a = ctx.consts.a;
                let n = sample::unit_vector(&ctx, &mut rng).vertical_part();
                let n = n.scale(&(1.0 / ctx.norm_sq(&n).sqrt()));
                let x = sample::vector(&mut rng).horizontal_part();
                let x = x.scale(&(1.0 / ctx.norm_sq(&x).sqrt()));
                r.compare(r_prop1(&ctx, &ctx.j2(&n), &ctx.j2(&x), &x, &n), a);
            }
            let out = r.outcome();
            if a == 0.0 {
                return Outcome::fail().residual(out.residual.unwrap_or_default()).certificate("NO CONTRADICTION: a = 0");
            }
            out.note(format!("R(J2N,J2X,X,N) = a = {a} for unit vertical N, unit horizontal X"))
        }
    }
}

/// Rows g(·,N), g(·,J₂N), gʰ(·,N), gʰ(J₂·,N) of the constraints on X.
fn constraint_rows<S: Scalar>(ctx: &TwistorContext<S>, n: &V<S>) -> Matrix<S> {
    let jn = ctx.j2(n);
    Matrix::from_fn(4, 6, |i, j| {
        let e = V::basis(j);
        match i {
            0 => ctx.metric(&e, n),
            1 => ctx.metric(&e, &jn),
            2 => ctx.metric_h(&e, n),
            _ => ctx.metric_h(&ctx.j2(&e), n),
        }
    })
}

fn check_must_be_horizontal(mode: &CheckMode) -> Outcome {
    match mode {
        CheckMode::Exact => {
            let names = ["n1", "n2", "n3", "n4", "n5", "n6", "κ"];
            let ring = RelationIdeal::free("mixed-normal", &names);
            let g = |i: usize| ring.generator(i);
            let ctx = TwistorContext::nearly_kahler(BaseSpace::Sphere4, g(6)).expect("κ is a nonzero symbol");
            let n = V::from_components(std::array::from_fn(g));
            let m = constraint_rows(&ctx, &n);
            let det = m.mul(&m.transpose()).determinant();
            let nh = ctx.metric_h(&n, &n);
            let nv = g(4).square() + g(5).square();
            let expected = nh.square() * g(6).pow(4) * nv.square();
            if !(det.clone() - expected).is_zero() {
                return Outcome::fail().residual(det.render_brief(BRIEF)).certificate("Gram determinant of the constraints");
            }
            Outcome::pass().residual("0").certificate(
                "det(M Mᵀ) = |Nh|⁴ κ⁴ (n5² + n6²)² for the rows g(·,N), g(·,J2N), gh(·,N), gh(J2·,N); \
                 rank 4 whenever Nh ≠ 0 and Nv ≠ 0, so admissible eigenvectors span at most 6 − 4 = 2 < 4 dimensions",
            )
        }
        CheckMode::Float(cfg) => {
            let mut rng = check_rng(cfg.seed, "cp3.must-be-horizontal");
            let mut bad = 0usize;
            for _ in 0..cfg.trials {
                let kappa = rng_kappa(&mut rng);
                let ctx = TwistorContext::nearly_kahler(BaseSpace::Sphere4, kappa).expect("positive κ");
                let n = sample::unit_vector(&ctx, &mut rng);
                let m = constraint_rows(&ctx, &n);
                if m.rank() != 4 || m.nullspace().len() != 2 {
                    bad += 1;
                }
            }
            Outcome::from_bool(bad == 0)
                .residual(format!("{bad}"))
                .certificate(format!("{} mixed normals, constraint rank 4 and kernel dimension 2", cfg.trials))
        }
    }
}

fn rng_kappa(rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    use rand::Rng;
    rng.gen_range(0.25..2.0)
}

/// The printed vertical parts −½K⁺, ½J⁺ and block F = −½·rot.
fn printed_columns<S: Scalar>() -> ([Bivector<S>; 2], Mat2<S>) {
    (
        [Bivector::k_plus().scale(&S::ratio(-1, 2)), Bivector::j_plus().scale(&S::ratio(1, 2))],
        Mat2::rotation().scale(&S::ratio(-1, 2)),
    )
}

/// Runs the horizontal-normal computation over `S`; `f_scale` multiplies the
/// computed F before it is compared with the printed block.
fn horizontal_normal<S: Scalar>(sign: CurvatureSign, f_scale: Option<&S>) -> Outcome {
    let vb = vertical_block::<S>(&BaseSpace::Sphere4, WedgeOrder::TangentFirst, sign).expect("I⁺ is complex");
    let (cols, printed_f) = printed_columns::<S>();
    let f = match f_scale {
        Some(k) => vb.f.scale(k),
        None => vb.f.clone(),
    };
    let rot = Mat2::<S>::rotation();
    let feas = commutation_feasible(&f, &rot);
    let mut cert = vec![
        format!("R(e3∧e1) = {}", vb.curvature[0].to_split_basis().render()),
        format!("hat(I+, R(e3∧e1)) = {}", vb.hats[0].to_split_basis().render()),
        format!("(Ae3)v = {}", vb.columns[0].to_split_basis().render()),
        format!("(Ae4)v = {}", vb.columns[1].to_split_basis().render()),
        format!("F = {f}"),
        format!("FI + IF = {}", feas.certificate),
    ];
    let same_b = |a: &Bivector<S>, b: &Bivector<S>| (a.clone() - b.clone()).is_zero();
    let same_m = |a: &Mat2<S>, b: &Mat2<S>| a.sub(b).is_zero();
    let mut ok = same_b(&vb.curvature[0], &Bivector::basis(0, 2)) && same_b(&vb.hats[0], &Bivector::k_plus());
    ok &= same_b(&vb.columns[0], &cols[0]) && same_b(&vb.columns[1], &cols[1]);
    ok &= same_m(&f, &printed_f);
    ok &= !feas.feasible && same_m(&feas.certificate, &Mat2::identity());

    // The full 5×5 commutator has FI + IF as its vertical-horizontal block
    // for any E, G commuting with I.
    let shape = BlockShapeOperator::new(S::from_i64(3), Mat2::identity(), f.clone(), Mat2::identity().scale(&S::from_i64(2)))
        .expect("symmetric diagonal blocks");
    let comm = full_commutator(&shape.assemble(&S::ratio(1, 2)), &phi_block());
    let lower = Mat2::new(
        comm.get(3, 1).clone(),
        comm.get(3, 2).clone(),
        comm.get(4, 1).clone(),
        comm.get(4, 2).clone(),
    );
    ok &= same_m(&lower, &feas.certificate);

    let flipped = swap_horizontal(&f);
    let minus_i = rot.scale(&-S::one());
    let flip_cert = block_certificate(&flipped, &minus_i, &minus_i);
    ok &= !flip_cert.is_zero();
    cert.push(format!("orientation-reversed frame (e4, e3): F = {flipped}, certificate {flip_cert}"));

    Outcome::from_bool(ok)
        .residual(feas.certificate.sub(&Mat2::identity()).render())
        .certificate(cert.join("; "))
}

fn check_horizontal_normal(mode: &CheckMode, sign: CurvatureSign, f_scale: Option<Rational>) -> Outcome {
    match mode {
        CheckMode::Exact => horizontal_normal::<Rational>(sign, f_scale.as_ref()),
        CheckMode::Float(_) => {
            let k = f_scale.map(|q| q.to_f64().unwrap_or(f64::NAN));
            horizontal_normal::<f64>(sign, k.as_ref())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::FloatConfig;

    fn float() -> CheckMode {
        CheckMode::Float(FloatConfig { trials: 200, ..FloatConfig::default() })
    }

    #[test]
    fn every_check_passes_both_backends() {
        for c in CHECKS {
            for mode in [CheckMode::Exact, float()] {
                let out = (c.run)(&mode);
                assert_eq!(out.status, Status::Pass, "{} {:?}: {:?}", c.id, mode.backend(), out);
            }
        }
    }

    #[test]
    fn forcing_needs_distinct_coefficients() {
        assert_eq!(forcing_certificate(&int(3)).status, Status::Pass);
        assert_eq!(forcing_certificate(&int(0)).status, Status::Fail);
    }

    #[test]
    fn vertical_normal_residual_is_three_eighths_norm() {
        let out = check_vertical_normal(&CheckMode::Exact, BaseKind::Sphere4, None);
        assert_eq!(out.residual.as_deref().map(|r| r.contains("3/8")), Some(true));
    }
}
