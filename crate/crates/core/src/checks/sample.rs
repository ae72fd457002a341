use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::base::BaseSpace;
use crate::scalar::{Rational, RingElem, RingError};
use crate::symbolic::{project_out, symbolic_base, symbolic_vector, vector_ring, BaseKind};
use crate::twistor::{TwistorContext, TwistorVector};

pub(crate) fn circle_point(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (th.cos(), th.sin())
}

pub(crate) fn float_base(kind: BaseKind, rng: &mut ChaCha8Rng) -> BaseSpace<f64> {
    match kind {
        BaseKind::Sphere4 => BaseSpace::Sphere4,
        BaseKind::Cp2Bar => {
            let (c, s) = circle_point(rng);
            BaseSpace::cp2bar(c, s).expect("point on the unit circle")
        }
    }
}

pub(crate) fn float_context(kind: BaseKind, kappa: f64, rng: &mut ChaCha8Rng) -> TwistorContext<f64> {
    TwistorContext::nearly_kahler(float_base(kind, rng), kappa).expect("positive parameters")
}

pub(crate) fn vector(rng: &mut ChaCha8Rng) -> TwistorVector<f64> {
    TwistorVector::from_components(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
}

pub(crate) fn unit_vector(ctx: &TwistorContext<f64>, rng: &mut ChaCha8Rng) -> TwistorVector<f64> {
    loop {
        let n = vector(rng);
        let norm = ctx.norm_sq(&n).sqrt();
        if norm > 0.1 {
            return n.scale(&(1.0 / norm));
        }
    }
}

/// A unit N and some X ⟂ N, J₂N.
pub(crate) fn admissible_pair(
    ctx: &TwistorContext<f64>,
    rng: &mut ChaCha8Rng,
) -> (TwistorVector<f64>, TwistorVector<f64>) {
    let n = unit_vector(ctx, rng);
    let x = project_out(ctx, &n, &vector(rng));
    (n, x)
}

/// Generic unit N (prefix n) and projected X (from prefix y) over a ring
/// imposing ‖N‖ = 1.
pub(crate) struct SymbolicPair {
    pub ctx: TwistorContext<RingElem>,
    pub n: TwistorVector<RingElem>,
    pub x: TwistorVector<RingElem>,
}

pub(crate) fn symbolic_pair(kind: BaseKind, kappa: &Rational) -> Result<SymbolicPair, RingError> {
    let ring = vector_ring("unit-normal", kind, &["n", "y"], Some(("n", kappa)))?;
    let ctx = TwistorContext::nearly_kahler(symbolic_base(&ring, kind), RingElem::constant(kappa.clone()))
        .expect("positive parameters");
    let n = symbolic_vector(&ring, "n");
    let x = project_out(&ctx, &n, &symbolic_vector(&ring, "y"));
    Ok(SymbolicPair { ctx, n, x })
}

/// Vertical Gram values used by the exact checks: 1 and the fibre size t.
pub(crate) fn kappas(kind: BaseKind) -> [Rational; 2] {
    let t = match kind {
        BaseKind::Sphere4 => Rational::new(1.into(), 2.into()),
        BaseKind::Cp2Bar => Rational::new(1.into(), 4.into()),
    };
    [Rational::from_integer(1.into()), t]
}
