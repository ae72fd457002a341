//! Curvature of the twistor space in its two printed forms, and the
//! contracted expression R(J₂N, J₂X, X, N) for X ⟂ N, J₂N.

use thiserror::Error;

use crate::base::BaseSpace;
use crate::scalar::Scalar;
use crate::twistor::{TwistorContext, TwistorVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
}

type V<S> = TwistorVector<S>;

fn base_pullback<S: Scalar>(ctx: &TwistorContext<S>, x: &V<S>, y: &V<S>, z: &V<S>, t: &V<S>) -> S {
    ctx.base.curvature(&x.h, &y.h, &z.h, &t.h)
}

/// The J₂ form.
pub fn r_prop1<S: Scalar>(ctx: &TwistorContext<S>, x: &V<S>, y: &V<S>, z: &V<S>, t: &V<S>) -> S {
    let (a, b, c) = (&ctx.consts.a, &ctx.consts.b, &ctx.consts.c);
    let gh = |p: &V<S>, q: &V<S>| ctx.metric_h(p, q);
    let g = |p: &V<S>, q: &V<S>| ctx.metric(p, q);
    let (jx, jy, jz) = (ctx.j2(x), ctx.j2(y), ctx.j2(z));
    let two = S::from_i64(2);
    let five = S::from_i64(5);
    let b2a = b.clone() + two.clone() * a.clone();

    let mut r = base_pullback(ctx, x, y, z, t);
    r = r + two.clone() * b2a.clone() * gh(&jx, y) * gh(&jz, t);
    r = r + b2a.clone() * gh(&jx, z) * gh(&jy, t);
    r = r - b2a * gh(&jx, t) * gh(&jy, z);
    r = r + (c.clone() - five * b.clone()) * (gh(x, z) * gh(y, t) - gh(x, t) * gh(y, z));
    r = r - two.clone() * a.clone() * gh(&jx, y) * g(&jz, t);
    r = r - two * a.clone() * g(&jx, y) * gh(&jz, t);
    r = r - a.clone() * gh(&jx, z) * g(&jy, t);
    r = r - a.clone() * g(&jx, z) * gh(&jy, t);
    r = r + a.clone() * gh(&jx, t) * g(&jy, z);
    r = r + a.clone() * g(&jx, t) * gh(&jy, z);
    r = r + (b.clone() - c.clone())
        * (gh(x, z) * g(y, t) + g(x, z) * gh(y, t) - gh(x, t) * g(y, z) - g(x, t) * gh(y, z));
    r + c.clone() * (g(x, z) * g(y, t) - g(x, t) * g(y, z))
}

/// The J₁ form with separate horizontal and vertical metrics.
pub fn r_apostolov_j1<S: Scalar>(
    ctx: &TwistorContext<S>,
    x: &V<S>,
    y: &V<S>,
    z: &V<S>,
    t: &V<S>,
) -> S {
    let (a, b, c) = (&ctx.consts.a, &ctx.consts.b, &ctx.consts.c);
    let gh = |p: &V<S>, q: &V<S>| ctx.metric_h(p, q);
    let gv = |p: &V<S>, q: &V<S>| ctx.metric_v(p, q);
    let (jx, jy, jz) = (ctx.j1(x), ctx.j1(y), ctx.j1(z));
    let two = S::from_i64(2);
    let three = S::from_i64(3);

    let mut r = base_pullback(ctx, x, y, z, t);
    r = r + two.clone() * a.clone() * gh(&jx, y) * gv(&jz, t);
    r = r + two.clone() * a.clone() * gv(&jx, y) * gh(&jz, t);
    r = r + a.clone() * gh(&jx, z) * gv(&jy, t);
    r = r + a.clone() * gv(&jx, z) * gh(&jy, t);
    r = r - a.clone() * gh(&jx, t) * gv(&jy, z);
    r = r - a.clone() * gv(&jx, t) * gh(&jy, z);
    r = r + two * b.clone() * gh(&jx, y) * gh(&jz, t);
    r = r + b.clone() * gh(&jx, z) * gh(&jy, t);
    r = r - b.clone() * gh(&jx, t) * gh(&jy, z);
    r = r + b.clone() * gh(x, z) * gv(y, t);
    r = r + b.clone() * gv(x, z) * gh(y, t);
    r = r - b.clone() * gh(x, t) * gv(y, z);
    r = r - b.clone() * gv(x, t) * gh(y, z);
    r = r - three.clone() * b.clone() * gh(x, z) * gh(y, t);
    r = r + c.clone() * gv(x, z) * gv(y, t);
    r = r + three * b.clone() * gh(x, t) * gh(y, z);
    r - c.clone() * gv(x, t) * gv(y, z)
}

/// Closed forms of R^M(dπJ₂N, dπJ₂X, dπX, dπN) for X ⟂ N, J₂N.
pub fn base_pullback_closed_form<S: Scalar>(ctx: &TwistorContext<S>, n: &V<S>, x: &V<S>) -> S {
    let gh = |p: &V<S>, q: &V<S>| ctx.metric_h(p, q);
    let jx = ctx.j2(x);
    match &ctx.base {
        BaseSpace::Sphere4 => gh(&jx, n).square(),
        BaseSpace::Cp2Bar { .. } => {
            let jn = ctx.j2(n);
            let jj = ctx.base.j_cp2().expect("CP² has a complex structure");
            let jjn = V::horizontal(jj.apply(&n.h));
            let jjx = V::horizontal(jj.apply(&x.h));
            gh(n, &jx).square() + S::from_i64(2) * gh(&jjn, x).square() - gh(&jjn, &jx).square()
                + gh(&jn, &jjn) * gh(&jx, &jjx)
        }
    }
}

/// R(J₂N, J₂X, X, N) as the contracted expression in gʰ-invariants; N must be
/// a unit vector and X ⟂ N, J₂N.
pub fn corollary1_rhs<S: Scalar>(ctx: &TwistorContext<S>, n: &V<S>, x: &V<S>) -> Result<S, CurvatureError> {
    if !(ctx.norm_sq(n) - S::one()).is_zero() {
        return Err(CurvatureError::PreconditionViolated("N is not a unit vector"));
    }
    if !ctx.metric(x, n).is_zero() {
        return Err(CurvatureError::PreconditionViolated("X is not orthogonal to N"));
    }
    if !ctx.metric(x, &ctx.j2(n)).is_zero() {
        return Err(CurvatureError::PreconditionViolated("X is not orthogonal to J₂N"));
    }
    Ok(corollary1_unchecked(ctx, n, x))
}

pub(crate) fn corollary1_unchecked<S: Scalar>(ctx: &TwistorContext<S>, n: &V<S>, x: &V<S>) -> S {
    let (a, b, c) = (&ctx.consts.a, &ctx.consts.b, &ctx.consts.c);
    let gh = |p: &V<S>, q: &V<S>| ctx.metric_h(p, q);
    let jx = ctx.j2(x);
    let two = S::from_i64(2);
    let nh = gh(n, n);
    let xh = gh(x, x);
    base_pullback_closed_form(ctx, n, x)
        + (b.clone() + two.clone() * a.clone()) * gh(n, x).square()
        + (b.clone() * S::from_i64(3) - S::from_i64(4) * a.clone() - c.clone()) * gh(n, &jx).square()
        + a.clone() * (nh.clone() * ctx.norm_sq(x) + xh.clone())
        - (two * a.clone() + b.clone()) * nh * xh
}
