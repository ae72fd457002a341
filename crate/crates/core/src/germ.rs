//! Pointwise hypersurface data: the induced structure φ, block shape
//! operators, and the block criterion for Aφ = φA.

use std::fmt;

use thiserror::Error;

use crate::base::{BaseSpace, CurvatureSign};
use crate::curvature::r_prop1;
use crate::frame::{hat, Bivector, FrameError};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::twistor::{TwistorContext, TwistorVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("N is not a unit vector")]
    NotUnitNormal,
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
}

/// φX = J₂X − g(J₂X, N)N.
pub fn phi<S: Scalar>(
    ctx: &TwistorContext<S>,
    n: &TwistorVector<S>,
    x: &TwistorVector<S>,
) -> Result<TwistorVector<S>, GermError> {
    if !(ctx.norm_sq(n) - S::one()).is_zero() {
        return Err(GermError::NotUnitNormal);
    }
    let jx = ctx.j2(x);
    let k = ctx.metric(&jx, n);
    Ok(jx - n.scale(&k))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<S>(pub [[S; 2]; 2]);

impl<S: Scalar> Mat2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::zero())
    }

    pub fn identity() -> Self {
        Self::new(S::one(), S::zero(), S::zero(), S::one())
    }

    /// The rotation generator (0 −1; 1 0).
    pub fn rotation() -> Self {
        Self::new(S::zero(), -S::one(), S::one(), S::zero())
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.0[i][j]
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = self.0.clone();
        Self::new(a, c, b, d)
    }

    pub fn scale(&self, k: &S) -> Self {
        let m = &self.0;
        Self::new(
            k.clone() * m[0][0].clone(),
            k.clone() * m[0][1].clone(),
            k.clone() * m[1][0].clone(),
            k.clone() * m[1][1].clone(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| {
            self.0[i][0].clone() * o.0[0][j].clone() + self.0[i][1].clone() * o.0[1][j].clone()
        };
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn add(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| self.0[i][j].clone() + o.0[i][j].clone();
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (self.0[0][1].clone() - self.0[1][0].clone()).is_zero()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat2<T> {
        let m = &self.0;
        Mat2::new(f(&m[0][0]), f(&m[0][1]), f(&m[1][0]), f(&m[1][1]))
    }

    pub fn render(&self) -> String {
        let m = &self.0;
        format!("({} {}; {} {})", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl<S: Scalar> fmt::Display for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A in the ordered basis (J₂N-complement direction; two horizontal; two
/// vertical): the Hopf eigenvalue µ, diagonal blocks E and G, and the
/// vertical-by-horizontal block F.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockShapeOperator<S> {
    pub mu: S,
    pub e: Mat2<S>,
    pub f: Mat2<S>,
    pub g: Mat2<S>,
}

impl<S: Scalar> BlockShapeOperator<S> {
    pub fn new(mu: S, e: Mat2<S>, f: Mat2<S>, g: Mat2<S>) -> Result<Self, GermError> {
        if !e.is_symmetric() || !g.is_symmetric() {
            return Err(GermError::PreconditionViolated("diagonal blocks must be symmetric"));
        }
        Ok(Self { mu, e, f, g })
    }

    /// The 5×5 matrix. With vertical Gram κ, self-adjointness puts κFᵀ in the
    /// upper right corner.
    pub fn assemble(&self, kappa: &S) -> Matrix<S> {
        let upper = self.f.transpose().scale(kappa);
        Matrix::from_fn(5, 5, |i, j| match (i, j) {
            (0, 0) => self.mu.clone(),
            (0, _) | (_, 0) => S::zero(),
            (1..=2, 1..=2) => self.e.get(i - 1, j - 1).clone(),
            (1..=2, _) => upper.get(i - 1, j - 3).clone(),
            (_, 1..=2) => self.f.get(i - 3, j - 1).clone(),
            _ => self.g.get(i - 3, j - 3).clone(),
        })
    }
}

/// φ = diag(0, I, −I) in the block basis.
pub fn phi_block<S: Scalar>() -> Matrix<S> {
    let r = Mat2::<S>::rotation();
    Matrix::from_fn(5, 5, |i, j| match (i, j) {
        (1..=2, 1..=2) => r.get(i - 1, j - 1).clone(),
        (3..=4, 3..=4) => -r.get(i - 3, j - 3).clone(),
        _ => S::zero(),
    })
}

/// Aφ − φA for an assembled operator.
pub fn full_commutator<S: Scalar>(a: &Matrix<S>, phi: &Matrix<S>) -> Matrix<S> {
    a.mul(phi).sub(&phi.mul(a))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Feasibility<S> {
    pub feasible: bool,
    pub certificate: Mat2<S>,
}

/// Lower-left block of Aφ − φA when φ acts by `phi_h` on the horizontal pair
/// and by `phi_v` on the vertical pair: F·φ_h − φ_v·F.
pub fn block_certificate<S: Scalar>(f: &Mat2<S>, phi_h: &Mat2<S>, phi_v: &Mat2<S>) -> Mat2<S> {
    f.mul(phi_h).sub(&phi_v.mul(f))
}

/// Aφ = φA holds for the block shape iff EI = IE, GI = IG and FI + IF = 0.
/// The E and G conditions are always satisfiable, so feasibility is decided
/// by F alone; the certificate is FI + IF.
pub fn commutation_feasible<S: Scalar>(f: &Mat2<S>, i: &Mat2<S>) -> Feasibility<S> {
    let certificate = block_certificate(f, i, &i.scale(&-S::one()));
    Feasibility {
        feasible: certificate.is_zero(),
        certificate,
    }
}

/// Residuals (R(J₂N,X,J₂X,N) + R(J₂N,J₂X,X,N), R(J₂N,X,J₂X,N) + λ(λ−µ)‖X‖²)
/// that vanish for an eigenvector X of a commuting germ.
pub fn lemma2_constraint<S: Scalar>(
    ctx: &TwistorContext<S>,
    n: &TwistorVector<S>,
    x: &TwistorVector<S>,
    lambda: &S,
    mu: &S,
) -> Result<(S, S), GermError> {
    if !(ctx.norm_sq(n) - S::one()).is_zero() {
        return Err(GermError::NotUnitNormal);
    }
    let jn = ctx.j2(n);
    if !ctx.metric(x, n).is_zero() || !ctx.metric(x, &jn).is_zero() {
        return Err(GermError::PreconditionViolated("X must be orthogonal to N and J₂N"));
    }
    let jx = ctx.j2(x);
    let skew = r_prop1(ctx, &jn, x, &jx, n);
    let first = skew.clone() + r_prop1(ctx, &jn, &jx, x, n);
    let second =
        skew + lambda.clone() * (lambda.clone() - mu.clone()) * ctx.norm_sq(x);
    Ok((first, second))
}

/// Argument order inside R(· ∧ ·) for the O'Neill term of a horizontal normal
/// with dπN = e₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WedgeOrder {
    /// R(eᵢ ∧ e₁).
    TangentFirst,
    /// R(e₁ ∧ eᵢ).
    NormalFirst,
}

/// Vertical parts of Ae₃ and Ae₄ for a horizontal normal, and the block F
/// whose columns are their J⁺, K⁺ coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalBlock<S> {
    pub curvature: [Bivector<S>; 2],
    pub hats: [Bivector<S>; 2],
    pub columns: [Bivector<S>; 2],
    pub f: Mat2<S>,
}

/// (Aeᵢ)ᵛ = −½·hat(R(eᵢ ∧ e₁)) for i = 3, 4, with I = I⁺ at the fibre point.
pub fn vertical_block<S: Scalar>(
    base: &BaseSpace<S>,
    order: WedgeOrder,
    sign: CurvatureSign,
) -> Result<VerticalBlock<S>, FrameError> {
    let half = -S::ratio(1, 2);
    let one = |i: usize| {
        let b = match order {
            WedgeOrder::TangentFirst => Bivector::basis(i, 0),
            WedgeOrder::NormalFirst => Bivector::basis(0, i),
        };
        let r = base.curvature_operator_with(&b, sign);
        let h = hat(&Bivector::i_plus(), &r)?;
        let col = h.scale(&half);
        Ok::<_, FrameError>((r, h, col))
    };
    let (r3, h3, c3) = one(2)?;
    let (r4, h4, c4) = one(3)?;
    let sd3 = c3.to_split_basis().self_dual();
    let sd4 = c4.to_split_basis().self_dual();
    let f = Mat2::new(sd3[1].clone(), sd4[1].clone(), sd3[2].clone(), sd4[2].clone());
    Ok(VerticalBlock {
        curvature: [r3, r4],
        hats: [h3, h4],
        columns: [c3, c4],
        f,
    })
}

/// F in the horizontal basis (e₄, e₃): the orientation-reversed frame, in
/// which φ acts on the horizontal pair by −I.
pub fn swap_horizontal<S: Scalar>(f: &Mat2<S>) -> Mat2<S> {
    f.mul(&Mat2::new(S::zero(), S::one(), S::one(), S::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseSpace;
    use crate::scalar::{int, rat, Rational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type V = TwistorVector<Rational>;

    fn ctx() -> TwistorContext<Rational> {
        TwistorContext::nearly_kahler(BaseSpace::Sphere4, int(1)).unwrap()
    }

    #[test]
    fn phi_examples() {
        let c = ctx();
        let n = V::basis(0);
        assert!(phi(&c, &n, &c.j2(&n)).unwrap().is_zero());
        assert_eq!(phi(&c, &n, &V::basis(2)).unwrap(), V::basis(3));
        assert_eq!(phi(&c, &n, &n).unwrap(), c.j2(&n));
        assert_eq!(phi(&c, &n.scale(&int(2)), &n), Err(GermError::NotUnitNormal));
    }

    #[test]
    fn phi_is_complex_on_the_contact_distribution() {
        let c = ctx();
        let n = V::from_components([rat(3, 5), int(0), int(0), int(0), rat(4, 5), int(0)]);
        let jn = c.j2(&n);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let y = V::from_components(std::array::from_fn(|_| int(rng.gen_range(-4..5))));
            let x = y.clone() - n.scale(&c.metric(&y, &n)) - jn.scale(&c.metric(&y, &jn));
            let p = phi(&c, &n, &phi(&c, &n, &x).unwrap()).unwrap();
            assert_eq!(p, -x);
        }
    }

    #[test]
    fn printed_blocks() {
        let i = Mat2::<Rational>::rotation();
        let f = i.scale(&rat(-1, 2));
        let r = commutation_feasible(&f, &i);
        assert!(!r.feasible);
        assert_eq!(r.certificate, Mat2::identity());
        let r = commutation_feasible(&i, &i);
        assert_eq!(r.certificate, Mat2::identity().scale(&int(-2)));
        assert!(commutation_feasible(&Mat2::zero(), &i).feasible);
    }

    #[test]
    fn sphere_vertical_block() {
        let vb = vertical_block::<Rational>(&BaseSpace::Sphere4, WedgeOrder::TangentFirst, CurvatureSign::Standard)
            .unwrap();
        assert_eq!(vb.columns[0], Bivector::k_plus().scale(&rat(-1, 2)));
        assert_eq!(vb.columns[1], Bivector::j_plus().scale(&rat(1, 2)));
        assert_eq!(vb.f, Mat2::rotation().scale(&rat(-1, 2)));
        let flipped = swap_horizontal(&vb.f);
        let minus_i = Mat2::<Rational>::rotation().scale(&int(-1));
        assert!(!block_certificate(&flipped, &minus_i, &minus_i).is_zero());
    }

    #[test]
    fn scale_invariance() {
        let i = Mat2::<Rational>::rotation();
        let f = Mat2::new(int(1), int(2), int(0), int(-1));
        let base = commutation_feasible(&f, &i).feasible;
        for c in [int(2), int(-1), rat(1, 4)] {
            assert_eq!(commutation_feasible(&f.scale(&c), &i).feasible, base);
        }
        let anti = Mat2::new(int(1), int(2), int(2), int(-1));
        assert!(commutation_feasible(&anti, &i).feasible);
    }

    #[test]
    fn block_criterion_matches_full_commutator() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let i = Mat2::<f64>::rotation();
        let phi5 = phi_block::<f64>();
        for _ in 0..1000 {
            let mut r = || rng.gen_range(-1.0..1.0);
            let s = r();
            let e = Mat2::new(r(), s, s, r());
            let s = r();
            let g = Mat2::new(r(), s, s, r());
            let f = Mat2::new(r(), r(), r(), r());
            let kappa = 0.25 + r().abs();
            let op = BlockShapeOperator::new(r(), e, f.clone(), g).unwrap();
            let full = full_commutator(&op.assemble(&kappa), &phi5);
            let lower = Mat2::new(*full.get(3, 1), *full.get(3, 2), *full.get(4, 1), *full.get(4, 2));
            assert!(lower.sub(&commutation_feasible(&f, &i).certificate).is_zero());
            if !commutation_feasible(&f, &i).feasible {
                assert!(!full.is_zero());
            }
        }
    }

    #[test]
    fn commuting_example_assembles_symmetrically() {
        let e = Mat2::identity().scale(&int(3));
        let op = BlockShapeOperator::new(int(1), e, Mat2::zero(), Mat2::identity()).unwrap();
        let a = op.assemble(&int(1));
        assert_eq!(a, a.transpose());
        assert!(full_commutator(&a, &phi_block()).is_zero());
        assert!(BlockShapeOperator::new(
            int(0),
            Mat2::new(int(0), int(1), int(0), int(0)),
            Mat2::zero(),
            Mat2::zero()
        )
        .is_err());
    }

    #[test]
    fn lemma2_trivial_inputs() {
        let c = ctx();
        let n = V::basis(0);
        let r = lemma2_constraint(&c, &n, &V::zero(), &int(1), &int(2)).unwrap();
        assert_eq!(r, (int(0), int(0)));
        let r = lemma2_constraint(&c, &n, &V::basis(4), &int(0), &int(0)).unwrap();
        assert_eq!(r.0, int(0));
        assert!(lemma2_constraint(&c, &n, &V::basis(1), &int(0), &int(0)).is_err());
    }
}
