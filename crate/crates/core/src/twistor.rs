//! Pointwise model of the twistor space: the metric g_t split into
//! horizontal and vertical parts, the structures J₁ and J₂, and the
//! constants (a, b, c) of the curvature formula.

use std::ops::{Add, Neg, Sub};

use num_traits::Signed;
use thiserror::Error;

use crate::base::BaseSpace;
use crate::frame::{Bivector, Vector4};
use crate::scalar::{int, Field, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistorError {
    #[error("scalar curvature and fibre size must be positive")]
    NonPositiveParameter,
    #[error("vertical Gram value must be positive")]
    NonPositiveGram,
}

/// A tangent vector: horizontal part in the adapted frame (e₁..e₄) and
/// vertical part on (J⁺, K⁺).
#[derive(Debug, Clone, PartialEq)]
pub struct TwistorVector<S> {
    pub h: Vector4<S>,
    pub v: [S; 2],
}

impl<S: Scalar> TwistorVector<S> {
    pub fn new(h: Vector4<S>, v: [S; 2]) -> Self {
        Self { h, v }
    }

    pub fn zero() -> Self {
        Self::new(Vector4::zero(), [S::zero(), S::zero()])
    }

    pub fn horizontal(h: Vector4<S>) -> Self {
        Self::new(h, [S::zero(), S::zero()])
    }

    pub fn vertical(v: [S; 2]) -> Self {
        Self::new(Vector4::zero(), v)
    }

    /// Components 0..4 are e₁..e₄, 4 is J⁺, 5 is K⁺.
    pub fn from_components(c: [S; 6]) -> Self {
        let [a, b, c2, d, e, f] = c;
        Self::new(Vector4::new([a, b, c2, d]), [e, f])
    }

    pub fn components(&self) -> [S; 6] {
        let h = &self.h.0;
        [
            h[0].clone(),
            h[1].clone(),
            h[2].clone(),
            h[3].clone(),
            self.v[0].clone(),
            self.v[1].clone(),
        ]
    }

    pub fn basis(i: usize) -> Self {
        Self::from_components(std::array::from_fn(|k| if k == i { S::one() } else { S::zero() }))
    }

    pub fn horizontal_part(&self) -> Self {
        Self::horizontal(self.h.clone())
    }

    pub fn vertical_part(&self) -> Self {
        Self::vertical(self.v.clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(
            self.h.scale(k),
            [k.clone() * self.v[0].clone(), k.clone() * self.v[1].clone()],
        )
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero() && self.v.iter().all(Scalar::is_zero)
    }

    pub fn is_horizontal(&self) -> bool {
        self.v.iter().all(Scalar::is_zero)
    }

    pub fn is_vertical(&self) -> bool {
        self.h.is_zero()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TwistorVector<T> {
        TwistorVector::new(self.h.map(&f), [f(&self.v[0]), f(&self.v[1])])
    }
}

impl<S: Scalar> Add for TwistorVector<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let [a, b] = self.v;
        let [c, d] = o.v;
        Self::new(self.h + o.h, [a + c, b + d])
    }
}

impl<S: Scalar> Sub for TwistorVector<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<S: Scalar> Neg for TwistorVector<S> {
    type Output = Self;
    fn neg(self) -> Self {
        let [a, b] = self.v;
        Self::new(-self.h, [-a, -b])
    }
}

/// The constants of the curvature formula.
#[derive(Debug, Clone, PartialEq)]
pub struct Constants<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> Constants<S> {
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Constants<T> {
        Constants {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
        }
    }
}

/// a = s/24 − t(s/24)², b = t(s/24)², c = 1/t.
pub fn derive_constants<F: Field>(s: &F, t: &F) -> Result<Constants<F>, TwistorError> {
    let positive = |x: &F| x.to_f64().is_none_or(|v| v > 0.0) && !x.is_zero();
    if !positive(s) || !positive(t) {
        return Err(TwistorError::NonPositiveParameter);
    }
    let q = s.clone() / F::from_i64(24);
    let b = t.clone() * q.square();
    Ok(Constants {
        a: q - b.clone(),
        b,
        c: F::one() / t.clone(),
    })
}

/// Base space, fibre size and vertical Gram value κ = g(J⁺,J⁺) = g(K⁺,K⁺).
#[derive(Debug, Clone, PartialEq)]
pub struct TwistorContext<S> {
    pub base: BaseSpace<S>,
    pub s: Rational,
    pub t: Rational,
    pub consts: Constants<S>,
    pub kappa: S,
}

impl<S: Scalar> TwistorContext<S> {
    pub fn new(base: BaseSpace<S>, t: Rational, kappa: S) -> Result<Self, TwistorError> {
        if kappa.is_zero() || kappa.to_f64().is_some_and(|k| k <= 0.0) {
            return Err(TwistorError::NonPositiveGram);
        }
        if !t.is_positive() {
            return Err(TwistorError::NonPositiveParameter);
        }
        let s = int(base.scalar_curvature());
        let consts = derive_constants(&s, &t)?.map(S::from_rational);
        Ok(Self {
            base,
            s,
            t,
            consts,
            kappa,
        })
    }

    /// The nearly Kähler fibre size t = 6/s.
    pub fn nearly_kahler(base: BaseSpace<S>, kappa: S) -> Result<Self, TwistorError> {
        let t = Rational::new(6.into(), base.scalar_curvature().into());
        Self::new(base, t, kappa)
    }

    /// Replaces the constants, for mutation controls.
    pub fn with_constants(mut self, consts: Constants<S>) -> Self {
        self.consts = consts;
        self
    }

    pub fn metric_h(&self, x: &TwistorVector<S>, y: &TwistorVector<S>) -> S {
        x.h.dot(&y.h)
    }

    pub fn metric_v(&self, x: &TwistorVector<S>, y: &TwistorVector<S>) -> S {
        self.kappa.clone() * (x.v[0].clone() * y.v[0].clone() + x.v[1].clone() * y.v[1].clone())
    }

    pub fn metric(&self, x: &TwistorVector<S>, y: &TwistorVector<S>) -> S {
        self.metric_h(x, y) + self.metric_v(x, y)
    }

    pub fn norm_sq(&self, x: &TwistorVector<S>) -> S {
        self.metric(x, x)
    }

    /// J₂: I⁺ on ℋ; J⁺ ↦ −K⁺, K⁺ ↦ J⁺ on 𝒱.
    pub fn j2(&self, x: &TwistorVector<S>) -> TwistorVector<S> {
        let h = Bivector::i_plus().as_skew_map().apply(&x.h);
        TwistorVector::new(h, [x.v[1].clone(), -x.v[0].clone()])
    }

    /// J₁: I⁺ on ℋ; J⁺ ↦ K⁺, K⁺ ↦ −J⁺ on 𝒱.
    pub fn j1(&self, x: &TwistorVector<S>) -> TwistorVector<S> {
        let h = Bivector::i_plus().as_skew_map().apply(&x.h);
        TwistorVector::new(h, [-x.v[1].clone(), x.v[0].clone()])
    }
}

/// Pointwise data of a hypersurface germ: unit normal, Hopf eigenvalue µ,
/// a second eigenvalue λ and a candidate eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct HypersurfaceGermData<S> {
    pub n: TwistorVector<S>,
    pub mu: S,
    pub lambda: S,
    pub x: TwistorVector<S>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, RelationIdeal, RingElem};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q_ctx(kappa: Rational) -> TwistorContext<Rational> {
        TwistorContext::nearly_kahler(BaseSpace::Sphere4, kappa).unwrap()
    }

    #[test]
    fn constants() {
        let k = derive_constants(&int(12), &rat(1, 2)).unwrap();
        assert_eq!((k.a, k.b, k.c), (rat(3, 8), rat(1, 8), int(2)));
        let k = derive_constants(&int(24), &rat(1, 4)).unwrap();
        assert_eq!((k.a, k.b, k.c), (rat(3, 4), rat(1, 4), int(4)));
        let k = derive_constants(&int(12), &int(2)).unwrap();
        assert_eq!(k.a, int(0));
        assert_eq!(
            derive_constants(&int(0), &int(1)),
            Err(TwistorError::NonPositiveParameter)
        );
        let k = derive_constants(&12.0f64, &0.5).unwrap();
        assert!((k.a - 0.375).abs() < 1e-15);
    }

    #[test]
    fn nearly_kahler_contexts() {
        let c = q_ctx(int(1));
        assert_eq!(c.t, rat(1, 2));
        assert_eq!(c.consts.c, int(2));
        let f = TwistorContext::nearly_kahler(BaseSpace::cp2bar(int(1), int(0)).unwrap(), int(1))
            .unwrap();
        assert_eq!(f.t, rat(1, 4));
        assert_eq!(f.consts.a, rat(3, 4));
        assert!(TwistorContext::nearly_kahler(BaseSpace::Sphere4, int(0)).is_err());
    }

    #[test]
    fn metric_examples() {
        let c = q_ctx(int(1));
        let e1 = TwistorVector::<Rational>::basis(0);
        let jp = TwistorVector::<Rational>::basis(4);
        assert_eq!(c.metric(&e1, &jp), int(0));
        assert_eq!(c.metric(&e1, &e1), int(1));
        assert_eq!(c.metric(&jp, &jp), int(1));
        assert_eq!(q_ctx(rat(1, 4)).metric(&jp, &jp), rat(1, 4));
    }

    #[test]
    fn complex_structures() {
        let c = q_ctx(int(1));
        let b = TwistorVector::<Rational>::basis;
        assert_eq!(c.j2(&b(0)), b(1));
        assert_eq!(c.j2(&b(4)), -b(5));
        assert_eq!(c.j2(&c.j2(&b(5))), -b(5));
        assert_eq!(c.j1(&b(4)), b(5));
        for i in 0..6 {
            assert_eq!(c.j1(&c.j1(&b(i))), -b(i));
            assert_eq!(c.j2(&c.j2(&b(i))), -b(i));
        }
    }

    fn random_vector(rng: &mut ChaCha8Rng) -> TwistorVector<f64> {
        TwistorVector::from_components(std::array::from_fn(|_| rng.gen_range(-2.0..2.0)))
    }

    #[test]
    fn float_isometry_and_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = TwistorContext::nearly_kahler(BaseSpace::<f64>::Sphere4, 0.25).unwrap();
        for _ in 0..10_000 {
            let x = random_vector(&mut rng);
            let y = random_vector(&mut rng);
            assert!((c.metric(&c.j2(&x), &c.j2(&y)) - c.metric(&x, &y)).abs() < 1e-9);
            assert!((c.metric(&c.j1(&x), &c.j1(&y)) - c.metric(&x, &y)).abs() < 1e-9);
            assert!((c.metric_h(&c.j2(&x), &y) + c.metric_h(&x, &c.j2(&y))).abs() < 1e-9);
            assert_eq!(c.j1(&x.horizontal_part()), c.j2(&x.horizontal_part()));
            assert_eq!(c.j1(&x.vertical_part()), -c.j2(&x.vertical_part()));
        }
    }

    #[test]
    fn symbolic_isometry() {
        let names: Vec<String> = (1..=12).map(|i| format!("x{i}")).chain(["k".into()]).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let ring = RelationIdeal::free("iso", &refs);
        let g = |i| ring.generator(i);
        let x = TwistorVector::<RingElem>::from_components(std::array::from_fn(g));
        let y = TwistorVector::<RingElem>::from_components(std::array::from_fn(|i| g(i + 6)));
        let c = TwistorContext::nearly_kahler(BaseSpace::Sphere4, g(12)).unwrap();
        assert_eq!(c.metric(&c.j2(&x), &c.j2(&y)), c.metric(&x, &y));
        assert_eq!(c.metric_v(&c.j2(&x), &y), -c.metric_v(&x, &c.j2(&y)));
    }
}
