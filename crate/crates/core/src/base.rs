//! Curvature of the two base spaces S⁴ and CP²-bar at a point, in an
//! adapted orthonormal frame.
//!
//! The endomorphism convention is `g(R(U,V)W, T) = R(U,V,W,T)`.

use thiserror::Error;

use crate::frame::{Bivector, Matrix4, SkewMap4, Vector4, PAIRS};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseError {
    #[error("operation only defined on CP²")]
    WrongBaseSpace,
    #[error("(c̃, s̃) does not satisfy c̃² + s̃² = 1")]
    NotOnCircle,
}

/// Sign used when turning the 4-tensor into a curvature endomorphism.
/// `Flipped` exists only to exercise the sensitivity controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CurvatureSign {
    #[default]
    Standard,
    Flipped,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BaseSpace<S> {
    Sphere4,
    /// CP² with its orientation reversed; its complex structure is
    /// c̃ I⁻ + s̃ J⁻ in the adapted frame.
    Cp2Bar { c: S, s: S },
}

impl<S: Scalar> BaseSpace<S> {
    pub fn cp2bar(c: S, s: S) -> Result<Self, BaseError> {
        if !(c.square() + s.square() - S::one()).is_zero() {
            return Err(BaseError::NotOnCircle);
        }
        Ok(Self::Cp2Bar { c, s })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Sphere4 => "S4",
            Self::Cp2Bar { .. } => "CP2",
        }
    }

    pub fn scalar_curvature(&self) -> i64 {
        match self {
            Self::Sphere4 => 12,
            Self::Cp2Bar { .. } => 24,
        }
    }

    /// Complex structure 𝕁 = c̃ I⁻ + s̃ J⁻ of CP².
    pub fn j_cp2(&self) -> Result<SkewMap4<S>, BaseError> {
        match self {
            Self::Cp2Bar { c, s } => {
                let b = Bivector::i_minus().scale(c) + Bivector::j_minus().scale(s);
                Ok(b.as_skew_map())
            }
            Self::Sphere4 => Err(BaseError::WrongBaseSpace),
        }
    }

    pub fn curvature(&self, u: &Vector4<S>, v: &Vector4<S>, w: &Vector4<S>, t: &Vector4<S>) -> S {
        match self {
            Self::Sphere4 => v.dot(w) * u.dot(t) - u.dot(w) * v.dot(t),
            Self::Cp2Bar { .. } => {
                let j = self.j_cp2().expect("CP² has a complex structure");
                let jw = j.apply(w);
                let jt = j.apply(t);
                let jv = j.apply(v);
                u.dot(t) * v.dot(w) - u.dot(w) * v.dot(t) - u.dot(&jw) * v.dot(&jt)
                    + u.dot(&jt) * v.dot(&jw)
                    - S::from_i64(2) * u.dot(&jv) * w.dot(&jt)
            }
        }
    }

    /// Matrix of the endomorphism R(u, v).
    pub fn curvature_endomorphism(&self, u: &Vector4<S>, v: &Vector4<S>) -> Matrix4<S> {
        Matrix4::from_fn(|row, col| {
            self.curvature(u, v, &Vector4::basis(col), &Vector4::basis(row))
        })
    }

    pub fn curvature_operator(&self, b: &Bivector<S>) -> Bivector<S> {
        self.curvature_operator_with(b, CurvatureSign::Standard)
    }

    /// Curvature as an operator on Λ²: linear in `b`, and on u∧v the result
    /// acts on vectors as R(u, v).
    pub fn curvature_operator_with(&self, b: &Bivector<S>, sign: CurvatureSign) -> Bivector<S> {
        let mut acc = Matrix4::zero();
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            if b.0[k].is_zero() {
                continue;
            }
            let m = self.curvature_endomorphism(&Vector4::basis(i), &Vector4::basis(j));
            acc = acc + m.scale(&b.0[k]);
        }
        if sign == CurvatureSign::Flipped {
            acc = acc.scale(&-S::one());
        }
        SkewMap4::try_from_matrix(acc)
            .expect("curvature endomorphisms are skew")
            .to_bivector()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ideals::{circle_ideal, COS, SIN};
    use crate::scalar::{rat, Rational, RingElem};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn e<S: Scalar>(i: usize) -> Vector4<S> {
        Vector4::basis(i)
    }

    fn symbolic_cp2() -> (BaseSpace<RingElem>, RingElem, RingElem) {
        let ring = circle_ideal();
        let c = ring.symbol(COS).unwrap();
        let s = ring.symbol(SIN).unwrap();
        (BaseSpace::cp2bar(c.clone(), s.clone()).unwrap(), c, s)
    }

    #[test]
    fn sphere_sectional_curvature() {
        let b = BaseSpace::<Q>::Sphere4;
        assert_eq!(b.curvature(&e(0), &e(1), &e(1), &e(0)), rat(1, 1));
    }

    #[test]
    fn sphere_operator_on_basis() {
        let b = BaseSpace::<Q>::Sphere4;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(b.curvature_operator(&Bivector::basis(i, j)), Bivector::basis(j, i));
                }
            }
        }
    }

    #[test]
    fn cp2_complex_structure() {
        let b = BaseSpace::<Q>::cp2bar(rat(1, 1), rat(0, 1)).unwrap();
        assert_eq!(b.j_cp2().unwrap(), Bivector::i_minus().as_skew_map());
        let (b, c, s) = symbolic_cp2();
        let j = b.j_cp2().unwrap();
        let col = j.apply(&e(0));
        assert_eq!(col.0, [RingElem::zero(), c, s, RingElem::zero()]);
        assert!(j.squares_to_minus_identity());
        assert_eq!(BaseSpace::<Q>::Sphere4.j_cp2(), Err(BaseError::WrongBaseSpace));
        assert_eq!(
            BaseSpace::<Q>::cp2bar(rat(1, 1), rat(1, 1)),
            Err(BaseError::NotOnCircle)
        );
    }

    #[test]
    fn cp2_values() {
        let (b, _, s) = symbolic_cp2();
        let v = b.curvature(&e(0), &e(2), &e(0), &e(2));
        let expect = -(RingElem::one() + RingElem::from_i64(3) * s.square());
        assert_eq!(v, expect);
        let fs = BaseSpace::<Q>::cp2bar(rat(1, 1), rat(0, 1)).unwrap();
        assert_eq!(fs.curvature(&e(0), &e(1), &e(1), &e(0)), rat(4, 1));
    }

    #[test]
    fn cp2_operator_display() {
        let (b, c, s) = symbolic_cp2();
        let three = RingElem::from_i64(3);
        let s2 = s.square();
        let got = b.curvature_operator(&Bivector::basis(0, 2));
        let expect = Bivector::i_minus().scale(&(-(three.clone() * c * s)))
            + Bivector::basis(0, 2).scale(&-(RingElem::one() + three.clone() * s2.clone()))
            + Bivector::basis(1, 3).scale(&(RingElem::one() - three * s2));
        assert_eq!(got, expect);
        let ip = Bivector::i_plus();
        let v = crate::frame::hat(&ip, &b.curvature_operator(&Bivector::basis(0, 3))).unwrap();
        assert_eq!(v.scale(&RingElem::ratio(-1, 2)), -Bivector::j_plus());
    }

    fn random_vec(rng: &mut ChaCha8Rng) -> Vector4<f64> {
        Vector4::from_fn(|_| rng.gen_range(-1.0..1.0))
    }

    #[test]
    fn algebraic_symmetries_float() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let spaces = [BaseSpace::Sphere4, BaseSpace::cp2bar(th.cos(), th.sin()).unwrap()];
            let (x, y, z, t) = (
                random_vec(&mut rng),
                random_vec(&mut rng),
                random_vec(&mut rng),
                random_vec(&mut rng),
            );
            for b in &spaces {
                let r = |a: &Vector4<f64>, b2: &Vector4<f64>, c: &Vector4<f64>, d: &Vector4<f64>| {
                    b.curvature(a, b2, c, d)
                };
                assert!((r(&x, &y, &z, &t) + r(&y, &x, &z, &t)).abs() < 1e-9);
                assert!((r(&x, &y, &z, &t) + r(&x, &y, &t, &z)).abs() < 1e-9);
                assert!((r(&x, &y, &z, &t) - r(&z, &t, &x, &y)).abs() < 1e-9);
                let bianchi = r(&x, &y, &z, &t) + r(&y, &z, &x, &t) + r(&z, &x, &y, &t);
                assert!(bianchi.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn kahler_invariance_exact() {
        let (b, _, _) = symbolic_cp2();
        let j = b.j_cp2().unwrap();
        let basis: Vec<Vector4<RingElem>> = (0..4).map(e).collect();
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    for t in &basis {
                        let lhs = b.curvature(x, y, z, t);
                        let rhs = b.curvature(&j.apply(x), &j.apply(y), &j.apply(z), &j.apply(t));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
