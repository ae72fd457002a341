//! Vectors, bivectors and skew maps of an oriented orthonormal 4-frame
//! (e₁, e₂, e₃, e₄).
//!
//! A bivector acts on vectors by `(u∧v)(w) = g(u,w)v − g(v,w)u`. With this
//! convention I⁺ = e₁∧e₂ + e₃∧e₄ sends e₁ to e₂, and (I⁺, J⁺, K⁺) compose like
//! the unit quaternions.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{rat, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("bivector does not square to −id, so it is not a complex structure")]
    NotAComplexStructure,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
}

/// Index pairs of the bivector basis e₁∧e₂, e₁∧e₃, e₁∧e₄, e₂∧e₃, e₂∧e₄, e₃∧e₄.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub const SPLIT_LABELS: [&str; 6] = ["I⁺", "J⁺", "K⁺", "I⁻", "J⁻", "K⁻"];

#[derive(Debug, Clone, PartialEq)]
pub struct Vector4<S>(pub [S; 4]);

impl<S: Scalar> Vector4<S> {
    pub fn new(c: [S; 4]) -> Self {
        Self(c)
    }

    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| S::zero()))
    }

    /// The frame vector e_{i+1}.
    pub fn basis(i: usize) -> Self {
        Self(std::array::from_fn(|k| if k == i { S::one() } else { S::zero() }))
    }

    pub fn from_fn(f: impl FnMut(usize) -> S) -> Self {
        Self(std::array::from_fn(f))
    }

    pub fn dot(&self, other: &Self) -> S {
        crate::scalar::sum((0..4).map(|i| self.0[i].clone() * other.0[i].clone()))
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_fn(|i| k.clone() * self.0[i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Vector4<T> {
        Vector4(std::array::from_fn(|i| f(&self.0[i])))
    }
}

impl<S: Scalar> Add for Vector4<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i| self.0[i].clone() + rhs.0[i].clone())
    }
}

impl<S: Scalar> Sub for Vector4<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i| self.0[i].clone() - rhs.0[i].clone())
    }
}

impl<S: Scalar> Neg for Vector4<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i| -self.0[i].clone())
    }
}

/// Plain 4×4 matrix, `m[row][col]`, acting on column vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix4<S>(pub [[S; 4]; 4]);

impl<S: Scalar> Matrix4<S> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> S) -> Self {
        Self(std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))))
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| S::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r].clone())
    }

    pub fn apply(&self, v: &Vector4<S>) -> Vector4<S> {
        Vector4::from_fn(|r| {
            crate::scalar::sum((0..4).map(|c| self.0[r][c].clone() * v.0[c].clone()))
        })
    }

    pub fn column(&self, c: usize) -> Vector4<S> {
        Vector4::from_fn(|r| self.0[r][c].clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_fn(|r, c| k.clone() * self.0[r][c].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Scalar::is_zero)
    }

    pub fn is_skew(&self) -> bool {
        (0..4).all(|r| (0..4).all(|c| (self.0[r][c].clone() + self.0[c][r].clone()).is_zero()))
    }
}

impl<S: Scalar> Add for Matrix4<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.0[r][c].clone() + rhs.0[r][c].clone())
    }
}

impl<S: Scalar> Sub for Matrix4<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.0[r][c].clone() - rhs.0[r][c].clone())
    }
}

impl<S: Scalar> Mul for &Matrix4<S> {
    type Output = Matrix4<S>;
    fn mul(self, rhs: &Matrix4<S>) -> Matrix4<S> {
        Matrix4::from_fn(|r, c| {
            crate::scalar::sum((0..4).map(|k| self.0[r][k].clone() * rhs.0[k][c].clone()))
        })
    }
}

/// Element of so(4): a skew-symmetric endomorphism of the tangent space.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMap4<S>(Matrix4<S>);

impl<S: Scalar> SkewMap4<S> {
    pub fn try_from_matrix(m: Matrix4<S>) -> Result<Self, FrameError> {
        if m.is_skew() {
            Ok(Self(m))
        } else {
            Err(FrameError::NotSkew)
        }
    }

    pub fn matrix(&self) -> &Matrix4<S> {
        &self.0
    }

    pub fn apply(&self, v: &Vector4<S>) -> Vector4<S> {
        self.0.apply(v)
    }

    pub fn compose(&self, other: &Self) -> Matrix4<S> {
        &self.0 * &other.0
    }

    /// `[self, other] = self∘other − other∘self`, again skew.
    pub fn commutator(&self, other: &Self) -> Self {
        Self(self.compose(other) - other.compose(self))
    }

    pub fn squares_to_minus_identity(&self) -> bool {
        (self.compose(self) + Matrix4::identity()).is_zero()
    }

    pub fn to_bivector(&self) -> Bivector<S> {
        Bivector(std::array::from_fn(|k| {
            let (i, j) = PAIRS[k];
            self.0 .0[j][i].clone()
        }))
    }
}

/// Element of Λ²ℝ⁴ in the basis e₁∧e₂, e₁∧e₃, e₁∧e₄, e₂∧e₃, e₂∧e₄, e₃∧e₄.
#[derive(Debug, Clone, PartialEq)]
pub struct Bivector<S>(pub [S; 6]);

/// Coordinates of a bivector on (I⁺, J⁺, K⁺, I⁻, J⁻, K⁻).
#[derive(Debug, Clone, PartialEq)]
pub struct SplitCoords<S>(pub [S; 6]);

impl<S: Scalar> SplitCoords<S> {
    pub fn self_dual(&self) -> [S; 3] {
        [self.0[0].clone(), self.0[1].clone(), self.0[2].clone()]
    }

    pub fn anti_self_dual(&self) -> [S; 3] {
        [self.0[3].clone(), self.0[4].clone(), self.0[5].clone()]
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(SPLIT_LABELS)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("({c})·{l}"))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<S: Scalar> Bivector<S> {
    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| S::zero()))
    }

    /// e_{i+1} ∧ e_{j+1} for any i ≠ j.
    pub fn basis(i: usize, j: usize) -> Self {
        wedge(&Vector4::basis(i), &Vector4::basis(j))
    }

    fn from_pairs(coeffs: &[(usize, usize, i64)]) -> Self {
        coeffs.iter().fold(Self::zero(), |acc, &(i, j, k)| {
            acc + Self::basis(i, j).scale(&S::from_i64(k))
        })
    }

    pub fn i_plus() -> Self {
        Self::from_pairs(&[(0, 1, 1), (2, 3, 1)])
    }
    pub fn j_plus() -> Self {
        Self::from_pairs(&[(0, 2, 1), (1, 3, -1)])
    }
    pub fn k_plus() -> Self {
        Self::from_pairs(&[(0, 3, 1), (1, 2, 1)])
    }
    pub fn i_minus() -> Self {
        Self::from_pairs(&[(0, 1, 1), (2, 3, -1)])
    }
    pub fn j_minus() -> Self {
        Self::from_pairs(&[(0, 2, 1), (1, 3, 1)])
    }
    pub fn k_minus() -> Self {
        Self::from_pairs(&[(0, 3, -1), (1, 2, 1)])
    }

    pub fn component(&self, i: usize, j: usize) -> S {
        match PAIRS.iter().position(|&p| p == (i.min(j), i.max(j))) {
            Some(k) if i < j => self.0[k].clone(),
            Some(k) => -self.0[k].clone(),
            None => S::zero(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        Self(std::array::from_fn(|i| k.clone() * self.0[i].clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn to_split_basis(&self) -> SplitCoords<S> {
        let half = S::from_rational(&rat(1, 2));
        let b = |i, j| self.component(i, j);
        let h = |x: S| half.clone() * x;
        SplitCoords([
            h(b(0, 1) + b(2, 3)),
            h(b(0, 2) - b(1, 3)),
            h(b(0, 3) + b(1, 2)),
            h(b(0, 1) - b(2, 3)),
            h(b(0, 2) + b(1, 3)),
            h(b(1, 2) - b(0, 3)),
        ])
    }

    pub fn from_split_basis(c: &SplitCoords<S>) -> Self {
        let basis = [
            Self::i_plus(),
            Self::j_plus(),
            Self::k_plus(),
            Self::i_minus(),
            Self::j_minus(),
            Self::k_minus(),
        ];
        basis
            .into_iter()
            .zip(c.0.iter())
            .fold(Self::zero(), |acc, (b, k)| acc + b.scale(k))
    }

    pub fn as_skew_map(&self) -> SkewMap4<S> {
        let mut m = Matrix4::zero();
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            m.0[j][i] = self.0[k].clone();
            m.0[i][j] = -self.0[k].clone();
        }
        SkewMap4(m)
    }
}

impl<S: Scalar> Add for Bivector<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i].clone() + rhs.0[i].clone()))
    }
}

impl<S: Scalar> Sub for Bivector<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i].clone() - rhs.0[i].clone()))
    }
}

impl<S: Scalar> Neg for Bivector<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(std::array::from_fn(|i| -self.0[i].clone()))
    }
}

pub fn wedge<S: Scalar>(u: &Vector4<S>, v: &Vector4<S>) -> Bivector<S> {
    Bivector(std::array::from_fn(|k| {
        let (i, j) = PAIRS[k];
        u.0[i].clone() * v.0[j].clone() - u.0[j].clone() * v.0[i].clone()
    }))
}

/// `P̂ = [I, P]`, the projection of so(4) onto the vertical space at the
/// fibre point `I`.
pub fn hat<S: Scalar>(i: &Bivector<S>, p: &Bivector<S>) -> Result<Bivector<S>, FrameError> {
    let im = i.as_skew_map();
    if !im.squares_to_minus_identity() {
        return Err(FrameError::NotAComplexStructure);
    }
    Ok(im.commutator(&p.as_skew_map()).to_bivector())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use proptest::prelude::*;

    type Q = Rational;

    fn e(i: usize) -> Vector4<Q> {
        Vector4::basis(i)
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&e(0), &e(1)), Bivector::basis(0, 1));
        assert_eq!(wedge(&e(2), &e(0)), -Bivector::<Q>::basis(0, 2));
        let u = e(0) + e(1);
        let v = e(0) - e(1);
        assert_eq!(wedge(&u, &v), Bivector::basis(0, 1).scale(&Q::from_i64(-2)));
        assert!(wedge(&u, &u).is_zero());
    }

    #[test]
    fn split_basis_examples() {
        let half = rat(1, 2);
        let c = Bivector::<Q>::basis(0, 2).to_split_basis();
        assert_eq!(c.0, [rat(0, 1), half.clone(), rat(0, 1), rat(0, 1), half.clone(), rat(0, 1)]);
        let c = Bivector::<Q>::basis(1, 3).to_split_basis();
        assert_eq!(c.0, [rat(0, 1), -half.clone(), rat(0, 1), rat(0, 1), half, rat(0, 1)]);
        let c = Bivector::<Q>::i_plus().to_split_basis();
        assert_eq!(c.0, [rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn action_convention() {
        let ip = Bivector::<Q>::i_plus().as_skew_map();
        assert_eq!(ip.apply(&e(0)), e(1));
        assert_eq!(ip.apply(&e(2)), e(3));
        assert_eq!(ip.compose(&ip), Matrix4::identity().scale(&Q::from_i64(-1)));
        let jp = Bivector::<Q>::j_plus().as_skew_map();
        assert_eq!(jp.apply(&e(0)), e(2));
    }

    #[test]
    fn quaternion_relations() {
        let (i, j, k) = (
            Bivector::<Q>::i_plus().as_skew_map(),
            Bivector::<Q>::j_plus().as_skew_map(),
            Bivector::<Q>::k_plus().as_skew_map(),
        );
        assert_eq!(i.compose(&j), *k.matrix());
        assert_eq!(j.compose(&k), *i.matrix());
        assert_eq!(k.compose(&i), *j.matrix());
        for m in [&i, &j, &k] {
            assert!(m.squares_to_minus_identity());
        }
    }

    #[test]
    fn hat_examples() {
        let ip = Bivector::<Q>::i_plus();
        assert!(hat(&ip, &ip).unwrap().is_zero());
        let p = (Bivector::j_plus() + Bivector::j_minus()).scale(&rat(1, 2));
        assert_eq!(hat(&ip, &p).unwrap(), Bivector::k_plus());
        assert_eq!(
            hat(&ip, &Bivector::k_plus()).unwrap(),
            Bivector::j_plus().scale(&Q::from_i64(-2))
        );
        assert_eq!(
            hat(&Bivector::basis(0, 1), &ip),
            Err(FrameError::NotAComplexStructure)
        );
    }

    #[test]
    fn hat_kills_anti_self_dual_part() {
        let ip = Bivector::<Q>::i_plus();
        for b in [Bivector::i_minus(), Bivector::j_minus(), Bivector::k_minus()] {
            assert!(hat(&ip, &b).unwrap().is_zero());
        }
    }

    #[test]
    fn skew_map_rejects_symmetric_matrix() {
        assert_eq!(
            SkewMap4::try_from_matrix(Matrix4::<Q>::identity()),
            Err(FrameError::NotSkew)
        );
    }

    fn bivector_f64() -> impl Strategy<Value = Bivector<f64>> {
        proptest::array::uniform6(-3.0f64..3.0).prop_map(Bivector)
    }

    proptest! {
        #[test]
        fn split_round_trip(b in bivector_f64()) {
            let back = Bivector::from_split_basis(&b.to_split_basis());
            let d = back.as_skew_map().matrix().clone() - b.as_skew_map().matrix().clone();
            prop_assert!(d.is_zero());
        }

        #[test]
        fn self_dual_and_anti_self_dual_commute(p in proptest::array::uniform3(-3.0f64..3.0),
                                                 q in proptest::array::uniform3(-3.0f64..3.0)) {
            let zero = [0.0; 3];
            let bp = Bivector::from_split_basis(&SplitCoords([p[0], p[1], p[2], zero[0], zero[1], zero[2]]));
            let bq = Bivector::from_split_basis(&SplitCoords([0.0, 0.0, 0.0, q[0], q[1], q[2]]));
            prop_assert!(bp.as_skew_map().commutator(&bq.as_skew_map()).to_bivector().is_zero());
        }

        #[test]
        fn hat_on_vertical_plane_is_twice_left_multiplication(j in -3.0f64..3.0, k in -3.0f64..3.0) {
            let ip = Bivector::<f64>::i_plus();
            let p = Bivector::j_plus().scale(&j) + Bivector::k_plus().scale(&k);
            let lhs = hat(&ip, &p).unwrap();
            let left = SkewMap4::try_from_matrix(ip.as_skew_map().compose(&p.as_skew_map())).unwrap();
            let rhs = left.to_bivector().scale(&2.0);
            prop_assert!((lhs - rhs).is_zero());
        }
    }
}
