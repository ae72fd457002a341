//! The quotient rings used by the symbolic checks.
//!
//! Variable declaration order fixes the graded lexicographic order
//! c̃ > s̃ > δ > h > v.

use std::sync::Arc;

use super::poly::Polynomial;
use super::rational::int;
use super::ring::{RelationIdeal, RingError};

pub const COS: &str = "c̃";
pub const SIN: &str = "s̃";
pub const DELTA: &str = "δ";
pub const NORM_H: &str = "h";
pub const NORM_V: &str = "v";

/// ℚ[c̃, s̃, s̃⁻¹]/(c̃² + s̃² − 1).
pub fn circle_ideal() -> Arc<RelationIdeal> {
    let b = RelationIdeal::builder("circle")
        .variable(COS)
        .inverted_variable(SIN);
    let rel = circle_relation(&b.symbol(COS), &b.symbol(SIN));
    b.relation(rel).build().expect("circle ideal is confluent")
}

pub fn circle_relation(c: &Polynomial, s: &Polynomial) -> Polynomial {
    &(&(c * c) + &(s * s)) - &Polynomial::constant(int(1))
}

/// 3s̃²δ² − 6c̃s̃δ − (7 − 3c̃²): δ is a root parameter of the eigenvector
/// quadratic.
pub fn dagger_quadratic(c: &Polynomial, s: &Polynomial, d: &Polynomial) -> Polynomial {
    let three = Polynomial::constant(int(3));
    let six = Polynomial::constant(int(6));
    let seven = Polynomial::constant(int(7));
    let a = &(&(&three * &(s * s)) * d) * d;
    let b = &(&(&six * c) * s) * d;
    let k = &seven - &(&three * &(c * c));
    &(&a - &b) - &k
}

/// Options for [`dagger_ideal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DaggerIdealOptions {
    /// Adds h² + v² − 1 (unit normal).
    pub unit_normal: bool,
    /// Adds the quadratic relation satisfied by δ. Without it δ is free.
    pub delta_relation: bool,
}

impl Default for DaggerIdealOptions {
    fn default() -> Self {
        Self {
            unit_normal: true,
            delta_relation: true,
        }
    }
}

/// ℚ[c̃, s̃, s̃⁻¹, δ, h, v] modulo the circle relation and, optionally, the
/// δ-quadratic and h² + v² = 1.
pub fn dagger_ideal(opts: DaggerIdealOptions) -> Result<Arc<RelationIdeal>, RingError> {
    let name = match (opts.delta_relation, opts.unit_normal) {
        (true, true) => "dagger+unit",
        (true, false) => "dagger",
        (false, true) => "circle+unit",
        (false, false) => "circle+free-delta",
    };
    let b = RelationIdeal::builder(name)
        .variable(COS)
        .inverted_variable(SIN)
        .variable(DELTA)
        .variable(NORM_H)
        .variable(NORM_V);
    let (c, s, d) = (b.symbol(COS), b.symbol(SIN), b.symbol(DELTA));
    let (h, v) = (b.symbol(NORM_H), b.symbol(NORM_V));
    let mut b = b.relation(circle_relation(&c, &s));
    if opts.delta_relation {
        b = b.relation(dagger_quadratic(&c, &s, &d));
    }
    if opts.unit_normal {
        b = b.relation(circle_relation(&h, &v));
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::scalar::ring::{ReductionStrategy, RingElem};
    use crate::scalar::{Monomial, Scalar};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shipped_rule_shapes() {
        let r = dagger_ideal(DaggerIdealOptions::default()).unwrap();
        let lhs: Vec<String> = r.rules().iter().map(|x| x.lhs.render(r.variables())).collect();
        assert_eq!(lhs, vec!["c̃²", "δ²", "h²"]);
    }

    #[test]
    fn delta_quadratic_reduces_to_zero() {
        let r = dagger_ideal(DaggerIdealOptions::default()).unwrap();
        let q = dagger_quadratic(
            &Polynomial::var(0),
            &Polynomial::var(1),
            &Polynomial::var(2),
        );
        assert!(r.normalize(&q).unwrap().is_zero());
    }

    #[test]
    fn delta_cubed_by_both_routes() {
        let r = dagger_ideal(DaggerIdealOptions::default()).unwrap();
        let d = r.symbol(DELTA).unwrap();
        let dd = d.clone() * d.clone();
        let left = d.clone() * dd.clone();
        let right = dd * d.clone();
        let direct = r.normalize(&Polynomial::var(2).pow(3)).unwrap();
        assert_eq!(left.poly(), &direct);
        assert_eq!(right.poly(), &direct);
    }

    fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, inverted: &[usize]) -> Polynomial {
        let mut p = Polynomial::zero();
        for _ in 0..rng.gen_range(1..6) {
            let deg = rng.gen_range(0..=6);
            let mut pairs = Vec::new();
            for _ in 0..deg {
                pairs.push((rng.gen_range(0..nvars), 1));
            }
            for &i in inverted {
                if rng.gen_bool(0.3) {
                    pairs.push((i, -rng.gen_range(1..3)));
                }
            }
            let c = rat(rng.gen_range(-9..10), rng.gen_range(1..5));
            p = &p + &Polynomial::term(c, Monomial::from_exponents(&pairs));
        }
        p
    }

    #[test]
    fn reduction_is_order_independent() {
        let rings = [
            circle_ideal(),
            dagger_ideal(DaggerIdealOptions::default()).unwrap(),
            dagger_ideal(DaggerIdealOptions {
                unit_normal: false,
                delta_relation: true,
            })
            .unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ring in &rings {
            let nvars = ring.variables().len();
            for k in 0..1000 {
                let p = random_poly(&mut rng, nvars, &[1]);
                let a = ring.normalize(&p).unwrap();
                let b = ring
                    .normalize_with(&p, ReductionStrategy::Random(k as u64))
                    .unwrap();
                assert_eq!(a, b, "ring {} poly {}", ring.name(), p.render(ring.variables()));
            }
        }
    }

    #[test]
    fn normal_forms_are_idempotent_and_canonical() {
        let ring = dagger_ideal(DaggerIdealOptions::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p = random_poly(&mut rng, 5, &[1]);
            let n = ring.normalize(&p).unwrap();
            assert_eq!(ring.normalize(&n).unwrap(), n);
            for (m, _) in n.terms() {
                assert!(m.exponent(0) <= 1 && m.exponent(2) <= 1 && m.exponent(3) <= 1);
            }
        }
    }

    #[test]
    fn ring_constants_mix_with_symbols() {
        let ring = circle_ideal();
        let c = ring.symbol(COS).unwrap();
        let x = RingElem::constant(rat(1, 2)) * c.clone() + RingElem::one();
        assert_eq!(x.render(), "1/2·c̃ + 1");
    }
}
