//! Quotient rings and generic vectors for the exact checks.

use std::sync::Arc;

use crate::base::BaseSpace;
use crate::scalar::ideals::{circle_relation, COS, SIN};
use crate::linalg::Matrix;
use crate::scalar::{Monomial, Polynomial, Rational, RelationIdeal, RingElem, RingError};
use crate::twistor::{TwistorContext, TwistorVector};

/// Base geometry of a symbolic ring: S⁴, or CP² at a generic point of the
/// circle c̃² + s̃² = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    Sphere4,
    Cp2Bar,
}

/// Variables c̃, s̃ (for CP²) followed by six components per prefix. With
/// `unit = Some((prefix, κ))` the vector with that prefix is a unit vector
/// for vertical Gram κ.
pub fn vector_ring(
    name: &str,
    base: BaseKind,
    prefixes: &[&str],
    unit: Option<(&str, &Rational)>,
) -> Result<Arc<RelationIdeal>, RingError> {
    let mut b = RelationIdeal::builder(name);
    if base == BaseKind::Cp2Bar {
        b = b.variable(COS).variable(SIN);
    }
    for p in prefixes {
        b = b.variables((1..=6).map(|i| format!("{p}{i}")));
    }
    if base == BaseKind::Cp2Bar {
        let rel = circle_relation(&b.symbol(COS), &b.symbol(SIN));
        b = b.relation(rel);
    }
    if let Some((p, kappa)) = unit {
        let comp = |i: usize| b.symbol(&format!("{p}{i}"));
        let mut rel = Polynomial::constant(-Rational::from_integer(1.into()));
        for i in 1..=6 {
            let sq = &comp(i) * &comp(i);
            rel = &rel + &if i > 4 { sq.scale(kappa) } else { sq };
        }
        b = b.relation(rel);
    }
    b.build()
}

pub fn symbolic_vector(ring: &Arc<RelationIdeal>, prefix: &str) -> TwistorVector<RingElem> {
    TwistorVector::from_components(std::array::from_fn(|i| {
        ring.symbol(&format!("{prefix}{}", i + 1))
            .expect("prefix declared in the ring")
    }))
}

pub fn symbolic_base(ring: &Arc<RelationIdeal>, base: BaseKind) -> BaseSpace<RingElem> {
    match base {
        BaseKind::Sphere4 => BaseSpace::Sphere4,
        BaseKind::Cp2Bar => {
            let c = ring.symbol(COS).expect("ring declares c̃");
            let s = ring.symbol(SIN).expect("ring declares s̃");
            BaseSpace::cp2bar(c, s).expect("circle relation holds in the ring")
        }
    }
}

/// Y − g(Y,N)N − g(Y,J₂N)J₂N, orthogonal to N and J₂N when N is a unit vector.
pub fn project_out<S: crate::scalar::Scalar>(
    ctx: &TwistorContext<S>,
    n: &TwistorVector<S>,
    y: &TwistorVector<S>,
) -> TwistorVector<S> {
    let jn = ctx.j2(n);
    y.clone() - n.scale(&ctx.metric(y, n)) - jn.scale(&ctx.metric(y, &jn))
}

/// All monomials of total degree `d` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn go(var: usize, nvars: usize, left: u32, acc: &mut Vec<(usize, i32)>, out: &mut Vec<Monomial>) {
        if var + 1 == nvars {
            acc.push((var, left as i32));
            out.push(Monomial::from_exponents(acc));
            acc.pop();
            return;
        }
        for e in (0..=left).rev() {
            acc.push((var, e as i32));
            go(var + 1, nvars, left - e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        go(0, nvars, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Homogeneous cofactors c with Σ cᵢ·gᵢ = target, found by exact linear
/// algebra on the coefficients of the target's degree; `None` if the target
/// is not in the degree-d part of the ideal.
pub fn homogeneous_membership(
    gens: &[Polynomial],
    target: &Polynomial,
    nvars: usize,
) -> Option<Vec<Polynomial>> {
    let d = target.max_degree();
    let rows = monomials_of_degree(nvars, d as u32);
    let mut columns: Vec<(usize, Monomial, Vec<Rational>)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let k = d - g.max_degree();
        if k < 0 || g.is_zero() {
            continue;
        }
        for m in monomials_of_degree(nvars, k as u32) {
            let prod = g.mul_term(&Rational::from_integer(1.into()), &m);
            let col = rows.iter().map(|r| prod.coefficient(r)).collect();
            columns.push((i, m, col));
        }
    }
    if columns.is_empty() {
        return target.is_zero().then(|| vec![Polynomial::zero(); gens.len()]);
    }
    let a = Matrix::from_fn(rows.len(), columns.len(), |r, c| columns[c].2[r].clone());
    let rhs: Vec<Rational> = rows.iter().map(|r| target.coefficient(r)).collect();
    let sol = a.solve(&rhs)?;
    let mut cof = vec![Polynomial::zero(); gens.len()];
    for ((i, m, _), x) in columns.iter().zip(sol) {
        cof[*i] = &cof[*i] + &Polynomial::term(x, m.clone());
    }
    Some(cof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{corollary1_rhs, r_prop1};
    use crate::scalar::{int, rat, Scalar};

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(2, 4).len(), 5);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
    }

    #[test]
    fn membership_by_linear_algebra() {
        let p = Polynomial::var(0);
        let q = Polynomial::var(1);
        let c1 = &(&p * &p) - &(&q * &q);
        let c2 = &p * &q;
        let p4 = p.pow(4);
        let cof = homogeneous_membership(&[c1.clone(), c2.clone()], &p4, 2).unwrap();
        assert_eq!(&(&cof[0] * &c1) + &(&cof[1] * &c2), p4);
        assert!(homogeneous_membership(&[c1.clone(), c2.clone()], &(&p * &p), 2).is_none());
        let x = Polynomial::constant(rat(1, 2));
        assert!(homogeneous_membership(&[c1], &x, 2).is_none());
    }

    #[test]
    fn corollary_under_unit_relation() {
        for base in [BaseKind::Sphere4, BaseKind::Cp2Bar] {
            let ring = vector_ring("cor", base, &["n", "y"], Some(("n", &int(1)))).unwrap();
            let ctx = TwistorContext::nearly_kahler(symbolic_base(&ring, base), RingElem::one()).unwrap();
            let n = symbolic_vector(&ring, "n");
            let x = project_out(&ctx, &n, &symbolic_vector(&ring, "y"));
            let lhs = r_prop1(&ctx, &ctx.j2(&n), &ctx.j2(&x), &x, &n);
            let rhs = corollary1_rhs(&ctx, &n, &x).unwrap();
            assert!(!lhs.is_zero());
            assert!((lhs.clone() - rhs).is_zero());
            let mut k = ctx.consts.clone();
            k.b = k.b + RingElem::ratio(1, 100);
            let bent = ctx.clone().with_constants(k);
            assert!(!(lhs - corollary1_rhs(&bent, &n, &x).unwrap()).is_zero());
        }
    }
}
