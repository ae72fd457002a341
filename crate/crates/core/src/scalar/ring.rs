//! Polynomial quotient rings with canonical normal forms.
//!
//! A [`RelationIdeal`] is a finite set of rewrite rules `lhs → rhs`, each
//! obtained from a relation `p = 0` by isolating the leading monomial of `p`.
//! Symbols may be declared invertible, in which case they may carry negative
//! exponents (localization). Rule sets are checked for confluence when the
//! ideal is built, so every element has a unique normal form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::poly::{Monomial, Polynomial};
use super::rational::{rational_to_f64, Rational};
use super::Scalar;

/// Upper bound on single-term rewrites during one normalization.
const REDUCTION_BUDGET: usize = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("reduction did not terminate within {0} rewrite steps")]
    NonTerminatingReduction(usize),
    #[error("division by `{0}`, which is not an inverted symbol")]
    DivisionByNonInvertedSymbol(String),
    #[error("variable index {0} is not declared in ring `{1}`")]
    UnknownVariable(usize, String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("relation {0} has no usable leading monomial")]
    DegenerateRelation(String),
    #[error("rewrite rules are not confluent: overlap of `{0}` and `{1}` leaves {2}")]
    NotConfluent(String, String, String),
    #[error("{0} is not a unit of the ring")]
    NotAUnit(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    pub lhs: Monomial,
    pub rhs: Polynomial,
}

/// Order in which reducible terms are rewritten. Normal forms do not depend
/// on it for the shipped ideals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionStrategy {
    LargestFirst,
    Random(u64),
}

#[derive(Debug, Clone)]
pub struct RelationIdeal {
    name: String,
    variables: Vec<String>,
    inverted: Vec<bool>,
    rules: Vec<RewriteRule>,
}

impl PartialEq for RelationIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.variables == other.variables
            && self.inverted == other.inverted
            && self.rules == other.rules
    }
}

/// Incremental construction of a [`RelationIdeal`].
pub struct IdealBuilder {
    name: String,
    variables: Vec<String>,
    inverted: Vec<bool>,
    relations: Vec<Polynomial>,
}

impl IdealBuilder {
    pub fn variable(mut self, name: &str) -> Self {
        self.variables.push(name.to_string());
        self.inverted.push(false);
        self
    }

    pub fn variables<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        for n in names {
            self = self.variable(n.as_ref());
        }
        self
    }

    pub fn inverted_variable(mut self, name: &str) -> Self {
        self.variables.push(name.to_string());
        self.inverted.push(true);
        self
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Generator polynomial for a declared symbol, for writing relations.
    pub fn symbol(&self, name: &str) -> Polynomial {
        Polynomial::var(
            self.index_of(name)
                .unwrap_or_else(|| panic!("symbol `{name}` not declared")),
        )
    }

    /// Adds the relation `p = 0`.
    pub fn relation(mut self, p: Polynomial) -> Self {
        self.relations.push(p);
        self
    }

    pub fn build(self) -> Result<Arc<RelationIdeal>, RingError> {
        let mut ideal = RelationIdeal {
            name: self.name,
            variables: self.variables,
            inverted: self.inverted,
            rules: Vec::new(),
        };
        for rel in &self.relations {
            ideal.validate(rel)?;
            let rule = ideal.rule_from_relation(rel)?;
            ideal.rules.push(rule);
        }
        ideal.check_confluence()?;
        Ok(Arc::new(ideal))
    }
}

impl RelationIdeal {
    pub fn builder(name: &str) -> IdealBuilder {
        IdealBuilder {
            name: name.to_string(),
            variables: Vec::new(),
            inverted: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// A ring with the given free symbols and no relations.
    pub fn free(name: &str, variables: &[&str]) -> Arc<Self> {
        Self::builder(name)
            .variables(variables.iter())
            .build()
            .expect("a relation-free ring is always valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn is_inverted(&self, index: usize) -> bool {
        self.inverted.get(index).copied().unwrap_or(false)
    }

    fn validate(&self, p: &Polynomial) -> Result<(), RingError> {
        for (m, _) in p.terms() {
            for (v, e) in m.exponents() {
                if v >= self.variables.len() {
                    return Err(RingError::UnknownVariable(v, self.name.clone()));
                }
                if e < 0 && !self.inverted[v] {
                    return Err(RingError::DivisionByNonInvertedSymbol(
                        self.variables[v].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Turns `p = 0` into `lm(p) → lm(p) − p/lc(p)`, first stripping any
    /// inverted symbols from the leading monomial (they are units).
    fn rule_from_relation(&self, p: &Polynomial) -> Result<RewriteRule, RingError> {
        let render = || p.render(&self.variables);
        let mut p = p.clone();
        loop {
            let (lm, _) = p
                .leading_term()
                .ok_or_else(|| RingError::DegenerateRelation(render()))?;
            let unit: Vec<(usize, i32)> = lm
                .exponents()
                .filter(|&(v, _)| self.inverted[v])
                .collect();
            if unit.is_empty() {
                break;
            }
            let u = Monomial::from_exponents(&unit).inverse();
            p = p.mul_term(&<Rational as One>::one(), &u);
        }
        let (lm, lc) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        if lm.is_one() {
            return Err(RingError::DegenerateRelation(render()));
        }
        let mut rhs = p.scale(&(-<Rational as One>::one() / lc));
        rhs.remove_term(&lm);
        Ok(RewriteRule { lhs: lm, rhs })
    }

    /// Every pair of rules whose leading monomials share a variable must
    /// have an S-polynomial that reduces to zero. Coprime pairs are
    /// confluent by Buchberger's first criterion.
    fn check_confluence(&self) -> Result<(), RingError> {
        for (i, ri) in self.rules.iter().enumerate() {
            for rj in &self.rules[i + 1..] {
                if ri.lhs.is_coprime(&rj.lhs) {
                    continue;
                }
                let l = ri.lhs.lcm(&rj.lhs);
                let one = <Rational as One>::one();
                let si = ri.rhs.mul_term(&one, &l.mul(&ri.lhs.inverse()));
                let sj = rj.rhs.mul_term(&one, &l.mul(&rj.lhs.inverse()));
                let s = self.reduce(&(&si - &sj), ReductionStrategy::LargestFirst)?;
                if !s.is_zero() {
                    return Err(RingError::NotConfluent(
                        ri.lhs.render(&self.variables),
                        rj.lhs.render(&self.variables),
                        s.render(&self.variables),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Returns the unique normal form of `p`.
    pub fn normalize(&self, p: &Polynomial) -> Result<Polynomial, RingError> {
        self.normalize_with(p, ReductionStrategy::LargestFirst)
    }

    pub fn normalize_with(
        &self,
        p: &Polynomial,
        strategy: ReductionStrategy,
    ) -> Result<Polynomial, RingError> {
        self.validate(p)?;
        self.reduce(p, strategy)
    }

    fn applicable_rule(&self, m: &Monomial) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.lhs.divides(m))
    }

    fn reduce(&self, p: &Polynomial, strategy: ReductionStrategy) -> Result<Polynomial, RingError> {
        if self.rules.is_empty() {
            return Ok(p.clone());
        }
        match strategy {
            ReductionStrategy::LargestFirst => self.reduce_largest_first(p),
            ReductionStrategy::Random(seed) => self.reduce_random(p, seed),
        }
    }

    // Terms are taken in decreasing order; rewriting only produces smaller
    // monomials, so every irreducible term popped is final.
    fn reduce_largest_first(&self, p: &Polynomial) -> Result<Polynomial, RingError> {
        let mut work = p.clone();
        let mut out = Polynomial::zero();
        let mut steps = 0usize;
        while let Some((m, c)) = work.pop_leading() {
            match self.applicable_rule(&m) {
                None => out.add_term(c, m),
                Some(rule) => {
                    steps += 1;
                    if steps > REDUCTION_BUDGET {
                        return Err(RingError::NonTerminatingReduction(REDUCTION_BUDGET));
                    }
                    let q = m.mul(&rule.lhs.inverse());
                    for (n, k) in rule.rhs.terms() {
                        work.add_term(k * &c, n.mul(&q));
                    }
                }
            }
        }
        Ok(out)
    }

    fn reduce_random(&self, p: &Polynomial, seed: u64) -> Result<Polynomial, RingError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cur = p.clone();
        let mut steps = 0usize;
        loop {
            let candidates: Vec<(Monomial, usize)> = cur
                .terms()
                .flat_map(|(m, _)| {
                    self.rules
                        .iter()
                        .enumerate()
                        .filter(|(_, r)| r.lhs.divides(m))
                        .map(|(k, _)| (m.clone(), k))
                        .collect::<Vec<_>>()
                })
                .collect();
            if candidates.is_empty() {
                return Ok(cur);
            }
            steps += 1;
            if steps > REDUCTION_BUDGET {
                return Err(RingError::NonTerminatingReduction(REDUCTION_BUDGET));
            }
            let (m, k) = &candidates[rng.gen_range(0..candidates.len())];
            let rule = &self.rules[*k];
            let c = cur.remove_term(m).expect("candidate term present");
            let q = m.mul(&rule.lhs.inverse());
            cur = &cur + &rule.rhs.mul_term(&c, &q);
        }
    }

    pub fn symbol(self: &Arc<Self>, name: &str) -> Result<RingElem, RingError> {
        let i = self
            .index_of(name)
            .ok_or_else(|| RingError::UnknownSymbol(name.to_string()))?;
        Ok(self.generator(i))
    }

    pub fn generator(self: &Arc<Self>, index: usize) -> RingElem {
        RingElem::from_parts(Polynomial::var(index), Some(self.clone()))
    }

    /// `name⁻¹`, available only for inverted symbols.
    pub fn inverse_symbol(self: &Arc<Self>, name: &str) -> Result<RingElem, RingError> {
        let i = self
            .index_of(name)
            .ok_or_else(|| RingError::UnknownSymbol(name.to_string()))?;
        if !self.inverted[i] {
            return Err(RingError::DivisionByNonInvertedSymbol(name.to_string()));
        }
        Ok(RingElem::from_parts(
            Polynomial::term(<Rational as One>::one(), Monomial::power(i, -1)),
            Some(self.clone()),
        ))
    }

    pub fn element(self: &Arc<Self>, p: &Polynomial) -> Result<RingElem, RingError> {
        Ok(RingElem::from_parts(self.normalize(p)?, Some(self.clone())))
    }
}

/// Element of a quotient ring, stored in normal form.
///
/// Elements without a ring are rational constants; they combine with
/// elements of any ring.
#[derive(Clone, Debug)]
pub struct RingElem {
    poly: Polynomial,
    ring: Option<Arc<RelationIdeal>>,
}

impl RingElem {
    fn from_parts(poly: Polynomial, ring: Option<Arc<RelationIdeal>>) -> Self {
        Self { poly, ring }
    }

    pub fn constant(q: Rational) -> Self {
        Self::from_parts(Polynomial::constant(q), None)
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn ring(&self) -> Option<&Arc<RelationIdeal>> {
        self.ring.as_ref()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.poly.as_constant()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(<Rational as One>::one()), |acc, _| acc * self.clone())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_parts(self.poly.scale(q), self.ring.clone())
    }

    /// Divides by `d`, which must be a rational multiple of a monomial in
    /// inverted symbols.
    pub fn div_unit(&self, d: &RingElem) -> Result<Self, RingError> {
        let ring = join(&self.ring, &d.ring);
        let names: Vec<String> = ring
            .as_ref()
            .map(|r| r.variables.clone())
            .unwrap_or_default();
        let not_unit = || RingError::NotAUnit(d.poly.render(&names));
        if d.poly.len() != 1 {
            return Err(not_unit());
        }
        let (m, c) = d.poly.leading_term().ok_or_else(not_unit)?;
        for (v, _) in m.exponents() {
            if !ring.as_ref().is_some_and(|r| r.is_inverted(v)) {
                return Err(not_unit());
            }
        }
        let inv = Polynomial::term(<Rational as One>::one() / c, m.inverse());
        let prod = &self.poly * &inv;
        let poly = match &ring {
            Some(r) => r.normalize(&prod)?,
            None => prod,
        };
        Ok(Self::from_parts(poly, ring))
    }

    pub fn render(&self) -> String {
        match &self.ring {
            Some(r) => self.poly.render(&r.variables),
            None => self.poly.render(&[]),
        }
    }

    /// The rendering, cut to the leading `max_terms` terms for long elements.
    pub fn render_brief(&self, max_terms: usize) -> String {
        let n = self.poly.len();
        if n <= max_terms {
            return self.render();
        }
        let head = self
            .poly
            .terms()
            .rev()
            .take(max_terms)
            .fold(Polynomial::zero(), |acc, (m, c)| &acc + &Polynomial::term(c.clone(), m.clone()));
        let names = self.ring.as_ref().map_or(&[][..], |r| &r.variables[..]);
        format!("{} + … ({n} terms)", head.render(names))
    }

    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        self.poly.eval_f64(values)
    }
}

fn join(
    a: &Option<Arc<RelationIdeal>>,
    b: &Option<Arc<RelationIdeal>>,
) -> Option<Arc<RelationIdeal>> {
    match (a, b) {
        (Some(x), Some(y)) => {
            assert!(
                Arc::ptr_eq(x, y) || x == y,
                "mixing elements of rings `{}` and `{}`",
                x.name,
                y.name
            );
            Some(x.clone())
        }
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        let ring = join(&self.ring, &rhs.ring);
        RingElem::from_parts(&self.poly + &rhs.poly, ring)
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, rhs: RingElem) -> RingElem {
        let ring = join(&self.ring, &rhs.ring);
        RingElem::from_parts(&self.poly - &rhs.poly, ring)
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, rhs: RingElem) -> RingElem {
        let ring = join(&self.ring, &rhs.ring);
        let prod = &self.poly * &rhs.poly;
        let poly = match &ring {
            // Normal forms are closed under addition but not multiplication.
            Some(r) if !r.rules.is_empty() && !self.poly.is_empty() && !rhs.poly.is_empty() => r
                .reduce(&prod, ReductionStrategy::LargestFirst)
                .unwrap_or_else(|e| panic!("ring `{}`: {e}", r.name)),
            _ => prod,
        };
        RingElem::from_parts(poly, ring)
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::from_parts(-&self.poly, self.ring)
    }
}

impl Scalar for RingElem {
    fn from_rational(q: &Rational) -> Self {
        RingElem::constant(q.clone())
    }

    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn to_f64(&self) -> Option<f64> {
        self.poly.as_constant().map(|c| rational_to_f64(&c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};

    fn circle() -> Arc<RelationIdeal> {
        let b = RelationIdeal::builder("circle").variable("c").inverted_variable("s");
        let c = b.symbol("c");
        let s = b.symbol("s");
        let rel = &(&(&c * &c) + &(&s * &s)) - &Polynomial::constant(int(1));
        b.relation(rel).build().unwrap()
    }

    #[test]
    fn circle_relation_reduces_to_zero() {
        let r = circle();
        let c = r.symbol("c").unwrap();
        let s = r.symbol("s").unwrap();
        let e = c.clone() * c + s.clone() * s - RingElem::constant(int(1));
        assert!(Scalar::is_zero(&e));
    }

    #[test]
    fn idempotent() {
        let r = circle();
        let c = r.symbol("c").unwrap();
        let x = c.pow(5);
        assert_eq!(r.normalize(x.poly()).unwrap(), *x.poly());
    }

    #[test]
    fn division_by_plain_symbol_is_rejected() {
        let r = circle();
        assert_eq!(
            r.inverse_symbol("c").unwrap_err(),
            RingError::DivisionByNonInvertedSymbol("c".into())
        );
        let bad = Polynomial::term(int(1), Monomial::power(0, -1));
        assert!(matches!(
            r.normalize(&bad),
            Err(RingError::DivisionByNonInvertedSymbol(_))
        ));
        let s_inv = r.inverse_symbol("s").unwrap();
        let s = r.symbol("s").unwrap();
        assert_eq!(s_inv * s, RingElem::constant(int(1)));
    }

    #[test]
    fn unknown_variable_is_rejected() {
        let r = circle();
        assert!(matches!(
            r.normalize(&Polynomial::var(7)),
            Err(RingError::UnknownVariable(7, _))
        ));
    }

    #[test]
    fn non_confluent_rules_are_rejected() {
        // x² = y and x² = 0 force y ∈ ideal but y is irreducible.
        let b = RelationIdeal::builder("bad").variables(["x", "y"]);
        let x = b.symbol("x");
        let y = b.symbol("y");
        let r1 = &(&x * &x) - &y;
        let r2 = &(&x * &x) * &x;
        let err = b.relation(r1).relation(r2).build().unwrap_err();
        // x³ → x·y then the overlap leaves x·y.
        assert!(matches!(err, RingError::NotConfluent(..)));
    }

    #[test]
    fn div_unit() {
        let r = circle();
        let c = r.symbol("c").unwrap();
        let s = r.symbol("s").unwrap();
        let q = (c.clone() * s.clone()).div_unit(&s.scale(&rat(2, 1))).unwrap();
        assert_eq!(q, c.scale(&rat(1, 2)));
        assert!(matches!(s.div_unit(&c), Err(RingError::NotAUnit(_))));
    }
}
