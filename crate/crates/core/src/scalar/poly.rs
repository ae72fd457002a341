//! Sparse multivariate Laurent polynomials over the rationals.
//!
//! Variables are identified by index; a lower index is a larger variable in
//! the graded lexicographic order, so the declaration order of a ring's
//! variables fixes the canonical term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, rational_to_f64, Rational};

/// A power product `x_i^{e_i}`; exponents may be negative for inverted
/// symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    degree: i64,
    exps: Vec<(u16, i32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(index: usize) -> Self {
        Self::power(index, 1)
    }

    pub fn power(index: usize, exp: i32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Self {
            degree: exp as i64,
            exps: vec![(index as u16, exp)],
        }
    }

    pub fn from_exponents(pairs: &[(usize, i32)]) -> Self {
        pairs
            .iter()
            .fold(Self::one(), |m, &(i, e)| m.mul(&Self::power(i, e)))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn exponent(&self, index: usize) -> i32 {
        self.exps
            .iter()
            .find(|(v, _)| *v as usize == index)
            .map_or(0, |(_, e)| *e)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.exps.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn max_variable(&self) -> Option<usize> {
        self.exps.last().map(|(v, _)| *v as usize)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            let a = self.exps.get(i);
            let b = other.exps.get(j);
            match (a, b) {
                (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                    if ea + eb != 0 {
                        exps.push((va, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(va, ea)), Some(&(vb, _))) if va < vb => {
                    exps.push((va, ea));
                    i += 1;
                }
                (Some(&(va, ea)), None) => {
                    exps.push((va, ea));
                    i += 1;
                }
                (_, Some(&(vb, eb))) => {
                    exps.push((vb, eb));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self {
            degree: self.degree + other.degree,
            exps,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            degree: -self.degree,
            exps: self.exps.iter().map(|&(v, e)| (v, -e)).collect(),
        }
    }

    /// True when every positive exponent of `self` is at most the
    /// corresponding exponent of `other`. Only meaningful for monomials
    /// without negative exponents.
    pub fn divides(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .all(|&(v, e)| other.exponent(v as usize) >= e)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut pairs: Vec<(usize, i32)> = self.exponents().collect();
        for (v, e) in other.exponents() {
            match pairs.iter_mut().find(|(w, _)| *w == v) {
                Some(p) => p.1 = p.1.max(e),
                None => pairs.push((v, e)),
            }
        }
        Self::from_exponents(&pairs)
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .all(|&(v, _)| other.exponent(v as usize) == 0)
    }

    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        self.exps
            .iter()
            .map(|&(v, e)| values[v as usize].powi(e))
            .product()
    }

    pub fn render(&self, names: &[String]) -> String {
        self.exps
            .iter()
            .map(|&(v, e)| {
                let name = names
                    .get(v as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("x{v}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}{}", superscript(e))
                }
            })
            .collect::<Vec<_>>()
            .join("\u{b7}")
    }
}

fn superscript(e: i32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = String::new();
    if e < 0 {
        out.push('⁻');
    }
    for ch in e.unsigned_abs().to_string().chars() {
        out.push(DIGITS[ch as usize - '0' as usize]);
    }
    out
}

impl Ord for Monomial {
    /// Graded lexicographic order; variable 0 is the largest variable.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.exps.get(i), other.exps.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                    (Some(&(va, ea)), Some(&(vb, _))) if va < vb => return ea.cmp(&0),
                    (Some(&(_, ea)), None) => return ea.cmp(&0),
                    (_, Some(&(_, eb))) => return 0.cmp(&eb),
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite sum of rational multiples of monomials, stored in increasing
/// graded lexicographic order with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(index: usize) -> Self {
        Self::term(Rational::one(), Monomial::var(index))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no non-trivial monomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn max_variable(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_variable).max()
    }

    pub fn max_degree(&self) -> i64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, c: Rational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Rational)> {
        self.terms.pop_last()
    }

    pub(crate) fn remove_term(&mut self, m: &Monomial) -> Option<Rational> {
        self.terms.remove(m)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(n, k)| (n.mul(m), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| rational_to_f64(c) * m.eval_f64(values))
            .sum()
    }

    /// Human-readable rendering, largest term first, using `·` for products
    /// and `−` for subtraction.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    out.push('\u{2212}');
                }
            } else {
                out.push_str(if negative { " \u{2212} " } else { " + " });
            }
            let mag = c.abs();
            if m.is_one() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&m.render(names));
            } else {
                out.push_str(&format_rational(&mag));
                out.push('\u{b7}');
                out.push_str(&m.render(names));
            }
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (mut acc, other) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            acc.add_term(c.clone(), m.clone());
        }
        acc
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut acc = self.clone();
        for (m, c) in &rhs.terms {
            acc.add_term(-c, m.clone());
        }
        acc
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                acc.add_term(ca * cb, ma.mul(mb));
            }
        }
        acc
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}
