use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge operands: scale down both sides before dividing.
            let bits = q.numer().bits().max(q.denom().bits()) as i64 - 900;
            let shift = bits.max(0) as usize;
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Exact square root, if `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// Renders `q` as `n` or `n/d`, with a typographic minus sign.
pub fn format_rational(q: &Rational) -> String {
    let sign = if q.is_negative() { "\u{2212}" } else { "" };
    let n = q.numer().abs();
    if q.denom().is_one() {
        format!("{sign}{n}")
    } else {
        format!("{sign}{n}/{}", q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let q = rat(6, -8);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(4));
        assert_eq!(format_rational(&q), "\u{2212}3/4");
        assert_eq!(format_rational(&int(12)), "12");
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&rat(1, 4)), Some(rat(1, 2)));
        assert_eq!(rational_sqrt(&rat(1, 2)), None);
        assert_eq!(rational_sqrt(&rat(-1, 4)), None);
    }

    #[test]
    fn conversion_of_large_values() {
        let big = Rational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399) * 4);
        assert!((rational_to_f64(&big) - 2.5).abs() < 1e-12);
    }
}
