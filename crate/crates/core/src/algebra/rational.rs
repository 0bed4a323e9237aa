//! Exact rationals and the generalized binomial symbol.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: `-3/4`, `5`, `0`.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses `-3/4`, `5`, `+2`. Whitespace around the slash is not accepted.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim_start_matches('+').parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() || den.is_negative() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `i (i-1) ... (i-m+1) / m!`, the binomial symbol for an arbitrary integer top entry.
///
/// The bottom entry is unsigned, so negative `m` cannot reach this function.
pub fn gen_binomial(i: i64, m: u32) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..m as i64 {
        num *= BigInt::from(i - k);
        den *= BigInt::from(k + 1);
    }
    Rational::new(num, den)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// True if `q` is an integer that fits in an `i64`.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn falling_factorial_oracle(i: i64, m: u32) -> Rational {
        // independent route: product of (i - k)/(k + 1) as rationals
        (0..m as i64).fold(int(1), |acc, k| acc * frac(i - k, k + 1))
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(gen_binomial(3, 2), int(3));
        assert_eq!(gen_binomial(-1, 1), int(-1));
        assert_eq!(gen_binomial(-2, 3), int(-4));
        assert_eq!(gen_binomial(7, 0), int(1));
        assert_eq!(gen_binomial(2, 5), int(0));
    }

    #[test]
    fn binomial_matches_oracle() {
        for i in -8..9 {
            for m in 0..9 {
                assert_eq!(gen_binomial(i, m), falling_factorial_oracle(i, m), "({i}, {m})");
            }
        }
    }

    #[test]
    fn text_roundtrip() {
        for s in ["-3/4", "5", "0", "12/7"] {
            assert_eq!(fmt_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("6/4"), Some(frac(3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
