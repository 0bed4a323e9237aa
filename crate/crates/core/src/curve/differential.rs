//! Rational `i`-differentials `f(z) (dz)^i`.

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::ratfun::RatFun;
use crate::algebra::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalDifferential {
    pub f: RatFun,
    pub weight: u32,
}

impl RationalDifferential {
    pub fn new(f: RatFun, weight: u32) -> Self {
        RationalDifferential { f, weight }
    }

    /// `dz`.
    pub fn dz() -> Self {
        Self::new(RatFun::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.f * &other.f, self.weight + other.weight)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.f.scale(q), self.weight)
    }

    pub fn to_json(&self) -> Value {
        json!({"f": self.f.to_string(), "weight": self.weight, "text": self.to_string()})
    }
}

/// `z^2 (dz)^3`, `-(dz)^3`, `(z + 1) dz`, `0`.
impl fmt::Display for RationalDifferential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let form = match self.weight {
            0 => String::new(),
            1 => "dz".to_string(),
            i => format!("(dz)^{i}"),
        };
        if self.f.is_zero() {
            return f.write_str("0");
        }
        if form.is_empty() {
            return write!(f, "{}", self.f);
        }
        let body = self.f.to_string();
        if self.f.is_one() {
            f.write_str(&form)
        } else if body == "-1" {
            write!(f, "-{form}")
        } else if body.contains(' ') {
            write!(f, "({body}) {form}")
        } else {
            write!(f, "{body} {form}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;

    #[test]
    fn display() {
        assert_eq!(RationalDifferential::new(RatFun::int(-1), 3).to_string(), "-(dz)^3");
        assert_eq!(RationalDifferential::new(RatFun::z_pow(2), 3).to_string(), "z^2 (dz)^3");
        let f = RatFun::from_poly(Poly::from_ints(&[1, 1]));
        assert_eq!(RationalDifferential::new(f, 1).to_string(), "(z + 1) dz");
    }
}
