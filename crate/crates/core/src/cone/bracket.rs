//! The degree-one Poisson bracket on rational differentials.

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::rational::{int, Rational};
use crate::curve::RationalDifferential;
use crate::error::{Error, Result};

/// `nabla^alpha(omega) = alpha^i d(omega / alpha^i)`, for `alpha = a dz`.
pub fn connection(omega: &RationalDifferential, alpha: &RationalDifferential) -> Result<RationalDifferential> {
    if alpha.weight != 1 || alpha.is_zero() {
        return Err(Error::InvalidInput("alpha must be a nonzero 1-form".into()));
    }
    let ai = alpha.f.pow(omega.weight as i64);
    let quotient = &omega.f / &ai;
    Ok(RationalDifferential::new(&ai * &quotient.derivative(), omega.weight + 1))
}

/// `{omega, omega'}_alpha = i' omega' nabla(omega) - i omega nabla(omega')`.
pub fn poisson_bracket(
    omega: &RationalDifferential,
    other: &RationalDifferential,
    alpha: &RationalDifferential,
) -> Result<RationalDifferential> {
    let (i, j) = (omega.weight, other.weight);
    let a = connection(omega, alpha)?;
    let b = connection(other, alpha)?;
    let f = &(&other.f * &a.f).scale(&int(j as i64)) - &(&omega.f * &b.f).scale(&int(i as i64));
    Ok(RationalDifferential::new(f, i + j + 1))
}

/// Bracket with the reference form `dz`.
pub fn bracket(omega: &RationalDifferential, other: &RationalDifferential) -> RationalDifferential {
    poisson_bracket(omega, other, &RationalDifferential::dz()).expect("dz is a nonzero 1-form")
}

/// `f(z) (dz)^i` in `A_i` for `D = N inf`: `f` a polynomial of degree at most `i(N-2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeElement {
    pub form: RationalDifferential,
    pub n: i64,
}

impl ConeElement {
    pub fn new(f: Poly, weight: u32, n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("N = {n} < 2")));
        }
        let bound = weight as i64 * (n - 2);
        if f.deg_i64() > bound {
            return Err(Error::InvalidInput(format!("degree {} exceeds {bound} in weight {weight}", f.deg_i64())));
        }
        Ok(ConeElement { form: RationalDifferential::new(RatFun::from_poly(f), weight), n })
    }

    /// The generator `omega_a = z^a dz`.
    pub fn generator(a: i64, n: i64) -> Result<Self> {
        if a < 0 || a > n - 2 {
            return Err(Error::InvalidInput(format!("generator index {a} outside 0..={}", n - 2)));
        }
        Self::new(Poly::monomial(int(1), a as usize), 1, n)
    }

    pub fn weight(&self) -> u32 {
        self.form.weight
    }

    pub fn poly(&self) -> &Poly {
        self.form.f.as_poly().expect("cone elements are polynomial")
    }

    pub fn mul(&self, other: &Self) -> Self {
        ConeElement { form: self.form.mul(&other.form), n: self.n }
    }

    /// Bracket in `A`, with its degree bound checked.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let b = bracket(&self.form, &other.form);
        let p = b.f.as_poly().cloned().ok_or_else(|| Error::InvalidInput("bracket left A".into()))?;
        Self::new(p, b.weight, self.n)
    }

    pub fn to_json(&self) -> Value {
        json!({"f": self.form.f.to_string(), "weight": self.form.weight, "N": self.n})
    }
}

impl fmt::Display for ConeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [N={}]", self.form, self.n)
    }
}

/// Dimension `i(N-2) + 1` of `A_i` and its monomial basis.
pub fn dim_and_basis(i: u32, n: i64) -> Result<(usize, Vec<ConeElement>)> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("N = {n} < 2")));
    }
    let top = i as i64 * (n - 2);
    let basis =
        (0..=top).map(|m| ConeElement::new(Poly::monomial(int(1), m as usize), i, n)).collect::<Result<Vec<_>>>()?;
    Ok((basis.len(), basis))
}

/// `{omega_a, omega_b}` written as `scalar * omega_c omega_d omega_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorBracket {
    pub a: i64,
    pub b: i64,
    pub scalar: Rational,
    /// `None` exactly when the bracket vanishes for lack of a decomposition.
    pub decomposition: Option<(i64, i64, i64)>,
}

impl GeneratorBracket {
    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a,
            "b": self.b,
            "scalar": self.scalar.to_string(),
            "decomposition": self.decomposition.map(|(c, d, e)| vec![c, d, e]),
        })
    }
}

/// All `(c, d, e)` in `0..=N-2` with `c + d + e = s`, `c >= d >= e`.
pub fn decompositions(s: i64, n: i64) -> Vec<(i64, i64, i64)> {
    let m = n - 2;
    let mut out = Vec::new();
    for c in (0..=m.min(s)).rev() {
        for d in (0..=c.min(s - c)).rev() {
            let e = s - c - d;
            if (0..=d).contains(&e) {
                out.push((c, d, e));
            }
        }
    }
    out
}

pub fn bracket_in_generators(a: i64, b: i64, n: i64) -> Result<GeneratorBracket> {
    let wa = ConeElement::generator(a, n)?;
    let wb = ConeElement::generator(b, n)?;
    let br = wa.bracket(&wb)?;
    let s = a + b - 1;
    let decomposition = if s < 0 { None } else { decompositions(s, n).into_iter().next() };
    let scalar = match decomposition {
        Some(_) => br.poly().coeff(s as usize),
        None => {
            debug_assert!(br.poly().is_zero());
            int(0)
        }
    };
    Ok(GeneratorBracket { a, b, scalar, decomposition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::frac;

    fn form(f: RatFun, w: u32) -> RationalDifferential {
        RationalDifferential::new(f, w)
    }

    #[test]
    fn generator_brackets() {
        let w0 = form(RatFun::one(), 1);
        let w1 = form(RatFun::z(), 1);
        let b = bracket(&w0, &w1);
        assert_eq!(b.to_string(), "-(dz)^3");
        let alpha = form(RatFun::from_poly(Poly::from_ints(&[1, 0, 1])), 1);
        assert_eq!(poisson_bracket(&w0, &w1, &alpha).unwrap(), b);
        assert!(bracket(&w1, &w1).is_zero());
        let g = bracket_in_generators(0, 2, 4).unwrap();
        assert_eq!((g.scalar.clone(), g.decomposition), (int(-2), Some((1, 0, 0))));
        assert_eq!(bracket_in_generators(0, 0, 4).unwrap().decomposition, None);
        assert_eq!(bracket_in_generators(1, 1, 4).unwrap().scalar, int(0));
    }

    #[test]
    fn alpha_independence_on_mixed_weights() {
        let w = form(RatFun::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[0, 1])), 2);
        let v = form(RatFun::from_poly(Poly::from_coeffs(vec![frac(1, 3), int(0), int(1)])), 3);
        let reference = bracket(&w, &v);
        for alpha in [RatFun::z(), RatFun::z_pow(-1), RatFun::from_poly(Poly::from_ints(&[1, 0, 1]))] {
            assert_eq!(poisson_bracket(&w, &v, &form(alpha, 1)).unwrap(), reference);
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_and_basis(0, 7).unwrap().0, 1);
        assert_eq!(dim_and_basis(1, 6).unwrap().0, 5);
        assert_eq!(dim_and_basis(3, 4).unwrap().0, 7);
        assert!(ConeElement::new(Poly::monomial(int(1), 3), 1, 4).is_err());
    }
}
