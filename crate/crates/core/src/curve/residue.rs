//! Residues and divisors of rational differentials.

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use super::differential::RationalDifferential;
use super::place::{AnyChart, Place};
use crate::algebra::factor::factor;
use crate::algebra::field::ExtField;
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};

/// An element of the residue field of a place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidueValue {
    Rational(Rational),
    Ext { field: ExtField, value: Poly },
}

impl ResidueValue {
    /// Trace down to Q.
    pub fn trace(&self) -> Rational {
        match self {
            ResidueValue::Rational(q) => q.clone(),
            ResidueValue::Ext { field, value } => field.trace(value),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ResidueValue::Rational(q) => q.is_zero(),
            ResidueValue::Ext { value, .. } => value.is_zero(),
        }
    }
}

impl fmt::Display for ResidueValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueValue::Rational(q) => write!(f, "{q}"),
            ResidueValue::Ext { value, .. } => f.write_str(&value.fmt_var("t")),
        }
    }
}

/// Finite places where `p` vanishes, with multiplicities.
pub fn factor_places(p: &Poly) -> Vec<(Place, u32)> {
    factor(p).1.into_iter().map(|(f, m)| (Place::from_factor(&f), m)).collect()
}

fn check_weight(omega: &RationalDifferential) -> Result<()> {
    if omega.weight != 1 {
        return Err(Error::InvalidInput(format!("expected a 1-form, got weight {}", omega.weight)));
    }
    Ok(())
}

/// Coefficient of `dz_P / z_P` in the local expansion of `omega` at `place`.
pub fn residue(omega: &RationalDifferential, place: &Place) -> Result<ResidueValue> {
    check_weight(omega)?;
    let f = &omega.f;
    Ok(match place.chart() {
        AnyChart::Rat(c) => {
            let q = if c.is_infinity() {
                // dz = -w^-2 dw
                -c.expand(f, 2).coeff(1).unwrap()
            } else {
                c.expand(f, 0).coeff(-1).unwrap()
            };
            ResidueValue::Rational(q)
        }
        AnyChart::Ext(c) => {
            let v = c.expand(f, 0).coeff(-1).unwrap();
            ResidueValue::Ext { field: c.field().clone(), value: v }
        }
    })
}

/// Places where `f dz` may have a pole.
pub fn pole_places(f: &RatFun) -> Vec<Place> {
    let mut out: Vec<Place> = factor_places(f.den()).into_iter().map(|(p, _)| p).collect();
    if f.is_zero() || f.ord_inf() < 2 {
        out.push(Place::Infinity);
    }
    out.sort();
    out
}

/// Sum of all residues, traced to Q.
pub fn residue_sum(omega: &RationalDifferential) -> Result<Rational> {
    check_weight(omega)?;
    if omega.is_zero() {
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    for p in pole_places(&omega.f) {
        total += residue(omega, &p)?.trace();
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialDivisor {
    /// Orders at every zero and pole, always including infinity.
    pub orders: Vec<(Place, i64)>,
    pub degree: i64,
}

impl DifferentialDivisor {
    pub fn order_at(&self, place: &Place) -> i64 {
        self.orders.iter().find(|(p, _)| p == place).map_or(0, |(_, n)| *n)
    }

    pub fn to_json(&self) -> Value {
        let orders: Vec<Value> = self.orders.iter().map(|(p, n)| json!({"place": p.to_string(), "order": n})).collect();
        json!({"orders": orders, "degree": self.degree})
    }
}

impl fmt::Display for DifferentialDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|(p, n)| format!("{p}: {n}")).collect();
        write!(f, "{{{}}}, degree {}", parts.join(", "), self.degree)
    }
}

/// Divisor of a nonzero rational 1-form.
pub fn divisor_of_differential(omega: &RationalDifferential) -> Result<DifferentialDivisor> {
    check_weight(omega)?;
    if omega.is_zero() {
        return Err(Error::InvalidInput("zero differential has no divisor".into()));
    }
    let f = &omega.f;
    let mut orders: Vec<(Place, i64)> = Vec::new();
    for (p, m) in factor_places(f.num()) {
        orders.push((p, m as i64));
    }
    for (p, m) in factor_places(f.den()) {
        orders.push((p, -(m as i64)));
    }
    orders.push((Place::Infinity, f.ord_inf() - 2));
    orders.sort();
    let degree = orders.iter().map(|(p, n)| n * p.degree()).sum();
    Ok(DifferentialDivisor { orders, degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn form(f: RatFun) -> RationalDifferential {
        RationalDifferential::new(f, 1)
    }

    #[test]
    fn logarithmic_form() {
        let w = form(RatFun::z_pow(-1));
        assert_eq!(residue(&w, &Place::zero()).unwrap(), ResidueValue::Rational(int(1)));
        assert_eq!(residue(&w, &Place::Infinity).unwrap(), ResidueValue::Rational(int(-1)));
        assert_eq!(residue_sum(&w).unwrap(), int(0));
        assert!(residue(&RationalDifferential::dz(), &Place::Infinity).unwrap().is_zero());
    }

    #[test]
    fn quadratic_place() {
        let q = Poly::from_ints(&[1, 0, 1]);
        let w = form(RatFun::new(Poly::z(), q.clone()));
        let r = residue(&w, &Place::Irreducible(q.clone())).unwrap();
        // z/(z^2+1) has residue 1/2 at each of the two conjugate points
        assert_eq!(r.trace(), int(1));
        assert_eq!(residue_sum(&w).unwrap(), int(0));
        let d = divisor_of_differential(&form(RatFun::new(Poly::one(), q.clone()))).unwrap();
        assert_eq!(d.orders, vec![(Place::Infinity, 0), (Place::Irreducible(q), -1)]);
        assert_eq!(d.degree, -2);
    }

    #[test]
    fn divisors_of_simple_forms() {
        let d = divisor_of_differential(&RationalDifferential::dz()).unwrap();
        assert_eq!(d.orders, vec![(Place::Infinity, -2)]);
        let d = divisor_of_differential(&form(RatFun::z())).unwrap();
        assert_eq!(d.orders, vec![(Place::Infinity, -3), (Place::zero(), 1)]);
        assert_eq!(d.degree, -2);
    }
}
