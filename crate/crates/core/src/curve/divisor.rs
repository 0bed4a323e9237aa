//! Divisors on the projective line with integer or rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::place::Place;
use crate::algebra::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

/// Finitely supported map from places to coefficients; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Divisor<C = i64> {
    map: BTreeMap<Place, C>,
}

/// Divisor with rational coefficients, used for twists.
pub type GeneralizedDivisor = Divisor<Rational>;

pub trait Coefficient: Clone + Zero + PartialOrd + Signed + fmt::Display + Neg<Output = Self> {
    fn parse(s: &str) -> Option<Self>;
}

impl Coefficient for i64 {
    fn parse(s: &str) -> Option<i64> {
        s.trim().parse().ok()
    }
}

impl Coefficient for Rational {
    fn parse(s: &str) -> Option<Rational> {
        parse_rational(s)
    }
}

impl<C: Coefficient> Divisor<C> {
    pub fn new() -> Self {
        Divisor { map: BTreeMap::new() }
    }

    pub fn single(place: Place, c: C) -> Self {
        let mut d = Self::new();
        d.add_at(place, c);
        d
    }

    pub fn add_at(&mut self, place: Place, c: C) {
        let cur = self.map.remove(&place).unwrap_or_else(C::zero);
        let next = cur + c;
        if !next.is_zero() {
            self.map.insert(place, next);
        }
    }

    /// Coefficient at `place` (zero off the support).
    pub fn get(&self, place: &Place) -> C {
        self.map.get(place).cloned().unwrap_or_else(C::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.map.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &C)> {
        self.map.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.map.values().all(|c| !c.is_negative())
    }

    /// Places with negative coefficient.
    pub fn negative_part(&self) -> Vec<Place> {
        self.map.iter().filter(|(_, c)| c.is_negative()).map(|(p, _)| p.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> =
            self.map.iter().map(|(p, c)| json!({"place": p.to_string(), "coefficient": c.to_string()})).collect();
        Value::Array(entries)
    }

    /// Parses `3*inf + 1*(0) - 1/2*(z^2 + 1)`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Self::new();
        let src = s.trim();
        if src.is_empty() || src == "0" {
            return Ok(out);
        }
        // split on top-level + and -
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut neg = false;
        for ch in src.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if !cur.trim().is_empty() {
                        terms.push((neg, std::mem::take(&mut cur)));
                    }
                    neg = ch == '-';
                }
                _ => cur.push(ch),
            }
        }
        if !cur.trim().is_empty() {
            terms.push((neg, cur));
        }
        for (neg, term) in terms {
            let term = term.trim();
            let (coef, place) = match term.find('*') {
                Some(i) if !term[..i].contains('(') => (&term[..i], &term[i + 1..]),
                _ => ("1", term),
            };
            let c = C::parse(coef).ok_or_else(|| Error::InvalidInput(format!("bad divisor coefficient '{coef}'")))?;
            let p = Place::parse(place)?;
            out.add_at(p, if neg { -c } else { c });
        }
        Ok(out)
    }
}

impl Divisor<i64> {
    /// Degree `sum n_P deg(P)`.
    pub fn degree(&self) -> i64 {
        self.map.iter().map(|(p, c)| c * p.degree()).sum()
    }

    pub fn to_generalized(&self) -> GeneralizedDivisor {
        let mut out = GeneralizedDivisor::new();
        for (p, c) in &self.map {
            out.add_at(p.clone(), Rational::from_integer((*c).into()));
        }
        out
    }
}

impl<C: Coefficient> Add for &Divisor<C> {
    type Output = Divisor<C>;
    fn add(self, rhs: &Divisor<C>) -> Divisor<C> {
        let mut out = self.clone();
        for (p, c) in &rhs.map {
            out.add_at(p.clone(), c.clone());
        }
        out
    }
}

impl<C: Coefficient> fmt::Display for Divisor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.map.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (p, c) in &self.map {
            let place = match p {
                Place::Infinity => "inf".to_string(),
                _ => format!("({p})"),
            };
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&format!("{mag}*{place}"));
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::frac;

    #[test]
    fn text_roundtrip() {
        let d: Divisor = Divisor::parse("3*inf + 1*(0) + 2*(z^2+1)").unwrap();
        assert_eq!(d.to_string(), "3*inf + 1*(0) + 2*(z^2 + 1)");
        assert_eq!(d.degree(), 8);
        assert_eq!(Divisor::<i64>::parse(&d.to_string()).unwrap(), d);
        let g = GeneralizedDivisor::parse("1/2*(0) - inf").unwrap();
        assert_eq!(g.get(&Place::zero()), frac(1, 2));
        assert_eq!(g.to_string(), "-1*inf + 1/2*(0)");
        let n: Divisor = Divisor::parse("-1*(-2) + 4*inf").unwrap();
        assert_eq!(n.get(&Place::Finite(frac(-2, 1))), -1);
        assert!(!n.is_effective());
    }
}
