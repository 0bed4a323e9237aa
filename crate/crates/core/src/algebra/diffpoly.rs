//! The free differential polynomial ring Q[tau]{w_0, w_1, ...}.
//!
//! Indeterminates are `tau` with `tau' = 1` and the jets `w_s^(n)` with
//! `(w_s^(n))' = w_s^(n+1)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::fmt_term;
use super::rational::{fmt_rational, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Tau,
    /// `w_s^(n)`: symbol index `s`, derivative order `n`.
    Jet(u32, u32),
}

const NAMES: [&str; 6] = ["f", "g", "h", "u", "v", "y"];

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::Tau => f.write_str("tau"),
            Var::Jet(s, n) => {
                let name = NAMES.get(s as usize).map(|n| n.to_string()).unwrap_or_else(|| format!("w{s}"));
                match n {
                    0..=3 => write!(f, "{name}{}", "'".repeat(n as usize)),
                    _ => write!(f, "{name}^({n})"),
                }
            }
        }
    }
}

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(Var, u32)>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Rational>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_term(Vec::new(), c)
    }

    pub fn from_term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::from_term(vec![(v, 1)], Rational::one())
    }

    pub fn tau() -> Self {
        Self::var(Var::Tau)
    }

    /// `w_s^(n)`.
    pub fn jet(s: u32, n: u32) -> Self {
        Self::var(Var::Jet(s, n))
    }

    pub fn tau_pow(k: u32) -> Self {
        if k == 0 {
            Self::one()
        } else {
            Self::from_term(vec![(Var::Tau, k)], Rational::one())
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn contains_tau(&self) -> bool {
        self.terms.keys().any(|m| m.iter().any(|(v, _)| *v == Var::Tau))
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    /// The derivation: Leibniz extension of `tau' = 1`, `w^(n) -> w^(n+1)`.
    pub fn derive(&self) -> Self {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            for (k, &(v, e)) in m.iter().enumerate() {
                let mut rest = m.clone();
                if e == 1 {
                    rest.remove(k);
                } else {
                    rest[k].1 -= 1;
                }
                let coeff = c * int(e as i64);
                match v {
                    Var::Tau => out.add_term(rest, coeff),
                    Var::Jet(s, n) => out.add_term(mono_mul(&rest, &vec![(Var::Jet(s, n + 1), 1)]), coeff),
                }
            }
        }
        out
    }

    pub fn derive_n(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.derive())
    }

    /// Smallest `k` with `self^(k) = 0`, if the element is a polynomial in `tau` alone.
    pub fn nilpotency(&self) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            match m.as_slice() {
                [] => deg = deg.max(Some(0)),
                [(Var::Tau, e)] => deg = deg.max(Some(*e)),
                _ => return None,
            }
        }
        Some(deg.map_or(0, |d| d + 1))
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let mono = m
                .iter()
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect::<Vec<_>>()
                .join("*");
            fmt_term(&mut out, &fmt_rational(c), &mono);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leibniz_examples() {
        let w = DiffPoly::jet(0, 0);
        let w1 = DiffPoly::jet(0, 1);
        let p = w.mul(&w1);
        let expect = w1.mul(&w1).add(&w.mul(&DiffPoly::jet(0, 2)));
        assert_eq!(p.derive(), expect);
        assert_eq!(DiffPoly::tau_pow(2).derive(), DiffPoly::tau().scale(&int(2)));
        assert!(DiffPoly::constant(int(5)).derive().is_zero());
    }

    #[test]
    fn display_and_nilpotency() {
        let p = DiffPoly::tau().mul(&DiffPoly::jet(0, 1)).scale(&int(2)).sub(&DiffPoly::jet(1, 0));
        assert_eq!(p.to_string(), "2*tau*f' - g");
        assert_eq!(DiffPoly::tau_pow(2).nilpotency(), Some(3));
        assert_eq!(DiffPoly::one().nilpotency(), Some(1));
        assert_eq!(DiffPoly::zero().nilpotency(), Some(0));
        assert_eq!(p.nilpotency(), None);
    }
}
