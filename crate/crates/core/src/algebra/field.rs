//! Coefficient fields for local expansions: Q itself and residue fields
//! Q[t]/(p) of non-rational places.

use std::fmt::Debug;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::factor::is_irreducible;
use super::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;

use super::rational::{common_denominator, fmt_rational, Rational};
use crate::error::{Error, Result};

/// `(a, b, shift, c)`: the product `c * a * b`, shifted by `shift` places.
pub type ConvTerm<'a, E> = (&'a [E], &'a [E], usize, &'a Rational);

/// A field given by a handle value; elements carry no reference to it.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    /// True if `a` is in the prime field, so it prints without parentheses.
    fn is_rational(&self, a: &Self::Elem) -> bool;

    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.mul(a, &self.from_rational(q))
    }

    /// `sum c * a * b` over `(a, b, shift, c)`, each product placed from
    /// index `shift`, truncated to `n` coefficients.
    fn dot_convolve(&self, items: &[ConvTerm<'_, Self::Elem>], n: usize) -> Vec<Self::Elem> {
        let mut out = vec![self.zero(); n];
        for (a, b, shift, c) in items {
            if *shift >= n {
                continue;
            }
            let q = self.from_rational(c);
            for (k, v) in self.convolve(a, b, n - shift).into_iter().enumerate() {
                out[shift + k] = self.add(&out[shift + k], &self.mul(&v, &q));
            }
        }
        out
    }

    /// The first `n` coefficients of the product of two coefficient lists.
    fn convolve(&self, a: &[Self::Elem], b: &[Self::Elem], n: usize) -> Vec<Self::Elem> {
        let mut out = vec![self.zero(); n];
        for (i, x) in a.iter().enumerate().take(n) {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Q;

impl Field for Q {
    type Elem = Rational;

    fn dot_convolve(&self, items: &[ConvTerm<'_, Rational>], n: usize) -> Vec<Rational> {
        let ints = |v: &[Rational]| -> (Vec<BigInt>, BigInt) {
            let d = common_denominator(v);
            (v.iter().map(|c| (c.numer() * &d) / c.denom()).collect(), d)
        };
        let parts: Vec<_> = items
            .iter()
            .filter(|(_, _, shift, c)| *shift < n && !c.is_zero())
            .map(|(a, b, shift, c)| {
                let ((x, da), (y, db)) = (ints(a), ints(b));
                (x, y, *shift, c.numer().clone(), da * db * c.denom())
            })
            .collect();
        let den = parts.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.4));
        let mut out = vec![BigInt::zero(); n];
        for (x, y, shift, cn, d) in &parts {
            let f = cn * (&den / d);
            let mut conv = vec![BigInt::zero(); n - shift];
            for (i, p) in x.iter().enumerate().take(n - shift) {
                if p.is_zero() {
                    continue;
                }
                for (j, q) in y.iter().enumerate().take(n - shift - i) {
                    conv[i + j] += p * q;
                }
            }
            for (k, v) in conv.into_iter().enumerate() {
                if !v.is_zero() {
                    out[shift + k] += v * &f;
                }
            }
        }
        out.into_iter().map(|c| Rational::new(c, den.clone())).collect()
    }

    /// Over common denominators, so only the outputs are reduced.
    fn convolve(&self, a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
        let (da, db) = (common_denominator(a), common_denominator(b));
        let ints =
            |v: &[Rational], d: &BigInt| -> Vec<BigInt> { v.iter().map(|c| (c.numer() * d) / c.denom()).collect() };
        let (x, y) = (ints(a, &da), ints(b, &db));
        let mut out = vec![BigInt::zero(); n];
        for (i, p) in x.iter().enumerate().take(n) {
            if p.is_zero() {
                continue;
            }
            for (j, q) in y.iter().enumerate().take(n - i) {
                out[i + j] += p * q;
            }
        }
        let den = da * db;
        out.into_iter().map(|c| Rational::new(c, den.clone())).collect()
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn fmt_elem(&self, a: &Rational) -> String {
        fmt_rational(a)
    }
    fn is_rational(&self, _: &Rational) -> bool {
        true
    }
}

/// `Q[t]/(p)` for a monic irreducible `p`; elements are reduced polynomials in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    modulus: Arc<Poly>,
}

impl ExtField {
    /// Verifies irreducibility; the modulus is made monic.
    pub fn new(p: &Poly) -> Result<Self> {
        if p.deg_i64() < 1 || !is_irreducible(p) {
            return Err(Error::Reducible(p.to_string()));
        }
        Ok(ExtField { modulus: Arc::new(p.monic()) })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    /// The class of `t`.
    pub fn gen(&self) -> Poly {
        self.reduce(&Poly::z())
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus)
    }

    /// Trace of multiplication by `a` as a Q-linear map.
    pub fn trace(&self, a: &Poly) -> Rational {
        (0..self.degree()).map(|j| self.mul(a, &Poly::monomial(Rational::one(), j)).coeff(j)).sum()
    }

    /// Monic minimal polynomial of `a` over Q.
    pub fn min_poly(&self, a: &Poly) -> Poly {
        let n = self.degree();
        let mut powers = vec![self.one()];
        loop {
            let d = powers.len();
            let next = self.mul(powers.last().unwrap(), a);
            // next = sum c_k powers[k] ?
            let m: Vec<Vec<Rational>> = (0..n).map(|r| powers.iter().map(|p| p.coeff(r)).collect()).collect();
            let b: Vec<Rational> = (0..n).map(|r| next.coeff(r)).collect();
            match super::linalg::solve(&m, &b) {
                super::linalg::Solution::Unique(c) => {
                    let mut coeffs: Vec<Rational> = c.into_iter().map(|x| -x).collect();
                    coeffs.push(Rational::one());
                    return Poly::from_coeffs(coeffs);
                }
                _ if d > n => unreachable!("powers of a field element are dependent by degree n"),
                _ => powers.push(next),
            }
        }
    }
}

impl Field for ExtField {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn from_rational(&self, q: &Rational) -> Poly {
        Poly::constant(q.clone())
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a - b
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_constant() || b.is_constant() {
            return a * b;
        }
        self.reduce(&(a * b))
    }
    fn convolve(&self, a: &[Poly], b: &[Poly], n: usize) -> Vec<Poly> {
        self.dot_convolve(&[(a, b, 0, &Rational::one())], n)
    }

    /// Integer products over one common denominator, reduced modulo the
    /// minimal polynomial once per output.
    fn dot_convolve(&self, items: &[ConvTerm<'_, Poly>], n: usize) -> Vec<Poly> {
        let ints = |v: &[Poly]| -> (Vec<Vec<BigInt>>, BigInt) {
            let d = common_denominator(v.iter().flat_map(|p| p.coeffs()));
            let rows = v.iter().map(|p| p.coeffs().iter().map(|c| (c.numer() * &d) / c.denom()).collect()).collect();
            (rows, d)
        };
        let parts: Vec<_> = items
            .iter()
            .filter(|(_, _, shift, c)| *shift < n && !c.is_zero())
            .map(|(a, b, shift, c)| {
                let ((x, da), (y, db)) = (ints(a), ints(b));
                (x, y, *shift, c.numer().clone(), da * db * c.denom())
            })
            .collect();
        let den = parts.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.4));
        let mut out: Vec<Vec<BigInt>> = vec![Vec::new(); n];
        for (x, y, shift, cn, d) in &parts {
            let f = cn * (&den / d);
            for (i, p) in x.iter().enumerate() {
                if p.is_empty() {
                    continue;
                }
                for (j, q) in y.iter().enumerate().take((n - shift).saturating_sub(i)) {
                    if q.is_empty() {
                        continue;
                    }
                    let acc = &mut out[shift + i + j];
                    if acc.len() < p.len() + q.len() - 1 {
                        acc.resize(p.len() + q.len() - 1, BigInt::zero());
                    }
                    for (s, u) in p.iter().enumerate() {
                        if u.is_zero() {
                            continue;
                        }
                        let uf = u * &f;
                        for (t, v) in q.iter().enumerate() {
                            acc[s + t] += &uf * v;
                        }
                    }
                }
            }
        }
        out.into_iter()
            .map(|acc| {
                let p = Poly::from_coeffs(acc.into_iter().map(|c| Rational::new(c, den.clone())).collect());
                if p.deg_i64() >= self.modulus.deg_i64() {
                    self.reduce(&p)
                } else {
                    p
                }
            })
            .collect()
    }
    fn neg(&self, a: &Poly) -> Poly {
        -a
    }
    fn inv(&self, a: &Poly) -> Option<Poly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.modulus);
        debug_assert!(g.is_one());
        Some(self.reduce(&s))
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn fmt_elem(&self, a: &Poly) -> String {
        let s = a.fmt_var("t");
        if a.is_constant() {
            s
        } else {
            format!("({s})")
        }
    }
    fn is_rational(&self, a: &Poly) -> bool {
        a.is_constant()
    }
    fn scale(&self, a: &Poly, q: &Rational) -> Poly {
        a.scale(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    #[test]
    fn gaussian_rationals() {
        let k = ExtField::new(&Poly::from_ints(&[1, 0, 1])).unwrap();
        let t = k.gen();
        assert_eq!(k.mul(&t, &t), Poly::constant(int(-1)));
        let a = Poly::from_ints(&[1, 1]); // 1 + t
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), Poly::one());
        assert_eq!(inv, Poly::from_coeffs(vec![frac(1, 2), frac(-1, 2)]));
        assert_eq!(k.trace(&t), int(0));
        assert_eq!(k.trace(&Poly::one()), int(2));
        assert!(ExtField::new(&Poly::from_ints(&[-1, 0, 1])).is_err());
    }
}
