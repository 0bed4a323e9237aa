//! Commuting Hamiltonians on tensor powers of the cone algebra.
//!
//! An element of `A^{(x)k}` is a polynomial in `z_1..z_k` whose terms carry
//! per-copy weights, so `c z_1^2 dz_1 (dz_2)^3` is the term with exponents
//! `[2, 0]` and weights `[1, 3]`. Distinct copies Poisson-commute and within
//! copy `m` the bracket is the one-variable bracket in `z_m`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::fmt_term;
use crate::algebra::poly::Poly;
use crate::algebra::rational::{int, Rational};
use crate::error::{Error, Result};

type Key = (Vec<u32>, Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly {
    k: usize,
    terms: BTreeMap<Key, Rational>,
}

impl TensorPoly {
    pub fn zero(k: usize) -> Self {
        TensorPoly { k, terms: BTreeMap::new() }
    }

    pub fn one(k: usize) -> Self {
        Self::term(k, Rational::one(), vec![0; k], vec![0; k])
    }

    pub fn term(k: usize, c: Rational, exps: Vec<u32>, weights: Vec<u32>) -> Self {
        let mut t = Self::zero(k);
        t.add_term((exps, weights), c);
        t
    }

    /// `f(z_m) (dz_m)^weight` in copy `m`.
    pub fn embed(k: usize, m: usize, f: &Poly, weight: u32) -> Self {
        let mut out = Self::zero(k);
        for (e, c) in f.coeffs().iter().enumerate() {
            let mut exps = vec![0; k];
            exps[m] = e as u32;
            let mut ws = vec![0; k];
            ws[m] = weight;
            out.add_term((exps, ws), c.clone());
        }
        out
    }

    fn add_term(&mut self, key: Key, c: Rational) {
        if c.is_zero() {
            return;
        }
        let cur = self.terms.remove(&key).unwrap_or_else(Rational::zero) + c;
        if !cur.is_zero() {
            self.terms.insert(key, cur);
        }
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.add_term(key.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TensorPoly { k: self.k, terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero(self.k);
        for (key, c) in &self.terms {
            out.add_term(key.clone(), c * q);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.k);
        for ((e1, w1), c1) in &self.terms {
            for ((e2, w2), c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let w = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                out.add_term((e, w), c1 * c2);
            }
        }
        out
    }

    /// Sum over copies of the per-copy bracket.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.k);
        for ((e1, w1), c1) in &self.terms {
            for ((e2, w2), c2) in &other.terms {
                for m in 0..self.k {
                    // {u dz^i, v dz^j} = (j e_u - i e_v) z^(e_u + e_v - 1) dz^(i+j+1)
                    let s = w2[m] as i64 * e1[m] as i64 - w1[m] as i64 * e2[m] as i64;
                    if s == 0 {
                        continue;
                    }
                    let mut e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                    let mut w: Vec<u32> = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                    e[m] -= 1;
                    w[m] += 1;
                    out.add_term((e, w), c1 * c2 * int(s));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!(self.to_string())
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for ((e, w), c) in self.terms.iter().rev() {
            let mut parts = Vec::new();
            for (m, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => parts.push(format!("z{}", m + 1)),
                    _ => parts.push(format!("z{}^{x}", m + 1)),
                }
            }
            for (m, &x) in w.iter().enumerate() {
                match x {
                    0 => {}
                    1 => parts.push(format!("dz{}", m + 1)),
                    _ => parts.push(format!("dz{}^{x}", m + 1)),
                }
            }
            fmt_term(&mut out, &c.to_string(), &parts.join("*"));
        }
        f.write_str(&out)
    }
}

/// `{P/Q, R/S}` as `(numerator, denominator)` by the quotient rule.
pub fn fraction_bracket(
    (p, q): (&TensorPoly, &TensorPoly),
    (r, s): (&TensorPoly, &TensorPoly),
) -> (TensorPoly, TensorPoly) {
    let t1 = p.bracket(r).mul(q).mul(s);
    let t2 = p.mul(&q.bracket(r)).mul(s);
    let t3 = p.bracket(s).mul(q).mul(r);
    let t4 = p.mul(&q.bracket(s)).mul(r);
    let num = t1.sub(&t2).sub(&t3).add(&t4);
    (num, q.mul(q).mul(s).mul(s))
}

fn det(m: &[Vec<TensorPoly>], k: usize) -> TensorPoly {
    let n = m.len();
    if n == 0 {
        return TensorPoly::one(k);
    }
    let mut out = TensorPoly::zero(k);
    for (j, entry) in m[0].iter().enumerate() {
        let minor: Vec<Vec<TensorPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = entry.mul(&det(&minor, k));
        out = if j % 2 == 0 { out.add(&term) } else { out.sub(&term) };
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeauvilleReport {
    /// `psi_0, ..., psi_k`.
    pub psi: Vec<TensorPoly>,
    /// Numerators of `{H_i, H_j}` for `i < j`, over `psi_0^4`.
    pub brackets: Vec<((usize, usize), TensorPoly)>,
    /// Numerators of `{H_i, H_i}`.
    pub self_brackets: Vec<TensorPoly>,
}

impl BeauvilleReport {
    pub fn all_commute(&self) -> bool {
        self.brackets.iter().all(|(_, b)| b.is_zero()) && self.self_brackets.iter().all(|b| b.is_zero())
    }

    pub fn to_json(&self) -> Value {
        let psi: Vec<String> = self.psi.iter().map(|p| p.to_string()).collect();
        let h: Vec<String> = (1..self.psi.len()).map(|i| format!("({})/({})", self.psi[i], self.psi[0])).collect();
        let br: Vec<Value> = self
            .brackets
            .iter()
            .map(|((i, j), b)| json!({"i": i, "j": j, "numerator": b.to_string(), "zero": b.is_zero()}))
            .collect();
        json!({"psi": psi, "H": h, "brackets": br, "commuting": self.all_commute()})
    }
}

/// Minors of the `k x (k+1)` matrix with rows `(omega_1^(m), ..., omega_k^(m), 1)`:
/// `psi_0` deletes the column of ones, `psi_i` deletes column `i` with sign
/// `(-1)^i`. Then `H_i = psi_i / psi_0`.
pub fn beauville_family(forms: &[Poly], big_n: i64) -> Result<BeauvilleReport> {
    let k = forms.len();
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidInput(format!("k = {k} outside 1..=3")));
    }
    for f in forms {
        if f.deg_i64() > big_n - 2 {
            return Err(Error::InvalidInput(format!("form {f} is not in A_1 for N = {big_n}")));
        }
    }
    let rows: Vec<Vec<TensorPoly>> = (0..k)
        .map(|m| {
            let mut row: Vec<TensorPoly> = forms.iter().map(|f| TensorPoly::embed(k, m, f, 1)).collect();
            row.push(TensorPoly::one(k));
            row
        })
        .collect();
    let minor = |skip: usize| -> TensorPoly {
        let sub: Vec<Vec<TensorPoly>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != skip).map(|(_, x)| x.clone()).collect())
            .collect();
        det(&sub, k)
    };
    let mut psi = vec![minor(k)];
    for i in 1..=k {
        let m = minor(i - 1);
        psi.push(if i % 2 == 0 { m } else { m.neg() });
    }
    if psi[0].is_zero() {
        return Err(Error::InvalidInput("forms are linearly dependent".into()));
    }
    let q = &psi[0];
    let mut brackets = Vec::new();
    let mut self_brackets = Vec::new();
    for i in 1..=k {
        self_brackets.push(fraction_bracket((&psi[i], q), (&psi[i], q)).0);
        for j in i + 1..=k {
            brackets.push(((i, j), fraction_bracket((&psi[i], q), (&psi[j], q)).0));
        }
    }
    Ok(BeauvilleReport { psi, brackets, self_brackets })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_copies_commute() {
        let r = beauville_family(&[Poly::one(), Poly::z()], 3).unwrap();
        assert_eq!(r.psi[0].to_string(), "-z1*dz1*dz2 + z2*dz1*dz2");
        assert!(r.all_commute());
        let r = beauville_family(&[Poly::one()], 3).unwrap();
        assert!(r.all_commute());
        assert!(beauville_family(&[Poly::z(), Poly::z()], 3).is_err());
    }

    #[test]
    fn copies_commute_and_bracket_is_antisymmetric() {
        let a = TensorPoly::embed(2, 0, &Poly::z(), 1);
        let b = TensorPoly::embed(2, 1, &Poly::z(), 1);
        assert!(a.bracket(&b).is_zero());
        let c = TensorPoly::embed(2, 0, &Poly::from_ints(&[1, 0, 1]), 2);
        assert_eq!(a.bracket(&c), c.bracket(&a).neg());
    }
}
