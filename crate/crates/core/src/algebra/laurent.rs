//! Truncated Laurent series with explicit precision.
//!
//! A series is known modulo `z^prec`: every coefficient below `prec` is
//! asserted, everything from `prec` on is unknown. Arithmetic computes the
//! exact output precision from the inputs. Coefficients past the stored
//! ones and below `prec` are zero, so finite sums can carry the sentinel
//! precision [`EXACT`].

use num_traits::Zero;

use super::field::Field;
use super::fmt_term;
use super::rational::{int, Rational};

/// Precision of series known to all orders.
pub const EXACT: i64 = i64::MAX / 4;

/// Precisions beyond any finite truncation collapse back to [`EXACT`].
fn clamp_prec(p: i64) -> i64 {
    if p > EXACT / 2 {
        EXACT
    } else {
        p
    }
}

#[derive(Clone, Debug)]
pub struct LaurentSeries<F: Field> {
    field: F,
    val: i64,
    coeffs: Vec<F::Elem>,
    prec: i64,
}

impl<F: Field> LaurentSeries<F> {
    /// Series from ascending coefficients starting at `start`, truncated at
    /// `prec`. Coefficients at or beyond `prec` are dropped.
    pub fn new(field: F, start: i64, coeffs: Vec<F::Elem>, prec: i64) -> Self {
        let prec = clamp_prec(prec);
        let mut coeffs = coeffs;
        coeffs.truncate((prec - start).max(0) as usize);
        let mut s = LaurentSeries { field, val: start.min(prec), coeffs, prec };
        s.normalize();
        s
    }

    /// Finite sum of terms, known to all orders.
    pub fn exact(field: F, start: i64, coeffs: Vec<F::Elem>) -> Self {
        Self::new(field, start, coeffs, EXACT)
    }

    /// `O(z^prec)`.
    pub fn zero(field: F, prec: i64) -> Self {
        let prec = clamp_prec(prec);
        LaurentSeries { field, val: prec, coeffs: Vec::new(), prec }
    }

    pub fn one(field: F, prec: i64) -> Self {
        let one = field.one();
        Self::new(field, 0, vec![one], prec)
    }

    pub fn constant(field: F, c: F::Elem, prec: i64) -> Self {
        Self::new(field, 0, vec![c], prec)
    }

    /// `c * z^n + O(z^prec)`.
    pub fn monomial(field: F, c: F::Elem, n: i64, prec: i64) -> Self {
        Self::new(field, n, vec![c], prec)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !self.field.is_zero(c));
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// First possibly nonzero exponent; equals `prec` for a zero-to-precision series.
    pub fn val(&self) -> i64 {
        self.val
    }

    /// Valuation if it is determined, `None` if the series is zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// One past the last stored coefficient.
    fn end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Coefficient of `z^n`; `None` if `n >= prec`.
    pub fn coeff(&self, n: i64) -> Option<F::Elem> {
        if n >= self.prec {
            None
        } else if n < self.val {
            Some(self.field.zero())
        } else {
            Some(self.coeffs.get((n - self.val) as usize).cloned().unwrap_or_else(|| self.field.zero()))
        }
    }

    fn coeff_or_zero(&self, n: i64) -> F::Elem {
        self.coeff(n).unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.first()
    }

    /// `(exponent, coefficient)` pairs of nonzero known terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F::Elem)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !self.field.is_zero(c)).map(|(k, c)| (self.val + k as i64, c))
    }

    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::new(self.field.clone(), self.val, self.coeffs.clone(), prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let live: Vec<&Self> = [self, other].into_iter().filter(|s| !s.is_zero_to_prec()).collect();
        if live.is_empty() {
            return Self::zero(self.field.clone(), prec);
        }
        let lo = live.iter().map(|s| s.val).min().unwrap().min(prec);
        let hi = live.iter().map(|s| s.end()).max().unwrap().min(prec);
        let coeffs = (lo..hi).map(|n| self.field.add(&self.coeff_or_zero(n), &other.coeff_or_zero(n))).collect();
        Self::new(self.field.clone(), lo, coeffs, prec)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            field: self.field.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::new(self.field.clone(), self.val, coeffs, self.prec)
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.scale(a, q)).collect();
        Self::new(self.field.clone(), self.val, coeffs, self.prec)
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero_to_prec() {
            return Self::zero(self.field.clone(), self.prec + k);
        }
        LaurentSeries {
            field: self.field.clone(),
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: clamp_prec(self.prec + k),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = (self.val + other.prec).min(other.val + self.prec);
        let val = self.val + other.val;
        if val >= prec {
            return Self::zero(self.field.clone(), prec);
        }
        let n = ((prec - val) as usize).min(self.coeffs.len() + other.coeffs.len());
        let out = self.field.convolve(&self.coeffs, &other.coeffs, n);
        Self::new(self.field.clone(), val, out, prec)
    }

    /// `sum c * a * b` over the given triples, with the precision of the
    /// least precise product.
    pub fn sum_of_products(field: &F, items: &[(&Self, &Self, &Rational)]) -> Self {
        let prec =
            items.iter().map(|(a, b, _)| clamp_prec((a.val + b.prec).min(b.val + a.prec))).min().unwrap_or(EXACT);
        let live: Vec<_> =
            items.iter().filter(|(a, b, c)| !a.is_zero_to_prec() && !b.is_zero_to_prec() && !c.is_zero()).collect();
        let Some(val) = live.iter().map(|(a, b, _)| a.val + b.val).min() else {
            return Self::zero(field.clone(), prec);
        };
        if val >= prec {
            return Self::zero(field.clone(), prec);
        }
        let end = live.iter().map(|(a, b, _)| a.end() + b.end() - 1).max().unwrap().min(prec);
        let n = (end - val).max(0) as usize;
        let parts: Vec<_> =
            live.iter().map(|(a, b, c)| (&a.coeffs[..], &b.coeffs[..], (a.val + b.val - val) as usize, *c)).collect();
        Self::new(field.clone(), val, field.dot_convolve(&parts, n), prec)
    }

    /// Multiplicative inverse; `None` if the series is zero to precision.
    pub fn inv(&self) -> Option<Self> {
        let a0 = self.leading()?;
        let a0_inv = self.field.inv(a0)?;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Some(Self::exact(self.field.clone(), -self.val, vec![a0_inv]));
        }
        let rel = self.prec - self.val;
        assert!(rel < 1 << 16, "inverse of a series without finite precision");
        let rel = rel as usize;
        let mut b: Vec<F::Elem> = Vec::with_capacity(rel);
        for n in 0..rel {
            let mut s = if n == 0 { self.field.one() } else { self.field.zero() };
            for k in 1..=n.min(self.coeffs.len() - 1) {
                s = self.field.sub(&s, &self.field.mul(&self.coeffs[k], &b[n - k]));
            }
            b.push(self.field.mul(&s, &a0_inv));
        }
        Some(Self::new(self.field.clone(), -self.val, b, self.prec - 2 * self.val))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        // Start from an exact-looking unit whose precision never binds.
        let mut acc = Self::one(self.field.clone(), EXACT);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// d/dz.
    pub fn derivative(&self) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().map(|(k, c)| self.field.scale(c, &int(self.val + k as i64))).collect();
        Self::new(self.field.clone(), self.val - 1, coeffs, self.prec - 1)
    }

    /// `self(inner)` for `inner` of valuation exactly 1.
    pub fn compose(&self, inner: &Self) -> Self {
        assert_eq!(inner.valuation(), Some(1), "inner series must have valuation 1");
        if self.is_zero_to_prec() {
            return Self::zero(self.field.clone(), self.prec);
        }
        let exact = self.is_exact();
        let rel = if exact { self.end() - self.val } else { self.prec - self.val };
        assert!(rel < 1 << 16, "composition needs finite precision");
        // Horner on the unit part, then multiply by inner^val.
        let mut acc = Self::zero(self.field.clone(), if exact { EXACT } else { 0 });
        for k in (0..rel).rev() {
            let c = self.coeff_or_zero(self.val + k);
            acc = acc.mul(inner).add(&Self::constant(self.field.clone(), c, EXACT));
        }
        acc.mul(&inner.pow(self.val).expect("inner is a unit times z"))
    }

    /// Compositional inverse of a series with valuation exactly 1.
    pub fn reversion(&self) -> Self {
        assert_eq!(self.valuation(), Some(1), "reversion needs valuation 1");
        let g1_inv = self.field.inv(self.leading().unwrap()).unwrap();
        let p = self.prec;
        let mut h = vec![self.field.zero(), g1_inv.clone()];
        for n in 2..p {
            let cur = Self::new(self.field.clone(), 0, h.clone(), n + 1);
            let c = self.compose(&cur).coeff_or_zero(n);
            h.push(self.field.neg(&self.field.mul(&c, &g1_inv)));
        }
        Self::new(self.field.clone(), 0, h, p)
    }

    /// True if all coefficients known to both series coincide.
    pub fn agrees(&self, other: &Self) -> bool {
        let top = self.prec.min(other.prec);
        let live: Vec<&Self> = [self, other].into_iter().filter(|s| !s.is_zero_to_prec()).collect();
        if live.is_empty() {
            return true;
        }
        let top = top.min(live.iter().map(|s| s.end()).max().unwrap());
        let lo = live.iter().map(|s| s.val).min().unwrap();
        (lo..top).all(|n| self.coeff_or_zero(n) == other.coeff_or_zero(n))
    }

    /// True if known to be in the power-series ring.
    pub fn is_integral(&self) -> Option<bool> {
        match self.valuation() {
            Some(v) => Some(v >= 0),
            None if self.prec >= 0 => Some(true),
            None => None,
        }
    }

    pub fn fmt_var(&self, var: &str) -> String {
        let mut out = String::new();
        for (n, c) in self.terms() {
            let mono = match n {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{n}"),
            };
            fmt_term(&mut out, &self.field.fmt_elem(c), &mono);
        }
        if self.is_exact() {
            return if out.is_empty() { "0".to_string() } else { out };
        }
        let big = match self.prec {
            0 => "O(1)".to_string(),
            1 => format!("O({var})"),
            p => format!("O({var}^{p})"),
        };
        if out.is_empty() {
            big
        } else {
            format!("{out} + {big}")
        }
    }
}

impl<F: Field> std::fmt::Display for LaurentSeries<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.fmt_var("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Q;
    use crate::algebra::rational::frac;

    fn ser(start: i64, cs: &[i64], prec: i64) -> LaurentSeries<Q> {
        LaurentSeries::new(Q, start, cs.iter().map(|&c| int(c)).collect(), prec)
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_z = ser(0, &[1, -1], 5);
        let inv = one_minus_z.inv().unwrap();
        assert_eq!(inv.to_string(), "1 + z + z^2 + z^3 + z^4 + O(z^5)");
        let s = ser(-1, &[1, 2], 3);
        assert_eq!(s.to_string(), "z^-1 + 2 + O(z^3)");
        let si = s.inv().unwrap();
        assert_eq!(si.prec(), 5);
        assert!(s.mul(&si).agrees(&LaurentSeries::one(Q, 4)));
    }

    #[test]
    fn precision_rules() {
        let a = ser(-2, &[1], 4);
        let b = ser(1, &[3], 6);
        assert_eq!(a.mul(&b).prec(), 4); // min(-2 + 6, 1 + 4)
        assert_eq!(a.add(&b).prec(), 4);
        assert_eq!(a.derivative().prec(), 3);
        assert_eq!(a.derivative().coeff(-3), Some(int(-2)));
        let z = LaurentSeries::zero(Q, 2);
        assert_eq!(z.to_string(), "O(z^2)");
        assert_eq!(z.is_integral(), Some(true));
        assert_eq!(LaurentSeries::zero(Q, -1).is_integral(), None);
    }

    #[test]
    fn compose_and_reversion() {
        // g = z + z^2; reversion h satisfies g(h) = z
        let g = ser(1, &[1, 1], 8);
        let h = g.reversion();
        assert!(g.compose(&h).agrees(&ser(1, &[1], 8)));
        assert_eq!(h.coeff(2), Some(int(-1)));
        assert_eq!(h.coeff(3), Some(int(2)));
        // 1/z composed with 2z gives 1/(2z)
        let f = ser(-1, &[1], 4);
        let c = f.compose(&ser(1, &[2], 10));
        assert_eq!(c.coeff(-1), Some(frac(1, 2)));
    }
}
