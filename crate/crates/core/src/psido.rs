//! Formal pseudodifferential operators `sum a_k D^k` over a differential ring.
//!
//! Operators are truncated: `lo = Some(l)` means every coefficient of degree
//! `>= l` is known and nothing is asserted below; `lo = None` means the
//! operator is exact (a finite sum). Products and inverses derive their
//! output `lo` from the inputs, and default to a window of
//! [`DEFAULT_WINDOW`] degrees below the top when an exact computation would
//! not terminate.

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::field::Field;
use crate::algebra::fmt_term;
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::rational::{gen_binomial, Rational};
use crate::algebra::ring::{DiffRing, LaurentRing};
use crate::error::{Error, Result};

/// Largest top degree allowed for internal positive-order operators.
pub const MAX_TOP: i64 = 8;

/// Default depth of the precision window below the top degree.
pub const DEFAULT_WINDOW: i64 = 16;

#[derive(Clone, Debug)]
pub struct PsiDO<R: DiffRing> {
    ring: R,
    top: i64,
    /// `coeffs[m]` is the coefficient of `D^(top - m)`; missing entries are zero.
    coeffs: Vec<R::Elem>,
    lo: Option<i64>,
}

fn max_lo(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<R: DiffRing> PsiDO<R> {
    /// Builds an operator from `(degree, coefficient)` pairs; repeated degrees add up.
    pub fn from_terms(ring: R, terms: Vec<(i64, R::Elem)>, lo: Option<i64>) -> Self {
        if terms.is_empty() {
            return Self::zero(ring, lo);
        }
        let top = terms.iter().map(|(k, _)| *k).max().unwrap();
        let bottom = terms.iter().map(|(k, _)| *k).min().unwrap();
        let mut coeffs = vec![ring.zero(); (top - bottom + 1) as usize];
        for (k, c) in terms {
            let m = (top - k) as usize;
            coeffs[m] = ring.add(&coeffs[m], &c);
        }
        Self::build(ring, top, coeffs, lo)
    }

    fn build(ring: R, top: i64, coeffs: Vec<R::Elem>, lo: Option<i64>) -> Self {
        let mut t = PsiDO { ring, top, coeffs, lo };
        if let Some(l) = lo {
            let keep = (t.top - l + 1).max(0) as usize;
            t.coeffs.truncate(keep);
        }
        t.normalize();
        t
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.ring.is_exact_zero(c)) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| self.ring.is_exact_zero(c)).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.top -= lead as i64;
        }
        if self.coeffs.is_empty() {
            self.top = match self.lo {
                Some(l) => l - 1,
                None => 0,
            };
        }
    }

    /// Exact zero (`lo = None`) or `O(D^(lo - 1))`.
    pub fn zero(ring: R, lo: Option<i64>) -> Self {
        let top = lo.map_or(0, |l| l - 1);
        PsiDO { ring, top, coeffs: Vec::new(), lo }
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, 0)
    }

    /// `c D^k`, exact.
    pub fn monomial(ring: R, c: R::Elem, k: i64) -> Self {
        Self::from_terms(ring, vec![(k, c)], None)
    }

    /// The generator `D`.
    pub fn d(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, 1)
    }

    /// A coefficient as a degree-0 operator.
    pub fn scalar(ring: R, c: R::Elem) -> Self {
        Self::monomial(ring, c, 0)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Largest degree carrying a possibly nonzero coefficient.
    pub fn top(&self) -> i64 {
        self.top
    }

    /// Degree below which nothing is asserted; `None` for an exact operator.
    pub fn lo(&self) -> Option<i64> {
        self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo.is_none()
    }

    /// All known coefficients vanish (exactly, or to the ring's precision).
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.eq(c, &self.ring.zero()))
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.lo.is_none()
    }

    /// Lowest degree with a stored coefficient.
    pub fn bottom(&self) -> i64 {
        self.top - self.coeffs.len() as i64 + 1
    }

    /// Coefficient of `D^k`; `None` if `k` is below the known window.
    pub fn coeff(&self, k: i64) -> Option<R::Elem> {
        if self.lo.is_some_and(|l| k < l) {
            return None;
        }
        if k > self.top {
            return Some(self.ring.zero());
        }
        Some(self.coeffs.get((self.top - k) as usize).cloned().unwrap_or_else(|| self.ring.zero()))
    }

    fn coeff_or_zero(&self, k: i64) -> R::Elem {
        self.coeff(k).unwrap_or_else(|| self.ring.zero())
    }

    /// Nonzero known terms in descending degree.
    pub fn terms(&self) -> Vec<(i64, R::Elem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_exact_zero(c))
            .map(|(m, c)| (self.top - m as i64, c.clone()))
            .collect()
    }

    /// Forget everything below degree `lo`.
    pub fn truncate(&self, lo: i64) -> Self {
        if self.lo.is_some_and(|l| l >= lo) {
            return self.clone();
        }
        Self::build(self.ring.clone(), self.top, self.coeffs.clone(), Some(lo))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let lo = max_lo(self.lo, other.lo);
        let top = self.top.max(other.top);
        let mut bottom = self.bottom().min(other.bottom());
        if let Some(l) = lo {
            bottom = bottom.max(l);
        }
        if bottom > top {
            return Ok(Self::zero(self.ring.clone(), lo));
        }
        let coeffs =
            (bottom..=top).rev().map(|k| self.ring.add(&self.coeff_or_zero(k), &other.coeff_or_zero(k))).collect();
        Ok(Self::build(self.ring.clone(), top, coeffs, lo))
    }

    pub fn neg(&self) -> Self {
        PsiDO {
            ring: self.ring.clone(),
            top: self.top,
            coeffs: self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
            lo: self.lo,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.scale(c, q)).collect();
        Self::build(self.ring.clone(), self.top, coeffs, self.lo)
    }

    /// `a * T`: multiplication by a coefficient on the left.
    pub fn left_mul(&self, a: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.mul(a, c)).collect();
        Self::build(self.ring.clone(), self.top, coeffs, self.lo)
    }

    /// Product with the default precision window.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_to(other, None)
    }

    /// Product computed no deeper than `floor` (if given).
    pub fn mul_to(&self, other: &Self, floor: Option<i64>) -> Result<Self> {
        self.check_ring(other)?;
        let ring = &self.ring;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Self::zero(ring.clone(), None));
        }
        let top = self.top + other.top;
        if top > MAX_TOP {
            return Err(Error::DegreeTooLarge(top));
        }
        let b_terms = other.terms();
        let nil: Vec<Option<u32>> = b_terms.iter().map(|(_, b)| ring.nilpotency(b)).collect();
        let mut lo = match (self.lo, other.lo) {
            (None, None) => None,
            (a, b) => max_lo(a.map(|l| l + other.top), b.map(|l| l + self.top)),
        };
        let mut exact_bottom = None;
        if lo.is_none() {
            let mut bottom = i64::MAX;
            'pairs: for (i, _) in self.terms() {
                for ((j, _), n) in b_terms.iter().zip(&nil) {
                    let maxm = match (i >= 0, n) {
                        (_, Some(0)) => continue,
                        (true, Some(n)) => (i as u32).min(n - 1) as i64,
                        (true, None) => i,
                        (false, Some(n)) => *n as i64 - 1,
                        (false, None) => {
                            bottom = i64::MIN;
                            break 'pairs;
                        }
                    };
                    bottom = bottom.min(i + j - maxm);
                }
            }
            if bottom == i64::MIN {
                lo = Some(top - DEFAULT_WINDOW);
            } else {
                exact_bottom = Some(bottom);
            }
        }
        if let Some(f) = floor {
            match (lo, exact_bottom) {
                (Some(l), _) => lo = Some(l.max(f)),
                (None, Some(b)) if b < f => lo = Some(f),
                _ => {}
            }
        }
        let bottom = match (lo, exact_bottom) {
            (Some(l), _) => l,
            (None, Some(b)) => b,
            (None, None) => unreachable!(),
        };
        if bottom > top {
            return Ok(Self::zero(ring.clone(), lo));
        }

        let a_terms = self.terms();
        // derivs[j][m] = D^m(b_j) for every m the window reaches
        let derivs: Vec<Vec<R::Elem>> = b_terms
            .iter()
            .zip(&nil)
            .map(|((j, b), n)| {
                let reach = a_terms.iter().map(|(i, _)| {
                    let m = i + j - bottom;
                    if *i >= 0 {
                        m.min(*i)
                    } else {
                        m
                    }
                });
                let mut need = reach.max().unwrap_or(0).max(0);
                if let Some(n) = n {
                    need = need.min(*n as i64 - 1).max(0);
                }
                ring.derivatives(b, need as usize)
            })
            .collect();
        let mut coeffs = Vec::with_capacity((top - bottom + 1) as usize);
        for k in (bottom..=top).rev() {
            let mut items = Vec::new();
            for (i, a) in &a_terms {
                for (idx, (j, _)) in b_terms.iter().enumerate() {
                    let m = i + j - k;
                    if m < 0 {
                        break;
                    }
                    if nil[idx].is_some_and(|n| m >= n as i64) {
                        continue;
                    }
                    let c = gen_binomial(*i, m as u32);
                    if c.is_zero() {
                        continue;
                    }
                    let d = &derivs[idx][m as usize];
                    if ring.is_exact_zero(d) {
                        continue;
                    }
                    items.push((a, d, c));
                }
            }
            coeffs.push(ring.sum_of_products(&items));
        }
        Ok(Self::build(ring.clone(), top, coeffs, lo))
    }

    /// `[T, U] = TU - UT`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.ring.clone());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Inverse with the default window.
    pub fn invert(&self) -> Result<Self> {
        self.invert_to(None)
    }

    /// Inverse computed down to `floor` if given, otherwise as deep as the
    /// input precision allows (the default window for exact input).
    pub fn invert_to(&self, floor: Option<i64>) -> Result<Self> {
        let ring = &self.ring;
        let t = self.top;
        let lead = self.coeffs.first().ok_or(Error::NotInvertible { degree: t })?;
        let lead_inv = ring.inv(lead).ok_or(Error::NotInvertible { degree: t })?;
        if -t > MAX_TOP {
            return Err(Error::DegreeTooLarge(-t));
        }
        if self.is_exact() && self.coeffs.len() == 1 && ring.is_exact_zero(&ring.derive(lead)) {
            return Ok(Self::monomial(ring.clone(), lead_inv, -t));
        }
        let natural = match self.lo {
            Some(l) => l - 2 * t,
            None => -t - DEFAULT_WINDOW,
        };
        let lo = floor.map_or(natural, |f| f.max(natural));
        let n_max = -t - lo;
        if n_max < 0 {
            return Ok(Self::zero(ring.clone(), Some(lo)));
        }
        let a_terms = self.terms();
        // s[n] is the coefficient of D^(-t-n)
        let mut s: Vec<R::Elem> = Vec::with_capacity(n_max as usize + 1);
        // derivative caches of the already solved coefficients
        let mut derivs: Vec<Vec<R::Elem>> = Vec::new();
        for n in 0..=n_max {
            let k = -n;
            let mut acc = if n == 0 { ring.one() } else { ring.zero() };
            for (i, a) in &a_terms {
                for (nj, ds) in derivs.iter_mut().enumerate() {
                    let j = -t - nj as i64;
                    let m = i + j - k;
                    if m < 0 {
                        break;
                    }
                    if *i == t && m == 0 {
                        continue;
                    }
                    let c = gen_binomial(*i, m as u32);
                    if c.is_zero() {
                        continue;
                    }
                    while ds.len() <= m as usize {
                        let next = ring.derive(ds.last().unwrap());
                        ds.push(next);
                    }
                    let d = &ds[m as usize];
                    if ring.is_exact_zero(d) {
                        continue;
                    }
                    acc = ring.sub(&acc, &ring.scale(&ring.mul(a, d), &c));
                }
            }
            let sn = ring.mul(&lead_inv, &acc);
            derivs.push(vec![sn.clone()]);
            s.push(sn);
        }
        Ok(Self::build(ring.clone(), -t, s, Some(lo)))
    }

    /// `sum a_k U^k` for a generator image `U` of degree 1 over `U`'s ring,
    /// computed down to `floor`. Coefficients are reused unchanged, so the
    /// target ring must have the same elements.
    fn substitute(&self, u: &PsiDO<R>, floor: i64) -> Result<PsiDO<R>> {
        let target = u.ring.clone();
        let lo = max_lo(self.lo, Some(floor)).unwrap();
        let mut acc = PsiDO::zero(target.clone(), self.lo);
        let mut pos = PsiDO::one(target.clone());
        let mut neg: Option<(PsiDO<R>, PsiDO<R>)> = None; // (U^-1, current power)
        let mut terms = self.terms();
        terms.sort_by_key(|(k, _)| k.unsigned_abs());
        let mut pos_deg = 0;
        let mut neg_deg = 0;
        for (k, a) in terms {
            if k < lo {
                continue;
            }
            let power = if k >= 0 {
                while pos_deg < k {
                    pos = pos.mul(u)?;
                    pos_deg += 1;
                }
                pos.clone()
            } else {
                if acc.lo.is_none() {
                    acc = acc.truncate(lo);
                }
                if neg.is_none() {
                    let v = u.invert_to(Some(lo))?;
                    neg = Some((v.clone(), v));
                    neg_deg = 1;
                }
                let (v, cur) = neg.as_mut().unwrap();
                while neg_deg < -k {
                    *cur = cur.mul_to(v, Some(lo))?;
                    neg_deg += 1;
                }
                cur.clone()
            };
            let term = power.left_mul(&a);
            acc = acc.add(&if k < 0 { term.truncate(lo) } else { term })?;
        }
        Ok(acc)
    }

    /// Rewrites `T` over `(R, d)` as an operator over `target = (R, f d)`,
    /// sending `D_d` to `f^-1 D_{f d}`. The compatibility of `target` with `f`
    /// is spot-checked on the coefficients of `T`.
    pub fn change_derivation_to(&self, f: &R::Elem, target: R, floor: Option<i64>) -> Result<Self> {
        let f_inv = self.ring.inv(f).ok_or(Error::DivisionByZero)?;
        for (_, a) in self.terms().iter().take(3) {
            let lhs = target.derive(a);
            let rhs = self.ring.mul(f, &self.ring.derive(a));
            if !target.eq(&lhs, &rhs) {
                return Err(Error::DerivationMismatch("target is not f times the source derivation".into()));
            }
        }
        let u = PsiDO::monomial(target, f_inv, 1);
        let floor = floor.unwrap_or_else(|| self.lo.unwrap_or(self.top - DEFAULT_WINDOW));
        self.substitute(&u, floor)
    }

    /// [`Self::change_derivation_to`] with the ring rescaled by `f`.
    pub fn change_derivation(&self, f: &R::Elem) -> Result<Self> {
        let target = self.ring.rescale(f).ok_or(Error::DivisionByZero)?;
        self.change_derivation_to(f, target, None)
    }

    /// Applies a coefficientwise differential-ring morphism `mu` into `target`.
    /// `mu` must commute with the derivations; this is spot-checked on the
    /// coefficients of `T`.
    pub fn pushforward<S: DiffRing>(&self, target: S, mu: impl Fn(&R::Elem) -> S::Elem) -> Result<PsiDO<S>> {
        let mapped: Vec<S::Elem> = self.coeffs.iter().map(&mu).collect();
        for (a, ma) in self.coeffs.iter().zip(&mapped).take(3) {
            if self.ring.is_exact_zero(a) {
                continue;
            }
            let lhs = mu(&self.ring.derive(a));
            let rhs = target.derive(ma);
            if !target.eq(&lhs, &rhs) {
                return Err(Error::DerivationMismatch(format!("on coefficient {}", self.ring.fmt_elem(a))));
            }
        }
        Ok(PsiDO::build(target, self.top, mapped, self.lo))
    }

    /// The coefficient `a_{-i}` of an operator of order at most `-i`.
    pub fn symbol(&self, i: i64) -> Result<R::Elem> {
        if self.top > -i && !self.is_zero() {
            return Err(Error::InvalidInput(format!("operator has order {} > {}", self.top, -i)));
        }
        self.coeff(-i).ok_or_else(|| Error::PrecisionTooShallow { needed: -i, known: self.lo.unwrap_or(i64::MIN) })
    }

    /// Equality on the common window: every degree known to both operands.
    pub fn agrees(&self, other: &Self) -> bool {
        let lo = max_lo(self.lo, other.lo);
        let top = self.top.max(other.top);
        let mut bottom = self.bottom().min(other.bottom());
        if let Some(l) = lo {
            bottom = bottom.max(l);
        }
        (bottom..=top).all(|k| self.ring.eq(&self.coeff_or_zero(k), &other.coeff_or_zero(k)))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .into_iter()
            .map(|(k, c)| json!({"degree": k, "coefficient": self.ring.fmt_elem(&c)}))
            .collect();
        json!({"terms": terms, "prec_lo": self.lo})
    }
}

impl<F: Field> PsiDO<LaurentRing<F>> {
    /// Conjugation by `z^lambda`: `D -> D - lambda/z`, coefficients fixed.
    /// Only defined over the Laurent ring with derivation exactly `d/dz`.
    pub fn twist(&self, lambda: &Rational) -> Result<Self> {
        if !self.ring.is_standard() {
            return Err(Error::RingMismatch);
        }
        if lambda.is_zero() {
            return Ok(self.clone());
        }
        let field = self.ring.field().clone();
        let c = field.from_rational(&-lambda);
        let u = PsiDO::from_terms(
            self.ring.clone(),
            vec![(1, self.ring.one()), (0, LaurentSeries::exact(field, -1, vec![c]))],
            None,
        );
        let floor = self.lo.unwrap_or(self.top - DEFAULT_WINDOW);
        self.substitute(&u, floor)
    }
}

impl<R: DiffRing> fmt::Display for PsiDO<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.terms() {
            let mono = match k {
                0 => String::new(),
                1 => "D".to_string(),
                _ => format!("D^{k}"),
            };
            fmt_term(&mut out, &self.ring.fmt_elem(&c), &mono);
        }
        match self.lo {
            None if out.is_empty() => f.write_str("0"),
            None => f.write_str(&out),
            Some(l) => {
                let big = match l - 1 {
                    0 => "O(1)".to_string(),
                    1 => "O(D)".to_string(),
                    e => format!("O(D^{e})"),
                };
                if out.is_empty() {
                    f.write_str(&big)
                } else {
                    write!(f, "{out} + {big}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Q;
    use crate::algebra::ratfun::RatFun;
    use crate::algebra::rational::{frac, int};
    use crate::algebra::ring::RatFunRing;

    fn std_ring() -> RatFunRing {
        RatFunRing::standard()
    }

    fn z_op() -> PsiDO<RatFunRing> {
        PsiDO::scalar(std_ring(), RatFun::z())
    }

    fn d_pow(k: i64) -> PsiDO<RatFunRing> {
        PsiDO::monomial(std_ring(), RatFun::one(), k)
    }

    #[test]
    fn leibniz_and_negative_powers() {
        let dz = d_pow(1).mul(&z_op()).unwrap();
        assert_eq!(dz.to_string(), "z*D + 1");
        let dinv_z = d_pow(-1).mul(&z_op()).unwrap();
        assert!(dinv_z.is_exact());
        assert_eq!(dinv_z.to_string(), "z*D^-1 - D^-2");
        let a = RatFun::z_pow(-1);
        let b = RatFun::from_poly(crate::algebra::poly::Poly::from_ints(&[1, 1]));
        let ab = PsiDO::scalar(std_ring(), a.clone()).mul(&PsiDO::scalar(std_ring(), b.clone())).unwrap();
        assert!(ab.agrees(&PsiDO::scalar(std_ring(), &a * &b)));
    }

    #[test]
    fn commutators() {
        assert_eq!(d_pow(1).commutator(&z_op()).unwrap().to_string(), "1");
        assert_eq!(d_pow(-1).commutator(&z_op()).unwrap().to_string(), "-D^-2");
        let t = d_pow(-1).mul(&PsiDO::scalar(std_ring(), RatFun::z_pow(-2))).unwrap();
        assert!(t.commutator(&t).unwrap().is_zero());
    }

    #[test]
    fn inversion() {
        assert_eq!(d_pow(1).invert().unwrap().to_string(), "D^-1");
        let t = d_pow(0).sub(&d_pow(-1)).unwrap();
        let inv = t.invert().unwrap();
        // Neumann series 1 + D^-1 + D^-2 + ...
        let neumann = PsiDO::from_terms(std_ring(), (0..=16).map(|n| (-n, RatFun::one())).collect(), Some(-16));
        assert!(inv.agrees(&neumann));
        assert_eq!(inv.lo(), Some(-16));
        let b = PsiDO::scalar(std_ring(), RatFun::z_pow(-1).scale(&int(3)));
        let op = d_pow(1).add(&b).unwrap();
        let inv = op.invert().unwrap();
        let one = PsiDO::one(std_ring());
        assert!(inv.mul(&op).unwrap().agrees(&one));
        assert!(op.mul(&inv).unwrap().agrees(&one));
    }

    #[test]
    fn change_of_derivation_on_generator() {
        let img = d_pow(1).change_derivation(&RatFun::z()).unwrap();
        assert!(img.is_exact());
        assert_eq!(img.ring().vf(), &RatFun::z());
        assert_eq!(img.to_string(), "1/z*D");
        let back = img.change_derivation(&RatFun::z_pow(-1)).unwrap();
        assert!(back.agrees(&d_pow(1)));
        assert!(back.ring().same(&std_ring()));
    }

    #[test]
    fn symbols() {
        let t = PsiDO::from_terms(std_ring(), vec![(-2, RatFun::z()), (-3, RatFun::int(-2))], None);
        assert_eq!(t.symbol(2).unwrap(), RatFun::z());
        assert_eq!(PsiDO::one(std_ring()).symbol(0).unwrap(), RatFun::one());
        assert!(t.symbol(1).unwrap().is_zero());
        assert!(t.symbol(3).is_err());
    }

    #[test]
    fn twist_of_generator() {
        let ring = LaurentRing::standard(Q);
        let d = PsiDO::d(ring.clone());
        let lam = frac(3, 2);
        let tw = d.twist(&lam).unwrap();
        assert!(tw.is_exact());
        assert_eq!(tw.to_string(), "D - 3/2*z^-1");
        let back = tw.twist(&-lam).unwrap();
        assert!(back.agrees(&d));
    }

    #[test]
    fn text_and_json() {
        let t = d_pow(0).sub(&d_pow(-1)).unwrap().invert_to(Some(-2)).unwrap();
        assert_eq!(t.to_string(), "1 + D^-1 + D^-2 + O(D^-3)");
        let j = t.to_json();
        assert_eq!(j["prec_lo"], -2);
        assert_eq!(j["terms"][1]["degree"], -1);
        assert_eq!(j["terms"][1]["coefficient"], "1");
    }
}
