//! Differential rings: a coefficient ring together with a distinguished
//! derivation. A ring value is a handle; elements do not point back to it.

use std::fmt::Debug;

use num_traits::{One, Zero};

use super::diffpoly::DiffPoly;
use super::field::Field;
use super::laurent::{LaurentSeries, EXACT};
use super::ratfun::RatFun;
use super::rational::Rational;

pub trait DiffRing: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem;
    /// The distinguished derivation.
    fn derive(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Known to be zero, as opposed to zero only up to some precision.
    fn is_exact_zero(&self, a: &Self::Elem) -> bool;
    /// Equality on whatever both operands know.
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    /// Same underlying ring and derivation.
    fn same(&self, other: &Self) -> bool;

    /// Smallest `k` with `derive^k(a) = 0`, when that is cheap to certify.
    fn nilpotency(&self, _a: &Self::Elem) -> Option<u32> {
        None
    }

    /// The same ring with derivation `f * d`, if representable.
    fn rescale(&self, _f: &Self::Elem) -> Option<Self> {
        None
    }

    fn derive_n(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        (0..n).fold(a.clone(), |acc, _| self.derive(&acc))
    }

    /// `sum c * a * b`.
    fn sum_of_products(&self, items: &[(&Self::Elem, &Self::Elem, Rational)]) -> Self::Elem {
        items.iter().fold(self.zero(), |acc, (a, b, c)| {
            let p = self.mul(a, b);
            self.add(&acc, &if c.is_one() { p } else { self.scale(&p, c) })
        })
    }

    /// `a, derive(a), ..., derive^n(a)`.
    fn derivatives(&self, a: &Self::Elem, n: usize) -> Vec<Self::Elem> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(a.clone());
        for _ in 0..n {
            let next = self.derive(out.last().unwrap());
            out.push(next);
        }
        out
    }
}

/// `Q(z)` with derivation `g d/dz`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunRing {
    vf: RatFun,
}

impl RatFunRing {
    /// Panics if `g` is zero.
    pub fn new(g: RatFun) -> Self {
        assert!(!g.is_zero(), "zero vector field");
        RatFunRing { vf: g }
    }

    /// `d/dz`.
    pub fn standard() -> Self {
        RatFunRing { vf: RatFun::one() }
    }

    pub fn vf(&self) -> &RatFun {
        &self.vf
    }
}

impl DiffRing for RatFunRing {
    type Elem = RatFun;

    fn zero(&self) -> RatFun {
        RatFun::zero()
    }
    fn one(&self) -> RatFun {
        RatFun::one()
    }
    fn from_rational(&self, q: &Rational) -> RatFun {
        RatFun::constant(q.clone())
    }
    fn add(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a + b
    }
    fn sub(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a - b
    }
    fn mul(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a * b
    }
    fn neg(&self, a: &RatFun) -> RatFun {
        -a
    }
    fn scale(&self, a: &RatFun, q: &Rational) -> RatFun {
        a.scale(q)
    }
    fn derive(&self, a: &RatFun) -> RatFun {
        if a.is_constant() {
            return RatFun::zero();
        }
        let d = a.derivative();
        if self.vf.is_one() {
            d
        } else {
            &self.vf * &d
        }
    }
    fn inv(&self, a: &RatFun) -> Option<RatFun> {
        a.inv()
    }
    fn is_exact_zero(&self, a: &RatFun) -> bool {
        a.is_zero()
    }
    fn eq(&self, a: &RatFun, b: &RatFun) -> bool {
        a == b
    }
    fn fmt_elem(&self, a: &RatFun) -> String {
        a.to_string()
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
    fn rescale(&self, f: &RatFun) -> Option<Self> {
        (!f.is_zero()).then(|| RatFunRing::new(&self.vf * f))
    }
    fn derivatives(&self, a: &RatFun, n: usize) -> Vec<RatFun> {
        if self.vf.is_one() {
            return a.derivatives(n);
        }
        let mut out = vec![a.clone()];
        for _ in 0..n {
            let next = self.derive(out.last().unwrap());
            out.push(next);
        }
        out
    }
    fn nilpotency(&self, a: &RatFun) -> Option<u32> {
        if a.is_zero() {
            return Some(0);
        }
        if a.is_constant() {
            return Some(1);
        }
        match (a.as_poly(), self.vf.as_constant()) {
            (Some(p), Some(_)) => Some(p.degree().unwrap() as u32 + 1),
            _ => None,
        }
    }
}

/// `K((z))` with derivation `h d/dz`; `vf = None` means exactly `d/dz`.
#[derive(Clone, Debug)]
pub struct LaurentRing<F: Field> {
    field: F,
    vf: Option<LaurentSeries<F>>,
}

impl<F: Field> LaurentRing<F> {
    pub fn standard(field: F) -> Self {
        LaurentRing { field, vf: None }
    }

    /// Panics if `h` is zero to precision.
    pub fn with_vf(field: F, h: LaurentSeries<F>) -> Self {
        assert!(!h.is_zero_to_prec(), "zero vector field");
        LaurentRing { field, vf: Some(h) }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vf(&self) -> Option<&LaurentSeries<F>> {
        self.vf.as_ref()
    }

    /// The coefficient `h` of the derivation as a series.
    pub fn vf_series(&self) -> LaurentSeries<F> {
        self.vf.clone().unwrap_or_else(|| LaurentSeries::one(self.field.clone(), EXACT))
    }

    pub fn is_standard(&self) -> bool {
        self.vf.is_none()
    }
}

impl<F: Field> DiffRing for LaurentRing<F> {
    type Elem = LaurentSeries<F>;

    fn zero(&self) -> Self::Elem {
        LaurentSeries::zero(self.field.clone(), EXACT)
    }
    fn one(&self) -> Self::Elem {
        LaurentSeries::one(self.field.clone(), EXACT)
    }
    fn from_rational(&self, q: &Rational) -> Self::Elem {
        LaurentSeries::constant(self.field.clone(), self.field.from_rational(q), EXACT)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        a.scale_rational(q)
    }
    fn sum_of_products(&self, items: &[(&Self::Elem, &Self::Elem, Rational)]) -> Self::Elem {
        let refs: Vec<_> = items.iter().map(|(a, b, c)| (*a, *b, c)).collect();
        LaurentSeries::sum_of_products(&self.field, &refs)
    }
    fn derive(&self, a: &Self::Elem) -> Self::Elem {
        let d = a.derivative();
        match &self.vf {
            None => d,
            Some(h) => h.mul(&d),
        }
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        a.inv()
    }
    fn is_exact_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero_to_prec() && a.is_exact()
    }
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.agrees(b)
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        a.to_string()
    }
    fn same(&self, other: &Self) -> bool {
        self.field == other.field
            && match (&self.vf, &other.vf) {
                (None, None) => true,
                (Some(a), Some(b)) => a.agrees(b),
                _ => false,
            }
    }
    fn rescale(&self, f: &Self::Elem) -> Option<Self> {
        if f.is_zero_to_prec() {
            return None;
        }
        let h = match &self.vf {
            None => f.clone(),
            Some(h) => h.mul(f),
        };
        Some(LaurentRing::with_vf(self.field.clone(), h))
    }
    fn nilpotency(&self, a: &Self::Elem) -> Option<u32> {
        if !a.is_exact() {
            return None;
        }
        if a.is_zero_to_prec() {
            return Some(0);
        }
        if self.vf.is_some() || a.val() < 0 {
            return None;
        }
        a.terms().map(|(n, _)| n as u32 + 1).max()
    }
}

/// `Q[tau]{w}` with its universal derivation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DiffPolyRing;

impl DiffRing for DiffPolyRing {
    type Elem = DiffPoly;

    fn zero(&self) -> DiffPoly {
        DiffPoly::zero()
    }
    fn one(&self) -> DiffPoly {
        DiffPoly::one()
    }
    fn from_rational(&self, q: &Rational) -> DiffPoly {
        DiffPoly::constant(q.clone())
    }
    fn add(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a.add(b)
    }
    fn sub(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a.sub(b)
    }
    fn mul(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a.mul(b)
    }
    fn neg(&self, a: &DiffPoly) -> DiffPoly {
        a.neg()
    }
    fn scale(&self, a: &DiffPoly, q: &Rational) -> DiffPoly {
        a.scale(q)
    }
    fn derive(&self, a: &DiffPoly) -> DiffPoly {
        a.derive()
    }
    fn inv(&self, a: &DiffPoly) -> Option<DiffPoly> {
        let c = a.as_constant()?;
        (!c.is_zero()).then(|| DiffPoly::constant(c.recip()))
    }
    fn is_exact_zero(&self, a: &DiffPoly) -> bool {
        a.is_zero()
    }
    fn eq(&self, a: &DiffPoly, b: &DiffPoly) -> bool {
        a == b
    }
    fn fmt_elem(&self, a: &DiffPoly) -> String {
        a.to_string()
    }
    fn same(&self, _other: &Self) -> bool {
        true
    }
    fn nilpotency(&self, a: &DiffPoly) -> Option<u32> {
        a.nilpotency()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Q;
    use crate::algebra::poly::Poly;
    use crate::algebra::rational::int;

    #[test]
    fn ratfun_ring_derivation() {
        let r = RatFunRing::new(RatFun::z());
        let f = RatFun::from_poly(Poly::from_ints(&[0, 0, 1]));
        assert_eq!(r.derive(&f), f.scale(&int(2)));
        assert!(r.derive(&r.one()).is_zero());
        assert_eq!(RatFunRing::standard().nilpotency(&f), Some(3));
        assert_eq!(r.nilpotency(&f), None);
    }

    #[test]
    fn laurent_ring_derivation() {
        let r = LaurentRing::standard(Q);
        let s = LaurentSeries::exact(Q, 0, vec![int(0), int(0), int(1)]);
        assert_eq!(r.nilpotency(&s), Some(3));
        assert!(r.derive(&r.derive(&r.derive(&s))).is_zero_to_prec());
        assert!(r.is_exact_zero(&r.derive(&r.derive(&r.derive(&s)))));
    }
}
