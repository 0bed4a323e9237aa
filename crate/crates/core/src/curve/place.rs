//! Closed points of the projective line over Q and their local charts.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::algebra::factor::{is_irreducible, poly_order};
use crate::algebra::field::{ExtField, Field, Q};
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::parse::parse_ratfun;
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Infinity,
    /// The point `z = q`.
    Finite(Rational),
    /// The zero set of a monic irreducible polynomial of degree at least 2.
    Irreducible(Poly),
}

impl Place {
    /// Place cut out by a monic irreducible polynomial of any degree.
    pub fn from_factor(p: &Poly) -> Place {
        let p = p.monic();
        match p.degree() {
            Some(1) => Place::Finite(-p.constant_term()),
            _ => Place::Irreducible(p),
        }
    }

    /// Checked constructor for an irreducible place.
    pub fn irreducible(p: &Poly) -> Result<Place> {
        if p.deg_i64() < 1 || !is_irreducible(p) {
            return Err(Error::Reducible(p.to_string()));
        }
        Ok(Self::from_factor(p))
    }

    pub fn zero() -> Place {
        Place::Finite(Rational::zero())
    }

    /// Degree of the residue field over Q.
    pub fn degree(&self) -> i64 {
        match self {
            Place::Irreducible(p) => p.deg_i64(),
            _ => 1,
        }
    }

    /// The monic irreducible polynomial vanishing at a finite place.
    pub fn poly(&self) -> Option<Poly> {
        match self {
            Place::Infinity => None,
            Place::Finite(q) => Some(Poly::linear_root(q)),
            Place::Irreducible(p) => Some(p.clone()),
        }
    }

    /// Order of vanishing of a nonzero rational function.
    pub fn ord(&self, f: &RatFun) -> i64 {
        match self.poly() {
            None => f.ord_inf(),
            Some(p) => f.ord_at(&p),
        }
    }

    pub fn chart(&self) -> AnyChart {
        match self {
            Place::Infinity => AnyChart::Rat(Chart::infinity(Q)),
            Place::Finite(q) => AnyChart::Rat(Chart::finite(Q, q.clone())),
            Place::Irreducible(p) => {
                let k = ExtField::new(p).expect("irreducible place");
                let t = k.gen();
                AnyChart::Ext(Chart::finite(k, t))
            }
        }
    }

    /// Parses `inf`, a rational number, or a polynomial in `z`; a
    /// polynomial must be irreducible and names its zero set.
    pub fn parse(s: &str) -> Result<Place> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        if matches!(t.trim(), "inf" | "oo" | "∞") {
            return Ok(Place::Infinity);
        }
        let f = parse_ratfun(t, "z")?;
        let p = f.as_poly().ok_or_else(|| Error::InvalidInput(format!("place must be a polynomial: {s}")))?;
        match p.as_constant() {
            Some(q) => Ok(Place::Finite(q)),
            None => Self::irreducible(p),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Place::Infinity => 0,
            Place::Finite(_) => 1,
            Place::Irreducible(_) => 2,
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Irreducible(a), Place::Irreducible(b)) => poly_order(a, b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Finite(q) => write!(f, "{q}"),
            Place::Irreducible(p) => write!(f, "{p}"),
        }
    }
}

/// Local coordinate data at a place with residue field `F`: either
/// `z - center` or `w = 1/z`.
#[derive(Clone, Debug)]
pub struct Chart<F: Field> {
    field: F,
    center: Option<F::Elem>,
}

/// A chart over Q or over a residue field extension.
#[derive(Clone, Debug)]
pub enum AnyChart {
    Rat(Chart<Q>),
    Ext(Chart<ExtField>),
}

/// `(c_0 + c_1 z + ...)(z + a)` expanded as a polynomial in `z`: Taylor shift.
fn taylor_shift<F: Field>(field: &F, coeffs: &[F::Elem], a: &F::Elem) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = Vec::new();
    for c in coeffs.iter().rev() {
        // out <- out * (u + a) + c
        let mut next = vec![field.zero(); out.len() + 1];
        for (k, o) in out.iter().enumerate() {
            next[k + 1] = field.add(&next[k + 1], o);
            next[k] = field.add(&next[k], &field.mul(o, a));
        }
        next[0] = field.add(&next[0], c);
        out = next;
    }
    out
}

impl<F: Field> Chart<F> {
    pub fn finite(field: F, center: F::Elem) -> Self {
        Chart { field, center: Some(center) }
    }

    pub fn infinity(field: F) -> Self {
        Chart { field, center: None }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_infinity(&self) -> bool {
        self.center.is_none()
    }

    /// Exact expansion of a polynomial in the local coordinate.
    pub fn poly_series(&self, p: &Poly) -> LaurentSeries<F> {
        let cs: Vec<F::Elem> = p.coeffs().iter().map(|c| self.field.from_rational(c)).collect();
        match &self.center {
            Some(a) => LaurentSeries::exact(self.field.clone(), 0, taylor_shift(&self.field, &cs, a)),
            None => {
                let d = p.deg_i64().max(0);
                let rev: Vec<F::Elem> = cs.into_iter().rev().collect();
                LaurentSeries::exact(self.field.clone(), -d, rev)
            }
        }
    }

    /// Expansion of `f` known modulo `z_P^prec` (absolute precision).
    pub fn expand(&self, f: &RatFun, prec: i64) -> LaurentSeries<F> {
        if f.is_zero() {
            return LaurentSeries::zero(self.field.clone(), prec);
        }
        let n = self.poly_series(f.num());
        let d = self.poly_series(f.den());
        let v = n.val() - d.val();
        let rel = prec - v;
        if rel <= 0 {
            return LaurentSeries::zero(self.field.clone(), prec);
        }
        if d.terms().count() == 1 {
            let inv = d.inv().expect("nonzero denominator");
            return n.mul(&inv).truncate(prec);
        }
        let inv = d.truncate(d.val() + rel).inv().expect("nonzero denominator");
        n.mul(&inv).truncate(prec)
    }

    /// Exact expansion when the denominator of `f` is a power of the local
    /// parameter times a constant.
    pub fn expand_exact(&self, f: &RatFun) -> Option<LaurentSeries<F>> {
        if f.is_zero() {
            return Some(LaurentSeries::zero(self.field.clone(), crate::algebra::EXACT));
        }
        let d = self.poly_series(f.den());
        if d.terms().count() != 1 {
            return None;
        }
        Some(self.poly_series(f.num()).mul(&d.inv()?))
    }

    /// Expansion of `f` carrying `rel` coefficients past its valuation.
    pub fn expand_rel(&self, f: &RatFun, rel: i64) -> LaurentSeries<F> {
        if f.is_zero() {
            return LaurentSeries::zero(self.field.clone(), rel);
        }
        let v = self.ord(f);
        self.expand(f, v + rel)
    }

    /// Order of `f` at this place.
    pub fn ord(&self, f: &RatFun) -> i64 {
        let n = self.poly_series(f.num());
        let d = self.poly_series(f.den());
        n.val() - d.val()
    }

    /// The series `c` with `d/dz = c * d/dz_P`: `1` at finite places and
    /// `-w^2` at infinity.
    pub fn dz_factor(&self) -> LaurentSeries<F> {
        match self.center {
            Some(_) => LaurentSeries::one(self.field.clone(), crate::algebra::EXACT),
            None => {
                let m1 = self.field.from_rational(&Rational::from_integer((-1).into()));
                LaurentSeries::exact(self.field.clone(), 2, vec![m1])
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    #[test]
    fn expansions_from_the_examples() {
        let geo = RatFun::new(Poly::one(), Poly::from_ints(&[1, -1]));
        let s = Chart::finite(Q, int(0)).expand(&geo, 3);
        assert_eq!(s.to_string(), "1 + z + z^2 + O(z^3)");
        let s = Chart::infinity(Q).expand(&RatFun::z(), 2);
        assert_eq!(s.fmt_var("w"), "w^-1 + O(w^2)");
        let place = Place::parse("z^2 + 1").unwrap();
        let AnyChart::Ext(c) = place.chart() else { panic!("expected extension chart") };
        let f = RatFun::new(Poly::one(), Poly::from_ints(&[1, 0, 1]));
        let s = c.expand(&f, 0);
        // 1/(2t) = -t/2 in Q[t]/(t^2+1)
        assert_eq!(s.coeff(-1), Some(Poly::from_coeffs(vec![int(0), frac(-1, 2)])));
        assert_eq!(s.prec(), 0);
    }

    #[test]
    fn parse_and_order() {
        assert_eq!(Place::parse("inf").unwrap(), Place::Infinity);
        assert_eq!(Place::parse("(0)").unwrap(), Place::zero());
        assert_eq!(Place::parse("-3/4").unwrap(), Place::Finite(frac(-3, 4)));
        assert!(Place::parse("z^2 - 1").is_err());
        let mut v = [Place::parse("z^2+1").unwrap(), Place::Finite(int(2)), Place::Infinity, Place::zero()];
        v.sort();
        assert_eq!(v.iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["inf", "0", "2", "z^2 + 1"]);
    }
}
