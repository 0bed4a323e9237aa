//! The rational function field Q(z).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{int, Rational};

/// `num / den` with `den` monic and coprime to `num`; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let lc = den.leading().recip();
        RatFun { num: num.scale(&lc), den: den.scale(&lc) }
    }

    /// From an already reduced pair with monic `den`.
    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    /// `z^n` for any integer `n`.
    pub fn z_pow(n: i64) -> Self {
        if n >= 0 {
            Self::from_poly(Poly::monomial(int(1), n as usize))
        } else {
            RatFun { num: Poly::one(), den: Poly::monomial(int(1), (-n) as usize) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFun::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut acc = RatFun::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// d/dz.
    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        // With g = gcd(d, d'), (n/d)' = (n' d/g - n d'/g) / (d d/g), already reduced.
        let dd = self.den.derivative();
        let g = self.den.gcd(&dd);
        let h = self.den.div_exact(&g).expect("gcd divides");
        let e = dd.div_exact(&g).expect("gcd divides");
        let n = &(&self.num.derivative() * &h) - &(&self.num * &e);
        RatFun::reduced(n, &self.den * &h)
    }

    /// `self, self', ..., self^(n)`, sharing one gcd: with `r` the radical of
    /// the denominator `d`, each step maps `m / (d r^k)` to
    /// `(m' r - m (d'/g + k r')) / (d r^(k+1))`, already reduced.
    pub fn derivatives(&self, n: usize) -> Vec<RatFun> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.clone());
        if self.den.is_one() {
            let mut p = self.num.clone();
            for _ in 0..n {
                p = p.derivative();
                out.push(RatFun::from_poly(p.clone()));
            }
            return out;
        }
        let dd = self.den.derivative();
        let g = self.den.gcd(&dd);
        let r = self.den.div_exact(&g).expect("gcd divides");
        let e0 = dd.div_exact(&g).expect("gcd divides");
        let dr = r.derivative();
        let (mut num, mut den) = (self.num.clone(), self.den.clone());
        for k in 0..n {
            let e = &e0 + &dr.scale(&int(k as i64));
            num = &(&num.derivative() * &r) - &(&num * &e);
            den = &den * &r;
            out.push(RatFun::reduced(num.clone(), den.clone()));
        }
        out
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// `self(inner(z))`; panics if the composite has a vanishing denominator.
    pub fn compose(&self, inner: &RatFun) -> RatFun {
        fn homog(p: &Poly, inner: &RatFun, deg: usize) -> Poly {
            // sum c_k n^k d^(deg-k)
            let mut acc = Poly::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = &inner.num.pow(k as u32) * &inner.den.pow((deg - k) as u32);
                acc = &acc + &term.scale(c);
            }
            acc
        }
        let deg = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        RatFun::new(homog(&self.num, inner, deg), homog(&self.den, inner, deg))
    }

    /// Order of vanishing at the place cut out by the irreducible `p`.
    pub fn ord_at(&self, p: &Poly) -> i64 {
        assert!(!self.is_zero(), "order of zero");
        self.num.multiplicity(p) as i64 - self.den.multiplicity(p) as i64
    }

    /// Order of vanishing at infinity.
    pub fn ord_inf(&self) -> i64 {
        assert!(!self.is_zero(), "order of zero");
        self.den.deg_i64() - self.num.deg_i64()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        let wrap = |p: &Poly| {
            let s = p.fmt_var(var);
            let simple =
                p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1 && !s.contains(' ') && !s.starts_with('-');
            if simple {
                s
            } else {
                format!("({s})")
            }
        };
        if self.den.is_one() {
            self.num.fmt_var(var)
        } else {
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("z"))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() {
            return RatFun::reduced(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return RatFun::reduced(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            return RatFun::reduced(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den);
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &d2) + &(&rhs.num * &d1);
        if t.is_zero() {
            return RatFun::zero();
        }
        let g2 = t.gcd(&g);
        let num = t.div_exact(&g2).expect("gcd divides");
        let den = &d1 * &rhs.den.div_exact(&g2).expect("gcd divides");
        RatFun::reduced(num, den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cut = |p: &Poly, g: &Poly| if g.is_one() { p.clone() } else { p.div_exact(g).expect("gcd divides") };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        let lc = den.leading().recip();
        RatFun::reduced(num.scale(&lc), den.scale(&lc))
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatFun) -> RatFun {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::frac;

    #[test]
    fn normalization() {
        let f = RatFun::new(Poly::from_ints(&[-2, 2]), Poly::from_ints(&[-2, 0, 2]));
        assert_eq!(f.num(), &Poly::one());
        assert_eq!(f.den(), &Poly::from_ints(&[1, 1]));
        let g = RatFun::new(Poly::from_ints(&[1]), Poly::from_ints(&[0, -2]));
        assert_eq!(g.to_string(), "(-1/2)/z");
        assert_eq!(RatFun::new(Poly::z(), Poly::from_ints(&[1, 0, 1])).to_string(), "z/(z^2 + 1)");
    }

    #[test]
    fn calculus() {
        let f = RatFun::z_pow(-1);
        assert_eq!(f.derivative(), RatFun::z_pow(-2).scale(&int(-1)));
        let g = RatFun::new(Poly::one(), Poly::from_ints(&[1, 1]));
        let sq = RatFun::from_poly(Poly::from_ints(&[0, 0, 1]));
        assert_eq!(g.compose(&sq), RatFun::new(Poly::one(), Poly::from_ints(&[1, 0, 1])));
        assert_eq!(g.eval(&int(1)), Some(frac(1, 2)));
        assert_eq!(g.eval(&int(-1)), None);
        assert_eq!(RatFun::z_pow(3).ord_inf(), -3);
        assert_eq!(RatFun::z_pow(-2).ord_at(&Poly::z()), -2);
    }
}
