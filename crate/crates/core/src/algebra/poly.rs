//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, fmt_rational, int, Rational};

/// Coefficients in ascending order of exponent; the last entry is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `z`.
    pub fn z() -> Self {
        Self::monomial(int(1), 1)
    }

    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Ascending integer coefficients.
    pub fn from_ints(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| int(c)).collect())
    }

    /// `z - a`.
    pub fn linear_root(a: &Rational) -> Self {
        Self::from_coeffs(vec![-a.clone(), int(1)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial at -1; convenient for bounds.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn shift_up(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    /// `self(z + a)`.
    pub fn taylor_shift(&self, a: &Rational) -> Poly {
        self.compose(&Poly::from_coeffs(vec![a.clone(), int(1)]))
    }

    /// `z^d * self(1/z)` for `d >= deg`.
    pub fn reverse(&self, d: usize) -> Poly {
        let mut coeffs = vec![Rational::zero(); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[d - k] = c.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (m, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + m] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Exact quotient; `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if divisor.coeffs.len() == 1 {
            return Some(self.scale(&divisor.coeffs[0].recip()));
        }
        if divisor.coeffs.len() > self.coeffs.len() {
            return None;
        }
        // With a primitive integer divisor the quotient is integral (Gauss).
        let (mut r, da) = self.integerize();
        let (b, cb) = divisor.primitive_part();
        let lb = b.last().unwrap();
        let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let (c, rest) = r[k + b.len() - 1].div_rem(lb);
            if !rest.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (m, bm) in b.iter().enumerate() {
                    r[k + m] -= &c * bm;
                }
            }
            q[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let c = (cb * Rational::from_integer(da)).recip();
        Some(Poly::from_coeffs(q.into_iter().map(|x| Rational::from_integer(x) * &c).collect()))
    }

    /// Integer coefficients and a positive common denominator.
    fn integerize(&self) -> (Vec<BigInt>, BigInt) {
        let den = common_denominator(&self.coeffs);
        let ints = self.coeffs.iter().map(|c| (c.numer() * &den) / c.denom()).collect();
        (ints, den)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Poly::one();
        }
        let (a, _) = self.integerize();
        let (b, _) = other.integerize();
        if let Some(g) = modular::gcd_candidate(&a, &b) {
            if g.is_one() || (self.div_exact(&g).is_some() && other.div_exact(&g).is_some()) {
                return g;
            }
        }
        Poly::from_bigints(&modular::prs_gcd(a, b)).monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Number of times `factor` divides `self` (nonzero `self`, non-constant `factor`).
    pub fn multiplicity(&self, factor: &Poly) -> u32 {
        assert!(!self.is_zero() && factor.deg_i64() > 0);
        let mut n = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(factor) {
            cur = q;
            n += 1;
        }
        n
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient, plus
    /// the rational factor `c` with `self = c * primitive`.
    pub fn primitive_part(&self) -> (Vec<BigInt>, Rational) {
        if self.is_zero() {
            return (Vec::new(), Rational::zero());
        }
        let den = common_denominator(&self.coeffs);
        let mut ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
        (ints, Rational::new(g, den))
    }

    pub fn from_bigints(cs: &[BigInt]) -> Self {
        Self::from_coeffs(cs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// Canonical text in descending powers of `var`.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&mag), mono));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("z"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, da) = self.integerize();
        let (b, db) = rhs.integerize();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let den = da * db;
        Poly::from_coeffs(out.into_iter().map(|c| Rational::new(c, den.clone())).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Gcd helpers over the integers and modulo a word-sized prime.
mod modular {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive, Zero};

    use super::Poly;
    use crate::algebra::rational::Rational;

    const P: u64 = (1 << 61) - 1;

    fn mulm(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn powm(mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        acc
    }

    fn reduce(cs: &[BigInt]) -> Vec<u64> {
        let p = BigInt::from(P);
        let mut v: Vec<u64> = cs.iter().map(|c| c.mod_floor(&p).to_u64().expect("reduced")).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn rem(mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
        let inv = powm(*b.last().unwrap(), P - 2);
        while a.len() >= b.len() {
            let c = mulm(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (k, bk) in b.iter().enumerate() {
                a[shift + k] = (a[shift + k] + P - mulm(c, *bk)) % P;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        a
    }

    /// `r / s` with `r = s u mod P` and both below `sqrt(P / 2)`.
    fn reconstruct(u: u64) -> Option<Rational> {
        let bound = ((P / 2) as f64).sqrt() as i128;
        let (mut r0, mut r1) = (P as i128, u as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 >= bound {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        (s1 != 0 && s1.abs() < bound).then(|| Rational::new(BigInt::from(r1), BigInt::from(s1)))
    }

    /// The monic gcd modulo `P`, lifted back by rational reconstruction.
    /// Its degree bounds the true one, so a candidate dividing both inputs
    /// is the gcd; `None` if the prime is unlucky or reconstruction fails.
    pub fn gcd_candidate(a: &[BigInt], b: &[BigInt]) -> Option<Poly> {
        let (mut x, mut y) = (reduce(a), reduce(b));
        if x.len() != a.len() || y.len() != b.len() {
            return None;
        }
        while !y.is_empty() {
            let r = rem(x, &y);
            x = y;
            y = r;
        }
        let inv = powm(*x.last()?, P - 2);
        let coeffs = x.iter().map(|c| reconstruct(mulm(*c, inv))).collect::<Option<Vec<_>>>()?;
        Some(Poly::from_coeffs(coeffs))
    }

    fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() {
            let g = if v.last().unwrap().is_negative() { -g } else { g };
            for c in v.iter_mut() {
                *c = &*c / &g;
            }
        }
        v
    }

    /// Primitive remainder sequence over the integers.
    pub fn prs_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let lb = b.last().unwrap().clone();
            let mut r = a;
            while r.len() >= b.len() {
                let lr = r.last().unwrap().clone();
                let shift = r.len() - b.len();
                for c in r.iter_mut() {
                    *c *= &lb;
                }
                for (k, bk) in b.iter().enumerate() {
                    r[shift + k] -= &lr * bk;
                }
                r = primitive(r);
            }
            a = b;
            b = primitive(r);
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::frac;

    #[test]
    fn display_descending() {
        let p = Poly::from_coeffs(vec![frac(1, 2), int(-2), int(1)]);
        assert_eq!(p.to_string(), "z^2 - 2*z + 1/2");
        assert_eq!(Poly::from_ints(&[0, -1]).to_string(), "-z");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]); // z^2 - 1
        let b = Poly::from_ints(&[1, 1]); // z + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let c = Poly::from_ints(&[2, 2]);
        assert_eq!(a.gcd(&c), b);
        let (g, s, t) = a.ext_gcd(&Poly::from_ints(&[3, 1]));
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&t * &Poly::from_ints(&[3, 1])), g);
    }

    #[test]
    fn shift_reverse_compose() {
        let p = Poly::from_ints(&[1, 2, 3]);
        let shifted = p.taylor_shift(&int(1));
        assert_eq!(shifted.eval(&int(0)), p.eval(&int(1)));
        assert_eq!(p.reverse(2), Poly::from_ints(&[3, 2, 1]));
        let sq = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(p.compose(&sq), Poly::from_ints(&[1, 0, 2, 0, 3]));
        assert_eq!(Poly::from_ints(&[0, 0, 1]).multiplicity(&Poly::z()), 2);
    }

    #[test]
    fn primitive_part_normalizes() {
        let p = Poly::from_coeffs(vec![frac(-1, 2), frac(3, 4)]);
        let (ints, c) = p.primitive_part();
        assert_eq!(ints, vec![BigInt::from(-2), BigInt::from(3)]);
        assert_eq!(c, frac(1, 4));
    }
}
