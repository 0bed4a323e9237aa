//! Evaluation of surface expressions to operators over `Q(z)`.

use conequant_core::algebra::ratfun::RatFun;
use conequant_core::algebra::ring::RatFunRing;
use conequant_core::{Error, PsiDO};

use crate::expr::Expr;

pub type Op = PsiDO<RatFunRing>;

/// Evaluates with `D` read as `D_X` for the ring's vector field. Products
/// and inverses of non-exact results are kept down to `top - window`.
#[derive(Clone, Debug)]
pub struct Evaluator {
    pub ring: RatFunRing,
    pub window: i64,
}

impl Evaluator {
    pub fn new(ring: RatFunRing, window: i64) -> Self {
        Evaluator { ring, window }
    }

    pub fn standard(window: i64) -> Self {
        Self::new(RatFunRing::standard(), window)
    }

    fn scalar(&self, f: RatFun) -> Op {
        PsiDO::scalar(self.ring.clone(), f)
    }

    pub fn mul(&self, a: &Op, b: &Op) -> Result<Op, Error> {
        a.mul_to(b, Some(a.top() + b.top() - self.window))
    }

    pub fn inv(&self, a: &Op) -> Result<Op, Error> {
        if let Some(f) = as_scalar(a) {
            return f.inv().map(|g| self.scalar(g)).ok_or(Error::DivisionByZero);
        }
        a.invert_to(Some(-a.top() - self.window))
    }

    pub fn eval(&self, e: &Expr) -> Result<Op, Error> {
        Ok(match e {
            Expr::Num(q) => self.scalar(RatFun::constant(q.clone())),
            Expr::Z => self.scalar(RatFun::z()),
            Expr::W => self.scalar(RatFun::z_pow(-1)),
            Expr::D => PsiDO::d(self.ring.clone()),
            Expr::Neg(a) => self.eval(a)?.neg(),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?)?,
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?)?,
            Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Pow(a, n) => {
                if **a == Expr::D {
                    return Ok(PsiDO::monomial(self.ring.clone(), RatFun::one(), *n));
                }
                let base = self.eval(a)?;
                if let Some(f) = as_scalar(&base) {
                    if *n < 0 && f.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    return Ok(self.scalar(f.pow(*n)));
                }
                let base = if *n < 0 { self.inv(&base)? } else { base };
                let mut acc = PsiDO::one(self.ring.clone());
                for _ in 0..n.unsigned_abs() {
                    acc = self.mul(&acc, &base)?;
                }
                acc
            }
        })
    }

    /// Evaluates an expression that must denote a rational function.
    pub fn function(&self, e: &Expr) -> Result<RatFun, Error> {
        as_scalar(&self.eval(e)?).ok_or_else(|| Error::InvalidInput(format!("'{e}' is not a function of z")))
    }
}

/// The coefficient of an exact degree-zero operator.
pub fn as_scalar(t: &Op) -> Option<RatFun> {
    if !t.is_exact() {
        return None;
    }
    if t.is_exact_zero() {
        return Some(RatFun::zero());
    }
    match t.terms().as_slice() {
        [(0, c)] => Some(c.clone()),
        _ => None,
    }
}

/// `g` from a vector field written `g*D` or just `g`.
pub fn vector_field(t: &Op) -> Result<RatFun, Error> {
    if let Some(g) = as_scalar(t) {
        return nonzero(g);
    }
    match (t.is_exact(), t.terms().as_slice()) {
        (true, [(1, g)]) => nonzero(g.clone()),
        _ => Err(Error::InvalidInput(format!("vector field must have the form g*D, got {t}"))),
    }
}

fn nonzero(g: RatFun) -> Result<RatFun, Error> {
    if g.is_zero() {
        Err(Error::InvalidInput("zero vector field".into()))
    } else {
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use conequant_core::algebra::parse::parse_ratfun;

    fn ev(s: &str) -> Op {
        Evaluator::standard(16).eval(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(ev("D*z").to_string(), ev("z*D + 1").to_string());
        assert_eq!(ev("D^-1*z").to_string(), "z*D^-1 - D^-2");
        let c = ev("D^-1*z - z*D^-1");
        assert!(c.is_exact());
        assert_eq!(c.to_string(), "-D^-2");
    }

    #[test]
    fn inverses() {
        let t = ev("(1 - D^-1)^-1");
        assert_eq!(t.lo(), Some(-16));
        assert!((0..=15).all(|k| t.coeff(-k).unwrap().is_one()));
        let f = as_scalar(&ev("(z^2 + 1)^-1")).unwrap();
        assert_eq!(&f * &parse_ratfun("z^2 + 1", "z").unwrap(), RatFun::one());
        assert_eq!(ev("w").to_string(), ev("z^-1").to_string());
        assert!(Evaluator::standard(8).eval(&parse("(z - z)^-1").unwrap()).is_err());
    }

    #[test]
    fn vector_fields() {
        assert_eq!(vector_field(&ev("z*D")).unwrap(), RatFun::z());
        assert_eq!(vector_field(&ev("z^2")).unwrap(), RatFun::z_pow(2));
        assert!(vector_field(&ev("D^2")).is_err());
    }
}
