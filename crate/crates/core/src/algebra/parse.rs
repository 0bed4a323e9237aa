//! Parser for rational functions in one variable, e.g. `(z^2 + 1)/(2*z - 3/4)`.

use num_bigint::BigInt;

use super::ratfun::RatFun;
use super::rational::Rational;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    var: &'a str,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse { offset: self.pos, expected: expected.to_string() })
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::Parse { offset: at, expected: "nonzero divisor".into() });
                    }
                    acc = &acc / &d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let Some(e) = self.integer() else {
            return self.err("integer exponent");
        };
        let e: i64 = e.try_into().map_err(|_| Error::Parse { offset: at, expected: "small exponent".into() })?;
        if neg && base.is_zero() {
            return Err(Error::Parse { offset: at, expected: "invertible base".into() });
        }
        Ok(base.pow(if neg { -e } else { e }))
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().expect("digit present");
                Ok(RatFun::constant(Rational::from_integer(n)))
            }
            Some(_) if self.src[self.pos..].starts_with(self.var.as_bytes()) => {
                self.pos += self.var.len();
                Ok(RatFun::z())
            }
            _ => self.err(&format!("number, '{}' or '('", self.var)),
        }
    }
}

/// Parses a rational function in the variable `var`.
pub fn parse_ratfun(src: &str, var: &str) -> Result<RatFun> {
    let mut c = Cursor { src: src.as_bytes(), pos: 0, var };
    let f = c.expr()?;
    if c.peek().is_some() {
        return c.err("operator or end of input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;
    use crate::algebra::rational::{frac, int};

    #[test]
    fn parses_and_prints() {
        let f = parse_ratfun("(z^2 + 1)/(2*z)", "z").unwrap();
        assert_eq!(f.num(), &Poly::from_coeffs(vec![frac(1, 2), int(0), frac(1, 2)]));
        assert_eq!(parse_ratfun(&f.to_string(), "z").unwrap(), f);
        assert_eq!(parse_ratfun("z^-2 - 3/4", "z").unwrap().to_string(), "(-3/4*z^2 + 1)/z^2");
        assert_eq!(parse_ratfun("t^2+1", "t").unwrap(), RatFun::from_poly(Poly::from_ints(&[1, 0, 1])));
        assert!(matches!(parse_ratfun("z +", "z"), Err(Error::Parse { offset: 3, .. })));
        assert!(parse_ratfun("1/0", "z").is_err());
    }
}
