//! Surface syntax for operators and functions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' int)?
//! atom   := rational | 'z' | 'w' | 'D' | '(' expr ')' | '-' atom
//! ```

use std::fmt;

use conequant_core::algebra::rational::{fmt_rational, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative literal; negation is always an explicit [`Expr::Neg`].
    Num(Rational),
    Z,
    W,
    D,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Int(i64),
    Z,
    W,
    D,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(q) => format!("number {}", fmt_rational(q)),
            Tok::Int(n) => format!("exponent {n}"),
            Tok::Z => "'z'".into(),
            Tok::W => "'w'".into(),
            Tok::D => "'D'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    /// Next token and its offset. After `^` the caller asks for an exponent.
    fn next(&mut self, exponent: bool) -> Result<(usize, Tok), ParseError> {
        self.skip_ws();
        let at = self.pos;
        let Some(c) = self.src[at..].chars().next() else {
            if exponent {
                return Err(ParseError { offset: at, expected: vec!["integer exponent"], found: Tok::End.describe() });
            }
            return Ok((at, Tok::End));
        };
        if exponent {
            let neg = c == '-' || c == '−';
            if neg {
                self.pos += c.len_utf8();
                self.skip_ws();
            }
            let ds = self.digits();
            let err = || ParseError { offset: at, expected: vec!["integer exponent"], found: format!("'{c}'") };
            if ds.is_empty() {
                return Err(err());
            }
            let n: i64 = ds.parse().map_err(|_| err())?;
            return Ok((at, Tok::Int(if neg { -n } else { n })));
        }
        let single = |t: Tok, this: &mut Self| {
            this.pos += c.len_utf8();
            Ok((at, t))
        };
        match c {
            '0'..='9' => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut q = Rational::from_integer(num);
                if self.src[self.pos..].starts_with('/')
                    && self.src[self.pos + 1..].starts_with(|c: char| c.is_ascii_digit())
                {
                    self.pos += 1;
                    let slash = self.pos;
                    let den: BigInt = self.digits().parse().expect("digits");
                    if den.is_zero() {
                        return Err(ParseError {
                            offset: slash,
                            expected: vec!["nonzero denominator"],
                            found: "0".into(),
                        });
                    }
                    q /= Rational::from_integer(den);
                }
                Ok((at, Tok::Num(q)))
            }
            'z' => single(Tok::Z, self),
            'w' => single(Tok::W, self),
            'D' => single(Tok::D, self),
            '+' => single(Tok::Plus, self),
            '-' | '−' => single(Tok::Minus, self),
            '*' => single(Tok::Star, self),
            '^' => single(Tok::Caret, self),
            '(' => single(Tok::LParen, self),
            ')' => single(Tok::RParen, self),
            _ => Err(ParseError { offset: at, expected: vec!["operand", "operator"], found: format!("'{c}'") }),
        }
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    peeked: Option<(usize, Tok)>,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Result<&(usize, Tok), ParseError> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex.next(false)?);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn bump(&mut self) -> Result<(usize, Tok), ParseError> {
        self.peek()?;
        Ok(self.peeked.take().unwrap())
    }

    fn fail<T>(&mut self, expected: Vec<&'static str>) -> Result<T, ParseError> {
        let (offset, t) = self.peek()?.clone();
        Err(ParseError { offset, expected, found: t.describe() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek()?.1 {
                Tok::Plus => {
                    self.bump()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.peek()?.1 == Tok::Star {
            self.bump()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek()?.1 != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        match self.lex.next(true)? {
            (_, Tok::Int(n)) => Ok(Expr::Pow(Box::new(base), n)),
            _ => unreachable!("exponent lexing yields integers or errors"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        const OPERAND: [&str; 1] = ["operand"];
        match self.peek()?.1.clone() {
            Tok::Num(q) => {
                self.bump()?;
                Ok(Expr::Num(q))
            }
            Tok::Z => self.bump().map(|_| Expr::Z),
            Tok::W => self.bump().map(|_| Expr::W),
            Tok::D => self.bump().map(|_| Expr::D),
            Tok::Minus => {
                self.bump()?;
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            Tok::LParen => {
                self.bump()?;
                let e = self.expr()?;
                if self.peek()?.1 != Tok::RParen {
                    return self.fail(vec!["')'", "operator"]);
                }
                self.bump()?;
                Ok(e)
            }
            _ => self.fail(OPERAND.to_vec()),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { lex: Lexer { src, pos: 0 }, peeked: None };
    let e = p.expr()?;
    if p.peek()?.1 != Tok::End {
        return p.fail(vec!["operator", "end of input"]);
    }
    Ok(e)
}

impl Expr {
    /// 0 for sums, 1 for products, 2 for powers, 3 for atoms.
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) => 1,
            Expr::Pow(..) => 2,
            Expr::Num(q) if q.is_negative() => 0,
            _ => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Minimal parenthesization: printing and reparsing returns the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) if q.is_negative() => write!(f, "-{}", fmt_rational(&-q)),
            Expr::Num(q) => f.write_str(&fmt_rational(q)),
            Expr::Z => f.write_str("z"),
            Expr::W => f.write_str("w"),
            Expr::D => f.write_str("D"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 0)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 1)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 1)?;
                f.write_str("*")?;
                b.write_at(f, 2)
            }
            Expr::Pow(a, n) => {
                a.write_at(f, 3)?;
                write!(f, "^{n}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use conequant_core::algebra::rational::{frac, int};

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn grammar() {
        assert_eq!(parse("D^-1 * z^2").unwrap(), Expr::Mul(b(Expr::Pow(b(Expr::D), -1)), b(Expr::Pow(b(Expr::Z), 2))));
        assert_eq!(
            parse("1 - 2 - z").unwrap(),
            Expr::Sub(b(Expr::Sub(b(Expr::Num(int(1))), b(Expr::Num(int(2))))), b(Expr::Z))
        );
        assert_eq!(parse("-z^2").unwrap(), Expr::Pow(b(Expr::Neg(b(Expr::Z))), 2));
        assert_eq!(parse("3/4*w").unwrap(), Expr::Mul(b(Expr::Num(frac(3, 4))), b(Expr::W)));
        assert_eq!(parse("D^ -2").unwrap(), Expr::Pow(b(Expr::D), -2));
    }

    #[test]
    fn diagnostics() {
        let e = parse("z +").unwrap_err();
        assert_eq!((e.offset, e.expected.clone()), (3, vec!["operand"]));
        assert_eq!(e.to_string(), "syntax error at byte 3: expected operand, found end of input");
        assert_eq!(parse("(z").unwrap_err().offset, 2);
        assert_eq!(parse("z^x").unwrap_err().offset, 2);
        assert_eq!(parse("z^").unwrap_err().expected, vec!["integer exponent"]);
        assert_eq!(parse("z^-").unwrap_err().offset, 2);
        assert_eq!(parse("z $").unwrap_err().offset, 2);
        assert_eq!(parse("1/0").unwrap_err().offset, 2);
        assert_eq!(parse("z z").unwrap_err().expected, vec!["operator", "end of input"]);
    }

    #[test]
    fn printing() {
        for s in ["z - (1 - z)", "(z*D)^2", "-(z + 1)", "z*(D*z)", "--z", "D^-1*z^3 - 1/2*w"] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
    }
}
