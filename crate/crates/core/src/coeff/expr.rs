//! Scalar expressions in `q` and `r`, evaluated in Q(q) with `r = q^3`.
//!
//! Grammar: `+ - * /`, `^` with an integer exponent, parentheses or braces,
//! rational literals and the symbols `q`, `r`. Juxtaposition multiplies, so
//! `2q` and `(q+1)(q-1)` are accepted. Unicode `−` and `·` are normalized.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Q,
    R,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        let t = match c {
            c if c.is_whitespace() => continue,
            'q' => Tok::Q,
            'r' => Tok::R,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' | '{' => Tok::Open,
            ')' | '}' => Tok::Close,
            d if d.is_ascii_digit() => {
                let start = i - 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                Tok::Num(lit.parse().unwrap())
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        };
        out.push(t);
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<RationalFunction> {
        let mut acc = self.product()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.product()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.unary()?;
            } else if self.eat(&Tok::Slash) {
                acc = acc.div(&self.unary()?)?;
            } else if matches!(self.peek(), Some(Tok::Q | Tok::R | Tok::Open | Tok::Num(_))) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.unary()?);
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let e = self.exponent()?;
        base.pow(e)
    }

    fn exponent(&mut self) -> Result<i64> {
        let braced = self.eat(&Tok::Open);
        let neg = self.eat(&Tok::Minus);
        let n = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                i64::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?
            }
            _ => return Err(Error::Parse("expected integer exponent".into())),
        };
        if braced && !self.eat(&Tok::Close) {
            return Err(Error::Parse("unclosed exponent".into()));
        }
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek().cloned() {
            Some(Tok::Q) => {
                self.pos += 1;
                Ok(RationalFunction::q_pow(1))
            }
            Some(Tok::R) => {
                self.pos += 1;
                Ok(RationalFunction::q_pow(3))
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RationalFunction::from_rational(BigRational::from_integer(n)))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(&Tok::Close) {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Evaluates an expression in `q` and `r` after substituting `r = q^3`.
pub fn eval_formula(expr: &str) -> Result<RationalFunction> {
    let toks = lex(expr)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {expr:?}")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::qint;

    #[test]
    fn x_is_delta_squared() {
        let x = eval_formula("(r - r^-1)/(q - q^-1) + 1").unwrap();
        let d = qint(2);
        assert_eq!(x, &d * &d);
        assert_eq!(eval_formula("(q+q^{−1})^2").unwrap(), x);
    }

    #[test]
    fn simple_substitutions() {
        assert_eq!(eval_formula("r^-1").unwrap(), RationalFunction::q_pow(-3));
        assert_eq!(eval_formula("r·q^{−1}").unwrap(), RationalFunction::q_pow(2));
        assert_eq!(eval_formula("2q - q*2").unwrap(), RationalFunction::zero());
        assert_eq!(eval_formula("1/(q - q)"), Err(Error::DivisionByZero));
        assert!(eval_formula("q +").is_err());
        assert!(eval_formula("(q").is_err());
    }
}
