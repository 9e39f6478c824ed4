//! Text syntax for scalars.
//!
//! The parser accepts arithmetic expressions over the atoms `z` (the root
//! `ζ_m`), `t` (the transcendental, only when enabled) and decimal integers,
//! combined with `+ - * /`, integer powers `^k` (negative allowed) and
//! parentheses. Canonical printing (`Display`) produces a subset of this
//! language, so `parse(print(x)) == x` and `print(parse(s)) == s` for every
//! canonical `s`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::cyclotomic::Cyclotomic;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Parses a scalar of conductor `m`; `t` is accepted only if
/// `transcendental` is set.
pub fn parse_scalar(src: &str, m: u32, transcendental: bool) -> Result<Scalar> {
    let mut p = Parser {
        chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        m,
        transcendental,
        src,
    };
    let value = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(value)
}

/// Parses a scalar that must be constant.
pub fn parse_cyclotomic(src: &str, m: u32) -> Result<Cyclotomic> {
    match parse_scalar(src, m, false)? {
        Scalar::Const(c) => Ok(c),
        Scalar::Func(_) => unreachable!("t is rejected when not transcendental"),
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    m: u32,
    transcendental: bool,
    src: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("scalar {:?}: {what} at offset {}", self.src, self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| self.error("division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = self.integer()?;
        let e: i64 = e
            .try_into()
            .map_err(|_| self.error("exponent out of range"))?;
        let mut acc = Scalar::one(self.m);
        for _ in 0..e {
            acc = &acc * &base;
        }
        if neg {
            acc = acc.inv().map_err(|_| self.error("zero to a negative power"))?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some('z') => {
                self.pos += 1;
                Ok(Scalar::Const(Cyclotomic::zeta(self.m)))
            }
            Some('t') => {
                if !self.transcendental {
                    return Err(self.error("'t' needs a transcendental field"));
                }
                self.pos += 1;
                Ok(Scalar::t(self.m))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Scalar::Const(Cyclotomic::from_rational(
                    self.m,
                    BigRational::from_integer(n),
                )))
            }
            _ => Err(self.error("unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cyclotomic_sums() {
        let x = parse_scalar("1 + z + z^2", 3, false).unwrap();
        assert!(x.is_zero());
        let y = parse_scalar("3/2*z^5", 4, false).unwrap();
        assert_eq!(y.to_string(), "3/2*z");
        let inv = parse_scalar("z^-1", 8, false).unwrap();
        assert_eq!(inv.to_string(), "-z^3");
    }

    #[test]
    fn parses_function_field_elements() {
        let f = parse_scalar("(t^2+1)/t", 4, true).unwrap();
        assert_eq!(f.to_string(), "(t^2+1)/(t)");
        assert_eq!(parse_scalar(&f.to_string(), 4, true).unwrap(), f);
        let g = parse_scalar("((-1)*t^2+(-1))/(t)", 4, true).unwrap();
        assert_eq!(g, -&f);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_scalar("t", 4, false).is_err());
        assert!(parse_scalar("1/0", 4, false).is_err());
        assert!(parse_scalar("1+", 4, false).is_err());
        assert!(parse_scalar("(1", 4, false).is_err());
        assert!(parse_scalar("x", 4, false).is_err());
    }
}
