//! Recursive-descent parser for polynomial text such as "3/2*x1^2*x2 - x3 + 1".

use num_bigint::BigInt;
use num_traits::Zero;

use super::{LaurentPoly, MultiPoly};
use crate::error::{Error, Result};
use crate::Rational;

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.nvars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some('/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    let c = match f.as_constant() {
                        Some(c) if !c.is_zero() => c,
                        _ => return self.err("division by a non-constant or zero"),
                    };
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            self.skip_ws();
            let k: u32 = match self.digits() {
                Some(d) => d.parse().map_err(|_| Error::Parse("exponent too large".into()))?,
                None => return self.err("expected exponent"),
            };
            if neg {
                return match base.invert_monomial() {
                    Some(inv) => Ok(inv.pow(k)),
                    None => self.err("negative power of a non-monomial"),
                };
            }
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some('x') => {
                self.pos += 1;
                let d = match self.digits() {
                    Some(d) => d,
                    None => return self.err("expected variable index"),
                };
                let i: usize = d.parse().map_err(|_| Error::Parse("bad variable index".into()))?;
                if i == 0 || i > self.nvars {
                    return self.err(&format!("unknown variable x{i} (have x1..x{})", self.nvars));
                }
                Ok(LaurentPoly::var(self.nvars, i - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                let n: BigInt = d.parse().unwrap();
                Ok(LaurentPoly::constant(self.nvars, Rational::from_integer(n)))
            }
            Some(c) => self.err(&format!("unexpected symbol {c:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub(super) fn parse_laurent(s: &str, nvars: usize) -> Result<LaurentPoly> {
    let mut p = Parser { src: s, chars: s.chars().collect(), pos: 0, nvars };
    if p.peek().is_none() {
        return p.err("empty polynomial");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub(super) fn parse_poly(s: &str, nvars: usize) -> Result<MultiPoly> {
    let l = parse_laurent(s, nvars)?;
    l.to_poly().ok_or_else(|| Error::Parse(format!("negative exponent in polynomial {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_symbols() {
        assert!(parse_poly("x1 + y", 2).is_err());
        assert!(parse_poly("x3", 2).is_err());
        assert!(parse_poly("x0", 2).is_err());
        assert!(parse_poly("x1^-1", 1).is_err());
        assert!(parse_poly("", 1).is_err());
        assert!(parse_poly("(x1", 1).is_err());
        assert!(parse_poly("x1/x2", 2).is_err());
    }

    #[test]
    fn parses_nested_expressions() {
        let a = parse_poly("(x1 - 1)*(x2 - 1)", 2).unwrap();
        let b = parse_poly("x1*x2 - x1 - x2 + 1", 2).unwrap();
        assert_eq!(a, b);
        let c = parse_poly("-(x1+1)^2/2", 1).unwrap();
        assert_eq!(c.to_string(), "-1/2*x1^2 - x1 - 1/2");
    }

    #[test]
    fn laurent_exponents() {
        let l = parse_laurent("x1^2*x2^-1", 2).unwrap();
        assert_eq!(l.to_string(), "x1^2*x2^-1");
        let m = parse_laurent("(2*x1)^-2", 1).unwrap();
        assert_eq!(m.to_string(), "1/4*x1^-2");
    }
}
