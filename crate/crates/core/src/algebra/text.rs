//! Parser for the canonical text form written by the `Display` impls.
//!
//! Grammar (whitespace around `+`/`-` is optional):
//!
//! ```text
//! poly   := "0" | ["-"] term (("+" | "-") term)*
//! term   := coeff | [coeff "*"] factor ("*" factor)*
//! coeff  := int ["/" int]
//! factor := name ["^" ["-"] int]
//! ratfunc := poly | "(" poly ")/(" den ")"
//! den    := "(" poly ")" ["^" int] ("*" "(" poly ")" ["^" int])*
//! ```
//!
//! [`parse_expr`] accepts free-form arithmetic with `+ - * / ^` and
//! parentheses, which covers the canonical form as well.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::var::Var;
use crate::algebra::{AlgebraError, Scalar};

/// A product of polynomial powers, kept apart so that a factored
/// denominator survives a parse.
#[derive(Clone)]
struct Factored(Vec<(RatFunc, i32)>);

impl From<RatFunc> for Factored {
    fn from(f: RatFunc) -> Factored {
        Factored(vec![(f, 1)])
    }
}

impl Factored {
    fn is_zero(&self) -> bool {
        self.0.iter().any(|(f, _)| f.is_zero())
    }

    fn neg(mut self) -> Factored {
        self.0.push((RatFunc::int(-1), 1));
        self
    }

    fn mul(mut self, other: Factored) -> Factored {
        self.0.extend(other.0);
        self
    }

    fn pow(self, e: i32) -> Factored {
        Factored(self.0.into_iter().map(|(f, m)| (f, m * e)).collect())
    }

    fn value(&self) -> RatFunc {
        let mut rest = RatFunc::one();
        let mut polys = Vec::new();
        for (f, e) in &self.0 {
            match f.as_poly() {
                Some(p) if !p.is_zero() => polys.push((p.clone(), *e)),
                _ => rest = rest.mul(&f.pow(*e)),
            }
        }
        rest.mul(&RatFunc::from_factors(Poly::one(), polys))
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), AlgebraError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i32, AlgebraError> {
        let neg = self.eat(b'-');
        let n = self.integer()?;
        let v: i32 = i32::try_from(n).map_err(|_| self.error("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn name(&mut self) -> Result<Var, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected variable name"));
        }
        Var::parse(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn term(&mut self) -> Result<(Scalar, Monomial), AlgebraError> {
        let mut coeff = Scalar::one();
        let mut pairs = Vec::new();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let n = self.integer()?;
            let d = if self.eat(b'/') { self.integer()? } else { BigInt::one() };
            if d.is_zero() {
                return Err(self.error("zero denominator"));
            }
            coeff = Scalar::new(n, d);
            if !self.eat(b'*') {
                return Ok((coeff, Monomial::one()));
            }
        }
        loop {
            let v = self.name()?;
            let e = if self.eat(b'^') { self.small_int()? } else { 1 };
            pairs.push((v, e));
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((coeff, Monomial::from_pairs(pairs)))
    }

    fn poly(&mut self) -> Result<Poly, AlgebraError> {
        let mut terms = Vec::new();
        let mut neg = self.eat(b'-');
        loop {
            let (c, m) = self.term()?;
            terms.push((m, if neg { -c } else { c }));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                _ => break,
            }
        }
        Ok(Poly::from_terms(terms))
    }

    fn expr(&mut self) -> Result<Factored, AlgebraError> {
        let neg = self.eat(b'-');
        let first = self.product()?;
        if !matches!(self.peek(), Some(b'+' | b'-')) {
            return Ok(if neg { first.neg() } else { first });
        }
        let mut acc = first.value();
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.product()?.value());
            } else if self.eat(b'-') {
                acc = acc.sub(&self.product()?.value());
            } else {
                return Ok(Factored::from(acc));
            }
        }
    }

    fn product(&mut self) -> Result<Factored, AlgebraError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(self.power()?);
            } else if self.eat(b'/') {
                let d = self.power()?;
                if d.is_zero() {
                    return Err(self.error("division by zero"));
                }
                acc = acc.mul(d.pow(-1));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Factored, AlgebraError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = if self.eat(b'(') {
            let e = self.small_int()?;
            self.expect(b')')?;
            e
        } else {
            self.small_int()?
        };
        if e < 0 && base.is_zero() {
            return Err(self.error("division by zero"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Factored, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Factored::from(RatFunc::constant(Scalar::from_integer(self.integer()?)))),
            Some(_) => Ok(Factored::from(RatFunc::var(self.name()?))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn finish(&mut self) -> Result<(), AlgebraError> {
        if self.peek().is_some() {
            Err(self.error("trailing input"))
        } else {
            Ok(())
        }
    }
}

pub fn parse_poly(s: &str) -> Result<Poly, AlgebraError> {
    let mut c = Cursor::new(s);
    let p = c.poly()?;
    c.finish()?;
    Ok(p)
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc, AlgebraError> {
    let mut c = Cursor::new(s);
    if c.peek() != Some(b'(') {
        let p = c.poly()?;
        c.finish()?;
        return Ok(RatFunc::from_poly(p));
    }
    c.expect(b'(')?;
    let num = c.poly()?;
    c.expect(b')')?;
    let mut den = RatFunc::one();
    if c.eat(b'/') {
        c.expect(b'(')?;
        loop {
            c.expect(b'(')?;
            let f = c.poly()?;
            c.expect(b')')?;
            let e = if c.eat(b'^') { c.small_int()? } else { 1 };
            if f.is_zero() || e < 0 {
                return Err(c.error("invalid denominator factor"));
            }
            den = den.mul(&RatFunc::from_factors(Poly::one(), [(f, -e)]));
            if !c.eat(b'*') {
                break;
            }
        }
        c.expect(b')')?;
    }
    c.finish()?;
    Ok(RatFunc::from_poly(num).mul(&den))
}

/// Free-form rational expression such as `(1 - t*x2/x1)^2/(1 - q)`.
pub fn parse_expr(s: &str) -> Result<RatFunc, AlgebraError> {
    let mut c = Cursor::new(s);
    let e = c.expr()?;
    c.finish()?;
    Ok(e.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_form_expressions() {
        let e = parse_expr("(1 - t)*(1 - q*t)/((1 - q)*(1 - q^2))").unwrap();
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        assert_eq!(parse_expr("x1^-1*x1").unwrap(), RatFunc::one());
        assert_eq!(parse_expr("2/4 - 1/2").unwrap(), RatFunc::zero());
        assert!(parse_expr("1/(q - q)").is_err());
        assert!(parse_expr("(q").is_err());
    }

    #[test]
    fn parses_signs_and_fractions() {
        let p = parse_poly("-3/4*q^2*x1^-1 + 5 - t").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        assert_eq!(parse_poly("0").unwrap(), Poly::zero());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("q +").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("w^2").is_err());
        assert!(parse_poly("q q").is_err());
    }
}
