//! Reader for the `(num)/(den)` text form used by fixtures.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FieldError, Poly, RatFunc, Rational};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    what: &'static str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, what: &'static str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
            what,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), FieldError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, message: String) -> FieldError {
        FieldError::Parse {
            what: self.what,
            offset: self.pos,
            message,
        }
    }

    fn integer(&mut self) -> Result<BigInt, FieldError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits".into()));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("validated digits"))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// `coef`, `coef*t^k`, `t^k`; the sign is handled by the caller.
    fn term(&mut self) -> Result<Poly, FieldError> {
        let mut coef = Rational::one();
        let mut has_coef = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let n = self.integer()?;
            coef = Rational::from_integer(n);
            // a slash followed by a digit is part of the literal, otherwise it
            // belongs to the enclosing fraction
            let save = self.pos;
            if self.eat(b'/') && self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(self.error("zero denominator in coefficient".into()));
                }
                coef /= Rational::from_integer(d);
            } else {
                self.pos = save;
            }
            has_coef = true;
            if !self.eat(b'*') {
                return Ok(Poly::constant(coef));
            }
        }
        if !self.eat(b't') {
            return Err(if has_coef {
                self.error("expected 't' after '*'".into())
            } else {
                self.error("expected a coefficient or 't'".into())
            });
        }
        let mut k = 1usize;
        if self.eat(b'^') {
            let e = self.integer()?;
            k = e
                .try_into()
                .map_err(|_| self.error("exponent too large".into()))?;
        }
        Ok(Poly::monomial(coef, k))
    }

    fn poly(&mut self) -> Result<Poly, FieldError> {
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                break;
            };
            let term = self.term()?;
            acc = if neg { &acc - &term } else { &acc + &term };
            first = false;
        }
        Ok(acc)
    }
}

/// Parses a polynomial in `t` in the rendering produced by `Display`.
pub fn parse_poly(src: &str) -> Result<Poly, FieldError> {
    let mut c = Cursor::new(src, "polynomial");
    let p = c.poly()?;
    if !c.at_end() {
        return Err(c.error("trailing input".into()));
    }
    Ok(p)
}

/// Parses `(num)/(den)`, `(num)`, or a bare polynomial.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc, FieldError> {
    let mut c = Cursor::new(src, "rational function");
    let result = if c.eat(b'(') {
        let num = c.poly()?;
        c.expect(b')')?;
        let den = if c.eat(b'/') {
            c.expect(b'(')?;
            let den = c.poly()?;
            c.expect(b')')?;
            den
        } else {
            Poly::one()
        };
        RatFunc::new(num, den).map_err(|_| c.error("zero denominator".into()))?
    } else {
        RatFunc::from_poly(c.poly()?)
    };
    if !c.at_end() {
        return Err(c.error("trailing input".into()));
    }
    Ok(result)
}
