//! Canonical text form of coefficients.
//!
//! Terms are written in decreasing order of the `a` exponent, then the `q`
//! exponent, e.g. `a^2*q^(-1/2) - 3`. Fractions are written `(num)/(den)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::laurent::{Exp, HalfLaurent};
use super::value::SkeinValue;
use crate::error::{Error, Result};

fn write_monomial(f: &mut fmt::Formatter<'_>, e: Exp, c: &BigInt, first: bool) -> fmt::Result {
    let sign = c.is_negative();
    match (first, sign) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let abs = c.abs();
    let mut factors = Vec::new();
    match e.a {
        0 => {}
        1 => factors.push("a".to_string()),
        k if k > 1 => factors.push(format!("a^{k}")),
        k => factors.push(format!("a^({k})")),
    }
    if e.q2 != 0 {
        if e.q2 % 2 == 0 {
            match e.q2 / 2 {
                1 => factors.push("q".to_string()),
                k if k > 1 => factors.push(format!("q^{k}")),
                k => factors.push(format!("q^({k})")),
            }
        } else {
            factors.push(format!("q^({}/2)", e.q2));
        }
    }
    if factors.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        f.write_str(&factors.join("*"))
    } else {
        write!(f, "{abs}*{}", factors.join("*"))
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            write_monomial(f, *e, c, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Display for SkeinValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator().is_one() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "({})/({})", self.numerator(), self.denominator())
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { src: s.as_bytes(), pos: 0 }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{}`", b as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i32> {
        let at = self.pos;
        i32::try_from(self.integer()?).map_err(|_| Error::parse(at, "exponent out of range"))
    }

    /// Exponent in half-units (`q`) or units (`a`, with `halves == false`).
    fn exponent(&mut self, halves: bool) -> Result<i32> {
        if !self.eat(b'^') {
            return Ok(if halves { 2 } else { 1 });
        }
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let n = self.small_int()?;
        let value = if self.eat(b'/') {
            let at = self.pos;
            if self.small_int()? != 2 || !halves {
                return Err(Error::parse(at, "only half-integer powers of q are allowed"));
            }
            n
        } else if halves {
            2 * n
        } else {
            n
        };
        if paren {
            self.expect(b')')?;
        }
        Ok(if neg { -value } else { value })
    }

    fn factor(&mut self) -> Result<HalfLaurent> {
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                let k = self.exponent(false)?;
                Ok(HalfLaurent::monomial(1, k, 0))
            }
            Some(b'q') => {
                self.pos += 1;
                let k = self.exponent(true)?;
                Ok(HalfLaurent::monomial(1, 0, k))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(HalfLaurent::constant(self.integer()?)),
            Some(c) => Err(Error::parse(self.pos, format!("unexpected `{}`", c as char))),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn product(&mut self) -> Result<HalfLaurent> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn sum(&mut self) -> Result<HalfLaurent> {
        let mut acc = if self.eat(b'-') { -self.product()? } else { self.product()? };
        loop {
            if self.eat(b'+') {
                acc += &self.product()?;
            } else if self.eat(b'-') {
                acc -= &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(Error::parse(self.pos, format!("trailing input at `{}`", c as char))),
        }
    }
}

impl FromStr for HalfLaurent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let x = p.sum()?;
        p.finish()?;
        Ok(x)
    }
}

impl FromStr for SkeinValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let num = p.sum()?;
        let den = if p.eat(b'/') { p.sum()? } else { HalfLaurent::one() };
        let at = p.pos;
        p.finish()?;
        if den.is_zero() {
            return Err(Error::parse(at, "zero denominator"));
        }
        SkeinValue::new(num, den)
    }
}
