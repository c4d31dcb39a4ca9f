//! Numeric arguments with symbolic constants: `pi`, `pi/2`, `-pi/3`,
//! `3*pi/4`, `1/sqrt2`, `sqrt(3)/2`, plus plain decimals.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use anyhow::{anyhow, bail, Result};

pub fn parse_value(text: &str) -> Result<f64> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        bail!("unexpected `{}` in `{text}`", &text[p.pos..]);
    }
    if !v.is_finite() {
        bail!("`{text}` evaluates to {v}");
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
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

    fn at_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        let end = self.pos + w.len();
        self.src.get(self.pos..end) == Some(w.as_bytes())
            && !self.src.get(end).is_some_and(u8::is_ascii_alphanumeric)
    }

    fn expr(&mut self) -> Result<f64> {
        let mut v = self.term()?;
        loop {
            if self.eat(b'+') {
                v += self.term()?;
            } else if self.eat(b'-') {
                v -= self.term()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<f64> {
        let mut v = self.unary()?;
        loop {
            if self.eat(b'*') {
                v *= self.unary()?;
            } else if self.eat(b'/') {
                // x/sqrt2 as x * (1/sqrt2) so that `1/sqrt2` is correctly rounded
                if self.at_word("sqrt2") {
                    self.pos += 5;
                    v *= FRAC_1_SQRT_2;
                } else {
                    v /= self.unary()?;
                }
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<f64> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<f64> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    bail!("missing `)`");
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.word(),
            Some(c) => Err(anyhow!("unexpected `{}`", c as char)),
            None => Err(anyhow!("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit() || *c == b'.')
        {
            self.pos += 1;
        }
        // exponent, e.g. 1e-3
        if matches!(self.src.get(self.pos), Some(b'e' | b'E'))
            && self
                .src
                .get(self.pos + 1)
                .is_some_and(|c| c.is_ascii_digit() || *c == b'-' || *c == b'+')
        {
            self.pos += 2;
            while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos])?;
        text.parse().map_err(|_| anyhow!("bad number `{text}`"))
    }

    fn word(&mut self) -> Result<f64> {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(u8::is_ascii_alphanumeric)
        {
            self.pos += 1;
        }
        match std::str::from_utf8(&self.src[start..self.pos])? {
            "pi" => Ok(PI),
            "sqrt2" => Ok(SQRT_2),
            "sqrt" => {
                if !self.eat(b'(') {
                    bail!("expected `(` after sqrt");
                }
                let v = self.expr()?;
                if !self.eat(b')') {
                    bail!("missing `)`");
                }
                Ok(v.sqrt())
            }
            w => Err(anyhow!("unknown symbol `{w}`")),
        }
    }
}
