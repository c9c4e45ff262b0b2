use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::polyhedral::Rat;

/// Byte cursor shared by the text parsers; positions are byte offsets.
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }

    pub fn starts_with_digit(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit())
    }

    pub fn natural(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected a number");
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    /// `[-]a` or `[-]a/b` with `b > 0`.
    pub fn rational(&mut self) -> Result<Rat> {
        let neg = self.eat('-');
        let num = self.natural()?;
        let den = if self.eat('/') {
            let at = self.pos;
            let d = self.natural()?;
            if d.is_zero() {
                return Err(Error::Parse {
                    position: at,
                    message: "zero denominator".into(),
                });
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = Rat::new(num, den);
        Ok(if neg { -r } else { r })
    }

    /// A rational exponent, optionally wrapped in `()` or `{}`.
    pub fn exponent(&mut self) -> Result<Rat> {
        for (open, close) in [('(', ')'), ('{', '}')] {
            if self.eat(open) {
                let r = self.rational()?;
                self.expect(close)?;
                return Ok(r);
            }
        }
        self.rational()
    }
}
