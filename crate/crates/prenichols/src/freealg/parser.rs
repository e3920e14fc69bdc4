//! The relation-expression grammar.
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := unit ('*' unit)*
//! unit     := scalar | primary
//! primary  := 'x' digits | '[' expr ',' expr ']' | '(' expr ')'
//! scalar   := 'z' '(' int ',' int ')' | rational
//! rational := ['-'] digits ('/' digits)?
//! ```
//!
//! `x123` denotes the iterated adjoint on generators 1, 2, 3 (indices are
//! single digits); `[ , ]` is the braided bracket; `z(N,k)` is the root of
//! unity `zeta_N^k`. Scalars are central, so a term multiplies its scalar
//! factors into one coefficient times the ordered product of its primaries.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::braiding::BraidingMatrix;
use crate::scalar::Cyclotomic;

use super::{braided_bracket, iterated_word, FreeElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {position}: {message}")]
pub struct ExprError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    braiding: Option<&'a BraidingMatrix>,
    rank: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.err(format!("expected '{}', found '{}'", c as char, got as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn digits(&mut self) -> Result<u64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        s.parse::<u64>()
            .map_err(|_| ExprError {
                position: start,
                message: "integer literal out of range".into(),
            })
    }

    fn integer(&mut self) -> Result<i64, ExprError> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let d = self.digits()? as i64;
        Ok(if neg { -d } else { d })
    }

    fn expr(&mut self) -> Result<FreeElement, ExprError> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.term()?.scale(&Cyclotomic::from_integer(-1))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FreeElement, ExprError> {
        let mut acc = self.unit()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let next = self.unit()?;
            acc = acc.multiply(&next);
        }
        Ok(acc)
    }

    fn unit(&mut self) -> Result<FreeElement, ExprError> {
        match self.peek() {
            Some(b'x') => self.generator_word(),
            Some(b'[') => self.bracket(),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'z') => {
                let s = self.root_literal()?;
                Ok(FreeElement::from_word(self.rank, super::Word::empty(), s))
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let r = self.rational()?;
                Ok(FreeElement::from_word(
                    self.rank,
                    super::Word::empty(),
                    Cyclotomic::from_rational(r),
                ))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn generator_word(&mut self) -> Result<FreeElement, ExprError> {
        let braiding = match self.braiding {
            Some(b) => b,
            None => return self.err("generators are not allowed in a scalar context"),
        };
        self.expect(b'x')?;
        let start = self.pos;
        let mut indices = Vec::new();
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            indices.push(self.text[self.pos] - b'0');
            self.pos += 1;
        }
        if indices.is_empty() {
            return self.err("expected generator indices after 'x'");
        }
        for &i in &indices {
            if i == 0 || (i as usize) > self.rank {
                return Err(ExprError {
                    position: start,
                    message: format!("unknown generator index {} (rank {})", i, self.rank),
                });
            }
        }
        iterated_word(braiding, &indices).map_err(|e| ExprError {
            position: start,
            message: e.to_string(),
        })
    }

    fn bracket(&mut self) -> Result<FreeElement, ExprError> {
        let braiding = match self.braiding {
            Some(b) => b,
            None => return self.err("brackets are not allowed in a scalar context"),
        };
        self.expect(b'[')?;
        let left = self.expr()?;
        self.expect(b',')?;
        let right = self.expr()?;
        self.expect(b']')?;
        braided_bracket(braiding, &left, &right).map_err(|e| ExprError {
            position: self.pos,
            message: e.to_string(),
        })
    }

    fn root_literal(&mut self) -> Result<Cyclotomic, ExprError> {
        self.expect(b'z')?;
        self.expect(b'(')?;
        let n = self.integer()?;
        if n < 1 {
            return self.err("root order must be positive");
        }
        self.expect(b',')?;
        let k = self.integer()?;
        self.expect(b')')?;
        Ok(Cyclotomic::root_of_unity(n as u64, k))
    }

    fn rational(&mut self) -> Result<BigRational, ExprError> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.digits()?;
            if den == 0 {
                return self.err("zero denominator");
            }
            Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
        } else {
            Ok(BigRational::from_integer(BigInt::from(num)))
        }
    }
}

/// Parse an expression over the given braiding. Every relation named in the
/// bundled catalog is expressible in this grammar.
pub fn parse_expression(text: &str, braiding: &BraidingMatrix) -> Result<FreeElement, ExprError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        braiding: Some(braiding),
        rank: braiding.rank(),
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse a scalar-only expression (rationals, `z(N,k)`, sums and products).
pub fn parse_scalar(text: &str) -> Result<Cyclotomic, ExprError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        braiding: None,
        rank: 1,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return p.err("trailing input");
    }
    let mut acc = Cyclotomic::zero(1);
    for (w, c) in e.terms() {
        debug_assert!(w.is_empty());
        acc = acc.add(c);
    }
    Ok(acc)
}
