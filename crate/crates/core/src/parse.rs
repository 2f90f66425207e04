//! Reader for the polynomial syntax produced by `Display`.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := rational | ident | '(' expr ')'
//! rational := int ('/' nat)?
//! ident  := [A-Za-z][A-Za-z0-9]*
//! ```
//!
//! Multiplication is always explicit, so `3x2` is rejected.

use std::sync::Arc;

use thiserror::Error;

use crate::poly::MultiPoly;
use crate::scalar::Coeff;
use crate::vars::VarTable;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown variable `{name}` at column {column}")]
    UnknownVariable { name: String, column: usize },
}

impl ParseError {
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. } | ParseError::UnknownVariable { column, .. } => *column,
        }
    }
}

pub fn parse_poly<C: Coeff>(table: &Arc<VarTable>, text: &str) -> Result<MultiPoly<C>, ParseError> {
    let mut p = Parser {
        table,
        src: text.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(value)
}

struct Parser<'a> {
    table: &'a Arc<VarTable>,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            column: self.pos + 1,
            message: message.into(),
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

    fn expr<C: Coeff>(&mut self) -> Result<MultiPoly<C>, ParseError> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<C: Coeff>(&mut self) -> Result<MultiPoly<C>, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor<C: Coeff>(&mut self) -> Result<MultiPoly<C>, ParseError> {
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base<C: Coeff>(&mut self) -> Result<MultiPoly<C>, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits();
                let mut text = num;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.digits();
                    if den.is_empty() {
                        return Err(self.error("expected denominator"));
                    }
                    if den.bytes().all(|d| d == b'0') {
                        return Err(self.error("zero denominator"));
                    }
                    text = format!("{text}/{den}");
                }
                self.reject_glued()?;
                let value = C::from_str(&text).map_err(|_| self.error("bad number"))?;
                Ok(MultiPoly::constant(self.table, value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match self.table.index(&name) {
                    Some(i) => Ok(MultiPoly::var(self.table, i)),
                    None => Err(ParseError::UnknownVariable {
                        name,
                        column: start + 1,
                    }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// A number directly followed by a letter or `(` is implicit multiplication.
    fn reject_glued(&self) -> Result<(), ParseError> {
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'(' => Err(self.error("explicit `*` required")),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    type P = MultiPoly<Rat>;

    fn table() -> Arc<VarTable> {
        VarTable::new(&["x0", "x1", "x2", "x3", "x4"], &["s"]).unwrap()
    }

    fn parse(t: &Arc<VarTable>, s: &str) -> Result<P, ParseError> {
        parse_poly(t, s)
    }

    #[test]
    fn reads_generators() {
        let t = table();
        let f0 = parse(&t, "x3^2 - x2*x4").unwrap();
        let expected = &P::var(&t, 3).pow(2) - &(&P::var(&t, 2) * &P::var(&t, 4));
        assert_eq!(f0, expected);
        assert!(parse(&t, "0").unwrap().is_zero());
        assert_eq!(
            parse(&t, "3*x2^2 - 4*x1*x3 + x0*x4").unwrap().to_string(),
            "x0*x4 - 4*x1*x3 + 3*x2^2"
        );
    }

    #[test]
    fn rationals_and_parentheses() {
        let t = table();
        let p = parse(&t, "1/2*s^2*(x2 - x0) - 1/16*x3").unwrap();
        let q = parse(&t, "-1/2*s^2*x0 + 1/2*s^2*x2 - 1/16*x3").unwrap();
        assert_eq!(p, q);
        assert_eq!(
            parse(&t, "(x0 + x1)^2").unwrap(),
            parse(&t, "x0^2 + 2*x0*x1 + x1^2").unwrap()
        );
        assert_eq!(parse(&t, "-(x0)").unwrap(), -P::var(&t, 0));
    }

    #[test]
    fn errors_carry_columns() {
        let t = table();
        let e = parse(&t, "3x2^2").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { column: 2, .. }), "{e:?}");
        let e = parse(&t, "x0 + w").unwrap_err();
        assert_eq!(
            e,
            ParseError::UnknownVariable {
                name: "w".into(),
                column: 6
            }
        );
        assert_eq!(parse(&t, "x0 +").unwrap_err().column(), 5);
        assert!(parse(&t, "x0 x1").is_err());
        assert!(parse(&t, "(x0").is_err());
        assert!(parse(&t, "1/0").is_err());
        assert!(parse(&t, "x0^").is_err());
        assert!(parse(&t, "").is_err());
        assert!(parse(&t, "--x0").is_err());
    }

    #[test]
    fn printer_round_trip() {
        let t = table();
        for s in [
            "x3^2 - x2*x4",
            "-7/3*x0^3*s + x1 - 2",
            "(x0 - 2*x1)^3*(s + 1/5)",
            "0",
            "-1",
        ] {
            let p = parse(&t, s).unwrap();
            let again = parse(&t, &p.to_string()).unwrap();
            assert_eq!(p, again, "{s}");
            assert_eq!(p.to_string(), again.to_string());
        }
    }
}
