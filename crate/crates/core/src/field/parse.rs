//! Recursive-descent reader for scalar expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' digits)?
//! atom   := digits | name | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{FieldError, FieldSpec, Scalar};

pub fn parse_scalar(text: &str, field: &FieldSpec) -> Result<Scalar, FieldError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a FieldSpec,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> FieldError {
        FieldError::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Scalar, FieldError> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, FieldError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                if rhs.is_zero() {
                    self.pos = at;
                    return Err(FieldError::DivisionByZero);
                }
                acc = acc / rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, FieldError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, FieldError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected a non-negative integer exponent"));
            }
            let e: i64 = digits.parse().map_err(|_| FieldError::Syntax { pos: start, msg: "exponent too large".into() })?;
            return base.pow(e);
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

    fn atom(&mut self) -> Result<Scalar, FieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digits");
                Ok(self.field.embed(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if let Some(v) = self.field.var(name) {
                    return Ok(v);
                }
                if name == "r" {
                    if let Some(r) = self.field.root() {
                        return Ok(r);
                    }
                }
                Err(FieldError::UndeclaredVariable { name: name.to_string(), pos: start, field: self.field.to_string() })
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Byte offsets of the `+`/`-` signs that separate top-level summands of `s`.
/// A sign directly after an operator or at the start is unary and not a separator.
fn top_level_signs(s: &str) -> Vec<usize> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut prev: Option<u8> = None;
    for (i, c) in s.bytes().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                let binary = matches!(prev, Some(p) if !matches!(p, b'+' | b'-' | b'*' | b'/' | b'^' | b'('));
                if binary {
                    out.push(i);
                }
            }
            _ => {}
        }
        if !c.is_ascii_whitespace() {
            prev = Some(c);
        }
    }
    out
}

/// True when `s` is a sum of more than one top-level summand.
pub fn top_level_sum(s: &str) -> bool {
    !top_level_signs(s).is_empty()
}

/// Splits `s` into signed top-level summands; each piece keeps its sign.
pub fn split_top_level_terms(s: &str) -> Vec<(usize, &str)> {
    let mut cuts = top_level_signs(s);
    cuts.insert(0, 0);
    let mut out = Vec::new();
    for (w, &start) in cuts.iter().enumerate() {
        let end = cuts.get(w + 1).copied().unwrap_or(s.len());
        out.push((start, &s[start..end]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_fractions() {
        let q = FieldSpec::Rationals;
        assert_eq!(parse_scalar("3/6", &q).unwrap().to_string(), "1/2");
        assert_eq!(parse_scalar(" -(2 - 5)^2 / 3", &q).unwrap().to_string(), "-3");
    }

    #[test]
    fn quadratic_encoding() {
        let f = FieldSpec::quadratic(5).unwrap();
        match parse_scalar("1/2 + 1/2*r", &f).unwrap() {
            Scalar::Quadratic(q) => {
                assert_eq!(q.a, BigRational::new(1.into(), 2.into()));
                assert_eq!(q.b, BigRational::new(1.into(), 2.into()));
            }
            other => panic!("wrong kind {other:?}"),
        }
    }

    #[test]
    fn rational_function_literal() {
        let f = FieldSpec::rational_functions(&["t1"]).unwrap();
        let x = parse_scalar("t1^2/(t1-1)", &f).unwrap();
        assert_eq!(x.to_string(), "t1^2/(t1 - 1)");
        assert_eq!(parse_scalar(&x.to_string(), &f).unwrap(), x);
    }

    #[test]
    fn errors_carry_positions() {
        let q = FieldSpec::Rationals;
        assert_eq!(parse_scalar("1 + * 2", &q), Err(FieldError::Syntax { pos: 4, msg: "unexpected character".into() }));
        assert!(matches!(parse_scalar("2 + t", &q), Err(FieldError::UndeclaredVariable { pos: 4, .. })));
        assert_eq!(parse_scalar("1/0", &q), Err(FieldError::DivisionByZero));
        assert!(matches!(parse_scalar("r", &q), Err(FieldError::UndeclaredVariable { .. })));
        assert!(matches!(parse_scalar("(1", &q), Err(FieldError::Syntax { pos: 2, .. })));
    }

    #[test]
    fn splitting_respects_parentheses_and_unary_signs() {
        let parts: Vec<&str> = split_top_level_terms("a*b - (c + d)*e + -2*f").into_iter().map(|(_, s)| s).collect();
        assert_eq!(parts, vec!["a*b ", "- (c + d)*e ", "+ -2*f"]);
        assert!(!top_level_sum("-(1 + r)"));
        assert!(top_level_sum("1 - r"));
    }
}
