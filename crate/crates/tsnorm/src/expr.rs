//! A tiny expression language for vectors on the command line:
//! `e1 + 1/4*e2 - sum(e,65,80)` — signed terms, each an optional
//! rational coefficient times a basis vector `e<i>` or a basis-range sum
//! `sum(e,a,b)`.  Always produces an exact-mode vector.

use thiserror::Error;

use crate::scalar::Scalar;
use crate::vector::{SparseVector, VectorError};

#[derive(Debug, Error, Clone, PartialEq)]
#[error("parse error at position {position}: {message}")]
pub struct ExprError {
    pub position: usize,
    pub message: String,
}

impl ExprError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ExprError {
            position,
            message: message.into(),
        }
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
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
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ExprError::new(
                self.pos,
                format!("expected '{}'", c as char),
            ))
        }
    }

    fn integer(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .text
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ExprError::new(self.pos, "expected a number"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ExprError::new(start, "number out of range"))
    }

    /// `p` or `p/q`.
    fn rational(&mut self) -> Result<Scalar, ExprError> {
        let start = self.pos;
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.integer()?;
            Scalar::ratio(num, den).map_err(|e| ExprError::new(start, e.to_string()))
        } else {
            Ok(Scalar::int(num))
        }
    }

    /// `e<i>` or `sum(e,a,b)`.
    fn atom(&mut self) -> Result<SparseVector, ExprError> {
        self.skip_ws();
        let start = self.pos;
        if self.text[self.pos..].starts_with(b"sum") {
            self.pos += 3;
            self.expect(b'(')?;
            self.expect(b'e')?;
            self.expect(b',')?;
            let lo = self.integer()?;
            self.expect(b',')?;
            let hi = self.integer()?;
            self.expect(b')')?;
            if lo < 1 || hi < lo {
                return Err(ExprError::new(start, format!("bad range {lo}..{hi}")));
            }
            return SparseVector::from_entries(
                crate::scalar::ScalarMode::Exact,
                (lo as u64..=hi as u64).map(|i| (i, Scalar::int(1))),
            )
            .map_err(|e: VectorError| ExprError::new(start, e.to_string()));
        }
        self.expect(b'e')?;
        let idx = self.integer()?;
        if idx < 1 {
            return Err(ExprError::new(start, "basis indices start at 1"));
        }
        Ok(SparseVector::unit(idx as u64))
    }

    /// `[coeff '*'] atom` — a leading number must be a coefficient.
    fn term(&mut self) -> Result<SparseVector, ExprError> {
        let next = self
            .peek()
            .ok_or_else(|| ExprError::new(self.pos, "expected a term"))?;
        if next.is_ascii_digit() || next == b'-' {
            let coeff = self.rational()?;
            self.expect(b'*')?;
            let atom = self.atom()?;
            return atom
                .scale(&coeff)
                .map_err(|e| ExprError::new(self.pos, e.to_string()));
        }
        self.atom()
    }

    fn expression(&mut self) -> Result<SparseVector, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc
                        .try_add(&t)
                        .map_err(|e| ExprError::new(self.pos, e.to_string()))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self
                        .term()?
                        .scale(&Scalar::int(-1))
                        .map_err(|e| ExprError::new(self.pos, e.to_string()))?;
                    acc = acc
                        .try_add(&t)
                        .map_err(|e| ExprError::new(self.pos, e.to_string()))?;
                }
                Some(other) => {
                    return Err(ExprError::new(
                        self.pos,
                        format!("unexpected '{}'", other as char),
                    ))
                }
                None => return Ok(acc),
            }
        }
    }
}

/// Parses the expression grammar into an exact-mode vector.
pub fn parse_vector_expr(text: &str) -> Result<SparseVector, ExprError> {
    let mut parser = Parser {
        text: text.as_bytes(),
        pos: 0,
    };
    let v = parser.expression()?;
    parser.skip_ws();
    if parser.pos != parser.text.len() {
        return Err(ExprError::new(parser.pos, "trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarMode;

    #[test]
    fn basic_terms() {
        let v = parse_vector_expr("e1 + 1/4*e2").unwrap();
        assert_eq!(v.coeff(1), Scalar::int(1));
        assert_eq!(v.coeff(2), Scalar::ratio(1, 4).unwrap());
    }

    #[test]
    fn sum_range() {
        let v = parse_vector_expr("sum(e,65,80)").unwrap();
        assert_eq!(v.support().collect::<Vec<_>>(), (65..=80).collect::<Vec<_>>());
    }

    #[test]
    fn zero_coefficient_eliminated() {
        let v = parse_vector_expr("0*e1").unwrap();
        assert!(v.is_zero());
        assert_eq!(v.mode(), ScalarMode::Exact);
    }

    #[test]
    fn subtraction_of_atoms() {
        let v = parse_vector_expr("e1 - e1").unwrap();
        assert!(v.is_zero());
        let w = parse_vector_expr("sum(e,1,3) - e2").unwrap();
        assert_eq!(w.support().collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn negative_coefficients() {
        let v = parse_vector_expr("-1/2*e3 + e4").unwrap();
        assert_eq!(v.coeff(3), Scalar::ratio(-1, 2).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_vector_expr("e1 + + e2").unwrap_err();
        assert_eq!(err.position, 5);
        assert!(parse_vector_expr("e0").is_err());
        assert!(parse_vector_expr("sum(e,5,2)").is_err());
        assert!(parse_vector_expr("e1 e2").is_err());
        assert!(parse_vector_expr("2e3").is_err()); // coefficient needs '*'
    }
}
