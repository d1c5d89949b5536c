//! Polynomial text grammar: parsing and printing.
//!
//! Grammar: variables x, y, z, w; integer or a/b rational coefficients;
//! operators + - * ^ and parentheses; whitespace insensitive. Multiplication
//! is always explicit (`2*x`, not `2x`). Printing emits terms in descending
//! grevlex order, e.g. `x^2 - 2/3*y*z + w`; parse(print(f)) == f.

use std::fmt;

use super::{Polynomial, Var};
use crate::scalar::{Field, Scalar};

/// Syntax error with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: Field,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos, message: message.into() })
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.err(format!("expected {:?}, found {:?}", c as char, got as char)),
            None => self.err(format!("expected {:?}, found end of input", c as char)),
        }
    }

    fn parse_uint(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            self.err("expected a digit")
        } else {
            Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
        }
    }

    // expr := ['-'|'+'] term (('+'|'-') term)*
    fn parse_expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            Some(b'+') => {
                self.pos += 1;
            }
            _ => {}
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.parse_term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn parse_term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.parse_factor()?);
        }
        Ok(acc)
    }

    // factor := base ('^' uint)?
    fn parse_factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.parse_base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp_str = self.parse_uint()?;
            let exp: u32 = exp_str
                .parse()
                .map_err(|_| ParseError { position: self.pos, message: "exponent too large".into() })?;
            if exp > 512 {
                return self.err("exponent too large");
            }
            Ok(base.pow(exp))
        } else {
            Ok(base)
        }
    }

    // base := '(' expr ')' | var | number
    fn parse_base(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let var = match self.bump().unwrap() {
                    b'x' => Var::X,
                    b'y' => Var::Y,
                    b'z' => Var::Z,
                    b'w' => Var::W,
                    other => {
                        self.pos -= 1;
                        return self.err(format!("unknown variable {:?}", other as char));
                    }
                };
                Ok(Polynomial::var(var, self.field))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_uint()?;
                let lit = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.parse_uint()?;
                    format!("{num}/{den}")
                } else {
                    num
                };
                let at = self.pos;
                let c = Scalar::parse(&lit, self.field)
                    .map_err(|e| ParseError { position: at, message: e.to_string() })?;
                Ok(Polynomial::constant(c))
            }
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

impl Polynomial {
    /// Parses the polynomial grammar over the given field.
    pub fn parse(s: &str, field: Field) -> Result<Polynomial, ParseError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0, field };
        let poly = p.parse_expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(poly)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.terms().iter().enumerate() {
            let (mag, negative) = match c {
                Scalar::Q(r) if num_traits::Signed::is_negative(r) => (Scalar::Q(-r), true),
                _ => (c.clone(), false),
            };
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, Field::Q).unwrap()
    }

    #[test]
    fn parses_quadric_form() {
        let q = p("x*(x+w) - y*z");
        assert_eq!(q, p("x^2 + x*w - y*z"));
        // Canonical order: y*z precedes x*w under grevlex.
        assert_eq!(q.to_string(), "x^2 - y*z + x*w");
    }

    #[test]
    fn parses_zero_and_constants() {
        assert!(p("0").is_zero());
        assert!(p("x - x").is_zero());
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("7/3").to_string(), "7/3");
        assert_eq!(p("-5").to_string(), "-5");
    }

    #[test]
    fn parses_embedded_point_form() {
        assert_eq!(p("3*z + w").to_string(), "3*z + w");
    }

    #[test]
    fn print_format_examples() {
        assert_eq!(p("x^2 - 2/3*y*z + w").to_string(), "x^2 - 2/3*y*z + w");
        assert_eq!(p("-x + 1").to_string(), "-x + 1");
        assert_eq!(p("y^4").to_string(), "y^4");
        assert_eq!(p("(x+y)^2").to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn rational_coefficients_and_powers() {
        assert_eq!(p("1/2*x + 1/3*x"), p("5/6*x"));
        assert_eq!(p("(z+w)^3"), p("z^3 + 3*z^2*w + 3*z*w^2 + w^3"));
    }

    #[test]
    fn error_positions_are_reported() {
        let e = Polynomial::parse("x + q", Field::Q).unwrap_err();
        assert_eq!(e.position, 4);
        assert!(e.message.contains("unknown variable"));
        let e = Polynomial::parse("x + ", Field::Q).unwrap_err();
        assert_eq!(e.position, 4);
        let e = Polynomial::parse("(x + y", Field::Q).unwrap_err();
        assert!(e.message.contains("expected"));
        let e = Polynomial::parse("x y", Field::Q).unwrap_err();
        assert!(e.message.contains("trailing input"));
        assert!(Polynomial::parse("t + x", Field::Q).is_err());
    }

    #[test]
    fn prime_field_round_trip() {
        let f7 = Field::fp(7).unwrap();
        let f = Polynomial::parse("3*x^2 + 6*y - 1/2*w", f7).unwrap();
        assert_eq!(f.to_string(), "3*x^2 + 6*y + 3*w");
        assert_eq!(Polynomial::parse(&f.to_string(), f7).unwrap(), f);
    }

    fn arb_poly_q() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(
            ((-20i64..=20, 1i64..=6), super::super::tests::arb_monomial(5)),
            0..7,
        )
        .prop_map(|terms| {
            Polynomial::from_terms(
                Field::Q,
                terms
                    .into_iter()
                    .map(|((n, d), m)| (Scalar::rational(n, d), m))
                    .collect(),
            )
        })
    }

    fn arb_poly_fp() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((0u64..13, super::super::tests::arb_monomial(5)), 0..7).prop_map(
            |terms| {
                Polynomial::from_terms(
                    Field::Fp(13),
                    terms
                        .into_iter()
                        .map(|(r, m)| (Scalar::Fp { residue: r, modulus: 13 }, m))
                        .collect(),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn round_trip_q(f in arb_poly_q()) {
            prop_assert_eq!(Polynomial::parse(&f.to_string(), Field::Q).unwrap(), f);
        }

        #[test]
        fn round_trip_fp(f in arb_poly_fp()) {
            prop_assert_eq!(Polynomial::parse(&f.to_string(), Field::Fp(13)).unwrap(), f);
        }
    }
}
