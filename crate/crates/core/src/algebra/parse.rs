//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Juxtaposition is an error, so `2x` is rejected.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly2::Poly2;
use super::scalar::Rational;
use crate::error::Error;

pub const DEFAULT_DEGREE_CAP: u32 = 64;

pub fn parse_poly(text: &str) -> Result<Poly2<Rational>, Error> {
    parse_poly_capped(text, DEFAULT_DEGREE_CAP)
}

pub fn parse_poly_capped(text: &str, degree_cap: u32) -> Result<Poly2<Rational>, Error> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        cap: degree_cap,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    cap: u32,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
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

    fn guard(&self, p: Poly2<Rational>, at: usize) -> Result<Poly2<Rational>, Error> {
        match p.total_degree() {
            Some(d) if d > self.cap => Err(Error::DegreeCap {
                cap: self.cap,
                degree: d,
                offset: at,
            }),
            _ => Ok(p),
        }
    }

    fn expr(&mut self) -> Result<Poly2<Rational>, Error> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<Poly2<Rational>, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.guard(acc.mul(&rhs), at)?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                    return Err(self.error("implicit multiplication is not allowed"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly2<Rational>, Error> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly2<Rational>, Error> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        self.pos += 1;
        if self.peek() == Some(b'-') {
            return Err(self.error("negative exponent"));
        }
        let start = self.pos;
        let e = self.integer()?;
        let e: u32 = e.try_into().map_err(|_| Error::Parse {
            offset: start,
            message: "exponent too large".into(),
        })?;
        if let Some(d) = base.total_degree() {
            if d as u64 * e as u64 > self.cap as u64 {
                return Err(Error::DegreeCap {
                    cap: self.cap,
                    degree: d.saturating_mul(e),
                    offset: at,
                });
            }
        }
        Ok(base.pow(e))
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    fn atom(&mut self) -> Result<Poly2<Rational>, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly2::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Poly2::y())
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den_at = self.pos;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(Error::Parse {
                            offset: den_at,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(Poly2::constant(value))
            }
            Some(c) if c.is_ascii_alphabetic() => Err(self.error("unknown variable")),
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, qi};

    fn p(terms: &[((u32, u32), i64)]) -> Poly2<Rational> {
        Poly2::from_terms(terms.iter().map(|&(k, c)| (k, qi(c))))
    }

    #[test]
    fn transcription() {
        assert_eq!(
            parse_poly("x^2 + y^3").unwrap(),
            p(&[((2, 0), 1), ((0, 3), 1)])
        );
        assert_eq!(
            parse_poly("(x - y^2)^2 - y^5").unwrap(),
            p(&[((2, 0), 1), ((1, 2), -2), ((0, 4), 1), ((0, 5), -1)])
        );
        assert_eq!(
            parse_poly("1/2*x*y").unwrap(),
            Poly2::monomial(q(1, 2), 1, 1)
        );
        assert_eq!(parse_poly("-x^2").unwrap(), p(&[((2, 0), -1)]));
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_poly("x + z") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 4);
                assert_eq!(message, "unknown variable");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_poly("x^-2"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            parse_poly("2x"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            parse_poly("(x"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(parse_poly("x^65"), Err(Error::DegreeCap { .. })));
        assert!(parse_poly_capped("x^65", 70).is_ok());
    }

    #[test]
    fn round_trip() {
        for s in ["x^2 + y^3", "-1/2*x*y + 3", "(x+y)^3 - 7/3*y^5", "0"] {
            let f = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&f.to_string()).unwrap(), f, "{s}");
        }
    }
}
