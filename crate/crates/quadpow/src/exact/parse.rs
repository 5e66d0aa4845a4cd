//! The scalar expression mini-language.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-'? base ('^' '-'? integer)?
//! base   := rational | 'i' | 'omega' | 'phi' | 'zeta(' int ',' int ')'
//!         | 'sqrt(' rational ')' | 'root(' poly ')' | '(' expr ')'
//! poly   := expr (',' expr)*        -- coefficients, constant first
//! ```
//!
//! `root(p)` adjoins a root of the squarefree part of p; one distinct root
//! polynomial may appear per expression. The printer emits only this grammar,
//! and printing then re-parsing is exact.

use super::cyclotomic::CyclotomicNumber;
use super::scalar::{AlgebraicScalar, Modulus};
use super::sqrt::sqrt_rational;
use super::{ArithError, Int, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn lift(&self, r: Result<AlgebraicScalar, ArithError>) -> Result<AlgebraicScalar, ParseError> {
        r.map_err(|e| ParseError {
            position: self.pos,
            message: e.to_string(),
        })
    }

    fn integer(&mut self) -> Result<Int, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.err("expected integer");
        }
        Int::from_str(&self.text[start..self.pos]).map_err(|e| ParseError {
            position: start,
            message: e.to_string(),
        })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let n = self.integer()?;
        if self.eat(b'/') {
            let d = self.integer()?;
            if d.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if self.pos > start {
            Some(&self.text[start..self.pos])
        } else {
            None
        }
    }

    fn expr(&mut self) -> Result<AlgebraicScalar, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = self.lift(acc.checked_add(&t))?;
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = self.lift(acc.checked_add(&t.neg()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraicScalar, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let t = self.factor()?;
                acc = self.lift(acc.checked_mul(&t))?;
            } else if self.eat(b'/') {
                let t = self.factor()?;
                acc = self.lift(acc.div(&t))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<AlgebraicScalar, ParseError> {
        let neg = self.eat(b'-');
        let base = self.base()?;
        let v = if self.eat(b'^') {
            let e = self.integer()?;
            let e = match i64::try_from(&e) {
                Ok(e) => e,
                Err(_) => return self.err("exponent out of range"),
            };
            self.lift(base.pow(e))?
        } else {
            base
        };
        Ok(if neg { v.neg() } else { v })
    }

    fn base(&mut self) -> Result<AlgebraicScalar, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(AlgebraicScalar::from_rational(self.rational()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let name_pos = self.pos;
                let name = self.ident().unwrap();
                match name {
                    "i" => Ok(AlgebraicScalar::zeta(4)),
                    "omega" => Ok(AlgebraicScalar::zeta(3)),
                    "phi" => {
                        let sqrt5 = sqrt_rational(&super::rat_int(5));
                        Ok(sqrt5
                            .add(&AlgebraicScalar::one())
                            .scale_rat(&super::rat(1, 2)))
                    }
                    "zeta" => {
                        self.expect(b'(')?;
                        let n = self.integer()?;
                        self.expect(b',')?;
                        let k = self.integer()?;
                        self.expect(b')')?;
                        let n = match u32::try_from(&n) {
                            Ok(n) if n >= 1 => n,
                            _ => return self.err("zeta level must be a positive integer"),
                        };
                        let k = i64::try_from(&k)
                            .map_err(|_| ParseError {
                                position: self.pos,
                                message: "zeta exponent out of range".into(),
                            })?;
                        Ok(AlgebraicScalar::zeta_pow(n, k))
                    }
                    "sqrt" => {
                        self.expect(b'(')?;
                        let r = self.rational()?;
                        self.expect(b')')?;
                        if r.is_zero() {
                            return self.err("sqrt of zero");
                        }
                        Ok(sqrt_rational(&r))
                    }
                    "root" => {
                        self.expect(b'(')?;
                        let mut coeffs = vec![self.poly_coeff()?];
                        while self.eat(b',') {
                            coeffs.push(self.poly_coeff()?);
                        }
                        self.expect(b')')?;
                        let m = Modulus::new(coeffs).map_err(|e| ParseError {
                            position: name_pos,
                            message: e.to_string(),
                        })?;
                        Ok(AlgebraicScalar::adjoined_root(m))
                    }
                    other => Err(ParseError {
                        position: name_pos,
                        message: format!("unknown identifier '{}'", other),
                    }),
                }
            }
            Some(b'-') => self.err("unexpected '-'"),
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    /// One coefficient inside root(...): an expression without nested roots.
    fn poly_coeff(&mut self) -> Result<CyclotomicNumber, ParseError> {
        let start = self.pos;
        let v = self.expr()?;
        match v.as_cyclotomic() {
            Some(c) => Ok(c.clone()),
            None => Err(ParseError {
                position: start,
                message: "root(...) coefficients may not themselves contain roots".into(),
            }),
        }
    }
}

/// Parse a scalar expression; the result is canonicalized.
pub fn parse_scalar(text: &str) -> Result<AlgebraicScalar, ParseError> {
    let mut p = Parser::new(text);
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.err("trailing input");
    }
    Ok(v.canonicalize())
}

// ---- canonical printing ----

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// One cyclotomic value as a sum of zeta terms in grammar syntax.
fn fmt_cyclotomic(c: &CyclotomicNumber) -> String {
    let c = c.reduce_level();
    if let Some(q) = c.as_rational() {
        return fmt_rational(q);
    }
    let n = c.level();
    let mut out = String::new();
    for (e, q) in c.coeffs().iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let mag = q.abs();
        let sign = q.is_negative();
        if out.is_empty() {
            if sign {
                out.push('-');
            }
        } else if sign {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if e == 0 {
            out.push_str(&fmt_rational(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&fmt_rational(&mag));
                out.push('*');
            }
            if e == 1 {
                out.push_str(&format!("zeta({},1)", n));
            } else {
                out.push_str(&format!("zeta({},{})", n, e));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus() {
            None => write!(f, "{}", fmt_cyclotomic(&self.value_coeffs()[0])),
            Some(m) => {
                let root = format!(
                    "root({})",
                    m.coeffs()
                        .iter()
                        .map(fmt_cyclotomic)
                        .collect::<Vec<_>>()
                        .join(",")
                );
                let mut parts: Vec<String> = Vec::new();
                for (k, c) in self.value_coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let coeff = fmt_cyclotomic(c);
                    let part = match k {
                        0 => coeff,
                        1 if coeff == "1" => root.clone(),
                        1 => format!("({})*{}", coeff, root),
                        _ if coeff == "1" => format!("{}^{}", root, k),
                        _ => format!("({})*{}^{}", coeff, root, k),
                    };
                    parts.push(part);
                }
                if parts.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", parts.join(" + "))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    #[test]
    fn trivial_values() {
        assert!(parse_scalar("zeta(5,1)^5").unwrap().is_one());
        assert!(parse_scalar("1 + omega + omega^2").unwrap().is_zero());
        assert_eq!(
            parse_scalar("sqrt(-2)^2").unwrap(),
            AlgebraicScalar::from_int(-2)
        );
    }

    #[test]
    fn norm_of_one_plus_sqrt_minus_two() {
        let v = parse_scalar("(1+sqrt(-2))*(1-sqrt(-2))").unwrap();
        assert_eq!(v, AlgebraicScalar::from_int(3));
    }

    #[test]
    fn phi_satisfies_its_equation() {
        let v = parse_scalar("phi*phi - phi").unwrap();
        assert!(v.is_one());
    }

    #[test]
    fn error_positions() {
        let e = parse_scalar("1 + $").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(parse_scalar("sqrt(1/0)").is_err());
        assert!(parse_scalar("root(5)").is_err());
    }

    #[test]
    fn root_adjoins_quotient() {
        // root of t^2 + 1/2, squared, gives -1/2
        let v = parse_scalar("root(1/2,0,1)^2").unwrap();
        assert_eq!(v, AlgebraicScalar::from_rational(crate::exact::rat(-1, 2)));
    }

    #[test]
    fn print_parse_roundtrip() {
        for text in [
            "3/2",
            "-7",
            "zeta(8,1)+zeta(8,7)",
            "1 - 2*zeta(12,7)",
            "sqrt(-6/5)",
            "root(1/2,0,1)",
            "(1+sqrt(5))/2",
            "root(-3,0,0,1)^2 - 4",
        ] {
            let v = parse_scalar(text).unwrap();
            let printed = v.to_string();
            let back = parse_scalar(&printed).unwrap();
            assert_eq!(v, back, "roundtrip of {} via {}", text, printed);
        }
    }

    #[test]
    fn sqrt_reduces_level() {
        // sqrt(-3) = zeta(3) - zeta(3)^2 lives at level 3
        let v = parse_scalar("sqrt(-3)").unwrap();
        assert_eq!(v.value_coeffs()[0].level(), 3);
        assert_eq!(v, parse_scalar("zeta(3,1) - zeta(3,2)").unwrap());
        assert_eq!(v, parse_scalar("i*sqrt(3)").unwrap());
    }

    #[test]
    fn rejects_two_distinct_roots() {
        assert!(parse_scalar("root(-2,0,1) + root(-3,0,1)").is_err());
    }

    #[test]
    fn canonical_zero_prints_zero() {
        let v = parse_scalar("zeta(7,1) - zeta(7,1)").unwrap();
        assert_eq!(v.to_string(), "0");
    }
}
