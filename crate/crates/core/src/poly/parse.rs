//! Text and JSON input/output for polynomials.
//!
//! The text grammar is the one produced by `Display`: terms joined by
//! ` + `/` - `, each a `*`-separated product of an optional rational
//! coefficient (parenthesized when it multiplies variables) and variable
//! powers like `t^2` or `t^-1`. Parsing accepts arbitrary whitespace.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use serde_json::{json, Value};

use super::laurent::LaurentPoly;
use super::monomial::Monomial;
use super::registry::Reg;
use super::PolyError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>, PolyError> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Int(s.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Name(s));
            }
            other => {
                return Err(PolyError::Parse(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    reg: &'a Reg,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token) -> Result<(), PolyError> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(PolyError::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn int(&mut self) -> Result<BigInt, PolyError> {
        match self.next() {
            Some(Token::Int(n)) => Ok(n),
            got => Err(PolyError::Parse(format!("expected integer, found {got:?}"))),
        }
    }

    fn signed_int(&mut self) -> Result<BigInt, PolyError> {
        if self.peek() == Some(&Token::Minus) {
            self.next();
            Ok(-self.int()?)
        } else {
            self.int()
        }
    }

    /// integer with optional `/ integer`
    fn rational(&mut self) -> Result<BigRational, PolyError> {
        let num = self.int()?;
        if self.peek() == Some(&Token::Slash) {
            self.next();
            let den = self.int()?;
            if den.is_zero() {
                return Err(PolyError::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// sum of `*`-separated products, with optional leading sign
    fn expr(&mut self) -> Result<LaurentPoly, PolyError> {
        let mut out = if self.peek() == Some(&Token::Minus) {
            self.next();
            self.product()?.negated()
        } else {
            self.product()?
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    out = &out + &self.product()?;
                }
                Some(Token::Minus) => {
                    self.next();
                    out = &out - &self.product()?;
                }
                _ => return Ok(out),
            }
        }
    }

    fn product(&mut self) -> Result<LaurentPoly, PolyError> {
        let mut out = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            out = &out * &self.factor()?;
        }
        Ok(out)
    }

    /// rational constant, variable power, or parenthesized expression with
    /// an optional exponent
    fn factor(&mut self) -> Result<LaurentPoly, PolyError> {
        match self.peek() {
            Some(Token::Int(_)) => Ok(LaurentPoly::constant(self.reg, self.rational()?)),
            Some(Token::Name(_)) => {
                let Some(Token::Name(name)) = self.next() else {
                    unreachable!()
                };
                let v = self.reg.var(&name);
                let e = self.exponent()?.unwrap_or(1);
                Ok(LaurentPoly::var_pow(self.reg, v, e))
            }
            Some(Token::LParen) => {
                self.next();
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                match self.exponent()?.unwrap_or(1) {
                    e if e >= 0 => Ok(inner.pow(e as u64)),
                    e => match inner.as_single_term() {
                        Some((m, c)) => Ok(LaurentPoly::term(
                            self.reg,
                            m.inv(),
                            c.clone().recip(),
                        )
                        .pow((-e) as u64)),
                        None => Err(PolyError::Parse(
                            "negative power of a multi-term expression".into(),
                        )),
                    },
                }
            }
            got => Err(PolyError::Parse(format!(
                "expected term factor, found {got:?}"
            ))),
        }
    }

    fn exponent(&mut self) -> Result<Option<i64>, PolyError> {
        if self.peek() != Some(&Token::Caret) {
            return Ok(None);
        }
        self.next();
        let e = self.signed_int()?;
        let e =
            i64::try_from(e).map_err(|_| PolyError::Parse("exponent out of range".into()))?;
        Ok(Some(e))
    }
}

/// Parse the text form of a polynomial: sums of products of rationals,
/// variable powers, and parenthesized subexpressions.
pub fn parse_poly(reg: &Reg, input: &str) -> Result<LaurentPoly, PolyError> {
    let mut p = Parser {
        toks: tokenize(input)?,
        pos: 0,
        reg,
    };
    let out = p.expr()?;
    match p.peek() {
        None => Ok(out),
        got => Err(PolyError::Parse(format!(
            "expected '+' or '-', found {got:?}"
        ))),
    }
}

impl LaurentPoly {
    /// JSON form: a list of terms in descending order, each
    /// `{"coeff": [num, den], "exps": {name: exponent}}` with the integers
    /// as decimal strings.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .rev()
            .map(|(m, c)| {
                let exps: serde_json::Map<String, Value> = m
                    .iter()
                    .map(|(v, e)| (self.registry().name(v), json!(e)))
                    .collect();
                json!({
                    "coeff": [c.numer().to_string(), c.denom().to_string()],
                    "exps": exps,
                })
            })
            .collect();
        Value::Array(terms)
    }

    pub fn from_json(reg: &Reg, value: &Value) -> Result<LaurentPoly, PolyError> {
        let bad = |msg: &str| PolyError::Parse(format!("json polynomial: {msg}"));
        let terms = value.as_array().ok_or_else(|| bad("expected array"))?;
        let mut out = LaurentPoly::zero(reg);
        for term in terms {
            let coeff = term
                .get("coeff")
                .and_then(Value::as_array)
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("missing coeff pair"))?;
            let num: BigInt = coeff[0]
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad numerator"))?;
            let den: BigInt = coeff[1]
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad denominator"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            let exps = term
                .get("exps")
                .and_then(Value::as_object)
                .ok_or_else(|| bad("missing exps"))?;
            let mut pairs = Vec::new();
            for (name, e) in exps {
                let e = e.as_i64().ok_or_else(|| bad("bad exponent"))?;
                pairs.push((reg.var(name), e));
            }
            out = &out
                + &LaurentPoly::term(reg, Monomial::from_pairs(pairs), BigRational::new(num, den));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::registry::VarRegistry;

    #[test]
    fn round_trip_text() {
        let reg = VarRegistry::standard();
        for src in [
            "t^3 + 3*t + 4",
            "(1/8)*t + 1/8",
            "b^2 + 2*b*w_minus + w_plus^2",
            "-1 + t^-1",
            "-2*t^2 + t - 1/3",
            "0",
        ] {
            let p = parse_poly(&reg, src).unwrap();
            assert_eq!(p.to_string(), src, "canonical text is a fixed point");
            assert_eq!(parse_poly(&reg, &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn whitespace_and_order_insensitive() {
        let reg = VarRegistry::standard();
        let a = parse_poly(&reg, "3*t+4+t^3").unwrap();
        let b = parse_poly(&reg, "t^3 + 3*t + 4").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_garbage() {
        let reg = VarRegistry::standard();
        assert!(parse_poly(&reg, "t +").is_err());
        assert!(parse_poly(&reg, "t^").is_err());
        assert!(parse_poly(&reg, "1/0").is_err());
        assert!(parse_poly(&reg, "t $ 1").is_err());
    }

    #[test]
    fn round_trip_json() {
        let reg = VarRegistry::standard();
        let p = parse_poly(&reg, "t^2 - (1/2)*t*b + 3").unwrap();
        let v = p.to_json();
        assert_eq!(LaurentPoly::from_json(&reg, &v).unwrap(), p);
    }
}
