//! Integer polynomials in one variable `z`.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*")? unary)*
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | "z" | "(" expr ")"
//! ```
//!
//! Juxtaposition multiplies, so `3z^2` reads as `3 * z^2`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use padic_lift::IntPolynomial;

use crate::error::CliError;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Token::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            'z' => Token::Var,
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            other => {
                return Err(CliError::Parse {
                    position: i,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn error(&self, message: impl Into<String>) -> CliError {
        CliError::Parse {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<IntPolynomial, CliError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<IntPolynomial, CliError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Int(_) | Token::Var | Token::Open) => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<IntPolynomial, CliError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<IntPolynomial, CliError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().cloned() {
            Some(Token::Int(e)) => {
                let e: u32 = e
                    .try_into()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| self.error(format!("exponent above {MAX_EXPONENT}")))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(self.error("expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<IntPolynomial, CliError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(IntPolynomial::constant(n))
            }
            Some(Token::Var) => {
                self.pos += 1;
                Ok(IntPolynomial::monomial(BigInt::one(), 1))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("expected an integer, 'z' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

pub fn parse_polynomial(src: &str) -> Result<IntPolynomial, CliError> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(CliError::Parse {
            position: 0,
            message: "empty polynomial".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        len: src.len(),
    };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(poly)
}

/// Coefficients, constant term first, as decimal strings.
pub fn coefficient_strings(f: &IntPolynomial) -> Vec<String> {
    if f.is_zero() {
        return vec![BigInt::zero().to_string()];
    }
    f.coeffs().iter().map(|c| c.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn parses_examples() {
        assert_eq!(parse_polynomial("1 - z").unwrap(), ip(&[1, -1]));
        assert_eq!(parse_polynomial("z^2+1").unwrap(), ip(&[1, 0, 1]));
        assert_eq!(parse_polynomial("3z^2 - 2*z + 7").unwrap(), ip(&[7, -2, 3]));
        assert_eq!(parse_polynomial("(z+1)^3").unwrap(), ip(&[1, 3, 3, 1]));
        assert_eq!(parse_polynomial("-(z - 2)(z + 2)").unwrap(), ip(&[4, 0, -1]));
        assert_eq!(parse_polynomial("z - z").unwrap(), ip(&[]));
        assert_eq!(parse_polynomial("--z").unwrap(), ip(&[0, 1]));
        assert_eq!(
            parse_polynomial("123456789012345678901234567890").unwrap().coeffs()[0].to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn round_trips_display() {
        for cs in [&[1i64, -1][..], &[0, 0, 1], &[-5, 3, 0, 2], &[7]] {
            let f = ip(cs);
            assert_eq!(parse_polynomial(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "z +", "x", "z^", "z^-1", "(z", "z)", "2 ** 3", "z^1000", "1/2"] {
            assert!(
                matches!(parse_polynomial(bad), Err(CliError::Parse { .. })),
                "{bad:?} should fail"
            );
        }
        match parse_polynomial("z + x") {
            Err(CliError::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
    }
}
