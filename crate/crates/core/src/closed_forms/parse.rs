//! Parser for polynomial-in-`q` expressions.
//!
//! Grammar, with juxtaposition meaning multiplication:
//!
//! ```text
//! expr   := sign? term (("+" | "-") term)*
//! term   := power (("*" | "/")? power)*
//! power  := atom ("^" integer)?
//! atom   := integer | "q" | "N" | "(" expr ")" | "C(" expr "," integer ")" | "[" id "]"
//! ```
//!
//! `N` abbreviates `q^2+q+1`, `C(e, k)` is the binomial coefficient and
//! `[id]` splices in another registered formula. Divisors must be nonzero
//! constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::QPolynomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Q,
    N,
    Binom,
    Ref(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Comma,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bad = |msg: String| Error::InvalidArgument(format!("expression `{src}`: {msg}"));
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        let tok = match c {
            ' ' | '\t' | '\n' => continue,
            '0'..='9' => {
                let start = i - 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                Token::Int(digits.parse().expect("ascii digits"))
            }
            'q' => Token::Q,
            'N' => Token::N,
            'C' => Token::Binom,
            '[' => {
                let start = i;
                while i < chars.len() && chars[i] != ']' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(bad("unterminated reference".into()));
                }
                i += 1;
                Token::Ref(chars[start..i - 1].iter().collect())
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            ',' => Token::Comma,
            '(' => Token::Open,
            ')' => Token::Close,
            other => return Err(bad(format!("unexpected character `{other}`"))),
        };
        out.push(tok);
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
    resolve: &'a dyn Fn(&str) -> Result<QPolynomial>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::InvalidArgument(format!("expression `{}`: {msg} at token {}", self.src, self.pos))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Token) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {t:?}")))
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.pos += 1;
                u32::try_from(v).map_err(|_| self.error("integer too large"))
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn expr(&mut self) -> Result<QPolynomial> {
        let negate = if self.eat(&Token::Minus) {
            true
        } else {
            self.eat(&Token::Plus);
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat(&Token::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Token::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Token::Int(_) | Token::Q | Token::N | Token::Binom | Token::Ref(_) | Token::Open))
    }

    fn term(&mut self) -> Result<QPolynomial> {
        let mut acc = self.power()?;
        loop {
            if self.eat(&Token::Slash) {
                let divisor = self.power()?;
                let c = divisor.as_constant().ok_or_else(|| self.error("non-constant divisor"))?;
                if c.is_zero() {
                    return Err(self.error("division by zero"));
                }
                acc = acc.scale(&(BigRational::from_integer(1.into()) / c));
            } else if self.eat(&Token::Star) || self.starts_atom() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<QPolynomial> {
        let base = self.atom()?;
        if self.eat(&Token::Caret) {
            let e = self.small_int()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<QPolynomial> {
        let tok = self.peek().cloned().ok_or_else(|| self.error("unexpected end"))?;
        self.pos += 1;
        match tok {
            Token::Int(v) => Ok(QPolynomial::constant(BigRational::from_integer(v))),
            Token::Q => Ok(QPolynomial::q()),
            Token::N => Ok(&(&QPolynomial::q().pow(2) + &QPolynomial::q()) + &QPolynomial::integer(1)),
            Token::Open => {
                let inner = self.expr()?;
                self.expect(&Token::Close)?;
                Ok(inner)
            }
            Token::Binom => {
                self.expect(&Token::Open)?;
                let top = self.expr()?;
                self.expect(&Token::Comma)?;
                let k = self.small_int()?;
                self.expect(&Token::Close)?;
                Ok(top.binomial(k))
            }
            Token::Ref(id) => (self.resolve)(&id),
            _ => Err(self.error("unexpected token")),
        }
    }
}

/// Parses `src`, resolving `[id]` references through `resolve`.
pub fn parse_with(src: &str, resolve: &dyn Fn(&str) -> Result<QPolynomial>) -> Result<QPolynomial> {
    let mut p = Parser { src, tokens: tokenize(src)?, pos: 0, resolve };
    let value = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(value)
}

/// Parses an expression without references.
pub fn parse(src: &str) -> Result<QPolynomial> {
    parse_with(src, &|id| Err(Error::UnknownFormula(id.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(src: &str, q: u64) -> BigRational {
        parse(src).unwrap().eval_int(q)
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn precedence_and_juxtaposition() {
        assert_eq!(at("2q^2", 3), int(18));
        assert_eq!(at("-q^2 + 1", 3), int(-8));
        assert_eq!(at("(q-1)^2 (q+1)", 4), int(45));
        assert_eq!(at("3/8 q", 8), int(3));
        assert_eq!(at("1/2 (q-1)q", 5), int(10));
        assert_eq!(at("N", 3), int(13));
        assert_eq!(at("C(q+1, 4)", 4), int(5));
        assert_eq!(at("C(N,2) C(q,3)^2", 4), int(21 * 10 * 16));
        assert_eq!(at("q - 2 - 3", 10), int(5));
    }

    #[test]
    fn references_are_spliced() {
        let resolve = |id: &str| match id {
            "x" => parse("q+1"),
            _ => Err(Error::UnknownFormula(id.into())),
        };
        assert_eq!(parse_with("2[x]^2", &resolve).unwrap().eval_int(2), int(18));
        assert!(parse_with("[y]", &resolve).is_err());
    }

    #[test]
    fn malformed_input_is_rejected() {
        for src in ["", "q +", "(q", "q/q", "q/0", "C(q)", "q $ 2", "q)"] {
            assert!(parse(src).is_err(), "{src}");
        }
    }
}
