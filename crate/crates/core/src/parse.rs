//! Parser for the Laurent-expression text format.
//!
//! Accepts sums, differences, products, exact quotients, parentheses and
//! integer powers of variables `x1, x2, ...`; adjacency is multiplication,
//! so `2x1(x2+1)` and `2*x1*(x2+1)` parse alike. Negative powers are
//! allowed on unit-coefficient monomials (`x1^-2`, `(x1*x2)^-1`), and `/`
//! requires the division to be exact over the integers. This covers both
//! the canonical flat format (`x1*x3 + x2 + 1`) and the table-style
//! fraction format (`(x1*x3+x2+1)/(x1*x2)`).

use num::bigint::BigInt;
use num::{One, Signed};
use std::fmt;

use crate::laurent::{LaurentError, LaurentPolynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                tokens.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value: BigInt = input[start..i].parse().expect("digits");
                tokens.push((start, Token::Int(value)));
            }
            'x' => {
                let start = i;
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(ParseError {
                        position: start,
                        message: "expected variable index after 'x'".to_string(),
                    });
                }
                let index: usize = input[digits_start..i].parse().map_err(|_| ParseError {
                    position: start,
                    message: "variable index out of range".to_string(),
                })?;
                if index == 0 {
                    return Err(ParseError {
                        position: start,
                        message: "variable indices start at x1".to_string(),
                    });
                }
                tokens.push((start, Token::Var(index - 1)));
            }
            other => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    rank: usize,
    input_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t);
        self.pos += 1;
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.position(),
            message: message.into(),
        }
    }

    fn laurent_error(&self, err: LaurentError) -> ParseError {
        ParseError {
            position: self.position(),
            message: err.to_string(),
        }
    }

    fn expr(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let mut negate = false;
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t).map_err(|e| self.laurent_error(e))?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t).map_err(|e| self.laurent_error(e))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs).map_err(|e| self.laurent_error(e))?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.exact_div(&rhs).map_err(|e| self.laurent_error(e))?;
                }
                // adjacency is multiplication: `2x1`, `x1(x2+1)`, `)(`
                Some(Token::Var(_)) | Some(Token::LParen) | Some(Token::Int(_)) => {
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs).map_err(|e| self.laurent_error(e))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            let mut negative = false;
            if matches!(self.peek(), Some(Token::Minus)) {
                self.bump();
                negative = true;
            }
            let exponent = match self.bump() {
                Some(Token::Int(n)) => n.clone(),
                _ => return Err(self.error("expected integer exponent after '^'")),
            };
            let exponent: u32 = exponent
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            if negative {
                let inv = invert_monomial(&base)
                    .ok_or_else(|| self.error("negative power of a non-unit non-monomial"))?;
                return Ok(inv.pow(exponent));
            }
            return Ok(base.pow(exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LaurentPolynomial, ParseError> {
        match self.bump().cloned() {
            Some(Token::Int(n)) => Ok(LaurentPolynomial::constant(self.rank, n)),
            Some(Token::Var(v)) => {
                if v >= self.rank {
                    return Err(ParseError {
                        position: self.tokens[self.pos - 1].0,
                        message: format!("variable x{} exceeds rank {}", v + 1, self.rank),
                    });
                }
                Ok(LaurentPolynomial::variable(self.rank, v))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(self.error("expected ')'")),
                }
            }
            Some(Token::Minus) => {
                let inner = self.factor()?;
                Ok(inner.neg())
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

/// Inverse of a single-term polynomial with coefficient ±1.
fn invert_monomial(p: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    if p.num_terms() != 1 {
        return None;
    }
    let (exp, coeff) = p.terms().next().expect("one term");
    if !coeff.abs().is_one() {
        return None;
    }
    let inv_exp: Vec<i32> = exp.entries().iter().map(|e| -e).collect();
    Some(LaurentPolynomial::monomial(
        p.rank(),
        inv_exp,
        coeff.clone(),
    ))
}

/// Parses a Laurent expression with the given ambient rank.
pub fn parse_laurent(input: &str, rank: usize) -> Result<LaurentPolynomial, ParseError> {
    let tokens = lex(input)?;
    if tokens.is_empty() {
        return Err(ParseError {
            position: 0,
            message: "empty expression".to_string(),
        });
    }
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        rank,
        input_len: input.len(),
    };
    let poly = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(poly)
}

/// Parses with the rank inferred as the largest variable index present
/// (at least 1).
pub fn parse_laurent_infer_rank(input: &str) -> Result<LaurentPolynomial, ParseError> {
    let tokens = lex(input)?;
    let rank = tokens
        .iter()
        .filter_map(|(_, t)| match t {
            Token::Var(v) => Some(v + 1),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    parse_laurent(input, rank)
}
