//! Parser for raw polynomial expressions over an Artin ring.
//!
//! Grammar: sums and differences of terms; a term is a product of factors
//! (explicit `*` or juxtaposition, e.g. `2t^2`); a factor is an integer or
//! rational literal, a variable, or a parenthesized expression, optionally
//! raised to a nonnegative integer power.

use std::sync::Arc;

use crate::artin::{ArtinElement, ArtinRing};
use crate::error::CoreError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<Token>, CoreError> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' | '\u{2212}' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' | '\u{00b7}' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '/' => {
                chars.next();
                tokens.push(Token::Slash);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '(' => {
                chars.next();
                tokens.push(Token::LParen);
            }
            ')' => {
                chars.next();
                tokens.push(Token::RParen);
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
                tokens.push(Token::Num(s));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(s));
            }
            other => {
                return Err(CoreError::Parse(format!("unexpected character {:?}", other)));
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ring: &'a Arc<ArtinRing>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<ArtinElement, CoreError> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.next();
                self.term()?.neg()
            }
            Some(Token::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op) = self.peek() {
            match op {
                Token::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Token::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ArtinElement, CoreError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Token::Slash) => {
                    self.next();
                    let d = self.factor()?;
                    acc = acc.mul(&d.invert()?);
                }
                // juxtaposition
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ArtinElement, CoreError> {
        let base = match self.next() {
            Some(Token::Num(s)) => {
                let n: i64 = s
                    .parse()
                    .map_err(|_| CoreError::BadCoefficient(s.clone()))?;
                ArtinElement::from_i64(self.ring, n)
            }
            Some(Token::Ident(name)) => {
                let idx = self.ring.var_index(&name)?;
                ArtinElement::var(self.ring, idx)
            }
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => e,
                    _ => return Err(CoreError::Parse("unbalanced parenthesis".into())),
                }
            }
            Some(Token::Minus) => self.factor()?.neg(),
            other => {
                return Err(CoreError::Parse(format!("unexpected token {:?}", other)));
            }
        };
        if let Some(Token::Caret) = self.peek() {
            self.next();
            match self.next() {
                Some(Token::Num(s)) => {
                    let e: u32 = s
                        .parse()
                        .map_err(|_| CoreError::Parse(format!("bad exponent {:?}", s)))?;
                    Ok(base.pow(e))
                }
                other => Err(CoreError::Parse(format!("expected exponent, got {:?}", other))),
            }
        } else {
            Ok(base)
        }
    }
}

/// Parse and reduce a raw polynomial expression into canonical form.
pub fn normalize(ring: &Arc<ArtinRing>, input: &str) -> Result<ArtinElement, CoreError> {
    let tokens = lex(input)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        ring,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(CoreError::Parse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(e)
}
