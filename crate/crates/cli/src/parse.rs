//! Polynomial expressions and ring names.
//!
//! ```text
//! expression := ['-'] term (('+' | '-') term)*
//! term       := factor ('*' factor)*
//! factor     := atom ['^' integer]
//! atom       := generator | integer | '(' expression ')'
//! generator  := 'a' | 'w'<int> | 'p'<int> | 'W'<int>
//! ```
//!
//! Whitespace is ignored. A bare generator power whose degree exceeds the cap
//! of a free ring is rejected as an overflow rather than silently truncated.

use std::sync::Arc;

use charclass::graded::{RingKind, DEFAULT_CAP};
use charclass::{Coefficients, GradedPoly, RingPresentation, TotalClass};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator `{name}` at position {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("degree overflow at position {position}: {message}")]
    DegreeOverflow { position: usize, message: String },
    #[error("unknown ring `{0}` (expected rp:N, formal:N, pontryagin or twisted)")]
    UnknownRing(String),
    #[error(transparent)]
    Algebra(#[from] charclass::Error),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let simple = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((start, Token::Int(digits.parse().expect("ascii digits"))));
        } else if c.is_ascii_alphabetic() {
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Token::Ident(chars[start..i].iter().collect())));
        } else {
            return Err(ParseError::Syntax { position: start, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<RingPresentation>,
    field: Coefficients,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { position: self.position(), message: message.into() })
    }

    fn expression(&mut self) -> Result<GradedPoly, ParseError> {
        let mut acc = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            -&self.term()?
        } else {
            self.term()?
        };
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

    fn term(&mut self) -> Result<GradedPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GradedPoly, ParseError> {
        let start = self.position();
        let (base, generator_degree) = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let exponent = match self.peek() {
            Some(Token::Int(n)) => u32::try_from(n.clone())
                .or_else(|_| self.syntax("exponent too large"))?,
            _ => return self.syntax("expected an integer exponent after `^`"),
        };
        self.pos += 1;
        if let Some(d) = generator_degree {
            let free = matches!(self.ring.kind(), RingKind::FreeTruncated);
            if free && d as u64 * exponent as u64 > self.ring.cap() as u64 {
                return Err(ParseError::DegreeOverflow {
                    position: start,
                    message: format!("degree {} exceeds the cap {}", d as u64 * exponent as u64, self.ring.cap()),
                });
            }
        }
        Ok(base.pow(exponent))
    }

    /// The atom and, for a bare generator, its degree.
    fn atom(&mut self) -> Result<(GradedPoly, Option<u32>), ParseError> {
        let position = self.position();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok((GradedPoly::one(self.ring, self.field).scale(&n), None))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let index = self
                    .ring
                    .generator_index(&name)
                    .ok_or(ParseError::UnknownGenerator { name: name.clone(), position })?;
                let degree = self.ring.generators()[index].degree;
                if degree > self.ring.cap() {
                    return Err(ParseError::DegreeOverflow {
                        position,
                        message: format!("{name} has degree {degree} above the cap {}", self.ring.cap()),
                    });
                }
                Ok((GradedPoly::generator(self.ring, self.field, &name)?, Some(degree)))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.expression()?;
                if self.peek() != Some(&Token::Close) {
                    return self.syntax("expected `)`");
                }
                self.pos += 1;
                Ok((inner, None))
            }
            Some(_) => self.syntax("expected a generator, integer or `(`"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses `text` into a normal-form element of `ring`.
pub fn parse_class(text: &str, ring: &Arc<RingPresentation>, field: Coefficients) -> Result<GradedPoly, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.chars().count(), ring, field };
    let value = parser.expression()?;
    if parser.pos != parser.tokens.len() {
        return parser.syntax("unexpected trailing input");
    }
    Ok(value)
}

pub fn parse_total_class(text: &str, ring: &Arc<RingPresentation>, field: Coefficients) -> Result<TotalClass, ParseError> {
    Ok(TotalClass::from_poly(&parse_class(text, ring, field)?)?)
}

/// A named ring together with its coefficient field.
#[derive(Debug, Clone)]
pub struct RingSpec {
    pub name: String,
    pub ring: Arc<RingPresentation>,
    pub field: Coefficients,
}

/// `rp:N` = Z₂[a]/(a^{N+1}); `formal:N` = free Z₂ ring on w1..wN;
/// `pontryagin` and `twisted` are the integral p-ring and the mod-2 ring of
/// p_i and odd W_k.
pub fn parse_ring(name: &str, cap: Option<u32>) -> Result<RingSpec, ParseError> {
    let unknown = || ParseError::UnknownRing(name.to_string());
    let cap_or_default = cap.unwrap_or(DEFAULT_CAP);
    let (ring, field) = if let Some(n) = name.strip_prefix("rp:") {
        let n: u32 = n.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        (RingPresentation::truncated_power("a", n)?, Coefficients::Z2)
    } else if let Some(n) = name.strip_prefix("formal:") {
        let n: u32 = n.parse().map_err(|_| unknown())?;
        (RingPresentation::formal_w(n, cap_or_default), Coefficients::Z2)
    } else if name == "pontryagin" {
        (RingPresentation::pontryagin(cap_or_default), Coefficients::Integers)
    } else if name == "twisted" {
        (RingPresentation::twisted(cap_or_default), Coefficients::Z2)
    } else {
        return Err(unknown());
    };
    Ok(RingSpec { name: name.to_string(), ring, field })
}
