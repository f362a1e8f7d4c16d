//! Tokenizer and parser for the small "sum of products" expression language
//! shared by parameter polynomials (`3*c^2 - 1/2*c1*c2`) and Pontryagin
//! combinations (`62*p[3] - 13*p[2]*p[1] + 2*p[1]^3`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// A bare identifier such as `c` or `c1`.
    Name(String),
    /// An indexed symbol such as `p[2]`.
    Indexed(String, u32),
}

/// One parsed summand: a rational coefficient times a product of atom powers.
#[derive(Clone, Debug, PartialEq)]
pub struct Summand {
    pub coeff: Rational,
    pub factors: Vec<(Atom, u32)>,
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LBracket,
    RBracket,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Int(digits.parse().expect("ascii digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            '+' | '-' | '*' | '/' | '^' | '[' | ']' => {
                out.push(match ch {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '[' => Token::LBracket,
                    _ => Token::RBracket,
                });
                i += 1;
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{other}` in `{src}`"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in `{}`", self.src))
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        match self.next() {
            Some(Token::Int(n)) => u32::try_from(n).map_err(|_| self.err(what)),
            _ => Err(self.err(what)),
        }
    }

    fn sum(&mut self) -> Result<Vec<Summand>> {
        let mut out = Vec::new();
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected `+` or `-`")),
            };
            let mut s = self.product()?;
            if negative {
                s.coeff = -s.coeff;
            }
            out.push(s);
            first = false;
        }
        if out.is_empty() {
            return Err(self.err("empty expression"));
        }
        Ok(out)
    }

    fn product(&mut self) -> Result<Summand> {
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        loop {
            match self.next() {
                Some(Token::Int(n)) => {
                    let mut value = Rational::from_integer(n);
                    if self.peek() == Some(&Token::Slash) {
                        self.pos += 1;
                        match self.next() {
                            Some(Token::Int(d)) if !d.is_zero() => {
                                value /= Rational::from_integer(d);
                            }
                            _ => return Err(self.err("expected nonzero denominator")),
                        }
                    }
                    coeff *= value;
                }
                Some(Token::Ident(name)) => {
                    let atom = if self.peek() == Some(&Token::LBracket) {
                        self.pos += 1;
                        let idx = self.small_int("expected index")?;
                        if self.next() != Some(Token::RBracket) {
                            return Err(self.err("expected `]`"));
                        }
                        Atom::Indexed(name, idx)
                    } else {
                        Atom::Name(name)
                    };
                    let exp = if self.peek() == Some(&Token::Caret) {
                        self.pos += 1;
                        self.small_int("expected exponent")?
                    } else {
                        1
                    };
                    factors.push((atom, exp));
                }
                _ => return Err(self.err("expected number or symbol")),
            }
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(Summand { coeff, factors })
    }
}

/// Parses a signed sum of products. Coefficients may be written as `n` or
/// `n/d` factors anywhere in a product.
pub fn parse_sum(src: &str) -> Result<Vec<Summand>> {
    let tokens = tokenize(src)?;
    let mut p = Parser { src, tokens, pos: 0 };
    p.sum()
}
