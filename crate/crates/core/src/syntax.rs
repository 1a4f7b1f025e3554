//! Tokenizer shared by the polynomial, term and formula parsers.
//!
//! Identifiers are a single ASCII letter followed by any run of digits and
//! underscores, so `xy` is the product of `x` and `y` while `x1` and `a_12`
//! are single variables. The word `exists` is reserved.

use crate::error::{Error, Result};
use num_bigint::BigUint;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigUint),
    Ident(String),
    Exists,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Prime,
    Eq,
    Amp,
    Bar,
    Dot,
    Comma,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let pos = i;
        let tok = match c {
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigUint = text[start..i].parse().expect("digits");
                out.push(Token { tok: Tok::Int(n), pos });
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                if text[i..].starts_with("exists")
                    && !bytes
                        .get(i + 6)
                        .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                {
                    i += 6;
                    out.push(Token { tok: Tok::Exists, pos });
                    continue;
                }
                let start = i;
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(text[start..i].to_string()),
                    pos,
                });
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'\'' => Tok::Prime,
            b'=' => Tok::Eq,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'.' => Tok::Dot,
            b',' => Tok::Comma,
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::parse(pos, format!("unexpected character `{ch}`")));
            }
        };
        out.push(Token { tok, pos });
        i += 1;
    }
    Ok(out)
}

/// Cursor over a token list with the usual peek/expect helpers.
pub(crate) struct Cursor {
    toks: Vec<Token>,
    idx: usize,
    end: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self> {
        let toks = tokenize(text)?;
        Ok(Cursor {
            toks,
            idx: 0,
            end: text.len(),
        })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|t| &t.tok)
    }

    pub fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |t| t.pos)
    }

    pub fn mark(&self) -> usize {
        self.idx
    }

    pub fn reset(&mut self, mark: usize) {
        self.idx = mark;
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|t| t.tok.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok, what: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub fn at_end(&self) -> bool {
        self.idx >= self.toks.len()
    }

    pub fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos(), msg)
    }

    /// Parse a small exponent following `^`.
    pub fn exponent(&mut self) -> Result<u32> {
        match self.bump() {
            Some(Tok::Int(n)) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| self.error("exponent too large"))?;
                if e == 0 {
                    Err(self.error("exponent must be positive"))
                } else {
                    Ok(e)
                }
            }
            _ => Err(self.error("expected positive integer exponent")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_are_one_letter_plus_digits() {
        let toks = tokenize("xy1 a_12 exists u").unwrap();
        let kinds: Vec<Tok> = toks.into_iter().map(|t| t.tok).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("x".into()),
                Tok::Ident("y1".into()),
                Tok::Ident("a_12".into()),
                Tok::Exists,
                Tok::Ident("u".into()),
            ]
        );
    }

    #[test]
    fn reports_position_of_bad_character() {
        let err = tokenize("x + $").unwrap_err();
        assert_eq!(err, Error::parse(4, "unexpected character `$`"));
    }
}
