//! Bracket notation for scoring games.
//!
//! Grammar (whitespace ignored between tokens):
//!
//! ```text
//! game     := rational | "{" opts "|" rational "|" opts "}"
//! opts     := "." | game ("," game)*
//! rational := integer | integer "/" integer | terminating decimal
//! ```
//!
//! A bare rational `s` denotes the leaf `{.|s|.}`, and leaves print back as
//! bare rationals, so `parse(format(g)) ≅ g`. Every internal node must spell
//! out its score explicitly.

use crate::game::Game;
use crate::score::Score;
use std::fmt;

/// Syntax error with the byte offset at which parsing failed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {:?}", byte as char)))
        }
    }

    fn game(&mut self) -> Result<Game, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'{') => {
                self.pos += 1;
                let left = self.opts()?;
                self.skip_ws();
                self.expect(b'|')?;
                let score = self.rational()?;
                self.skip_ws();
                self.expect(b'|')?;
                let right = self.opts()?;
                self.skip_ws();
                self.expect(b'}')?;
                Ok(Game::new(left, score, right))
            }
            Some(_) => Ok(Game::leaf(self.rational()?)),
            None => Err(self.error("expected a game")),
        }
    }

    fn opts(&mut self) -> Result<Vec<Game>, ParseError> {
        self.skip_ws();
        if self.peek() == Some(b'.') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = vec![self.game()?];
        loop {
            self.skip_ws();
            if self.peek() == Some(b',') {
                self.pos += 1;
                out.push(self.game()?);
            } else {
                return Ok(out);
            }
        }
    }

    fn rational(&mut self) -> Result<Score, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') || self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected a rational"));
        }
        match self.peek() {
            Some(b'/') => {
                self.pos += 1;
                let denom_start = self.pos;
                while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                if self.pos == denom_start {
                    return Err(self.error("expected a denominator"));
                }
            }
            Some(b'.') => {
                self.pos += 1;
                let frac_start = self.pos;
                while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                if self.pos == frac_start {
                    return Err(self.error("expected decimal digits"));
                }
            }
            _ => {}
        }
        let literal = &self.text[start..self.pos];
        literal.parse::<Score>().map_err(|_| ParseError {
            offset: start,
            message: format!("invalid rational {literal:?}"),
        })
    }
}

/// Parses bracket notation into a [`Game`].
pub fn parse_game(text: &str) -> Result<Game, ParseError> {
    let mut parser = Parser::new(text);
    let game = parser.game()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(game)
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_leaf() {
            return write!(f, "{}", self.score());
        }
        write!(f, "{{")?;
        write_opts(f, self.left_options())?;
        write!(f, "|{}|", self.score())?;
        write_opts(f, self.right_options())?;
        write!(f, "}}")
    }
}

fn write_opts(f: &mut fmt::Formatter<'_>, opts: &[Game]) -> fmt::Result {
    if opts.is_empty() {
        return write!(f, ".");
    }
    for (i, g) in opts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{g}")?;
    }
    Ok(())
}
