//! Text form of a plumbing: `linear: 1, 0, -1` or `cyclic: 0, 0, 0, 0`.
//!
//! ```text
//! spec    := shape ':' intlist
//! shape   := 'linear' | 'cyclic'
//! intlist := int (',' int)*
//! int     := ['+' | '-'] digit+
//! ```
//!
//! Whitespace, including newlines, may appear between any two tokens.

use std::fmt;
use std::str::FromStr;

use toric_core::{BigInt, PlumbingError, PlumbingGraph, Shape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: expected {expected}, found {found}")]
    Unexpected {
        line: usize,
        column: usize,
        expected: &'static str,
        found: String,
    },
    #[error("line {line}, column {column}: {source}")]
    Invalid {
        line: usize,
        column: usize,
        source: PlumbingError,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Unexpected { line, column, .. } | ParseError::Invalid { line, column, .. } => {
                (*line, *column)
            }
        }
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    /// 1-based line and column of the current position.
    fn line_col(&self) -> (usize, usize) {
        let before = &self.text[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let (line, column) = self.line_col();
        let found = match self.peek() {
            None => "end of input".to_string(),
            Some(c) => format!("{c:?}"),
        };
        ParseError::Unexpected {
            line,
            column,
            expected,
            found,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> &'a str {
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        let _signed = self.eat('-') || self.eat('+');
        let digits = self.text[self.pos..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.text.len() - self.pos);
        if digits == 0 {
            self.pos = start;
            return Err(self.unexpected("integer"));
        }
        self.pos += digits;
        Ok(self.text[start..self.pos].parse().expect("sign and digits"))
    }
}

pub fn parse_spec(text: &str) -> Result<PlumbingGraph, ParseError> {
    let mut cur = Cursor { text, pos: 0 };
    cur.skip_ws();
    let shape_at = cur.line_col();
    let shape = match cur.word() {
        "linear" => Shape::Linear,
        "cyclic" => Shape::Cyclic,
        _ => {
            cur.pos = 0;
            cur.skip_ws();
            return Err(cur.unexpected("'linear' or 'cyclic'"));
        }
    };
    cur.skip_ws();
    if !cur.eat(':') {
        return Err(cur.unexpected("':'"));
    }
    let mut weights = Vec::new();
    loop {
        cur.skip_ws();
        weights.push(cur.int()?);
        cur.skip_ws();
        if cur.eat(',') {
            continue;
        }
        if cur.peek().is_none() {
            break;
        }
        return Err(cur.unexpected("',' or end of input"));
    }
    PlumbingGraph::new(shape, weights).map_err(|source| ParseError::Invalid {
        line: shape_at.0,
        column: shape_at.1,
        source,
    })
}

/// Inverse of [`parse_spec`].
pub fn unparse(g: &PlumbingGraph) -> String {
    SpecText(g).to_string()
}

struct SpecText<'a>(&'a PlumbingGraph);

impl fmt::Display for SpecText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.0.shape().name())?;
        for (i, w) in self.0.weights().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// A parsed spec, usable as a clap value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spec(pub PlumbingGraph);

impl FromStr for Spec {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec(s).map(Spec)
    }
}
