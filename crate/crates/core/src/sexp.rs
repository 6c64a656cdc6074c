//! Minimal s-expression reader with source positions.
//!
//! All file formats of this crate are whitespace-separated s-expressions.
//! The reader keeps line/column information so that surface syntax errors
//! can be reported with a position.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Atom(..) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

pub fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Reader<'a> {
    fn new(input: &'a str) -> Self {
        Reader { chars: input.chars().peekable(), line: 1, col: 1 }
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some(';') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => return,
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, ParseError> {
        self.skip_trivia();
        let pos = self.pos();
        match self.chars.peek() {
            None => err(pos, "unexpected end of input"),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => return err(self.pos(), "unclosed '('"),
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List(items, pos));
                        }
                        _ => items.push(self.read()?),
                    }
                }
            }
            Some(')') => err(pos, "unexpected ')'"),
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Sexp::Atom(s, pos))
            }
        }
    }
}

/// Reads a single s-expression; trailing input is an error.
pub fn parse_one(input: &str) -> Result<Sexp, ParseError> {
    let mut r = Reader::new(input);
    let sexp = r.read()?;
    r.skip_trivia();
    if r.chars.peek().is_some() {
        return err(r.pos(), "trailing input after expression");
    }
    Ok(sexp)
}

/// Reads all top-level s-expressions in the input.
pub fn parse_many(input: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut r = Reader::new(input);
    let mut out = Vec::new();
    loop {
        r.skip_trivia();
        if r.chars.peek().is_none() {
            if out.is_empty() {
                return err(r.pos(), "empty input");
            }
            return Ok(out);
        }
        out.push(r.read()?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_atoms_and_lists() {
        let s = parse_one("(a (b c) d)").unwrap();
        let items = s.list().unwrap();
        assert_eq!(items.len(), 3);
        assert_eq!(items[0].atom(), Some("a"));
        assert_eq!(items[1].list().unwrap()[1].atom(), Some("c"));
    }

    #[test]
    fn reports_positions() {
        let e = parse_one("(a\n  (b").unwrap_err();
        assert_eq!(e.pos.line, 2);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(parse_many("  ; just a comment\n").is_err());
    }
}
