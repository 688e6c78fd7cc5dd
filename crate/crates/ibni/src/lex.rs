//! Shared lexer for the program, policy, and driver-config surface syntaxes.
//!
//! All three formats use `--` line comments, the same identifier and integer
//! literal syntax, and an overlapping operator alphabet, so they share one
//! token stream. Parsers assign meaning (keywords, which operators are legal)
//! contextually.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i32),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Dot,
    Bang,    // !
    Star,    // *
    Plus,    // +
    Minus,   // -
    Lt,      // <
    Le,      // <=
    Gt,      // >
    Ge,      // >=
    EqEq,    // ==
    BangEq,  // !=
    Eq,      // =
    Amp,     // &
    AmpAmp,  // &&
    Pipe,    // |
    PipePipe, // ||
    Arrow,   // ->
    Assign,  // :=
    Declass, // |>
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Bang => write!(f, "`!`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Lt => write!(f, "`<`"),
            Tok::Le => write!(f, "`<=`"),
            Tok::Gt => write!(f, "`>`"),
            Tok::Ge => write!(f, "`>=`"),
            Tok::EqEq => write!(f, "`==`"),
            Tok::BangEq => write!(f, "`!=`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Amp => write!(f, "`&`"),
            Tok::AmpAmp => write!(f, "`&&`"),
            Tok::Pipe => write!(f, "`|`"),
            Tok::PipePipe => write!(f, "`||`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Assign => write!(f, "`:=`"),
            Tok::Declass => write!(f, "`|>`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

/// A token plus the byte offset where it starts, for error messages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexError {
    #[error("line {line}, column {col}: unexpected character `{ch}`")]
    UnexpectedChar { ch: char, line: usize, col: usize },
    #[error("line {line}, column {col}: integer literal out of 32-bit range")]
    IntOutOfRange { line: usize, col: usize },
    #[error("line {line}, column {col}: lone `:` (expected `:=`)")]
    LoneColon { line: usize, col: usize },
}

/// Convert a byte offset into a 1-based (line, column) pair.
pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in src.char_indices() {
        if i >= offset {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

pub fn lex(src: &str) -> Result<Vec<Spanned>, LexError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    let err_at = |i: usize, ch: char| {
        let (line, col) = line_col(src, i);
        LexError::UnexpectedChar { ch, line, col }
    };
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '-' if i + 1 < bytes.len() && bytes[i + 1] == b'-' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            '-' if i + 1 < bytes.len() && bytes[i + 1] == b'>' => {
                toks.push(Spanned { tok: Tok::Arrow, offset: i });
                i += 2;
            }
            '-' => {
                toks.push(Spanned { tok: Tok::Minus, offset: i });
                i += 1;
            }
            '(' => {
                toks.push(Spanned { tok: Tok::LParen, offset: i });
                i += 1;
            }
            ')' => {
                toks.push(Spanned { tok: Tok::RParen, offset: i });
                i += 1;
            }
            '{' => {
                toks.push(Spanned { tok: Tok::LBrace, offset: i });
                i += 1;
            }
            '}' => {
                toks.push(Spanned { tok: Tok::RBrace, offset: i });
                i += 1;
            }
            ',' => {
                toks.push(Spanned { tok: Tok::Comma, offset: i });
                i += 1;
            }
            ';' => {
                toks.push(Spanned { tok: Tok::Semi, offset: i });
                i += 1;
            }
            '.' => {
                toks.push(Spanned { tok: Tok::Dot, offset: i });
                i += 1;
            }
            '+' => {
                toks.push(Spanned { tok: Tok::Plus, offset: i });
                i += 1;
            }
            '*' => {
                toks.push(Spanned { tok: Tok::Star, offset: i });
                i += 1;
            }
            '!' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'=' {
                    toks.push(Spanned { tok: Tok::BangEq, offset: i });
                    i += 2;
                } else {
                    toks.push(Spanned { tok: Tok::Bang, offset: i });
                    i += 1;
                }
            }
            '<' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'=' {
                    toks.push(Spanned { tok: Tok::Le, offset: i });
                    i += 2;
                } else {
                    toks.push(Spanned { tok: Tok::Lt, offset: i });
                    i += 1;
                }
            }
            '>' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'=' {
                    toks.push(Spanned { tok: Tok::Ge, offset: i });
                    i += 2;
                } else {
                    toks.push(Spanned { tok: Tok::Gt, offset: i });
                    i += 1;
                }
            }
            '=' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'=' {
                    toks.push(Spanned { tok: Tok::EqEq, offset: i });
                    i += 2;
                } else {
                    toks.push(Spanned { tok: Tok::Eq, offset: i });
                    i += 1;
                }
            }
            '&' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'&' {
                    toks.push(Spanned { tok: Tok::AmpAmp, offset: i });
                    i += 2;
                } else {
                    toks.push(Spanned { tok: Tok::Amp, offset: i });
                    i += 1;
                }
            }
            '|' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'|' {
                    toks.push(Spanned { tok: Tok::PipePipe, offset: i });
                    i += 2;
                } else if i + 1 < bytes.len() && bytes[i + 1] == b'>' {
                    toks.push(Spanned { tok: Tok::Declass, offset: i });
                    i += 2;
                } else {
                    toks.push(Spanned { tok: Tok::Pipe, offset: i });
                    i += 1;
                }
            }
            ':' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'=' {
                    toks.push(Spanned { tok: Tok::Assign, offset: i });
                    i += 2;
                } else {
                    let (line, col) = line_col(src, i);
                    return Err(LexError::LoneColon { line, col });
                }
            }
            '0' if i + 1 < bytes.len() && (bytes[i + 1] == b'x' || bytes[i + 1] == b'X') => {
                let start = i;
                i += 2;
                let digits_start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_hexdigit() {
                    i += 1;
                }
                let (line, col) = line_col(src, start);
                if i == digits_start {
                    return Err(LexError::UnexpectedChar { ch: 'x', line, col });
                }
                let raw = &src[digits_start..i];
                // Hex literals denote raw 32-bit patterns (two's complement).
                let v = u32::from_str_radix(raw, 16)
                    .map_err(|_| LexError::IntOutOfRange { line, col })?;
                toks.push(Spanned { tok: Tok::Int(v as i32), offset: start });
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let (line, col) = line_col(src, start);
                let v: i64 = src[start..i]
                    .parse()
                    .map_err(|_| LexError::IntOutOfRange { line, col })?;
                if v > i32::MAX as i64 {
                    return Err(LexError::IntOutOfRange { line, col });
                }
                toks.push(Spanned { tok: Tok::Int(v as i32), offset: start });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && {
                    let c = bytes[i] as char;
                    c.is_ascii_alphanumeric() || c == '_'
                } {
                    i += 1;
                }
                toks.push(Spanned {
                    tok: Tok::Ident(src[start..i].to_string()),
                    offset: start,
                });
            }
            other => return Err(err_at(i, other)),
        }
    }
    toks.push(Spanned { tok: Tok::Eof, offset: src.len() });
    Ok(toks)
}

/// Cursor over a token stream, shared by the recursive-descent parsers.
pub struct Cursor<'a> {
    pub src: &'a str,
    toks: Vec<Spanned>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Result<Self, LexError> {
        Ok(Cursor { src, toks: lex(src)?, pos: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek2(&self) -> &Tok {
        let i = (self.pos + 1).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub fn offset(&self) -> usize {
        self.toks[self.pos].offset
    }

    pub fn line_col(&self) -> (usize, usize) {
        line_col(self.src, self.offset())
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    /// True when the next token is the identifier `kw`.
    pub fn at_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub fn eat_kw(&mut self, kw: &str) -> bool {
        if self.at_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        lex(src).unwrap().into_iter().map(|s| s.tok).collect()
    }

    #[test]
    fn operators_longest_match() {
        assert_eq!(
            toks("|> || | != ! -> - := == ="),
            vec![
                Tok::Declass,
                Tok::PipePipe,
                Tok::Pipe,
                Tok::BangEq,
                Tok::Bang,
                Tok::Arrow,
                Tok::Minus,
                Tok::Assign,
                Tok::EqEq,
                Tok::Eq,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn comments_and_idents() {
        assert_eq!(
            toks("foo -- rest is ignored != &&\nbar_2"),
            vec![
                Tok::Ident("foo".into()),
                Tok::Ident("bar_2".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn hex_literal_is_twos_complement() {
        assert_eq!(toks("0xffffff00"), vec![Tok::Int(-256), Tok::Eof]);
        assert_eq!(toks("0x7fffffff"), vec![Tok::Int(i32::MAX), Tok::Eof]);
    }

    #[test]
    fn decimal_out_of_range_rejected() {
        assert!(matches!(
            lex("2147483648"),
            Err(LexError::IntOutOfRange { .. })
        ));
        assert_eq!(toks("2147483647"), vec![Tok::Int(i32::MAX), Tok::Eof]);
    }

    #[test]
    fn error_position_reported() {
        match lex("ok\n  @") {
            Err(LexError::UnexpectedChar { ch: '@', line: 2, col: 3 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }
}
