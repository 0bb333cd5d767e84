//! Tokenizer shared by the rule grammars and the class/model file grammar.

use std::fmt;
use std::sync::Arc;

use crate::diagnostics::{Code, Diagnostic, Span};
use crate::names::VarKind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Str(String),
    /// `?x`, `~x` or `$X`.
    RewriteVar(VarKind, String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Dot,
    Plus,
    Pipe,
    Gt,
    Arrow,
    BiArrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::RewriteVar(k, s) => write!(f, "`{}{s}`", k.sigil()),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::Gt => f.write_str("`>`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::BiArrow => f.write_str("`<->`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

/// Splits `text` into tokens. `//` and `#` start line comments.
pub fn lex(text: &str, file: Option<Arc<str>>) -> Result<Vec<Token>, Diagnostic> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut line_start = 0;
    let span_at = |start: usize, end: usize, line: usize, line_start: usize| Span {
        file: file.clone(),
        offset: start,
        len: end - start,
        line,
        col: text[line_start..start].chars().count() + 1,
    };

    while i < bytes.len() {
        let b = bytes[i];
        if b == b'\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if b == b'#' || (b == b'/' && bytes.get(i + 1) == Some(&b'/')) {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = match b {
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b';' => Tok::Semi,
            b':' => Tok::Colon,
            b'.' => Tok::Dot,
            b'+' => Tok::Plus,
            b'|' => Tok::Pipe,
            b'>' => Tok::Gt,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::BiArrow
            }
            b'"' => {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j] != b'"' && bytes[j] != b'\n' {
                    j += 1;
                }
                if j >= bytes.len() || bytes[j] != b'"' {
                    return Err(Diagnostic::error(Code::Syntax, "unterminated string literal")
                        .with_span(&span_at(start, j, line, line_start)));
                }
                let s = text[i + 1..j].to_owned();
                i = j;
                Tok::Str(s)
            }
            b'?' | b'~' | b'$' => {
                let kind = match b {
                    b'?' => VarKind::Element,
                    b'~' => VarKind::Sequence,
                    _ => VarKind::Term,
                };
                let mut j = i + 1;
                while j < bytes.len() && is_ident_byte(bytes[j]) {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(Diagnostic::error(
                        Code::Syntax,
                        format!("expected a variable name after `{}`", b as char),
                    )
                    .with_span(&span_at(start, j, line, line_start)));
                }
                let name = text[i + 1..j].to_owned();
                i = j - 1;
                Tok::RewriteVar(kind, name)
            }
            b if is_ident_byte(b) => {
                let mut j = i;
                while j < bytes.len() && is_ident_byte(bytes[j]) {
                    j += 1;
                }
                let s = text[i..j].to_owned();
                i = j - 1;
                Tok::Ident(s)
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(Diagnostic::error(Code::Syntax, format!("unexpected character `{ch}`"))
                    .with_span(&span_at(start, start + ch.len_utf8(), line, line_start)));
            }
        };
        i += 1;
        tokens.push(Token {
            tok,
            span: span_at(start, i, line, line_start),
        });
    }
    tokens.push(Token {
        tok: Tok::Eof,
        span: span_at(bytes.len(), bytes.len(), line, line_start),
    });
    Ok(tokens)
}

/// A position in a token list.
pub struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// `tokens` must end with [`Tok::Eof`].
    pub fn new(tokens: &'a [Token]) -> Self {
        debug_assert!(matches!(tokens.last(), Some(Token { tok: Tok::Eof, .. })));
        Self { tokens, pos: 0 }
    }

    pub fn peek(&self) -> &'a Tok {
        &self.tokens[self.pos].tok
    }

    pub fn peek_at(&self, n: usize) -> &'a Tok {
        let i = (self.pos + n).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    pub fn span(&self) -> &'a Span {
        &self.tokens[self.pos].span
    }

    pub fn next(&mut self) -> &'a Token {
        let t = &self.tokens[self.pos];
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at(&self, tok: &Tok) -> bool {
        self.peek() == tok
    }

    pub fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.at(tok) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Diagnostic {
        Diagnostic::error(Code::Syntax, message).with_span(self.span())
    }

    pub fn unexpected(&self, expected: &str) -> Diagnostic {
        self.error(format!("expected {expected}, found {}", self.peek()))
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<&'a Span, Diagnostic> {
        if self.at(tok) {
            Ok(&self.next().span)
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<&'a Span, Diagnostic> {
        if self.at_keyword(kw) {
            Ok(&self.next().span)
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<(&'a str, &'a Span), Diagnostic> {
        match self.peek() {
            Tok::Ident(s) => {
                let span = &self.next().span;
                Ok((s.as_str(), span))
            }
            _ => Err(self.unexpected(what)),
        }
    }
}
