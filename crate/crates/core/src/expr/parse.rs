//! Recursive descent parser for the expression grammar.
//!
//! ```text
//! expr      := term (('+' | '-') term)*
//! term      := factor (('*' | '/') factor)*
//! factor    := ('-' | '+') factor | power
//! power     := atom ('^' factor)?          exponent must be constant
//! atom      := number | 'x' | 'pi' | 'e'
//!            | func '(' expr ')'
//!            | '(' expr ')'
//!            | 'piecewise' '{' piece (';' piece)* ';'? '}'
//! piece     := '[' expr ',' expr ']' ':' expr   guard ends must be constant
//! func      := abs | exp | ln | sin | cos | sqrt | sgn
//! ```
//!
//! Whitespace is ignored. Positions in errors are byte offsets into the input.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{Expr, Piece, PiecewiseError, UnaryOp};
use crate::Interval;

#[derive(Clone, Debug, PartialEq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    /// Found one token where another was required.
    Expected {
        expected: &'static str,
        found: String,
    },
    UnknownIdentifier(String),
    InvalidNumber(String),
    NonConstantExponent,
    NonConstantGuard,
    InvalidGuard { lo: f64, hi: f64 },
    OverlappingGuards,
    EmptyPiecewise,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset of the offending token.
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::Expected { expected, found } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier `{name}`"),
            ParseErrorKind::InvalidNumber(s) => write!(f, "invalid number literal `{s}`"),
            ParseErrorKind::NonConstantExponent => {
                f.write_str("exponent must not depend on x; use exp(b*ln(a)) instead")
            }
            ParseErrorKind::NonConstantGuard => f.write_str("piecewise guard must be constant"),
            ParseErrorKind::InvalidGuard { lo, hi } => {
                write!(f, "piecewise guard [{lo}, {hi}] is empty")
            }
            ParseErrorKind::OverlappingGuards => f.write_str("piecewise guards overlap"),
            ParseErrorKind::EmptyPiecewise => f.write_str("piecewise needs at least one piece"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        use alloc::format;
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::End => String::from("end of input"),
            other => {
                let s = match other {
                    Tok::Plus => "+",
                    Tok::Minus => "-",
                    Tok::Star => "*",
                    Tok::Slash => "/",
                    Tok::Caret => "^",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::Comma => ",",
                    Tok::Colon => ":",
                    Tok::Semi => ";",
                    _ => unreachable!(),
                };
                format!("`{s}`")
            }
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b':' => Tok::Colon,
            b';' => Tok::Semi,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // Exponent only when `e` is followed by a digit or a signed digit,
                // so `2e` is left for the parser to reject rather than misread.
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let v: f64 = text.parse().map_err(|_| ParseError {
                    kind: ParseErrorKind::InvalidNumber(String::from(text)),
                    position: start,
                })?;
                out.push((Tok::Num(v), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(String::from(&src[start..i])), start));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('\u{fffd}');
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedChar(ch),
                    position: start,
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            position: self.offset(),
        }
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else if *self.peek() == Tok::End {
            Err(self.error(ParseErrorKind::UnexpectedEnd))
        } else {
            Err(self.error(ParseErrorKind::Expected {
                expected,
                found: self.peek().describe(),
            }))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = lhs + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    lhs = lhs - self.term()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = lhs * self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    lhs = lhs / self.factor()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.factor()?)
            }
            Tok::Plus => {
                self.bump();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let exponent = self.factor()?;
        let p = constant_value(&exponent).ok_or(ParseError {
            kind: ParseErrorKind::NonConstantExponent,
            position: at,
        })?;
        Ok(Expr::pow(base, p))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(v) => Ok(Expr::Const(v)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok(Expr::Var),
                "pi" => Ok(Expr::Const(core::f64::consts::PI)),
                "e" => Ok(Expr::Const(core::f64::consts::E)),
                "piecewise" => self.piecewise(at),
                other => match UnaryOp::from_name(other) {
                    Some(op) => {
                        self.expect(Tok::LParen, "`(` after function name")?;
                        let arg = self.expr()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Expr::Unary(op, Box::new(arg)))
                    }
                    None => Err(ParseError {
                        kind: ParseErrorKind::UnknownIdentifier(name),
                        position: at,
                    }),
                },
            },
            Tok::End => Err(ParseError {
                kind: ParseErrorKind::UnexpectedEnd,
                position: at,
            }),
            other => Err(ParseError {
                kind: ParseErrorKind::Expected {
                    expected: "an operand",
                    found: other.describe(),
                },
                position: at,
            }),
        }
    }

    fn piecewise(&mut self, at: usize) -> Result<Expr, ParseError> {
        self.expect(Tok::LBrace, "`{` after piecewise")?;
        let mut pieces = Vec::new();
        loop {
            if *self.peek() == Tok::RBrace && !pieces.is_empty() {
                break;
            }
            pieces.push(self.piece()?);
            match self.peek() {
                Tok::Semi => {
                    self.bump();
                }
                Tok::RBrace => break,
                Tok::End => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
                other => {
                    return Err(self.error(ParseErrorKind::Expected {
                        expected: "`;` or `}`",
                        found: other.describe(),
                    }))
                }
            }
        }
        self.expect(Tok::RBrace, "`}`")?;
        Expr::piecewise(pieces).map_err(|e| ParseError {
            kind: match e {
                PiecewiseError::Empty => ParseErrorKind::EmptyPiecewise,
                PiecewiseError::Overlap { .. } => ParseErrorKind::OverlappingGuards,
            },
            position: at,
        })
    }

    fn piece(&mut self) -> Result<Piece, ParseError> {
        let at = self.offset();
        self.expect(Tok::LBracket, "`[` opening a guard")?;
        let lo = self.guard_end()?;
        self.expect(Tok::Comma, "`,` between guard ends")?;
        let hi = self.guard_end()?;
        self.expect(Tok::RBracket, "`]` closing a guard")?;
        self.expect(Tok::Colon, "`:` after guard")?;
        let body = self.expr()?;
        let guard = Interval::new(lo, hi).map_err(|_| ParseError {
            kind: ParseErrorKind::InvalidGuard { lo, hi },
            position: at,
        })?;
        Ok(Piece { guard, body })
    }

    fn guard_end(&mut self) -> Result<f64, ParseError> {
        let at = self.offset();
        let e = self.expr()?;
        constant_value(&e).ok_or(ParseError {
            kind: ParseErrorKind::NonConstantGuard,
            position: at,
        })
    }
}

fn constant_value(e: &Expr) -> Option<f64> {
    if e.is_constant() {
        e.eval(0.0).ok()
    } else {
        None
    }
}

/// Parses `text` into an expression.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(ParseErrorKind::Expected {
            expected: "an operator or end of input",
            found: p.peek().describe(),
        }));
    }
    Ok(e)
}
