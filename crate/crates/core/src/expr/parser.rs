//! Recursive-descent parser for element literals.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary ("*" unary)*
//! unary   := "-" unary | primary
//! primary := NUMBER | BLADE | "(" expr ")"
//! NUMBER  := DIGITS ["." [DIGITS]] | "." DIGITS | DIGITS "/" DIGITS
//! BLADE   := "e" INDEX+          (INDEX in 1..9, strictly increasing)
//! ```

use num_rational::BigRational;

use super::ExprError;
use crate::scalar::parse_rational;

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    /// Scalar literal with its source text and exact value.
    Literal {
        text: String,
        value: BigRational,
    },
    /// Blade token `e<digits>`: 1-based generator indices, increasing.
    Blade(Vec<usize>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

/// Syntax tree node annotated with the byte offset of its first token (for
/// binary nodes, of the operator).
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(String),
    Blade(Vec<usize>),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(t) => format!("number {t:?}"),
            Tok::Blade(ix) => {
                let digits: String = ix.iter().map(|i| i.to_string()).collect();
                format!("blade \"e{digits}\"")
            }
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, i)),
            b'-' => out.push((Tok::Minus, i)),
            b'*' => out.push((Tok::Star, i)),
            b'(' => out.push((Tok::LParen, i)),
            b')' => out.push((Tok::RParen, i)),
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &src[start..i];
                if parse_rational(text).is_none() {
                    return Err(ExprError::Literal {
                        offset: start,
                        text: text.to_string(),
                    });
                }
                out.push((Tok::Number(text.to_string()), start));
                continue;
            }
            b'e' => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &src[start + 1..i];
                if digits.is_empty() {
                    return Err(ExprError::Syntax {
                        offset: start,
                        expected: vec!["generator digits after 'e'".into()],
                        found: "'e'".into(),
                    });
                }
                let indices: Vec<usize> = digits.bytes().map(|d| usize::from(d - b'0')).collect();
                let increasing = indices.windows(2).all(|w| w[0] < w[1]);
                if indices.contains(&0) || !increasing {
                    return Err(ExprError::Blade {
                        offset: start,
                        token: src[start..i].to_string(),
                    });
                }
                out.push((Tok::Blade(indices), start));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ExprError::Syntax {
                    offset: i,
                    expected: vec!["number".into(), "blade".into(), "'-'".into(), "'('".into()],
                    found: format!("{ch:?}"),
                });
            }
        }
        i += 1;
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, usize) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ExprError {
        let (tok, offset) = self.peek();
        ExprError::Syntax {
            offset: *offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let (tok, offset) = self.peek().clone();
            let ctor: fn(Box<Expr>, Box<Expr>) -> ExprKind = match tok {
                Tok::Plus => ExprKind::Add,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr {
                kind: ctor(Box::new(lhs), Box::new(rhs)),
                offset,
            };
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let (Tok::Star, offset) = self.peek().clone() {
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr {
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                offset,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if let (Tok::Minus, offset) = self.peek().clone() {
            self.bump();
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                offset,
            });
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        const START: &[&str] = &["number", "blade", "'-'", "'('"];
        let (tok, offset) = self.peek().clone();
        match tok {
            Tok::Number(text) => {
                self.bump();
                let value = parse_rational(&text).expect("validated by the lexer");
                Ok(Expr {
                    kind: ExprKind::Literal { text, value },
                    offset,
                })
            }
            Tok::Blade(ix) => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Blade(ix),
                    offset,
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                match self.peek().0 {
                    Tok::RParen => {
                        self.bump();
                        Ok(inner)
                    }
                    _ => Err(self.error(&["'+'", "'-'", "'*'", "')'"])),
                }
            }
            _ => Err(self.error(START)),
        }
    }
}

/// Parses an element literal such as `"1 + 2*e1 - 3*e12"`.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    if text.trim().is_empty() {
        return Err(ExprError::Empty);
    }
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    match p.peek().0 {
        Tok::Eof => Ok(e),
        _ => Err(p.error(&["'+'", "'-'", "'*'", "end of input"])),
    }
}
