use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: usize,
}

pub fn lex(s: &str) -> Result<Vec<Token>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token { tok: Tok::Num(s[st..i].parse().unwrap()), pos: st });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(s[st..i].to_string()), pos: st });
        } else if "+-*/^(){}[],!.".contains(c) {
            out.push(Token { tok: Tok::Sym(c), pos: i });
            i += 1;
        } else {
            return Err(Error::parse(i, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

/// Cursor over a token list.
pub struct Cursor<'a> {
    toks: &'a [Token],
    i: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token], end: usize) -> Self {
        Cursor { toks, i: 0, end }
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    pub fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    pub fn bump(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.i).map(|t| &t.tok);
        self.i += 1;
        t
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected {c:?}")))
        }
    }

    pub fn done(&self) -> bool {
        self.i >= self.toks.len()
    }

    /// Whether the next token can start an operand (for implicit products).
    pub fn at_operand(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('{')))
    }
}

/// Signed integer exponent: `2`, `-1`, `(-1)`, `{-1}`.
pub fn exponent(c: &mut Cursor) -> Result<i64> {
    let close = if c.eat('(') {
        Some(')')
    } else if c.eat('{') {
        Some('}')
    } else {
        None
    };
    let neg = c.eat('-');
    let pos = c.pos();
    let v = match c.bump() {
        Some(Tok::Num(n)) => i64::try_from(n).map_err(|_| Error::parse(pos, "exponent too large"))?,
        _ => return Err(Error::parse(pos, "expected an integer exponent")),
    };
    if let Some(cl) = close {
        c.expect(cl)?;
    }
    Ok(if neg { -v } else { v })
}
