//! Parser for the textual form of polynomials and fractions, e.g.
//! `(1 - z2)/(z1 - 1)`, `z1^-1`, `3/2*z2 + 1`. The grammar is the one the
//! `Display` implementations emit, so parsing is round-trip stable.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{LaurentPoly, RationalFunction, RingError};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: impl Into<String>) -> RingError {
        RingError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn next_token(&mut self) -> Result<Option<(usize, Token)>, RingError> {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.text.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.text[self.pos];
        let tok = match c {
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.text.len() && self.text[end].is_ascii_digit() {
                    end += 1;
                }
                let s = std::str::from_utf8(&self.text[self.pos..end]).unwrap();
                let n: BigInt = s.parse().map_err(|_| self.err("bad integer"))?;
                self.pos = end;
                return Ok(Some((start, Token::Int(n))));
            }
            b'z' => {
                let mut end = self.pos + 1;
                while end < self.text.len() && self.text[end].is_ascii_digit() {
                    end += 1;
                }
                if end == self.pos + 1 {
                    return Err(self.err("variable name needs an index, e.g. z1"));
                }
                let s = std::str::from_utf8(&self.text[self.pos + 1..end]).unwrap();
                let idx: usize = s.parse().map_err(|_| self.err("bad variable index"))?;
                if idx == 0 || idx > self.nvars {
                    return Err(RingError::Parse {
                        pos: start,
                        msg: format!(
                            "variable z{idx} out of range (have {} variables)",
                            self.nvars
                        ),
                    });
                }
                self.pos = end;
                return Ok(Some((start, Token::Var(idx - 1))));
            }
            other => {
                return Err(RingError::Parse {
                    pos: start,
                    msg: format!("unexpected character {:?}", other as char),
                })
            }
        };
        self.pos += 1;
        Ok(Some((start, tok)))
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    nvars: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.tokens.get(self.cursor).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, msg: impl Into<String>) -> RingError {
        RingError::Parse {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, RingError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, RingError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    let rhs = self.unary()?;
                    if rhs.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = &acc / &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, RingError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            let inner = self.unary()?;
            return Ok(-&inner);
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<RationalFunction, RingError> {
        let base = self.primary()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            let neg = if matches!(self.peek(), Some(Token::Minus)) {
                self.bump();
                true
            } else {
                false
            };
            let Some(Token::Int(n)) = self.bump() else {
                return Err(self.err("expected integer exponent after ^"));
            };
            let e: i64 = i64::try_from(&n).map_err(|_| self.err("exponent too large"))?;
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(self.err("zero raised to a negative power"));
            }
            return base.pow(e).map_err(|_| self.err("bad power"));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RationalFunction, RingError> {
        match self.bump() {
            Some(Token::Int(n)) => Ok(RationalFunction::from_poly(LaurentPoly::constant(
                self.nvars,
                BigRational::from_integer(n),
            ))),
            Some(Token::Var(i)) => Ok(RationalFunction::variable(self.nvars, i)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(self.err("expected closing parenthesis")),
                }
            }
            _ => Err(self.err("expected a number, variable, or parenthesized expression")),
        }
    }
}

pub fn parse_rational_function(text: &str, nvars: usize) -> Result<RationalFunction, RingError> {
    let mut lexer = Lexer {
        text: text.as_bytes(),
        pos: 0,
        nvars,
    };
    let mut tokens = Vec::new();
    while let Some(tok) = lexer.next_token()? {
        tokens.push(tok);
    }
    let mut parser = Parser {
        tokens,
        cursor: 0,
        nvars,
        end: text.len(),
    };
    let value = parser.expr()?;
    if parser.cursor != parser.tokens.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(value)
}
