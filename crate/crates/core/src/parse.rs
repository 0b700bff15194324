//! Recursive-descent parser for differential polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' NAT)?
//! atom   := INT | VAR | DOP '(' VAR ')' | '(' expr ')'
//! VAR    := 'y' NAT
//! DOP    := 'D[' NAT (',' NAT)* ']'      -- exactly m entries
//! ```
//!
//! Whitespace is insignificant and integers are reduced modulo `p`.

use crate::diffpoly::{DerivativeVariable, DiffPolynomial};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hurwitz::MultiIndex;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    /// Integer literal that fits in `u64`.
    Nat(u64),
    /// Longer integer literal, already reduced mod p.
    Int(u32),
    Var(usize),
    Dop(Vec<u32>),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

struct Lexer {
    chars: Vec<char>,
    i: usize,
    line: usize,
    column: usize,
    field: PrimeField,
}

impl Lexer {
    fn new(src: &str, field: PrimeField) -> Self {
        Lexer {
            chars: src.chars().collect(),
            i: 0,
            line: 1,
            column: 1,
            field,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn err(&self, pos: Pos, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        (!s.is_empty()).then_some(s)
    }

    fn nat(&mut self, what: &str) -> Result<u64> {
        let pos = self.pos();
        let d = self.digits().ok_or_else(|| self.err(pos, format!("expected {what}")))?;
        d.parse().map_err(|_| self.err(pos, format!("{what} too large")))
    }

    fn next(&mut self) -> Result<(Tok, Pos)> {
        self.skip_ws();
        let pos = self.pos();
        let Some(c) = self.peek() else {
            return Ok((Tok::End, pos));
        };
        let tok = match c {
            '+' => {
                self.bump();
                Tok::Plus
            }
            '-' => {
                self.bump();
                Tok::Minus
            }
            '*' => {
                self.bump();
                Tok::Star
            }
            '^' => {
                self.bump();
                Tok::Caret
            }
            '(' => {
                self.bump();
                Tok::LParen
            }
            ')' => {
                self.bump();
                Tok::RParen
            }
            'y' => {
                self.bump();
                let n = self.nat("variable index after 'y'")?;
                Tok::Var(n as usize)
            }
            'D' => {
                self.bump();
                if self.peek() != Some('[') {
                    return Err(self.err(self.pos(), "expected '[' after 'D'"));
                }
                self.bump();
                let mut entries = Vec::new();
                loop {
                    self.skip_ws();
                    let e = self.nat("derivative order")?;
                    entries.push(u32::try_from(e).map_err(|_| self.err(pos, "derivative order too large"))?);
                    self.skip_ws();
                    let sep = self.pos();
                    match self.bump() {
                        Some(',') => continue,
                        Some(']') => break,
                        _ => return Err(self.err(sep, "expected ',' or ']' in derivative operator")),
                    }
                }
                Tok::Dop(entries)
            }
            c if c.is_ascii_digit() => {
                let d = self.digits().expect("digit present");
                match d.parse::<u64>() {
                    Ok(v) => Tok::Nat(v),
                    // too long for u64: only usable as a coefficient
                    Err(_) => {
                        let p = self.field.characteristic() as u64;
                        let r = d
                            .bytes()
                            .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                        Tok::Int(r as u32)
                    }
                }
            }
            other => return Err(self.err(pos, format!("unexpected character '{other}'"))),
        };
        Ok((tok, pos))
    }
}

struct Parser {
    lexer: Lexer,
    look: Tok,
    look_pos: Pos,
    n: usize,
    m: usize,
}

impl Parser {
    fn advance(&mut self) -> Result<()> {
        let (t, p) = self.lexer.next()?;
        self.look = t;
        self.look_pos = p;
        Ok(())
    }

    fn err(&self, message: impl Into<String>) -> Error {
        self.lexer.err(self.look_pos, message)
    }

    fn field(&self) -> PrimeField {
        self.lexer.field
    }

    fn constant(&self, c: u32) -> DiffPolynomial {
        DiffPolynomial::constant(self.field(), self.n, self.m, c as i64)
    }

    fn expr(&mut self) -> Result<DiffPolynomial> {
        let mut negate = false;
        match self.look {
            Tok::Plus => self.advance()?,
            Tok::Minus => {
                negate = true;
                self.advance()?
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.look {
                Tok::Plus => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Tok::Minus => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DiffPolynomial> {
        let mut acc = self.factor()?;
        while self.look == Tok::Star {
            self.advance()?;
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<DiffPolynomial> {
        let base = self.atom()?;
        if self.look == Tok::Caret {
            self.advance()?;
            let Tok::Nat(e) = self.look else {
                return Err(self.err("expected a natural exponent after '^'"));
            };
            self.advance()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn variable(&self, index: usize) -> Result<usize> {
        if index == 0 || index > self.n {
            return Err(Error::UnknownVariable(format!("y{index} (n={})", self.n)));
        }
        Ok(index)
    }

    fn atom(&mut self) -> Result<DiffPolynomial> {
        match self.look.clone() {
            Tok::Nat(v) => {
                self.advance()?;
                let c = self.field().reduce_u64(v);
                Ok(self.constant(c))
            }
            Tok::Int(c) => {
                self.advance()?;
                Ok(self.constant(c))
            }
            Tok::Var(i) => {
                let var = self.variable(i)?;
                self.advance()?;
                Ok(DiffPolynomial::variable(
                    self.field(),
                    self.n,
                    self.m,
                    DerivativeVariable::base(var, self.m),
                ))
            }
            Tok::Dop(entries) => {
                if entries.len() != self.m {
                    return Err(Error::IndexOutOfRange(format!(
                        "derivative operator with {} entries, expected m={}",
                        entries.len(),
                        self.m
                    )));
                }
                self.advance()?;
                if self.look != Tok::LParen {
                    return Err(self.err("expected '(' after derivative operator"));
                }
                self.advance()?;
                let Tok::Var(i) = self.look else {
                    return Err(self.err("expected a variable inside D[...]( )"));
                };
                let var = self.variable(i)?;
                self.advance()?;
                if self.look != Tok::RParen {
                    return Err(self.err("expected ')'"));
                }
                self.advance()?;
                Ok(DiffPolynomial::variable(
                    self.field(),
                    self.n,
                    self.m,
                    DerivativeVariable::new(var, MultiIndex::new(entries)),
                ))
            }
            Tok::LParen => {
                self.advance()?;
                let e = self.expr()?;
                if self.look != Tok::RParen {
                    return Err(self.err("expected ')'"));
                }
                self.advance()?;
                Ok(e)
            }
            Tok::End => Err(self.err("unexpected end of input")),
            other => Err(self.err(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a differential polynomial over `F_p{y_1..y_n}` with `m` derivations.
pub fn parse_polynomial(text: &str, field: PrimeField, n: usize, m: usize) -> Result<DiffPolynomial> {
    let mut parser = Parser {
        lexer: Lexer::new(text, field),
        look: Tok::End,
        look_pos: Pos { line: 1, column: 1 },
        n,
        m,
    };
    parser.advance()?;
    let e = parser.expr()?;
    if parser.look != Tok::End {
        return Err(parser.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn parses_examples() {
        let f = parse_polynomial("D[1](y1) + y1", k(2), 1, 1).unwrap();
        assert_eq!(f.terms().count(), 2);
        assert_eq!(f.to_string(), "D[1](y1) + y1");

        let g = parse_polynomial("y1^2 * D[0,1](y2) - 3", k(5), 2, 2).unwrap();
        assert_eq!(g.terms().count(), 2);
        let (mono, _) = g.terms().last().unwrap();
        assert_eq!(mono.degree(), 3);
        assert_eq!(g.to_string(), "y1^2*D[0,1](y2) + 2");
        assert_eq!(g.coeff(&crate::diffpoly::DiffMonomial::one()), 2);
    }

    #[test]
    fn canonicalizes() {
        let f = parse_polynomial("(y1 + 1)^2 - 2*y1 - 1", k(7), 1, 1).unwrap();
        assert_eq!(f.to_string(), "y1^2");
        let z = parse_polynomial("  7 * y1\n + 0", k(7), 1, 1).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
        let big = parse_polynomial("123456789012345678901234567890", k(7), 1, 1).unwrap();
        assert_eq!(big.to_string(), (123456789012345678901234567890u128 % 7).to_string());
        assert_eq!(parse_polynomial("D[0](y1)", k(2), 1, 1).unwrap().to_string(), "y1");
        assert_eq!(parse_polynomial("-y1", k(3), 1, 1).unwrap().to_string(), "2*y1");
    }

    #[test]
    fn errors() {
        match parse_polynomial("D[1(y1)", k(2), 1, 1) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 4)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_polynomial("y1 +\n  * y1", k(2), 1, 1),
            Err(Error::Syntax { line: 2, column: 3, .. })
        ));
        assert!(matches!(parse_polynomial("y3", k(2), 2, 1), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_polynomial("y0", k(2), 2, 1), Err(Error::UnknownVariable(_))));
        assert!(matches!(
            parse_polynomial("D[1,0](y1)", k(2), 1, 1),
            Err(Error::IndexOutOfRange(_))
        ));
        assert!(matches!(parse_polynomial("y1 y1", k(2), 1, 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("", k(2), 1, 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("y1 ^ y1", k(2), 1, 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x1", k(2), 1, 1), Err(Error::Syntax { .. })));
    }
}
