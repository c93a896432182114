//! Minimal polynomial expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := rational | variable | '(' expr ')'
//! ```
//!
//! Variables are `x1..x9` and `y1..y9`; rationals are `p` or `p/q`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Context, MultiPoly};
use crate::{Error, QPoly, Rational, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '*' => out.push(Token::Star),
            '^' => out.push(Token::Caret),
            '/' => out.push(Token::Slash),
            '(' => out.push(Token::LParen),
            ')' => out.push(Token::RParen),
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Token::Num(digits.parse().expect("ascii digits")));
            }
            'x' | 'y' => match chars.get(i + 1) {
                Some(d @ '1'..='9') if !chars.get(i + 2).is_some_and(|c| c.is_ascii_alphanumeric()) => {
                    out.push(Token::Var(format!("{c}{d}")));
                    i += 1;
                }
                _ => return Err(Error::Parse(format!("bad variable at position {i}; expected x1..x9 or y1..y9"))),
            },
            other => return Err(Error::Parse(format!("unexpected character `{other}` at position {i}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    ctx: Context,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<QPoly> {
        let mut acc = self.term()?;
        while let Some(op @ (Token::Plus | Token::Minus)) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == Token::Plus { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<QPoly> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Token::Num(k)) => {
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QPoly> {
        match self.next() {
            Some(Token::Num(n)) => {
                let value = if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Num(d)) if !d.is_zero() => Rational::new(n, d),
                        _ => return Err(Error::Parse("malformed rational literal".into())),
                    }
                } else {
                    Rational::from_integer(n)
                };
                Ok(MultiPoly::constant(&self.ctx, value))
            }
            Some(Token::Var(name)) => MultiPoly::var_named(&self.ctx, &name),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Parse an expression such as `y1*y2*(y1+y2)`. The context holds exactly
/// the variables that occur, `x`'s before `y`'s, each in index order.
pub fn parse_poly(text: &str) -> Result<QPoly> {
    let tokens = tokenize(text)?;
    let vars: BTreeSet<String> = tokens
        .iter()
        .filter_map(|t| match t {
            Token::Var(v) => Some(v.clone()),
            _ => None,
        })
        .collect();
    let mut parser = Parser { tokens: &tokens, pos: 0, ctx: Context::new(vars) };
    let out = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input at token {}", parser.pos)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    #[test]
    fn parses_cubic() {
        let p = parse_poly("y1*y2*(y1+y2)").unwrap();
        assert_eq!(p.context().names(), &["y1", "y2"]);
        assert_eq!(p.to_string(), "y1^2*y2 + y1*y2^2");
    }

    #[test]
    fn precedence_and_rationals() {
        let p = parse_poly("-x1^2 + 3/4*x1 - (x2 - 1)*2").unwrap();
        assert_eq!(p.coefficient(&[2, 0]), int(-1));
        assert_eq!(p.coefficient(&[1, 0]), rat(3, 4));
        assert_eq!(p.coefficient(&[0, 1]), int(-2));
        assert_eq!(p.coefficient(&[0, 0]), int(2));
        assert_eq!(parse_poly("(x1+x2)^3").unwrap().num_terms(), 4);
        assert_eq!(parse_poly("6/4").unwrap().coefficient(&[]), rat(3, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["x0", "z1", "x12", "x1^-1", "1/0", "(x1", "x1 x2", "x1^", "", "x1 +"] {
            assert!(parse_poly(bad).is_err(), "{bad}");
        }
    }
}
