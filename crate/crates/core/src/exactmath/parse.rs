//! A small recursive-descent reader for polynomials written like
//! `h1^2 + 4*x1*y1 - 1/2*(x2*y2 - x3*y3)`.

use super::{ExactField, MathError, Polynomial, Variables};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>, MathError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Num(n));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        n.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(n));
            }
            _ => {
                chars.next();
                out.push(match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    other => return Err(MathError::Parse(format!("unexpected character {other:?}"))),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a, F> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a Variables,
    _f: std::marker::PhantomData<F>,
}

impl<F: ExactField> Parser<'_, F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial<F>, MathError> {
        let mut acc = Polynomial::zero(self.vars.clone());
        let mut sign = match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                -1
            }
            Some(Token::Plus) => {
                self.bump();
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Token::Plus) => sign = 1,
                Some(Token::Minus) => sign = -1,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>, MathError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                // implicit product, e.g. `h1(x2*y2 - x3*y3)` or `2 x1`
                Some(Token::Ident(_)) | Some(Token::LParen) | Some(Token::Num(_)) => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some(Token::Slash) => {
                    self.bump();
                    let d = match self.bump() {
                        Some(Token::Num(n)) => n,
                        other => return Err(MathError::Parse(format!("expected integer divisor, got {other:?}"))),
                    };
                    let den: F = parse_scalar(&d)?;
                    if den.is_zero() {
                        return Err(MathError::Parse("division by zero".into()));
                    }
                    acc = acc.scale(&(F::one() / den));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>, MathError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Token::Num(n)) => {
                    let k: u32 = n.parse().map_err(|_| MathError::Parse(format!("bad exponent {n}")))?;
                    Ok(base.pow(k))
                }
                other => Err(MathError::Parse(format!("expected exponent, got {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F>, MathError> {
        match self.bump() {
            Some(Token::Num(n)) => Ok(Polynomial::constant(self.vars.clone(), parse_scalar(&n)?)),
            Some(Token::Ident(name)) => {
                let i = self.vars.index_of(&name).ok_or_else(|| MathError::UnknownVariable(name.clone()))?;
                Ok(Polynomial::var(self.vars.clone(), i))
            }
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(e),
                    other => Err(MathError::Parse(format!("expected ')', got {other:?}"))),
                }
            }
            Some(Token::Minus) => {
                let a = self.power()?;
                Ok(-&a)
            }
            other => Err(MathError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_scalar<F: ExactField>(s: &str) -> Result<F, MathError> {
    s.parse::<F>().map_err(|_| MathError::Parse(format!("bad number {s}")))
}

impl<F: ExactField> Polynomial<F> {
    /// Parses a polynomial over `vars`. Accepts `+ - * / ^`, parentheses,
    /// implicit multiplication and rational coefficients such as `3/4*h1^2`.
    pub fn parse(s: &str, vars: &Variables) -> Result<Self, MathError> {
        let tokens = tokenize(s)?;
        if tokens.is_empty() {
            return Err(MathError::Parse("empty polynomial".into()));
        }
        let mut p = Parser { tokens, pos: 0, vars, _f: std::marker::PhantomData };
        let out = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(MathError::Parse(format!("trailing input at token {}", p.pos)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;

    #[test]
    fn parses_expanded_and_factored_forms() {
        let v = Variables::new(["y1", "x1", "h1", "y2", "y3", "x2", "x3", "h0"]);
        let a = Poly::parse("h1(x2*y2 - x3*y3) - 2(y1*y2*x3 + x1*x2*y3)", &v).unwrap();
        let b = Poly::parse("h1*x2*y2 - h1*x3*y3 - 2*y1*y2*x3 - 2*x1*x2*y3", &v).unwrap();
        assert_eq!(a, b);
        let c = Poly::parse("3/4*h1^2 + -h0", &v).unwrap();
        assert_eq!(c.to_string(), "3/4*h1^2 - h0");
    }

    #[test]
    fn rejects_garbage() {
        let v = Variables::new(["x"]);
        assert!(matches!(Poly::parse("x + z", &v), Err(MathError::UnknownVariable(_))));
        assert!(Poly::parse("x +", &v).is_err());
        assert!(Poly::parse("x ^ y", &v).is_err());
        assert!(Poly::parse("", &v).is_err());
        assert!(Poly::parse("x/0", &v).is_err());
        assert!(Poly::parse("x $", &v).is_err());
    }
}
