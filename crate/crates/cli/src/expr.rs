//! Polynomial expressions in `t` with rational literals: `+ - * / ^` and
//! parentheses. Whitespace is ignored; juxtaposition multiplies (`3t^2`).

use abel_core::exactalg::{RatPoly, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::ParseError;

const MAX_POWER: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

/// Parses `s`; error positions are 1-based character columns within `s`.
pub fn parse_poly(s: &str) -> Result<RatPoly, ParseError> {
    let mut p = Parser {
        toks: lex(s)?,
        pos: 0,
        end: s.chars().count() + 1,
    };
    if p.toks.is_empty() {
        return Err(ParseError::at(1, 1, "empty expression"));
    }
    let v = p.sum()?;
    match p.toks.get(p.pos) {
        None => Ok(v),
        Some((_, c)) => Err(ParseError::at(1, *c, "unexpected token")),
    }
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Num(digits.parse().expect("digits")), col));
            continue;
        }
        let tok = match c {
            't' => Tok::T,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            _ => {
                return Err(ParseError::at(
                    1,
                    col,
                    format!("unexpected character {c:?}"),
                ))
            }
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn sum(&mut self) -> Result<RatPoly, ParseError> {
        let mut acc = self.product()?;
        while let Some(op) = self.peek().cloned() {
            match op {
                Tok::Plus => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<RatPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(ParseError::at(1, col, "division by zero"));
                    }
                    if !d.is_constant() {
                        return Err(ParseError::at(
                            1,
                            col,
                            "division by a non-constant polynomial",
                        ));
                    }
                    acc = acc.scale(&d.lc().recip());
                }
                Some(Tok::Num(_) | Tok::T | Tok::Open) => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatPoly, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatPoly, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Num(n), _)) => {
                self.pos += 1;
                let e = n
                    .to_usize()
                    .filter(|&e| e <= MAX_POWER)
                    .ok_or_else(|| ParseError::at(1, col, "exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => Err(ParseError::at(
                1,
                col,
                "expected a nonnegative integer exponent",
            )),
        }
    }

    fn primary(&mut self) -> Result<RatPoly, ParseError> {
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Num(n), _)) => {
                self.pos += 1;
                Ok(RatPoly::constant(Rational::from_integer(n)))
            }
            Some((Tok::T, _)) => {
                self.pos += 1;
                Ok(RatPoly::x())
            }
            Some((Tok::Open, _)) => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(ParseError::at(1, self.col(), "expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(_) => Err(ParseError::at(1, col, "expected a number, t, or '('")),
            None => Err(ParseError::at(1, col, "unexpected end of expression")),
        }
    }
}

/// Canonical expression text, highest power first, e.g. `4/3*t^9 - 7*t^5`.
pub fn render(p: &RatPoly) -> String {
    p.display_with("t")
}

#[cfg(test)]
mod tests {
    use super::*;
    use abel_core::exactalg::rat;

    #[test]
    fn literals_and_powers() {
        assert_eq!(
            parse_poly("4/3*t^9").unwrap(),
            RatPoly::monomial(rat(4, 3), 9)
        );
        assert_eq!(
            parse_poly(" - 7 t ^ 5 ").unwrap(),
            RatPoly::monomial(rat(-7, 1), 5)
        );
        assert_eq!(
            parse_poly("(t+1)^2 - t^2").unwrap(),
            RatPoly::from_ints(&[1, 2])
        );
        assert_eq!(
            parse_poly("-t^2").unwrap(),
            RatPoly::monomial(rat(-1, 1), 2)
        );
        assert_eq!(parse_poly("2^3").unwrap(), RatPoly::from_ints(&[8]));
        assert_eq!(parse_poly("t/2").unwrap(), RatPoly::monomial(rat(1, 2), 1));
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_poly("t + * 2").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse_poly("1/(t-1)").unwrap_err();
        assert!(e.message.contains("non-constant"));
        assert_eq!(parse_poly("t^x").unwrap_err().column, 3);
        assert_eq!(parse_poly("(t").unwrap_err().column, 3);
        assert_eq!(parse_poly("3/0").unwrap_err().message, "division by zero");
        assert_eq!(parse_poly("2 # t").unwrap_err().column, 3);
    }

    #[test]
    fn rendering_parses_back() {
        for s in ["4/3*t^9 - 7*t^5 + 23/3*t", "-t^2 + 1/2", "t"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&render(&p)).unwrap(), p);
        }
    }
}
