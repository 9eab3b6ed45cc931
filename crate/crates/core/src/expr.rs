//! The expression mini-language for elementary functions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)?
//! factor := rational | var | 'abs' '(' expr ')' | 'max' '(' expr ',' expr ')'
//!         | 'min' '(' expr ',' expr ')' | '-' factor | '(' expr ')'
//! var    := 'x' | 'x' index          (x and x1 both name the first coordinate)
//! ```
//!
//! A product must have a rational literal on one side. A `-` directly in
//! front of a literal is part of the literal.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{PlFunction, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FunctionExpr {
    Const(Rational),
    /// Zero-based coordinate index.
    Var(usize),
    Neg(Box<FunctionExpr>),
    Add(Box<FunctionExpr>, Box<FunctionExpr>),
    Sub(Box<FunctionExpr>, Box<FunctionExpr>),
    Scale(Rational, Box<FunctionExpr>),
    Abs(Box<FunctionExpr>),
    Max(Box<FunctionExpr>, Box<FunctionExpr>),
    Min(Box<FunctionExpr>, Box<FunctionExpr>),
}

impl FunctionExpr {
    pub fn eval(&self, coords: &[Rational]) -> Result<Rational> {
        use FunctionExpr::*;
        Ok(match self {
            Const(c) => c.clone(),
            Var(i) => coords
                .get(*i)
                .cloned()
                .ok_or(Error::DimensionMismatch { index: *i + 1, dim: coords.len() })?,
            Neg(e) => -e.eval(coords)?,
            Add(a, b) => a.eval(coords)? + b.eval(coords)?,
            Sub(a, b) => a.eval(coords)? - b.eval(coords)?,
            Scale(c, e) => c * e.eval(coords)?,
            Abs(e) => e.eval(coords)?.abs(),
            Max(a, b) => a.eval(coords)?.max(b.eval(coords)?),
            Min(a, b) => a.eval(coords)?.min(b.eval(coords)?),
        })
    }

    /// Number of coordinates the expression refers to (highest index + 1).
    pub fn arity(&self) -> usize {
        use FunctionExpr::*;
        match self {
            Const(_) => 0,
            Var(i) => i + 1,
            Neg(e) | Scale(_, e) | Abs(e) => e.arity(),
            Add(a, b) | Sub(a, b) | Max(a, b) | Min(a, b) => a.arity().max(b.arity()),
        }
    }

    /// Exact piecewise-linear form of a univariate expression.
    pub fn to_pl(&self) -> Result<PlFunction> {
        use FunctionExpr::*;
        Ok(match self {
            Const(c) => PlFunction::constant(c.clone()),
            Var(0) => PlFunction::identity(),
            Var(i) => return Err(Error::DimensionMismatch { index: i + 1, dim: 1 }),
            Neg(e) => e.to_pl()?.neg(),
            Add(a, b) => a.to_pl()?.add(&b.to_pl()?),
            Sub(a, b) => a.to_pl()?.sub(&b.to_pl()?),
            Scale(c, e) => e.to_pl()?.scale(c),
            Abs(e) => {
                let f = e.to_pl()?;
                f.pointwise_max(&f.neg())
            }
            Max(a, b) => a.to_pl()?.pointwise_max(&b.to_pl()?),
            Min(a, b) => a.to_pl()?.pointwise_min(&b.to_pl()?),
        })
    }
}

impl FromStr for FunctionExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<FunctionExpr> {
        parse_expr(s)
    }
}

pub fn parse_expr(text: &str) -> Result<FunctionExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<FunctionExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = FunctionExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = FunctionExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<FunctionExpr> {
        let lhs = self.factor()?;
        if self.peek() != Some(b'*') {
            return Ok(lhs);
        }
        let star = self.pos;
        self.pos += 1;
        let rhs = self.factor()?;
        match (lhs, rhs) {
            (FunctionExpr::Const(c), e) | (e, FunctionExpr::Const(c)) => {
                Ok(FunctionExpr::Scale(c, Box::new(e)))
            }
            _ => Err(Error::Syntax {
                pos: star,
                msg: "product needs a rational literal on one side".into(),
            }),
        }
    }

    fn factor(&mut self) -> Result<FunctionExpr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    let c = self.rational()?;
                    return Ok(FunctionExpr::Const(-c));
                }
                Ok(FunctionExpr::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(FunctionExpr::Const(self.rational()?)),
            Some(c) if c.is_ascii_alphabetic() => self.word(),
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        s.parse().ok()
    }

    fn rational(&mut self) -> Result<Rational> {
        let numer = self.digits().ok_or_else(|| self.error("expected integer"))?;
        if self.peek() != Some(b'/') {
            return Ok(Rational::from_integer(numer));
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let denom = self
            .digits()
            .ok_or_else(|| self.error("expected positive integer denominator"))?;
        if denom.is_zero() {
            return Err(Error::Syntax { pos: at, msg: "division by zero in literal".into() });
        }
        Ok(Rational::new(numer, denom))
    }

    fn word(&mut self) -> Result<FunctionExpr> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let unknown = || Error::Syntax { pos: start, msg: format!("unknown identifier `{word}`") };
        match word {
            "abs" => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(FunctionExpr::Abs(Box::new(e)))
            }
            "max" | "min" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                let (a, b) = (Box::new(a), Box::new(b));
                Ok(if word == "max" { FunctionExpr::Max(a, b) } else { FunctionExpr::Min(a, b) })
            }
            "x" => Ok(FunctionExpr::Var(0)),
            _ => {
                let index = word.strip_prefix('x').ok_or_else(unknown)?;
                if !index.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(unknown());
                }
                match index.parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(FunctionExpr::Var(i - 1)),
                    _ => Err(Error::Syntax { pos: start, msg: "coordinate indices start at 1".into() }),
                }
            }
        }
    }
}

impl fmt::Display for FunctionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FunctionExpr::*;
        let sum = |e: &FunctionExpr| matches!(e, Add(..) | Sub(..));
        match self {
            Const(c) => write!(f, "{c}"),
            Var(0) => write!(f, "x"),
            Var(i) => write!(f, "x{}", i + 1),
            Neg(e) => {
                if sum(e) || matches!(**e, Scale(..) | Const(_)) {
                    write!(f, "-({e})")
                } else {
                    write!(f, "-{e}")
                }
            }
            Add(a, b) | Sub(a, b) => {
                let op = if matches!(self, Add(..)) { '+' } else { '-' };
                if sum(b) {
                    write!(f, "{a} {op} ({b})")
                } else {
                    write!(f, "{a} {op} {b}")
                }
            }
            Scale(c, e) => {
                if sum(e) || matches!(**e, Scale(..)) {
                    write!(f, "{c}*({e})")
                } else {
                    write!(f, "{c}*{e}")
                }
            }
            Abs(e) => write!(f, "abs({e})"),
            Max(a, b) => write!(f, "max({a}, {b})"),
            Min(a, b) => write!(f, "min({a}, {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};

    fn p(s: &str) -> FunctionExpr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn parses_named_functions() {
        use FunctionExpr::*;
        assert_eq!(
            p("max(0,x) - 1"),
            Sub(Box::new(Max(Box::new(Const(int(0))), Box::new(Var(0)))), Box::new(Const(int(1))))
        );
        assert_eq!(p("3/2*x"), Scale(ratio(3, 2), Box::new(Var(0))));
        assert_eq!(p("x*3/2"), Scale(ratio(3, 2), Box::new(Var(0))));
        let cone = p("-abs(x-1)+2");
        assert_eq!(cone.eval(&[int(0)]).unwrap(), int(1));
        assert!(matches!(cone, Add(..)));
        assert_eq!(p("x2"), Var(1));
        assert_eq!(p("x1"), Var(0));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse_expr("1/0").unwrap_err(),
            Error::Syntax { pos: 2, msg: "division by zero in literal".into() }
        );
        assert!(matches!(parse_expr("x*x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expr("abs(x"), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_expr("y"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_expr("x0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("x +"), Err(Error::Syntax { pos: 3, .. })));
        assert!(parse_expr("1/-2").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        for s in [
            "-abs(x - 1) + 2",
            "max(0, x) - 1",
            "x - (x - 1)",
            "-3/2*x",
            "2*(x + 1)",
            "-(2*x)",
            "-(3)",
            "--x",
            "2*-3",
            "min(x1, x2) + -1/3",
        ] {
            let e = p(s);
            assert_eq!(p(&e.to_string()), e, "{s}");
        }
    }

    #[test]
    fn lowering_to_pl() {
        let f = p("abs(x)").to_pl().unwrap();
        assert_eq!(f.breakpoints(), &[int(0)]);
        assert_eq!(f.slopes(), &[int(-1), int(1)]);
        let u = p("max(0,x)-1").to_pl().unwrap();
        assert_eq!(u.breakpoints(), &[int(0)]);
        assert_eq!(u.anchor_value(), &int(-1));
        assert_eq!(u.slopes(), &[int(0), int(1)]);
        // Oracle: the AST evaluated on a small grid.
        for x in -2..=2 {
            assert_eq!(u.eval(&int(x)), int(x.max(0) - 1));
        }
        assert!(p("x2").to_pl().is_err());
    }
}
