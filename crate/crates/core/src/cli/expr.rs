//! Module expressions: `W(psi)`, `V(psi)`, `head(e)`, `e + e` (direct sum)
//! and `e * e` (tensor product), with the usual precedence and parentheses.

use crate::coordalg::Point;
use crate::ema::constant_eta;
use crate::error::{EmaError, Result};
use crate::repmod::{canonical_transversal, common_algebra, evaluation_module, transport, AlgebraRef, FiniteModule};
use crate::weyl::{head, twisted_weyl, weyl_module, WeylOptions};

use super::scenario::Scenario;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Weyl(String),
    Irreducible(String),
    Head(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> EmaError {
        EmaError::Parse(format!("{what} at offset {} in module expression {:?}", self.pos, self.src))
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name"));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut e = self.product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            e = Expr::Sum(Box::new(e), Box::new(self.product()?));
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            e = Expr::Tensor(Box::new(e), Box::new(self.atom()?));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let e = self.sum()?;
            self.expect(b')')?;
            return Ok(e);
        }
        let f = self.ident()?;
        self.expect(b'(')?;
        let e = match f.as_str() {
            "W" => Expr::Weyl(self.ident()?),
            "V" => Expr::Irreducible(self.ident()?),
            "head" => Expr::Head(Box::new(self.sum()?)),
            _ => return Err(self.err(&format!("unknown constructor {f:?}"))),
        };
        self.expect(b')')?;
        Ok(e)
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, src };
    let e = p.sum()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

fn support_algebra(sc: &Scenario, points: &[Point], equivariant: bool) -> Result<AlgebraRef> {
    let eta = constant_eta(points, 1);
    Ok(if equivariant {
        AlgebraRef::Invariant(sc.setting.invariant(&eta)?)
    } else {
        AlgebraRef::Truncated(sc.setting.truncated(&eta))
    })
}

fn pair(sc: &Scenario, a: FiniteModule, b: FiniteModule) -> Result<(FiniteModule, FiniteModule)> {
    let target = common_algebra(&sc.setting, &a.algebra, &b.algebra)?;
    Ok((transport(&a, &target)?, transport(&b, &target)?))
}

/// Evaluates an expression; equivariant functions give modules over
/// invariant algebras and the others modules over truncations.
pub fn eval(sc: &Scenario, e: &Expr, opts: &WeylOptions) -> Result<FiniteModule> {
    let s = &sc.setting;
    match e {
        Expr::Weyl(name) => {
            let psi = sc.psi(name)?;
            if psi.equivariant {
                Ok(twisted_weyl(s, psi, &canonical_transversal(psi, &s.gamma), opts)?.module)
            } else {
                Ok(weyl_module(s, psi, opts)?.module)
            }
        }
        Expr::Irreducible(name) => {
            let psi = sc.psi(name)?;
            let points = if psi.equivariant { canonical_transversal(psi, &s.gamma) } else { psi.support() };
            evaluation_module(s, psi, &support_algebra(sc, &points, psi.equivariant)?)
        }
        Expr::Head(inner) => head(s, &eval(sc, inner, opts)?),
        Expr::Sum(a, b) => {
            let (a, b) = pair(sc, eval(sc, a, opts)?, eval(sc, b, opts)?)?;
            a.direct_sum(&b)
        }
        Expr::Tensor(a, b) => {
            let (a, b) = pair(sc, eval(sc, a, opts)?, eval(sc, b, opts)?)?;
            a.tensor(&b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("W(a) + V(b) * head(W(c))").unwrap();
        let want = Expr::Sum(
            Box::new(Expr::Weyl("a".into())),
            Box::new(Expr::Tensor(
                Box::new(Expr::Irreducible("b".into())),
                Box::new(Expr::Head(Box::new(Expr::Weyl("c".into())))),
            )),
        );
        assert_eq!(e, want);
        assert!(parse_expr("W(a) +").is_err());
        assert!(parse_expr("X(a)").is_err());
    }
}
