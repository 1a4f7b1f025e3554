//! Polynomial text syntax: integers, identifiers, `+`, `-`, `*` or
//! juxtaposition for products, parentheses and `^` for positive powers.

use super::{CPoly, NCPoly};
use crate::error::Result;
use crate::syntax::{Cursor, Tok};
use num_bigint::BigInt;

trait RingBuild: Sized {
    fn int(n: BigInt) -> Self;
    fn var(name: &str) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn pow(&self, e: u32) -> Self;
}

impl RingBuild for NCPoly {
    fn int(n: BigInt) -> Self {
        NCPoly::constant(n)
    }
    fn var(name: &str) -> Self {
        NCPoly::var(name)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: u32) -> Self {
        NCPoly::pow(self, e)
    }
}

impl RingBuild for CPoly {
    fn int(n: BigInt) -> Self {
        CPoly::constant(n)
    }
    fn var(name: &str) -> Self {
        CPoly::var(name)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: u32) -> Self {
        CPoly::pow(self, e)
    }
}

fn expr<P: RingBuild>(c: &mut Cursor) -> Result<P> {
    let negate = if c.eat(&Tok::Minus) {
        true
    } else {
        c.eat(&Tok::Plus);
        false
    };
    let mut acc: P = product(c)?;
    if negate {
        acc = acc.neg();
    }
    loop {
        if c.eat(&Tok::Plus) {
            acc = acc.add(&product(c)?);
        } else if c.eat(&Tok::Minus) {
            acc = acc.sub(&product(c)?);
        } else {
            return Ok(acc);
        }
    }
}

fn starts_factor(t: Option<&Tok>) -> bool {
    matches!(t, Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen))
}

fn product<P: RingBuild>(c: &mut Cursor) -> Result<P> {
    let mut acc: P = factor(c)?;
    loop {
        if c.eat(&Tok::Star) {
            acc = acc.mul(&factor(c)?);
        } else if starts_factor(c.peek()) {
            acc = acc.mul(&factor(c)?);
        } else {
            return Ok(acc);
        }
    }
}

fn factor<P: RingBuild>(c: &mut Cursor) -> Result<P> {
    let mut base: P = atom(c)?;
    while c.eat(&Tok::Caret) {
        let e = c.exponent()?;
        base = base.pow(e);
    }
    Ok(base)
}

fn atom<P: RingBuild>(c: &mut Cursor) -> Result<P> {
    let err = c.error("expected integer, variable or `(`");
    match c.bump() {
        Some(Tok::Int(n)) => Ok(P::int(BigInt::from(n))),
        Some(Tok::Ident(name)) => Ok(P::var(&name)),
        Some(Tok::LParen) => {
            let inner = expr(c)?;
            c.expect(&Tok::RParen, "`)`")?;
            Ok(inner)
        }
        _ => Err(err),
    }
}

pub(crate) fn parse_poly(text: &str) -> Result<NCPoly> {
    let mut c = Cursor::new(text)?;
    let p = expr(&mut c)?;
    c.finish()?;
    Ok(p)
}

pub(crate) fn parse_cpoly(text: &str) -> Result<CPoly> {
    let mut c = Cursor::new(text)?;
    let p = expr(&mut c)?;
    c.finish()?;
    Ok(p)
}
