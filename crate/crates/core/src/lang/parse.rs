//! Concrete syntax.
//!
//! ```text
//! term    := factor factor*                      (juxtaposition or `*`)
//! factor  := primary ( "'" | '^' n )*
//! primary := n | ident | ident '[' term (',' term)* ']' | '(' term ')'
//! formula := conj ('|' conj)*
//! conj    := unit ('&' unit)*
//! unit    := 'exists' ident+ '.' formula | atom | '(' formula ')'
//! atom    := term '=' term
//! ```
//!
//! A numeral `n` is `0` followed by `n` successors. `name[t1,..,tk]`
//! instantiates a catalogue term with the given arguments.

use super::builtins::instantiate;
use super::{SFormula, STerm};
use crate::error::Result;
use crate::poly::Var;
use crate::syntax::{Cursor, Tok};

fn term(c: &mut Cursor) -> Result<STerm> {
    let mut acc = factor(c)?;
    loop {
        if c.eat(&Tok::Star) {
            acc = STerm::prod(acc, factor(c)?);
        } else if matches!(c.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen)) {
            acc = STerm::prod(acc, factor(c)?);
        } else {
            return Ok(acc);
        }
    }
}

fn factor(c: &mut Cursor) -> Result<STerm> {
    let mut t = primary(c)?;
    loop {
        if c.eat(&Tok::Prime) {
            t = STerm::succ(t);
        } else if c.eat(&Tok::Caret) {
            let e = c.exponent()?;
            let base = t.clone();
            for _ in 1..e {
                t = STerm::prod(t, base.clone());
            }
        } else {
            return Ok(t);
        }
    }
}

fn primary(c: &mut Cursor) -> Result<STerm> {
    let err = c.error("expected numeral, variable or `(`");
    let pos = c.pos();
    match c.bump() {
        Some(Tok::Int(n)) => {
            let n: usize = n
                .try_into()
                .map_err(|_| crate::error::Error::parse(pos, "numeral too large"))?;
            if n > 4096 {
                return Err(crate::error::Error::parse(pos, "numeral too large"));
            }
            Ok(STerm::numeral(n))
        }
        Some(Tok::Ident(name)) => {
            if c.eat(&Tok::LBracket) {
                let mut args = vec![term(c)?];
                while c.eat(&Tok::Comma) {
                    args.push(term(c)?);
                }
                c.expect(&Tok::RBracket, "`]`")?;
                instantiate(&name, &args).map_err(|e| match e {
                    crate::error::Error::Parse { .. } => e,
                    other => crate::error::Error::parse(pos, other.to_string()),
                })
            } else {
                Ok(STerm::Var(Var::new(&name)))
            }
        }
        Some(Tok::LParen) => {
            let t = term(c)?;
            c.expect(&Tok::RParen, "`)`")?;
            Ok(t)
        }
        _ => Err(err),
    }
}

pub fn parse_sterm(text: &str) -> Result<STerm> {
    let mut c = Cursor::new(text)?;
    let t = term(&mut c)?;
    c.finish()?;
    Ok(t)
}

fn formula(c: &mut Cursor) -> Result<SFormula> {
    let mut parts = vec![conj(c)?];
    while c.eat(&Tok::Bar) {
        parts.push(conj(c)?);
    }
    Ok(flatten(parts, false))
}

fn conj(c: &mut Cursor) -> Result<SFormula> {
    let mut parts = vec![unit(c)?];
    while c.eat(&Tok::Amp) {
        parts.push(unit(c)?);
    }
    Ok(flatten(parts, true))
}

fn flatten(parts: Vec<SFormula>, and: bool) -> SFormula {
    if parts.len() == 1 {
        return parts.into_iter().next().expect("one part");
    }
    let mut out = Vec::new();
    for p in parts {
        match p {
            SFormula::And(inner) if and => out.extend(inner),
            SFormula::Or(inner) if !and => out.extend(inner),
            other => out.push(other),
        }
    }
    if and {
        SFormula::And(out)
    } else {
        SFormula::Or(out)
    }
}

fn unit(c: &mut Cursor) -> Result<SFormula> {
    if c.eat(&Tok::Exists) {
        let mut vars = Vec::new();
        while let Some(Tok::Ident(name)) = c.peek() {
            vars.push(Var::new(name));
            c.bump();
        }
        if vars.is_empty() {
            return Err(c.error("expected a variable after `exists`"));
        }
        c.expect(&Tok::Dot, "`.`")?;
        let body = formula(c)?;
        return Ok(SFormula::Exists(vars, Box::new(body)));
    }
    if c.peek() == Some(&Tok::LParen) {
        let mark = c.mark();
        match atom(c) {
            Ok(a) => return Ok(a),
            Err(atom_err) => {
                c.reset(mark);
                c.bump();
                let grouped = formula(c).and_then(|f| {
                    c.expect(&Tok::RParen, "`)`")?;
                    Ok(f)
                });
                return grouped.map_err(|group_err| later(atom_err, group_err));
            }
        }
    }
    atom(c)
}

fn later(a: crate::error::Error, b: crate::error::Error) -> crate::error::Error {
    use crate::error::Error::Parse;
    match (&a, &b) {
        (Parse { pos: pa, .. }, Parse { pos: pb, .. }) if pa > pb => a,
        _ => b,
    }
}

fn atom(c: &mut Cursor) -> Result<SFormula> {
    let lhs = term(c)?;
    c.expect(&Tok::Eq, "`=`")?;
    let rhs = term(c)?;
    Ok(SFormula::Atom(lhs, rhs))
}

pub fn parse_sformula(text: &str) -> Result<SFormula> {
    let mut c = Cursor::new(text)?;
    let f = formula(&mut c)?;
    c.finish()?;
    Ok(f)
}
