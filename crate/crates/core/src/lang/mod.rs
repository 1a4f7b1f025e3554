//! Terms and positive existential formulas over successor, product and zero.
//!
//! A term `t` is read in a ring through its translation `t~`: zero goes to
//! `0`, `t'` to `1 + t~` and a product to the product of translations. The
//! polynomials arising this way are called brachynomials.

mod builtins;
mod decide;
mod parse;

pub use builtins::{builtin_formula, builtin_term, builtin_terms, formula_names, Catalogue};
pub use decide::{decide_brachynomial, decide_brachynomial_with_cap, BrachyWitness, DEFAULT_CLOSURE_CAP};
pub use parse::{parse_sformula, parse_sterm};

use crate::error::{Error, Result};
use crate::finstruct::{Elem, FiniteStruct};
use crate::poly::{NCPoly, Var};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum STerm {
    Zero,
    Var(Var),
    Succ(Box<STerm>),
    Prod(Box<STerm>, Box<STerm>),
}

impl STerm {
    pub fn var(name: &str) -> STerm {
        STerm::Var(Var::new(name))
    }

    pub fn succ(t: STerm) -> STerm {
        STerm::Succ(Box::new(t))
    }

    pub fn prod(a: STerm, b: STerm) -> STerm {
        STerm::Prod(Box::new(a), Box::new(b))
    }

    /// The numeral `n`, i.e. `0` followed by `n` successors.
    pub fn numeral(n: usize) -> STerm {
        (0..n).fold(STerm::Zero, |t, _| STerm::succ(t))
    }

    /// `Some(n)` when the term is the numeral `n`.
    pub fn as_numeral(&self) -> Option<usize> {
        match self {
            STerm::Zero => Some(0),
            STerm::Succ(t) => t.as_numeral().map(|n| n + 1),
            _ => None,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            STerm::Zero | STerm::Var(_) => 1,
            STerm::Succ(t) => 1 + t.size(),
            STerm::Prod(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            STerm::Zero => {}
            STerm::Var(v) => {
                out.insert(v.clone());
            }
            STerm::Succ(t) => t.collect_vars(out),
            STerm::Prod(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Simultaneous substitution of terms for variables.
    pub fn substitute(&self, bindings: &BTreeMap<Var, STerm>) -> STerm {
        match self {
            STerm::Zero => STerm::Zero,
            STerm::Var(v) => bindings.get(v).cloned().unwrap_or_else(|| self.clone()),
            STerm::Succ(t) => STerm::succ(t.substitute(bindings)),
            STerm::Prod(a, b) => STerm::prod(a.substitute(bindings), b.substitute(bindings)),
        }
    }

    /// Evaluate in `s`, reading `t'` as `1 + t`.
    pub fn eval(&self, s: &FiniteStruct, env: &BTreeMap<Var, Elem>) -> Result<Elem> {
        match self {
            STerm::Zero => Ok(s.zero()),
            STerm::Var(v) => env
                .get(v)
                .copied()
                .ok_or_else(|| Error::UnboundVariable(v.to_string())),
            STerm::Succ(t) => Ok(s.succ(t.eval(s, env)?)),
            STerm::Prod(a, b) => Ok(s.mul(a.eval(s, env)?, b.eval(s, env)?)),
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(self, STerm::Zero | STerm::Var(_)) || self.as_numeral().is_some()
    }
}

impl fmt::Display for STerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_numeral() {
            return write!(f, "{n}");
        }
        match self {
            STerm::Zero => f.write_str("0"),
            STerm::Var(v) => write!(f, "{v}"),
            STerm::Succ(t) => {
                if t.is_atomic() || matches!(**t, STerm::Succ(_)) {
                    write!(f, "{t}'")
                } else {
                    write!(f, "({t})'")
                }
            }
            STerm::Prod(a, b) => {
                if matches!(**b, STerm::Prod(..)) {
                    write!(f, "{a} ({b})")
                } else {
                    write!(f, "{a} {b}")
                }
            }
        }
    }
}

impl fmt::Debug for STerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "STerm({self})")
    }
}

/// The brachynomial of a term.
pub fn expand_tilde(t: &STerm) -> NCPoly {
    match t {
        STerm::Zero => NCPoly::zero(),
        STerm::Var(v) => NCPoly::var(v.name()),
        STerm::Succ(s) => NCPoly::one() + expand_tilde(s),
        STerm::Prod(a, b) => expand_tilde(a) * expand_tilde(b),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SFormula {
    Atom(STerm, STerm),
    And(Vec<SFormula>),
    Or(Vec<SFormula>),
    Exists(Vec<Var>, Box<SFormula>),
}

impl SFormula {
    pub fn free_vars(&self) -> BTreeSet<Var> {
        match self {
            SFormula::Atom(a, b) => a.vars().union(&b.vars()).cloned().collect(),
            SFormula::And(fs) | SFormula::Or(fs) => {
                fs.iter().flat_map(SFormula::free_vars).collect()
            }
            SFormula::Exists(vs, body) => {
                let mut fv = body.free_vars();
                for v in vs {
                    fv.remove(v);
                }
                fv
            }
        }
    }

    /// Simultaneous substitution of terms for free variables.
    pub fn substitute(&self, bindings: &BTreeMap<Var, STerm>) -> SFormula {
        match self {
            SFormula::Atom(a, b) => SFormula::Atom(a.substitute(bindings), b.substitute(bindings)),
            SFormula::And(fs) => SFormula::And(fs.iter().map(|g| g.substitute(bindings)).collect()),
            SFormula::Or(fs) => SFormula::Or(fs.iter().map(|g| g.substitute(bindings)).collect()),
            SFormula::Exists(vs, body) => {
                let mut inner = bindings.clone();
                for v in vs {
                    inner.remove(v);
                }
                SFormula::Exists(vs.clone(), Box::new(body.substitute(&inner)))
            }
        }
    }

    fn eval_in(&self, s: &FiniteStruct, env: &mut BTreeMap<Var, Elem>) -> Result<bool> {
        match self {
            SFormula::Atom(a, b) => Ok(a.eval(s, env)? == b.eval(s, env)?),
            SFormula::And(fs) => {
                for g in fs {
                    if !g.eval_in(s, env)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            SFormula::Or(fs) => {
                for g in fs {
                    if g.eval_in(s, env)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            SFormula::Exists(vs, body) => {
                let saved: Vec<Option<Elem>> = vs.iter().map(|v| env.get(v).copied()).collect();
                let found = exists_rec(vs, body, s, env)?;
                for (v, old) in vs.iter().zip(saved) {
                    match old {
                        Some(e) => env.insert(v.clone(), e),
                        None => env.remove(v),
                    };
                }
                Ok(found)
            }
        }
    }
}

fn exists_rec(
    vs: &[Var],
    body: &SFormula,
    s: &FiniteStruct,
    env: &mut BTreeMap<Var, Elem>,
) -> Result<bool> {
    let Some((v, rest)) = vs.split_first() else {
        return body.eval_in(s, env);
    };
    for e in s.elements() {
        env.insert(v.clone(), e);
        if exists_rec(rest, body, s, env)? {
            return Ok(true);
        }
    }
    Ok(false)
}

impl fmt::Display for SFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SFormula::Atom(a, b) => write!(f, "{a} = {b}"),
            SFormula::And(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    match g {
                        SFormula::Or(_) | SFormula::Exists(..) => write!(f, "({g})")?,
                        _ => write!(f, "{g}")?,
                    }
                }
                Ok(())
            }
            SFormula::Or(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    match g {
                        SFormula::Exists(..) if i + 1 < fs.len() => write!(f, "({g})")?,
                        _ => write!(f, "{g}")?,
                    }
                }
                Ok(())
            }
            SFormula::Exists(vs, body) => {
                f.write_str("exists")?;
                for v in vs {
                    write!(f, " {v}")?;
                }
                write!(f, " . {body}")
            }
        }
    }
}

impl fmt::Debug for SFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SFormula({self})")
    }
}

/// Truth of `phi` in `s` under `env`; quantifiers range over the carrier.
pub fn eval_sformula(phi: &SFormula, s: &FiniteStruct, env: &BTreeMap<Var, Elem>) -> Result<bool> {
    if let Some(v) = phi.free_vars().into_iter().find(|v| !env.contains_key(v)) {
        return Err(Error::UnboundVariable(v.to_string()));
    }
    let mut env = env.clone();
    phi.eval_in(s, &mut env)
}
