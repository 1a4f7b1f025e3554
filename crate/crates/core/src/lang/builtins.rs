//! Named terms and formulas used throughout the workbench.

use super::{parse_sformula, parse_sterm, SFormula, STerm};
use crate::error::{Error, Result};
use crate::poly::Var;
use std::collections::BTreeMap;

/// Catalogue terms as `(name, body)` over the parameters `x`, `y`, `z`.
const TERMS: &[(&str, &str)] = &[
    ("p1", "(x z)' (y z)'"),
    ("q1", "((x y)' z^2)'"),
    ("p2", "(z x)' (y z)'"),
    ("q2", "(z (x y)' z)'"),
];

const PARAMS: [&str; 3] = ["x", "y", "z"];

/// Formulas over free variables `x`, `y`, `z`, where `z` stands for the sum.
const FORMULAS: &[(&str, &str)] = &[
    ("S_perp", "x y = 0 & z' = x' y'"),
    (
        "S_comm",
        "x z y = x y z & p1[x,y,z] = q1[x,y,z] & p1[x,y',z'] = q1[x,y',z']",
    ),
    ("S_div", "(x = 0 & z = y) | exists u . (u x = 1 & z u = (y u)')"),
];

/// Every catalogue entry, keyed by name.
#[derive(Debug, Clone)]
pub struct Catalogue {
    pub terms: BTreeMap<String, STerm>,
    pub formulas: BTreeMap<String, SFormula>,
}

pub fn builtin_terms() -> Catalogue {
    let terms = TERMS
        .iter()
        .map(|(n, _)| (n.to_string(), builtin_term(n).expect("catalogue term parses")))
        .collect();
    let formulas = FORMULAS
        .iter()
        .map(|(n, _)| (n.to_string(), builtin_formula(n).expect("catalogue formula parses")))
        .collect();
    Catalogue { terms, formulas }
}

/// Catalogue term in the variables `x`, `y`, `z`.
pub fn builtin_term(name: &str) -> Result<STerm> {
    let (_, text) = TERMS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    parse_sterm(text)
}

pub fn builtin_formula(name: &str) -> Result<SFormula> {
    let (_, text) = FORMULAS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    parse_sformula(text)
}

pub fn formula_names() -> impl Iterator<Item = &'static str> {
    FORMULAS.iter().map(|(n, _)| *n)
}

/// `name[args]`: the catalogue term with its parameters replaced by `args`.
pub(crate) fn instantiate(name: &str, args: &[STerm]) -> Result<STerm> {
    let body = builtin_term(name)?;
    if args.len() != PARAMS.len() {
        return Err(Error::usage(format!(
            "`{name}` takes {} arguments, got {}",
            PARAMS.len(),
            args.len()
        )));
    }
    let bindings: BTreeMap<Var, STerm> = PARAMS
        .iter()
        .zip(args)
        .map(|(p, a)| (Var::new(p), a.clone()))
        .collect();
    Ok(body.substitute(&bindings))
}
