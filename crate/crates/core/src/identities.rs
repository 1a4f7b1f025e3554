//! A registry of polynomial identities in the free ring, each checked by
//! expanding both sides to canonical form.
//!
//! Case files hold blocks separated by blank lines:
//!
//! ```text
//! name: successor-product
//! citation: successor of a sum of orthogonal elements
//! lhs: (1 + x)(1 + y)
//! rhs: 1 + x + y + xy
//! subst: y = x^2
//! ```
//!
//! `subst` is optional and may repeat; substitutions apply in order to both
//! sides before comparison.

use crate::error::{Error, Result};
use crate::poly::{commutator, weyl_normal_form, NCPoly, Var};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCase {
    pub name: String,
    pub citation: String,
    pub lhs: NCPoly,
    pub rhs: NCPoly,
    pub substitutions: Vec<BTreeMap<Var, NCPoly>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub citation: String,
    pub holds: bool,
    /// `lhs - rhs` after substitution.
    pub difference: NCPoly,
}

impl IdentityCase {
    pub fn new(name: &str, citation: &str, lhs: NCPoly, rhs: NCPoly) -> Self {
        IdentityCase {
            name: name.into(),
            citation: citation.into(),
            lhs,
            rhs,
            substitutions: Vec::new(),
        }
    }

    pub fn with_substitution(mut self, bindings: BTreeMap<Var, NCPoly>) -> Self {
        self.substitutions.push(bindings);
        self
    }

    fn apply(&self, p: &NCPoly) -> NCPoly {
        self.substitutions.iter().fold(p.clone(), |acc, b| acc.substitute(b))
    }

    /// Both sides after substitution.
    pub fn sides(&self) -> (NCPoly, NCPoly) {
        (self.apply(&self.lhs), self.apply(&self.rhs))
    }

    /// The same case with every variable renamed through `f`.
    pub fn renamed(&self, f: impl Fn(&Var) -> Var) -> IdentityCase {
        IdentityCase {
            name: self.name.clone(),
            citation: self.citation.clone(),
            lhs: self.lhs.rename(&f),
            rhs: self.rhs.rename(&f),
            substitutions: self
                .substitutions
                .iter()
                .map(|b| b.iter().map(|(v, p)| (f(v), p.rename(&f))).collect())
                .collect(),
        }
    }

    /// Every case obtained by adding one to a single coefficient of the
    /// substituted right-hand side, or adding the constant `1` when that side
    /// is zero.
    pub fn single_coefficient_mutations(&self) -> Vec<IdentityCase> {
        let (lhs, rhs) = self.sides();
        let mut words: Vec<_> = rhs.terms().map(|(w, _)| w.clone()).collect();
        if words.is_empty() {
            words.push(crate::poly::Word::empty());
        }
        words
            .into_iter()
            .map(|w| {
                let bump = NCPoly::monomial(w.clone(), BigInt::one());
                IdentityCase {
                    name: format!("{}+[{w}]", self.name),
                    citation: self.citation.clone(),
                    lhs: lhs.clone(),
                    rhs: &rhs + &bump,
                    substitutions: Vec::new(),
                }
            })
            .collect()
    }
}

pub fn verify_identity(case: &IdentityCase) -> IdentityReport {
    let (lhs, rhs) = case.sides();
    let difference = &lhs - &rhs;
    IdentityReport {
        name: case.name.clone(),
        citation: case.citation.clone(),
        holds: difference.is_zero(),
        difference,
    }
}

fn p(s: &str) -> NCPoly {
    NCPoly::parse(s).expect("registry polynomial parses")
}

/// The built-in registry.
pub fn builtin_cases() -> Vec<IdentityCase> {
    let (x, y, z) = (p("x"), p("y"), p("z"));
    let mut cases = vec![
        IdentityCase::new(
            "p1-q1",
            "(1+xz)(1+yz) differs from 1+(1+xy)z^2 by (x+y-z)z + x[z,y]z",
            p("(1 + xz)(1 + yz)"),
            p("1 + (1 + xy)z^2") + p("(x + y - z)z") + &x * &commutator(&z, &y) * &z,
        ),
        IdentityCase::new(
            "p2-q2",
            "(1+zx)(1+yz) + [x,z] equals 1+z(1+xy)z + (x+y-z)z",
            p("(1 + zx)(1 + yz)") + commutator(&x, &z),
            p("1 + z(1 + xy)z + (x + y - z)z"),
        ),
        IdentityCase::new(
            "c3",
            "1+(x+y+xzy)z factors as (1+xz)(1+yz)",
            p("1 + (x + y + xzy)z"),
            p("(1 + xz)(1 + yz)"),
        ),
        IdentityCase::new(
            "c3-at-sum",
            "c3 specialised at z = x+y",
            p("1 + (x + y + xzy)z"),
            p("(1 + xz)(1 + yz)"),
        )
        .with_substitution(BTreeMap::from([(Var::new("z"), p("x + y"))])),
        IdentityCase::new(
            "orthogonal-core",
            "(1+x)(1+y) - 1 - x - y - xy vanishes",
            p("(1 + x)(1 + y) - 1 - x - y - xy"),
            NCPoly::zero(),
        ),
    ];
    for n in 2..=5u32 {
        let ones = (0..n).fold(NCPoly::zero(), |acc, _| acc + NCPoly::one());
        cases.push(IdentityCase::new(
            &format!("integer-multiple-{n}"),
            "the integer n read as 1+...+1 acts on x as n·x from both sides",
            &ones * &x + &x * &ones,
            x.scale(&BigInt::from(2 * n)),
        ));
    }
    for d in 1..=4u32 {
        let mut rhs = NCPoly::zero();
        let mut binom = BigInt::one();
        for k in 0..=d {
            rhs = rhs + x.pow(k).scale(&binom);
            binom = binom * BigInt::from(d - k) / BigInt::from(k + 1);
        }
        cases.push(IdentityCase::new(
            &format!("binomial-{d}"),
            "(1+x)^d expands by binomial coefficients",
            (NCPoly::one() + &x).pow(d),
            rhs,
        ));
    }
    cases
}

pub fn run_builtin_suite() -> Vec<IdentityReport> {
    builtin_cases().iter().map(verify_identity).collect()
}

/// Outcome of the central-power check in the Weyl algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylReport {
    pub m: u32,
    /// Normal form of `x^m y - y x^m` in characteristic zero.
    pub normal_form: NCPoly,
    /// Normal form modulo `m`.
    pub reduced: NCPoly,
    pub holds: bool,
}

/// Checks that `x^m y - y x^m` normalises to `m x^(m-1)`, and to zero
/// modulo `m`.
pub fn weyl_check(m: u32) -> Result<WeylReport> {
    if m < 2 {
        return Err(Error::usage("m must be at least 2"));
    }
    let (x, y) = (NCPoly::var("x"), NCPoly::var("y"));
    let q = &(&x.pow(m) * &y) - &(&y * &x.pow(m));
    let normal_form = weyl_normal_form(&q, 0)?;
    let reduced = weyl_normal_form(&q, m as u64)?;
    let expected = x.pow(m - 1).scale(&BigInt::from(m));
    let holds = normal_form == expected && reduced.is_zero();
    Ok(WeylReport {
        m,
        normal_form,
        reduced,
        holds,
    })
}

/// Parse identity cases from the block format described above.
pub fn parse_cases(text: &str) -> Result<Vec<IdentityCase>> {
    let mut cases = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    let lines: Vec<&str> = text.lines().collect();
    for (i, line) in lines.iter().enumerate() {
        let t = line.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            if !block.is_empty() {
                cases.push(parse_block(&block)?);
                block.clear();
            }
        } else {
            block.push((i + 1, t));
        }
    }
    if !block.is_empty() {
        cases.push(parse_block(&block)?);
    }
    Ok(cases)
}

fn parse_block(block: &[(usize, &str)]) -> Result<IdentityCase> {
    let mut name = None;
    let mut citation = String::new();
    let mut lhs = None;
    let mut rhs = None;
    let mut subs = Vec::new();
    let at = |ln: usize, e: Error| Error::usage(format!("line {ln}: {e}"));
    for &(ln, line) in block {
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::usage(format!("line {ln}: expected `key: value`")))?;
        let value = value.trim();
        match key.trim() {
            "name" => name = Some(value.to_string()),
            "citation" => citation = value.to_string(),
            "lhs" => lhs = Some(NCPoly::parse(value).map_err(|e| at(ln, e))?),
            "rhs" => rhs = Some(NCPoly::parse(value).map_err(|e| at(ln, e))?),
            "subst" => {
                let (v, q) = value
                    .split_once('=')
                    .ok_or_else(|| Error::usage(format!("line {ln}: expected `var = poly`")))?;
                let v = v.trim();
                let var = NCPoly::parse(v).map_err(|e| at(ln, e))?;
                if var.vars().len() != 1 || var != NCPoly::var(v) {
                    return Err(Error::usage(format!("line {ln}: `{v}` is not a variable")));
                }
                let q = NCPoly::parse(q.trim()).map_err(|e| at(ln, e))?;
                subs.push(BTreeMap::from([(Var::new(v), q)]));
            }
            other => return Err(Error::usage(format!("line {ln}: unknown key `{other}`"))),
        }
    }
    let first = block[0].0;
    let missing = |k: &str| Error::usage(format!("case starting at line {first}: missing `{k}`"));
    Ok(IdentityCase {
        name: name.ok_or_else(|| missing("name"))?,
        citation,
        lhs: lhs.ok_or_else(|| missing("lhs"))?,
        rhs: rhs.ok_or_else(|| missing("rhs"))?,
        substitutions: subs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_suite_holds() {
        for r in run_builtin_suite() {
            assert!(r.holds, "{} left {}", r.name, r.difference);
        }
    }

    #[test]
    fn mutations_fail() {
        for case in builtin_cases() {
            for m in case.single_coefficient_mutations() {
                assert!(!verify_identity(&m).holds, "{}", m.name);
            }
        }
    }

    #[test]
    fn commutativity_is_not_an_identity() {
        let r = verify_identity(&IdentityCase::new("xy-yx", "", p("xy"), p("yx")));
        assert!(!r.holds);
        assert_eq!(r.difference, p("xy - yx"));
    }

    #[test]
    fn renaming_preserves_validity() {
        let rot = |v: &Var| {
            Var::new(match v.name() {
                "x" => "y",
                "y" => "z",
                "z" => "x",
                o => o,
            })
        };
        for case in builtin_cases() {
            assert!(verify_identity(&case.renamed(rot)).holds, "{}", case.name);
        }
    }

    #[test]
    fn difference_matches_direct_subtraction() {
        for case in builtin_cases() {
            let (l, r) = case.sides();
            assert_eq!(verify_identity(&case).difference, &l - &r);
        }
    }

    #[test]
    fn weyl_checks() {
        for m in [2, 3, 5] {
            assert!(weyl_check(m).unwrap().holds);
        }
        assert!(matches!(weyl_check(1), Err(Error::Usage(_))));
        assert_eq!(weyl_check(2).unwrap().normal_form, p("2x"));
    }

    #[test]
    fn case_file_format() {
        let text = "name: a\ncitation: demo\nlhs: (1+x)(1+y)\nrhs: 1 + x + y + xy\n\n\
                    name: b\nlhs: xz\nrhs: x^2 + xy\nsubst: z = x + y\n";
        let cases = parse_cases(text).unwrap();
        assert_eq!(cases.len(), 2);
        assert!(cases.iter().all(|c| verify_identity(c).holds));
        assert!(matches!(parse_cases("name: c\nlhs: x\n"), Err(Error::Usage(_))));
        assert!(matches!(parse_cases("name: c\nlhs: x +\nrhs: x"), Err(Error::Usage(_))));
    }
}
