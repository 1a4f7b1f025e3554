//! Deciding whether a polynomial is a brachynomial.
//!
//! Take a witness term for `p` and simplify it bottom-up: a subterm whose
//! translation is `0` becomes the term `0` (absorbing any product it sits
//! in), and a product with a factor translating to `1` becomes the other
//! factor. Translations have nonnegative coefficients, so in what remains
//! every word of a subterm's translation extends, by a prefix or suffix
//! times a word of the cofactor, to a word of its parent's translation
//! with coefficient at least as large; a successor only lowers the constant
//! coefficient. By induction each word `u` of every subterm is a contiguous
//! factor of some word `w` of `p`, with coefficient at most that of `w` in
//! `p`. That set of candidate polynomials is finite, so closing
//! `{0} ∪ vars(p)` under successor and product within it either reaches `p`
//! or proves that no witness exists. Variables absent from `p` are never
//! needed, since any word carrying one would survive into `p`.

use super::{expand_tilde, STerm};
use crate::error::{Error, Result};
use crate::poly::{NCPoly, Word};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;

/// Default bound on the number of candidate polynomials explored.
pub const DEFAULT_CLOSURE_CAP: usize = 200_000;

/// A term together with its translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrachyWitness {
    pub term: STerm,
    pub expansion: NCPoly,
}

#[derive(Clone, Copy)]
enum Origin {
    Zero,
    Var(usize),
    Succ(usize),
    Prod(usize, usize),
}

struct Bound {
    per_word: HashMap<Word, BigInt>,
    degree: usize,
}

impl Bound {
    fn new(p: &NCPoly) -> Self {
        let mut per_word: HashMap<Word, BigInt> = HashMap::new();
        for (w, c) in p.terms() {
            for u in w.factors() {
                let e = per_word.entry(u).or_insert_with(BigInt::zero);
                if *c > *e {
                    *e = c.clone();
                }
            }
        }
        Bound {
            per_word,
            degree: p.degree().unwrap_or(0),
        }
    }

    fn admits(&self, q: &NCPoly) -> bool {
        q.terms()
            .all(|(u, c)| self.per_word.get(u).is_some_and(|b| c <= b))
    }
}

struct Closure {
    polys: Vec<NCPoly>,
    origin: Vec<Origin>,
    index: HashMap<NCPoly, usize>,
    cap: usize,
}

impl Closure {
    fn insert(&mut self, q: NCPoly, o: Origin) -> Result<Option<usize>> {
        if self.index.contains_key(&q) {
            return Ok(None);
        }
        if self.polys.len() >= self.cap {
            return Err(Error::CapExceeded {
                what: "brachynomial candidate set".into(),
                cap: self.cap,
            });
        }
        let id = self.polys.len();
        self.index.insert(q.clone(), id);
        self.polys.push(q);
        self.origin.push(o);
        Ok(Some(id))
    }

    fn term(&self, id: usize, vars: &[STerm]) -> STerm {
        match self.origin[id] {
            Origin::Zero => STerm::Zero,
            Origin::Var(k) => vars[k].clone(),
            Origin::Succ(a) => STerm::succ(self.term(a, vars)),
            Origin::Prod(a, b) => STerm::prod(self.term(a, vars), self.term(b, vars)),
        }
    }
}

pub fn decide_brachynomial(p: &NCPoly) -> Result<Option<BrachyWitness>> {
    decide_brachynomial_with_cap(p, DEFAULT_CLOSURE_CAP)
}

/// Returns a witness term when `p` is a brachynomial and `None` otherwise.
/// Fails with [`Error::CapExceeded`] when more than `cap` candidates would
/// have to be explored.
pub fn decide_brachynomial_with_cap(p: &NCPoly, cap: usize) -> Result<Option<BrachyWitness>> {
    if p.has_negative_coeff() {
        return Ok(None);
    }
    let vars: Vec<STerm> = p.vars().into_iter().map(STerm::Var).collect();
    let bound = Bound::new(p);
    let mut cl = Closure {
        polys: Vec::new(),
        origin: Vec::new(),
        index: HashMap::new(),
        cap,
    };
    cl.insert(NCPoly::zero(), Origin::Zero)?;
    for (k, v) in vars.iter().enumerate() {
        cl.insert(expand_tilde(v), Origin::Var(k))?;
    }

    let finish = |cl: &Closure, id: usize| {
        let term = cl.term(id, &vars);
        let expansion = expand_tilde(&term);
        debug_assert_eq!(&expansion, p);
        Some(BrachyWitness { term, expansion })
    };
    if let Some(&id) = cl.index.get(p) {
        return Ok(finish(&cl, id));
    }

    let one = NCPoly::one();
    let trivial = |q: &NCPoly| q.is_zero() || *q == one;
    let mut next = 0;
    while next < cl.polys.len() {
        let a = next;
        next += 1;
        let mut fresh = Vec::new();

        let s = &NCPoly::one() + &cl.polys[a];
        if bound.admits(&s) {
            fresh.push((s, Origin::Succ(a)));
        }
        if !trivial(&cl.polys[a]) {
            let da = cl.polys[a].degree().unwrap_or(0);
            for b in 0..=a {
                let pb = &cl.polys[b];
                if trivial(pb) || da + pb.degree().unwrap_or(0) > bound.degree {
                    continue;
                }
                let ab = &cl.polys[a] * pb;
                if bound.admits(&ab) {
                    fresh.push((ab, Origin::Prod(a, b)));
                }
                if a != b {
                    let ba = pb * &cl.polys[a];
                    if bound.admits(&ba) {
                        fresh.push((ba, Origin::Prod(b, a)));
                    }
                }
            }
        }
        for (q, o) in fresh {
            let hit = q == *p;
            if let Some(id) = cl.insert(q, o)? {
                if hit {
                    return Ok(finish(&cl, id));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_sterm;
    use proptest::prelude::*;

    fn p(s: &str) -> NCPoly {
        NCPoly::parse(s).unwrap()
    }

    #[test]
    fn successor_product_example() {
        let w = decide_brachynomial(&p("x + xy")).unwrap().unwrap();
        assert_eq!(w.term, parse_sterm("x y'").unwrap());
        assert_eq!(w.expansion, p("x + xy"));
    }

    #[test]
    fn rejections() {
        assert_eq!(decide_brachynomial(&p("x + y")).unwrap(), None);
        assert_eq!(decide_brachynomial(&p("-1")).unwrap(), None);
        assert_eq!(decide_brachynomial(&p("2x - 1")).unwrap(), None);
        assert!(decide_brachynomial(&p("2x")).unwrap().is_some());
    }

    #[test]
    fn constants_and_zero() {
        assert_eq!(decide_brachynomial(&NCPoly::zero()).unwrap().unwrap().term, STerm::Zero);
        assert_eq!(decide_brachynomial(&p("3")).unwrap().unwrap().term, STerm::numeral(3));
        let w = decide_brachynomial(&p("2 + 2x")).unwrap().unwrap();
        assert_eq!(w.expansion, p("2 + 2x"));
    }

    #[test]
    fn cap_is_reported() {
        let q = p("(1 + x)(1 + y)(1 + xz)(1 + yz) + x");
        assert_eq!(
            decide_brachynomial_with_cap(&q, 5),
            Err(Error::CapExceeded {
                what: "brachynomial candidate set".into(),
                cap: 5
            })
        );
    }

    fn arb_term() -> impl Strategy<Value = STerm> {
        let leaf = prop_oneof![
            Just(STerm::Zero),
            Just(STerm::var("x")),
            Just(STerm::var("y")),
            Just(STerm::var("z")),
        ];
        leaf.prop_recursive(4, 8, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(STerm::succ),
                (inner.clone(), inner).prop_map(|(a, b)| STerm::prod(a, b)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn translations_are_decided(t in arb_term().prop_filter("size", |t| t.size() <= 8)) {
            let q = expand_tilde(&t);
            prop_assert!(!q.has_negative_coeff());
            let w = decide_brachynomial(&q).unwrap();
            prop_assert!(w.is_some());
            prop_assert_eq!(expand_tilde(&w.unwrap().term), q);
        }
    }
}
