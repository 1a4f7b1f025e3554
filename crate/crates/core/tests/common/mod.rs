#![allow(dead_code)]

use brachy_core::finstruct::{Elem, FiniteStruct};
use brachy_core::lang::STerm;
use brachy_core::poly::{NCPoly, Var};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::Rng;
use std::collections::BTreeMap;

/// A random S-term of size at most `max_size` over `vars`.
pub fn random_term(rng: &mut StdRng, vars: &[&str], max_size: usize) -> STerm {
    loop {
        let t = grow(rng, vars, 4);
        if t.size() <= max_size {
            return t;
        }
    }
}

fn grow(rng: &mut StdRng, vars: &[&str], depth: usize) -> STerm {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        let k = rng.gen_range(0..=vars.len());
        return if k == vars.len() { STerm::Zero } else { STerm::var(vars[k]) };
    }
    if rng.gen_bool(0.4) {
        STerm::succ(grow(rng, vars, depth - 1))
    } else {
        STerm::prod(grow(rng, vars, depth - 1), grow(rng, vars, depth - 1))
    }
}

/// Evaluate a polynomial in a finite ring, reading integer coefficients as
/// multiples of one.
pub fn eval_ncpoly(p: &NCPoly, s: &FiniteStruct, env: &BTreeMap<Var, Elem>) -> Elem {
    let mut acc = s.zero();
    for (w, c) in p.terms() {
        let word = w.letters().iter().fold(s.one(), |t, v| s.mul(t, env[v]));
        let n = s.order() as i64;
        let mag = c.mod_floor(&n.into()).to_usize().expect("reduced");
        // additive order divides |R|, so c mod |R| gives the same multiple
        acc = s.add(acc, s.times(mag, word));
    }
    acc
}
