//! Normal forms in the first Weyl algebra, presented as the free ring on
//! `x`, `y` modulo `xy - yx - 1`.

use super::{NCPoly, Var, Word};
use crate::error::{Error, Result};

fn check_alphabet(p: &NCPoly) -> Result<()> {
    match p.vars().into_iter().find(|v| v.name() != "x" && v.name() != "y") {
        Some(v) => Err(Error::usage(format!(
            "Weyl normal form is defined over x and y only, found `{v}`"
        ))),
        None => Ok(()),
    }
}

fn first_yx(w: &Word) -> Option<usize> {
    w.letters()
        .windows(2)
        .position(|p| p[0].name() == "y" && p[1].name() == "x")
}

/// Rewrite the leftmost `yx` of the least word that has one, replacing it by
/// `xy - 1`. Returns `None` when `p` is already in normal form.
pub fn weyl_rewrite_step(p: &NCPoly) -> Option<NCPoly> {
    let (w, c, i) = p
        .terms()
        .find_map(|(w, c)| first_yx(w).map(|i| (w.clone(), c.clone(), i)))?;
    let letters = w.letters();
    let (x, y) = (letters[i + 1].clone(), letters[i].clone());
    let mut swapped: Vec<Var> = letters[..i].to_vec();
    swapped.push(x);
    swapped.push(y);
    swapped.extend_from_slice(&letters[i + 2..]);
    let mut dropped: Vec<Var> = letters[..i].to_vec();
    dropped.extend_from_slice(&letters[i + 2..]);

    let mut out = p.clone();
    out.add_term(w, -c.clone());
    out.add_term(Word::new(swapped), c.clone());
    out.add_term(Word::new(dropped), -c);
    Some(out)
}

/// Normal form with every word of shape `x^i y^j`, coefficients reduced into
/// `0..modulus` when `modulus > 0`.
pub fn weyl_normal_form(p: &NCPoly, modulus: u64) -> Result<NCPoly> {
    check_alphabet(p)?;
    let mut cur = p.clone();
    while let Some(next) = weyl_rewrite_step(&cur) {
        cur = next;
    }
    Ok(cur.reduce_mod(modulus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn p(s: &str) -> NCPoly {
        NCPoly::parse(s).unwrap()
    }

    fn is_normal(q: &NCPoly) -> bool {
        q.terms().all(|(w, _)| first_yx(w).is_none())
    }

    /// Normal form of `x^i y^j * x`, from the commutation rule
    /// `y^j x = x y^j - j y^(j-1)`.
    fn times_x(i: usize, j: usize) -> NCPoly {
        let word = |a: usize, b: usize| {
            let mut v = vec![Var::new("x"); a];
            v.extend(std::iter::repeat(Var::new("y")).take(b));
            NCPoly::monomial(Word::new(v), 1)
        };
        let mut out = word(i + 1, j);
        if j > 0 {
            out = out - word(i, j - 1).scale(&BigInt::from(j));
        }
        out
    }

    #[test]
    fn single_swap() {
        assert_eq!(weyl_normal_form(&p("yx"), 0).unwrap(), p("xy - 1"));
    }

    #[test]
    fn central_power_identity() {
        for m in [2u32, 3, 5] {
            let q = &(&p("x").pow(m) * &p("y")) - &(&p("y") * &p("x").pow(m));
            let expect = NCPoly::var("x").pow(m - 1).scale(&BigInt::from(m));
            assert_eq!(weyl_normal_form(&q, 0).unwrap(), expect);
            assert!(weyl_normal_form(&q, m as u64).unwrap().is_zero());
        }
    }

    #[test]
    fn foreign_variable_is_usage_error() {
        assert!(matches!(weyl_normal_form(&p("xz"), 0), Err(Error::Usage(_))));
    }

    #[test]
    fn right_multiplication_by_x_matches_closed_form() {
        for i in 0..4 {
            for j in 0..4 {
                let mut v = vec![Var::new("x"); i];
                v.extend(std::iter::repeat(Var::new("y")).take(j));
                v.push(Var::new("x"));
                let w = NCPoly::monomial(Word::new(v), 1);
                assert_eq!(weyl_normal_form(&w, 0).unwrap(), times_x(i, j), "i={i} j={j}");
            }
        }
    }

    fn arb_xy_poly() -> impl Strategy<Value = NCPoly> {
        let word = prop::collection::vec(prop::bool::ANY, 0..=6);
        prop::collection::vec((word, -5i64..=5), 0..5).prop_map(|ts| {
            NCPoly::from_terms(ts.into_iter().map(|(w, c)| {
                let letters = w
                    .into_iter()
                    .map(|b| Var::new(if b { "x" } else { "y" }))
                    .collect();
                (Word::new(letters), BigInt::from(c))
            }))
        })
    }

    /// Normal form computed word by word, multiplying letters in from the
    /// left of an already-normal suffix.
    fn oracle(q: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in q.terms() {
            let mut acc = NCPoly::one();
            for letter in w.letters().iter().rev() {
                acc = if letter.name() == "x" {
                    NCPoly::var("x") * &acc
                } else {
                    // y * x^i y^j = x^i y^(j+1) - i x^(i-1) y^j
                    let mut next = NCPoly::zero();
                    for (u, k) in acc.terms() {
                        let i = u.letters().iter().filter(|v| v.name() == "x").count();
                        let j = u.len() - i;
                        let mk = |a: usize, b: usize| {
                            let mut v = vec![Var::new("x"); a];
                            v.extend(std::iter::repeat(Var::new("y")).take(b));
                            Word::new(v)
                        };
                        next.add_term(mk(i, j + 1), k.clone());
                        if i > 0 {
                            next.add_term(mk(i - 1, j), -(k * BigInt::from(i)));
                        }
                    }
                    next
                };
            }
            out = out + acc.scale(c);
        }
        out
    }

    proptest! {
        #[test]
        fn normal_form_properties(q in arb_xy_poly()) {
            let nf = weyl_normal_form(&q, 0).unwrap();
            prop_assert!(is_normal(&nf));
            prop_assert_eq!(weyl_normal_form(&nf, 0).unwrap(), nf.clone());
            prop_assert_eq!(nf, oracle(&q));
        }
    }
}
