mod common;

use brachy_core::lang::{decide_brachynomial, expand_tilde, STerm};
use brachy_core::poly::{NCPoly, Var};
use brachy_core::zoo;
use common::{eval_ncpoly, random_term};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

#[test]
fn tilde_respects_successor_and_product() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let a = random_term(&mut rng, &["x", "y"], 8);
        let b = random_term(&mut rng, &["x", "y"], 8);
        let prod = STerm::prod(a.clone(), b.clone());
        assert_eq!(expand_tilde(&prod), &expand_tilde(&a) * &expand_tilde(&b));
        assert_eq!(expand_tilde(&STerm::succ(a.clone())), &NCPoly::one() + &expand_tilde(&a));
    }
}

#[test]
fn term_evaluation_agrees_with_translation() {
    let mut rng = StdRng::seed_from_u64(11);
    let battery = zoo::battery();
    for _ in 0..300 {
        let t = random_term(&mut rng, &["x", "y", "z"], 10);
        let (_, s) = &battery[rng.gen_range(0..battery.len())];
        let env: BTreeMap<Var, u32> = ["x", "y", "z"]
            .iter()
            .map(|v| (Var::new(v), rng.gen_range(0..s.order()) as u32))
            .collect();
        assert_eq!(t.eval(s, &env).unwrap(), eval_ncpoly(&expand_tilde(&t), s, &env), "{t}");
    }
}

#[test]
fn decide_round_trips_random_terms() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..200 {
        let t = random_term(&mut rng, &["x", "y", "z"], 8);
        let p = expand_tilde(&t);
        let w = decide_brachynomial(&p).unwrap().expect("translation of a term");
        assert_eq!(expand_tilde(&w.term), p);
    }
}
