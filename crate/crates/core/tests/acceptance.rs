//! Acceptance criteria, one PASS/FAIL line each.

use brachy_core::brachy::{
    certify_addable, certify_addable_with, check_summability_formula, check_zxzy_characterization,
    enumerate_brachymorphisms, AddRule, CertifyConfig, Morphism,
};
use brachy_core::finstruct::{Elem, FiniteStruct};
use brachy_core::identities::{run_builtin_suite, builtin_cases, verify_identity, weyl_check};
use brachy_core::lang::{builtin_formula, decide_brachynomial, expand_tilde, parse_sterm, STerm};
use brachy_core::matrix::verify_matrix_suite;
use brachy_core::modelsearch::{
    canonical_form, fixture, search_counterexample, verify_fixture, Outcome, SearchClass, SearchTask,
};
use brachy_core::poly::{NCPoly, Var};
use brachy_core::zoo;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome_ = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg.into()) }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn c1_identities() -> Outcome_ {
    let reports = run_builtin_suite();
    if let Some(r) = reports.iter().find(|r| !r.holds) {
        return Err(format!("{} fails with difference {}", r.name, r.difference));
    }
    let mut mutants = 0;
    for case in builtin_cases() {
        for m in case.single_coefficient_mutations() {
            ensure(!verify_identity(&m).holds, format!("mutation {} still holds", m.name))?;
            mutants += 1;
        }
    }
    Ok(format!("{} identities hold, {mutants} mutations fail", reports.len()))
}

fn random_term(rng: &mut StdRng, depth: usize) -> STerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 => STerm::Zero,
            k => STerm::var(["x", "y", "z"][k - 1]),
        };
    }
    if rng.gen_bool(0.4) {
        STerm::succ(random_term(rng, depth - 1))
    } else {
        STerm::prod(random_term(rng, depth - 1), random_term(rng, depth - 1))
    }
}

fn c2_brachynomials() -> Outcome_ {
    let p = |s: &str| NCPoly::parse(s).map_err(err);
    let w = decide_brachynomial(&p("x + xy")?).map_err(err)?.ok_or("x + xy rejected")?;
    ensure(w.term == parse_sterm("x y'").map_err(err)?, format!("witness {} differs from x y'", w.term))?;
    for text in ["x + y", "-1", "2x - 1"] {
        ensure(decide_brachynomial(&p(text)?).map_err(err)?.is_none(), format!("{text} accepted"))?;
    }
    let mut rng = StdRng::seed_from_u64(2024);
    let mut done = 0;
    while done < 200 {
        let t = random_term(&mut rng, 4);
        if t.size() > 8 {
            continue;
        }
        let q = expand_tilde(&t);
        let w = decide_brachynomial(&q).map_err(err)?.ok_or(format!("translation of {t} rejected"))?;
        ensure(expand_tilde(&w.term) == q, format!("witness for {t} expands differently"))?;
        done += 1;
    }
    Ok(format!("x + xy = tilde of {}; 3 rejections decided within the bound; 200 round trips", w.term))
}

fn c3_table1() -> Outcome_ {
    let r = verify_fixture("table1").map_err(err)?;
    let t1 = fixture("table1").map_err(err)?;
    let (a, b) = r.pair;
    ensure((t1.label(a), t1.label(b)) == ("a".into(), "b".into()), "pair is not (a, b)")?;
    Ok(format!(
        "violation at (a,b): f(a+b) = {}, f(a)+f(b) = {}; {}",
        t1.label(r.image_of_sum),
        t1.label(r.sum_of_images),
        r.claims.join("; ")
    ))
}

fn c4_table2() -> Outcome_ {
    let r = verify_fixture("table2").map_err(err)?;
    ensure(r.pair == (2, 4), "pair is not (2, 4)")?;
    ensure(r.image_of_sum != 6, "f(2+4) = 6")?;
    Ok(format!("f(2+4) = {}, f(2)+f(4) = {}; {} claims confirmed", r.image_of_sum, r.sum_of_images, r.claims.len()))
}

/// Brachymorphisms between all ordered pairs of battery rings, with their
/// non-additive pairs found by direct evaluation.
struct BatteryRun {
    morphisms: usize,
    implicated: Vec<BTreeSet<Elem>>,
    violations: usize,
    elapsed: Duration,
}

fn battery_run(battery: &[(String, FiniteStruct)]) -> Result<BatteryRun, String> {
    let start = Instant::now();
    let mut run = BatteryRun {
        morphisms: 0,
        implicated: vec![BTreeSet::new(); battery.len()],
        violations: 0,
        elapsed: Duration::ZERO,
    };
    for (i, (_, r)) in battery.iter().enumerate() {
        for (_, s) in battery {
            for f in enumerate_brachymorphisms(r, s).map_err(err)? {
                run.morphisms += 1;
                run.violations += f.violations.len();
                for a in r.elements() {
                    for b in r.elements() {
                        if f.apply(r.add(a, b)) != s.add(f.apply(a), f.apply(b)) {
                            run.implicated[i].insert(a);
                            run.implicated[i].insert(b);
                        }
                    }
                }
            }
        }
    }
    run.elapsed = start.elapsed();
    Ok(run)
}

fn c5_additivity(run: &BatteryRun, rings: usize) -> Outcome_ {
    ensure(run.violations == 0, format!("{} violations", run.violations))?;
    ensure(run.implicated.iter().all(BTreeSet::is_empty), "direct evaluation found a non-additive pair")?;
    ensure(run.elapsed < Duration::from_secs(600), "over the 10 minute budget")?;
    Ok(format!(
        "{} ordered pairs, {} brachymorphisms, 0 violations in {:.2?}",
        rings * rings,
        run.morphisms,
        run.elapsed
    ))
}

fn c6_certifier(battery: &[(String, FiniteStruct)]) -> Outcome_ {
    let mut rules = BTreeSet::new();
    for (name, r) in battery {
        let full = certify_addable(r).map_err(err)?;
        ensure(full.is_complete(), format!("{name}: certified {} of {}", full.certified.len(), r.order()))?;
        ensure(full.replay_all(r), format!("{name}: certificates do not replay"))?;
        let only = certify_addable_with(r, &CertifyConfig::only(&[AddRule::PiRegular])).map_err(err)?;
        ensure(only.is_complete(), format!("{name}: r7 alone certified {} of {}", only.certified.len(), r.order()))?;
        ensure(only.replay_all(r), format!("{name}: r7 certificates do not replay"))?;
        ensure(only.fired.keys().all(|&k| k == AddRule::PiRegular), format!("{name}: other rules fired"))?;
        rules.extend(full.fired.keys().map(|k| k.code()));
    }
    Ok(format!(
        "{} rings complete and replayed; r7 alone suffices; rules fired: {}",
        battery.len(),
        rules.into_iter().collect::<Vec<_>>().join(",")
    ))
}

fn c7_consistency(battery: &[(String, FiniteStruct)], run: &BatteryRun) -> Outcome_ {
    let mut certified = 0;
    for ((name, r), implicated) in battery.iter().zip(&run.implicated) {
        let cert = certify_addable(r).map_err(err)?.certified;
        certified += cert.len();
        ensure(cert.is_disjoint(implicated), format!("{name}: certified element is implicated"))?;
    }
    Ok(format!("{certified} certified elements, none implicated"))
}

fn c8_rigidity() -> Outcome_ {
    for n in 1..=12 {
        let z = zoo::build_str(&format!("zmod({n})")).map_err(err)?;
        let fs = enumerate_brachymorphisms(&z, &z).map_err(err)?;
        let id: Vec<Elem> = z.elements().collect();
        ensure(fs.len() == 1 && fs[0].map == id, format!("Z/{n}: {} brachymorphisms", fs.len()))?;
    }
    let z2 = zoo::build_str("zmod(2)").map_err(err)?;
    let z3 = zoo::build_str("zmod(3)").map_err(err)?;
    ensure(enumerate_brachymorphisms(&z2, &z3).map_err(err)?.is_empty(), "Z/2 -> Z/3 is not empty")?;
    Ok("Z/n -> Z/n is the identity for n <= 12; Z/2 -> Z/3 is empty".into())
}

fn c9_matrix() -> Outcome_ {
    let start = Instant::now();
    let cases = verify_matrix_suite(4).map_err(err)?;
    let elapsed = start.elapsed();
    if let Some(c) = cases.iter().find(|c| !c.holds) {
        return Err(format!("{} n={} fails: {}", c.name, c.n, c.detail));
    }
    for (name, ns) in [("charpoly", &[1, 2, 3, 4][..]), ("m1", &[2, 3]), ("m2", &[3]), ("m3", &[2]), ("m4", &[2, 3]), ("m5", &[1, 2, 3, 4])] {
        for &n in ns {
            ensure(cases.iter().any(|c| c.name == name && c.n == n), format!("{name} n={n} missing"))?;
        }
    }
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:.2?}"))?;
    Ok(format!("{} cases hold in {elapsed:.2?}", cases.len()))
}

fn c10_weyl() -> Outcome_ {
    for m in [2, 3, 5] {
        let r = weyl_check(m).map_err(err)?;
        ensure(r.holds, format!("m={m}: normal form {}, reduced {}", r.normal_form, r.reduced))?;
    }
    Ok("x^m y - y x^m = m x^(m-1), zero mod m, for m = 2, 3, 5".into())
}

fn c11_search() -> Outcome_ {
    let mut notes = Vec::new();
    for order in [2, 3] {
        let res = search_counterexample(&SearchTask::new(SearchClass::CommutativeSemiring, order)).map_err(err)?;
        ensure(res.outcome == Outcome::Complete, format!("order {order} did not complete"))?;
        notes.push(format!("order {order}: {} counterexamples", res.found.len()));
    }
    let mut task = SearchTask::new(SearchClass::CommutativeSemiring, 4);
    task.time_budget = Some(Duration::from_secs(300));
    let res = search_counterexample(&task).map_err(err)?;
    let t1 = canonical_form(&fixture("table1").map_err(err)?).map_err(err)?.0;
    let hit = res.found.iter().find(|c| {
        canonical_form(&c.structure).is_ok_and(|(k, _)| k.add_table() == t1.add_table() && k.mul_table() == t1.mul_table())
    });
    let hit = hit.ok_or("no structure isomorphic to the table1 fixture")?;
    ensure(!hit.violations.is_empty(), "witness is additive")?;
    notes.push(format!(
        "order 4: {:?}, {} counterexamples including table1, {:.2?}",
        res.outcome,
        res.found.len(),
        res.stats.elapsed
    ));
    Ok(notes.join("; "))
}

fn xyz() -> Vec<Var> {
    ["x", "y", "z"].iter().map(|v| Var::new(v)).collect()
}

fn c12_formulas(battery: &[(String, FiniteStruct)]) -> Outcome_ {
    let z6 = zoo::build_str("zmod(6)").map_err(err)?;
    let perp = builtin_formula("S_perp").map_err(err)?;
    let rep = check_summability_formula(&perp, &xyz(), &z6, &[2, 3], battery).map_err(err)?;
    ensure(rep.passes(), format!("S_perp at (2,3): {}", rep.verdict()))?;

    let comm = builtin_formula("S_comm").map_err(err)?;
    let div = builtin_formula("S_div").map_err(err)?;
    let (mut comm_pairs, mut div_pairs, mut fields) = (0, 0, 0);
    for (name, r) in battery {
        let is_field = r.order() > 1 && r.classification().is_commutative_ring && r.units().len() == r.order() - 1;
        fields += usize::from(is_field);
        for x in r.elements() {
            for y in r.elements() {
                if r.mul(x, y) == r.mul(y, x) {
                    let rep = check_summability_formula(&comm, &xyz(), r, &[x, y], &[]).map_err(err)?;
                    ensure(rep.condition_ii, format!("S_comm fails (ii) at ({x},{y}) in {name}"))?;
                    comm_pairs += 1;
                }
                if is_field {
                    let rep = check_summability_formula(&div, &xyz(), r, &[x, y], &[]).map_err(err)?;
                    ensure(rep.condition_ii, format!("S_div fails (ii) at ({x},{y}) in {name}"))?;
                    div_pairs += 1;
                }
            }
        }
    }
    Ok(format!(
        "S_perp passes at (2,3) in Z/6 over {} rings; S_comm (ii) at {comm_pairs} commuting pairs; S_div (ii) at {div_pairs} pairs in {fields} fields",
        rep.rings_checked
    ))
}

fn c13_zxzy() -> Outcome_ {
    let rings: Vec<FiniteStruct> = (1..=3).map(|n| zoo::build_str(&format!("zmod({n})")).map_err(err)).collect::<Result<_, _>>()?;
    let (mut maps, mut homs) = (0, 0);
    for r in &rings {
        for s in &rings {
            let (n, m) = (r.order(), s.order());
            for code in 0..m.pow(n as u32) {
                let map: Vec<Elem> = (0..n).map(|i| (code / m.pow(i as u32) % m) as Elem).collect();
                let f = Morphism::new(r, s, map.clone()).map_err(err)?;
                let rep = check_zxzy_characterization(&f).map_err(err)?;
                ensure(rep.agrees(), format!("map {map:?} from Z/{n} to Z/{m} disagrees"))?;
                maps += 1;
                homs += usize::from(rep.is_homomorphism);
            }
        }
    }
    Ok(format!("{maps} maps checked, {homs} homomorphisms, conditions agree on all"))
}

fn main() {
    let battery = zoo::battery();
    let run = battery_run(&battery);
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome_ + '_>)> = vec![
        ("C1 identity battery", Box::new(c1_identities)),
        ("C2 brachynomial decision", Box::new(c2_brachynomials)),
        ("C3 fixture table1", Box::new(c3_table1)),
        ("C4 fixture table2", Box::new(c4_table2)),
        ("C5 battery additivity", Box::new(|| c5_additivity(run.as_ref().map_err(Clone::clone)?, battery.len()))),
        ("C6 certifier completeness", Box::new(|| c6_certifier(&battery))),
        ("C7 certified vs implicated", Box::new(|| c7_consistency(&battery, run.as_ref().map_err(Clone::clone)?))),
        ("C8 brachymorphism rigidity", Box::new(c8_rigidity)),
        ("C9 matrix suite", Box::new(c9_matrix)),
        ("C10 weyl checks", Box::new(c10_weyl)),
        ("C11 model search", Box::new(c11_search)),
        ("C12 summability formulas", Box::new(|| c12_formulas(&battery))),
        ("C13 z+xzy equivalence", Box::new(c13_zxzy)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL {name}: {reason}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
