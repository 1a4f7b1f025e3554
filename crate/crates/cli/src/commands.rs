use crate::report::{RunReport, EXIT_FAIL, EXIT_RESOURCE};
use crate::{ClassArg, Command, FixtureArg};
use brachy_core::brachy::{
    certify_addable, certify_summable_pairs, check_summability_formula, enumerate_brachymorphisms_with,
    EnumConfig,
};
use brachy_core::finstruct::{element_profile, jacobson_radical, Elem, FiniteStruct};
use brachy_core::identities::{builtin_cases, parse_cases, verify_identity, weyl_check};
use brachy_core::lang::{builtin_formula, decide_brachynomial};
use brachy_core::matrix::{det_brachy_audit, parse_audit_specs, verify_matrix_suite};
use brachy_core::modelsearch::{search_counterexample, verify_fixture, Outcome, SearchClass, SearchTask};
use brachy_core::poly::{NCPoly, Var};
use brachy_core::{zoo, Error, Result};
use std::path::Path;

pub fn dispatch(cmd: &Command, r: &mut RunReport) {
    let res = match cmd {
        Command::Identities { case, file } => identities(case.as_deref(), file.as_deref(), r),
        Command::Weyl { m } => weyl(*m, r),
        Command::Check { path } => check(path, r),
        Command::Build { spec, out } => build(spec, out.as_deref(), r),
        Command::Morphisms { src, dst, budget } => morphisms(src, dst, *budget, r),
        Command::Certify { path, pairs } => certify(path, *pairs, r),
        Command::Formula { name, structure, tuple, battery } => {
            formula(name.as_str(), structure, tuple, battery.as_deref(), r)
        }
        Command::Search { class, order, budget } => search(*class, *order, *budget, r),
        Command::Fixture { name } => fixture(*name, r),
        Command::Matrix { nmax } => matrix(*nmax, r),
        Command::Detaudit { spec } => detaudit(spec, r),
        Command::Brachynomial { poly } => brachynomial(poly, r),
    };
    if let Err(e) = res {
        r.error(&e);
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<FiniteStruct> {
    FiniteStruct::parse(&read(path)?)
}

fn set(s: &FiniteStruct, elems: impl IntoIterator<Item = Elem>) -> String {
    let labels: Vec<String> = elems.into_iter().map(|e| s.label(e)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn element(s: &FiniteStruct, tok: &str) -> Result<Elem> {
    let tok = tok.trim();
    if let Some(e) = s.find_label(tok) {
        return Ok(e);
    }
    match tok.parse::<usize>() {
        Ok(i) if i < s.order() => Ok(i as Elem),
        _ => Err(Error::Usage(format!("`{tok}` is neither a label nor an element index"))),
    }
}

/// Split at commas outside brackets, so matrix labels stay whole.
fn split_tuple(text: &str) -> Vec<&str> {
    let (mut out, mut depth, mut start) = (Vec::new(), 0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn identities(case: Option<&str>, file: Option<&Path>, r: &mut RunReport) -> Result<()> {
    let mut cases = match file {
        Some(p) => parse_cases(&read(p)?)?,
        None => builtin_cases(),
    };
    if let Some(name) = case {
        cases.retain(|c| c.name == name);
        if cases.is_empty() {
            return Err(Error::UnknownName(name.to_string()));
        }
    }
    for c in &cases {
        let rep = verify_identity(c);
        if rep.holds {
            r.item(format!("identity {}", rep.name), "holds");
            r.count("holds", 1);
        } else {
            r.item(format!("identity {}", rep.name), format!("fails, lhs - rhs = {}", rep.difference));
            r.count("fails", 1);
            r.fail(EXIT_FAIL);
        }
    }
    Ok(())
}

fn weyl(m: u32, r: &mut RunReport) -> Result<()> {
    let rep = weyl_check(m)?;
    r.item("normal_form", &rep.normal_form);
    r.item(format!("normal_form_mod_{m}"), &rep.reduced);
    r.item("verdict", if rep.holds { "holds" } else { "fails" });
    if !rep.holds {
        r.fail(EXIT_FAIL);
    }
    Ok(())
}

fn check(path: &Path, r: &mut RunReport) -> Result<()> {
    let s = load(path)?;
    r.item("order", s.order());
    for (flag, v) in s.classification().flags() {
        r.item(flag, v);
    }
    for p in element_profile(&s) {
        let mut facts = Vec::new();
        if let Some(u) = p.inverse {
            facts.push(format!("unit inverse {}", s.label(u)));
        }
        if let Some(t) = p.quasi_inverse {
            facts.push(format!("regular with {}", s.label(t)));
        }
        if p.idempotent {
            facts.push("idempotent".into());
        }
        if p.nilpotency_index > 0 {
            facts.push(format!("nilpotent of index {}", p.nilpotency_index));
        }
        if let Some((k, t)) = p.pi_regular {
            facts.push(format!("power {k} regular with {}", s.label(t)));
        }
        if p.central {
            facts.push("central".into());
        }
        if !p.replay(&s) {
            r.fail(EXIT_FAIL);
            facts.push("witness replay failed".into());
        }
        r.item(format!("element {}", s.label(p.element)), facts.join(", "));
    }
    if s.is_ring() {
        r.item("jacobson_radical", set(&s, jacobson_radical(&s)?));
    }
    Ok(())
}

fn build(spec: &str, out: Option<&Path>, r: &mut RunReport) -> Result<()> {
    let s = zoo::build_str(spec)?;
    r.item("spec", spec);
    r.item("order", s.order());
    r.item("is_ring", s.is_ring());
    r.item("is_commutative_ring", s.classification().is_commutative_ring);
    let text = s.to_text();
    match out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Error::Usage(format!("cannot write {}: {e}", p.display())))?;
            r.item("written", p.display());
        }
        None => {
            for line in text.lines() {
                r.item("struct", line);
            }
        }
    }
    Ok(())
}

fn morphisms(src: &Path, dst: &Path, budget: Option<u64>, r: &mut RunReport) -> Result<()> {
    let (a, b) = (load(src)?, load(dst)?);
    let cfg = EnumConfig { budget, ..EnumConfig::default() };
    let (fs, stats) = enumerate_brachymorphisms_with(&a, &b, &cfg)?;
    r.stat("nodes", stats.nodes);
    for (k, f) in fs.iter().enumerate() {
        let image: Vec<String> = f.map.iter().map(|&e| b.label(e)).collect();
        r.item(format!("morphism {k}"), format!("[{}]", image.join(", ")));
        let pairs: Vec<String> =
            f.violations.iter().map(|&(x, y)| format!("({},{})", a.label(x), a.label(y))).collect();
        r.item(
            format!("violations {k}"),
            if pairs.is_empty() { "none".to_string() } else { pairs.join(" ") },
        );
        r.count("violations", f.violations.len() as u64);
    }
    r.count("morphisms", fs.len() as u64);
    Ok(())
}

fn certify(path: &Path, pairs: bool, r: &mut RunReport) -> Result<()> {
    let s = load(path)?;
    if pairs {
        let rep = certify_summable_pairs(&s)?;
        r.item("addable", set(&s, rep.addable.iter().copied()));
        r.item("complete", rep.is_complete());
        for c in &rep.certificates {
            r.item("certificate", format!("{c} [{}]", c.citation()));
        }
        for (rule, n) in &rep.fired {
            r.item(format!("fired {}", rule.code()), n);
        }
        r.count("pairs", rep.certified.len() as u64);
        let ok = rep.replay_all(&s);
        r.item("replay", if ok { "ok" } else { "failed" });
        if !ok {
            r.fail(EXIT_FAIL);
        }
    } else {
        let rep = certify_addable(&s)?;
        r.item("certified", set(&s, rep.certified.iter().copied()));
        r.item("complete", rep.is_complete());
        for c in &rep.certificates {
            r.item("certificate", format!("{c} [{}]", c.citation()));
        }
        for (rule, n) in &rep.fired {
            r.item(format!("fired {}", rule.code()), n);
        }
        r.count("certified", rep.certified.len() as u64);
        r.stat("rounds", rep.rounds);
        let ok = rep.replay_all(&s);
        r.item("replay", if ok { "ok" } else { "failed" });
        if !ok {
            r.fail(EXIT_FAIL);
        }
    }
    Ok(())
}

fn load_battery(dir: &Path) -> Result<Vec<(String, FiniteStruct)>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Usage(format!("cannot read {}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "struct"))
        .collect();
    paths.sort();
    paths.iter().map(|p| Ok((p.file_name().unwrap().to_string_lossy().into_owned(), load(p)?))).collect()
}

fn formula(name: &str, path: &Path, tuple: &str, battery: Option<&Path>, r: &mut RunReport) -> Result<()> {
    let s = load(path)?;
    let elems: Vec<Elem> = split_tuple(tuple).into_iter().map(|t| element(&s, t)).collect::<Result<_>>()?;
    let battery = match battery {
        Some(d) => load_battery(d)?,
        None => zoo::battery(),
    };
    let phi = builtin_formula(name)?;
    let params: Vec<Var> = ["x", "y", "z"].iter().map(|v| Var::new(v)).collect();
    let rep = check_summability_formula(&phi, &params, &s, &elems, &battery)?;
    r.item("formula", name);
    r.item("tuple", set(&s, elems.iter().copied()));
    r.item("condition_ii", rep.condition_ii);
    r.item("condition_i_on_battery", rep.condition_i_on_battery);
    if let Some((ring, vals)) = &rep.counterexample {
        r.item("counterexample", format!("{ring} at {vals:?}"));
    }
    r.item("rings_checked", rep.rings_checked);
    r.item("limitation", rep.limitation);
    r.item("verdict", rep.verdict());
    if !rep.passes() {
        r.fail(EXIT_FAIL);
    }
    Ok(())
}

fn search(class: ClassArg, order: usize, budget: Option<u64>, r: &mut RunReport) -> Result<()> {
    let class = match class {
        ClassArg::Semiring => SearchClass::CommutativeSemiring,
        ClassArg::Nearring => SearchClass::RightNearring,
    };
    let mut task = SearchTask::new(class, order);
    task.node_budget = budget;
    let res = search_counterexample(&task)?;
    r.stat("nodes", res.stats.nodes);
    r.stat("prunes", res.stats.prunes);
    r.stat("add_tables", res.stats.add_tables);
    r.stat("structures", res.stats.structures);
    r.stat("search_ms", format!("{:.3}", res.stats.elapsed.as_secs_f64() * 1000.0));
    for (k, c) in res.found.iter().enumerate() {
        for line in c.structure.to_text().lines() {
            r.item(format!("counterexample {k}"), line);
        }
        r.item(format!("automorphism {k}"), format!("{:?}", c.witness));
        let pairs: Vec<String> = c.violations.iter().map(|(a, b)| format!("({a},{b})")).collect();
        r.item(format!("violations {k}"), pairs.join(" "));
    }
    r.count("counterexamples", res.found.len() as u64);
    match res.outcome {
        Outcome::Complete => r.item("outcome", "complete"),
        Outcome::BudgetExhausted => {
            r.item("outcome", "budget exhausted");
            r.fail(EXIT_RESOURCE);
        }
    }
    Ok(())
}

fn fixture(name: FixtureArg, r: &mut RunReport) -> Result<()> {
    let name = match name {
        FixtureArg::Table1 => "table1",
        FixtureArg::Table2 => "table2",
    };
    let rep = verify_fixture(name)?;
    let s = brachy_core::modelsearch::fixture(name)?;
    r.item("fixture", name);
    r.item("order", rep.order);
    for claim in &rep.claims {
        r.item("claim", claim);
    }
    let map: Vec<String> = rep.automorphism.iter().map(|&e| s.label(e)).collect();
    r.item("automorphism", format!("[{}]", map.join(", ")));
    let (a, b) = rep.pair;
    r.item("violation_pair", format!("({}, {})", s.label(a), s.label(b)));
    r.item("image_of_sum", s.label(rep.image_of_sum));
    r.item("sum_of_images", s.label(rep.sum_of_images));
    r.item("verdict", "verified");
    Ok(())
}

fn matrix(nmax: usize, r: &mut RunReport) -> Result<()> {
    for c in verify_matrix_suite(nmax)? {
        let status = if c.holds { "holds" } else { "fails" };
        r.item(format!("{} n={}", c.name, c.n), format!("{status}; {}; {}", c.statement, c.detail));
        if !c.holds {
            r.fail(EXIT_FAIL);
        }
    }
    Ok(())
}

fn detaudit(path: &Path, r: &mut RunReport) -> Result<()> {
    for spec in parse_audit_specs(&read(path)?)? {
        let rep = det_brachy_audit(&spec)?;
        r.item("audit", format!("{} over {} n={}", rep.name, rep.ring, rep.n));
        r.item("order", rep.order);
        for line in rep.lines().iter().skip(1) {
            let (k, v) = line.split_once(": ").unwrap_or((line, ""));
            r.item(k, v);
        }
        if !rep.passes() {
            r.fail(EXIT_FAIL);
        }
        r.count("audits", 1);
        r.count("premise_holds", u64::from(rep.premise));
    }
    Ok(())
}

fn brachynomial(text: &str, r: &mut RunReport) -> Result<()> {
    let p = NCPoly::parse(text)?;
    r.item("poly", &p);
    match decide_brachynomial(&p)? {
        Some(w) => {
            r.item("verdict", "brachynomial");
            r.item("witness", &w.term);
        }
        None => r.item("verdict", "not a brachynomial"),
    }
    Ok(())
}
