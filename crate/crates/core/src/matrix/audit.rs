//! Exhaustive audits of `det(1 + a) = 1 + det(a)` and its consequences over
//! subrings of `M_n(K)` generated by finitely many matrices.

use crate::error::{Error, Result};
use crate::finstruct::{Elem, FiniteStruct};
use crate::zoo;
use std::collections::HashMap;

/// Default bound on the size of a generated subring.
pub const AUDIT_CAP: usize = 4096;

const BATTERY_TEXT: &str = include_str!("../../fixtures/audit.battery");

/// A subring of `M_n(K)` given by generators, entries row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AuditSpec {
    pub name: String,
    /// Coefficient ring in zoo syntax.
    pub ring: String,
    pub n: usize,
    pub generators: Vec<Vec<String>>,
}

/// Parse audit blocks:
///
/// ```text
/// audit NAME
/// ring zmod(2)
/// n 3
/// gen 0 0 0; 1 0 0; 0 0 0
/// ```
///
/// `;` is optional between rows. Lines starting with `#` are ignored.
pub fn parse_audit_specs(text: &str) -> Result<Vec<AuditSpec>> {
    let mut out: Vec<AuditSpec> = Vec::new();
    let mut pos = 0;
    for line in text.lines() {
        let offset = pos;
        pos += line.len() + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        if key == "audit" {
            out.push(AuditSpec { name: rest.to_string(), ring: String::new(), n: 0, generators: Vec::new() });
            continue;
        }
        if out.is_empty() {
            out.push(AuditSpec { name: "audit".into(), ring: String::new(), n: 0, generators: Vec::new() });
        }
        let cur = out.last_mut().expect("a block is open");
        match key {
            "ring" => cur.ring = rest.to_string(),
            "n" => {
                cur.n = rest.parse().map_err(|_| Error::parse(offset, format!("bad order `{rest}`")))?;
            }
            "gen" => {
                let entries: Vec<String> =
                    rest.split(|c: char| c.is_whitespace() || c == ';').filter(|t| !t.is_empty()).map(String::from).collect();
                cur.generators.push(entries);
            }
            other => return Err(Error::parse(offset, format!("unknown key `{other}`"))),
        }
    }
    for spec in &out {
        if spec.ring.is_empty() || spec.n == 0 {
            return Err(Error::usage(format!("audit `{}` needs `ring` and `n`", spec.name)));
        }
    }
    Ok(out)
}

/// The built-in audit battery.
pub fn audit_battery() -> Result<Vec<AuditSpec>> {
    parse_audit_specs(BATTERY_TEXT)
}

/// Consequences of `τ_2(x) = τ_1(x)` on `R` for `n = 3`. The conclusion
/// fields are `None` when the premise fails.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceChain {
    pub premise: bool,
    pub two_tau1_zero: Option<bool>,
    pub pairing_zero: Option<bool>,
    pub delta_zero: Option<bool>,
    pub det_additive: Option<bool>,
}

impl TraceChain {
    pub fn conclusions_hold(&self) -> bool {
        [self.two_tau1_zero, self.pairing_zero, self.delta_zero, self.det_additive]
            .iter()
            .all(|c| *c != Some(false))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AuditReport {
    pub name: String,
    pub ring: String,
    pub n: usize,
    /// Size of the generated subring.
    pub order: usize,
    /// `det(1 + a) = 1 + det(a)` for every `a` in `R`.
    pub premise: bool,
    pub premise_counterexample: Option<String>,
    /// `det(a + b) = det(a) + det(b)` for all pairs; `None` when the
    /// premise fails.
    pub conclusion: Option<bool>,
    pub conclusion_counterexample: Option<(String, String)>,
    /// Scalars `λ_1 < ... < λ_n` with `λ_i·1` in `R` and pairwise
    /// differences non-zero-divisors, if any.
    pub scalars: Option<Vec<String>>,
    /// `a^n` central for every `a`; checked when the premise holds and the
    /// scalars exist.
    pub central_powers: Option<bool>,
    pub trace_chain: Option<TraceChain>,
}

impl AuditReport {
    /// No checked implication failed.
    pub fn passes(&self) -> bool {
        self.conclusion != Some(false)
            && self.central_powers != Some(false)
            && self.trace_chain.as_ref().is_none_or(|c| !c.premise || c.conclusions_hold())
    }

    /// Report lines with the premise first.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("audit {} over {} n={} |R|={}", self.name, self.ring, self.n, self.order)];
        match &self.premise_counterexample {
            None => out.push("premise det(1+a) = 1+det(a): holds".into()),
            Some(a) => out.push(format!("premise det(1+a) = 1+det(a): premise violated at a = {a}")),
        }
        match (self.conclusion, &self.conclusion_counterexample) {
            (None, _) => out.push("conclusion det(a+b) = det(a)+det(b): not claimed".into()),
            (Some(true), _) => out.push("conclusion det(a+b) = det(a)+det(b): holds".into()),
            (Some(false), Some((a, b))) => {
                out.push(format!("conclusion det(a+b) = det(a)+det(b): fails at a = {a}, b = {b}"))
            }
            (Some(false), None) => out.push("conclusion det(a+b) = det(a)+det(b): fails".into()),
        }
        match &self.scalars {
            Some(l) => out.push(format!("scalar condition: holds with λ = {}", l.join(", "))),
            None => out.push("scalar condition: fails".into()),
        }
        match self.central_powers {
            Some(b) => out.push(format!("a^n central: {}", if b { "holds" } else { "fails" })),
            None => out.push("a^n central: not checked".into()),
        }
        if let Some(c) = &self.trace_chain {
            let show = |v: Option<bool>| match v {
                None => "not checked",
                Some(true) => "holds",
                Some(false) => "fails",
            };
            out.push(format!("τ2 = τ1 on R: {}", if c.premise { "holds" } else { "fails" }));
            out.push(format!("2τ1 = 0: {}", show(c.two_tau1_zero)));
            out.push(format!("⟨x,y⟩ = 0: {}", show(c.pairing_zero)));
            out.push(format!("δ = 0: {}", show(c.delta_zero)));
            out.push(format!("det additive: {}", show(c.det_additive)));
        }
        out
    }
}

/// Matrix arithmetic over a finite commutative ring.
struct MatOps<'a> {
    k: &'a FiniteStruct,
    n: usize,
}

impl MatOps<'_> {
    fn scalar(&self, c: Elem) -> Vec<Elem> {
        let n = self.n;
        (0..n * n).map(|i| if i / n == i % n { c } else { self.k.zero() }).collect()
    }

    fn add(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.k.add(x, y)).collect()
    }

    fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let (k, n) = (self.k, self.n);
        (0..n * n)
            .map(|i| {
                let (r, c) = (i / n, i % n);
                (0..n).fold(k.zero(), |acc, l| k.add(acc, k.mul(a[r * n + l], b[l * n + c])))
            })
            .collect()
    }

    fn neg(&self, x: Elem) -> Elem {
        self.k.neg(x).expect("coefficient ring has negatives")
    }

    /// Determinant of the principal submatrix on `rows`.
    fn minor(&self, a: &[Elem], rows: &[usize]) -> Elem {
        let k = self.k;
        let mut acc = k.zero();
        for (p, odd) in super::signed_permutations(rows.len()) {
            let t = (0..rows.len()).fold(k.one(), |t, i| k.mul(t, a[rows[i] * self.n + rows[p[i]]]));
            acc = k.add(acc, if odd { self.neg(t) } else { t });
        }
        acc
    }

    /// `τ_j` as the sum of principal `j × j` minors.
    fn tau(&self, a: &[Elem], j: usize) -> Elem {
        let mut acc = self.k.zero();
        for mask in 0u32..(1 << self.n) {
            if mask.count_ones() as usize == j {
                let rows: Vec<usize> = (0..self.n).filter(|&i| mask >> i & 1 == 1).collect();
                acc = self.k.add(acc, self.minor(a, &rows));
            }
        }
        acc
    }

    fn det(&self, a: &[Elem]) -> Elem {
        self.tau(a, self.n)
    }

    fn label(&self, a: &[Elem]) -> String {
        let rows: Vec<String> = a
            .chunks(self.n)
            .map(|r| format!("[{}]", r.iter().map(|&e| self.k.label(e)).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    }
}

fn parse_entry(k: &FiniteStruct, tok: &str) -> Result<Elem> {
    if let Some(e) = k.find_label(tok) {
        return Ok(e);
    }
    let (neg, digits) = match tok.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, tok),
    };
    let v: usize = digits.parse().map_err(|_| Error::usage(format!("unknown coefficient `{tok}`")))?;
    let e = k.int(v);
    Ok(if neg { k.neg(e).expect("ring") } else { e })
}

fn is_non_zero_divisor(k: &FiniteStruct, d: Elem) -> bool {
    d != k.zero() && k.elements().all(|m| m == k.zero() || k.mul(d, m) != k.zero())
}

/// Audit with the default subring cap.
pub fn det_brachy_audit(spec: &AuditSpec) -> Result<AuditReport> {
    det_brachy_audit_with_cap(spec, AUDIT_CAP)
}

pub fn det_brachy_audit_with_cap(spec: &AuditSpec, cap: usize) -> Result<AuditReport> {
    let k = zoo::build_str(&spec.ring)?;
    if !k.classification().is_commutative_ring {
        return Err(Error::usage(format!("coefficient ring `{}` is not a commutative ring", spec.ring)));
    }
    let n = spec.n;
    if !(2..=3).contains(&n) {
        return Err(Error::usage(format!("audits need n in {{2, 3}}, got {n}")));
    }
    let ops = MatOps { k: &k, n };
    let mut gens = Vec::new();
    for g in &spec.generators {
        if g.len() != n * n {
            return Err(Error::usage(format!("generator with {} entries for n = {n}", g.len())));
        }
        gens.push(g.iter().map(|t| parse_entry(&k, t)).collect::<Result<Vec<Elem>>>()?);
    }

    // closure under addition and multiplication
    let mut elems: Vec<Vec<Elem>> = Vec::new();
    let mut index: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut push = |m: Vec<Elem>, elems: &mut Vec<Vec<Elem>>| -> Result<()> {
        if !index.contains_key(&m) {
            if elems.len() == cap {
                return Err(Error::CapExceeded { what: format!("subring generated in audit `{}`", spec.name), cap });
            }
            index.insert(m.clone(), elems.len());
            elems.push(m);
        }
        Ok(())
    };
    push(ops.scalar(k.zero()), &mut elems)?;
    push(ops.scalar(k.one()), &mut elems)?;
    for g in gens {
        push(g, &mut elems)?;
    }
    let mut done = 0;
    while done < elems.len() {
        let x = elems[done].clone();
        for j in 0..=done {
            let y = elems[j].clone();
            for m in [ops.add(&x, &y), ops.mul(&x, &y), ops.mul(&y, &x)] {
                push(m, &mut elems)?;
            }
        }
        done += 1;
    }
    elems.sort();

    let det: Vec<Elem> = elems.iter().map(|a| ops.det(a)).collect();
    let one = ops.scalar(k.one());
    let premise_counterexample = elems
        .iter()
        .zip(&det)
        .find(|(a, &d)| ops.det(&ops.add(&one, a)) != k.succ(d))
        .map(|(a, _)| ops.label(a));
    let premise = premise_counterexample.is_none();

    let mut conclusion = None;
    let mut conclusion_counterexample = None;
    if premise {
        conclusion = Some(true);
        'pairs: for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                if ops.det(&ops.add(a, b)) != k.add(det[i], det[j]) {
                    conclusion = Some(false);
                    conclusion_counterexample = Some((ops.label(a), ops.label(b)));
                    break 'pairs;
                }
            }
        }
    }

    let in_r: Vec<Elem> = k.elements().filter(|&c| elems.binary_search(&ops.scalar(c)).is_ok()).collect();
    let scalars = choose_scalars(&k, &in_r, n);
    let central_powers = (premise && scalars.is_some()).then(|| {
        elems.iter().all(|a| {
            let p = (1..n).fold(a.clone(), |acc, _| ops.mul(&acc, a));
            elems.iter().all(|b| ops.mul(&p, b) == ops.mul(b, &p))
        })
    });

    let trace_chain = (n == 3).then(|| trace_chain(&ops, &elems));
    Ok(AuditReport {
        name: spec.name.clone(),
        ring: spec.ring.clone(),
        n,
        order: elems.len(),
        premise,
        premise_counterexample,
        conclusion,
        conclusion_counterexample,
        scalars: scalars.map(|v| v.iter().map(|&e| k.label(e)).collect()),
        central_powers,
        trace_chain,
    })
}

/// First `n` scalars in increasing order whose pairwise differences are
/// non-zero-divisors.
fn choose_scalars(k: &FiniteStruct, cands: &[Elem], n: usize) -> Option<Vec<Elem>> {
    fn go(k: &FiniteStruct, cands: &[Elem], n: usize, from: usize, cur: &mut Vec<Elem>) -> bool {
        if cur.len() == n {
            return true;
        }
        for i in from..cands.len() {
            let c = cands[i];
            if cur.iter().all(|&l| is_non_zero_divisor(k, k.sub(c, l).expect("ring"))) {
                cur.push(c);
                if go(k, cands, n, i + 1, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = Vec::new();
    go(k, cands, n, 0, &mut cur).then_some(cur)
}

fn trace_chain(ops: &MatOps<'_>, elems: &[Vec<Elem>]) -> TraceChain {
    let k = ops.k;
    let t1: Vec<Elem> = elems.iter().map(|a| ops.tau(a, 1)).collect();
    let t2: Vec<Elem> = elems.iter().map(|a| ops.tau(a, 2)).collect();
    let premise = t1 == t2;
    if !premise {
        return TraceChain { premise, two_tau1_zero: None, pairing_zero: None, delta_zero: None, det_additive: None };
    }
    let sub = |x: Elem, y: Elem| k.sub(x, y).expect("ring");
    let two_tau1_zero = t1.iter().all(|&t| k.add(t, t) == k.zero());
    let (mut pairing_zero, mut delta_zero, mut det_additive) = (true, true, true);
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let s = ops.add(x, y);
            let xy = ops.mul(x, y);
            let pairing = sub(sub(ops.tau(&s, 2), t2[i]), t2[j]);
            pairing_zero &= pairing == k.zero();
            let delta = [
                k.mul(ops.tau(&xy, 1), ops.tau(&s, 1)),
                k.neg(k.mul(t1[i], t2[j])).expect("ring"),
                k.neg(k.mul(t2[i], t1[j])).expect("ring"),
                k.neg(ops.tau(&ops.mul(&xy, &s), 1)).expect("ring"),
            ]
            .into_iter()
            .fold(k.zero(), |acc, v| k.add(acc, v));
            delta_zero &= delta == k.zero();
            det_additive &= ops.det(&s) == k.add(ops.det(x), ops.det(y));
        }
    }
    TraceChain {
        premise,
        two_tau1_zero: Some(two_tau1_zero),
        pairing_zero: Some(pairing_zero),
        delta_zero: Some(delta_zero),
        det_additive: Some(det_additive),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(name: &str) -> AuditSpec {
        audit_battery().unwrap().into_iter().find(|s| s.name == name).unwrap()
    }

    #[test]
    fn full_matrix_ring_violates_premise() {
        let rep = det_brachy_audit(&spec("m3-f2")).unwrap();
        assert_eq!(rep.order, 512);
        assert!(!rep.premise);
        assert_eq!(rep.conclusion, None);
        assert!(rep.lines()[1].contains("premise violated"));
    }

    #[test]
    fn lower_unitriangular_scalars_over_f2() {
        let rep = det_brachy_audit(&spec("f2-scalar-plus-strict-lower-3")).unwrap();
        assert_eq!(rep.order, 16);
        assert!(rep.premise);
        assert_eq!(rep.conclusion, Some(true));
        assert_eq!(rep.scalars, None);
        let chain = rep.trace_chain.unwrap();
        assert!(chain.premise && chain.conclusions_hold());
    }

    #[test]
    fn scalars_over_z5() {
        let rep = det_brachy_audit(&spec("z5-scalars-3")).unwrap();
        assert_eq!(rep.order, 5);
        assert!(!rep.premise);
        assert_eq!(rep.scalars, Some(vec!["0".into(), "1".into(), "2".into()]));
        assert_eq!(rep.central_powers, None);
    }

    #[test]
    fn dual_numbers_over_f2_reach_central_powers() {
        let rep = det_brachy_audit(&spec("f2-scalar-plus-strict-lower-2")).unwrap();
        assert!(rep.premise);
        assert_eq!(rep.conclusion, Some(true));
        assert_eq!(rep.central_powers, Some(true));
    }

    #[test]
    fn cap_is_enforced() {
        let err = det_brachy_audit_with_cap(&spec("m3-f2"), 100).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn every_battery_audit_passes() {
        for s in audit_battery().unwrap() {
            let rep = det_brachy_audit(&s).unwrap();
            assert!(rep.passes(), "{}", rep.lines().join("\n"));
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_audit_specs("ring zmod(2)\nn x\n").is_err());
        assert!(parse_audit_specs("ring zmod(2)\n").is_err());
        assert!(parse_audit_specs("bogus 1\n").is_err());
        let specs = parse_audit_specs("ring zmod(3)\nn 2\ngen 1 2; 0 -1\n").unwrap();
        let rep = det_brachy_audit(&specs[0]).unwrap();
        assert!(rep.order > 2);
    }
}
