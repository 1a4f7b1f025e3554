use crate::error::Result;
use crate::finstruct::{element_profile, jacobson_radical, jacobson_radical_by_quasi_regularity, Elem, FiniteStruct, MAX_RADICAL_ORDER};
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

/// What a certificate establishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subject {
    /// The element is addable.
    Element(Elem),
    /// The pair is summable.
    Pair(Elem, Elem),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Element(a) => write!(f, "{a}"),
            Subject::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Closure rules for addable elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AddRule {
    Multiple,
    Central,
    Radical,
    Subgroup,
    RegularFactor,
    Power,
    PiRegular,
    IntegralClosure,
    Commutators,
    SingleGenerator,
}

impl AddRule {
    pub const ALL: [AddRule; 10] = [
        AddRule::Multiple,
        AddRule::Central,
        AddRule::Radical,
        AddRule::Subgroup,
        AddRule::RegularFactor,
        AddRule::Power,
        AddRule::PiRegular,
        AddRule::IntegralClosure,
        AddRule::Commutators,
        AddRule::SingleGenerator,
    ];

    pub fn code(self) -> &'static str {
        match self {
            AddRule::Multiple => "r1",
            AddRule::Central => "r2",
            AddRule::Radical => "r3",
            AddRule::Subgroup => "r4",
            AddRule::RegularFactor => "r5",
            AddRule::Power => "r6",
            AddRule::PiRegular => "r7",
            AddRule::IntegralClosure => "r8",
            AddRule::Commutators => "r9",
            AddRule::SingleGenerator => "r10",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AddRule::Multiple => "multiple-of-one",
            AddRule::Central => "central",
            AddRule::Radical => "jacobson-radical",
            AddRule::Subgroup => "additive-subgroup",
            AddRule::RegularFactor => "regular-factor",
            AddRule::Power => "power",
            AddRule::PiRegular => "pi-regular",
            AddRule::IntegralClosure => "right-integral-closure",
            AddRule::Commutators => "addable-commutators",
            AddRule::SingleGenerator => "single-generator",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            AddRule::Multiple => "integer multiples of the unit are addable",
            AddRule::Central => "the center is an addable subset",
            AddRule::Radical => "the Jacobson radical is addable",
            AddRule::Subgroup => "addable elements form an additive subgroup",
            AddRule::RegularFactor => "addable times regular, on either side, is addable",
            AddRule::Power => "x is addable when some power x^n is",
            AddRule::PiRegular => "pi-regular elements are addable",
            AddRule::IntegralClosure => "addable elements are right integrally closed",
            AddRule::Commutators => "x is addable when every commutator [x,y] is",
            AddRule::SingleGenerator => {
                "the ring is addable when every element is a polynomial in one y with addable left coefficients"
            }
        }
    }

    pub fn parse(code: &str) -> Option<AddRule> {
        AddRule::ALL.into_iter().find(|r| r.code() == code || r.name() == code)
    }
}

impl fmt::Display for AddRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.code(), self.name())
    }
}

/// Closure rules for summable pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairRule {
    AddableSeed,
    Orthogonal,
    Commuting,
    SumAddable,
    QuasiInverseTransfer,
    CommutatorAddable,
    CommutatorPairs,
    Swap,
}

impl PairRule {
    pub const ALL: [PairRule; 8] = [
        PairRule::AddableSeed,
        PairRule::Orthogonal,
        PairRule::Commuting,
        PairRule::SumAddable,
        PairRule::QuasiInverseTransfer,
        PairRule::CommutatorAddable,
        PairRule::CommutatorPairs,
        PairRule::Swap,
    ];

    pub fn code(self) -> &'static str {
        match self {
            PairRule::AddableSeed => "s0",
            PairRule::Orthogonal => "s1",
            PairRule::Commuting => "s2",
            PairRule::SumAddable => "s3",
            PairRule::QuasiInverseTransfer => "s4",
            PairRule::CommutatorAddable => "s5",
            PairRule::CommutatorPairs => "s5",
            PairRule::Swap => "sw",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairRule::AddableSeed => "addable-member",
            PairRule::Orthogonal => "zero-product",
            PairRule::Commuting => "xyx=x^2y",
            PairRule::SumAddable => "addable-sum",
            PairRule::QuasiInverseTransfer => "quasi-inverse-transfer",
            PairRule::CommutatorAddable => "addable-commutator",
            PairRule::CommutatorPairs => "commutator-pairs",
            PairRule::Swap => "swap",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            PairRule::AddableSeed => "a pair with an addable member is summable",
            PairRule::Orthogonal => "xy = 0 & z' = x'y' is a summability formula when xy = 0",
            PairRule::Commuting => "pairs with xyx = x^2y are summable",
            PairRule::SumAddable => "(x,y) is summable when x+y is addable",
            PairRule::QuasiInverseTransfer => "for u = uvu, (x,yv) summable gives (xu,y) summable",
            PairRule::CommutatorAddable => "(x,y) is summable when [x,y] is addable",
            PairRule::CommutatorPairs => {
                "(x,y) is summable when ([x,y],x^2+yx), ([x,y],p2(x,y,x+y)) and ([x,y],p2(x,1+y,1+x+y)) are"
            }
            PairRule::Swap => "summability of a pair does not depend on its order",
        }
    }
}

impl fmt::Display for PairRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.code(), self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Add(AddRule),
    Pair(PairRule),
}

impl Rule {
    pub fn citation(self) -> &'static str {
        match self {
            Rule::Add(r) => r.citation(),
            Rule::Pair(r) => r.citation(),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Add(r) => write!(f, "{r}"),
            Rule::Pair(r) => write!(f, "{r}"),
        }
    }
}

/// One derivation step: `rule` applied to `premises` with witness `data`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub subject: Subject,
    pub rule: Rule,
    pub premises: Vec<Subject>,
    pub data: Vec<Elem>,
}

impl Certificate {
    pub fn citation(&self) -> &'static str {
        self.rule.citation()
    }

    /// Re-derive the subject from the rule, the premises and the data.
    /// Premises themselves are not checked here.
    pub fn replay(&self, s: &FiniteStruct) -> bool {
        match (self.rule, self.subject) {
            (Rule::Add(rule), Subject::Element(x)) => replay_add(rule, x, &self.premises, &self.data, s),
            (Rule::Pair(rule), Subject::Pair(x, y)) => {
                super::pairs::replay_pair(rule, (x, y), &self.premises, &self.data, s)
            }
            _ => false,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} by {}", self.subject, self.rule)?;
        if !self.premises.is_empty() {
            let ps: Vec<String> = self.premises.iter().map(Subject::to_string).collect();
            write!(f, " from {}", ps.join(" "))?;
        }
        if !self.data.is_empty() {
            let ds: Vec<String> = self.data.iter().map(Elem::to_string).collect();
            write!(f, " with {}", ds.join(","))?;
        }
        Ok(())
    }
}

/// Replay `certs` in order; each premise must be in `assumed` or certified
/// earlier in the list.
pub fn replay_chain(certs: &[Certificate], assumed: &BTreeSet<Subject>, s: &FiniteStruct) -> bool {
    let mut known: HashSet<Subject> = assumed.iter().copied().collect();
    for c in certs {
        if !c.premises.iter().all(|p| known.contains(p)) || !c.replay(s) {
            return false;
        }
        known.insert(c.subject);
    }
    true
}

fn premise_elems(premises: &[Subject]) -> Option<Vec<Elem>> {
    premises
        .iter()
        .map(|p| match p {
            Subject::Element(a) => Some(*a),
            Subject::Pair(..) => None,
        })
        .collect()
}

fn commutator(s: &FiniteStruct, x: Elem, y: Elem) -> Elem {
    s.sub(s.mul(x, y), s.mul(y, x)).expect("rings have negatives")
}

fn in_radical(s: &FiniteStruct, x: Elem) -> bool {
    s.elements().all(|r| {
        let d = s.sub(s.one(), s.mul(r, x)).expect("rings have negatives");
        s.elements().any(|b| s.mul(b, d) == s.one())
    })
}

/// Every value of `Σ_{k<terms} a_k y^k` with coefficients in `coeffs`.
fn span(s: &FiniteStruct, coeffs: &[Elem], y: Elem) -> Vec<bool> {
    let n = s.order();
    let mut reach = vec![false; n];
    reach[s.zero() as usize] = true;
    let mut p = s.one();
    for _ in 0..=n {
        let prev = reach.clone();
        for v in s.elements().filter(|&v| prev[v as usize]) {
            for &a in coeffs {
                reach[s.add(v, s.mul(a, p)) as usize] = true;
            }
        }
        if reach == prev {
            break;
        }
        p = s.mul(p, y);
    }
    reach
}

fn replay_add(rule: AddRule, x: Elem, premises: &[Subject], data: &[Elem], s: &FiniteStruct) -> bool {
    if !s.is_ring() {
        return false;
    }
    let Some(ps) = premise_elems(premises) else {
        return false;
    };
    match (rule, data, ps.as_slice()) {
        (AddRule::Multiple, &[k], []) => s.int(k as usize) == x,
        (AddRule::Central, [], []) => s.is_central(x),
        (AddRule::Radical, [], []) => in_radical(s, x),
        (AddRule::Subgroup, &[0], &[a, b]) => s.add(a, b) == x,
        (AddRule::Subgroup, &[1], &[a]) => s.neg(a) == Some(x),
        (AddRule::RegularFactor, &[u, v, side], &[a]) => {
            s.mul(s.mul(u, v), u) == u
                && match side {
                    0 => s.mul(a, u) == x,
                    1 => s.mul(u, a) == x,
                    _ => false,
                }
        }
        (AddRule::Power, &[n], &[xn]) => n >= 2 && s.pow(x, n as usize) == xn,
        (AddRule::PiRegular, &[k, t], []) => {
            let xk = s.pow(x, k as usize);
            k >= 1 && s.mul(s.mul(xk, t), xk) == xk
        }
        (AddRule::IntegralClosure, [n, coeffs @ ..], _) => {
            let n = *n as usize;
            if n == 0 || coeffs.len() != n || !coeffs.iter().all(|a| ps.contains(a)) {
                return false;
            }
            let sum = (0..n).fold(s.zero(), |acc, k| s.add(acc, s.mul(coeffs[k], s.pow(x, k))));
            sum == s.pow(x, n)
        }
        (AddRule::Commutators, [], _) => s.elements().all(|y| ps.contains(&commutator(s, x, y))),
        (AddRule::SingleGenerator, &[y], _) => span(s, &ps, y).iter().all(|&b| b),
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyConfig {
    /// Rules applied round-robin, in this order.
    pub rules: Vec<AddRule>,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig { rules: AddRule::ALL.to_vec() }
    }
}

impl CertifyConfig {
    pub fn only(rules: &[AddRule]) -> Self {
        CertifyConfig { rules: rules.to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddableReport {
    pub certified: BTreeSet<Elem>,
    /// One certificate per certified element, in derivation order.
    pub certificates: Vec<Certificate>,
    /// Number of elements each rule certified.
    pub fired: BTreeMap<AddRule, usize>,
    pub rounds: usize,
    pub order: usize,
}

impl AddableReport {
    pub fn is_complete(&self) -> bool {
        self.certified.len() == self.order
    }

    pub fn replay_all(&self, s: &FiniteStruct) -> bool {
        replay_chain(&self.certificates, &BTreeSet::new(), s)
            && self.certificates.len() == self.certified.len()
            && self
                .certificates
                .iter()
                .all(|c| matches!(c.subject, Subject::Element(a) if self.certified.contains(&a)))
    }
}

/// [`certify_addable_with`] under every rule.
pub fn certify_addable(s: &FiniteStruct) -> Result<AddableReport> {
    certify_addable_with(s, &CertifyConfig::default())
}

/// Fixpoint of the enabled rules. The result is a set of elements proved
/// addable, a lower bound for the addable kernel.
pub fn certify_addable_with(s: &FiniteStruct, cfg: &CertifyConfig) -> Result<AddableReport> {
    s.require_ring()?;
    let mut st = State { s, certified: vec![false; s.order()], certs: Vec::new() };
    let mut fired: BTreeMap<AddRule, usize> = BTreeMap::new();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let before = st.certs.len();
        for &rule in &cfg.rules {
            let start = st.certs.len();
            st.apply(rule)?;
            let added = st.certs.len() - start;
            if added > 0 {
                *fired.entry(rule).or_default() += added;
            }
        }
        if st.certs.len() == before || st.certs.len() == s.order() {
            break;
        }
    }
    Ok(AddableReport {
        certified: st.set(),
        certificates: st.certs,
        fired,
        rounds,
        order: s.order(),
    })
}

struct State<'a> {
    s: &'a FiniteStruct,
    certified: Vec<bool>,
    certs: Vec<Certificate>,
}

impl State<'_> {
    fn set(&self) -> BTreeSet<Elem> {
        self.s.elements().filter(|&a| self.certified[a as usize]).collect()
    }

    fn list(&self) -> Vec<Elem> {
        self.set().into_iter().collect()
    }

    fn open(&self) -> Vec<Elem> {
        self.s.elements().filter(|&a| !self.certified[a as usize]).collect()
    }

    fn add(&mut self, x: Elem, rule: AddRule, premises: Vec<Elem>, data: Vec<Elem>) {
        if self.certified[x as usize] {
            return;
        }
        self.certified[x as usize] = true;
        let mut premises: Vec<Subject> = premises.into_iter().map(Subject::Element).collect();
        premises.dedup();
        self.certs.push(Certificate { subject: Subject::Element(x), rule: Rule::Add(rule), premises, data });
    }

    fn apply(&mut self, rule: AddRule) -> Result<()> {
        let s = self.s;
        let n = s.order();
        match rule {
            AddRule::Multiple => {
                for k in 0..n {
                    self.add(s.int(k), rule, vec![], vec![k as Elem]);
                }
            }
            AddRule::Central => {
                for x in self.open() {
                    if s.is_central(x) {
                        self.add(x, rule, vec![], vec![]);
                    }
                }
            }
            AddRule::Radical => {
                let j = if n <= MAX_RADICAL_ORDER {
                    jacobson_radical(s)?
                } else {
                    jacobson_radical_by_quasi_regularity(s)?
                };
                for x in j {
                    self.add(x, rule, vec![], vec![]);
                }
            }
            AddRule::Subgroup => loop {
                let known = self.list();
                let start = self.certs.len();
                for &a in &known {
                    if let Some(m) = s.neg(a) {
                        self.add(m, rule, vec![a], vec![1]);
                    }
                    for &b in &known {
                        self.add(s.add(a, b), rule, vec![a, b], vec![0]);
                    }
                }
                if self.certs.len() == start {
                    break;
                }
            },
            AddRule::RegularFactor => {
                let regular: Vec<(Elem, Elem)> =
                    s.elements().filter_map(|u| s.quasi_inverse(u).map(|v| (u, v))).collect();
                for a in self.list() {
                    for &(u, v) in &regular {
                        self.add(s.mul(a, u), rule, vec![a], vec![u, v, 0]);
                        self.add(s.mul(u, a), rule, vec![a], vec![u, v, 1]);
                    }
                }
            }
            AddRule::Power => {
                for x in self.open() {
                    if let Some(k) = (2..=n).find(|&k| self.certified[s.pow(x, k) as usize]) {
                        self.add(x, rule, vec![s.pow(x, k)], vec![k as Elem]);
                    }
                }
            }
            AddRule::PiRegular => {
                let profiles = element_profile(s);
                for x in self.open() {
                    if let Some((k, t)) = profiles[x as usize].pi_regular {
                        self.add(x, rule, vec![], vec![k as Elem, t]);
                    }
                }
            }
            AddRule::IntegralClosure => {
                let coeffs = self.list();
                for x in self.open() {
                    if let Some(rel) = integral_relation(s, x, &coeffs) {
                        let mut data = vec![rel.len() as Elem];
                        data.extend(&rel);
                        let mut premises = rel.clone();
                        premises.sort();
                        self.add(x, rule, premises, data);
                    }
                }
            }
            AddRule::Commutators => {
                for x in self.open() {
                    let cs: BTreeSet<Elem> = s.elements().map(|y| commutator(s, x, y)).collect();
                    if cs.iter().all(|&c| self.certified[c as usize]) {
                        self.add(x, rule, cs.into_iter().collect(), vec![]);
                    }
                }
            }
            AddRule::SingleGenerator => {
                let coeffs = self.list();
                if coeffs.len() == n {
                    return Ok(());
                }
                if let Some(y) = s.elements().find(|&y| span(s, &coeffs, y).iter().all(|&b| b)) {
                    for x in self.open() {
                        self.add(x, rule, coeffs.clone(), vec![y]);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Coefficients `a_0..a_{n-1}` from `coeffs` with `x^n = Σ a_k x^k`, for the
/// least such `n ≤ |R|`.
fn integral_relation(s: &FiniteStruct, x: Elem, coeffs: &[Elem]) -> Option<Vec<Elem>> {
    let n = s.order();
    let powers: Vec<Elem> = (0..=n).map(|k| s.pow(x, k)).collect();
    // layers[j][v] = (previous partial sum, coefficient of x^(j-1)) reaching v
    let mut layers: Vec<Vec<Option<(Elem, Elem)>>> = vec![vec![None; n]];
    layers[0][s.zero() as usize] = Some((s.zero(), s.zero()));
    for deg in 1..=n {
        let prev = &layers[deg - 1];
        let mut next = vec![None; n];
        for v in s.elements().filter(|&v| prev[v as usize].is_some()) {
            for &a in coeffs {
                let w = s.add(v, s.mul(a, powers[deg - 1]));
                if next[w as usize].is_none() {
                    next[w as usize] = Some((v, a));
                }
            }
        }
        let hit = next[powers[deg] as usize].is_some();
        layers.push(next);
        if hit {
            let mut rel = vec![s.zero(); deg];
            let mut v = powers[deg];
            for j in (1..=deg).rev() {
                let (p, a) = layers[j][v as usize].expect("back-pointer chain");
                rel[j - 1] = a;
                v = p;
            }
            return Some(rel);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::zoo;

    #[test]
    fn z4_by_pi_regularity_alone() {
        let z4 = zoo::build_str("zmod(4)").unwrap();
        let rep = certify_addable_with(&z4, &CertifyConfig::only(&[AddRule::PiRegular])).unwrap();
        assert!(rep.is_complete());
        assert!(rep.replay_all(&z4));
        assert_eq!(rep.fired.keys().copied().collect::<Vec<_>>(), vec![AddRule::PiRegular]);
    }

    #[test]
    fn m2f2_is_fully_certified() {
        let m2 = zoo::build_str("matring(zmod(2),2)").unwrap();
        let rep = certify_addable(&m2).unwrap();
        assert_eq!(rep.certified.len(), 16);
        assert!(rep.replay_all(&m2));
    }

    #[test]
    fn zero_and_one_come_first_from_multiples() {
        let m2 = zoo::build_str("matring(zmod(2),2)").unwrap();
        let rep = certify_addable(&m2).unwrap();
        let firsts: Vec<Subject> = rep.certificates.iter().take(2).map(|c| c.subject).collect();
        assert_eq!(firsts, vec![Subject::Element(m2.zero()), Subject::Element(m2.one())]);
        assert!(rep.certificates[..2].iter().all(|c| c.rule == Rule::Add(AddRule::Multiple)));
    }

    #[test]
    fn rules_without_pi_regularity_still_cover_matrices() {
        let m2 = zoo::build_str("matring(zmod(2),2)").unwrap();
        let cfg = CertifyConfig::only(&[AddRule::Multiple, AddRule::Subgroup, AddRule::RegularFactor]);
        let rep = certify_addable_with(&m2, &cfg).unwrap();
        assert!(rep.is_complete());
        assert!(rep.replay_all(&m2));
    }

    #[test]
    fn each_structural_rule_fires_somewhere() {
        let upper = zoo::build_str("triangular(zmod(2),2,upper)").unwrap();
        let rad = certify_addable_with(&upper, &CertifyConfig::only(&[AddRule::Radical])).unwrap();
        assert_eq!(rad.certified.len(), 2);
        let cfg = CertifyConfig::only(&[AddRule::Multiple, AddRule::Radical, AddRule::Commutators]);
        let rep = certify_addable_with(&upper, &cfg).unwrap();
        assert!(rep.is_complete());
        assert!(rep.fired.contains_key(&AddRule::Commutators));
        assert!(rep.replay_all(&upper));

        let cfg = CertifyConfig::only(&[AddRule::Multiple, AddRule::Radical, AddRule::SingleGenerator]);
        let rep = certify_addable_with(&upper, &cfg).unwrap();
        assert!(rep.is_complete());
        assert!(rep.fired.contains_key(&AddRule::SingleGenerator));
        assert!(rep.replay_all(&upper));

        let cfg = CertifyConfig::only(&[AddRule::Multiple, AddRule::Power]);
        let dual = zoo::build_str("quotientpoly(zmod(2),[0,0,1])").unwrap();
        let rep = certify_addable_with(&dual, &cfg).unwrap();
        let x = dual.find_label("x").unwrap();
        assert!(rep.certified.contains(&x));
        assert!(rep.replay_all(&dual));
    }

    #[test]
    fn integral_closure_finds_relations() {
        let f4 = zoo::build_str("quotientpoly(zmod(2),[1,1,1])").unwrap();
        let cfg = CertifyConfig::only(&[AddRule::Multiple, AddRule::IntegralClosure]);
        let rep = certify_addable_with(&f4, &cfg).unwrap();
        assert!(rep.is_complete());
        assert!(rep.replay_all(&f4));
        let c = rep
            .certificates
            .iter()
            .find(|c| c.rule == Rule::Add(AddRule::IntegralClosure))
            .unwrap();
        assert_eq!(c.data[0], 2);
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let z4 = zoo::build_str("zmod(4)").unwrap();
        let mut rep = certify_addable_with(&z4, &CertifyConfig::only(&[AddRule::PiRegular])).unwrap();
        let c = rep.certificates.iter_mut().find(|c| c.subject == Subject::Element(3)).unwrap();
        c.data[1] = 0;
        assert!(!rep.replay_all(&z4));
    }

    #[test]
    fn non_rings_are_refused() {
        let t1 = crate::modelsearch::fixture("table1").unwrap();
        assert_eq!(certify_addable(&t1), Err(Error::NotARing));
    }
}
