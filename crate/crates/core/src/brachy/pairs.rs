use super::certify::{certify_addable, replay_chain, AddableReport, Certificate, PairRule, Rule, Subject};
use crate::error::Result;
use crate::finstruct::{Elem, FiniteStruct};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairConfig {
    /// Rules applied round-robin, in this order.
    pub rules: Vec<PairRule>,
    /// Elements taken as addable; `None` runs the addable certifier.
    pub addable: Option<BTreeSet<Elem>>,
}

impl Default for PairConfig {
    fn default() -> Self {
        PairConfig { rules: PairRule::ALL.to_vec(), addable: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub certified: BTreeSet<(Elem, Elem)>,
    pub certificates: Vec<Certificate>,
    pub fired: BTreeMap<PairRule, usize>,
    pub rounds: usize,
    /// Elements used as addable premises.
    pub addable: BTreeSet<Elem>,
    /// Certificates for `addable`, empty when it was supplied by the caller.
    pub addable_report: Option<AddableReport>,
    pub order: usize,
}

impl PairReport {
    pub fn is_complete(&self) -> bool {
        self.certified.len() == self.order * self.order
    }

    /// Replays the addable certificates, then the pair certificates. Caller
    /// supplied addable elements are taken as hypotheses.
    pub fn replay_all(&self, s: &FiniteStruct) -> bool {
        let assumed: BTreeSet<Subject> = match &self.addable_report {
            Some(rep) => {
                if !rep.replay_all(s) {
                    return false;
                }
                rep.certified.iter().map(|&a| Subject::Element(a)).collect()
            }
            None => self.addable.iter().map(|&a| Subject::Element(a)).collect(),
        };
        replay_chain(&self.certificates, &assumed, s)
    }
}

/// [`certify_summable_pairs_with`] under every rule.
pub fn certify_summable_pairs(s: &FiniteStruct) -> Result<PairReport> {
    certify_summable_pairs_with(s, &PairConfig::default())
}

/// Fixpoint of the enabled pair rules over a set of addable elements.
pub fn certify_summable_pairs_with(s: &FiniteStruct, cfg: &PairConfig) -> Result<PairReport> {
    s.require_ring()?;
    let (addable, addable_report) = match &cfg.addable {
        Some(set) => (set.clone(), None),
        None => {
            let rep = certify_addable(s)?;
            (rep.certified.clone(), Some(rep))
        }
    };
    let n = s.order();
    let mut st = PairState { s, addable: &addable, certified: vec![false; n * n], certs: Vec::new() };
    let mut fired: BTreeMap<PairRule, usize> = BTreeMap::new();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let before = st.certs.len();
        for &rule in &cfg.rules {
            let start = st.certs.len();
            st.apply(rule);
            let added = st.certs.len() - start;
            if added > 0 {
                *fired.entry(rule).or_default() += added;
            }
        }
        if st.certs.len() == before || st.certs.len() == n * n {
            break;
        }
    }
    let certified = st.certs.iter().filter_map(|c| match c.subject {
        Subject::Pair(x, y) => Some((x, y)),
        Subject::Element(_) => None,
    });
    Ok(PairReport {
        certified: certified.collect(),
        certificates: st.certs,
        fired,
        rounds,
        addable,
        addable_report,
        order: n,
    })
}

fn commutator(s: &FiniteStruct, x: Elem, y: Elem) -> Elem {
    s.sub(s.mul(x, y), s.mul(y, x)).expect("rings have negatives")
}

/// `(1 + zx)(1 + yz)`.
fn p2(s: &FiniteStruct, x: Elem, y: Elem, z: Elem) -> Elem {
    s.mul(s.succ(s.mul(z, x)), s.succ(s.mul(y, z)))
}

/// The three pairs whose summability yields that of `(x, y)`.
fn commutator_premises(s: &FiniteStruct, x: Elem, y: Elem) -> [(Elem, Elem); 3] {
    let c = commutator(s, x, y);
    let z = s.add(x, y);
    [
        (c, s.add(s.mul(x, x), s.mul(y, x))),
        (c, p2(s, x, y, z)),
        (c, p2(s, x, s.succ(y), s.succ(z))),
    ]
}

pub(super) fn replay_pair(
    rule: PairRule,
    (x, y): (Elem, Elem),
    premises: &[Subject],
    data: &[Elem],
    s: &FiniteStruct,
) -> bool {
    if !s.is_ring() {
        return false;
    }
    use Subject::{Element, Pair};
    match (rule, premises, data) {
        (PairRule::AddableSeed, &[Element(a)], &[0]) => a == x,
        (PairRule::AddableSeed, &[Element(a)], &[1]) => a == y,
        (PairRule::Orthogonal, [], []) => s.mul(x, y) == s.zero(),
        (PairRule::Commuting, [], []) => s.mul(s.mul(x, y), x) == s.mul(s.mul(x, x), y),
        (PairRule::SumAddable, &[Element(a)], []) => a == s.add(x, y),
        (PairRule::QuasiInverseTransfer, &[Pair(p, q)], &[x0, u, v]) => {
            s.mul(s.mul(u, v), u) == u && x == s.mul(x0, u) && p == x0 && q == s.mul(y, v)
        }
        (PairRule::CommutatorAddable, &[Element(c)], []) => c == commutator(s, x, y),
        (PairRule::CommutatorPairs, [a, b, c], []) => {
            let want = commutator_premises(s, x, y).map(|(p, q)| Pair(p, q));
            [*a, *b, *c] == want
        }
        (PairRule::Swap, &[Pair(p, q)], []) => (p, q) == (y, x),
        _ => false,
    }
}

struct PairState<'a> {
    s: &'a FiniteStruct,
    addable: &'a BTreeSet<Elem>,
    certified: Vec<bool>,
    certs: Vec<Certificate>,
}

impl PairState<'_> {
    fn idx(&self, x: Elem, y: Elem) -> usize {
        x as usize * self.s.order() + y as usize
    }

    fn has(&self, x: Elem, y: Elem) -> bool {
        self.certified[self.idx(x, y)]
    }

    fn add(&mut self, (x, y): (Elem, Elem), rule: PairRule, premises: Vec<Subject>, data: Vec<Elem>) {
        let i = self.idx(x, y);
        if self.certified[i] {
            return;
        }
        self.certified[i] = true;
        self.certs.push(Certificate { subject: Subject::Pair(x, y), rule: Rule::Pair(rule), premises, data });
    }

    fn open(&self) -> Vec<(Elem, Elem)> {
        let s = self.s;
        s.elements()
            .flat_map(|x| s.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| !self.has(x, y))
            .collect()
    }

    fn certified_pairs(&self) -> Vec<(Elem, Elem)> {
        let s = self.s;
        s.elements()
            .flat_map(|x| s.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| self.has(x, y))
            .collect()
    }

    fn apply(&mut self, rule: PairRule) {
        let s = self.s;
        match rule {
            PairRule::AddableSeed => {
                for a in self.addable.iter().copied().collect::<Vec<_>>() {
                    for x in s.elements() {
                        self.add((a, x), rule, vec![Subject::Element(a)], vec![0]);
                        self.add((x, a), rule, vec![Subject::Element(a)], vec![1]);
                    }
                }
            }
            PairRule::Orthogonal => {
                for (x, y) in self.open() {
                    if s.mul(x, y) == s.zero() {
                        self.add((x, y), rule, vec![], vec![]);
                    }
                }
            }
            PairRule::Commuting => {
                for (x, y) in self.open() {
                    if s.mul(s.mul(x, y), x) == s.mul(s.mul(x, x), y) {
                        self.add((x, y), rule, vec![], vec![]);
                    }
                }
            }
            PairRule::SumAddable => {
                for (x, y) in self.open() {
                    let z = s.add(x, y);
                    if self.addable.contains(&z) {
                        self.add((x, y), rule, vec![Subject::Element(z)], vec![]);
                    }
                }
            }
            PairRule::QuasiInverseTransfer => {
                let regular: Vec<(Elem, Elem)> = s
                    .elements()
                    .flat_map(|u| s.elements().map(move |v| (u, v)))
                    .filter(|&(u, v)| s.mul(s.mul(u, v), u) == u)
                    .collect();
                for (x, w) in self.certified_pairs() {
                    for &(u, v) in &regular {
                        for y in s.elements().filter(|&y| s.mul(y, v) == w) {
                            let prem = vec![Subject::Pair(x, w)];
                            self.add((s.mul(x, u), y), rule, prem, vec![x, u, v]);
                        }
                    }
                }
            }
            PairRule::CommutatorAddable => {
                for (x, y) in self.open() {
                    let c = commutator(s, x, y);
                    if self.addable.contains(&c) {
                        self.add((x, y), rule, vec![Subject::Element(c)], vec![]);
                    }
                }
            }
            PairRule::CommutatorPairs => {
                for (x, y) in self.open() {
                    let prem = commutator_premises(s, x, y);
                    if prem.iter().all(|&(p, q)| self.has(p, q)) {
                        let prem = prem.iter().map(|&(p, q)| Subject::Pair(p, q)).collect();
                        self.add((x, y), rule, prem, vec![]);
                    }
                }
            }
            PairRule::Swap => {
                for (x, y) in self.open() {
                    if self.has(y, x) {
                        self.add((x, y), rule, vec![Subject::Pair(y, x)], vec![]);
                    }
                }
            }
        }
    }
}
