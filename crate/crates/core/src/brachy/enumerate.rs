use super::Morphism;
use crate::error::{Error, Result};
use crate::finstruct::{Elem, FiniteStruct};
use rayon::prelude::*;
use std::sync::atomic::{AtomicU64, Ordering};

const UNSET: Elem = Elem::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    /// Maximum number of branch nodes; `None` is unbounded.
    pub budget: Option<u64>,
    /// Split the first branching point across worker threads.
    pub parallel: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { budget: None, parallel: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumStats {
    pub nodes: u64,
    pub solutions: usize,
}

/// Every brachymorphism `r → s`, sorted by map.
pub fn enumerate_brachymorphisms<'a>(
    r: &'a FiniteStruct,
    s: &'a FiniteStruct,
) -> Result<Vec<Morphism<'a>>> {
    enumerate_brachymorphisms_with(r, s, &EnumConfig::default()).map(|(ms, _)| ms)
}

/// Backtracking over the values of `f` with successor and product
/// propagation. Elements on long successor orbits are branched on first,
/// then those occurring most often in the product table.
pub fn enumerate_brachymorphisms_with<'a>(
    r: &'a FiniteStruct,
    s: &'a FiniteStruct,
    cfg: &EnumConfig,
) -> Result<(Vec<Morphism<'a>>, EnumStats)> {
    let nodes = AtomicU64::new(0);
    let mut root = Engine::new(r, s, cfg.budget, &nodes);
    let mut maps = Vec::new();
    if root.assign(r.zero(), s.zero()) && root.propagate() {
        match root.next_unset(0) {
            None => maps.push(root.val.clone()),
            Some(pos) => {
                let x = root.order[pos];
                let branch = |v: Elem| -> Result<Vec<Vec<Elem>>> {
                    let mut e = root.clone();
                    let mut out = Vec::new();
                    e.tick()?;
                    if e.assign(x, v) && e.propagate() {
                        e.search(pos + 1, &mut out)?;
                    }
                    Ok(out)
                };
                let parts: Vec<Result<Vec<Vec<Elem>>>> = if cfg.parallel {
                    s.elements().collect::<Vec<_>>().into_par_iter().map(branch).collect()
                } else {
                    s.elements().map(branch).collect()
                };
                let found: usize = parts.iter().filter_map(|p| p.as_ref().ok()).map(Vec::len).sum();
                for p in parts {
                    match p {
                        Ok(ms) => maps.extend(ms),
                        Err(Error::BudgetExhausted { budget, .. }) => {
                            return Err(Error::BudgetExhausted { budget, found })
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    maps.sort();
    let mut out = Vec::with_capacity(maps.len());
    for map in maps {
        let m = Morphism::new(r, s, map)?;
        if !m.is_brachymorphism {
            return Err(Error::Internal(format!("enumerated map {:?} fails the audit", m.map)));
        }
        out.push(m);
    }
    let stats = EnumStats { nodes: nodes.load(Ordering::Relaxed), solutions: out.len() };
    Ok((out, stats))
}

fn branching_order(r: &FiniteStruct) -> Vec<Elem> {
    let orbit = |x: Elem| {
        let mut seen = vec![false; r.order()];
        let mut y = x;
        let mut len = 0;
        while !seen[y as usize] {
            seen[y as usize] = true;
            len += 1;
            y = r.succ(y);
        }
        len
    };
    let mut occurrences = vec![0usize; r.order()];
    for &e in r.mul_table() {
        occurrences[e as usize] += 1;
    }
    let mut order: Vec<Elem> = r.elements().collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(orbit(x)), std::cmp::Reverse(occurrences[x as usize]), x));
    order
}

#[derive(Clone)]
struct Engine<'a> {
    r: &'a FiniteStruct,
    s: &'a FiniteStruct,
    order: Vec<Elem>,
    val: Vec<Elem>,
    trail: Vec<Elem>,
    queue: Vec<Elem>,
    budget: Option<u64>,
    nodes: &'a AtomicU64,
}

impl<'a> Engine<'a> {
    fn new(r: &'a FiniteStruct, s: &'a FiniteStruct, budget: Option<u64>, nodes: &'a AtomicU64) -> Self {
        Engine {
            r,
            s,
            order: branching_order(r),
            val: vec![UNSET; r.order()],
            trail: Vec::with_capacity(r.order()),
            queue: Vec::new(),
            budget,
            nodes,
        }
    }

    fn tick(&self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        match self.budget {
            Some(b) if n > b => Err(Error::BudgetExhausted { budget: b, found: 0 }),
            _ => Ok(()),
        }
    }

    fn assign(&mut self, x: Elem, v: Elem) -> bool {
        let cur = self.val[x as usize];
        if cur != UNSET {
            return cur == v;
        }
        self.val[x as usize] = v;
        self.trail.push(x);
        self.queue.push(x);
        true
    }

    fn propagate(&mut self) -> bool {
        while let Some(x) = self.queue.pop() {
            let fx = self.val[x as usize];
            if !self.assign(self.r.succ(x), self.s.succ(fx)) {
                self.queue.clear();
                return false;
            }
            let mut i = 0;
            while i < self.trail.len() {
                let y = self.trail[i];
                let fy = self.val[y as usize];
                if !self.assign(self.r.mul(x, y), self.s.mul(fx, fy))
                    || !self.assign(self.r.mul(y, x), self.s.mul(fy, fx))
                {
                    self.queue.clear();
                    return false;
                }
                i += 1;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.trail.drain(mark..) {
            self.val[x as usize] = UNSET;
        }
    }

    fn next_unset(&self, from: usize) -> Option<usize> {
        (from..self.order.len()).find(|&p| self.val[self.order[p] as usize] == UNSET)
    }

    fn search(&mut self, from: usize, out: &mut Vec<Vec<Elem>>) -> Result<()> {
        let Some(pos) = self.next_unset(from) else {
            out.push(self.val.clone());
            return Ok(());
        };
        let x = self.order[pos];
        for v in self.s.elements() {
            self.tick()?;
            let mark = self.trail.len();
            if self.assign(x, v) && self.propagate() {
                self.search(pos + 1, out)?;
            }
            self.undo(mark);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn count(a: &str, b: &str) -> usize {
        let r = zoo::build_str(a).unwrap();
        let s = zoo::build_str(b).unwrap();
        enumerate_brachymorphisms(&r, &s).unwrap().len()
    }

    #[test]
    fn cyclic_rings_are_rigid() {
        for n in 1..=12 {
            let z = zoo::build_str(&format!("zmod({n})")).unwrap();
            let ms = enumerate_brachymorphisms(&z, &z).unwrap();
            assert_eq!(ms.len(), 1, "zmod({n})");
            assert_eq!(ms[0].map, (0..n as Elem).collect::<Vec<_>>());
        }
    }

    #[test]
    fn no_map_from_z2_to_z3() {
        assert_eq!(count("zmod(2)", "zmod(3)"), 0);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let r = zoo::build_str("matring(zmod(2),2)").unwrap();
        let seq = EnumConfig { budget: None, parallel: false };
        let (a, _) = enumerate_brachymorphisms_with(&r, &r, &seq).unwrap();
        let (b, _) = enumerate_brachymorphisms_with(&r, &r, &EnumConfig::default()).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let r = zoo::build_str("matring(zmod(2),2)").unwrap();
        let cfg = EnumConfig { budget: Some(3), parallel: false };
        assert!(matches!(
            enumerate_brachymorphisms_with(&r, &r, &cfg),
            Err(Error::BudgetExhausted { budget: 3, .. })
        ));
    }
}
