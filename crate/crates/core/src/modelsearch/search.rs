use super::canon::{from_shell, relabel, shell_cells, Minimizer};
use crate::brachy::{enumerate_brachymorphisms_with, EnumConfig};
use crate::error::{Error, Result};
use crate::finstruct::{Elem, FiniteStruct};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

const UNSET: Elem = Elem::MAX;

/// Largest order accepted for commutative semirings.
pub const MAX_SEMIRING_ORDER: usize = 6;
/// Largest order accepted for near-rings, which must carry a budget.
pub const MAX_NEARRING_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchClass {
    /// Commutative additive monoid, commutative multiplicative monoid, both
    /// distributive laws.
    CommutativeSemiring,
    /// Commutative additive group, multiplicative monoid, right
    /// distributivity and `x0 = 0`.
    RightNearring,
}

impl fmt::Display for SearchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchClass::CommutativeSemiring => "semiring",
            SearchClass::RightNearring => "nearring",
        })
    }
}

impl FromStr for SearchClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "semiring" => Ok(SearchClass::CommutativeSemiring),
            "nearring" => Ok(SearchClass::RightNearring),
            other => Err(Error::usage(format!("unknown class `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTask {
    pub class: SearchClass,
    pub order: usize,
    /// Maximum number of table cells tried.
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Fixed row-major addition table with zero at 0 and one at 1.
    pub fixed_add: Option<Vec<Elem>>,
    /// Reject structures isomorphic to one already produced.
    pub isomorph_rejection: bool,
    /// Keep every structure of the class, not only counterexamples.
    pub keep_all: bool,
    pub parallel: bool,
}

impl SearchTask {
    pub fn new(class: SearchClass, order: usize) -> Self {
        SearchTask {
            class,
            order,
            node_budget: None,
            time_budget: None,
            fixed_add: None,
            isomorph_rejection: true,
            keep_all: false,
            parallel: true,
        }
    }

    /// Text form: `key value` lines with keys `class`, `order`, `nodes`,
    /// `seconds`, `isomorph_rejection`, and `fixed_add` followed by rows.
    pub fn parse(text: &str) -> Result<Self> {
        let mut class = None;
        let mut order = None;
        let mut task_nodes = None;
        let mut seconds = None;
        let mut iso = true;
        let mut fixed: Option<Vec<Elem>> = None;
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        while let Some(line) = lines.next() {
            let mut words = line.split_whitespace();
            let key = words.next().expect("nonempty line");
            let value = words.next();
            let need = || value.ok_or_else(|| Error::usage(format!("`{key}` needs a value")));
            let num = || -> Result<u64> {
                need()?.parse().map_err(|_| Error::usage(format!("bad number for `{key}`")))
            };
            match key {
                "class" => class = Some(need()?.parse()?),
                "order" => order = Some(num()? as usize),
                "nodes" => task_nodes = Some(num()?),
                "seconds" => seconds = Some(num()?),
                "isomorph_rejection" => iso = need()? == "true",
                "fixed_add" => {
                    let n = order.ok_or_else(|| Error::usage("`fixed_add` before `order`"))?;
                    let mut cells = Vec::with_capacity(n * n);
                    for _ in 0..n {
                        let row = lines.next().ok_or_else(|| Error::usage("short `fixed_add` table"))?;
                        for v in row.split_whitespace() {
                            cells.push(v.parse().map_err(|_| Error::usage(format!("bad entry `{v}`")))?);
                        }
                    }
                    fixed = Some(cells);
                }
                other => return Err(Error::usage(format!("unknown task field `{other}`"))),
            }
        }
        let mut task = SearchTask::new(
            class.ok_or_else(|| Error::usage("missing `class`"))?,
            order.ok_or_else(|| Error::usage("missing `order`"))?,
        );
        task.node_budget = task_nodes;
        task.time_budget = seconds.map(Duration::from_secs);
        task.isomorph_rejection = iso;
        task.fixed_add = fixed;
        Ok(task)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Complete,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub structure: FiniteStruct,
    /// A bijective brachymorphism of the structure onto itself.
    pub witness: Vec<Elem>,
    /// Pairs where the witness is not additive.
    pub violations: Vec<(Elem, Elem)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
    pub add_tables: u64,
    pub structures: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub found: Vec<Counterexample>,
    /// Every structure of the class, when requested.
    pub all: Vec<FiniteStruct>,
    pub stats: SearchStats,
    pub outcome: Outcome,
}

struct Shared {
    nodes: AtomicU64,
    prunes: AtomicU64,
    stop: AtomicBool,
    budget: Option<u64>,
    deadline: Option<Instant>,
}

impl Shared {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| n > b)
            || (n % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() > d))
        {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }

    fn prune(&self) {
        self.prunes.fetch_add(1, Ordering::Relaxed);
    }
}

/// Search the class for structures carrying a bijective brachymorphism
/// that is not additive. Addition tables are generated first, one per
/// isomorphism class, then multiplication tables cell by cell with
/// associativity and distributivity checks; a finished table is kept when
/// no automorphism of its addition table makes it smaller.
pub fn search_counterexample(task: &SearchTask) -> Result<SearchResult> {
    let n = task.order;
    let cap = match task.class {
        SearchClass::CommutativeSemiring => MAX_SEMIRING_ORDER,
        SearchClass::RightNearring => MAX_NEARRING_ORDER,
    };
    if !(2..=cap).contains(&n) {
        return Err(Error::usage(format!("{} search supports orders 2 to {cap}", task.class)));
    }
    if task.class == SearchClass::RightNearring
        && n > MAX_SEMIRING_ORDER
        && task.node_budget.is_none()
        && task.time_budget.is_none()
    {
        return Err(Error::usage(format!(
            "near-ring search of order {n} needs a node or time budget"
        )));
    }
    let start = Instant::now();
    let shared = Shared {
        nodes: AtomicU64::new(0),
        prunes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        budget: task.node_budget,
        deadline: task.time_budget.map(|d| start + d),
    };

    let adds: Vec<Vec<Elem>> = match &task.fixed_add {
        Some(t) => {
            check_fixed_add(task.class, n, t)?;
            vec![t.clone()]
        }
        None => add_tables(task.class, n, task.isomorph_rejection, &shared),
    };
    let add_count = adds.len() as u64;

    let run = |add: &Vec<Elem>| -> Result<(Vec<Counterexample>, Vec<FiniteStruct>, u64)> {
        if shared.stop.load(Ordering::Relaxed) {
            return Ok((Vec::new(), Vec::new(), 0));
        }
        let autos = if task.isomorph_rejection {
            automorphisms(n, add)
        } else {
            vec![(0..n as Elem).collect()]
        };
        let mut muls = Vec::new();
        MulSearch::new(task.class, n, add, &shared).run(&mut muls);
        let mut found = Vec::new();
        let mut all = Vec::new();
        let mut kept = 0;
        for mul in muls {
            if task.isomorph_rejection && !least_under(n, &mul, &autos) {
                shared.prune();
                continue;
            }
            kept += 1;
            let s = FiniteStruct::new(n, add.clone(), mul, 0, 1, None)?;
            if !in_class(task.class, &s) {
                return Err(Error::Internal("search produced a structure outside its class".into()));
            }
            if let Some(c) = witness(&s)? {
                found.push(c);
            }
            if task.keep_all {
                all.push(s);
            }
        }
        Ok((found, all, kept))
    };
    let parts: Vec<Result<(Vec<Counterexample>, Vec<FiniteStruct>, u64)>> = if task.parallel {
        adds.par_iter().map(run).collect()
    } else {
        adds.iter().map(run).collect()
    };
    let mut found = Vec::new();
    let mut all = Vec::new();
    let mut structures = 0;
    for p in parts {
        let (f, a, k) = p?;
        found.extend(f);
        all.extend(a);
        structures += k;
    }
    let key = |s: &FiniteStruct| (s.add_table().to_vec(), s.mul_table().to_vec());
    found.sort_by_key(|c| key(&c.structure));
    all.sort_by_key(key);
    let outcome = if shared.stop.load(Ordering::Relaxed) {
        Outcome::BudgetExhausted
    } else {
        Outcome::Complete
    };
    Ok(SearchResult {
        found,
        all,
        stats: SearchStats {
            nodes: shared.nodes.load(Ordering::Relaxed),
            prunes: shared.prunes.load(Ordering::Relaxed),
            add_tables: add_count,
            structures,
            elapsed: start.elapsed(),
        },
        outcome,
    })
}

/// Class membership by the independent axiom checker.
pub fn in_class(class: SearchClass, s: &FiniteStruct) -> bool {
    let c = s.classification();
    match class {
        SearchClass::CommutativeSemiring => c.is_commutative_semiring,
        SearchClass::RightNearring => c.is_right_nearring && c.add_commutative && c.mul_zero_absorbs,
    }
}

/// First bijective, non-additive brachymorphism of `s` onto itself.
pub fn witness(s: &FiniteStruct) -> Result<Option<Counterexample>> {
    let cfg = EnumConfig { budget: None, parallel: false };
    let (ms, _) = enumerate_brachymorphisms_with(s, s, &cfg)?;
    Ok(ms.into_iter().find(|m| m.is_bijective() && !m.violations.is_empty()).map(|m| {
        Counterexample { structure: s.clone(), witness: m.map.clone(), violations: m.violations.clone() }
    }))
}

fn check_fixed_add(class: SearchClass, n: usize, t: &[Elem]) -> Result<()> {
    if t.len() != n * n || t.iter().any(|&e| e as usize >= n) {
        return Err(Error::usage("fixed addition table has the wrong shape"));
    }
    let ok = (0..n).all(|a| t[a] == a as Elem && t[a * n] == a as Elem)
        && (0..n).all(|a| (0..n).all(|b| t[a * n + b] == t[b * n + a]))
        && (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| t[t[a * n + b] as usize * n + c] == t[a * n + t[b * n + c] as usize]))
        })
        && (class == SearchClass::CommutativeSemiring || (0..n).all(|a| (0..n).any(|b| t[a * n + b] == 0)));
    if ok {
        Ok(())
    } else {
        Err(Error::usage("fixed addition table does not fit the class"))
    }
}

/// Relabellings fixing 0 and 1 that preserve `add`.
fn automorphisms(n: usize, add: &[Elem]) -> Vec<Vec<Elem>> {
    let (_, winners) = Minimizer::new(n, vec![add]).run();
    let first = &winners[0];
    let mut back = vec![0; n];
    for (old, &new) in first.iter().enumerate() {
        back[new as usize] = old as Elem;
    }
    winners.iter().map(|p| p.iter().map(|&v| back[v as usize]).collect()).collect()
}

/// `mul` is least in shell order among its images under `autos`.
fn least_under(n: usize, mul: &[Elem], autos: &[Vec<Elem>]) -> bool {
    let cells = shell_cells(n);
    let seq = |t: &[Elem]| -> Vec<Elem> { cells.iter().map(|&(i, j)| t[i * n + j]).collect() };
    let mine = seq(mul);
    autos.iter().all(|p| seq(&relabel(n, mul, p)) >= mine)
}

/// Addition tables of the class with zero at 0, one per isomorphism class
/// (relabellings fixing 0 and 1) when `reject` is set.
fn add_tables(class: SearchClass, n: usize, reject: bool, shared: &Shared) -> Vec<Vec<Elem>> {
    let mut t = vec![UNSET; n * n];
    for a in 0..n {
        t[a] = a as Elem;
        t[a * n] = a as Elem;
    }
    let cells: Vec<(usize, usize)> =
        shell_cells(n).into_iter().filter(|&(i, j)| i >= 1 && i <= j).collect();
    let mut out = Vec::new();
    fill_add(class, n, &cells, 0, &mut t, shared, &mut out);
    if reject && !shared.stop.load(Ordering::Relaxed) {
        out.retain(|a| {
            let (best, _) = Minimizer::new(n, vec![a.as_slice()]).run();
            from_shell(n, &best) == *a
        });
    }
    out
}

fn add_consistent(n: usize, t: &[Elem]) -> bool {
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b];
            if ab == UNSET {
                continue;
            }
            for c in 0..n {
                let bc = t[b * n + c];
                if bc == UNSET {
                    continue;
                }
                let l = t[ab as usize * n + c];
                let r = t[a * n + bc as usize];
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn fill_add(
    class: SearchClass,
    n: usize,
    cells: &[(usize, usize)],
    k: usize,
    t: &mut Vec<Elem>,
    shared: &Shared,
    out: &mut Vec<Vec<Elem>>,
) {
    let Some(&(i, j)) = cells.get(k) else {
        if class == SearchClass::CommutativeSemiring || (0..n).all(|a| (0..n).any(|b| t[a * n + b] == 0)) {
            out.push(t.clone());
        }
        return;
    };
    for v in 0..n as Elem {
        if !shared.tick() {
            return;
        }
        if class == SearchClass::RightNearring
            && (0..n).any(|c| (c != j && t[i * n + c] == v) || (c != i && t[c * n + j] == v))
        {
            shared.prune();
            continue;
        }
        t[i * n + j] = v;
        t[j * n + i] = v;
        if add_consistent(n, t) {
            fill_add(class, n, cells, k + 1, t, shared, out);
        } else {
            shared.prune();
        }
        t[i * n + j] = UNSET;
        t[j * n + i] = UNSET;
    }
}

struct MulSearch<'a> {
    class: SearchClass,
    n: usize,
    add: &'a [Elem],
    mul: Vec<Elem>,
    cells: Vec<(usize, usize)>,
    shared: &'a Shared,
}

impl<'a> MulSearch<'a> {
    /// Row and column of one are forced, and for near-rings so are the row
    /// and column of zero. The remaining cells are filled in shell order.
    fn new(class: SearchClass, n: usize, add: &'a [Elem], shared: &'a Shared) -> Self {
        let mut mul = vec![UNSET; n * n];
        for a in 0..n {
            mul[n + a] = a as Elem;
            mul[a * n + 1] = a as Elem;
            if class == SearchClass::RightNearring {
                mul[a] = 0;
                mul[a * n] = 0;
            }
        }
        let commutative = class == SearchClass::CommutativeSemiring;
        let cells = shell_cells(n)
            .into_iter()
            .filter(|&(i, j)| mul[i * n + j] == UNSET && (!commutative || i <= j))
            .collect();
        MulSearch { class, n, add, mul, cells, shared }
    }

    fn run(&mut self, out: &mut Vec<Vec<Elem>>) {
        if self.consistent() {
            self.fill(0, out);
        }
    }

    fn set(&mut self, (i, j): (usize, usize), v: Elem) {
        self.mul[i * self.n + j] = v;
        if self.class == SearchClass::CommutativeSemiring {
            self.mul[j * self.n + i] = v;
        }
    }

    fn fill(&mut self, k: usize, out: &mut Vec<Vec<Elem>>) {
        let Some(&cell) = self.cells.get(k) else {
            out.push(self.mul.clone());
            return;
        };
        for v in 0..self.n as Elem {
            if !self.shared.tick() {
                return;
            }
            self.set(cell, v);
            if self.consistent() {
                self.fill(k + 1, out);
            } else {
                self.shared.prune();
            }
        }
        self.set(cell, UNSET);
    }

    fn consistent(&self) -> bool {
        let n = self.n;
        let m = |a: Elem, b: Elem| -> Elem {
            if a == UNSET || b == UNSET {
                UNSET
            } else {
                self.mul[a as usize * n + b as usize]
            }
        };
        let p = |a: Elem, b: Elem| -> Elem {
            if a == UNSET || b == UNSET {
                UNSET
            } else {
                self.add[a as usize * n + b as usize]
            }
        };
        let clash = |l: Elem, r: Elem| l != UNSET && r != UNSET && l != r;
        let left = self.class == SearchClass::CommutativeSemiring;
        for a in 0..n as Elem {
            for b in 0..n as Elem {
                let ab = m(a, b);
                let a_plus_b = p(a, b);
                for c in 0..n as Elem {
                    if clash(m(ab, c), m(a, m(b, c))) {
                        return false;
                    }
                    if clash(m(a_plus_b, c), p(m(a, c), m(b, c))) {
                        return false;
                    }
                    if left && clash(m(c, a_plus_b), p(m(c, a), m(c, b))) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
