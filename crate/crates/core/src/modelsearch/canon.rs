//! Canonical forms of structures under relabellings that send zero to 0 and
//! one to 1.
//!
//! Tables are compared as the addition table followed by the multiplication
//! table, each read in shell order: cell `(i, j)` before `(k, l)` when
//! `max(i, j) < max(k, l)`, ties broken row-major. Shell order lets a partial
//! relabelling of `0..m` fix a prefix of the sequence, which drives the
//! branch-and-bound.

use crate::error::{Error, Result};
use crate::finstruct::{Elem, FiniteStruct};

const UNSET: Elem = Elem::MAX;

/// Cells of an `n × n` table in shell order.
pub(crate) fn shell_cells(n: usize) -> Vec<(usize, usize)> {
    let mut cells = Vec::with_capacity(n * n);
    for m in 0..n {
        for i in 0..=m {
            for j in 0..=m {
                if i.max(j) == m {
                    cells.push((i, j));
                }
            }
        }
    }
    cells
}

/// Permutations (old to new) fixing `0` and `1` that map `table` to its
/// least image in shell order, together with that image.
pub(crate) struct Minimizer<'a> {
    n: usize,
    tables: Vec<&'a [Elem]>,
    cells: Vec<(usize, usize)>,
    best: Option<Vec<Elem>>,
    winners: Vec<Vec<Elem>>,
}

impl<'a> Minimizer<'a> {
    pub(crate) fn new(n: usize, tables: Vec<&'a [Elem]>) -> Self {
        Minimizer { n, tables, cells: shell_cells(n), best: None, winners: Vec::new() }
    }

    /// Run over all permutations with `perm[0] = 0` and `perm[1] = 1`.
    pub(crate) fn run(mut self) -> (Vec<Elem>, Vec<Vec<Elem>>) {
        let n = self.n;
        let mut to_new = vec![UNSET; n];
        let mut to_old = vec![UNSET; n];
        let fixed = n.min(2);
        for k in 0..fixed {
            to_new[k] = k as Elem;
            to_old[k] = k as Elem;
        }
        self.dfs(fixed, &mut to_new, &mut to_old);
        (self.best.expect("at least one permutation"), self.winners)
    }

    /// Compare the relabelled sequence against the best one found so far.
    /// `Less`/`Greater` are decided; `Equal` means no decision yet.
    fn compare(&self, m: usize, to_new: &[Elem], to_old: &[Elem]) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        let Some(best) = &self.best else {
            return Equal;
        };
        let mut pos = 0;
        for t in &self.tables {
            for &(i, j) in &self.cells {
                if i.max(j) >= m {
                    return Equal;
                }
                let old = t[to_old[i] as usize * self.n + to_old[j] as usize];
                let v = to_new[old as usize];
                if v == UNSET {
                    // the new label will be at least m
                    return if m as Elem > best[pos] { Greater } else { Equal };
                }
                if v != best[pos] {
                    return v.cmp(&best[pos]);
                }
                pos += 1;
            }
        }
        Equal
    }

    fn image(&self, to_new: &[Elem], to_old: &[Elem]) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.tables.len() * self.n * self.n);
        for t in &self.tables {
            for &(i, j) in &self.cells {
                out.push(to_new[t[to_old[i] as usize * self.n + to_old[j] as usize] as usize]);
            }
        }
        out
    }

    fn dfs(&mut self, m: usize, to_new: &mut [Elem], to_old: &mut [Elem]) {
        if m == self.n {
            let img = self.image(to_new, to_old);
            match self.best.as_ref().map(|b| img.cmp(b)) {
                Some(std::cmp::Ordering::Greater) => {}
                Some(std::cmp::Ordering::Equal) => self.winners.push(to_new.to_vec()),
                _ => {
                    self.best = Some(img);
                    self.winners = vec![to_new.to_vec()];
                }
            }
            return;
        }
        for old in 0..self.n {
            if to_new[old] != UNSET {
                continue;
            }
            to_new[old] = m as Elem;
            to_old[m] = old as Elem;
            if self.compare(m + 1, to_new, to_old) != std::cmp::Ordering::Greater {
                self.dfs(m + 1, to_new, to_old);
            }
            to_new[old] = UNSET;
            to_old[m] = UNSET;
        }
    }
}

/// Apply `perm` (old to new) to a row-major table.
pub(crate) fn relabel(n: usize, table: &[Elem], perm: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[perm[i] as usize * n + perm[j] as usize] = perm[table[i * n + j] as usize];
        }
    }
    out
}

/// Row-major table back from its shell-order sequence.
pub(crate) fn from_shell(n: usize, seq: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0; n * n];
    for (&(i, j), &v) in shell_cells(n).iter().zip(seq) {
        out[i * n + j] = v;
    }
    out
}

/// The least relabelling of `s` with zero at 0 and one at 1, and the
/// permutation (old to new) producing it.
pub fn canonical_form(s: &FiniteStruct) -> Result<(FiniteStruct, Vec<Elem>)> {
    let n = s.order();
    if n >= 2 && s.zero() == s.one() {
        return Err(Error::usage("canonical form needs zero and one to differ"));
    }
    // move zero to 0 and one to 1 first, then minimize
    let mut pre: Vec<Elem> = vec![UNSET; n];
    pre[s.zero() as usize] = 0;
    if n >= 2 {
        pre[s.one() as usize] = 1;
    }
    let mut next = n.min(2) as Elem;
    for slot in pre.iter_mut().filter(|v| **v == UNSET) {
        *slot = next;
        next += 1;
    }
    let base = s.permute(&pre)?;
    let (_, winners) = Minimizer::new(n, vec![base.add_table(), base.mul_table()]).run();
    let second = &winners[0];
    let total: Vec<Elem> = pre.iter().map(|&p| second[p as usize]).collect();
    Ok((s.permute(&total)?, total))
}
