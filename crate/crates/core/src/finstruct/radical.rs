use super::{Elem, FiniteStruct};
use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashSet, VecDeque};

/// Largest order for which left ideals are enumerated as bitmasks.
pub const MAX_RADICAL_ORDER: usize = 64;

/// `x` such that `1 - r x` has a left inverse for every `r`.
pub fn jacobson_radical_by_quasi_regularity(s: &FiniteStruct) -> Result<BTreeSet<Elem>> {
    s.require_ring()?;
    let has_left_inverse = |a: Elem| s.elements().any(|b| s.mul(b, a) == s.one());
    Ok(s.elements()
        .filter(|&x| {
            s.elements().all(|r| {
                let rx = s.mul(r, x);
                let d = s.sub(s.one(), rx).expect("rings have negatives");
                has_left_inverse(d)
            })
        })
        .collect())
}

fn left_ideal_closure(s: &FiniteStruct, start: u64, extra: Elem) -> u64 {
    let mut mask = start;
    let mut queue: VecDeque<Elem> = VecDeque::new();
    let push = |mask: &mut u64, queue: &mut VecDeque<Elem>, e: Elem| {
        if *mask & (1 << e) == 0 {
            *mask |= 1 << e;
            queue.push_back(e);
        }
    };
    push(&mut mask, &mut queue, extra);
    while let Some(a) = queue.pop_front() {
        for r in s.elements() {
            push(&mut mask, &mut queue, s.mul(r, a));
        }
        for b in s.elements() {
            if mask & (1 << b) != 0 {
                push(&mut mask, &mut queue, s.add(a, b));
            }
        }
    }
    mask
}

/// All left ideals as bitmasks over the carrier.
fn left_ideals(s: &FiniteStruct) -> Vec<u64> {
    let zero = 1u64 << s.zero();
    let mut seen: HashSet<u64> = HashSet::from([zero]);
    let mut order = vec![zero];
    let mut i = 0;
    while i < order.len() {
        let ideal = order[i];
        i += 1;
        for g in s.elements() {
            if ideal & (1 << g) == 0 {
                let bigger = left_ideal_closure(s, ideal, g);
                if seen.insert(bigger) {
                    order.push(bigger);
                }
            }
        }
    }
    order
}

/// Intersection of all maximal left ideals.
pub fn jacobson_radical_by_ideals(s: &FiniteStruct) -> Result<BTreeSet<Elem>> {
    s.require_ring()?;
    let n = s.order();
    if n > MAX_RADICAL_ORDER {
        return Err(Error::CapExceeded {
            what: format!("order {n} for left-ideal enumeration"),
            cap: MAX_RADICAL_ORDER,
        });
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let proper: Vec<u64> = left_ideals(s).into_iter().filter(|&m| m != full).collect();
    let maximal = proper
        .iter()
        .filter(|&&m| !proper.iter().any(|&o| o != m && o & m == m));
    let j = maximal.fold(full, |acc, &m| acc & m);
    Ok(s.elements().filter(|&e| j & (1 << e) != 0).collect())
}

/// The Jacobson radical, computed both ways and cross-checked.
pub fn jacobson_radical(s: &FiniteStruct) -> Result<BTreeSet<Elem>> {
    let a = jacobson_radical_by_quasi_regularity(s)?;
    let b = jacobson_radical_by_ideals(s)?;
    if a != b {
        return Err(Error::Internal(format!(
            "radical by quasi-regularity {a:?} differs from intersection of maximal left ideals {b:?}"
        )));
    }
    Ok(a)
}

/// Least number of units summing to each element, `Some(0)` for zero and
/// `None` when the element is no sum of units.
pub fn sums_of_units(s: &FiniteStruct) -> Result<Vec<Option<usize>>> {
    s.require_ring()?;
    let units = s.units();
    let mut dist: Vec<Option<usize>> = vec![None; s.order()];
    dist[s.zero() as usize] = Some(0);
    let mut queue = VecDeque::from([s.zero()]);
    while let Some(a) = queue.pop_front() {
        let d = dist[a as usize].expect("queued elements have a distance");
        for &u in &units {
            let b = s.add(a, u);
            if dist[b as usize].is_none() {
                dist[b as usize] = Some(d + 1);
                queue.push_back(b);
            }
        }
    }
    Ok(dist)
}
