use brachy_core::finstruct::{Elem, FiniteStruct};
use brachy_core::modelsearch::{canonical_form, search_counterexample, SearchClass, SearchTask};
use brachy_core::zoo;
use std::collections::BTreeSet;

/// Tables in the order the canonical form compares them: by `max(i, j)`,
/// then row-major.
fn key(s: &FiniteStruct) -> Vec<Elem> {
    let n = s.order();
    let mut cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    cells.sort_by_key(|&(i, j)| (i.max(j), i, j));
    let mut out: Vec<Elem> = cells.iter().map(|&(i, j)| s.add(i as Elem, j as Elem)).collect();
    out.extend(cells.iter().map(|&(i, j)| s.mul(i as Elem, j as Elem)));
    out
}

fn permutations(rest: &mut Vec<Elem>, k: usize, out: &mut Vec<Vec<Elem>>) {
    if k == rest.len() {
        out.push(rest.clone());
        return;
    }
    for i in k..rest.len() {
        rest.swap(k, i);
        permutations(rest, k + 1, out);
        rest.swap(k, i);
    }
}

fn brute_force_canonical(s: &FiniteStruct) -> FiniteStruct {
    let n = s.order();
    let others: Vec<Elem> = s.elements().filter(|&e| e != s.zero() && e != s.one()).collect();
    let mut images = Vec::new();
    permutations(&mut (2..n as Elem).collect(), 0, &mut images);
    let mut best: Option<FiniteStruct> = None;
    for img in images {
        let mut perm = vec![0; n];
        perm[s.zero() as usize] = 0;
        perm[s.one() as usize] = 1;
        for (o, &v) in others.iter().zip(&img) {
            perm[*o as usize] = v;
        }
        let t = s.permute(&perm).unwrap();
        if best.as_ref().is_none_or(|b| key(&t) < key(b)) {
            best = Some(t);
        }
    }
    best.unwrap()
}

#[test]
fn canonical_form_matches_brute_force() {
    for spec in [
        "zmod(5)",
        "zmod(6)",
        "product(zmod(2),zmod(3))",
        "quotientpoly(zmod(2),[1,1,1])",
        "quotientpoly(zmod(3),[0,0,1])",
        "triangular(zmod(2),2,upper)",
        "product(zmod(2),zmod(4))",
    ] {
        let s = zoo::build_str(spec).unwrap();
        let (c, _) = canonical_form(&s).unwrap();
        assert_eq!(key(&c), key(&brute_force_canonical(&s)), "{spec}");
    }
}

#[test]
fn table1_is_canonical_up_to_relabelling() {
    let t1 = brachy_core::modelsearch::fixture("table1").unwrap();
    let (c, _) = canonical_form(&t1).unwrap();
    let shuffled = t1.permute(&[2, 3, 0, 1]).unwrap();
    assert_eq!(key(&canonical_form(&shuffled).unwrap().0), key(&c));
}

fn canonical_keys(class: SearchClass, order: usize, rejection: bool) -> BTreeSet<Vec<Elem>> {
    let mut task = SearchTask::new(class, order);
    task.isomorph_rejection = rejection;
    task.keep_all = true;
    let res = search_counterexample(&task).unwrap();
    res.all.iter().map(|s| key(&canonical_form(s).unwrap().0)).collect()
}

#[test]
fn isomorph_rejection_loses_no_class() {
    for order in 2..=4 {
        let with = canonical_keys(SearchClass::CommutativeSemiring, order, true);
        let without = canonical_keys(SearchClass::CommutativeSemiring, order, false);
        assert_eq!(with, without, "order {order}");
        assert!(!with.is_empty());
    }
}

#[test]
fn rejection_keeps_one_per_class() {
    let mut task = SearchTask::new(SearchClass::CommutativeSemiring, 3);
    task.keep_all = true;
    let res = search_counterexample(&task).unwrap();
    let keys: BTreeSet<Vec<Elem>> = res.all.iter().map(|s| key(&canonical_form(s).unwrap().0)).collect();
    assert_eq!(keys.len(), res.all.len());
}
