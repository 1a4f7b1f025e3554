//! Brachymorphisms between finite structures: enumeration, additivity audits
//! and certified lower bounds for addable elements and summable pairs.
//!
//! A brachymorphism satisfies `f(0) = 0`, `f(1 + x) = 1 + f(x)` and
//! `f(xy) = f(x) f(y)`. The certified sets only ever contain elements and
//! pairs proved addable or summable by a closure rule, so they are lower
//! bounds. Violation lists are refutations, so they are upper bounds. Whether
//! a product of two addable elements is addable is not known, and no rule
//! assumes it.

mod certify;
mod enumerate;
mod formula;
mod pairs;

pub use certify::{
    certify_addable, certify_addable_with, AddRule, AddableReport, Certificate, CertifyConfig,
    Subject,
};
pub use enumerate::{
    enumerate_brachymorphisms, enumerate_brachymorphisms_with, EnumConfig, EnumStats,
};
pub use formula::{
    check_summability_formula, check_zxzy_characterization, FormulaReport, ZxzyReport,
};
pub use pairs::{certify_summable_pairs, certify_summable_pairs_with, PairConfig, PairReport};

use crate::error::{Error, Result};
use crate::finstruct::{Elem, FiniteStruct};

/// A total map between two structures with its audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism<'a> {
    pub source: &'a FiniteStruct,
    pub target: &'a FiniteStruct,
    pub map: Vec<Elem>,
    pub is_brachymorphism: bool,
    pub is_additive: bool,
    /// Every `(a, b)` with `f(a + b) ≠ f(a) + f(b)`.
    pub violations: Vec<(Elem, Elem)>,
}

impl<'a> Morphism<'a> {
    /// Audit `map`; the flags are always recomputed from the tables.
    pub fn new(source: &'a FiniteStruct, target: &'a FiniteStruct, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::usage(format!(
                "map has {} entries but the source has order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&e) = map.iter().find(|&&e| e as usize >= target.order()) {
            return Err(Error::usage(format!("map value {e} outside the target")));
        }
        let is_brachymorphism = is_brachymorphism(source, target, &map);
        let violations = violations(source, target, &map);
        Ok(Morphism {
            source,
            target,
            is_brachymorphism,
            is_additive: violations.is_empty(),
            violations,
            map,
        })
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a as usize]
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && {
            let mut seen = vec![false; self.target.order()];
            self.map.iter().all(|&e| !std::mem::replace(&mut seen[e as usize], true))
        }
    }

    /// Additive, multiplicative and unital.
    pub fn is_ring_homomorphism(&self) -> bool {
        self.is_additive
            && self.map[self.source.one() as usize] == self.target.one()
            && self.source.elements().all(|a| {
                self.source.elements().all(|b| {
                    self.apply(self.source.mul(a, b)) == self.target.mul(self.apply(a), self.apply(b))
                })
            })
    }
}

/// Pointwise check of the three defining equations.
pub fn is_brachymorphism(source: &FiniteStruct, target: &FiniteStruct, map: &[Elem]) -> bool {
    let f = |a: Elem| map[a as usize];
    f(source.zero()) == target.zero()
        && source.elements().all(|x| f(source.succ(x)) == target.succ(f(x)))
        && source
            .elements()
            .all(|x| source.elements().all(|y| f(source.mul(x, y)) == target.mul(f(x), f(y))))
}

fn violations(source: &FiniteStruct, target: &FiniteStruct, map: &[Elem]) -> Vec<(Elem, Elem)> {
    let f = |a: Elem| map[a as usize];
    let mut out = Vec::new();
    for a in source.elements() {
        for b in source.elements() {
            if f(source.add(a, b)) != target.add(f(a), f(b)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// All `(a, b)` with `f(a + b) ≠ f(a) + f(b)`; empty exactly when `f` is additive.
pub fn additivity_violations(f: &Morphism<'_>) -> Result<Vec<(Elem, Elem)>> {
    if !f.is_brachymorphism {
        return Err(Error::NotBrachymorphism);
    }
    Ok(f.violations.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modelsearch::fixture;
    use crate::zoo;

    #[test]
    fn table1_transposition_violates_at_a_b() {
        let t1 = fixture("table1").unwrap();
        let f = Morphism::new(&t1, &t1, vec![0, 2, 1, 3]).unwrap();
        assert!(f.is_brachymorphism);
        assert!(f.is_bijective());
        let v = additivity_violations(&f).unwrap();
        assert!(v.contains(&(1, 2)));
        assert_eq!(f.apply(t1.add(1, 2)), 1);
        assert_eq!(t1.add(f.apply(1), f.apply(2)), 2);
    }

    #[test]
    fn table2_automorphism_violates_at_2_4() {
        let t2 = fixture("table2").unwrap();
        let mut map: Vec<Elem> = (0..16).collect();
        map.swap(6, 8);
        map.swap(7, 9);
        let f = Morphism::new(&t2, &t2, map).unwrap();
        assert!(f.is_brachymorphism);
        assert_eq!(t2.add(2, 4), 6);
        assert_eq!(f.apply(6), 8);
        assert!(additivity_violations(&f).unwrap().contains(&(2, 4)));
    }

    #[test]
    fn identity_has_no_violations() {
        let z4 = zoo::build_str("zmod(4)").unwrap();
        let f = Morphism::new(&z4, &z4, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(additivity_violations(&f).unwrap(), vec![]);
        assert!(f.is_ring_homomorphism());
    }

    #[test]
    fn non_brachymorphism_is_refused() {
        let z4 = zoo::build_str("zmod(4)").unwrap();
        let f = Morphism::new(&z4, &z4, vec![0, 1, 3, 2]).unwrap();
        assert!(!f.is_brachymorphism);
        assert_eq!(additivity_violations(&f), Err(Error::NotBrachymorphism));
    }

    #[test]
    fn malformed_maps_are_rejected() {
        let z4 = zoo::build_str("zmod(4)").unwrap();
        assert!(matches!(Morphism::new(&z4, &z4, vec![0, 1]), Err(Error::Usage(_))));
        assert!(matches!(Morphism::new(&z4, &z4, vec![0, 1, 2, 9]), Err(Error::Usage(_))));
    }
}
