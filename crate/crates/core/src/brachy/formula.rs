use super::Morphism;
use crate::error::{Error, Result};
use crate::finstruct::{Elem, FiniteStruct};
use crate::lang::{eval_sformula, SFormula};
use crate::poly::Var;
use std::collections::{BTreeMap, BTreeSet};

/// Stated in every formula report.
pub const BATTERY_LIMITATION: &str =
    "condition (i) was checked on the battery only; it is a necessary check, not a proof for all rings";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaReport {
    /// The formula holds at the tuple extended by its sum.
    pub condition_ii: bool,
    /// On every battery ring, the formula forces its last parameter to be
    /// the sum of the others.
    pub condition_i_on_battery: bool,
    /// First battery ring and tuple where the formula holds but the last
    /// parameter is not the sum.
    pub counterexample: Option<(String, Vec<Elem>)>,
    pub rings_checked: usize,
    pub limitation: &'static str,
}

impl FormulaReport {
    pub fn passes(&self) -> bool {
        self.condition_ii && self.condition_i_on_battery
    }

    pub fn verdict(&self) -> &'static str {
        match (self.condition_ii, self.condition_i_on_battery) {
            (false, _) => "formula inapplicable to this pair",
            (true, true) => "summability formula on the battery",
            (true, false) => "formula does not force the sum",
        }
    }
}

fn bind(params: &[Var], values: &[Elem]) -> BTreeMap<Var, Elem> {
    params.iter().cloned().zip(values.iter().copied()).collect()
}

/// Conditions for `phi(params)` to witness summability of `tuple`: (ii) on
/// `r`, exactly, and (i) exhaustively over the rings in `battery`. The last
/// parameter stands for the sum.
pub fn check_summability_formula(
    phi: &SFormula,
    params: &[Var],
    r: &FiniteStruct,
    tuple: &[Elem],
    battery: &[(String, FiniteStruct)],
) -> Result<FormulaReport> {
    if params.len() != tuple.len() + 1 {
        return Err(Error::usage(format!(
            "{} parameters need a tuple of length {}",
            params.len(),
            params.len().saturating_sub(1)
        )));
    }
    let declared: BTreeSet<Var> = params.iter().cloned().collect();
    if declared.len() != params.len() {
        return Err(Error::usage("parameters must be distinct"));
    }
    if let Some(v) = phi.free_vars().into_iter().find(|v| !declared.contains(v)) {
        return Err(Error::UnboundVariable(v.to_string()));
    }
    r.require_ring()?;
    if let Some(&e) = tuple.iter().find(|&&e| e as usize >= r.order()) {
        return Err(Error::usage(format!("element {e} outside the structure")));
    }
    let sum = tuple.iter().fold(r.zero(), |acc, &a| r.add(acc, a));
    let mut full = tuple.to_vec();
    full.push(sum);
    let condition_ii = eval_sformula(phi, r, &bind(params, &full))?;

    let mut counterexample = None;
    let mut rings_checked = 0;
    'rings: for (name, s) in battery.iter().filter(|(_, s)| s.is_ring()) {
        rings_checked += 1;
        let k = params.len();
        let total = s.order().pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let vals: Vec<Elem> = (0..k)
                .map(|_| {
                    let d = c % s.order();
                    c /= s.order();
                    d as Elem
                })
                .collect();
            let sum = vals[..k - 1].iter().fold(s.zero(), |acc, &a| s.add(acc, a));
            if vals[k - 1] != sum && eval_sformula(phi, s, &bind(params, &vals))? {
                counterexample = Some((name.clone(), vals));
                break 'rings;
            }
        }
    }
    Ok(FormulaReport {
        condition_ii,
        condition_i_on_battery: counterexample.is_none(),
        counterexample,
        rings_checked,
        limitation: BATTERY_LIMITATION,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZxzyReport {
    /// `f(1+x) = 1+f(x)` and `f(z+xzy) = f(z)+f(x)f(z)f(y)` for all `x, y`
    /// and `z ∈ {0, 1, x+y}`.
    pub conditions_hold: bool,
    pub is_homomorphism: bool,
    /// First `(x, y, z)` breaking a condition; `y = z = x` marks the
    /// successor condition.
    pub first_failure: Option<(Elem, Elem, Elem)>,
}

impl ZxzyReport {
    /// The characterization predicts the homomorphism property.
    pub fn agrees(&self) -> bool {
        self.conditions_hold == self.is_homomorphism
    }
}

/// Evaluate both conditions of the `z + xzy` characterization of ring
/// homomorphisms and compare with a direct homomorphism check.
pub fn check_zxzy_characterization(f: &Morphism<'_>) -> Result<ZxzyReport> {
    let (r, s) = (f.source, f.target);
    r.require_ring()?;
    s.require_ring()?;
    let ap = |a: Elem| f.apply(a);
    let mut first_failure = r
        .elements()
        .find(|&x| ap(r.succ(x)) != s.succ(ap(x)))
        .map(|x| (x, x, x));
    if first_failure.is_none() {
        'outer: for x in r.elements() {
            for y in r.elements() {
                for z in [r.zero(), r.one(), r.add(x, y)] {
                    let lhs = ap(r.add(z, r.mul(r.mul(x, z), y)));
                    let rhs = s.add(ap(z), s.mul(s.mul(ap(x), ap(z)), ap(y)));
                    if lhs != rhs {
                        first_failure = Some((x, y, z));
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(ZxzyReport {
        conditions_hold: first_failure.is_none(),
        is_homomorphism: f.is_ring_homomorphism(),
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::builtin_formula;
    use crate::zoo;

    fn xyz() -> Vec<Var> {
        ["x", "y", "z"].iter().map(|n| Var::new(n)).collect()
    }

    #[test]
    fn orthogonal_formula_at_2_3_in_z6() {
        let z6 = zoo::build_str("zmod(6)").unwrap();
        let phi = builtin_formula("S_perp").unwrap();
        let rep = check_summability_formula(&phi, &xyz(), &z6, &[2, 3], &zoo::battery()).unwrap();
        assert!(rep.passes());
        assert_eq!(rep.rings_checked, 12);
        let rep = check_summability_formula(&phi, &xyz(), &z6, &[1, 1], &zoo::battery()).unwrap();
        assert!(!rep.condition_ii);
        assert_eq!(rep.verdict(), "formula inapplicable to this pair");
    }

    #[test]
    fn non_formula_is_caught_on_battery() {
        let z6 = zoo::build_str("zmod(6)").unwrap();
        let phi = crate::lang::parse_sformula("x y = y x").unwrap();
        let rep = check_summability_formula(&phi, &xyz(), &z6, &[1, 2], &zoo::battery()).unwrap();
        assert!(rep.condition_ii);
        assert!(!rep.condition_i_on_battery);
        assert!(rep.counterexample.is_some());
    }

    #[test]
    fn commuting_diagonals_in_matrices() {
        let m2 = zoo::build_str("matring(zmod(2),2)").unwrap();
        let a = m2.find_label("[[1,0],[0,0]]").unwrap();
        let b = m2.find_label("[[0,0],[0,1]]").unwrap();
        let phi = builtin_formula("S_comm").unwrap();
        let rep = check_summability_formula(&phi, &xyz(), &m2, &[a, b], &[]).unwrap();
        assert!(rep.condition_ii);
    }

    #[test]
    fn zxzy_on_small_maps() {
        let z4 = zoo::build_str("zmod(4)").unwrap();
        let id = Morphism::new(&z4, &z4, vec![0, 1, 2, 3]).unwrap();
        let rep = check_zxzy_characterization(&id).unwrap();
        assert!(rep.conditions_hold && rep.is_homomorphism);

        let z2 = zoo::build_str("zmod(2)").unwrap();
        let constant = Morphism::new(&z2, &z2, vec![1, 1]).unwrap();
        let rep = check_zxzy_characterization(&constant).unwrap();
        assert!(!rep.conditions_hold && !rep.is_homomorphism);

        let t1 = crate::modelsearch::fixture("table1").unwrap();
        let swap = Morphism::new(&t1, &t1, vec![0, 2, 1, 3]).unwrap();
        assert_eq!(check_zxzy_characterization(&swap), Err(Error::NotARing));
    }

    #[test]
    fn unknown_parameters_are_rejected() {
        let z6 = zoo::build_str("zmod(6)").unwrap();
        let phi = builtin_formula("S_perp").unwrap();
        let params: Vec<Var> = ["x", "y", "w"].iter().map(|n| Var::new(n)).collect();
        assert!(check_summability_formula(&phi, &params, &z6, &[2, 3], &[]).is_err());
        assert!(check_summability_formula(&phi, &xyz(), &z6, &[2], &[]).is_err());
    }
}
