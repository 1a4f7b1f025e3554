use super::{Elem, FiniteStruct};

/// Multiplicative facts about one element, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementProfile {
    pub element: Elem,
    /// Two-sided inverse when the element is a unit.
    pub inverse: Option<Elem>,
    /// Some `t` with `x t x = x` when the element is regular.
    pub quasi_inverse: Option<Elem>,
    pub idempotent: bool,
    /// Least `k ≥ 1` with `x^k = 0`, or 0 when no power vanishes.
    pub nilpotency_index: usize,
    /// Least `k ≥ 1` with `x^k` regular, and a quasi-inverse of `x^k`.
    pub pi_regular: Option<(usize, Elem)>,
    pub central: bool,
}

impl ElementProfile {
    pub fn is_unit(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn is_regular(&self) -> bool {
        self.quasi_inverse.is_some()
    }

    /// Check every witness against the tables.
    pub fn replay(&self, s: &FiniteStruct) -> bool {
        let x = self.element;
        let inverse_ok = self
            .inverse
            .is_none_or(|u| s.mul(x, u) == s.one() && s.mul(u, x) == s.one());
        let regular_ok = self.quasi_inverse.is_none_or(|t| s.mul(s.mul(x, t), x) == x);
        let idem_ok = self.idempotent == (s.mul(x, x) == x);
        let nil_ok = match self.nilpotency_index {
            0 => (1..=s.order() + 1).all(|k| s.pow(x, k) != s.zero()),
            k => s.pow(x, k) == s.zero() && (1..k).all(|j| s.pow(x, j) != s.zero()),
        };
        let pi_ok = self.pi_regular.is_none_or(|(k, t)| {
            let xk = s.pow(x, k);
            s.mul(s.mul(xk, t), xk) == xk
        });
        let central_ok = self.central == s.is_central(x);
        inverse_ok && regular_ok && idem_ok && nil_ok && pi_ok && central_ok
    }
}

/// Profiles of all elements, in index order. Power searches stop at the
/// order of the structure, past which powers repeat.
pub fn element_profile(s: &FiniteStruct) -> Vec<ElementProfile> {
    s.elements()
        .map(|x| {
            let n = s.order();
            let nilpotency_index = (1..=n + 1).find(|&k| s.pow(x, k) == s.zero()).unwrap_or(0);
            let pi_regular = (1..=n).find_map(|k| s.quasi_inverse(s.pow(x, k)).map(|t| (k, t)));
            ElementProfile {
                element: x,
                inverse: s.inverse(x),
                quasi_inverse: s.quasi_inverse(x),
                idempotent: s.mul(x, x) == x,
                nilpotency_index,
                pi_regular,
                central: s.is_central(x),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn z4_profiles() {
        let z4 = zoo::build_str("zmod(4)").unwrap();
        let ps = element_profile(&z4);
        assert_eq!(ps[2].nilpotency_index, 2);
        assert_eq!(ps[2].pi_regular.map(|p| p.0), Some(2));
        assert!(!ps[2].is_unit());
        assert_eq!(ps[3].inverse, Some(3));
        assert!(ps.iter().all(|p| p.replay(&z4)));
    }

    #[test]
    fn matrix_unit_is_regular_and_square_zero() {
        let m = zoo::build_str("matring(zmod(2),2)").unwrap();
        let e12 = m.find_label("[[0,1],[0,0]]").unwrap();
        let e21 = m.find_label("[[0,0],[1,0]]").unwrap();
        let ps = element_profile(&m);
        let p = &ps[e12 as usize];
        assert_eq!(p.nilpotency_index, 2);
        assert!(p.is_regular());
        assert_eq!(m.mul(m.mul(e12, e21), e12), e12);
        assert!(ps.iter().all(|p| p.replay(&m)));
    }
}
