use super::{Elem, FiniteStruct};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// A finite monoid given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    n: usize,
    mul: Vec<Elem>,
    one: Elem,
}

impl Monoid {
    /// Validates associativity and the two-sided identity `one`.
    pub fn new(n: usize, mul: Vec<Elem>, one: Elem) -> Result<Self> {
        if n == 0 || mul.len() != n * n || mul.iter().any(|&e| e as usize >= n) || one as usize >= n {
            return Err(Error::NotAMonoid("malformed table".into()));
        }
        let m = Monoid { n, mul, one };
        for a in m.elements() {
            if m.mul(m.one, a) != a || m.mul(a, m.one) != a {
                return Err(Error::NotAMonoid(format!("{one} is not an identity for {a}")));
            }
            for b in m.elements() {
                for c in m.elements() {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return Err(Error::NotAMonoid(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// The multiplicative monoid of a structure.
    pub fn of_struct(s: &FiniteStruct) -> Result<Self> {
        Monoid::new(s.order(), s.mul_table().to_vec(), s.one())
    }

    /// All maps `{0..k} → {0..k}` under composition `(fg)(i) = f(g(i))`.
    pub fn full_transformations(k: usize) -> Result<Self> {
        let maps: Vec<Vec<usize>> = (0..k.pow(k as u32))
            .map(|mut code| {
                (0..k)
                    .map(|_| {
                        let d = code % k;
                        code /= k;
                        d
                    })
                    .collect()
            })
            .collect();
        let index = |m: &[usize]| maps.iter().position(|x| x == m).expect("closed") as Elem;
        let n = maps.len();
        let mut mul = Vec::with_capacity(n * n);
        for f in &maps {
            for g in &maps {
                let fg: Vec<usize> = g.iter().map(|&i| f[i]).collect();
                mul.push(index(&fg));
            }
        }
        let id: Vec<usize> = (0..k).collect();
        Monoid::new(n, mul, index(&id))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.n as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.n + b as usize]
    }

    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn is_regular(&self, a: Elem) -> bool {
        self.elements().any(|t| self.mul(self.mul(a, t), a) == a)
    }

    pub fn center(&self) -> BTreeSet<Elem> {
        self.elements()
            .filter(|&a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// Submonoid generated by `gens`.
    fn generated(&self, gens: &[Elem]) -> BTreeSet<Elem> {
        let mut set = BTreeSet::from([self.one]);
        let mut frontier = vec![self.one];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if set.insert(b) {
                    frontier.push(b);
                }
            }
        }
        set
    }
}

/// The ascending chain `α_0 ⊆ α_1 ⊆ …` up to its first repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaChain {
    pub levels: Vec<BTreeSet<Elem>>,
    pub exhausts: bool,
}

/// `α_0` is the center; `α_{n+1}` holds every `v` with some power `v^m`
/// in `P·α_n·P`, where `P` is the submonoid generated by the regular
/// elements. Exponents are searched up to the order of the monoid.
pub fn alpha_hierarchy(m: &Monoid) -> AlphaChain {
    let regular: Vec<Elem> = m.elements().filter(|&a| m.is_regular(a)).collect();
    let p: Vec<Elem> = m.generated(&regular).into_iter().collect();
    let mut levels = vec![m.center()];
    loop {
        let cur = levels.last().expect("nonempty");
        let mut sandwich = BTreeSet::new();
        for &x in &p {
            for &u in cur {
                let xu = m.mul(x, u);
                for &y in &p {
                    sandwich.insert(m.mul(xu, y));
                }
            }
        }
        let next: BTreeSet<Elem> = m
            .elements()
            .filter(|&v| (1..=m.order()).any(|k| sandwich.contains(&m.pow(v, k))))
            .collect();
        if next == *cur {
            break;
        }
        levels.push(next);
    }
    let exhausts = levels.last().expect("nonempty").len() == m.order();
    AlphaChain { levels, exhausts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn commutative_monoid_is_its_own_center() {
        let z6 = zoo::build_str("zmod(6)").unwrap();
        let chain = alpha_hierarchy(&Monoid::of_struct(&z6).unwrap());
        assert_eq!(chain.levels.len(), 1);
        assert!(chain.exhausts);
    }

    #[test]
    fn transformations_of_two_points() {
        let t2 = Monoid::full_transformations(2).unwrap();
        assert_eq!(t2.order(), 4);
        assert!(t2.elements().all(|a| t2.is_regular(a)));
        let chain = alpha_hierarchy(&t2);
        assert!(chain.levels.len() <= 2);
        assert!(chain.exhausts);
        assert_eq!(chain.levels.last().unwrap().len(), 4);
    }

    #[test]
    fn matrix_monoid_exhausts_at_level_one() {
        let m2 = zoo::build_str("matring(zmod(2),2)").unwrap();
        let chain = alpha_hierarchy(&Monoid::of_struct(&m2).unwrap());
        assert!(chain.exhausts);
        assert_eq!(chain.levels.len(), 2);
        for w in chain.levels.windows(2) {
            assert!(w[0].is_subset(&w[1]));
        }
    }

    #[test]
    fn non_monoid_is_refused() {
        assert!(matches!(Monoid::new(2, vec![1, 0, 0, 0], 0), Err(Error::NotAMonoid(_))));
    }
}
