//! Finite structures with two binary operations, given by Cayley tables.
//!
//! Elements are the indices `0..n`. Labels only affect printing. Every
//! algebraic property is computed from the tables on demand and cached.

mod monoid;
mod profile;
mod radical;

pub use monoid::{alpha_hierarchy, AlphaChain, Monoid};
pub use profile::{element_profile, ElementProfile};
pub use radical::{jacobson_radical, jacobson_radical_by_ideals, jacobson_radical_by_quasi_regularity, sums_of_units, MAX_RADICAL_ORDER};

use crate::error::{Error, Result};
use std::fmt;
use std::sync::OnceLock;

/// An element of a finite structure.
pub type Elem = u32;

/// Axiom checks, each computed by exhaustive evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classification {
    pub add_associative: bool,
    pub add_commutative: bool,
    pub add_identity: bool,
    pub add_inverses: bool,
    pub add_cancellative: bool,
    pub mul_associative: bool,
    pub mul_commutative: bool,
    pub mul_identity: bool,
    pub left_distributive: bool,
    pub right_distributive: bool,
    /// `x0 = 0` for every `x`.
    pub mul_zero_absorbs: bool,
    /// `0x = 0` for every `x`.
    pub zero_mul_absorbs: bool,
    pub is_ring: bool,
    pub is_commutative_ring: bool,
    pub is_semiring: bool,
    pub is_commutative_semiring: bool,
    pub is_cancellative_semiring: bool,
    pub is_right_nearring: bool,
}

impl Classification {
    /// `(name, value)` for every flag, in a fixed order.
    pub fn flags(&self) -> [(&'static str, bool); 18] {
        [
            ("add_associative", self.add_associative),
            ("add_commutative", self.add_commutative),
            ("add_identity", self.add_identity),
            ("add_inverses", self.add_inverses),
            ("add_cancellative", self.add_cancellative),
            ("mul_associative", self.mul_associative),
            ("mul_commutative", self.mul_commutative),
            ("mul_identity", self.mul_identity),
            ("left_distributive", self.left_distributive),
            ("right_distributive", self.right_distributive),
            ("mul_zero_absorbs", self.mul_zero_absorbs),
            ("zero_mul_absorbs", self.zero_mul_absorbs),
            ("is_ring", self.is_ring),
            ("is_commutative_ring", self.is_commutative_ring),
            ("is_semiring", self.is_semiring),
            ("is_commutative_semiring", self.is_commutative_semiring),
            ("is_cancellative_semiring", self.is_cancellative_semiring),
            ("is_right_nearring", self.is_right_nearring),
        ]
    }
}

/// A finite set with addition, multiplication and designated `0` and `1`.
pub struct FiniteStruct {
    n: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    zero: Elem,
    one: Elem,
    labels: Option<Vec<String>>,
    class: OnceLock<Classification>,
}

impl Clone for FiniteStruct {
    fn clone(&self) -> Self {
        FiniteStruct {
            n: self.n,
            add: self.add.clone(),
            mul: self.mul.clone(),
            zero: self.zero,
            one: self.one,
            labels: self.labels.clone(),
            class: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteStruct {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.add == other.add
            && self.mul == other.mul
            && self.zero == other.zero
            && self.one == other.one
    }
}

impl Eq for FiniteStruct {}

impl fmt::Debug for FiniteStruct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteStruct")
            .field("order", &self.n)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish_non_exhaustive()
    }
}

impl FiniteStruct {
    /// Build from row-major tables, checking only shape and range.
    pub fn new(
        n: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Elem,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTable("order must be positive".into()));
        }
        if n > Elem::MAX as usize {
            return Err(Error::MalformedTable("order too large".into()));
        }
        for (name, t) in [("add", &add), ("mul", &mul)] {
            if t.len() != n * n {
                return Err(Error::MalformedTable(format!(
                    "{name} table has {} entries, expected {}",
                    t.len(),
                    n * n
                )));
            }
            if let Some(i) = t.iter().position(|&e| e as usize >= n) {
                return Err(Error::MalformedTable(format!(
                    "{name} entry at ({}, {}) is {}, out of range for order {n}",
                    i / n,
                    i % n,
                    t[i]
                )));
            }
        }
        for (name, e) in [("zero", zero), ("one", one)] {
            if e as usize >= n {
                return Err(Error::MalformedTable(format!("{name} index {e} out of range")));
            }
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::MalformedTable(format!(
                    "{} labels for order {n}",
                    l.len()
                )));
            }
        }
        Ok(FiniteStruct {
            n,
            add,
            mul,
            zero,
            one,
            labels,
            class: OnceLock::new(),
        })
    }

    /// Build by evaluating the operations on every pair.
    pub fn from_fn(
        n: usize,
        zero: Elem,
        one: Elem,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let idx = |f: &dyn Fn(Elem, Elem) -> Elem| -> Vec<Elem> {
            (0..n * n)
                .map(|i| f((i / n) as Elem, (i % n) as Elem))
                .collect()
        };
        let a = idx(&add);
        let m = idx(&mul);
        FiniteStruct::new(n, a, m, zero, one, labels)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.n as Elem
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.n + b as usize]
    }

    /// The successor `1 + a`.
    #[inline]
    pub fn succ(&self, a: Elem) -> Elem {
        self.add(self.one, a)
    }

    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(l) => l[a as usize].clone(),
            None => a.to_string(),
        }
    }

    /// Index of the element carrying `label`, or the element whose index is
    /// `label` when there are no labels.
    pub fn find_label(&self, label: &str) -> Option<Elem> {
        match &self.labels {
            Some(l) => l.iter().position(|s| s == label).map(|i| i as Elem),
            None => label.parse::<Elem>().ok().filter(|&e| (e as usize) < self.n),
        }
    }

    /// The additive inverse of `a`, if any.
    pub fn neg(&self, a: Elem) -> Option<Elem> {
        self.elements()
            .find(|&b| self.add(a, b) == self.zero && self.add(b, a) == self.zero)
    }

    /// `a - b` when `b` has an additive inverse.
    pub fn sub(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.neg(b).map(|nb| self.add(a, nb))
    }

    /// `k·a`, the sum of `k` copies of `a`.
    pub fn times(&self, k: usize, a: Elem) -> Elem {
        (0..k).fold(self.zero, |acc, _| self.add(acc, a))
    }

    /// `a^k` with `a^0 = 1`.
    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    /// The integer `k` read in the structure, `k·1`.
    pub fn int(&self, k: usize) -> Elem {
        self.times(k, self.one)
    }

    pub fn classification(&self) -> &Classification {
        self.class.get_or_init(|| classify(self))
    }

    pub fn is_ring(&self) -> bool {
        self.classification().is_ring
    }

    pub fn require_ring(&self) -> Result<()> {
        if self.is_ring() {
            Ok(())
        } else {
            Err(Error::NotARing)
        }
    }

    pub fn is_central(&self, a: Elem) -> bool {
        self.elements().all(|b| self.mul(a, b) == self.mul(b, a))
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// Two-sided multiplicative inverse.
    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.elements()
            .find(|&b| self.mul(a, b) == self.one && self.mul(b, a) == self.one)
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    /// Some `t` with `a t a = a`.
    pub fn quasi_inverse(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&t| self.mul(self.mul(a, t), a) == a)
    }

    /// Same tables with `labels` replaced.
    pub fn with_labels(&self, labels: Option<Vec<String>>) -> Result<Self> {
        FiniteStruct::new(self.n, self.add.clone(), self.mul.clone(), self.zero, self.one, labels)
    }

    /// Relabel the carrier through the permutation `perm` (old index to new).
    pub fn permute(&self, perm: &[Elem]) -> Result<Self> {
        let n = self.n;
        if perm.len() != n {
            return Err(Error::usage("permutation length differs from order"));
        }
        let mut inv = vec![Elem::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p as usize >= n || inv[p as usize] != Elem::MAX {
                return Err(Error::usage("not a permutation"));
            }
            inv[p as usize] = i as Elem;
        }
        let labels = self.labels.as_ref().map(|l| {
            (0..n).map(|j| l[inv[j] as usize].clone()).collect()
        });
        FiniteStruct::from_fn(
            n,
            perm[self.zero as usize],
            perm[self.one as usize],
            |a, b| perm[self.add(inv[a as usize], inv[b as usize]) as usize],
            |a, b| perm[self.mul(inv[a as usize], inv[b as usize]) as usize],
            labels,
        )
    }

    /// Text form read by [`FiniteStruct::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("order {}\nzero {}\none {}\n", self.n, self.zero, self.one));
        if let Some(l) = &self.labels {
            out.push_str("labels");
            for s in l {
                out.push(' ');
                out.push_str(s);
            }
            out.push('\n');
        }
        for (name, t) in [("add", &self.add), ("mul", &self.mul)] {
            out.push_str(name);
            out.push('\n');
            for row in t.chunks(self.n) {
                let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
        out
    }

    /// Parse the text format:
    ///
    /// ```text
    /// order 4
    /// zero 0
    /// one 3
    /// labels 0 a b 1
    /// add
    /// 0 1 2 3
    /// ...
    /// mul
    /// ...
    /// ```
    ///
    /// Table rows follow their keyword, one row per line. `#` starts a
    /// comment. `labels` is optional.
    pub fn parse(text: &str) -> Result<Self> {
        let mut order: Option<usize> = None;
        let mut zero: Option<Elem> = None;
        let mut one: Option<Elem> = None;
        let mut labels: Option<Vec<String>> = None;
        let mut add: Option<Vec<Elem>> = None;
        let mut mul: Option<Vec<Elem>> = None;

        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let bad = |line: usize, msg: &str| Error::MalformedTable(format!("line {line}: {msg}"));

        while let Some((ln, line)) = lines.next() {
            let mut words = line.split_whitespace();
            let key = words.next().expect("nonempty line");
            let rest: Vec<&str> = words.collect();
            let single = |what: &str| -> Result<usize> {
                match rest.as_slice() {
                    [v] => v.parse().map_err(|_| bad(ln, &format!("bad {what} `{v}`"))),
                    _ => Err(bad(ln, &format!("`{what}` takes one value"))),
                }
            };
            match key {
                "order" => order = Some(single("order")?),
                "zero" => zero = Some(single("zero")? as Elem),
                "one" => one = Some(single("one")? as Elem),
                "labels" => labels = Some(rest.iter().map(|s| s.to_string()).collect()),
                "add" | "mul" => {
                    let n = order.ok_or_else(|| bad(ln, "table before `order`"))?;
                    if !rest.is_empty() {
                        return Err(bad(ln, &format!("`{key}` must stand on its own line")));
                    }
                    let mut cells = Vec::with_capacity(n * n);
                    for r in 0..n {
                        let (rl, row) = lines
                            .next()
                            .ok_or_else(|| bad(ln, &format!("{key} table has {r} rows, expected {n}")))?;
                        let vals: Vec<&str> = row.split_whitespace().collect();
                        if vals.len() != n {
                            return Err(bad(
                                rl,
                                &format!("{key} row {r} has {} entries, expected {n}", vals.len()),
                            ));
                        }
                        for v in vals {
                            cells.push(v.parse().map_err(|_| bad(rl, &format!("bad entry `{v}`")))?);
                        }
                    }
                    if key == "add" {
                        add = Some(cells);
                    } else {
                        mul = Some(cells);
                    }
                }
                other => return Err(bad(ln, &format!("unknown field `{other}`"))),
            }
        }
        let missing = |f: &str| Error::MalformedTable(format!("missing field `{f}`"));
        FiniteStruct::new(
            order.ok_or_else(|| missing("order"))?,
            add.ok_or_else(|| missing("add"))?,
            mul.ok_or_else(|| missing("mul"))?,
            zero.ok_or_else(|| missing("zero"))?,
            one.ok_or_else(|| missing("one"))?,
            labels,
        )
    }
}

fn classify(s: &FiniteStruct) -> Classification {
    let e: Vec<Elem> = s.elements().collect();
    let all2 = |f: &dyn Fn(Elem, Elem) -> bool| e.iter().all(|&a| e.iter().all(|&b| f(a, b)));
    let all3 = |f: &dyn Fn(Elem, Elem, Elem) -> bool| {
        e.iter()
            .all(|&a| e.iter().all(|&b| e.iter().all(|&c| f(a, b, c))))
    };
    let (z, o) = (s.zero, s.one);

    let add_associative = all3(&|a, b, c| s.add(s.add(a, b), c) == s.add(a, s.add(b, c)));
    let add_commutative = all2(&|a, b| s.add(a, b) == s.add(b, a));
    let add_identity = e.iter().all(|&a| s.add(z, a) == a && s.add(a, z) == a);
    let add_inverses = add_identity && e.iter().all(|&a| s.neg(a).is_some());
    let add_cancellative = all3(&|a, b, c| s.add(a, c) != s.add(b, c) || a == b)
        && all3(&|a, b, c| s.add(c, a) != s.add(c, b) || a == b);
    let mul_associative = all3(&|a, b, c| s.mul(s.mul(a, b), c) == s.mul(a, s.mul(b, c)));
    let mul_commutative = all2(&|a, b| s.mul(a, b) == s.mul(b, a));
    let mul_identity = e.iter().all(|&a| s.mul(o, a) == a && s.mul(a, o) == a);
    let left_distributive = all3(&|a, b, c| s.mul(a, s.add(b, c)) == s.add(s.mul(a, b), s.mul(a, c)));
    let right_distributive =
        all3(&|a, b, c| s.mul(s.add(a, b), c) == s.add(s.mul(a, c), s.mul(b, c)));
    let mul_zero_absorbs = e.iter().all(|&a| s.mul(a, z) == z);
    let zero_mul_absorbs = e.iter().all(|&a| s.mul(z, a) == z);

    let add_monoid = add_associative && add_identity;
    let mul_monoid = mul_associative && mul_identity;
    let is_semiring = add_monoid && add_commutative && mul_monoid && left_distributive && right_distributive;
    let is_ring = is_semiring && add_inverses;
    let is_right_nearring = add_monoid && add_inverses && mul_monoid && right_distributive;

    Classification {
        add_associative,
        add_commutative,
        add_identity,
        add_inverses,
        add_cancellative,
        mul_associative,
        mul_commutative,
        mul_identity,
        left_distributive,
        right_distributive,
        mul_zero_absorbs,
        zero_mul_absorbs,
        is_ring,
        is_commutative_ring: is_ring && mul_commutative,
        is_semiring,
        is_commutative_semiring: is_semiring && mul_commutative,
        is_cancellative_semiring: is_semiring && add_cancellative,
        is_right_nearring,
    }
}

/// Validate tables and compute every classification flag.
pub fn validate_structure(
    n: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    zero: Elem,
    one: Elem,
) -> Result<Classification> {
    Ok(*FiniteStruct::new(n, add, mul, zero, one, None)?.classification())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn zmod(n: u32) -> FiniteStruct {
        FiniteStruct::from_fn(n as usize, 0, 1 % n, |a, b| (a + b) % n, |a, b| (a * b) % n, None).unwrap()
    }

    #[test]
    fn z4_is_commutative_ring() {
        let c = zmod(4).classification().clone();
        assert!(c.is_ring && c.is_commutative_ring && c.is_right_nearring);
        assert!(c.is_cancellative_semiring);
    }

    #[test]
    fn bad_shapes_are_rejected() {
        assert!(matches!(
            FiniteStruct::new(2, vec![0, 1, 1], vec![0; 4], 0, 1, None),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteStruct::new(2, vec![0, 1, 1, 2], vec![0; 4], 0, 1, None),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn missing_identity_is_a_flag_not_an_error() {
        let s = FiniteStruct::new(2, vec![0, 1, 1, 0], vec![0; 4], 0, 1, None).unwrap();
        let c = s.classification();
        assert!(!c.mul_identity && !c.is_ring);
    }

    #[test]
    fn text_round_trip() {
        let s = zoo::build_str("matring(zmod(2),2)").unwrap();
        let back = FiniteStruct::parse(&s.to_text()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.labels(), s.labels());
    }

    #[test]
    fn parse_reports_lines() {
        let err = FiniteStruct::parse("order 2\nzero 0\none 1\nadd\n0 1\n1\n").unwrap_err();
        assert_eq!(err, Error::MalformedTable("line 6: add row 1 has 1 entries, expected 2".into()));
    }

    #[test]
    fn permutation_preserves_classification() {
        let s = zoo::build_str("triangular(zmod(2),2,upper)").unwrap();
        let p = s.permute(&[3, 1, 7, 0, 2, 6, 5, 4]).unwrap();
        assert_eq!(p.classification(), s.classification());
    }
}
