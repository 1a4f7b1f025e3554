use super::Var;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A monomial of the free monoid: a finite sequence of variables.
///
/// Words compare length-lexicographically, the empty word (the unit) first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Var>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Var>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Var] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// All contiguous subwords, including the empty word.
    pub fn factors(&self) -> impl Iterator<Item = Word> + '_ {
        let n = self.0.len();
        std::iter::once(Word::empty()).chain(
            (0..n).flat_map(move |i| (i + 1..=n).map(move |j| Word(self.0[i..j].to_vec()))),
        )
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            write!(f, "{}", self.0[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A noncommutative polynomial with integer coefficients.
///
/// Zero coefficients are never stored; the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, BigInt>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        NCPoly::monomial(Word::empty(), c)
    }

    pub fn var(name: &str) -> Self {
        NCPoly::monomial(Word(vec![Var::new(name)]), 1)
    }

    pub fn monomial(word: Word, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        NCPoly { terms }
    }

    /// Build from arbitrary `(word, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Word, BigInt)>>(it: I) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter().cloned())
            .collect()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.terms.values().any(|c| c.is_negative())
    }

    pub fn max_coeff(&self) -> BigInt {
        self.terms.values().max().cloned().unwrap_or_default()
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        let mut acc = NCPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// Simultaneous substitution. Unbound variables map to themselves.
    pub fn substitute(&self, bindings: &BTreeMap<Var, NCPoly>) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut prod = NCPoly::constant(c.clone());
            for v in &w.0 {
                match bindings.get(v) {
                    Some(p) => prod = &prod * p,
                    None => prod = &prod * &NCPoly::monomial(Word(vec![v.clone()]), 1),
                }
            }
            out = &out + &prod;
        }
        out
    }

    /// Reduce coefficients into `0..m`, dropping those that vanish.
    pub fn reduce_mod(&self, m: u64) -> NCPoly {
        if m == 0 {
            return self.clone();
        }
        let m = BigInt::from(m);
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(w, c)| {
                    let r = ((c % &m) + &m) % &m;
                    (!r.is_zero()).then(|| (w.clone(), r))
                })
                .collect(),
        }
    }

    /// The polynomial `p` with every variable renamed through `f`.
    pub fn rename(&self, f: impl Fn(&Var) -> Var) -> NCPoly {
        NCPoly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (Word(w.0.iter().map(&f).collect()), c.clone())),
        )
    }

    pub fn parse(text: &str) -> crate::error::Result<NCPoly> {
        super::parse::parse_poly(text)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}

impl<'a> Add<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<NCPoly> for NCPoly {
            type Output = NCPoly;
            fn $m(self, rhs: NCPoly) -> NCPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a NCPoly> for NCPoly {
            type Output = NCPoly;
            fn $m(self, rhs: &NCPoly) -> NCPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> NCPoly {
        NCPoly::parse(s).unwrap()
    }

    #[test]
    fn words_order_length_first() {
        let x = Word::new(vec![Var::new("x")]);
        let yy = Word::new(vec![Var::new("y"), Var::new("y")]);
        assert!(Word::empty() < x);
        assert!(x < yy);
    }

    #[test]
    fn product_of_successors() {
        assert_eq!(&p("1 + x") * &p("1 + y"), p("1 + x + y + xy"));
    }

    #[test]
    fn p1_tilde_expansion() {
        let lhs = &p("1 + xz") * &p("1 + yz");
        assert_eq!(lhs, p("1 + xz + yz + xzyz"));
    }

    #[test]
    fn self_difference_is_empty() {
        let q = p("3x^2y - 7 + yx");
        assert!((&q - &q).is_zero());
        assert_eq!((&q - &q).num_terms(), 0);
    }

    #[test]
    fn substitution_examples() {
        let mut b = BTreeMap::new();
        b.insert(Var::new("x"), p("x"));
        b.insert(Var::new("y"), p("x + 1"));
        assert_eq!(p("xy").substitute(&b), p("x^2 + x"));
        assert_eq!(p("x").substitute(&BTreeMap::new()), p("x"));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("yx + x y - 2 + x x").to_string(), "-2 + x^2 + xy + yx");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(NCPoly::zero().to_string(), "0");
    }

    #[test]
    fn factors_of_word() {
        let w = Word::new(vec![Var::new("x"), Var::new("y")]);
        let fs: Vec<String> = w.factors().map(|f| f.to_string()).collect();
        assert_eq!(fs, vec!["1", "x", "xy", "y"]);
    }
}
