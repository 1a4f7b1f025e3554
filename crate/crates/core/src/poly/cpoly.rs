use super::Var;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector of a commutative monomial, sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    fn without(&self, v: &Var) -> Monomial {
        Monomial(self.0.iter().filter(|(w, _)| w != v).cloned().collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (v, e) in &self.0 {
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A commutative polynomial with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl CPoly {
    pub fn zero() -> Self {
        CPoly::default()
    }

    pub fn one() -> Self {
        CPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        CPoly::from_monomial(Monomial::one(), c)
    }

    pub fn var(name: &str) -> Self {
        CPoly::from_monomial(Monomial::var(Var::new(name)), 1)
    }

    pub fn from_monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = CPoly::zero();
        p.add_term(m, c.into());
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn pow(&self, e: u32) -> CPoly {
        let mut acc = CPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> CPoly {
        let c = c.into();
        let mut out = CPoly::zero();
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * &c);
        }
        out
    }

    /// Divide every coefficient by `d`, or `None` if some coefficient is not
    /// a multiple of `d`.
    pub fn div_exact(&self, d: i64) -> Option<CPoly> {
        let d = BigInt::from(d);
        let mut out = CPoly::zero();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            out.add_term(m.clone(), q);
        }
        Some(out)
    }

    /// Coefficients of `self` viewed as a polynomial in `v`: entry `k` is the
    /// coefficient of `v^k`.
    pub fn coefficients_in(&self, v: &Var) -> Vec<CPoly> {
        let mut out: Vec<CPoly> = Vec::new();
        for (m, c) in &self.terms {
            let k = m.exponent(v) as usize;
            if out.len() <= k {
                out.resize(k + 1, CPoly::zero());
            }
            out[k].add_term(m.without(v), c.clone());
        }
        out
    }

    /// Evaluate modulo `m` with each variable assigned through `assign`.
    pub fn eval_mod(&self, assign: &dyn Fn(&Var) -> u64, m: u64) -> u64 {
        let mb = BigInt::from(m);
        let mut acc = BigInt::zero();
        for (mono, c) in &self.terms {
            let mut t = c.mod_floor(&mb);
            for (v, e) in &mono.0 {
                let base = BigInt::from(assign(v) % m);
                t = (t * base.modpow(&BigInt::from(*e), &mb)).mod_floor(&mb);
            }
            acc = (acc + t).mod_floor(&mb);
        }
        acc.to_u64().expect("reduced value fits")
    }

    pub fn parse(text: &str) -> crate::error::Result<CPoly> {
        super::parse::parse_cpoly(text)
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.0.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CPoly({self})")
    }
}

impl<'a> Add<&'a CPoly> for &'a CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a CPoly> for &'a CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a CPoly> for &'a CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        CPoly { terms: acc }
    }
}

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        CPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for CPoly {
    type Output = CPoly;
    fn add(self, rhs: CPoly) -> CPoly {
        &self + &rhs
    }
}

impl Sub for CPoly {
    type Output = CPoly;
    fn sub(self, rhs: CPoly) -> CPoly {
        &self - &rhs
    }
}

impl Mul for CPoly {
    type Output = CPoly;
    fn mul(self, rhs: CPoly) -> CPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutative_product_merges_exponents() {
        let x = CPoly::var("x");
        let y = CPoly::var("y");
        assert_eq!(&(&x * &y) - &(&y * &x), CPoly::zero());
        assert_eq!((&x * &x).to_string(), "x^2");
    }

    #[test]
    fn coefficient_extraction() {
        let p = CPoly::parse("t^2 - 3 t a + 2b").unwrap();
        let cs = p.coefficients_in(&Var::new("t"));
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], CPoly::parse("2b").unwrap());
        assert_eq!(cs[1], CPoly::parse("-3a").unwrap());
        assert_eq!(cs[2], CPoly::one());
    }

    #[test]
    fn exact_division() {
        let p = CPoly::parse("4x + 6").unwrap();
        assert_eq!(p.div_exact(2), Some(CPoly::parse("2x + 3").unwrap()));
        assert_eq!(p.div_exact(4), None);
    }

    #[test]
    fn modular_evaluation() {
        let p = CPoly::parse("x^2 - 3y").unwrap();
        let v = |v: &Var| if v.name() == "x" { 5 } else { 4 };
        assert_eq!(p.eval_mod(&v, 7), (25 + 7 * 7 - 12) % 7);
    }
}
