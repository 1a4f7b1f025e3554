//! Constructors for small rings, addressed by expressions such as
//! `matring(zmod(2),2)`.
//!
//! ```text
//! spec := 'zmod(' n ')'
//!       | 'product(' spec ',' spec ')'
//!       | 'matring(' spec ',' n ')'
//!       | 'triangular(' spec ',' n ',' ('upper' | 'lower') ')'
//!       | 'quotientpoly(' spec ',' '[' int (',' int)* ']' ')'
//!       | 'monoidring(' spec ',' '[' row (',' row)* ']' ')'
//! row  := '[' n (',' n)* ']'
//! ```
//!
//! `quotientpoly` takes the coefficients `c0, c1, ..., 1` of a monic
//! polynomial, lowest degree first, each read as `c·1` in the base ring.
//! `monoidring` takes a monoid multiplication table.

use crate::error::{Error, Result};
use crate::finstruct::{Elem, FiniteStruct, Monoid};
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

/// Default bound on the order of a constructed structure.
pub const DEFAULT_BUILD_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triangle {
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZooSpec {
    Zmod(usize),
    Product(Box<ZooSpec>, Box<ZooSpec>),
    MatRing(Box<ZooSpec>, usize),
    Triangular(Box<ZooSpec>, usize, Triangle),
    QuotientPoly(Box<ZooSpec>, Vec<i64>),
    MonoidRing(Box<ZooSpec>, Vec<Vec<usize>>),
}

impl fmt::Display for ZooSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[i64]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        match self {
            ZooSpec::Zmod(n) => write!(f, "zmod({n})"),
            ZooSpec::Product(a, b) => write!(f, "product({a},{b})"),
            ZooSpec::MatRing(k, n) => write!(f, "matring({k},{n})"),
            ZooSpec::Triangular(k, n, t) => {
                let side = match t {
                    Triangle::Upper => "upper",
                    Triangle::Lower => "lower",
                };
                write!(f, "triangular({k},{n},{side})")
            }
            ZooSpec::QuotientPoly(k, cs) => write!(f, "quotientpoly({k},[{}])", list(cs)),
            ZooSpec::MonoidRing(k, rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        let r: Vec<i64> = r.iter().map(|&x| x as i64).collect();
                        format!("[{}]", list(&r))
                    })
                    .collect();
                write!(f, "monoidring({k},[{}])", rows.join(","))
            }
        }
    }
}

struct SpecParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> SpecParser<'a> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(self.i, msg)
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn word(&mut self) -> Result<String> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_alphabetic() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.i]).into_owned())
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let start = self.i;
        if self.s.get(self.i) == Some(&b'-') {
            self.i += 1;
        }
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(start, "expected an integer"))
    }

    fn nat(&mut self) -> Result<usize> {
        self.ws();
        let pos = self.i;
        let v = self.int()?;
        usize::try_from(v).map_err(|_| Error::parse(pos, "expected a nonnegative integer"))
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        self.expect(b'[')?;
        let mut out = vec![self.int()?];
        while self.eat(b',') {
            out.push(self.int()?);
        }
        self.expect(b']')?;
        Ok(out)
    }

    fn spec(&mut self) -> Result<ZooSpec> {
        self.ws();
        let pos = self.i;
        let name = self.word()?;
        self.expect(b'(')?;
        let out = match name.as_str() {
            "zmod" => ZooSpec::Zmod(self.nat()?),
            "product" => {
                let a = self.spec()?;
                self.expect(b',')?;
                ZooSpec::Product(Box::new(a), Box::new(self.spec()?))
            }
            "matring" => {
                let k = self.spec()?;
                self.expect(b',')?;
                ZooSpec::MatRing(Box::new(k), self.nat()?)
            }
            "triangular" => {
                let k = self.spec()?;
                self.expect(b',')?;
                let n = self.nat()?;
                self.expect(b',')?;
                let wpos = self.i;
                let side = match self.word()?.as_str() {
                    "upper" => Triangle::Upper,
                    "lower" => Triangle::Lower,
                    _ => return Err(Error::parse(wpos, "expected `upper` or `lower`")),
                };
                ZooSpec::Triangular(Box::new(k), n, side)
            }
            "quotientpoly" => {
                let k = self.spec()?;
                self.expect(b',')?;
                ZooSpec::QuotientPoly(Box::new(k), self.int_list()?)
            }
            "monoidring" => {
                let k = self.spec()?;
                self.expect(b',')?;
                self.expect(b'[')?;
                let mut rows = Vec::new();
                loop {
                    let rpos = self.i;
                    let row = self.int_list()?;
                    let row: Option<Vec<usize>> = row.into_iter().map(|v| usize::try_from(v).ok()).collect();
                    rows.push(row.ok_or_else(|| Error::parse(rpos, "negative monoid entry"))?);
                    if !self.eat(b',') {
                        break;
                    }
                }
                self.expect(b']')?;
                ZooSpec::MonoidRing(Box::new(k), rows)
            }
            other => return Err(Error::parse(pos, format!("unknown constructor `{other}`"))),
        };
        self.expect(b')')?;
        Ok(out)
    }
}

impl ZooSpec {
    pub fn parse(text: &str) -> Result<ZooSpec> {
        let mut p = SpecParser { s: text.as_bytes(), i: 0 };
        let spec = p.spec()?;
        p.ws();
        if p.i != text.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(spec)
    }

    /// Order of the structure this spec builds, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        match self {
            ZooSpec::Zmod(n) => Some(*n),
            ZooSpec::Product(a, b) => a.order()?.checked_mul(b.order()?),
            ZooSpec::MatRing(k, n) => checked_pow(k.order()?, n.checked_mul(*n)?),
            ZooSpec::Triangular(k, n, _) => checked_pow(k.order()?, n * (n + 1) / 2),
            ZooSpec::QuotientPoly(k, cs) => checked_pow(k.order()?, cs.len().saturating_sub(1)),
            ZooSpec::MonoidRing(k, rows) => checked_pow(k.order()?, rows.len()),
        }
    }
}

fn checked_pow(base: usize, e: usize) -> Option<usize> {
    (0..e).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

/// Build a structure from an explicit element list and operations.
pub fn from_elements<T: Clone + Eq + Hash>(
    elems: Vec<T>,
    zero: &T,
    one: &T,
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
    label: impl Fn(&T) -> String,
) -> Result<FiniteStruct> {
    let index: HashMap<T, Elem> = elems
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i as Elem))
        .collect();
    let look = |t: T| {
        index
            .get(&t)
            .copied()
            .ok_or_else(|| Error::Internal("operation leaves the element list".into()))
    };
    let n = elems.len();
    let mut at = Vec::with_capacity(n * n);
    let mut mt = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            at.push(look(add(a, b))?);
            mt.push(look(mul(a, b))?);
        }
    }
    let labels = elems.iter().map(label).collect();
    FiniteStruct::new(n, at, mt, look(zero.clone())?, look(one.clone())?, Some(labels))
}

/// All vectors of length `len` over `0..base`, first coordinate slowest.
fn vectors(base: usize, len: usize) -> Vec<Vec<Elem>> {
    let total = checked_pow(base, len).expect("order checked against cap");
    (0..total)
        .map(|mut code| {
            let mut v = vec![0; len];
            for slot in v.iter_mut().rev() {
                *slot = (code % base) as Elem;
                code /= base;
            }
            v
        })
        .collect()
}

fn require_commutative(k: &FiniteStruct) -> Result<()> {
    if k.classification().is_commutative_ring {
        Ok(())
    } else {
        Err(Error::usage("base ring must be a commutative ring"))
    }
}

fn sum(k: &FiniteStruct, it: impl Iterator<Item = Elem>) -> Elem {
    it.fold(k.zero(), |acc, e| k.add(acc, e))
}

fn matrix_label(k: &FiniteStruct, n: usize, v: &[Elem]) -> String {
    let rows: Vec<String> = v
        .chunks(n)
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|&e| k.label(e)).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn build_matrices(k: &FiniteStruct, n: usize, allowed: impl Fn(usize, usize) -> bool) -> Result<FiniteStruct> {
    require_commutative(k)?;
    if n == 0 {
        return Err(Error::usage("matrix size must be positive"));
    }
    let free: Vec<usize> = (0..n * n).filter(|&c| allowed(c / n, c % n)).collect();
    let elems: Vec<Vec<Elem>> = vectors(k.order(), free.len())
        .into_iter()
        .map(|v| {
            let mut m = vec![k.zero(); n * n];
            for (slot, &c) in free.iter().enumerate() {
                m[c] = v[slot];
            }
            m
        })
        .collect();
    let zero = vec![k.zero(); n * n];
    let one: Vec<Elem> = (0..n * n)
        .map(|c| if c / n == c % n { k.one() } else { k.zero() })
        .collect();
    from_elements(
        elems,
        &zero,
        &one,
        |a, b| a.iter().zip(b).map(|(&x, &y)| k.add(x, y)).collect(),
        |a, b| {
            (0..n * n)
                .map(|c| {
                    let (i, j) = (c / n, c % n);
                    sum(k, (0..n).map(|l| k.mul(a[i * n + l], b[l * n + j])))
                })
                .collect()
        },
        |v| matrix_label(k, n, v),
    )
}

fn poly_label(k: &FiniteStruct, v: &[Elem], var: &dyn Fn(usize) -> String) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != k.zero())
        .map(|(i, &c)| {
            let basis = var(i);
            if basis.is_empty() {
                k.label(c)
            } else if c == k.one() {
                basis
            } else {
                format!("{}*{basis}", k.label(c))
            }
        })
        .collect();
    if terms.is_empty() {
        k.label(k.zero())
    } else {
        terms.join("+")
    }
}

/// Build with the default cap.
pub fn build(spec: &ZooSpec) -> Result<FiniteStruct> {
    build_with_cap(spec, DEFAULT_BUILD_CAP)
}

/// Parse and build with the default cap.
pub fn build_str(text: &str) -> Result<FiniteStruct> {
    build(&ZooSpec::parse(text)?)
}

pub fn build_with_cap(spec: &ZooSpec, cap: usize) -> Result<FiniteStruct> {
    match spec.order() {
        Some(n) if n <= cap => {}
        _ => {
            return Err(Error::CapExceeded {
                what: format!("order of {spec}"),
                cap,
            })
        }
    }
    match spec {
        ZooSpec::Zmod(0) => Err(Error::usage("zmod needs a positive modulus")),
        ZooSpec::Zmod(n) => {
            let n = *n as Elem;
            FiniteStruct::from_fn(
                n as usize,
                0,
                1 % n,
                |a, b| (a + b) % n,
                |a, b| ((a as u64 * b as u64) % n as u64) as Elem,
                Some((0..n).map(|i| i.to_string()).collect()),
            )
        }
        ZooSpec::Product(a, b) => {
            let a = build_with_cap(a, cap)?;
            let b = build_with_cap(b, cap)?;
            let elems: Vec<(Elem, Elem)> = a
                .elements()
                .flat_map(|x| b.elements().map(move |y| (x, y)))
                .collect();
            from_elements(
                elems,
                &(a.zero(), b.zero()),
                &(a.one(), b.one()),
                |p, q| (a.add(p.0, q.0), b.add(p.1, q.1)),
                |p, q| (a.mul(p.0, q.0), b.mul(p.1, q.1)),
                |p| format!("({},{})", a.label(p.0), b.label(p.1)),
            )
        }
        ZooSpec::MatRing(k, n) => build_matrices(&build_with_cap(k, cap)?, *n, |_, _| true),
        ZooSpec::Triangular(k, n, side) => {
            let side = *side;
            build_matrices(&build_with_cap(k, cap)?, *n, move |i, j| match side {
                Triangle::Upper => i <= j,
                Triangle::Lower => i >= j,
            })
        }
        ZooSpec::QuotientPoly(k, cs) => {
            let k = build_with_cap(k, cap)?;
            require_commutative(&k)?;
            let d = cs.len().saturating_sub(1);
            let read = |c: i64| {
                let m = k.int(c.unsigned_abs() as usize);
                if c < 0 {
                    k.neg(m).expect("rings have negatives")
                } else {
                    m
                }
            };
            let coeffs: Vec<Elem> = cs.iter().map(|&c| read(c)).collect();
            if d == 0 || coeffs[d] != k.one() || cs[d] != 1 {
                return Err(Error::usage("modulus must be monic of positive degree"));
            }
            let zero = vec![k.zero(); d];
            let mut one = zero.clone();
            one[0] = k.one();
            let reduce = |mut prod: Vec<Elem>| -> Vec<Elem> {
                // x^d = -(c0 + c1 x + ... + c_{d-1} x^{d-1})
                for top in (d..prod.len()).rev() {
                    let c = prod[top];
                    if c == k.zero() {
                        continue;
                    }
                    prod[top] = k.zero();
                    let neg_c = k.neg(c).expect("rings have negatives");
                    for i in 0..d {
                        let t = k.mul(neg_c, coeffs[i]);
                        prod[top - d + i] = k.add(prod[top - d + i], t);
                    }
                }
                prod.truncate(d);
                prod
            };
            from_elements(
                vectors(k.order(), d),
                &zero,
                &one,
                |a, b| a.iter().zip(b).map(|(&x, &y)| k.add(x, y)).collect(),
                |a, b| {
                    let mut prod = vec![k.zero(); 2 * d - 1];
                    for (i, &x) in a.iter().enumerate() {
                        for (j, &y) in b.iter().enumerate() {
                            prod[i + j] = k.add(prod[i + j], k.mul(x, y));
                        }
                    }
                    reduce(prod)
                },
                |v| {
                    poly_label(&k, v, &|i| match i {
                        0 => String::new(),
                        1 => "x".into(),
                        _ => format!("x^{i}"),
                    })
                },
            )
        }
        ZooSpec::MonoidRing(k, rows) => {
            let k = build_with_cap(k, cap)?;
            require_commutative(&k)?;
            let m = rows.len();
            if rows.iter().any(|r| r.len() != m) {
                return Err(Error::NotAMonoid("table is not square".into()));
            }
            let table: Vec<Elem> = rows.iter().flatten().map(|&e| e as Elem).collect();
            let unit = (0..m as Elem)
                .find(|&e| (0..m).all(|a| rows[e as usize][a] == a && rows[a][e as usize] == a))
                .ok_or_else(|| Error::NotAMonoid("no identity element".into()))?;
            let monoid = Monoid::new(m, table, unit)?;
            let zero = vec![k.zero(); m];
            let mut one = zero.clone();
            one[unit as usize] = k.one();
            from_elements(
                vectors(k.order(), m),
                &zero,
                &one,
                |a, b| a.iter().zip(b).map(|(&x, &y)| k.add(x, y)).collect(),
                |a, b| {
                    let mut out = vec![k.zero(); m];
                    for g in 0..m {
                        for h in 0..m {
                            let gh = monoid.mul(g as Elem, h as Elem) as usize;
                            out[gh] = k.add(out[gh], k.mul(a[g], b[h]));
                        }
                    }
                    out
                },
                |v| poly_label(&k, v, &|i| format!("m{i}")),
            )
        }
    }
}

/// Specs of the default battery, in a fixed order.
pub const BATTERY: [&str; 12] = [
    "zmod(2)",
    "zmod(3)",
    "zmod(4)",
    "zmod(6)",
    "zmod(8)",
    "quotientpoly(zmod(2),[1,1,1])",
    "quotientpoly(zmod(2),[0,0,1])",
    "product(zmod(2),zmod(2))",
    "matring(zmod(2),2)",
    "triangular(zmod(2),2,upper)",
    "triangular(zmod(2),2,lower)",
    "monoidring(zmod(2),[[0,1],[1,1]])",
];

/// The default battery as `(spec, structure)` pairs.
pub fn battery() -> Vec<(String, FiniteStruct)> {
    BATTERY
        .iter()
        .map(|s| (s.to_string(), build_str(s).expect("battery specs build")))
        .collect()
}
