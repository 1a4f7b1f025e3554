//! Symbolic trace and determinant identities over generic matrices, and
//! exhaustive determinant audits over finite matrix rings.

mod audit;

pub use audit::{
    audit_battery, det_brachy_audit, det_brachy_audit_with_cap, parse_audit_specs, AuditReport,
    AuditSpec, TraceChain, AUDIT_CAP,
};

use crate::error::{Error, Result};
use crate::poly::{CPoly, Var};
use rayon::prelude::*;

/// Largest order accepted for symbolic work.
pub const MAX_SYMBOLIC_ORDER: usize = 4;

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::usage("matrix order must be positive"));
    }
    if n > MAX_SYMBOLIC_ORDER {
        return Err(Error::CapExceeded { what: format!("symbolic order {n}"), cap: MAX_SYMBOLIC_ORDER });
    }
    Ok(())
}

/// Permutations of `0..n` with their signs.
pub(crate) fn signed_permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        let n = used.len();
        if prefix.len() == n {
            out.push((prefix.clone(), odd));
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            // inversions contributed by v against the remaining larger-unused values
            let inv = (0..v).filter(|&u| !used[u]).count();
            used[v] = true;
            prefix.push(v);
            go(prefix, used, odd ^ (inv % 2 == 1), out);
            prefix.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], false, &mut out);
    out
}

/// A square matrix with polynomial entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<CPoly>,
}

impl SymMatrix {
    pub fn from_entries(n: usize, entries: Vec<CPoly>) -> Result<Self> {
        check_order(n)?;
        if entries.len() != n * n {
            return Err(Error::usage(format!("{} entries for order {n}", entries.len())));
        }
        Ok(SymMatrix { n, entries })
    }

    /// The matrix with entry `(i, j)` the variable `{name}{i}{j}`, 1-based.
    pub fn generic(name: &str, n: usize) -> Result<Self> {
        check_order(n)?;
        let entries = (0..n * n)
            .map(|k| CPoly::var(&format!("{name}{}{}", k / n + 1, k % n + 1)))
            .collect();
        Ok(SymMatrix { n, entries })
    }

    pub fn scalar(n: usize, c: CPoly) -> Result<Self> {
        check_order(n)?;
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { c.clone() } else { CPoly::zero() })
            .collect();
        Ok(SymMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Result<Self> {
        SymMatrix::scalar(n, CPoly::one())
    }

    /// Rows `λ_i^0, ..., λ_i^{n-1}` with `λ_i` the variable `l{i}`.
    pub fn vandermonde(n: usize) -> Result<Self> {
        check_order(n)?;
        let entries = (0..n * n)
            .map(|k| CPoly::var(&format!("l{}", k / n + 1)).pow((k % n) as u32))
            .collect();
        Ok(SymMatrix { n, entries })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &CPoly {
        &self.entries[i * self.n + j]
    }

    fn same_order(&self, other: &SymMatrix) {
        assert_eq!(self.n, other.n, "matrix orders differ");
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        self.same_order(other);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        SymMatrix { n: self.n, entries }
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        self.same_order(other);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        SymMatrix { n: self.n, entries }
    }

    pub fn mul(&self, other: &SymMatrix) -> SymMatrix {
        self.same_order(other);
        let n = self.n;
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..n).fold(CPoly::zero(), |acc, l| &acc + &(self.entry(i, l) * other.entry(l, j)))
            })
            .collect();
        SymMatrix { n, entries }
    }

    pub fn scale(&self, c: &CPoly) -> SymMatrix {
        let entries = self.entries.iter().map(|a| a * c).collect();
        SymMatrix { n: self.n, entries }
    }

    pub fn commutator(&self, other: &SymMatrix) -> SymMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> CPoly {
        (0..self.n).fold(CPoly::zero(), |acc, i| &acc + self.entry(i, i))
    }

    /// Leibniz expansion.
    pub fn det(&self) -> CPoly {
        let mut acc = CPoly::zero();
        for (p, odd) in signed_permutations(self.n) {
            let term = (0..self.n).fold(CPoly::one(), |t, i| &t * self.entry(i, p[i]));
            acc = if odd { &acc - &term } else { &acc + &term };
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CPoly::is_zero)
    }

    /// Diagonal with equal entries and zeros elsewhere.
    pub fn is_scalar(&self) -> bool {
        let n = self.n;
        (0..n * n).all(|k| {
            let (i, j) = (k / n, k % n);
            if i == j { self.entry(i, i) == self.entry(0, 0) } else { self.entry(i, j).is_zero() }
        })
    }

    fn mentions(&self, v: &Var) -> bool {
        self.entries.iter().any(|e| e.coefficients_in(v).len() > 1)
    }
}

/// `τ_1, ..., τ_{n-1}` and the determinant of a matrix: the characteristic
/// polynomial `det(t·1 - a)` is `t^n + Σ (-1)^k τ_k t^{n-k} + (-1)^n det`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharPoly {
    pub n: usize,
    pub tau: Vec<CPoly>,
    pub det: CPoly,
}

impl CharPoly {
    /// `τ_k` for `1 ≤ k ≤ n`, where `τ_n` is the determinant.
    pub fn tau(&self, k: usize) -> &CPoly {
        assert!(k >= 1 && k <= self.n, "τ index {k} out of range");
        if k == self.n { &self.det } else { &self.tau[k - 1] }
    }

    /// Coefficients of `det(t·1 - a)` by ascending power of `t`.
    pub fn coefficients(&self) -> Vec<CPoly> {
        let n = self.n;
        let mut out = vec![CPoly::zero(); n + 1];
        out[n] = CPoly::one();
        for k in 1..=n {
            let c = self.tau(k);
            out[n - k] = if k % 2 == 1 { -c } else { c.clone() };
        }
        out
    }

    fn from_coefficients(n: usize, coeffs: &[CPoly]) -> CharPoly {
        let tau_k = |k: usize| {
            let c = coeffs.get(n - k).cloned().unwrap_or_default();
            if k % 2 == 1 { -&c } else { c }
        };
        CharPoly { n, tau: (1..n).map(tau_k).collect(), det: tau_k(n) }
    }
}

/// Characteristic polynomial by expanding `det(t·1 - a)` over `CPoly[t]`.
pub fn char_poly_direct(a: &SymMatrix) -> Result<CharPoly> {
    let t = Var::new("t");
    if a.mentions(&t) {
        return Err(Error::usage("matrix entries must not mention t"));
    }
    let n = a.order();
    let m = SymMatrix::scalar(n, CPoly::var("t"))?.sub(a);
    let coeffs = m.det().coefficients_in(&t);
    Ok(CharPoly::from_coefficients(n, &coeffs))
}

/// Characteristic polynomial by the Faddeev–LeVerrier recursion with exact
/// integer division.
pub fn char_poly_faddeev(a: &SymMatrix) -> Result<CharPoly> {
    let n = a.order();
    let mut coeffs = vec![CPoly::zero(); n + 1];
    coeffs[n] = CPoly::one();
    let mut m = SymMatrix::scalar(n, CPoly::zero())?;
    for k in 1..=n {
        m = a.mul(&m).add(&SymMatrix::scalar(n, coeffs[n - k + 1].clone())?);
        let tr = a.mul(&m).trace();
        let q = tr
            .div_exact(k as i64)
            .ok_or_else(|| Error::Internal(format!("trace not divisible by {k}")))?;
        coeffs[n - k] = -&q;
    }
    Ok(CharPoly::from_coefficients(n, &coeffs))
}

/// Characteristic polynomial of `a`, computed both ways and cross-checked.
pub fn char_poly(a: &SymMatrix) -> Result<CharPoly> {
    let direct = char_poly_direct(a)?;
    let faddeev = char_poly_faddeev(a)?;
    if direct != faddeev {
        return Err(Error::Internal(format!("characteristic polynomials differ at order {}", a.order())));
    }
    Ok(direct)
}

/// Characteristic polynomial of the generic `n × n` matrix with entries `a_ij`.
pub fn symbolic_char_poly(n: usize) -> Result<CharPoly> {
    char_poly(&SymMatrix::generic("a", n)?)
}

/// `⟨a, b⟩ = τ_2(a + b) - τ_2(a) - τ_2(b)`.
pub fn pairing(a: &SymMatrix, b: &SymMatrix) -> Result<CPoly> {
    if a.order() < 2 {
        return Err(Error::usage("the pairing needs order at least 2"));
    }
    let t2 = |m: &SymMatrix| char_poly(m).map(|c| c.tau(2).clone());
    Ok(&(&t2(&a.add(b))? - &t2(a)?) - &t2(b)?)
}

/// One case of the matrix suite.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixCase {
    pub name: &'static str,
    pub n: usize,
    pub statement: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Copy)]
enum CaseKind {
    CharPoly,
    TraceProduct,
    DetOfSum,
    Hall,
    CayleyHamilton,
    Vandermonde,
    TraceChain,
}

impl CaseKind {
    fn name(self) -> &'static str {
        match self {
            CaseKind::CharPoly => "charpoly",
            CaseKind::TraceProduct => "m1",
            CaseKind::DetOfSum => "m2",
            CaseKind::Hall => "m3",
            CaseKind::CayleyHamilton => "m4",
            CaseKind::Vandermonde => "m5",
            CaseKind::TraceChain => "m6",
        }
    }

    fn statement(self) -> &'static str {
        match self {
            CaseKind::CharPoly => "direct expansion and Faddeev-LeVerrier agree",
            CaseKind::TraceProduct => "τ1(a)τ1(b) = τ1(ab) + ⟨a,b⟩",
            CaseKind::DetOfSum => {
                "τ3(a+b) = τ3(a) + τ3(b) - τ1(ab)τ1(a+b) + τ1(a)τ2(b) + τ2(a)τ1(b) + τ1(a²b) + τ1(ab²)"
            }
            CaseKind::Hall => "(ab-ba)² is the scalar -det(ab-ba) and commutes with c",
            CaseKind::CayleyHamilton => "p_a(a) = 0",
            CaseKind::Vandermonde => "det(λ_i^(j-1)) = ∏_{i<j} (λ_j - λ_i)",
            CaseKind::TraceChain => "τ2 = τ1 on R implies 2τ1 = 0, ⟨x,y⟩ = 0, δ = 0 and det additive",
        }
    }
}

fn run_case(kind: CaseKind, n: usize) -> Result<MatrixCase> {
    let a = SymMatrix::generic("a", n)?;
    let b = SymMatrix::generic("b", n)?;
    let tau = |m: &SymMatrix, k: usize| char_poly(m).map(|c| c.tau(k).clone());
    let (holds, detail) = match kind {
        CaseKind::CharPoly => {
            let c = symbolic_char_poly(n)?;
            (true, format!("det has {} terms", c.det.num_terms()))
        }
        CaseKind::TraceProduct => {
            let lhs = a.trace() * b.trace();
            let rhs = &a.mul(&b).trace() + &pairing(&a, &b)?;
            let diff = &lhs - &rhs;
            (diff.is_zero(), format!("difference has {} terms", diff.num_terms()))
        }
        CaseKind::DetOfSum => {
            let s = a.add(&b);
            let ab = a.mul(&b);
            let t1 = |m: &SymMatrix| m.trace();
            let rhs = [
                tau(&a, 3)?,
                tau(&b, 3)?,
                -&(t1(&ab) * t1(&s)),
                t1(&a) * tau(&b, 2)?,
                tau(&a, 2)? * t1(&b),
                t1(&a.mul(&ab)),
                t1(&ab.mul(&b)),
            ]
            .into_iter()
            .fold(CPoly::zero(), |acc, p| &acc + &p);
            let diff = &tau(&s, 3)? - &rhs;
            (diff.is_zero(), format!("difference has {} terms", diff.num_terms()))
        }
        CaseKind::Hall => {
            let c = SymMatrix::generic("c", n)?;
            let k = a.commutator(&b);
            let h = k.mul(&k);
            let commutes = h.commutator(&c).is_zero();
            let scalar = h.add(&SymMatrix::scalar(n, k.det())?).is_zero();
            (commutes && scalar && h.is_scalar(), format!("commutes with c: {commutes}, equals -det: {scalar}"))
        }
        CaseKind::CayleyHamilton => {
            let coeffs = char_poly(&a)?.coefficients();
            let mut acc = SymMatrix::scalar(n, CPoly::zero())?;
            // Horner evaluation of p_a at a
            for c in coeffs.iter().rev() {
                acc = acc.mul(&a).add(&SymMatrix::scalar(n, c.clone())?);
            }
            (acc.is_zero(), format!("{} nonzero entries", acc.entries.iter().filter(|e| !e.is_zero()).count()))
        }
        CaseKind::Vandermonde => {
            let det = SymMatrix::vandermonde(n)?.det();
            let l = |i: usize| CPoly::var(&format!("l{i}"));
            let mut prod = CPoly::one();
            for i in 1..=n {
                for j in i + 1..=n {
                    prod = &prod * &(&l(j) - &l(i));
                }
            }
            (det == prod, format!("determinant has {} terms", det.num_terms()))
        }
        CaseKind::TraceChain => {
            let mut instances = 0;
            let mut failures = Vec::new();
            for spec in audit_battery()?.into_iter().filter(|s| s.n == 3) {
                let rep = det_brachy_audit(&spec)?;
                if let Some(chain) = rep.trace_chain {
                    if chain.premise {
                        instances += 1;
                        if !chain.conclusions_hold() {
                            failures.push(spec.name.clone());
                        }
                    }
                }
            }
            let detail = if failures.is_empty() {
                format!("premise held on {instances} battery rings")
            } else {
                format!("chain fails on {}", failures.join(", "))
            };
            (failures.is_empty(), detail)
        }
    };
    Ok(MatrixCase { name: kind.name(), n, statement: kind.statement(), holds, detail })
}

/// Every mandatory case with order at most `nmax`, in a fixed order.
pub fn verify_matrix_suite(nmax: usize) -> Result<Vec<MatrixCase>> {
    check_order(nmax)?;
    let mut plan: Vec<(CaseKind, usize)> = (1..=nmax).map(|n| (CaseKind::CharPoly, n)).collect();
    plan.extend([2, 3].into_iter().filter(|&n| n <= nmax).map(|n| (CaseKind::TraceProduct, n)));
    plan.extend([3].into_iter().filter(|&n| n <= nmax).map(|n| (CaseKind::DetOfSum, n)));
    plan.extend([2].into_iter().filter(|&n| n <= nmax).map(|n| (CaseKind::Hall, n)));
    plan.extend([2, 3].into_iter().filter(|&n| n <= nmax).map(|n| (CaseKind::CayleyHamilton, n)));
    plan.extend((1..=nmax).map(|n| (CaseKind::Vandermonde, n)));
    plan.extend([3].into_iter().filter(|&n| n <= nmax).map(|n| (CaseKind::TraceChain, n)));
    plan.into_par_iter().map(|(k, n)| run_case(k, n)).collect()
}
