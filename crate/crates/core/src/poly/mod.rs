//! Exact polynomial arithmetic over the integers.
//!
//! [`NCPoly`] lives in the free ring on named variables: products concatenate
//! words and nothing commutes. [`CPoly`] is the commutative counterpart used
//! for generic matrix entries. Both keep a canonical term order so that
//! structural equality is polynomial equality.

mod cpoly;
mod ncpoly;
mod parse;
mod weyl;

pub use cpoly::{CPoly, Monomial};
pub use ncpoly::{NCPoly, Word};
pub use weyl::{weyl_normal_form, weyl_rewrite_step};

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A variable name. Ordered by name, which fixes the alphabet order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

/// Which binary operation [`poly_combine`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Sub,
    Mul,
}

/// Either flavour of polynomial, for callers that work with both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Poly {
    NonCommutative(NCPoly),
    Commutative(CPoly),
}

/// Apply `op` to two polynomials of the same flavour.
pub fn poly_combine(op: CombineOp, p: &Poly, q: &Poly) -> Result<Poly> {
    match (p, q) {
        (Poly::NonCommutative(a), Poly::NonCommutative(b)) => {
            Ok(Poly::NonCommutative(match op {
                CombineOp::Add => a + b,
                CombineOp::Sub => a - b,
                CombineOp::Mul => a * b,
            }))
        }
        (Poly::Commutative(a), Poly::Commutative(b)) => Ok(Poly::Commutative(match op {
            CombineOp::Add => a + b,
            CombineOp::Sub => a - b,
            CombineOp::Mul => a * b,
        })),
        _ => Err(Error::usage(
            "cannot combine a noncommutative and a commutative polynomial",
        )),
    }
}

/// `pq - qp`.
pub fn commutator(p: &NCPoly, q: &NCPoly) -> NCPoly {
    &(p * q) - &(q * p)
}
