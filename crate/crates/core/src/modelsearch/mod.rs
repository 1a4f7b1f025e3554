//! Finite model search for non-additive brachy-automorphisms of semirings
//! and right near-rings, and verification of the two pinned fixtures.

mod canon;
mod search;

pub use canon::canonical_form;
pub use search::{
    in_class, search_counterexample, witness, Counterexample, Outcome, SearchClass, SearchResult,
    SearchStats, SearchTask, MAX_NEARRING_ORDER, MAX_SEMIRING_ORDER,
};

use crate::brachy::Morphism;
use crate::error::{Error, Result};
use crate::finstruct::{Classification, Elem, FiniteStruct};

const TABLE1_TEXT: &str = include_str!("../../fixtures/table1.struct");
const TABLE2_TEXT: &str = include_str!("../../fixtures/table2.struct");

pub const FIXTURE_NAMES: [&str; 2] = ["table1", "table2"];

/// Reference tables the fixture files must match cell for cell.
const TABLE1_ADD: [[Elem; 4]; 4] = [[0, 1, 2, 3], [1, 1, 2, 3], [2, 2, 2, 3], [3, 3, 3, 3]];
const TABLE1_MUL: [[Elem; 4]; 4] = [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 2], [0, 1, 2, 3]];
const TABLE2_MUL: [[Elem; 16]; 16] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15],
    [0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 12],
    [0, 3, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 3],
    [0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4],
    [0, 5, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 11],
    [0, 6, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 8],
    [0, 7, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 7],
    [0, 8, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 6],
    [0, 9, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 9],
    [0, 10, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 10],
    [0, 11, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 5],
    [0, 12, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2],
    [0, 13, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 13],
    [0, 14, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 14],
    [0, 15, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 1],
];

/// Load a pinned fixture by name.
pub fn fixture(name: &str) -> Result<FiniteStruct> {
    match name {
        "table1" => FiniteStruct::parse(TABLE1_TEXT),
        "table2" => FiniteStruct::parse(TABLE2_TEXT),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Text of a pinned fixture file.
pub fn fixture_text(name: &str) -> Result<&'static str> {
    match name {
        "table1" => Ok(TABLE1_TEXT),
        "table2" => Ok(TABLE2_TEXT),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureReport {
    pub name: String,
    pub order: usize,
    pub class: Classification,
    /// The bijective brachymorphism claimed for the fixture.
    pub automorphism: Vec<Elem>,
    /// The claimed non-additive pair `(a, b)`.
    pub pair: (Elem, Elem),
    /// `f(a + b)`.
    pub image_of_sum: Elem,
    /// `f(a) + f(b)`.
    pub sum_of_images: Elem,
    /// Each confirmed claim, in order.
    pub claims: Vec<String>,
}

fn reference(name: &str) -> Result<(usize, Elem, Elem, Vec<Elem>, Vec<Elem>)> {
    match name {
        "table1" => Ok((4, 0, 3, TABLE1_ADD.concat(), TABLE1_MUL.concat())),
        "table2" => {
            let add = (0..16u32).flat_map(|i| (0..16u32).map(move |j| i ^ j)).collect();
            Ok((16, 0, 1, add, TABLE2_MUL.concat()))
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Verify the pinned fixture `name` loaded from its file.
pub fn verify_fixture(name: &str) -> Result<FixtureReport> {
    verify_fixture_struct(name, &fixture(name)?)
}

/// Check `s` against the reference tables of `name` and every claim made
/// about that fixture. A differing cell is reported by coordinates.
pub fn verify_fixture_struct(name: &str, s: &FiniteStruct) -> Result<FixtureReport> {
    let (n, zero, one, add, mul) = reference(name)?;
    let fail = |msg: String| Error::FixtureMismatch(format!("{name}: {msg}"));
    if s.order() != n {
        return Err(fail(format!("order {} differs from {n}", s.order())));
    }
    if (s.zero(), s.one()) != (zero, one) {
        return Err(fail(format!("zero/one are {}/{}, expected {zero}/{one}", s.zero(), s.one())));
    }
    for (table, got, want) in [("add", s.add_table(), &add), ("mul", s.mul_table(), &mul)] {
        if let Some(k) = (0..n * n).find(|&k| got[k] != want[k]) {
            return Err(fail(format!(
                "{table}[{}][{}] is {}, expected {}",
                k / n,
                k % n,
                got[k],
                want[k]
            )));
        }
    }

    let c = *s.classification();
    let mut claims = Vec::new();
    let mut claim = |ok: bool, text: &str| -> Result<()> {
        if ok {
            claims.push(text.to_string());
            Ok(())
        } else {
            Err(fail(format!("claim failed: {text}")))
        }
    };
    let (map, pair): (Vec<Elem>, (Elem, Elem)) = match name {
        "table1" => {
            claim(c.is_commutative_semiring, "commutative semiring axioms hold")?;
            claim(!c.is_ring, "ring axioms fail")?;
            claim(!c.is_cancellative_semiring, "additive cancellation fails")?;
            (vec![0, 2, 1, 3], (1, 2))
        }
        _ => {
            claim(c.is_right_nearring, "right near-ring axioms hold")?;
            claim(c.add_commutative, "addition is commutative")?;
            claim(c.mul_zero_absorbs, "x0 = 0 for every x")?;
            claim(!c.left_distributive, "left distributivity fails")?;
            claim(
                s.elements().all(|x| s.add(x, x) == s.zero()),
                "x + x = 0 for every x, so the additive group is elementary abelian of order 16",
            )?;
            let mut map: Vec<Elem> = (0..16).collect();
            map.swap(6, 8);
            map.swap(7, 9);
            (map, (2, 4))
        }
    };
    let f = Morphism::new(s, s, map.clone())?;
    claim(f.is_brachymorphism && f.is_bijective(), "the map is a bijective brachymorphism")?;
    let (a, b) = pair;
    let image_of_sum = f.apply(s.add(a, b));
    let sum_of_images = s.add(f.apply(a), f.apply(b));
    if name == "table2" {
        claim(f.apply(a) == a && f.apply(b) == b, "f fixes a = 2 and b = 4")?;
        claim(image_of_sum != s.add(a, b), "f(a + b) differs from a + b")?;
    }
    claim(image_of_sum != sum_of_images, "f(a + b) differs from f(a) + f(b)")?;
    claim(f.violations.contains(&pair), "the pair is in the violation list")?;
    Ok(FixtureReport {
        name: name.to_string(),
        order: n,
        class: c,
        automorphism: map,
        pair,
        image_of_sum,
        sum_of_images,
        claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_fixtures_verify() {
        let r1 = verify_fixture("table1").unwrap();
        assert_eq!((r1.image_of_sum, r1.sum_of_images), (1, 2));
        let r2 = verify_fixture("table2").unwrap();
        assert_eq!(r2.image_of_sum, 8);
        assert_eq!(r2.sum_of_images, 6);
    }

    #[test]
    fn corrupted_cell_is_named() {
        let t1 = fixture("table1").unwrap();
        let mut mul = t1.mul_table().to_vec();
        mul[6] = 3;
        let bad = FiniteStruct::new(4, t1.add_table().to_vec(), mul, 0, 3, None).unwrap();
        let err = verify_fixture_struct("table1", &bad).unwrap_err();
        assert_eq!(err, Error::FixtureMismatch("table1: mul[1][2] is 3, expected 0".into()));
    }

    #[test]
    fn unknown_fixture() {
        assert_eq!(fixture("table3"), Err(Error::UnknownName("table3".into())));
    }

    #[test]
    fn fixture_text_round_trips() {
        for name in FIXTURE_NAMES {
            let s = fixture(name).unwrap();
            assert_eq!(FiniteStruct::parse(&s.to_text()).unwrap(), s);
        }
    }
}
