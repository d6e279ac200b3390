//! The ring M_2(F_p): idempotents, the zero / zero-divisor / unit partition,
//! and one-sided principal ideals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{Matrix, PrimeField};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];

    /// `r * x` for a left ideal, `x * r` for a right ideal.
    #[inline]
    pub fn act(self, r: &Matrix, x: &Matrix) -> Matrix {
        match self {
            Side::Left => r * x,
            Side::Right => x * r,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            other => Err(format!("unknown side `{other}` (expected left or right)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ElementClass {
    Zero,
    ZeroDivisor,
    Unit,
}

/// M_2(F_p) over a fixed prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatrixRing {
    field: PrimeField,
}

impl MatrixRing {
    pub fn new(field: PrimeField) -> Self {
        Self { field }
    }

    pub fn over_prime(p: u64) -> Result<Self> {
        Ok(Self::new(PrimeField::new(p)?))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// p^4.
    pub fn order(&self) -> u64 {
        (self.p() as u64).pow(4)
    }

    /// All p^4 elements in lexicographic entry order.
    pub fn elements(&self) -> Vec<Matrix> {
        Matrix::enumerate(2, 2, self.field).collect()
    }

    pub fn zero(&self) -> Matrix {
        Matrix::zero(2, 2, self.field)
    }

    pub fn one(&self) -> Matrix {
        Matrix::identity(2, self.field)
    }

    fn check_member(&self, a: &Matrix) -> Result<()> {
        if a.field() != self.field {
            return Err(Error::FieldMismatch {
                left: a.field().p(),
                right: self.p(),
            });
        }
        if a.shape() != (2, 2) {
            return Err(Error::ShapeMismatch {
                left_rows: a.rows(),
                left_cols: a.cols(),
                right_rows: 2,
                right_cols: 2,
            });
        }
        Ok(())
    }

    /// Zero iff A = 0, unit iff full rank, zero divisor otherwise.
    pub fn classify(&self, a: &Matrix) -> ElementClass {
        match a.rank() {
            0 => ElementClass::Zero,
            2 => ElementClass::Unit,
            _ => ElementClass::ZeroDivisor,
        }
    }

    /// Nonzero, noninvertible idempotents found by scanning the whole ring.
    pub fn nontrivial_idempotents(&self) -> Vec<Matrix> {
        self.elements()
            .into_iter()
            .filter(|a| is_idempotent(a) && self.classify(a) == ElementClass::ZeroDivisor)
            .collect()
    }

    /// The p + 1 representatives `[[0,0],[0,1]]` and `[[1,r],[0,0]]`, r in F_p.
    pub fn canonical_idempotents(&self) -> Vec<Matrix> {
        let f = self.field;
        let mut out = vec![Matrix::from_rows(f, &[&[0, 0], &[0, 1]]).expect("2x2 literal")];
        for r in 0..self.p() as i64 {
            out.push(Matrix::from_rows(f, &[&[1, r], &[0, 0]]).expect("2x2 literal"));
        }
        out
    }

    /// `{r a : r in R}` (left) or `{a r : r in R}` (right), by multiplying
    /// through the whole ring.
    pub fn principal_ideal(&self, generator: &Matrix, side: Side) -> Result<PrincipalIdeal> {
        self.check_member(generator)?;
        let elements: BTreeSet<Matrix> = self
            .elements()
            .iter()
            .map(|r| side.act(r, generator))
            .collect();
        Ok(PrincipalIdeal {
            generator: generator.clone(),
            side,
            elements: elements.into_iter().collect(),
        })
    }

    /// Smallest set containing `seeds` that is closed under addition and
    /// under one-sided multiplication by every ring element.
    pub fn closure(&self, seeds: &[Matrix], side: Side) -> BTreeSet<Matrix> {
        let ring = self.elements();
        let mut set: BTreeSet<Matrix> = seeds.iter().cloned().collect();
        let mut frontier: Vec<Matrix> = set.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            let mut fresh = Vec::new();
            for r in &ring {
                fresh.push(side.act(r, &x));
            }
            for y in &set {
                fresh.push(&x + y);
            }
            for z in fresh {
                if set.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
        set
    }

    /// True iff every nonzero element of the ideal regenerates the whole ideal
    /// under [`MatrixRing::closure`], i.e. there is no proper nonzero sub-ideal.
    pub fn is_minimal(&self, ideal: &PrincipalIdeal) -> bool {
        let target: BTreeSet<Matrix> = ideal.elements.iter().cloned().collect();
        if target.len() <= 1 {
            return false;
        }
        ideal
            .elements
            .iter()
            .filter(|x| !x.is_zero())
            .all(|x| self.closure(std::slice::from_ref(x), ideal.side) == target)
    }

    /// Raw idempotent count next to the number of distinct one-sided ideals
    /// those idempotents generate.
    pub fn idempotent_census(&self) -> Result<IdempotentCensus> {
        let idempotents = self.nontrivial_idempotents();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for a in &idempotents {
            left.entry(self.principal_ideal(a, Side::Left)?.elements)
                .or_insert_with(Vec::new)
                .push(a.clone());
            right
                .entry(self.principal_ideal(a, Side::Right)?.elements)
                .or_insert_with(Vec::new)
                .push(a.clone());
        }
        let canonical = self.canonical_idempotents();
        let canonical_present = canonical.iter().all(|c| idempotents.contains(c));
        Ok(IdempotentCensus {
            p: self.p(),
            raw_count: idempotents.len(),
            canonical_count: canonical.len(),
            canonical_present,
            distinct_left_ideals: left.len(),
            distinct_right_ideals: right.len(),
        })
    }
}

pub fn is_idempotent(a: &Matrix) -> bool {
    a.is_square() && &(a * a) == a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentCensus {
    pub p: u32,
    pub raw_count: usize,
    pub canonical_count: usize,
    pub canonical_present: bool,
    pub distinct_left_ideals: usize,
    pub distinct_right_ideals: usize,
}

/// A one-sided principal ideal with its elements in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrincipalIdeal {
    pub generator: Matrix,
    pub side: Side,
    pub elements: Vec<Matrix>,
}

impl PrincipalIdeal {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// Closed under addition and under multiplication by every ring element
    /// on the ideal's side.
    pub fn is_closed(&self, ring: &MatrixRing) -> bool {
        let all = ring.elements();
        self.elements.iter().all(|x| {
            all.iter().all(|r| self.contains(&self.side.act(r, x)))
                && self.elements.iter().all(|y| self.contains(&(x + y)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> MatrixRing {
        MatrixRing::over_prime(p).unwrap()
    }

    fn m(p: u64, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(PrimeField::new(p).unwrap(), rows).unwrap()
    }

    #[test]
    fn ring_sizes() {
        assert_eq!(ring(2).elements().len(), 16);
        assert_eq!(ring(3).elements().len(), 81);
        assert_eq!(ring(5).elements().len(), 625);
    }

    #[test]
    fn idempotent_examples() {
        assert!(is_idempotent(&m(2, &[&[0, 0], &[0, 1]])));
        assert!(is_idempotent(&m(3, &[&[0, 2], &[0, 1]])));
        assert!(!is_idempotent(&m(2, &[&[0, 1], &[0, 0]])));
    }

    #[test]
    fn scan_contains_canonical_forms() {
        for p in [2, 3, 5] {
            let r = ring(p);
            let found = r.nontrivial_idempotents();
            for c in r.canonical_idempotents() {
                assert!(found.contains(&c), "{c:?}");
            }
            for a in &found {
                assert_eq!(&(a * a), a);
                assert!(!a.is_zero());
                assert_eq!(a.rank(), 1);
            }
        }
        let two = ring(2).nontrivial_idempotents();
        assert!(two.contains(&m(2, &[&[1, 1], &[0, 0]])));
        assert!(two.contains(&m(2, &[&[1, 0], &[0, 0]])));
    }

    #[test]
    fn census_counts() {
        // A rank-one idempotent is a projection: choose its image (p+1 lines)
        // and a complementary kernel (p choices), so p^2 + p in total.
        for p in [2u64, 3, 5] {
            let c = ring(p).idempotent_census().unwrap();
            assert_eq!(c.raw_count as u64, p * p + p);
            assert_eq!(c.canonical_count as u64, p + 1);
            assert_eq!(c.distinct_left_ideals as u64, p + 1);
            assert_eq!(c.distinct_right_ideals as u64, p + 1);
            assert!(c.canonical_present);
        }
    }

    #[test]
    fn example_ideals() {
        let r2 = ring(2);
        let e = m(2, &[&[0, 0], &[0, 1]]);
        let left = r2.principal_ideal(&e, Side::Left).unwrap();
        let mut expect = vec![
            m(2, &[&[0, 0], &[0, 0]]),
            m(2, &[&[0, 1], &[0, 0]]),
            m(2, &[&[0, 0], &[0, 1]]),
            m(2, &[&[0, 1], &[0, 1]]),
        ];
        expect.sort();
        assert_eq!(left.elements, expect);

        let right = r2.principal_ideal(&e, Side::Right).unwrap();
        let mut expect = vec![
            m(2, &[&[0, 0], &[0, 0]]),
            m(2, &[&[0, 0], &[1, 0]]),
            m(2, &[&[0, 0], &[0, 1]]),
            m(2, &[&[0, 0], &[1, 1]]),
        ];
        expect.sort();
        assert_eq!(right.elements, expect);
    }

    #[test]
    fn ideal_cardinality_and_closure() {
        for p in [2u64, 3, 5] {
            let r = ring(p);
            for a in r.nontrivial_idempotents() {
                for side in Side::BOTH {
                    let ideal = r.principal_ideal(&a, side).unwrap();
                    assert_eq!(ideal.len() as u64, p * p);
                    if p < 5 {
                        assert!(ideal.is_closed(&r));
                    }
                }
            }
        }
    }

    #[test]
    fn minimality_for_small_primes() {
        for p in [2, 3] {
            let r = ring(p);
            for a in r.nontrivial_idempotents() {
                for side in Side::BOTH {
                    assert!(r.is_minimal(&r.principal_ideal(&a, side).unwrap()));
                }
            }
            // the whole ring is not minimal
            let whole = r.principal_ideal(&r.one(), Side::Left).unwrap();
            assert_eq!(whole.len(), r.elements().len());
            assert!(!r.is_minimal(&whole));
        }
    }

    #[test]
    fn general_generators_are_accepted() {
        let r = ring(3);
        let zero = r.principal_ideal(&r.zero(), Side::Left).unwrap();
        assert_eq!(zero.len(), 1);
        let nilpotent = r.principal_ideal(&m(3, &[&[0, 1], &[0, 0]]), Side::Right).unwrap();
        assert_eq!(nilpotent.len(), 9);
        assert!(nilpotent.is_closed(&r));
        assert!(r.principal_ideal(&Matrix::zero(2, 3, r.field()), Side::Left).is_err());
        assert!(r.principal_ideal(&ring(2).one(), Side::Left).is_err());
    }

    #[test]
    fn classification_matches_zero_divisor_scan() {
        for p in [2, 3] {
            let r = ring(p);
            let all = r.elements();
            for a in &all {
                let annihilated = all
                    .iter()
                    .any(|b| !b.is_zero() && ((a * b).is_zero() || (b * a).is_zero()));
                let expected = if a.is_zero() {
                    ElementClass::Zero
                } else if annihilated {
                    ElementClass::ZeroDivisor
                } else {
                    ElementClass::Unit
                };
                assert_eq!(r.classify(a), expected);
                assert_eq!(r.classify(a) == ElementClass::ZeroDivisor, a.rank() == 1);
            }
        }
        let r = ring(2);
        assert_eq!(r.classify(&r.zero()), ElementClass::Zero);
        assert_eq!(r.classify(&r.one()), ElementClass::Unit);
        assert_eq!(r.classify(&m(2, &[&[0, 1], &[0, 1]])), ElementClass::ZeroDivisor);
    }

    #[test]
    fn side_parsing() {
        assert_eq!("Left".parse::<Side>().unwrap(), Side::Left);
        assert_eq!("right".parse::<Side>().unwrap(), Side::Right);
        assert!("up".parse::<Side>().is_err());
    }
}
