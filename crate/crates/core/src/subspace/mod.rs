//! Subspaces of F_p^n held as canonical RREF bases, the projective space and
//! Grassmannian, and subspace codes.

mod code;
mod enumerate;

pub use code::{
    greedy_partial_spread, subspace_weight_egalitarian_check, trivially_intersecting_families,
    SubspaceCode, SubspaceCodeParams, SubspaceEgalitarianReport, TrivialIntersectionPrediction,
};
pub use enumerate::{
    enumerate_grassmannian, enumerate_projective_space, gaussian_coefficient,
    is_subspace_weight, DEFAULT_ENUMERATION_BUDGET,
};

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{Matrix, PrimeField};
use crate::error::{Error, Result};

/// Vector sets are only materialized up to this many elements.
pub const MAX_MATERIALIZED_VECTORS: u64 = 1 << 16;

/// A subspace of F_p^n. The basis is in reduced row echelon form with no
/// zero rows, so equal subspaces have identical bases.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// The row space of `m`.
    pub fn rowspace(m: &Matrix) -> Self {
        let (rref, pivots) = m.rref();
        Self {
            basis: rref.truncate_rows(pivots.len()),
        }
    }

    /// Wraps a basis that must already be in canonical form.
    pub fn from_rref(basis: Matrix) -> Result<Self> {
        let canonical = Self::rowspace(&basis);
        if canonical.basis != basis {
            return Err(Error::Parse {
                line: 0,
                message: "basis is not in reduced row echelon form without zero rows".into(),
            });
        }
        Ok(canonical)
    }

    pub fn zero(n: usize, field: PrimeField) -> Self {
        Self {
            basis: Matrix::zero(0, n, field),
        }
    }

    pub fn full(n: usize, field: PrimeField) -> Self {
        Self {
            basis: Matrix::identity(n, field),
        }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    /// Also the subspace weight w_S.
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() || self.field() != other.field() {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    fn stacked_rank(&self, other: &Self) -> Result<usize> {
        self.check_ambient(other)?;
        Ok(self.basis.vstack(&other.basis)?.rank())
    }

    /// A + B.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::rowspace(&self.basis.vstack(&other.basis)?))
    }

    /// dim(A ∩ B) = dim A + dim B - dim(A + B).
    pub fn intersection_dim(&self, other: &Self) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.stacked_rank(other)?)
    }

    /// d_S(A, B) = dim A + dim B - 2 dim(A ∩ B).
    pub fn distance(&self, other: &Self) -> Result<usize> {
        Ok(self.dim() + other.dim() - 2 * self.intersection_dim(other)?)
    }

    /// d_I(A, B) = max(dim A, dim B) - dim(A ∩ B).
    pub fn injection_distance(&self, other: &Self) -> Result<usize> {
        Ok(self.dim().max(other.dim()) - self.intersection_dim(other)?)
    }

    pub fn contains_vector(&self, v: &[u32]) -> Result<bool> {
        let row = Matrix::new(1, v.len(), self.field(), v.to_vec())?;
        if row.cols() != self.ambient_dim() {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.basis.vstack(&row)?.rank() == self.dim())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        Ok(self.stacked_rank(other)? == other.dim())
    }

    /// All p^dim vectors, sorted. Refuses beyond [`MAX_MATERIALIZED_VECTORS`].
    pub fn vectors(&self) -> Result<Vec<Vec<u32>>> {
        let p = self.field().p() as u64;
        let count = p
            .checked_pow(self.dim() as u32)
            .filter(|&c| c <= MAX_MATERIALIZED_VECTORS)
            .ok_or_else(|| Error::BudgetExceeded {
                what: "materializing subspace vectors".into(),
                required: (p as u128).saturating_pow(self.dim() as u32),
                budget: MAX_MATERIALIZED_VECTORS as u128,
            })?;
        let f = self.field();
        let n = self.ambient_dim();
        let mut out = Vec::with_capacity(count as usize);
        let mut coeffs = vec![0u32; self.dim()];
        for _ in 0..count {
            let mut v = vec![0u32; n];
            for (r, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (j, slot) in v.iter_mut().enumerate() {
                    *slot = (*slot + c * self.basis.get(r, j)) % f.p();
                }
            }
            out.push(v);
            for c in coeffs.iter_mut().rev() {
                *c += 1;
                if *c < f.p() {
                    break;
                }
                *c = 0;
            }
        }
        out.sort();
        Ok(out)
    }

    /// The span of explicit vectors.
    pub fn from_vectors(n: usize, field: PrimeField, vectors: &[Vec<u32>]) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(n, field));
        }
        let flat: Vec<u32> = vectors.iter().flatten().copied().collect();
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::AmbientMismatch);
        }
        Ok(Self::rowspace(&Matrix::new(vectors.len(), n, field, flat)?))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}>", self.basis)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.basis)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn span(p: u64, rows: &[&[i64]]) -> Subspace {
        Subspace::rowspace(&Matrix::from_rows(f(p), rows).unwrap())
    }

    fn vecset(s: &Subspace) -> BTreeSet<Vec<u32>> {
        s.vectors().unwrap().into_iter().collect()
    }

    #[test]
    fn rowspace_examples() {
        let c2 = span(2, &[&[1, 0, 0, 1], &[0, 1, 0, 0]]);
        let expect: BTreeSet<Vec<u32>> =
            [vec![1, 0, 0, 1], vec![0, 1, 0, 0], vec![1, 1, 0, 1], vec![0, 0, 0, 0]]
                .into_iter()
                .collect();
        assert_eq!(vecset(&c2), expect);
        assert_eq!(c2.dim(), 2);

        let z = Subspace::rowspace(&Matrix::zero(3, 4, f(2)));
        assert!(z.is_zero());
        assert_eq!(z, Subspace::zero(4, f(2)));

        let full = Subspace::rowspace(&Matrix::identity(3, f(2)));
        assert_eq!(full.dim(), 3);
        assert_eq!(full.vectors().unwrap().len(), 8);
    }

    fn mixed_planes() -> (Subspace, Subspace) {
        (
            span(2, &[&[1, 0, 1], &[0, 1, 0]]),
            span(2, &[&[0, 1, 1], &[1, 0, 0]]),
        )
    }

    #[test]
    fn mixed_planes_operations() {
        let (a, b) = mixed_planes();
        let s = a.sum(&b).unwrap();
        assert_eq!(s, Subspace::full(3, f(2)));
        assert_eq!(s.intersection_dim(&a).unwrap(), 2);
        assert_eq!(s.distance(&a).unwrap(), 1);
        assert_eq!(s.injection_distance(&a).unwrap(), 1);
        assert_eq!(a.sum(&Subspace::zero(3, f(2))).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersection_dim(&a).unwrap(), 2);
        assert_eq!(a.intersection_dim(&Subspace::zero(3, f(2))).unwrap(), 0);
        assert_eq!(a.distance(&a).unwrap(), 0);
        assert_eq!(a.injection_distance(&a).unwrap(), 0);
    }

    #[test]
    fn binary_lifted_codewords_distance() {
        let c1 = span(2, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let c2 = span(2, &[&[1, 0, 0, 1], &[0, 1, 0, 0]]);
        // set-intersection oracle
        let common = vecset(&c1).intersection(&vecset(&c2)).count();
        assert_eq!(common, 2);
        assert_eq!(c1.intersection_dim(&c2).unwrap(), 1);
        assert_eq!(c1.distance(&c2).unwrap(), 2);
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subspace::full(3, f(2));
        let b = Subspace::full(4, f(2));
        let c = Subspace::full(3, f(3));
        assert_eq!(a.sum(&b), Err(Error::AmbientMismatch));
        assert_eq!(a.distance(&c), Err(Error::AmbientMismatch));
        assert_eq!(a.intersection_dim(&b), Err(Error::AmbientMismatch));
        assert_eq!(a.injection_distance(&b), Err(Error::AmbientMismatch));
    }

    #[test]
    fn membership_and_inclusion() {
        let (a, _) = mixed_planes();
        assert!(a.contains_vector(&[1, 1, 1]).unwrap());
        assert!(!a.contains_vector(&[0, 0, 1]).unwrap());
        assert!(a.is_subspace_of(&Subspace::full(3, f(2))).unwrap());
        assert!(Subspace::zero(3, f(2)).is_subspace_of(&a).unwrap());
    }

    #[test]
    fn from_rref_rejects_non_canonical() {
        let ok = Matrix::from_rows(f(3), &[&[1, 0, 2], &[0, 1, 1]]).unwrap();
        assert!(Subspace::from_rref(ok).is_ok());
        let bad = Matrix::from_rows(f(3), &[&[1, 1, 0], &[0, 1, 1]]).unwrap();
        assert!(Subspace::from_rref(bad).is_err());
        let with_zero_row = Matrix::from_rows(f(3), &[&[1, 0, 0], &[0, 0, 0]]).unwrap();
        assert!(Subspace::from_rref(with_zero_row).is_err());
    }

    #[test]
    fn vectors_budget() {
        let big = Subspace::full(17, f(2));
        assert!(matches!(big.vectors(), Err(Error::BudgetExceeded { .. })));
    }

    fn arb_matrix(p: u64, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(0..p as u32, rows * cols)
            .prop_map(move |v| Matrix::new(rows, cols, f(p), v).unwrap())
    }

    proptest! {
        #[test]
        fn canonical_form_is_stable(m in arb_matrix(3, 3, 5)) {
            let s = Subspace::rowspace(&m);
            prop_assert_eq!(Subspace::rowspace(&m.rref().0), s.clone());
            prop_assert_eq!(Subspace::rowspace(s.basis()), s.clone());
            prop_assert_eq!(s.dim(), m.rank());
        }

        #[test]
        fn intersection_matches_vector_sets(a in arb_matrix(3, 2, 4), b in arb_matrix(3, 2, 4)) {
            let (sa, sb) = (Subspace::rowspace(&a), Subspace::rowspace(&b));
            let common = vecset(&sa).intersection(&vecset(&sb)).count() as u64;
            prop_assert_eq!(common, 3u64.pow(sa.intersection_dim(&sb).unwrap() as u32));
        }

        #[test]
        fn sum_matches_vector_sets(a in arb_matrix(2, 2, 4), b in arb_matrix(2, 2, 4)) {
            let (sa, sb) = (Subspace::rowspace(&a), Subspace::rowspace(&b));
            let mut sums = BTreeSet::new();
            for x in vecset(&sa) {
                for y in vecset(&sb) {
                    sums.insert(x.iter().zip(&y).map(|(u, v)| (u + v) % 2).collect::<Vec<u32>>());
                }
            }
            prop_assert_eq!(sums, vecset(&sa.sum(&sb).unwrap()));
        }
    }
}
