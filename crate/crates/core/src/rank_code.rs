//! Rank-metric codes: minimum rank distance, minimum rank weight, linearity
//! and dimension, plus the rank distribution of M_2(F_q).

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{gl_order, GlOrderQuery, Matrix, PrimeField};
use crate::error::{Error, Result};

/// d_R(A, B) = rank(A - B).
pub fn rank_distance(a: &Matrix, b: &Matrix) -> Result<usize> {
    Ok(a.checked_sub(b)?.rank())
}

/// A set of equally shaped matrices with its measured parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankMetricCode {
    rows: usize,
    cols: usize,
    field: PrimeField,
    elements: Vec<Matrix>,
    linear: bool,
    rho: Option<u32>,
    delta: Option<(usize, (Matrix, Matrix))>,
    omega: Option<(usize, Matrix)>,
}

impl RankMetricCode {
    /// Measures δ, Ω, linearity and ρ exhaustively. Duplicates are dropped.
    pub fn from_matrices<I>(matrices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Matrix>,
    {
        let set: BTreeSet<Matrix> = matrices.into_iter().collect();
        let first = set.iter().next().ok_or(Error::EmptyCode)?;
        let (rows, cols, field) = (first.rows(), first.cols(), first.field());
        for m in &set {
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.p(),
                    right: m.field().p(),
                });
            }
            if m.shape() != (rows, cols) {
                return Err(Error::ShapeMismatch {
                    left_rows: rows,
                    left_cols: cols,
                    right_rows: m.rows(),
                    right_cols: m.cols(),
                });
            }
        }
        let elements: Vec<Matrix> = set.into_iter().collect();

        // Pairs are visited in sorted order and only a strictly smaller rank
        // replaces the incumbent, so the witness is the lexicographically first.
        // Distinct matrices are at distance at least 1, so the scan can stop there.
        let mut delta: Option<(usize, (Matrix, Matrix))> = None;
        'pairs: for (i, a) in elements.iter().enumerate() {
            for b in &elements[i + 1..] {
                let d = (a - b).rank();
                if delta.as_ref().is_none_or(|(best, _)| d < *best) {
                    delta = Some((d, (a.clone(), b.clone())));
                    if d == 1 {
                        break 'pairs;
                    }
                }
            }
        }
        let mut omega: Option<(usize, Matrix)> = None;
        for a in elements.iter().filter(|a| !a.is_zero()) {
            let w = a.rank();
            if omega.as_ref().is_none_or(|(best, _)| w < *best) {
                omega = Some((w, a.clone()));
            }
        }

        let linear = is_linear(&elements, field);
        let rho = if linear {
            Some(log_exact(elements.len() as u64, field.p() as u64).ok_or_else(|| {
                Error::TheoremViolation("linear code with non-power-of-p size".into())
            })?)
        } else {
            None
        };

        Ok(Self {
            rows,
            cols,
            field,
            elements,
            linear,
            rho,
            delta,
            omega,
        })
    }

    /// The F_p-span of `generators`, built by repeated addition and scaling.
    pub fn span(generators: &[Matrix]) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyCode)?;
        let field = first.field();
        let mut set: BTreeSet<Matrix> = BTreeSet::new();
        set.insert(Matrix::zero(first.rows(), first.cols(), field));
        for g in generators {
            let current: Vec<Matrix> = set.iter().cloned().collect();
            for c in 1..field.p() {
                let scaled = g.scale(c);
                for x in &current {
                    set.insert(x.checked_add(&scaled)?);
                }
            }
        }
        Self::from_matrices(set)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    /// Dimension over F_p; present only for linear codes.
    pub fn rho(&self) -> Option<u32> {
        self.rho
    }

    /// Minimum rank distance; undefined for a one-element code.
    pub fn delta(&self) -> Option<usize> {
        self.delta.as_ref().map(|(d, _)| *d)
    }

    pub fn delta_witness(&self) -> Option<&(Matrix, Matrix)> {
        self.delta.as_ref().map(|(_, w)| w)
    }

    /// Minimum rank among nonzero codewords.
    pub fn omega(&self) -> Option<usize> {
        self.omega.as_ref().map(|(w, _)| *w)
    }

    pub fn omega_witness(&self) -> Option<&Matrix> {
        self.omega.as_ref().map(|(_, m)| m)
    }

    /// A basis of a linear code, read off the RREF of the flattened codewords.
    pub fn basis(&self) -> Option<Vec<Matrix>> {
        if !self.linear {
            return None;
        }
        let width = self.rows * self.cols;
        let mut flat = Vec::with_capacity(self.elements.len() * width);
        for m in &self.elements {
            flat.extend_from_slice(m.entries());
        }
        let stacked = Matrix::new(self.elements.len(), width, self.field, flat).ok()?;
        let (rref, pivots) = stacked.rref();
        Some(
            (0..pivots.len())
                .map(|r| {
                    Matrix::new(self.rows, self.cols, self.field, rref.row(r).to_vec())
                        .expect("row has rows*cols entries")
                })
                .collect(),
        )
    }

    pub fn report(&self) -> RankCodeReport {
        RankCodeReport {
            k: self.rows,
            l: self.cols,
            p: self.field.p(),
            size: self.elements.len(),
            delta: self.delta(),
            omega: self.omega(),
            rho: self.rho,
            linear: self.linear,
            witnesses: RankCodeWitnesses {
                delta_pair: self.delta_witness().map(|(a, b)| [a.clone(), b.clone()]),
                omega_element: self.omega_witness().cloned(),
            },
        }
    }
}

/// The span of one to four uniformly random `rows x cols` matrices.
pub fn random_linear_subcode<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    field: PrimeField,
    rng: &mut R,
) -> RankMetricCode {
    let gens: Vec<Matrix> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let entries = (0..rows * cols).map(|_| rng.gen_range(0..field.p())).collect();
            Matrix::new(rows, cols, field, entries).expect("entries are residues")
        })
        .collect();
    RankMetricCode::span(&gens).expect("nonempty generator list")
}

/// C is closed under addition and scaling iff it equals its span, and since
/// C lies in its span that happens iff |C| = p^dim span(C).
fn is_linear(elements: &[Matrix], field: PrimeField) -> bool {
    let Some(first) = elements.first() else {
        return false;
    };
    let flat: Vec<u32> = elements.iter().flat_map(|m| m.entries().iter().copied()).collect();
    let stacked = Matrix::new(elements.len(), first.rows() * first.cols(), field, flat)
        .expect("every element has the same shape and field");
    let dim = stacked.rank() as u32;
    (field.p() as u128)
        .checked_pow(dim)
        .is_some_and(|size| size == elements.len() as u128)
}

fn log_exact(mut n: u64, base: u64) -> Option<u32> {
    let mut e = 0;
    while n > 1 {
        if !n.is_multiple_of(base) {
            return None;
        }
        n /= base;
        e += 1;
    }
    (n == 1).then_some(e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCodeWitnesses {
    pub delta_pair: Option<[Matrix; 2]>,
    pub omega_element: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCodeReport {
    pub k: usize,
    pub l: usize,
    pub p: u32,
    pub size: usize,
    pub delta: Option<usize>,
    pub omega: Option<usize>,
    pub rho: Option<u32>,
    pub linear: bool,
    pub witnesses: RankCodeWitnesses,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaOmegaReport {
    pub delta: usize,
    pub omega: usize,
    pub equal: bool,
    pub delta_pair: [Matrix; 2],
    pub omega_element: Matrix,
}

/// δ = Ω for a linear code. Returns `None` when the statement does not apply:
/// the code is not linear, or it is `{0}` and has neither quantity.
pub fn verify_delta_equals_omega(code: &RankMetricCode) -> Option<DeltaOmegaReport> {
    if !code.is_linear() {
        return None;
    }
    let (delta, (a, b)) = code.delta.clone()?;
    let (omega, w) = code.omega.clone()?;
    Some(DeltaOmegaReport {
        delta,
        omega,
        equal: delta == omega,
        delta_pair: [a, b],
        omega_element: w,
    })
}

/// Counts of 2x2 matrices over F_q by rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankDistribution {
    pub q: u64,
    pub a0: u128,
    pub a1: u128,
    pub a2: u128,
    /// Whether the counts were also confirmed by scanning the ring.
    pub exhaustive_checked: bool,
}

impl RankDistribution {
    pub fn counts(&self) -> [u128; 3] {
        [self.a0, self.a1, self.a2]
    }
}

/// Largest prime for which [`rank_distribution`] also scans the ring.
pub const DISTRIBUTION_SCAN_LIMIT: u64 = 5;

/// A_0 = 1, A_2 = |GL(2,q)|, A_1 = q^4 - |GL(2,q)| - 1. For prime q up to
/// [`DISTRIBUTION_SCAN_LIMIT`] the closed forms are checked against a scan.
pub fn rank_distribution(query: GlOrderQuery) -> Result<RankDistribution> {
    if query.n != 2 {
        return Err(Error::UnsupportedSize(query.n));
    }
    let q = query.q.q();
    let gl = gl_order(query)?;
    let q4 = (q as u128).checked_pow(4).ok_or(Error::Overflow("q^4"))?;
    let mut dist = RankDistribution {
        q,
        a0: 1,
        a1: q4 - gl - 1,
        a2: gl,
        exhaustive_checked: false,
    };
    if query.q.is_prime() && q <= DISTRIBUTION_SCAN_LIMIT {
        let scanned = scan_rank_distribution(PrimeField::new(q)?);
        if scanned != dist.counts() {
            return Err(Error::TheoremViolation(format!(
                "rank distribution over F_{q}: closed form {:?}, scan {:?}",
                dist.counts(),
                scanned
            )));
        }
        dist.exhaustive_checked = true;
    }
    Ok(dist)
}

/// Tallies ranks over every 2x2 matrix.
pub fn scan_rank_distribution(field: PrimeField) -> [u128; 3] {
    let mut counts = [0u128; 3];
    for a in Matrix::enumerate(2, 2, field) {
        counts[a.rank()] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MatrixRing, Side};

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(p: u64, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(f(p), rows).unwrap()
    }

    #[test]
    fn distance_examples() {
        let a = m(2, &[&[0, 1], &[0, 0]]);
        let b = m(2, &[&[0, 0], &[0, 1]]);
        assert_eq!(rank_distance(&a, &a).unwrap(), 0);
        assert_eq!(rank_distance(&a, &b).unwrap(), 1);
        let id = Matrix::identity(2, f(2));
        assert_eq!(rank_distance(&id, &Matrix::zero(2, 2, f(2))).unwrap(), 2);
        assert!(rank_distance(&a, &Matrix::zero(2, 3, f(2))).is_err());
    }

    #[test]
    fn rank_distance_is_a_metric_on_m2_f2() {
        let all: Vec<_> = Matrix::enumerate(2, 2, f(2)).collect();
        for a in &all {
            for b in &all {
                let dab = rank_distance(a, b).unwrap();
                assert_eq!(dab == 0, a == b);
                assert_eq!(dab, rank_distance(b, a).unwrap());
                for c in &all {
                    assert!(
                        rank_distance(a, c).unwrap() <= dab + rank_distance(b, c).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn example_ideal_parameters() {
        let r = MatrixRing::over_prime(2).unwrap();
        let ideal = r.principal_ideal(&m(2, &[&[0, 0], &[0, 1]]), Side::Left).unwrap();
        let code = RankMetricCode::from_matrices(ideal.elements).unwrap();
        assert_eq!(code.shape(), (2, 2));
        assert_eq!((code.rho(), code.delta(), code.omega()), (Some(2), Some(1), Some(1)));
        assert_eq!(code.basis().unwrap().len(), 2);

        let r3 = MatrixRing::over_prime(3).unwrap();
        let j = r3.principal_ideal(&m(3, &[&[0, 2], &[0, 1]]), Side::Left).unwrap();
        let code = RankMetricCode::from_matrices(j.elements).unwrap();
        assert_eq!((code.rho(), code.delta()), (Some(2), Some(1)));
    }

    #[test]
    fn two_element_code() {
        let code = RankMetricCode::from_matrices([Matrix::zero(2, 2, f(2)), Matrix::identity(2, f(2))])
            .unwrap();
        assert_eq!((code.delta(), code.omega(), code.rho()), (Some(2), Some(2), Some(1)));
        let rep = verify_delta_equals_omega(&code).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.delta, 2);
    }

    #[test]
    fn degenerate_and_nonlinear_codes() {
        let single = RankMetricCode::from_matrices([Matrix::identity(2, f(3))]).unwrap();
        assert_eq!(single.delta(), None);
        assert!(!single.is_linear());
        assert!(verify_delta_equals_omega(&single).is_none());

        let zero = RankMetricCode::from_matrices([Matrix::zero(2, 2, f(3))]).unwrap();
        assert!(zero.is_linear());
        assert_eq!(zero.rho(), Some(0));
        assert!(verify_delta_equals_omega(&zero).is_none());

        // {I, 2I} over F_3 lacks 0
        let id = Matrix::identity(2, f(3));
        let nl = RankMetricCode::from_matrices([id.clone(), id.scale(2)]).unwrap();
        assert!(!nl.is_linear());
        assert_eq!(nl.rho(), None);
        assert_eq!(nl.delta(), Some(2));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            RankMetricCode::from_matrices(Vec::new()).unwrap_err(),
            Error::EmptyCode
        );
        assert!(matches!(
            RankMetricCode::from_matrices([Matrix::zero(2, 2, f(2)), Matrix::zero(1, 2, f(2))]),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            RankMetricCode::from_matrices([Matrix::zero(2, 2, f(2)), Matrix::zero(2, 2, f(3))]),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn span_builds_linear_codes() {
        let g = [m(3, &[&[1, 0], &[0, 0]]), m(3, &[&[0, 0], &[0, 1]])];
        let code = RankMetricCode::span(&g).unwrap();
        assert_eq!(code.len(), 9);
        assert!(code.is_linear());
        assert_eq!(code.rho(), Some(2));
        // diag(1,1) is in the span, so the minimum rank is still 1
        assert_eq!(code.omega(), Some(1));
    }

    #[test]
    fn distributions() {
        let d2 = rank_distribution(GlOrderQuery::new(2, 2).unwrap()).unwrap();
        assert_eq!(d2.counts(), [1, 9, 6]);
        assert!(d2.exhaustive_checked);
        let d3 = rank_distribution(GlOrderQuery::new(3, 2).unwrap()).unwrap();
        assert_eq!(d3.counts(), [1, 32, 48]);
        let d4 = rank_distribution(GlOrderQuery::new(4, 2).unwrap()).unwrap();
        assert_eq!(d4.counts(), [1, 256 - 180 - 1, 180]);
        assert!(!d4.exhaustive_checked);
        assert_eq!(
            rank_distribution(GlOrderQuery::new(3, 3).unwrap()),
            Err(Error::UnsupportedSize(3))
        );
    }

    #[test]
    fn delta_equals_omega_on_every_principal_ideal() {
        for p in [2, 3] {
            let r = MatrixRing::over_prime(p).unwrap();
            for a in r.elements() {
                for side in Side::BOTH {
                    let ideal = r.principal_ideal(&a, side).unwrap();
                    let code = RankMetricCode::from_matrices(ideal.elements).unwrap();
                    assert!(code.is_linear());
                    match verify_delta_equals_omega(&code) {
                        Some(rep) => assert!(rep.equal, "{a:?} {side}"),
                        None => assert!(a.is_zero()),
                    }
                }
            }
        }
    }

    fn closed_under_operations(elements: &[Matrix]) -> bool {
        let set: std::collections::HashSet<&Matrix> = elements.iter().collect();
        let p = elements[0].field().p();
        elements.iter().any(Matrix::is_zero)
            && elements.iter().all(|a| {
                (2..p).all(|c| set.contains(&a.scale(c))) && elements.iter().all(|b| set.contains(&(a + b)))
            })
    }

    proptest::proptest! {
        #[test]
        fn linearity_matches_closure(p in proptest::sample::select(vec![2u64, 3]), picks in proptest::collection::vec(0usize..81, 1..12)) {
            let all: Vec<Matrix> = Matrix::enumerate(2, 2, f(p)).collect();
            let chosen: Vec<Matrix> = picks.iter().map(|&i| all[i % all.len()].clone()).collect();
            let code = RankMetricCode::from_matrices(chosen).unwrap();
            proptest::prop_assert_eq!(code.is_linear(), closed_under_operations(code.elements()));
        }

        #[test]
        fn spans_are_linear(seed in proptest::prelude::any::<u64>(), p in proptest::sample::select(vec![2u64, 3, 5])) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let code = random_linear_subcode(2, 2, f(p), &mut rng);
            proptest::prop_assert!(closed_under_operations(code.elements()));
            proptest::prop_assert!(code.is_linear());
        }
    }

    #[test]
    fn linearity_of_subspaces_and_near_misses() {
        let r = MatrixRing::over_prime(2).unwrap();
        let ideal = r.principal_ideal(&m(2, &[&[0, 0], &[0, 1]]), Side::Left).unwrap().elements;
        assert!(RankMetricCode::from_matrices(ideal.clone()).unwrap().is_linear());
        // dropping one nonzero element leaves the right span but too few elements
        let short: Vec<Matrix> = ideal.iter().filter(|x| **x != m(2, &[&[0, 1], &[0, 1]])).cloned().collect();
        assert!(!RankMetricCode::from_matrices(short).unwrap().is_linear());
        // four elements, no zero
        let shifted: Vec<Matrix> = ideal.iter().map(|x| x + &r.one()).collect();
        assert!(!RankMetricCode::from_matrices(shifted).unwrap().is_linear());
    }
}
