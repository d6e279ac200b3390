use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::Subspace;
use crate::algebra::PrimeField;
use crate::error::{Error, Result};
use crate::weights::Rational;

/// A set of subspaces of one ambient space, with measured parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceCode {
    n: usize,
    field: PrimeField,
    codewords: Vec<Subspace>,
    d: Option<(usize, (Subspace, Subspace))>,
    constant_k: Option<usize>,
    delta: Option<usize>,
}

/// (n, M, d, k)_q; `d` is absent for M = 1 and `k` for mixed dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceCodeParams {
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub d: Option<usize>,
    pub k: Option<usize>,
    pub q: u32,
}

impl std::fmt::Display for SubspaceCodeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        write!(f, "({},{},{},{})_{}", self.n, self.m, opt(self.d), opt(self.k), self.q)
    }
}

impl SubspaceCode {
    /// Deduplicates, then measures d over every pair, Δ, and the common
    /// dimension if there is one.
    pub fn from_subspaces<I>(subspaces: I) -> Result<Self>
    where
        I: IntoIterator<Item = Subspace>,
    {
        let set: BTreeSet<Subspace> = subspaces.into_iter().collect();
        let first = set.iter().next().ok_or(Error::EmptyCode)?;
        let (n, field) = (first.ambient_dim(), first.field());
        if set.iter().any(|s| s.ambient_dim() != n || s.field() != field) {
            return Err(Error::AmbientMismatch);
        }
        let codewords: Vec<Subspace> = set.into_iter().collect();

        let mut d: Option<(usize, (Subspace, Subspace))> = None;
        for (i, a) in codewords.iter().enumerate() {
            for b in &codewords[i + 1..] {
                let dist = a.distance(b)?;
                if d.as_ref().is_none_or(|(best, _)| dist < *best) {
                    d = Some((dist, (a.clone(), b.clone())));
                }
            }
        }
        let k0 = codewords[0].dim();
        let constant_k = codewords.iter().all(|c| c.dim() == k0).then_some(k0);
        let delta = codewords.iter().map(Subspace::dim).filter(|&k| k > 0).min();
        Ok(Self {
            n,
            field,
            codewords,
            d,
            constant_k,
            delta,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn min_distance(&self) -> Option<usize> {
        self.d.as_ref().map(|(d, _)| *d)
    }

    pub fn min_distance_witness(&self) -> Option<&(Subspace, Subspace)> {
        self.d.as_ref().map(|(_, w)| w)
    }

    pub fn constant_dimension(&self) -> Option<usize> {
        self.constant_k
    }

    /// Δ, the smallest nonzero dimension; absent when every codeword is {0}.
    pub fn min_weight(&self) -> Option<usize> {
        self.delta
    }

    pub fn params(&self) -> SubspaceCodeParams {
        SubspaceCodeParams {
            n: self.n,
            m: self.codewords.len(),
            d: self.min_distance(),
            k: self.constant_k,
            q: self.field.p(),
        }
    }

    /// Number of unordered codeword pairs at each subspace distance.
    pub fn distance_histogram(&self) -> Result<BTreeMap<usize, usize>> {
        let mut hist = BTreeMap::new();
        for (i, a) in self.codewords.iter().enumerate() {
            for b in &self.codewords[i + 1..] {
                *hist.entry(a.distance(b)?).or_insert(0) += 1;
            }
        }
        Ok(hist)
    }

    /// When every pair of distinct codewords meets only in {0}, predicts
    /// d = Δ_E + Δ_F from the two smallest codeword weights. Returns `None`
    /// for M < 2 or when some pair intersects nontrivially.
    pub fn trivial_intersection_distance(&self) -> Result<Option<TrivialIntersectionPrediction>> {
        if self.codewords.len() < 2 {
            return Ok(None);
        }
        for (i, a) in self.codewords.iter().enumerate() {
            for b in &self.codewords[i + 1..] {
                if a.intersection_dim(b)? != 0 {
                    return Ok(None);
                }
            }
        }
        // (dim, basis) order gives the lexicographic tie-break
        let mut by_weight: Vec<&Subspace> = self.codewords.iter().collect();
        by_weight.sort_by(|x, y| x.dim().cmp(&y.dim()).then_with(|| x.cmp(y)));
        let (e, f) = (by_weight[0], by_weight[1]);
        let ambiguous = by_weight.get(2).is_some_and(|g| g.dim() == f.dim());
        let predicted = e.dim() + f.dim();
        let measured = self.min_distance().expect("M >= 2");
        Ok(Some(TrivialIntersectionPrediction {
            delta_e: e.dim(),
            delta_f: f.dim(),
            e: e.clone(),
            f: f.clone(),
            predicted,
            measured,
            holds: predicted == measured,
            ambiguous_tie: ambiguous,
            constant_dimension_prediction: self.constant_k.map(|k| 2 * k),
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialIntersectionPrediction {
    pub delta_e: usize,
    pub delta_f: usize,
    pub e: Subspace,
    pub f: Subspace,
    /// Δ_E + Δ_F.
    pub predicted: usize,
    /// d measured over all pairs.
    pub measured: usize,
    pub holds: bool,
    /// Three or more codewords share the second-smallest weight, so the
    /// choice of F is not unique (the predicted value is unaffected).
    pub ambiguous_tie: bool,
    /// 2k for constant-dimension codes.
    pub constant_dimension_prediction: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceEgalitarianReport {
    pub egalitarian: bool,
    pub gamma: Option<Rational>,
    /// Two members of different dimension when not egalitarian.
    pub witnesses: Option<(Subspace, Subspace)>,
}

/// Egalitarian over every nonempty subfamily. Singletons force Γ to equal
/// each member's dimension, so this holds exactly when the dimension is
/// constant, and then Γ is that dimension.
pub fn subspace_weight_egalitarian_check(family: &[Subspace]) -> Result<SubspaceEgalitarianReport> {
    let first = family.first().ok_or(Error::EmptyCode)?;
    match family.iter().find(|s| s.dim() != first.dim()) {
        Some(other) => Ok(SubspaceEgalitarianReport {
            egalitarian: false,
            gamma: None,
            witnesses: Some((first.clone(), other.clone())),
        }),
        None => Ok(SubspaceEgalitarianReport {
            egalitarian: true,
            gamma: Some(Rational::from_integer(first.dim() as i64)),
            witnesses: None,
        }),
    }
}

/// Greedy partial spread: walk `candidates` in order and keep each one that
/// meets every kept subspace trivially.
pub fn greedy_partial_spread(candidates: &[Subspace]) -> Result<Vec<Subspace>> {
    let mut chosen: Vec<Subspace> = Vec::new();
    for c in candidates {
        let mut ok = true;
        for s in &chosen {
            if s.intersection_dim(c)? != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            chosen.push(c.clone());
        }
    }
    Ok(chosen)
}

/// Every family of at least `min_size` candidates that pairwise intersect
/// trivially, found by exhaustive backtracking. Fails once more than `limit`
/// families have been found.
pub fn trivially_intersecting_families(
    candidates: &[Subspace],
    min_size: usize,
    limit: usize,
) -> Result<Vec<Vec<Subspace>>> {
    let n = candidates.len();
    let mut disjoint = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let t = candidates[i].intersection_dim(&candidates[j])? == 0;
            disjoint[i][j] = t;
            disjoint[j][i] = t;
        }
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    extend_families(&disjoint, 0, &mut stack, min_size, limit, &mut out)?;
    Ok(out
        .into_iter()
        .map(|ix: Vec<usize>| ix.into_iter().map(|i| candidates[i].clone()).collect())
        .collect())
}

fn extend_families(
    disjoint: &[Vec<bool>],
    start: usize,
    stack: &mut Vec<usize>,
    min_size: usize,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if stack.len() >= min_size.max(1) {
        if out.len() >= limit {
            return Err(Error::BudgetExceeded {
                what: "trivially intersecting families".into(),
                required: limit as u128 + 1,
                budget: limit as u128,
            });
        }
        out.push(stack.clone());
    }
    for next in start..disjoint.len() {
        if stack.iter().all(|&s| disjoint[s][next]) {
            stack.push(next);
            extend_families(disjoint, next + 1, stack, min_size, limit, out)?;
            stack.pop();
        }
    }
    Ok(())
}
