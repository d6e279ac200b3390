//! The lifting construction A -> <(I_k | A)> and the parameter checks for
//! lifted codes.

use serde::Serialize;

use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::rank_code::RankMetricCode;
use crate::ring::{is_idempotent, ElementClass, MatrixRing, Side};
use crate::subspace::{Subspace, SubspaceCode, SubspaceCodeParams};

/// The k x (k + l) matrix `(I_k | A)`.
pub fn lift(a: &Matrix) -> Matrix {
    Matrix::identity(a.rows(), a.field())
        .hstack(a)
        .expect("identity has as many rows as A")
}

/// The row space of the lift of `a`.
pub fn lift_subspace(a: &Matrix) -> Subspace {
    // (I_k | A) is already reduced, so this is just a wrap.
    Subspace::rowspace(&lift(a))
}

/// Recovers A from a k-dimensional subspace of F^{k+l} whose canonical basis
/// starts with I_k; `None` for anything that is not a lift.
pub fn unlift(s: &Subspace, k: usize) -> Option<Matrix> {
    let b = s.basis();
    if b.rows() != k || b.cols() < k {
        return None;
    }
    (b.columns(0, k) == Matrix::identity(k, s.field())).then(|| b.columns(k, b.cols()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SourceParams {
    pub k: usize,
    pub l: usize,
    pub rho: Option<u32>,
    pub delta: Option<usize>,
}

/// The lift of a rank-metric code, with the parameters it was measured to
/// have and, for linear sources, the ones it must have: (k+l, q^ρ, 2δ, k)_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCode {
    pub source: RankMetricCode,
    pub codewords: SubspaceCode,
    pub claimed: Option<SubspaceCodeParams>,
}

impl LiftedCode {
    pub fn measured(&self) -> SubspaceCodeParams {
        self.codewords.params()
    }

    /// `None` when no claim applies (non-linear source, or no distance).
    pub fn theorem_ok(&self) -> Option<bool> {
        self.claimed.map(|c| c == self.measured())
    }

    pub fn report(&self) -> LiftReport {
        let (k, l) = self.source.shape();
        LiftReport {
            source: SourceParams {
                k,
                l,
                rho: self.source.rho(),
                delta: self.source.delta(),
            },
            lifted: self.measured(),
            claimed: self.claimed,
            theorem_ok: self.theorem_ok(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub source: SourceParams,
    pub lifted: SubspaceCodeParams,
    pub claimed: Option<SubspaceCodeParams>,
    pub theorem_ok: Option<bool>,
}

/// Lifts every codeword and recomputes the subspace code's parameters from
/// scratch. For a linear source with a defined δ the measured parameters
/// must equal (k+l, p^ρ, 2δ, k)_p, otherwise this returns
/// [`Error::TheoremViolation`]. Non-linear sources are lifted and measured
/// without a claim.
pub fn lift_code(code: &RankMetricCode) -> Result<LiftedCode> {
    let (k, l) = code.shape();
    let subspaces: Vec<Subspace> = code.elements().iter().map(lift_subspace).collect();
    let codewords = SubspaceCode::from_subspaces(subspaces)?;
    if codewords.len() != code.len() {
        return Err(Error::TheoremViolation(format!(
            "lifting collapsed {} codewords to {} subspaces",
            code.len(),
            codewords.len()
        )));
    }
    let q = code.field().p();
    let claimed = match (code.rho(), code.delta()) {
        (Some(rho), Some(delta)) => Some(SubspaceCodeParams {
            n: k + l,
            m: (q as usize).pow(rho),
            d: Some(2 * delta),
            k: Some(k),
            q,
        }),
        _ => None,
    };
    let lifted = LiftedCode {
        source: code.clone(),
        codewords,
        claimed,
    };
    if lifted.theorem_ok() == Some(false) {
        return Err(Error::TheoremViolation(format!(
            "lift measured {} but the source predicts {}",
            lifted.measured(),
            claimed.expect("claim exists")
        )));
    }
    Ok(lifted)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealLiftReport {
    pub generator: Matrix,
    pub side: Side,
    pub ideal_size: usize,
    pub lift: LiftReport,
    /// (4, p^2, 2, 2)_p.
    pub expected: SubspaceCodeParams,
    pub ok: bool,
}

/// Builds the one-sided ideal of a nontrivial idempotent, lifts it, and
/// checks that the lift is a (4, p^2, 2, 2)_p code.
pub fn verify_idempotent_ideal_lift(ring: &MatrixRing, a: &Matrix, side: Side) -> Result<IdealLiftReport> {
    if a.shape() != (2, 2)
        || a.field() != ring.field()
        || !is_idempotent(a)
        || ring.classify(a) != ElementClass::ZeroDivisor
    {
        return Err(Error::NotNontrivialIdempotent);
    }
    let ideal = ring.principal_ideal(a, side)?;
    let ideal_size = ideal.len();
    let code = RankMetricCode::from_matrices(ideal.elements)?;
    let lifted = lift_code(&code)?;
    let p = ring.p();
    let expected = SubspaceCodeParams {
        n: 4,
        m: (p * p) as usize,
        d: Some(2),
        k: Some(2),
        q: p,
    };
    let ok = lifted.measured() == expected;
    Ok(IdealLiftReport {
        generator: a.clone(),
        side,
        ideal_size,
        lift: lifted.report(),
        expected,
        ok,
    })
}
