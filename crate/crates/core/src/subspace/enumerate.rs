use itertools::Itertools;

use super::Subspace;
use crate::algebra::{Matrix, PrimeField, PrimePower};
use crate::error::{Error, Result};
use crate::weights::{AxiomViolation, WeightAxiomReport};

/// Default cap on the number of subspaces an enumeration may produce.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1_000_000;

/// The q-ary Gaussian coefficient, prod_{i<k} (q^n - q^i) / (q^k - q^i),
/// evaluated as one exact integer division.
pub fn gaussian_coefficient(n: u32, k: u32, q: u64) -> Result<u128> {
    PrimePower::new(q)?;
    if k > n {
        return Err(Error::DimensionTooLarge {
            n: n as usize,
            k: k as usize,
        });
    }
    let q = q as u128;
    let qn = q.checked_pow(n).ok_or(Error::Overflow("q^n"))?;
    let qk = q.checked_pow(k).ok_or(Error::Overflow("q^k"))?;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let mut qi: u128 = 1;
    for _ in 0..k {
        num = num
            .checked_mul(qn - qi)
            .ok_or(Error::Overflow("Gaussian coefficient numerator"))?;
        den = den
            .checked_mul(qk - qi)
            .ok_or(Error::Overflow("Gaussian coefficient denominator"))?;
        qi *= q;
    }
    if !num.is_multiple_of(den) {
        return Err(Error::TheoremViolation(format!(
            "Gaussian coefficient division is not exact: {num} / {den}"
        )));
    }
    Ok(num / den)
}

/// Every k-dimensional subspace of F_p^n, sorted.
///
/// Subspaces are generated from their RREF shape: choose the k pivot columns,
/// then fill every free entry (right of its row's pivot, outside the pivot
/// columns) with every field value. Each subspace arises exactly once.
pub fn enumerate_grassmannian(n: usize, k: usize, field: PrimeField, budget: u128) -> Result<Vec<Subspace>> {
    if k > n {
        return Err(Error::DimensionTooLarge { n, k });
    }
    let count = gaussian_coefficient(n as u32, k as u32, field.p() as u64)?;
    if count > budget {
        return Err(Error::BudgetExceeded {
            what: format!("G_{}({n},{k})", field.p()),
            required: count,
            budget,
        });
    }
    let p = field.p();
    let mut out = Vec::with_capacity(count as usize);
    for pivots in (0..n).combinations(k) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &pc)| {
                let pivots = &pivots;
                (pc + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (row, c))
            })
            .collect();
        let mut base = vec![0u32; k * n];
        for (row, &pc) in pivots.iter().enumerate() {
            base[row * n + pc] = 1;
        }
        let mut values = vec![0u32; free.len()];
        loop {
            let mut data = base.clone();
            for (&(r, c), &v) in free.iter().zip(&values) {
                data[r * n + c] = v;
            }
            out.push(Subspace {
                basis: Matrix::new(k, n, field, data)?,
            });
            // odometer over the free entries; stops after the all-(p-1) fill
            let mut exhausted = true;
            for v in values.iter_mut().rev() {
                *v += 1;
                if *v < p {
                    exhausted = false;
                    break;
                }
                *v = 0;
            }
            if exhausted {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All subspaces of F_p^n, ordered by dimension and then canonically.
pub fn enumerate_projective_space(n: usize, field: PrimeField, budget: u128) -> Result<Vec<Subspace>> {
    let mut total: u128 = 0;
    for k in 0..=n {
        total += gaussian_coefficient(n as u32, k as u32, field.p() as u64)?;
    }
    if total > budget {
        return Err(Error::BudgetExceeded {
            what: format!("P_{}({n})", field.p()),
            required: total,
            budget,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..=n {
        out.extend(enumerate_grassmannian(n, k, field, budget)?);
    }
    Ok(out)
}

/// Checks that w_S = dim satisfies the weight axioms on all of P_p(n), with
/// subadditivity over every pair under the subspace sum.
pub fn is_subspace_weight(n: usize, field: PrimeField, budget: u128) -> Result<WeightAxiomReport<Subspace>> {
    let all = enumerate_projective_space(n, field, budget)?;
    let pairs = (all.len() as u128).pow(2);
    if pairs > budget {
        return Err(Error::BudgetExceeded {
            what: format!("pairwise weight check on P_{}({n})", field.p()),
            required: pairs,
            budget,
        });
    }
    let report = |violation| WeightAxiomReport {
        holds: false,
        violation: Some(violation),
    };
    for a in &all {
        // dim is a usize, so nonnegativity holds by construction
        if (a.dim() == 0) != a.is_zero() {
            return Ok(report(AxiomViolation::Definiteness { x: a.clone() }));
        }
        let neg = Subspace::rowspace(&-a.basis());
        if neg != *a || neg.dim() != a.dim() {
            return Ok(report(AxiomViolation::Symmetry { x: a.clone() }));
        }
    }
    for a in &all {
        for b in &all {
            if a.sum(b)?.dim() > a.dim() + b.dim() {
                return Ok(report(AxiomViolation::Subadditivity {
                    x: a.clone(),
                    y: b.clone(),
                }));
            }
        }
    }
    Ok(WeightAxiomReport {
        holds: true,
        violation: None,
    })
}
