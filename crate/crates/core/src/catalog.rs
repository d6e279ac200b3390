//! Hand-listed reference codes used by the verification suite: small ideals
//! of M_2(F_2) and M_2(F_3) with their lifts written out element by element,
//! and a mixed-dimension code in P_2(3).

use crate::algebra::{Matrix, PrimeField};
use crate::error::Result;
use crate::ring::Side;
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct KnownIdealLift {
    pub name: &'static str,
    pub p: u64,
    pub generator: Matrix,
    pub side: Side,
    /// Ideal members, in listing order.
    pub ideal: Vec<Matrix>,
    /// Lifted codewords, canonicalized.
    pub lifted: Vec<Subspace>,
}

fn mats(p: u64, list: &[[i64; 4]]) -> Result<Vec<Matrix>> {
    let f = PrimeField::new(p)?;
    list.iter().map(|e| Matrix::from_ints(2, 2, f, e)).collect()
}

fn vector_sets(p: u64, sets: &[&[[u32; 4]]]) -> Result<Vec<Subspace>> {
    let f = PrimeField::new(p)?;
    sets.iter()
        .map(|vs| {
            let vs: Vec<Vec<u32>> = vs.iter().map(|v| v.to_vec()).collect();
            Subspace::from_vectors(4, f, &vs)
        })
        .collect()
}

pub fn binary_left_ideal() -> Result<KnownIdealLift> {
    Ok(KnownIdealLift {
        name: "left ideal of [[0,0],[0,1]] over F2",
        p: 2,
        generator: mats(2, &[[0, 0, 0, 1]])?.remove(0),
        side: Side::Left,
        ideal: mats(2, &[[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 1, 0, 1]])?,
        lifted: vector_sets(
            2,
            &[
                &[[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 0]],
                &[[1, 0, 0, 1], [0, 1, 0, 0], [1, 1, 0, 1], [0, 0, 0, 0]],
                &[[1, 0, 0, 0], [0, 1, 0, 1], [1, 1, 0, 1], [0, 0, 0, 0]],
                &[[1, 0, 0, 1], [0, 1, 0, 1], [1, 1, 0, 0], [0, 0, 0, 0]],
            ],
        )?,
    })
}

pub fn binary_right_ideal() -> Result<KnownIdealLift> {
    Ok(KnownIdealLift {
        name: "right ideal of [[0,0],[0,1]] over F2",
        p: 2,
        generator: mats(2, &[[0, 0, 0, 1]])?.remove(0),
        side: Side::Right,
        ideal: mats(2, &[[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 1, 1]])?,
        lifted: vector_sets(
            2,
            &[
                &[[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 0]],
                &[[1, 0, 0, 0], [0, 1, 1, 0], [1, 1, 1, 0], [0, 0, 0, 0]],
                &[[1, 0, 0, 0], [0, 1, 0, 1], [1, 1, 0, 1], [0, 0, 0, 0]],
                &[[1, 0, 0, 0], [0, 1, 1, 1], [1, 1, 1, 1], [0, 0, 0, 0]],
            ],
        )?,
    })
}

pub fn ternary_left_ideal() -> Result<KnownIdealLift> {
    let f = PrimeField::new(3)?;
    let ideal = mats(
        3,
        &[
            [0, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 2, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 0, 2],
            [0, 1, 0, 1],
            [0, 2, 0, 2],
            [0, 2, 0, 1],
            [0, 1, 0, 2],
        ],
    )?;
    // lifted generator matrices (I_2 | X), listed row-major
    let lifted_rows: [[i64; 8]; 9] = [
        [1, 0, 0, 0, 0, 1, 0, 0],
        [1, 0, 0, 1, 0, 1, 0, 0],
        [1, 0, 0, 2, 0, 1, 0, 0],
        [1, 0, 0, 0, 0, 1, 0, 1],
        [1, 0, 0, 0, 0, 1, 0, 2],
        [1, 0, 0, 1, 0, 1, 0, 1],
        [1, 0, 0, 2, 0, 1, 0, 2],
        [1, 0, 0, 2, 0, 1, 0, 1],
        [1, 0, 0, 1, 0, 1, 0, 2],
    ];
    let lifted = lifted_rows
        .iter()
        .map(|r| Matrix::from_ints(2, 4, f, r).map(|m| Subspace::rowspace(&m)))
        .collect::<Result<Vec<_>>>()?;
    Ok(KnownIdealLift {
        name: "left ideal of [[0,2],[0,1]] over F3",
        p: 3,
        generator: mats(3, &[[0, 2, 0, 1]])?.remove(0),
        side: Side::Left,
        ideal,
        lifted,
    })
}

/// The planes A and B of F_2^3 whose sum is the whole space.
pub fn mixed_dimension_planes() -> Result<(Subspace, Subspace)> {
    let f = PrimeField::new(2)?;
    let a = Subspace::from_vectors(3, f, &[vec![0, 0, 0], vec![1, 0, 1], vec![0, 1, 0], vec![1, 1, 1]])?;
    let b = Subspace::from_vectors(3, f, &[vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 0], vec![1, 1, 1]])?;
    Ok((a, b))
}

pub fn all_ideal_lifts() -> Result<Vec<KnownIdealLift>> {
    Ok(vec![binary_left_ideal()?, binary_right_ideal()?, ternary_left_ideal()?])
}
