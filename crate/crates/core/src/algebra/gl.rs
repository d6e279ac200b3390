use serde::Serialize;

use super::field::is_prime;
use crate::error::{Error, Result};

/// A prime power q = p^r, validated by factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimePower {
    q: u64,
    p: u64,
    r: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let p = (2..=q)
            .find(|d| d * d > q || q.is_multiple_of(*d))
            .map(|d| if d * d > q { q } else { d })
            .unwrap_or(q);
        debug_assert!(is_prime(p));
        let mut rest = q;
        let mut r = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            r += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Ok(Self { q, p, r })
    }

    pub fn q(self) -> u64 {
        self.q
    }

    pub fn characteristic(self) -> u64 {
        self.p
    }

    pub fn exponent(self) -> u32 {
        self.r
    }

    pub fn is_prime(self) -> bool {
        self.r == 1
    }
}

/// Parameters for |GL(n, q)|.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlOrderQuery {
    pub q: PrimePower,
    pub n: u32,
}

impl GlOrderQuery {
    pub fn new(q: u64, n: u32) -> Result<Self> {
        Ok(Self {
            q: PrimePower::new(q)?,
            n,
        })
    }
}

/// |GL(n, q)| = prod_{i<n} (q^n - q^i).
pub fn gl_order(query: GlOrderQuery) -> Result<u128> {
    let q = query.q.q() as u128;
    let qn = q.checked_pow(query.n).ok_or(Error::Overflow("q^n"))?;
    let mut acc: u128 = 1;
    let mut qi: u128 = 1;
    for _ in 0..query.n {
        acc = acc
            .checked_mul(qn - qi)
            .ok_or(Error::Overflow("|GL(n,q)|"))?;
        qi *= q;
    }
    Ok(acc)
}
