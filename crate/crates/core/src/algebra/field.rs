//! Prime fields F_p with residues stored as machine integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

/// Exclusive upper bound on the modulus. Products of two residues stay well
/// inside `u64`.
pub const MAX_MODULUS: u32 = 1 << 15;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS as u64 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Wraps `value` as an element, rejecting anything outside `[0, p)`.
    pub fn element(self, value: u64) -> Result<FieldElement> {
        if value >= self.p as u64 {
            return Err(Error::ValueOutOfRange { value, p: self.p });
        }
        Ok(FieldElement {
            value: value as u32,
            field: self,
        })
    }

    /// Reduces an arbitrary integer into the field.
    pub fn reduce(self, value: i64) -> FieldElement {
        FieldElement {
            value: value.rem_euclid(self.p as i64) as u32,
            field: self,
        }
    }

    pub fn zero(self) -> FieldElement {
        FieldElement { value: 0, field: self }
    }

    pub fn one(self) -> FieldElement {
        FieldElement { value: 1, field: self }
    }

    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.p).map(move |value| FieldElement { value, field: self })
    }

    // Raw residue arithmetic used by the matrix layer.

    #[inline]
    pub(crate) fn add_raw(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn neg_raw(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub(crate) fn mul_raw(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Inverse by Fermat's little theorem; `a` must be nonzero.
    pub(crate) fn inv_raw(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let mut base = a as u64;
        let mut exp = self.p - 2;
        let m = self.p as u64;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc as u32
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A residue in `[0, p)` tagged with its field.
///
/// The `std::ops` impls panic when the operands come from different fields;
/// use the `checked_*` methods when that can happen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Self) -> Result<PrimeField> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p,
                right: other.field.p,
            });
        }
        Ok(self.field)
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(Self {
            value: f.add_raw(self.value, other.value),
            field: f,
        })
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(Self {
            value: f.sub_raw(self.value, other.value),
            field: f,
        })
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(Self {
            value: f.mul_raw(self.value, other.value),
            field: f,
        })
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(Self {
            value: self.field.inv_raw(self.value),
            field: self.field,
        })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: self.field.neg_raw(self.value),
            field: self.field,
        }
    }
}
