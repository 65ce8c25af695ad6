//! Lattice points of Z^2, multi-indices of Z_+^2, and the combinatorial
//! primitives every bracket and module formula is built from.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::One;
use serde::{Deserialize, Serialize};

/// A point of the integer lattice Z^2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    pub m1: i64,
    pub m2: i64,
}

impl LatticePoint {
    pub const fn new(m1: i64, m2: i64) -> Self {
        LatticePoint { m1, m2 }
    }

    pub const fn zero() -> Self {
        LatticePoint { m1: 0, m2: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.m1 == 0 && self.m2 == 0
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint::new(self.m1 + other.m1, self.m2 + other.m2)
    }

    pub fn neg(&self) -> LatticePoint {
        LatticePoint::new(-self.m1, -self.m2)
    }
}

impl std::fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.m1, self.m2)
    }
}

/// A multi-index of Z_+^2, used as an exponent pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex {
    pub r1: u32,
    pub r2: u32,
}

impl MultiIndex {
    pub const fn new(r1: u32, r2: u32) -> Self {
        MultiIndex { r1, r2 }
    }

    /// Total degree |r| = r1 + r2.
    pub fn degree(&self) -> u32 {
        self.r1 + self.r2
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex::new(self.r1 + other.r1, self.r2 + other.r2)
    }

    /// All multi-indices of total degree exactly `d`, lexicographically.
    pub fn of_degree(d: u32) -> Vec<MultiIndex> {
        (0..=d).map(|r1| MultiIndex::new(r1, d - r1)).collect()
    }

    /// All multi-indices with `lo <= |r| <= hi`, lexicographically within degree.
    pub fn degree_range(lo: u32, hi: u32) -> Vec<MultiIndex> {
        (lo..=hi).flat_map(MultiIndex::of_degree).collect()
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.r1, self.r2)
    }
}

/// The 2x2 determinant with `n` as the top row: n1*m2 - n2*m1.
///
/// The argument order fixes the stacked-determinant convention once and for
/// all; every bracket coefficient in this crate goes through this function.
pub fn det_pair(n: &LatticePoint, m: &LatticePoint) -> i64 {
    n.m1 * m.m2 - n.m2 * m.m1
}

/// m1^r1 * m2^r2, with the convention 0^0 = 1.
pub fn monomial(m: &LatticePoint, r: &MultiIndex) -> BigInt {
    fn pow(base: i64, exp: u32) -> BigInt {
        if exp == 0 {
            BigInt::one()
        } else {
            BigInt::from(base).pow(exp)
        }
    }
    pow(m.m1, r.r1) * pow(m.m2, r.r2)
}

/// r! = r1! * r2!.
pub fn multi_factorial(r: &MultiIndex) -> BigInt {
    fn fact(n: u32) -> BigInt {
        (1..=n).map(BigInt::from).product::<BigInt>().max(BigInt::one())
    }
    fact(r.r1) * fact(r.r2)
}

/// Generalized binomial coefficient C(n1,m1)*C(n2,m2).
///
/// Requires m <= n componentwise.
pub fn multi_binomial(n: &MultiIndex, m: &MultiIndex) -> Result<BigInt> {
    if m.r1 > n.r1 || m.r2 > n.r2 {
        return Err(Error::InvalidParameter(format!(
            "multi_binomial requires componentwise {m} <= {n}"
        )));
    }
    Ok(binomial(n.r1, m.r1) * binomial(n.r2, m.r2))
}

/// Ordinary binomial coefficient C(n,k) for k <= n.
pub fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
