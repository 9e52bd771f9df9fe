//! Finite posets, their Möbius functions, the classical Möbius function and
//! Gaussian binomial coefficients.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{contract, Error, Result};

/// Largest poset accepted by [`FinitePoset::new`].
pub const MAX_POSET: usize = 10_000;

/// A finite poset on `0..len`, stored as up-sets and down-sets.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    /// A linear extension: `x < y` implies `x` appears first.
    linear: Vec<usize>,
}

impl FinitePoset {
    /// Builds the poset from a `leq` predicate and validates the order axioms.
    pub fn new(len: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if len > MAX_POSET {
            return Err(Error::Resource(format!("poset of {len} elements exceeds {MAX_POSET}")));
        }
        let mut up = vec![FixedBitSet::with_capacity(len); len];
        let mut down = vec![FixedBitSet::with_capacity(len); len];
        for x in 0..len {
            for y in 0..len {
                if leq(x, y) {
                    up[x].insert(y);
                    down[y].insert(x);
                }
            }
        }
        for x in 0..len {
            if !up[x].contains(x) {
                return contract(format!("relation is not reflexive at {x}"));
            }
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return contract(format!("relation is not antisymmetric at ({x}, {y})"));
                }
                if !up[y].is_subset(&up[x]) {
                    return contract(format!("relation is not transitive through {y}"));
                }
            }
        }
        let mut linear: Vec<usize> = (0..len).collect();
        linear.sort_by_key(|&x| (down[x].count_ones(..), x));
        Ok(FinitePoset { up, down, linear })
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// Elements `y` with `x <= y`.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// Elements `y` with `y <= x`.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// `μ(x, y)` for every `x`; entries with `x` not below `y` are zero.
    pub fn mobius_to(&self, top: usize) -> Result<Vec<i128>> {
        let mut mu = vec![0i128; self.len()];
        mu[top] = 1;
        for &x in self.linear.iter().rev() {
            if x == top || !self.leq(x, top) {
                continue;
            }
            let mut acc = 0i128;
            for z in self.up[x].ones() {
                if z != x && self.leq(z, top) {
                    acc = acc.checked_sub(mu[z]).ok_or_else(overflow)?;
                }
            }
            mu[x] = acc;
        }
        Ok(mu)
    }

    /// `μ(bottom, y)` for every `y`; entries with `y` not above `bottom` are zero.
    pub fn mobius_from(&self, bottom: usize) -> Result<Vec<i128>> {
        let mut mu = vec![0i128; self.len()];
        mu[bottom] = 1;
        for &y in &self.linear {
            if y == bottom || !self.leq(bottom, y) {
                continue;
            }
            let mut acc = 0i128;
            for z in self.down[y].ones() {
                if z != y && self.leq(bottom, z) {
                    acc = acc.checked_sub(mu[z]).ok_or_else(overflow)?;
                }
            }
            mu[y] = acc;
        }
        Ok(mu)
    }

    /// Full table, `table[x][y] = μ(x, y)`.
    pub fn mobius_table(&self) -> Result<Vec<Vec<i128>>> {
        (0..self.len()).map(|x| self.mobius_from(x)).collect()
    }
}

fn overflow() -> Error {
    Error::Resource("Möbius value overflowed i128".into())
}

pub fn classical_mobius(n: u64) -> i64 {
    assert!(n >= 1, "classical_mobius needs n >= 1");
    let f = arith::factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n`; zero when `k > n`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> BigInt {
    assert!(q >= 2, "gaussian_binomial needs q >= 2");
    if k > n {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    arith::div_exact(&num, &den, "gaussian_binomial")
}
