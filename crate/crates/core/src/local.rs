//! Square classes of `Q_p`, the Hilbert symbol, and `D_4`-extensions of `Q_p`.
//!
//! A class is `p^v · u` with `v ∈ {0, 1}`. For odd `p` the unit part is 1 or a
//! fixed non-residue `u` (the smallest positive one) and
//!
//! `(p^α a, p^β b) = (-1)^{αβ(p-1)/2} (a/p)^β (b/p)^α`.
//!
//! For `p = 2` the unit part is `(-1)^s 5^t`, stored as the bits `s, t`, and
//!
//! `(2^α u, 2^β v) = (-1)^{ε(u)ε(v) + α ω(v) + β ω(u)}`
//!
//! with `ε(u) = (u - 1)/2` and `ω(u) = (u^2 - 1)/8` mod 2, so `ε = s`, `ω = t`.
//! All values at `p = 2`:
//!
//! ```text
//!          1   -1    5   -5    2   -2   10  -10
//!     1    +    +    +    +    +    +    +    +
//!    -1    +    -    +    -    +    -    +    -
//!     5    +    +    +    +    -    -    -    -
//!    -5    +    -    +    -    -    +    -    +
//!     2    +    +    -    -    +    +    -    -
//!    -2    +    -    -    +    +    -    -    +
//!    10    +    +    -    -    -    -    +    +
//!   -10    +    -    -    +    -    +    +    -
//! ```
//!
//! A `D_4^{a,b}`-extension exists iff `(a, b) = 1`, and for each admissible
//! pair the extensions correspond to the classes outside `<a, b>` up to that
//! subgroup, which gives `|Q_p^×/Q_p^×2| / 4` of them.

use std::fmt;

use crate::arith;
use crate::error::{contract, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    pub p: u64,
    /// Valuation mod 2.
    pub valuation: u8,
    /// Odd `p`: 0 for squares, 1 for non-residues. `p = 2`: bit 0 is the
    /// sign, bit 1 the factor 5.
    pub unit: u8,
}

/// Smallest positive quadratic non-residue mod an odd prime.
pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| legendre(a, p) == -1).expect("odd primes have non-residues")
}

/// Legendre symbol by Euler's criterion.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let mut r = 1u128;
    let (mut base, mut e) = (a as u128, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

impl SquareClass {
    pub fn new(p: u64, valuation: u8, unit: u8) -> Result<Self> {
        if !arith::is_prime(p) {
            return contract(format!("{p} is not prime"));
        }
        let max_unit = if p == 2 { 4 } else { 2 };
        if valuation > 1 || unit >= max_unit {
            return contract("square class components out of range");
        }
        Ok(SquareClass { p, valuation, unit })
    }

    /// The class of a nonzero integer.
    pub fn from_integer(p: u64, a: i64) -> Result<Self> {
        if a == 0 {
            return contract("zero has no square class");
        }
        if !arith::is_prime(p) {
            return contract(format!("{p} is not prime"));
        }
        let mut u = a as i128;
        let mut v = 0u8;
        while u % p as i128 == 0 {
            u /= p as i128;
            v ^= 1;
        }
        let unit = if p == 2 {
            match u.rem_euclid(8) {
                1 => 0,
                7 => 1,
                5 => 2,
                _ => 3,
            }
        } else {
            (legendre(u.rem_euclid(p as i128) as u64, p) == -1) as u8
        };
        Ok(SquareClass { p, valuation: v, unit })
    }

    pub fn is_trivial(&self) -> bool {
        self.valuation == 0 && self.unit == 0
    }

    /// Product in the class group.
    pub fn mul(&self, other: &Self) -> Self {
        SquareClass { p: self.p, valuation: self.valuation ^ other.valuation, unit: self.unit ^ other.unit }
    }

    /// Integer representative: `p^v · {1, u}` or `2^v · ±5^t`.
    pub fn representative(&self) -> i64 {
        let pv = if self.valuation == 1 { self.p as i64 } else { 1 };
        let unit = if self.p == 2 {
            let sign = if self.unit & 1 == 1 { -1 } else { 1 };
            let five = if self.unit & 2 == 2 { 5 } else { 1 };
            sign * five
        } else if self.unit == 1 {
            smallest_nonresidue(self.p) as i64
        } else {
            1
        };
        pv * unit
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

/// All classes of `Q_p^× / Q_p^×2`: `1, p, u, up` for odd `p`, and
/// `1, -1, 5, -5, 2, -2, 10, -10` for `p = 2`.
pub fn square_class_reps(p: u64) -> Result<Vec<SquareClass>> {
    if !arith::is_prime(p) {
        return contract(format!("{p} is not prime"));
    }
    Ok(if p == 2 {
        (0..2u8).flat_map(|v| (0..4u8).map(move |u| SquareClass { p, valuation: v, unit: u })).collect()
    } else {
        [(0, 0), (1, 0), (0, 1), (1, 1)]
            .into_iter()
            .map(|(v, u)| SquareClass { p, valuation: v, unit: u })
            .collect()
    })
}

/// The Hilbert symbol `(a, b)_p` as `+1` or `-1`.
pub fn hilbert_symbol(a: &SquareClass, b: &SquareClass) -> Result<i8> {
    if a.p != b.p {
        return contract("classes over different primes");
    }
    let p = a.p;
    let (alpha, beta) = (a.valuation as u64, b.valuation as u64);
    let exponent = if p == 2 {
        let eps = |u: u8| (u & 1) as u64;
        let omega = |u: u8| ((u >> 1) & 1) as u64;
        eps(a.unit) * eps(b.unit) + alpha * omega(b.unit) + beta * omega(a.unit)
    } else {
        alpha * beta * ((p - 1) / 2) + beta * a.unit as u64 + alpha * b.unit as u64
    };
    Ok(if exponent % 2 == 0 { 1 } else { -1 })
}

/// Unordered pairs `{a, b}` of distinct nontrivial classes with `(a, b)_p = 1`.
pub fn d4_admissible_pairs(p: u64) -> Result<Vec<(SquareClass, SquareClass)>> {
    let reps: Vec<SquareClass> = square_class_reps(p)?.into_iter().filter(|c| !c.is_trivial()).collect();
    let mut out = Vec::new();
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            if hilbert_symbol(a, b)? == 1 {
                out.push((*a, *b));
            }
        }
    }
    Ok(out)
}

/// Number of `D_4`-extensions of `Q_p`.
pub fn d4_extension_count_qp(p: u64) -> Result<u64> {
    let classes = square_class_reps(p)?.len() as u64;
    Ok(d4_admissible_pairs(p)?.len() as u64 * (classes / 4))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(p: u64, a: i64) -> SquareClass {
        SquareClass::from_integer(p, a).unwrap()
    }

    fn names(pairs: &[(SquareClass, SquareClass)]) -> Vec<(i64, i64)> {
        pairs.iter().map(|(a, b)| (a.representative(), b.representative())).collect()
    }

    #[test]
    fn representatives() {
        let r: Vec<i64> = square_class_reps(2).unwrap().iter().map(|c| c.representative()).collect();
        assert_eq!(r, vec![1, -1, 5, -5, 2, -2, 10, -10]);
        let r: Vec<i64> = square_class_reps(7).unwrap().iter().map(|c| c.representative()).collect();
        assert_eq!(r, vec![1, 7, 3, 21]);
        // u = 2 for p = 3, and 2 ≡ -1 is the same class as -1
        assert_eq!(cls(3, -1), cls(3, 2));
        assert_eq!(cls(3, -3), cls(3, 6));
        assert!(square_class_reps(9).is_err());
        for p in [2u64, 3, 5, 7, 11] {
            for c in square_class_reps(p).unwrap() {
                assert_eq!(cls(p, c.representative()), c);
            }
        }
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(hilbert_symbol(&cls(2, 2), &cls(2, -2)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&cls(7, 7), &cls(7, 3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&cls(2, -1), &cls(2, -1)).unwrap(), -1);
        assert!(hilbert_symbol(&cls(2, 3), &cls(3, 2)).is_err());
        // (p, u) is a division algebra
        for p in [3u64, 5, 7, 11, 13] {
            let u = smallest_nonresidue(p) as i64;
            assert_eq!(hilbert_symbol(&cls(p, p as i64), &cls(p, u)).unwrap(), -1);
        }
    }

    /// `(a, b)_p = 1` iff `z^2 = a x^2 + b y^2` has a nonzero solution; checked
    /// by searching primitive solutions modulo `p^k` large enough for Hensel lifting.
    fn symbol_by_search(p: u64, a: i64, b: i64) -> i8 {
        let k = if p == 2 { 5 } else { 3 };
        let m = (p as i64).pow(k);
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    let primitive = x % p as i64 != 0 || y % p as i64 != 0 || z % p as i64 != 0;
                    if primitive && (z * z - a * x * x - b * y * y).rem_euclid(m) == 0 {
                        return 1;
                    }
                }
            }
        }
        -1
    }

    #[test]
    fn symbol_matches_conic_solvability() {
        // the representatives have valuation <= 1, so solutions mod p^3 (p odd)
        // and mod 32 (p = 2) decide solvability
        for p in [3u64, 5] {
            let reps = square_class_reps(p).unwrap();
            for a in &reps {
                for b in &reps {
                    let expected = symbol_by_search(p, a.representative(), b.representative());
                    assert_eq!(hilbert_symbol(a, b).unwrap(), expected, "p={p} ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn symbol_axioms() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let reps = square_class_reps(p).unwrap();
            let minus_one = cls(p, -1);
            for a in &reps {
                assert_eq!(hilbert_symbol(a, &a.mul(&minus_one)).unwrap(), 1);
                assert_eq!(hilbert_symbol(a, a).unwrap(), hilbert_symbol(a, &minus_one).unwrap());
                if !a.is_trivial() {
                    assert!(reps.iter().any(|b| hilbert_symbol(a, b).unwrap() == -1));
                }
                for b in &reps {
                    let ab = hilbert_symbol(a, b).unwrap();
                    assert_eq!(ab, hilbert_symbol(b, a).unwrap());
                    for c in &reps {
                        let lhs = hilbert_symbol(a, &b.mul(c)).unwrap();
                        assert_eq!(lhs, ab * hilbert_symbol(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn admissible_pairs() {
        let pairs = names(&d4_admissible_pairs(2).unwrap());
        assert_eq!(pairs.len(), 9);
        for pair in [(-1, 2), (-1, 5), (5, -5), (2, -2), (-2, -10), (10, -10)] {
            assert!(pairs.contains(&pair) || pairs.contains(&(pair.1, pair.0)), "{pair:?}");
        }
        assert_eq!(names(&d4_admissible_pairs(3).unwrap()), vec![(3, 6)]);
        assert!(d4_admissible_pairs(5).unwrap().is_empty());
    }

    #[test]
    fn extension_counts() {
        let counts: Vec<u64> =
            [2, 3, 5, 7, 11, 13].iter().map(|&p| d4_extension_count_qp(p).unwrap()).collect();
        assert_eq!(counts, vec![18, 1, 0, 1, 1, 0]);
    }

    #[test]
    fn counts_do_not_depend_on_the_nonresidue() {
        // the class of any non-residue is the same, so every choice gives the same pairs
        for p in [3u64, 7, 11, 13, 17] {
            let nonresidues: Vec<i64> = (2..p as i64).filter(|&a| legendre(a as u64, p) == -1).collect();
            for &u in &nonresidues {
                assert_eq!(cls(p, u), cls(p, smallest_nonresidue(p) as i64));
            }
        }
    }
}
