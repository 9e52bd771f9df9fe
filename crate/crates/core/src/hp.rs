//! Hilbert–Poincaré series of `gr(F_p[[G]])` for the classified pro-p families.
//!
//! Closed forms used by [`family_series`]:
//!
//! | family                         | series                                              |
//! |--------------------------------|-----------------------------------------------------|
//! | free of rank `d`               | `1 / (1 - d t)`                                     |
//! | Demushkin of rank `d`          | `1 / (1 - d t + t^2)`                               |
//! | `d + 1` copies of `C_p`        | `(1 + t + ... + t^(p-1)) / (1 - d t - ... - d t^(p-1))` |
//! | `Z_2^d ⋊ C_2`                  | `(1 + t) / (1 - t)^d`                               |
//! | Demushkin ranks `d_i`, free `e`| `1 / (1 - (d_1 + ... + d_r + e) t + r t^2)`         |
//! | `C_p * (free of rank d)`       | `(1 + t + ... + t^(p-1)) / (1 - d t - ... - d t^p)` |
//!
//! The two `C_p` rows look alike but are different groups. A free product of
//! `d + 1` copies of `C_p` has a denominator of degree `p - 1`, while `C_p`
//! times a free group of rank `d` has one of degree `p`. Both follow from the
//! Lemaire free-product formula (see [`free_product_series`]) and the
//! agreement is a unit test below; for `p = 2` both denominators reduce to
//! `1 - d t` and `1 - d t - d t^2` respectively.
//!
//! The semidirect family uses `(1 + t)/(1 - t)^d`, i.e. `c_1 = d + 1`,
//! `c_{2^s} = d` and `c_n = 0` otherwise. This is what the filtration
//! `G_(n) = H^(2^s)` forces, and is checked against finite quotients
//! `(Z/2^K)^d ⋊ C_2` in the group engine tests.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, binomial};
use crate::error::{contract, Result};
use crate::series::{Rational, TruncatedSeries};

/// Shape of the single defining relation of a Demushkin group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationCase {
    /// `x_1^q [x_1,x_2] [x_3,x_4] ...`, `q != 2`.
    R1,
    /// `x_1^2 x_2^(2^f) [x_2,x_3] [x_4,x_5] ...`, `q = 2`, odd rank.
    R2,
    /// `x_1^(2 + 2^f) [x_1,x_2] [x_3,x_4] ...`, `q = 2`, even rank.
    R3,
    /// `x_1^2 [x_1,x_2] x_3^(2^f) [x_3,x_4] ...`, `q = 2`, even rank.
    R4,
}

impl fmt::Display for RelationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationCase::R1 => "r1",
            RelationCase::R2 => "r2",
            RelationCase::R3 => "r3",
            RelationCase::R4 => "r4",
        };
        f.write_str(s)
    }
}

/// The `f` invariant; `Infinite` follows the convention `2^∞ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FInvariant {
    Finite(u32),
    Infinite,
}

impl FInvariant {
    /// `2^f` as an exponent, with `2^∞ = 0`.
    pub fn two_power(self) -> i64 {
        match self {
            FInvariant::Finite(f) => 1i64 << f,
            FInvariant::Infinite => 0,
        }
    }
}

impl fmt::Display for FInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FInvariant::Finite(v) => write!(f, "{v}"),
            FInvariant::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DemushkinRelation {
    pub case: RelationCase,
    pub q: u64,
    pub f: FInvariant,
}

impl DemushkinRelation {
    /// Checks the case constraints against the rank `d`.
    pub fn validate(&self, d: u32) -> Result<()> {
        if self.q < 2 || arith::factorize(self.q).len() != 1 {
            return contract(format!("q = {} is not a prime power", self.q));
        }
        if let FInvariant::Finite(f) = self.f {
            if f < 2 {
                return contract("f must be at least 2 or infinite");
            }
            if f > 62 {
                return contract("f is too large to materialise 2^f");
            }
        }
        let even = d.is_multiple_of(2);
        let ok = match self.case {
            RelationCase::R1 => self.q != 2 && even,
            RelationCase::R2 => self.q == 2 && !even,
            RelationCase::R3 => self.q == 2 && even,
            RelationCase::R4 => self.q == 2 && even && self.f != FInvariant::Infinite,
        };
        if !ok {
            return contract(format!(
                "relation case {} with q = {}, f = {} is incompatible with rank {d}",
                self.case, self.q, self.f
            ));
        }
        Ok(())
    }
}

/// One of the classified families of finitely generated pro-p groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    FreeProP {
        rank: u32,
    },
    /// The relation only matters for extension counting; the series depends on `rank` alone.
    Demushkin {
        rank: u32,
        relation: Option<DemushkinRelation>,
    },
    FreeProdCyclicP {
        p: u64,
        copies: u32,
    },
    /// `Z_2^d ⋊ C_2` with the inversion action.
    SuperPyth {
        d: u32,
    },
    MixedFreeProd {
        demushkin_ranks: Vec<u32>,
        free_rank: u32,
    },
    /// `C_p * S` with `S` free of rank `free_rank`.
    CyclicPFree {
        p: u64,
        free_rank: u32,
    },
}

impl GroupFamily {
    pub fn free(rank: u32) -> Self {
        GroupFamily::FreeProP { rank }
    }

    pub fn demushkin(rank: u32) -> Self {
        GroupFamily::Demushkin { rank, relation: None }
    }

    /// Checks the family's own parameters and its compatibility with `p`.
    pub fn validate(&self, p: u64) -> Result<()> {
        if !arith::is_prime(p) {
            return contract(format!("{p} is not prime"));
        }
        match self {
            GroupFamily::FreeProP { .. } => Ok(()),
            GroupFamily::Demushkin { rank, relation } => {
                if *rank < 2 {
                    return contract("Demushkin groups have rank at least 2");
                }
                if let Some(rel) = relation {
                    rel.validate(*rank)?;
                    if arith::log_exact(rel.q, p).is_none() {
                        return contract(format!("q = {} is not a power of p = {p}", rel.q));
                    }
                }
                Ok(())
            }
            GroupFamily::FreeProdCyclicP { p: fp, copies } => {
                if *fp != p {
                    return contract(format!("free product of C_{fp} needs p = {fp}, got {p}"));
                }
                if *copies == 0 {
                    return contract("at least one cyclic factor is required");
                }
                Ok(())
            }
            GroupFamily::SuperPyth { .. } => {
                if p != 2 {
                    return contract("Z_2^d ⋊ C_2 is a pro-2 group; p must be 2");
                }
                Ok(())
            }
            GroupFamily::MixedFreeProd { demushkin_ranks, .. } => {
                if demushkin_ranks.iter().any(|&d| d < 2) {
                    return contract("Demushkin factors have rank at least 2");
                }
                Ok(())
            }
            GroupFamily::CyclicPFree { p: fp, .. } => {
                if *fp != p {
                    return contract(format!("C_{fp} * free needs p = {fp}, got {p}"));
                }
                Ok(())
            }
        }
    }

    /// Numerator and denominator of the closed-form series, as integer polynomials.
    pub fn rational_function(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let b = |v: i64| BigInt::from(v);
        match self {
            GroupFamily::FreeProP { rank } => (vec![b(1)], vec![b(1), -b(*rank as i64)]),
            GroupFamily::Demushkin { rank, .. } => (vec![b(1)], vec![b(1), -b(*rank as i64), b(1)]),
            GroupFamily::FreeProdCyclicP { p, copies } => {
                let d = b(*copies as i64 - 1);
                let mut den = vec![b(1)];
                den.extend(std::iter::repeat_n(-d, *p as usize - 1));
                (vec![b(1); *p as usize], den)
            }
            GroupFamily::SuperPyth { d } => {
                // (1 - t)^d
                let den = (0..=*d as usize)
                    .map(|k| {
                        let c = binomial(&b(*d as i64), k);
                        if k % 2 == 1 {
                            -c
                        } else {
                            c
                        }
                    })
                    .collect();
                (vec![b(1), b(1)], den)
            }
            GroupFamily::MixedFreeProd { demushkin_ranks, free_rank } => {
                let total: i64 = demushkin_ranks.iter().map(|&d| d as i64).sum::<i64>() + *free_rank as i64;
                (vec![b(1)], vec![b(1), -b(total), b(demushkin_ranks.len() as i64)])
            }
            GroupFamily::CyclicPFree { p, free_rank } => {
                let d = b(*free_rank as i64);
                let mut den = vec![b(1)];
                den.extend(std::iter::repeat_n(-d, *p as usize));
                (vec![b(1); *p as usize], den)
            }
        }
    }

    /// Short machine-friendly name used in CLI output.
    pub fn tag(&self) -> &'static str {
        match self {
            GroupFamily::FreeProP { .. } => "free",
            GroupFamily::Demushkin { .. } => "demushkin",
            GroupFamily::FreeProdCyclicP { .. } => "free-product-cyclic",
            GroupFamily::SuperPyth { .. } => "superpythagorean",
            GroupFamily::MixedFreeProd { .. } => "mixed",
            GroupFamily::CyclicPFree { .. } => "cyclic-free",
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::FreeProP { rank } => write!(f, "free pro-p group of rank {rank}"),
            GroupFamily::Demushkin { rank, relation: None } => {
                write!(f, "Demushkin group of rank {rank}")
            }
            GroupFamily::Demushkin { rank, relation: Some(r) } => write!(
                f,
                "Demushkin group of rank {rank} (case {}, q = {}, f = {})",
                r.case, r.q, r.f
            ),
            GroupFamily::FreeProdCyclicP { p, copies } => {
                write!(f, "free product of {copies} copies of C_{p}")
            }
            GroupFamily::SuperPyth { d } => write!(f, "Z_2^{d} ⋊ C_2"),
            GroupFamily::MixedFreeProd { demushkin_ranks, free_rank } => write!(
                f,
                "free product of Demushkin groups of ranks {demushkin_ranks:?} and a free group of rank {free_rank}"
            ),
            GroupFamily::CyclicPFree { p, free_rank } => {
                write!(f, "C_{p} * free pro-{p} group of rank {free_rank}")
            }
        }
    }
}

/// Hilbert–Poincaré series of `gr(F_p[[G]])` for `G` in `family`, to `order`.
pub fn family_series(family: &GroupFamily, p: u64, order: usize) -> Result<TruncatedSeries> {
    family.validate(p)?;
    let (num, den) = family.rational_function();
    TruncatedSeries::from_rational_function(&num, &den, order)
}

/// Series of a free product: the n-ary fold of `(P_1^{-1} + P_2^{-1} - 1)^{-1}`.
pub fn free_product_series(factors: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    if factors.len() < 2 {
        return contract("a free product needs at least two factors");
    }
    let order = factors[0].order();
    let mut acc = TruncatedSeries::zero(order);
    for f in factors {
        if f.order() != order {
            return contract("free product factors must share a truncation order");
        }
        if !f.coeff(0).is_one() {
            return contract("free product factors must have constant term 1");
        }
        acc = acc.add(&f.inverse()?)?;
    }
    let shift = Rational::from_integer(BigInt::from(factors.len() - 1));
    let one_shift = TruncatedSeries::one(order).scale(&shift);
    acc.sub(&one_shift)?.inverse()
}

/// `(1 - t^step)^e` truncated at `order`, for any integer exponent.
fn one_minus_power(step: usize, e: &BigInt, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    for k in 0..=order / step {
        let c = binomial(e, k);
        coeffs[k * step] = if k % 2 == 1 { -c } else { c };
    }
    TruncatedSeries::from_integers(&coeffs, order)
}

/// Expands `∏_{n=1}^{N} ((1 - t^{np}) / (1 - t^n))^{c_n}` to order `N = c.len()`.
pub fn jennings_product(c: &[BigInt], p: u64, order: usize) -> Result<TruncatedSeries> {
    if c.len() != order {
        return contract(format!("expected {order} dimensions, got {}", c.len()));
    }
    if c.iter().any(|x| x.is_negative()) {
        return contract("dimensions must be non-negative");
    }
    let mut acc = TruncatedSeries::one(order);
    for (i, cn) in c.iter().enumerate() {
        if cn.is_zero() {
            continue;
        }
        let n = i + 1;
        acc = acc.multiply(&one_minus_power(n, &(-cn), order))?;
        let np = n.saturating_mul(p as usize);
        if np <= order {
            acc = acc.multiply(&one_minus_power(np, cn, order))?;
        }
    }
    Ok(acc)
}

/// Expands `∏_{n=1}^{N} (1 - t^n)^{-w_n}`; entries may be negative.
pub fn witt_product(w: &[BigInt], order: usize) -> Result<TruncatedSeries> {
    if w.len() != order {
        return contract(format!("expected {order} exponents, got {}", w.len()));
    }
    let mut acc = TruncatedSeries::one(order);
    for (i, wn) in w.iter().enumerate() {
        if !wn.is_zero() {
            acc = acc.multiply(&one_minus_power(i + 1, &(-wn), order))?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.to_integers().unwrap().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn family_series_examples() {
        let s = family_series(&GroupFamily::free(2), 5, 4).unwrap();
        assert_eq!(ints(&s), vec![1, 2, 4, 8, 16]);
        let s = family_series(&GroupFamily::demushkin(4), 3, 3).unwrap();
        assert_eq!(ints(&s), vec![1, 4, 15, 56]);
        let s = family_series(&GroupFamily::SuperPyth { d: 1 }, 2, 3).unwrap();
        assert_eq!(ints(&s), vec![1, 2, 2, 2]);
    }

    #[test]
    fn family_prime_mismatch_is_rejected() {
        let e = family_series(&GroupFamily::SuperPyth { d: 2 }, 3, 4).unwrap_err();
        assert!(matches!(e, Error::Contract(_)));
        let e = family_series(&GroupFamily::FreeProdCyclicP { p: 2, copies: 3 }, 3, 4);
        assert!(matches!(e, Err(Error::Contract(_))));
        let e = family_series(&GroupFamily::CyclicPFree { p: 3, free_rank: 1 }, 2, 4);
        assert!(matches!(e, Err(Error::Contract(_))));
        assert!(family_series(&GroupFamily::free(2), 4, 4).is_err());
        assert!(family_series(&GroupFamily::demushkin(1), 2, 4).is_err());
    }

    #[test]
    fn demushkin_relation_constraints() {
        let rel = |case, q, f| DemushkinRelation { case, q, f };
        use FInvariant::*;
        use RelationCase::*;
        assert!(rel(R1, 3, Finite(2)).validate(4).is_ok());
        assert!(rel(R1, 3, Finite(2)).validate(3).is_err());
        assert!(rel(R1, 2, Finite(2)).validate(4).is_err());
        assert!(rel(R2, 2, Finite(2)).validate(3).is_ok());
        assert!(rel(R2, 2, Finite(2)).validate(4).is_err());
        assert!(rel(R3, 2, Infinite).validate(4).is_ok());
        assert!(rel(R4, 2, Infinite).validate(4).is_err());
        assert!(rel(R4, 2, Finite(3)).validate(6).is_ok());
        assert!(rel(R3, 2, Finite(1)).validate(4).is_err());
        let fam = GroupFamily::Demushkin { rank: 4, relation: Some(rel(R1, 9, Finite(2))) };
        assert!(fam.validate(3).is_ok());
        assert!(fam.validate(5).is_err());
    }

    #[test]
    fn free_product_examples() {
        let rank1 = family_series(&GroupFamily::free(1), 2, 6).unwrap();
        let fp = free_product_series(&[rank1.clone(), rank1.clone()]).unwrap();
        assert_eq!(fp, family_series(&GroupFamily::free(2), 2, 6).unwrap());

        let c2 = TruncatedSeries::from_integers(&[1, 1], 4);
        let fp = free_product_series(&[c2.clone(), c2]).unwrap();
        assert_eq!(ints(&fp), vec![1, 2, 2, 2, 2]);

        let dem = family_series(&GroupFamily::demushkin(2), 3, 8).unwrap();
        let fp = free_product_series(&[dem, family_series(&GroupFamily::free(1), 3, 8).unwrap()]).unwrap();
        let expected = TruncatedSeries::from_rational_function(&[1], &[1, -3, 1], 8).unwrap();
        assert_eq!(fp, expected);
    }

    #[test]
    fn free_product_needs_two_factors() {
        let one = TruncatedSeries::one(3);
        assert!(free_product_series(&[]).is_err());
        assert!(free_product_series(&[one]).is_err());
    }

    #[test]
    fn cyclic_free_products_match_lemaire_fold() {
        for p in [2u64, 3, 5] {
            let cp = family_series(&GroupFamily::FreeProdCyclicP { p, copies: 1 }, p, 12).unwrap();
            for copies in 2..=4u32 {
                let fam = GroupFamily::FreeProdCyclicP { p, copies };
                let folded = free_product_series(&vec![cp.clone(); copies as usize]).unwrap();
                assert_eq!(family_series(&fam, p, 12).unwrap(), folded, "p={p} copies={copies}");
            }
            for d in 0..=3u32 {
                let fam = GroupFamily::CyclicPFree { p, free_rank: d };
                let free = family_series(&GroupFamily::free(d), p, 12).unwrap();
                let folded = free_product_series(&[cp.clone(), free]).unwrap();
                assert_eq!(family_series(&fam, p, 12).unwrap(), folded, "p={p} d={d}");
            }
        }
    }

    #[test]
    fn mixed_family_is_a_free_product() {
        for p in [2u64, 3] {
            for ranks in [vec![2], vec![2, 2], vec![3, 4], vec![2, 3, 4]] {
                for e in 0..=4u32 {
                    let fam = GroupFamily::MixedFreeProd { demushkin_ranks: ranks.clone(), free_rank: e };
                    let mut factors: Vec<_> = ranks
                        .iter()
                        .map(|&d| family_series(&GroupFamily::demushkin(d), p, 16).unwrap())
                        .collect();
                    factors.push(family_series(&GroupFamily::free(e), p, 16).unwrap());
                    let folded = free_product_series(&factors).unwrap();
                    assert_eq!(family_series(&fam, p, 16).unwrap(), folded);
                    // permutation invariance
                    factors.reverse();
                    assert_eq!(free_product_series(&factors).unwrap(), folded);
                }
            }
        }
    }

    #[test]
    fn infinite_dihedral_has_one_series() {
        for order in 1..=20 {
            let a = family_series(&GroupFamily::FreeProdCyclicP { p: 2, copies: 2 }, 2, order);
            let b = family_series(&GroupFamily::SuperPyth { d: 1 }, 2, order);
            assert_eq!(a.unwrap(), b.unwrap());
        }
    }

    #[test]
    fn jennings_examples() {
        let mut c = vec![BigInt::zero(); 6];
        c[0] = BigInt::one();
        assert_eq!(ints(&jennings_product(&c, 2, 6).unwrap()), vec![1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(ints(&jennings_product(&c, 5, 6).unwrap()), vec![1, 1, 1, 1, 1, 0, 0]);
        assert_eq!(ints(&jennings_product(&c, 11, 6).unwrap()), vec![1; 7]);
        // c_n of the rank-2 free pro-2 group
        let c = big(&[2, 3, 2, 6, 6]);
        assert_eq!(ints(&jennings_product(&c, 2, 5).unwrap()), vec![1, 2, 4, 8, 16, 32]);
        assert!(jennings_product(&c, 2, 4).is_err());
        assert!(jennings_product(&big(&[1, -1]), 2, 2).is_err());
    }

    #[test]
    fn witt_examples() {
        let w = big(&[1, 0, 0, 0, 0, 0]);
        assert_eq!(ints(&witt_product(&w, 6).unwrap()), vec![1; 7]);
        // necklace numbers for d = 2
        let w = big(&[2, 1, 2, 3, 6, 9]);
        assert_eq!(ints(&witt_product(&w, 6).unwrap()), vec![1, 2, 4, 8, 16, 32, 64]);
        // the infinite dihedral pro-2 group
        let w = big(&[2, -1, 0, 0, 0, 0]);
        assert_eq!(ints(&witt_product(&w, 6).unwrap()), vec![1, 2, 2, 2, 2, 2, 2]);
        // with the extra odd-weight exponents one gets (1+t)/(1-t) ∏ 1/(1-t^(2i+1)) instead
        let w = big(&[2, -1, 1, 0, 1, 0]);
        let mut expected = TruncatedSeries::from_rational_function(&[1, 1], &[1, -1], 6).unwrap();
        for n in [3usize, 5] {
            let mut den = vec![0i64; n + 1];
            den[0] = 1;
            den[n] = -1;
            let f = TruncatedSeries::from_rational_function(&[1], &den, 6).unwrap();
            expected = expected.multiply(&f).unwrap();
        }
        assert_eq!(witt_product(&w, 6).unwrap(), expected);
    }
}
