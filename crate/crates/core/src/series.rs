//! Exact truncated power series over the rationals.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `t^0, ..., t^N` densely. Binary operations require both operands to have
//! the same order; mismatches are rejected rather than silently truncated.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{contract, Error, Result};

pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficient list; the order is `len - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return contract("a series needs at least a constant term");
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Series with the given integer coefficients, padded with zeros or
    /// truncated to `order`.
    pub fn from_integers<T: Clone + Into<BigInt>>(coeffs: &[T], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = Rational::from_integer(c.clone().into());
        }
        s
    }

    /// Expands `numerator / denominator` to the given order.
    pub fn from_rational_function<T: Clone + Into<BigInt>>(
        numerator: &[T],
        denominator: &[T],
        order: usize,
    ) -> Result<Self> {
        if order == 0 {
            return contract("truncation order must be positive");
        }
        let den = Self::from_integers(denominator, order);
        if den.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        Self::from_integers(numerator, order).multiply(&den.inverse()?)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// Coefficients as integers, or `None` if any coefficient is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Keeps only the terms up to `order` (which must not exceed the current order).
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return contract(format!("cannot extend a series of order {} to order {order}", self.order()));
        }
        Ok(Self { coeffs: self.coeffs[..=order].to_vec() })
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return contract(format!("series orders differ ({} vs {})", self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// Formal derivative, kept at the same order (the top coefficient becomes 0).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for k in 1..=n {
            out[k - 1] = &self.coeffs[k] * Rational::from_integer(BigInt::from(k));
        }
        Self { coeffs: out }
    }

    /// Formal logarithm of a series with constant term 1.
    ///
    /// Uses `(log a)' = a' / a` and integrates termwise, so no log Taylor
    /// series is composed.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return contract("log requires constant term 1");
        }
        let quotient = self.derivative().multiply(&self.inverse()?)?;
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for k in 1..=n {
            out[k] = &quotient.coeffs[k - 1] / Rational::from_integer(BigInt::from(k));
        }
        Ok(Self { coeffs: out })
    }

    /// Integer power, negative exponents going through [`inverse`](Self::inverse).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut result = Self::one(self.order());
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.multiply(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.multiply(&sq)?;
            }
        }
        Ok(result)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({}/{})", mag.numer(), mag.denom())?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.to_integers().unwrap().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_function_examples() {
        let s = TruncatedSeries::from_rational_function(&[1], &[1, -2], 4).unwrap();
        assert_eq!(ints(&s), vec![1, 2, 4, 8, 16]);
        // long division of 1/(1-4t+t^2): a_k = 4 a_{k-1} - a_{k-2}
        let s = TruncatedSeries::from_rational_function(&[1], &[1, -4, 1], 3).unwrap();
        assert_eq!(ints(&s), vec![1, 4, 15, 56]);
        let s = TruncatedSeries::from_rational_function(&[1, 1], &[1, -1], 3).unwrap();
        assert_eq!(ints(&s), vec![1, 2, 2, 2]);
    }

    #[test]
    fn rational_function_rejects_zero_constant() {
        let err = TruncatedSeries::from_rational_function(&[1], &[0, 1], 3).unwrap_err();
        assert_eq!(err, Error::NotInvertible);
    }

    #[test]
    fn multiply_examples() {
        let a = TruncatedSeries::from_integers(&[1, 1], 3);
        let b = TruncatedSeries::from_integers(&[1, -1], 3);
        assert_eq!(ints(&a.multiply(&b).unwrap()), vec![1, 0, -1, 0]);
        let a = TruncatedSeries::from_integers(&[1, 1, 1, 1], 3);
        assert_eq!(ints(&a.multiply(&b).unwrap()), vec![1, 0, 0, 0]);
        let a = TruncatedSeries::from_integers(&[1, 2], 2);
        let b = TruncatedSeries::from_integers(&[1, 3], 2);
        assert_eq!(ints(&a.multiply(&b).unwrap()), vec![1, 5, 6]);
    }

    #[test]
    fn mixed_orders_are_rejected() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(4);
        assert!(matches!(a.multiply(&b), Err(Error::Contract(_))));
        assert!(matches!(a.add(&b), Err(Error::Contract(_))));
    }

    #[test]
    fn inverse_examples() {
        let a = TruncatedSeries::from_integers(&[1, -1], 3);
        assert_eq!(ints(&a.inverse().unwrap()), vec![1, 1, 1, 1]);
        let a = TruncatedSeries::from_integers(&[1, 1], 3);
        assert_eq!(ints(&a.inverse().unwrap()), vec![1, -1, 1, -1]);
        let a = TruncatedSeries::from_integers(&[1, 4, 15], 2);
        assert_eq!(ints(&a.inverse().unwrap()), vec![1, -4, 1]);
        let z = TruncatedSeries::from_integers(&[0, 1], 2);
        assert_eq!(z.inverse().unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn log_examples() {
        let a = TruncatedSeries::from_rational_function(&[1], &[1, -1], 3).unwrap();
        let l = a.log().unwrap();
        assert_eq!(l.coeffs(), &[q(0, 1), q(1, 1), q(1, 2), q(1, 3)]);
        assert_eq!(TruncatedSeries::one(5).log().unwrap(), TruncatedSeries::zero(5));
        let a = TruncatedSeries::from_rational_function(&[1, 1], &[1, -1], 3).unwrap();
        let l = a.log().unwrap();
        assert_eq!(l.coeffs(), &[q(0, 1), q(2, 1), q(0, 1), q(2, 3)]);
    }

    #[test]
    fn log_requires_unit_constant() {
        let a = TruncatedSeries::from_integers(&[2, 1], 3);
        assert!(matches!(a.log(), Err(Error::Contract(_))));
    }

    #[test]
    fn display_is_readable() {
        let a = TruncatedSeries::from_integers(&[1, -2, 0, 3], 3);
        assert_eq!(a.to_string(), "1 - 2t + 3t^3 + O(t^4)");
        let l = TruncatedSeries::from_rational_function(&[1], &[1, -1], 2).unwrap().log().unwrap();
        assert_eq!(l.to_string(), "t + (1/2)t^2 + O(t^3)");
    }

    fn small_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-5i64..=5, order + 1)
            .prop_map(move |c| TruncatedSeries::from_integers(&c, order))
    }

    fn unit_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-5i64..=5, order).prop_map(move |tail| {
            let mut c = vec![1];
            c.extend(tail);
            TruncatedSeries::from_integers(&c, order)
        })
    }

    proptest! {
        #[test]
        fn multiply_is_commutative_and_associative(
            a in small_series(6), b in small_series(6), c in small_series(6)
        ) {
            prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
            let l = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let r = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(a.multiply(&TruncatedSeries::one(6)).unwrap(), a);
        }

        #[test]
        fn inverse_is_an_involution(a in unit_series(7)) {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(a.multiply(&inv).unwrap(), TruncatedSeries::one(7));
            prop_assert_eq!(inv.inverse().unwrap(), a);
        }

        #[test]
        fn log_turns_products_into_sums(a in unit_series(6), b in unit_series(6)) {
            let lhs = a.multiply(&b).unwrap().log().unwrap();
            let rhs = a.log().unwrap().add(&b.log().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            // a * (log a)' = a'
            let d = a.multiply(&a.log().unwrap().derivative()).unwrap();
            prop_assert_eq!(d.truncate(5).unwrap(), a.derivative().truncate(5).unwrap());
        }

        #[test]
        fn rational_function_times_denominator_is_numerator(
            num in prop::collection::vec(-4i64..=4, 1..4),
            tail in prop::collection::vec(-4i64..=4, 0..3),
        ) {
            let mut den = vec![1i64];
            den.extend(tail);
            let s = TruncatedSeries::from_rational_function(&num, &den, 8).unwrap();
            let back = s.multiply(&TruncatedSeries::from_integers(&den, 8)).unwrap();
            prop_assert_eq!(back, TruncatedSeries::from_integers(&num, 8));
        }
    }
}
