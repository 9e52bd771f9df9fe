//! From a Hilbert–Poincaré series to the Zassenhaus dimensions `c_n`.
//!
//! Writing `log P(t) = Σ b_n t^n`, the exponents of `P = ∏ (1 - t^n)^{-w_n}` are
//! `w_n = (1/n) Σ_{m | n} μ(n/m) m b_m`, and for `n = p^k m` with `p ∤ m`
//! the dimensions are `c_n = w_m + w_{pm} + ... + w_{p^k m}`.
//!
//! [`c_closed`] reaches the same numbers without expanding any series: for
//! `P = ∏(1 - ξ_j t) / ∏(1 - a_i t)` one has `n b_n = Σ a_i^n - Σ ξ_j^n`, and
//! the power sums come from Newton's identities on the integer polynomials.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{contract, Error, Result};
use crate::hp::{self, GroupFamily};
use crate::mobius::classical_mobius;
use crate::series::{Rational, TruncatedSeries};

/// `b`, `w` and `c` for one series, indexed from `n = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionTable {
    pub p: u64,
    pub order: usize,
    pub b: Vec<Rational>,
    pub w: Vec<BigInt>,
    pub c: Vec<BigInt>,
    pub family: Option<GroupFamily>,
}

impl DimensionTable {
    pub fn from_series(series: &TruncatedSeries, p: u64, order: usize) -> Result<Self> {
        let b = log_coefficients(series, order)?;
        let w = invert(&b)?;
        let c = accumulate(&w, p)?;
        Ok(DimensionTable { p, order, b, w, c, family: None })
    }

    pub fn for_family(family: &GroupFamily, p: u64, order: usize) -> Result<Self> {
        let series = hp::family_series(family, p, order)?;
        let mut table = Self::from_series(&series, p, order)?;
        table.family = Some(family.clone());
        Ok(table)
    }

    /// Checks the coprime and non-coprime recurrences on every entry.
    pub fn recurrences_hold(&self) -> bool {
        (1..=self.order).all(|n| {
            let (w, c) = (&self.w[n - 1], &self.c[n - 1]);
            if (n as u64).is_multiple_of(self.p) {
                *c == &self.c[n / self.p as usize - 1] + w
            } else {
                c == w
            }
        })
    }
}

fn log_coefficients(series: &TruncatedSeries, order: usize) -> Result<Vec<Rational>> {
    if order == 0 {
        return contract("order must be at least 1");
    }
    if order > series.order() {
        return contract(format!("requested order {order} exceeds the series order {}", series.order()));
    }
    if !series.coeff(0).is_one() {
        return contract("series must have constant term 1");
    }
    let log = series.truncate(order)?.log()?;
    Ok(log.coeffs()[1..].to_vec())
}

fn invert(b: &[Rational]) -> Result<Vec<BigInt>> {
    let mut w = Vec::with_capacity(b.len());
    for n in 1..=b.len() {
        let mut acc = Rational::zero();
        for m in arith::divisors(n as u64) {
            let mu = classical_mobius(n as u64 / m);
            if mu != 0 {
                acc += &b[m as usize - 1] * Rational::from_integer(BigInt::from(mu * m as i64));
            }
        }
        acc /= Rational::from_integer(BigInt::from(n));
        if !acc.is_integer() {
            return Err(Error::Data(format!("w_{n} = {acc} is not an integer")));
        }
        w.push(acc.to_integer());
    }
    Ok(w)
}

fn accumulate(w: &[BigInt], p: u64) -> Result<Vec<BigInt>> {
    if !arith::is_prime(p) {
        return contract(format!("{p} is not prime"));
    }
    let mut c: Vec<BigInt> = Vec::with_capacity(w.len());
    for n in 1..=w.len() {
        let v =
            if (n as u64).is_multiple_of(p) { &c[n / p as usize - 1] + &w[n - 1] } else { w[n - 1].clone() };
        if v.is_negative() {
            return Err(Error::Data(format!("c_{n} = {v} is negative")));
        }
        c.push(v);
    }
    Ok(c)
}

/// `w_1..w_N` of a series with constant term 1.
pub fn w_sequence(series: &TruncatedSeries, order: usize) -> Result<Vec<BigInt>> {
    invert(&log_coefficients(series, order)?)
}

/// `c_1..c_N` of a series with constant term 1.
pub fn c_sequence(series: &TruncatedSeries, p: u64, order: usize) -> Result<Vec<BigInt>> {
    accumulate(&w_sequence(series, order)?, p)
}

/// Power sums `s_1..s_N` of the inverse roots `a_i` of `∏ (1 - a_i t)`.
pub fn power_sums(charpoly: &[BigInt], order: usize) -> Result<Vec<BigInt>> {
    if charpoly.first().is_none_or(|c| !c.is_one()) {
        return contract("characteristic polynomial must have constant term 1");
    }
    let coeff = |k: usize| charpoly.get(k).cloned().unwrap_or_default();
    let mut s: Vec<BigInt> = Vec::with_capacity(order);
    for m in 1..=order {
        let mut v = -BigInt::from(m) * coeff(m);
        for k in 1..m {
            v -= coeff(k) * &s[m - k - 1];
        }
        s.push(v);
    }
    Ok(s)
}

/// Power sums of the primitive `p`-th roots of unity.
fn root_of_unity_sum(p: u64, n: u64) -> BigInt {
    if n.is_multiple_of(p) {
        BigInt::from(p - 1)
    } else {
        BigInt::from(-1)
    }
}

/// `n b_n` for the family, from power sums.
fn scaled_log_coefficients(family: &GroupFamily, order: usize) -> Result<Vec<BigInt>> {
    let from_den = |den: &[BigInt]| power_sums(den, order);
    match family {
        GroupFamily::FreeProdCyclicP { p, .. } | GroupFamily::CyclicPFree { p, .. } => {
            let (_, den) = family.rational_function();
            let s = from_den(&den)?;
            Ok((1..=order).map(|n| &s[n - 1] - root_of_unity_sum(*p, n as u64)).collect())
        }
        GroupFamily::SuperPyth { d } => {
            // (1+t)/(1-t)^d: inverse roots 1 (d times) over -1
            Ok((1..=order)
                .map(|n| BigInt::from(*d) - if n % 2 == 0 { BigInt::one() } else { -BigInt::one() })
                .collect())
        }
        _ => {
            let (_, den) = family.rational_function();
            from_den(&den)
        }
    }
}

fn w_closed(family: &GroupFamily, n: usize) -> Result<BigInt> {
    let nb = scaled_log_coefficients(family, n)?;
    let mut acc = BigInt::zero();
    for m in arith::divisors(n as u64) {
        let mu = classical_mobius(n as u64 / m);
        if mu != 0 {
            acc += BigInt::from(mu) * &nb[m as usize - 1];
        }
    }
    Ok(arith::div_exact(&acc, &BigInt::from(n), "w_closed"))
}

/// `c_n(G)` from power sums of the closed-form series, without expanding it.
pub fn c_closed(family: &GroupFamily, p: u64, n: usize) -> Result<BigInt> {
    family.validate(p)?;
    if n == 0 {
        return contract("n must be at least 1");
    }
    if let GroupFamily::SuperPyth { d } = family {
        return Ok(match arith::log_exact(n as u64, 2) {
            Some(0) => BigInt::from(d + 1),
            Some(_) => BigInt::from(*d),
            None => BigInt::zero(),
        });
    }
    let (k, m) = arith::split_prime_power(n as u64, p);
    let mut c = BigInt::zero();
    let mut idx = m;
    for _ in 0..=k {
        c += w_closed(family, idx as usize)?;
        idx *= p;
    }
    Ok(c)
}

/// Minimal number of generators of `G_(n)` for free and Demushkin groups.
pub fn generator_counts(family: &GroupFamily, p: u64, n: usize) -> Result<BigInt> {
    family.validate(p)?;
    if n == 0 {
        return contract("n must be at least 1");
    }
    let (d, offset) = match family {
        GroupFamily::FreeProP { rank } => (*rank as i64, 1i64),
        GroupFamily::Demushkin { rank, .. } => (*rank as i64, 2i64),
        other => {
            return Err(Error::Unsupported(format!(
                "generator counts are only known for free and Demushkin groups, not {}",
                other.tag()
            )))
        }
    };
    // index [G : G_(n)] = p^(c_1 + ... + c_{n-1}); the Schreier-type factor vanishes here
    if d == offset {
        return Ok(BigInt::from(d));
    }
    if d < offset {
        // trivial group or Z_p
        return Ok(BigInt::from(d));
    }
    let mut exponent = BigInt::zero();
    for i in 1..n {
        exponent += c_closed(family, p, i)?;
    }
    let e = exponent
        .to_u32()
        .filter(|&e| (e as u64).saturating_mul(64 - p.leading_zeros() as u64) <= 1 << 24)
        .ok_or_else(|| Error::Resource(format!("index p^{exponent} is too large to materialise")))?;
    Ok(BigInt::from(p).pow(e) * (d - offset) + offset)
}
