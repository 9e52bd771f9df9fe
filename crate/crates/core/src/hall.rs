//! Hall commutators over `x_1 > x_2 > ... > x_d` and bases of the Zassenhaus
//! subquotients of a free pro-p group.
//!
//! Terms are ordered by weight first and then lexicographically by
//! `(left, right)`. A bracket `[c1, c2]` is admissible when `c1 > c2` and,
//! if `c1 = [c3, c4]`, also `c2 >= c4`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith;
use crate::error::{contract, Result};
use crate::mobius::classical_mobius;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HallTerm {
    /// `x_index`, with `index` in `1..=d`.
    Generator {
        index: u32,
    },
    Bracket {
        left: Box<HallTerm>,
        right: Box<HallTerm>,
        weight: u32,
    },
}

impl HallTerm {
    pub fn generator(index: u32) -> Self {
        HallTerm::Generator { index }
    }

    pub fn bracket(left: HallTerm, right: HallTerm) -> Self {
        let weight = left.weight() + right.weight();
        HallTerm::Bracket { left: Box::new(left), right: Box::new(right), weight }
    }

    pub fn weight(&self) -> u32 {
        match self {
            HallTerm::Generator { .. } => 1,
            HallTerm::Bracket { weight, .. } => *weight,
        }
    }

    /// Structural re-check of the admissibility conditions at every node.
    pub fn is_hall(&self) -> bool {
        match self {
            HallTerm::Generator { .. } => true,
            HallTerm::Bracket { left, right, .. } => {
                if !(left.is_hall() && right.is_hall()) || left <= right {
                    return false;
                }
                match left.as_ref() {
                    HallTerm::Bracket { right: c4, .. } => right.as_ref() >= c4.as_ref(),
                    HallTerm::Generator { .. } => true,
                }
            }
        }
    }
}

impl Ord for HallTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| match (self, other) {
            // x_1 is the largest generator
            (HallTerm::Generator { index: a }, HallTerm::Generator { index: b }) => b.cmp(a),
            (
                HallTerm::Bracket { left: l1, right: r1, .. },
                HallTerm::Bracket { left: l2, right: r2, .. },
            ) => l1.cmp(l2).then_with(|| r1.cmp(r2)),
            // equal weights rule out mixed pairs
            _ => unreachable!("generator and bracket of equal weight"),
        })
    }
}

impl PartialOrd for HallTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HallTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HallTerm::Generator { index } => write!(f, "x{index}"),
            HallTerm::Bracket { left, right, .. } => write!(f, "[{left},{right}]"),
        }
    }
}

/// Hall commutators by weight, as `(left rank, right rank)` pairs.
///
/// Ranks are global positions in the total order; because levels are sorted
/// and heavier terms are larger, comparing ranks compares terms.
struct RankTable {
    d: u32,
    /// `levels[w - 1]` lists weight-`w` terms in ascending order.
    levels: Vec<Vec<(u32, u32)>>,
    offsets: Vec<u32>,
}

impl RankTable {
    fn build(d: u32, max_weight: u32) -> Self {
        let mut table = RankTable { d, levels: vec![vec![(0, 0); d as usize]], offsets: vec![0] };
        for n in 2..=max_weight {
            let mut level = Vec::new();
            for w1 in (1..n).rev() {
                let w2 = n - w1;
                for (i1, &(_, c4)) in table.levels[w1 as usize - 1].iter().enumerate() {
                    let r1 = table.rank(w1, i1);
                    for i2 in 0..table.levels[w2 as usize - 1].len() {
                        let r2 = table.rank(w2, i2);
                        if r1 > r2 && (w1 == 1 || r2 >= c4) {
                            level.push((r1, r2));
                        }
                    }
                }
            }
            level.sort_unstable();
            let last = table.offsets.len() - 1;
            table.offsets.push(table.offsets[last] + table.levels[last].len() as u32);
            table.levels.push(level);
        }
        table
    }

    fn rank(&self, weight: u32, idx: usize) -> u32 {
        self.offsets[weight as usize - 1] + idx as u32
    }

    fn materialize(&self) -> Vec<Vec<HallTerm>> {
        let mut flat: Vec<HallTerm> = Vec::new();
        let mut out = Vec::new();
        for (w, level) in self.levels.iter().enumerate() {
            let terms: Vec<HallTerm> = if w == 0 {
                (0..self.d).map(|i| HallTerm::generator(self.d - i)).collect()
            } else {
                level
                    .iter()
                    .map(|&(l, r)| HallTerm::bracket(flat[l as usize].clone(), flat[r as usize].clone()))
                    .collect()
            };
            flat.extend(terms.iter().cloned());
            out.push(terms);
        }
        out
    }
}

/// Hall commutators of weight `n` in `d` generators, in ascending order.
pub fn hall_basis(d: u32, n: u32) -> Result<Vec<HallTerm>> {
    Ok(hall_levels(d, n)?.pop().unwrap_or_default())
}

/// Hall commutators of every weight `1..=n`.
pub fn hall_levels(d: u32, n: u32) -> Result<Vec<Vec<HallTerm>>> {
    if d == 0 || n == 0 {
        return contract("rank and weight must be positive");
    }
    check_enumeration_budget(d, n)?;
    Ok(RankTable::build(d, n).materialize())
}

/// Enumeration is attempted only when `d^n` stays below this.
const ENUMERATION_BUDGET: u64 = 1 << 24;

fn check_enumeration_budget(d: u32, n: u32) -> Result<()> {
    let fits = (d as u64).checked_pow(n).is_some_and(|v| v <= ENUMERATION_BUDGET);
    if fits {
        Ok(())
    } else {
        Err(crate::Error::Resource(format!(
            "enumerating Hall commutators of weight {n} in {d} generators is too large"
        )))
    }
}

/// `(1/n) Σ_{m | n} μ(n/m) d^m`.
pub fn witt_number(d: u32, n: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for m in arith::divisors(n as u64) {
        let mu = classical_mobius(n as u64 / m);
        if mu != 0 {
            acc += BigInt::from(mu) * BigInt::from(d).pow(m as u32);
        }
    }
    arith::div_exact(&acc, &BigInt::from(n), "witt_number")
}

/// Number of Hall commutators of weight `n`; enumerates for small inputs and
/// uses the Witt formula otherwise.
pub fn hall_count(d: u32, n: u32) -> Result<BigInt> {
    if d == 0 || n == 0 {
        return contract("rank and weight must be positive");
    }
    if n <= 12 && check_enumeration_budget(d, n).is_ok() {
        let table = RankTable::build(d, n);
        return Ok(BigInt::from(table.levels[n as usize - 1].len()));
    }
    Ok(witt_number(d, n))
}

/// Basis of `S_(n) / S_(n+1)` for the free pro-p group `S` of rank `d`:
/// for `n = p^k m`, the terms of `C_{p^j m}` raised to `p^(k-j)`, `j = 0..=k`.
pub fn zassenhaus_basis(d: u32, p: u64, n: u32) -> Result<Vec<(HallTerm, BigInt)>> {
    if !arith::is_prime(p) {
        return contract(format!("{p} is not prime"));
    }
    let levels = hall_levels(d, n)?;
    let (k, m) = arith::split_prime_power(n as u64, p);
    let mut out = Vec::new();
    for j in 0..=k {
        let weight = m * p.pow(j);
        let exponent = BigInt::from(p).pow(k - j);
        for term in &levels[weight as usize - 1] {
            out.push((term.clone(), exponent.clone()));
        }
    }
    Ok(out)
}

/// Renders `term^e`, omitting the exponent when it is 1.
pub fn format_power(term: &HallTerm, exponent: &BigInt) -> String {
    if exponent.to_u64() == Some(1) {
        term.to_string()
    } else {
        format!("{term}^{exponent}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(terms: &[HallTerm]) -> Vec<String> {
        terms.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(strings(&hall_basis(2, 1).unwrap()), vec!["x2", "x1"]);
        assert_eq!(strings(&hall_basis(2, 2).unwrap()), vec!["[x1,x2]"]);
        assert_eq!(strings(&hall_basis(2, 3).unwrap()), vec!["[[x1,x2],x2]", "[[x1,x2],x1]"]);
        assert_eq!(strings(&hall_basis(3, 2).unwrap()), vec!["[x2,x3]", "[x1,x3]", "[x1,x2]"]);
        assert!(hall_basis(1, 2).unwrap().is_empty());
        assert!(hall_basis(0, 2).is_err());
    }

    #[test]
    fn weight_three_shape() {
        // C_3 = {[[x_i,x_j],x_k] : i < j, k <= j}, of size 2 * C(d+1, 3)
        for d in 1..=5u32 {
            let basis = hall_basis(d, 3).unwrap();
            let expected = 2 * (d + 1) * d * (d.saturating_sub(1)) / 6;
            assert_eq!(basis.len() as u32, expected);
            for t in &basis {
                let HallTerm::Bracket { left, right, .. } = t else { panic!() };
                let HallTerm::Bracket { left: xi, right: xj, .. } = left.as_ref() else { panic!() };
                let idx = |t: &HallTerm| match t {
                    HallTerm::Generator { index } => *index,
                    _ => panic!(),
                };
                assert!(idx(xi) < idx(xj) && idx(right) <= idx(xj));
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(hall_count(2, 6).unwrap(), BigInt::from(9));
        assert_eq!(hall_count(1, 5).unwrap(), BigInt::zero());
        assert_eq!(hall_count(3, 3).unwrap(), BigInt::from(8));
        assert_eq!(hall_count(2, 20).unwrap(), witt_number(2, 20));
        for d in 1..=4 {
            for n in 1..=10 {
                assert_eq!(hall_count(d, n).unwrap(), witt_number(d, n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn bases_are_sorted_and_admissible() {
        for d in 1..=3 {
            for (w, level) in hall_levels(d, 8).unwrap().iter().enumerate() {
                assert!(level.windows(2).all(|p| p[0] < p[1]));
                assert!(level.iter().all(|t| t.is_hall() && t.weight() == w as u32 + 1));
            }
        }
        let bad = HallTerm::bracket(HallTerm::generator(2), HallTerm::generator(1));
        assert!(!bad.is_hall());
        let bad = HallTerm::bracket(
            HallTerm::bracket(HallTerm::generator(1), HallTerm::generator(3)),
            HallTerm::generator(2),
        );
        // x2 > x3, so this one is admissible
        assert!(bad.is_hall());
        let bad = HallTerm::bracket(
            HallTerm::bracket(HallTerm::generator(1), HallTerm::generator(2)),
            HallTerm::generator(3),
        );
        assert!(!bad.is_hall());
    }

    #[test]
    fn zassenhaus_examples() {
        let b = zassenhaus_basis(2, 2, 2).unwrap();
        let s: Vec<String> = b.iter().map(|(t, e)| format_power(t, e)).collect();
        assert_eq!(s, vec!["x2^2", "x1^2", "[x1,x2]"]);
        assert_eq!(zassenhaus_basis(2, 2, 4).unwrap().len(), 6);
        assert_eq!(zassenhaus_basis(2, 3, 3).unwrap().len(), 4);
        assert!(zassenhaus_basis(2, 4, 3).is_err());
    }

    #[test]
    fn budget() {
        assert!(matches!(hall_basis(10, 12), Err(crate::Error::Resource(_))));
        assert_eq!(hall_count(10, 12).unwrap(), witt_number(10, 12));
    }
}
