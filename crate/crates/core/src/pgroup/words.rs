//! Relation words and counting the tuples on which a word is trivial.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;

use super::FiniteGroup;
use crate::error::{contract, Error, Result};

/// Largest number of assignments enumerated for one independent segment.
pub const WORD_BUDGET: u128 = 1 << 26;

/// A word in symbols `x_1, x_2, ...` (stored 0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RelationWord {
    Gen {
        symbol: usize,
        exponent: i64,
    },
    /// `[a, b] = a^{-1} b^{-1} a b`.
    Commutator(Box<RelationWord>, Box<RelationWord>),
    Concat(Vec<RelationWord>),
}

impl RelationWord {
    pub fn gen(symbol: usize, exponent: i64) -> Self {
        RelationWord::Gen { symbol, exponent }
    }

    pub fn commutator(a: RelationWord, b: RelationWord) -> Self {
        RelationWord::Commutator(Box::new(a), Box::new(b))
    }

    /// `[x_a, x_b]` for 0-based symbols.
    pub fn comm_of(a: usize, b: usize) -> Self {
        Self::commutator(Self::gen(a, 1), Self::gen(b, 1))
    }

    pub fn symbols(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<usize>) {
        match self {
            RelationWord::Gen { symbol, .. } => {
                out.insert(*symbol);
            }
            RelationWord::Commutator(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            RelationWord::Concat(parts) => parts.iter().for_each(|w| w.collect_symbols(out)),
        }
    }

    /// One more than the largest symbol index; tuples range over `G^arity`.
    pub fn arity(&self) -> usize {
        self.symbols().last().map_or(0, |&s| s + 1)
    }

    fn exponents(&self, out: &mut BTreeSet<i64>) {
        match self {
            RelationWord::Gen { exponent, .. } => {
                out.insert(*exponent);
            }
            RelationWord::Commutator(a, b) => {
                a.exponents(out);
                b.exponents(out);
            }
            RelationWord::Concat(parts) => parts.iter().for_each(|w| w.exponents(out)),
        }
    }

    fn eval(&self, g: &FiniteGroup, values: &[usize], powers: &HashMap<i64, Vec<u16>>) -> usize {
        match self {
            RelationWord::Gen { symbol, exponent } => powers[exponent][values[*symbol]] as usize,
            RelationWord::Commutator(a, b) => {
                g.commutator(a.eval(g, values, powers), b.eval(g, values, powers))
            }
            RelationWord::Concat(parts) => {
                parts.iter().fold(g.identity(), |acc, w| g.mul(acc, w.eval(g, values, powers)))
            }
        }
    }

    /// Evaluates the word at `values[i] = image of x_{i+1}`.
    pub fn evaluate(&self, g: &FiniteGroup, values: &[usize]) -> Result<usize> {
        if values.len() < self.arity() {
            return contract("not enough values for the word's symbols");
        }
        Ok(self.eval(g, values, &power_maps(g, self)))
    }

    /// Consecutive top-level factors grouped so that different groups share no symbol.
    fn segments(&self) -> Vec<RelationWord> {
        let RelationWord::Concat(parts) = self else {
            return vec![self.clone()];
        };
        let sets: Vec<BTreeSet<usize>> = parts.iter().map(|w| w.symbols()).collect();
        let mut last = HashMap::new();
        for (i, s) in sets.iter().enumerate() {
            for &x in s {
                last.insert(x, i);
            }
        }
        let mut out = Vec::new();
        let (mut start, mut end) = (0, 0);
        for (i, s) in sets.iter().enumerate() {
            end = s.iter().map(|x| last[x]).fold(end, usize::max);
            if i == end {
                out.push(RelationWord::Concat(parts[start..=i].to_vec()));
                start = i + 1;
            }
        }
        out
    }
}

impl fmt::Display for RelationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationWord::Gen { symbol, exponent: 1 } => write!(f, "x{}", symbol + 1),
            RelationWord::Gen { symbol, exponent } => write!(f, "x{}^{}", symbol + 1, exponent),
            RelationWord::Commutator(a, b) => write!(f, "[{a},{b}]"),
            RelationWord::Concat(parts) => parts.iter().try_for_each(|w| write!(f, "{w}")),
        }
    }
}

fn power_maps(g: &FiniteGroup, word: &RelationWord) -> HashMap<i64, Vec<u16>> {
    let mut exps = BTreeSet::new();
    word.exponents(&mut exps);
    exps.into_iter().map(|e| (e, (0..g.order()).map(|x| g.power(x, e) as u16).collect())).collect()
}

/// Histogram of the word's value over all assignments of its symbols.
fn histogram(
    g: &FiniteGroup,
    word: &RelationWord,
    powers: &HashMap<i64, Vec<u16>>,
    arity: usize,
) -> Result<Vec<u128>> {
    let syms: Vec<usize> = word.symbols().into_iter().collect();
    let n = g.order();
    let total = (n as u128).checked_pow(syms.len() as u32).filter(|&t| t <= WORD_BUDGET);
    if total.is_none() {
        return Err(Error::Resource(format!(
            "{} symbols over a group of order {n} exceed the enumeration budget",
            syms.len()
        )));
    }
    let Some((&first, rest)) = syms.split_first() else {
        let mut h = vec![0u128; n];
        h[word.eval(g, &vec![0; arity], powers)] = 1;
        return Ok(h);
    };
    let hist = (0..n)
        .into_par_iter()
        .map(|v0| {
            let mut local = vec![0u128; n];
            let mut values = vec![g.identity(); arity];
            let mut digits = vec![0usize; rest.len()];
            values[first] = v0;
            loop {
                for (d, &s) in digits.iter().zip(rest) {
                    values[s] = *d;
                }
                local[word.eval(g, &values, powers)] += 1;
                // odometer over the remaining symbols
                let mut k = 0;
                while k < digits.len() {
                    digits[k] += 1;
                    if digits[k] < n {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
                if k == digits.len() {
                    break;
                }
            }
            local
        })
        .reduce(
            || vec![0u128; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(hist)
}

fn convolve(g: &FiniteGroup, a: &[u128], b: &[u128]) -> Result<Vec<u128>> {
    let mut out = vec![0u128; g.order()];
    for (x, &ca) in a.iter().enumerate().filter(|(_, c)| **c != 0) {
        for (y, &cb) in b.iter().enumerate().filter(|(_, c)| **c != 0) {
            let z = g.mul(x, y);
            out[z] = ca
                .checked_mul(cb)
                .and_then(|v| out[z].checked_add(v))
                .ok_or_else(|| Error::Resource("solution count overflowed u128".into()))?;
        }
    }
    Ok(out)
}

/// `|{(g_1, ..., g_k) ∈ G^k : w(g_1, ..., g_k) = 1}|` with `k = word.arity()`.
///
/// Top-level factors with disjoint symbols are enumerated separately and their
/// value distributions convolved, so e.g. `x1^2 x2^4 [x2,x3] [x4,x5]` costs
/// `|G| + |G|^2 + |G|^2` evaluations instead of `|G|^5`.
pub fn count_word_solutions(g: &FiniteGroup, word: &RelationWord) -> Result<u128> {
    let arity = word.arity();
    let powers = power_maps(g, word);
    let segments = word.segments();
    let mut used = 0usize;
    let mut dist: Option<Vec<u128>> = None;
    for seg in &segments {
        used += seg.symbols().len();
        let h = histogram(g, seg, &powers, arity)?;
        dist = Some(match dist {
            None => h,
            Some(d) => convolve(g, &d, &h)?,
        });
    }
    let base = dist.map_or(1, |d| d[g.identity()]);
    let free = (g.order() as u128)
        .checked_pow((arity - used) as u32)
        .ok_or_else(|| Error::Resource("solution count overflowed u128".into()))?;
    base.checked_mul(free).ok_or_else(|| Error::Resource("solution count overflowed u128".into()))
}
