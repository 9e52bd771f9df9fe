//! Built-in groups and closure of concrete generators.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::element::{GroupElement, ModMatrix};
use super::{FiniteGroup, MAX_ORDER};
use crate::arith;
use crate::error::{contract, Error, Result};

/// Closes `gens` under multiplication and tabulates the result.
///
/// Elements are indexed in breadth-first order from the identity, so the
/// result only depends on the order of `gens`.
pub fn group_from_generators<E: GroupElement>(gens: &[E]) -> Result<FiniteGroup> {
    let Some(first) = gens.first() else {
        return contract("at least one generator is required");
    };
    let id = first.identity_like();
    let mut elements = vec![id.clone()];
    let mut index: HashMap<E, usize> = HashMap::from([(id, 0)]);
    // right[x][i] = x * gens[i]; parent[x] = (y, i) with x = y * gens[i]
    let mut right: Vec<Vec<u16>> = Vec::new();
    let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
    let mut next = 0;
    while next < elements.len() {
        let x = elements[next].clone();
        let mut row = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            let y = x.compose(g);
            let k = match index.get(&y) {
                Some(&k) => k,
                None => {
                    let k = elements.len();
                    if k >= MAX_ORDER {
                        return Err(Error::Resource(format!("closure exceeds {MAX_ORDER} elements")));
                    }
                    index.insert(y.clone(), k);
                    elements.push(y);
                    parent.push((next, i));
                    k
                }
            };
            row.push(k as u16);
        }
        right.push(row);
        next += 1;
    }
    let n = elements.len();
    let mut table = vec![0u16; n * n];
    // a * x = (a * parent(x)) * gen, filled in breadth-first order of x
    for a in 0..n {
        table[a * n] = a as u16;
    }
    for x in 1..n {
        let (y, i) = parent[x];
        for a in 0..n {
            let ay = table[a * n + y] as usize;
            table[a * n + x] = right[ay][i];
        }
    }
    let generators = (0..gens.len()).map(|i| right[0][i] as usize).collect();
    let labels = elements.iter().map(|e| e.label()).collect();
    Ok(FiniteGroup::from_parts(n, table, 0, generators, Some(labels)))
}

/// The cyclic group `Z/m` with labels `e, g, g^2, ...`.
pub fn cyclic_group(m: usize) -> Result<FiniteGroup> {
    abelian_group(&[m]).map(|mut g| {
        g.labels = Some(
            (0..m)
                .map(|i| match i {
                    0 => "e".to_string(),
                    1 => "g".to_string(),
                    _ => format!("g^{i}"),
                })
                .collect(),
        );
        g
    })
}

/// `Z/m_1 × ... × Z/m_k`, elements as mixed-radix tuples.
pub fn abelian_group(invariants: &[usize]) -> Result<FiniteGroup> {
    if invariants.is_empty() || invariants.contains(&0) {
        return contract("invariants must be positive and non-empty");
    }
    let n = invariants
        .iter()
        .try_fold(1usize, |acc, &m| acc.checked_mul(m))
        .filter(|&n| n <= MAX_ORDER)
        .ok_or_else(|| Error::Resource(format!("abelian group exceeds {MAX_ORDER} elements")))?;
    let digits = |mut x: usize| -> Vec<usize> {
        invariants
            .iter()
            .map(|&m| {
                let d = x % m;
                x /= m;
                d
            })
            .collect()
    };
    let encode =
        |v: &[usize]| -> usize { v.iter().zip(invariants).rev().fold(0, |acc, (&d, &m)| acc * m + d) };
    let all: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            let sum: Vec<usize> =
                all[a].iter().zip(&all[b]).zip(invariants).map(|((x, y), m)| (x + y) % m).collect();
            table[a * n + b] = encode(&sum) as u16;
        }
    }
    let mut generators = Vec::new();
    let mut place = 1;
    for &m in invariants {
        if m > 1 {
            generators.push(place);
        }
        place *= m;
    }
    let labels = all
        .iter()
        .map(|v| {
            let s: Vec<String> = v.iter().map(|d| d.to_string()).collect();
            format!("({})", s.join(","))
        })
        .collect();
    Ok(FiniteGroup::from_parts(n, table, 0, generators, Some(labels)))
}

/// The dihedral group of order `2n`, elements `r^i s^j`, generators `r, s`.
pub fn dihedral_group(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return contract("dihedral groups need n >= 2");
    }
    let order = 2 * n;
    if order > MAX_ORDER {
        return Err(Error::Resource(format!("dihedral group exceeds {MAX_ORDER} elements")));
    }
    let idx = |i: usize, j: usize| i + n * j;
    let mut table = vec![0u16; order * order];
    for a in 0..order {
        let (i, j) = (a % n, a / n);
        for b in 0..order {
            let (k, l) = (b % n, b / n);
            // r^i s^j r^k s^l = r^(i ± k) s^(j + l)
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            table[a * order + b] = idx(rot, (j + l) % 2) as u16;
        }
    }
    let labels = (0..order)
        .map(|a| {
            let (i, j) = (a % n, a / n);
            let r = match i {
                0 => String::new(),
                1 => "r".into(),
                _ => format!("r^{i}"),
            };
            match (r.is_empty(), j) {
                (true, 0) => "e".into(),
                (_, 0) => r,
                _ => format!("{r}s"),
            }
        })
        .collect();
    Ok(FiniteGroup::from_parts(order, table, 0, vec![idx(1, 0), idx(0, 1)], Some(labels)))
}

/// Upper unitriangular `n × n` matrices over `F_p`, generated by the
/// superdiagonal elementary matrices.
pub fn unipotent_group(n: usize, p: u64) -> Result<FiniteGroup> {
    if !(2..=5).contains(&n) {
        return contract("unipotent groups are supported for n in 2..=5");
    }
    if !arith::is_prime(p) {
        return contract(format!("{p} is not prime"));
    }
    let exponent = (n * (n - 1) / 2) as u32;
    let fits = p.checked_pow(exponent).is_some_and(|o| o <= MAX_ORDER as u64);
    if !fits {
        return Err(Error::Resource(format!(
            "U_{n}(F_{p}) has order {p}^{exponent}, above the table limit {MAX_ORDER}"
        )));
    }
    let gens: Vec<ModMatrix> = (0..n - 1)
        .map(|i| {
            let mut e = vec![0i64; n * n];
            for k in 0..n {
                e[k * n + k] = 1;
            }
            e[i * n + i + 1] = 1;
            ModMatrix::new(n, p, e)
        })
        .collect::<Result<_>>()?;
    group_from_generators(&gens)
}

/// `(Z/2^k)^d ⋊ C_2` with `C_2` acting by inversion, as affine matrices
/// `[[±I, v], [0, 1]]` over `Z/2^k`. Generators: the `d` unit translations, then the involution.
pub fn semidirect_inversion(k: u32, d: usize) -> Result<FiniteGroup> {
    if k == 0 || k > 12 {
        return contract("k must be in 1..=12");
    }
    let modulus = 1u64 << k;
    let size = d + 1;
    let mut gens = Vec::new();
    for i in 0..d {
        let mut e = vec![0i64; size * size];
        for j in 0..size {
            e[j * size + j] = 1;
        }
        e[i * size + d] = 1;
        gens.push(ModMatrix::new(size, modulus, e)?);
    }
    let mut e = vec![0i64; size * size];
    for j in 0..d {
        e[j * size + j] = -1;
    }
    e[d * size + d] = 1;
    gens.push(ModMatrix::new(size, modulus, e)?);
    group_from_generators(&gens)
}

/// A textual description of a built-in group, e.g. `d4`, `cyclic:8`,
/// `abelian:2,2,2`, `dihedral:6`, `unipotent:3:3`, `semidirect:3:2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    Dihedral(usize),
    Unipotent(usize, u64),
    /// `(Z/2^k)^d ⋊ C_2` as `(k, d)`.
    Semidirect(u32, usize),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(m) => cyclic_group(*m),
            GroupSpec::Abelian(inv) => abelian_group(inv),
            GroupSpec::Dihedral(n) => dihedral_group(*n),
            GroupSpec::Unipotent(n, p) => unipotent_group(*n, *p),
            GroupSpec::Semidirect(k, d) => semidirect_inversion(*k, *d),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let bad = || Error::Contract(format!("unrecognised group '{s}'"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match lower.as_str() {
            "d4" => return Ok(GroupSpec::Dihedral(4)),
            "klein" | "v4" => return Ok(GroupSpec::Abelian(vec![2, 2])),
            _ => {}
        }
        let (kind, rest) = lower.split_once(':').ok_or_else(bad)?;
        match kind {
            "cyclic" | "c" => Ok(GroupSpec::Cyclic(num(rest)?)),
            "abelian" => Ok(GroupSpec::Abelian(rest.split(',').map(num).collect::<Result<_>>()?)),
            "dihedral" => Ok(GroupSpec::Dihedral(num(rest)?)),
            "unipotent" => {
                let (n, p) = rest.split_once(':').ok_or_else(bad)?;
                Ok(GroupSpec::Unipotent(num(n)?, num(p)? as u64))
            }
            "semidirect" => {
                let (k, d) = rest.split_once(':').ok_or_else(bad)?;
                Ok(GroupSpec::Semidirect(num(k)? as u32, num(d)?))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(m) => write!(f, "C_{m}"),
            GroupSpec::Abelian(inv) => {
                let parts: Vec<String> = inv.iter().map(|m| format!("C_{m}")).collect();
                f.write_str(&parts.join(" x "))
            }
            GroupSpec::Dihedral(n) => write!(f, "D_{n}"),
            GroupSpec::Unipotent(n, p) => write!(f, "U_{n}(F_{p})"),
            GroupSpec::Semidirect(k, d) => write!(f, "(Z/2^{k})^{d} x| C_2"),
        }
    }
}
