//! Counting Galois p-extensions of local fields with a prescribed group.
//!
//! The main count is
//! `ν(K, G) = (1/|Aut G|) Σ_{H ≤ G} μ_G(H) α(H)`, where `α(H)` is the number
//! of tuples in `H^{n+2}` satisfying the Demushkin relation of `G_K(p)` (or
//! `|H|^{n+1}` when `ζ_p ∉ K` and `G_K(p)` is free of rank `n + 1`). Only
//! subgroups containing `Φ(G)` have nonzero `μ_G`, so only those are visited.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith;
use crate::error::{contract, Error, Result};
use crate::hp::{DemushkinRelation, FInvariant, RelationCase};
use crate::mobius::gaussian_binomial;
use crate::pgroup::{
    automorphism_count, count_word_solutions, frattini, overgroup_lattice, FiniteGroup, RelationWord,
};

/// Shape of `G_K(p)`: free when `ζ_p ∉ K`, Demushkin otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Free,
    Demushkin(RelationCase),
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationKind::Free => f.write_str("free"),
            RelationKind::Demushkin(c) => write!(f, "{c}"),
        }
    }
}

/// A finite extension `K / Q_p` of degree `n`, described by the invariants
/// that determine `G_K(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalFieldParams {
    pub p: u64,
    pub n: u32,
    /// Largest `p`-power `q` with `ζ_q ∈ K`; `None` when `ζ_p ∉ K`.
    pub q: Option<u64>,
    pub f: FInvariant,
    pub kind: RelationKind,
}

impl LocalFieldParams {
    /// Picks the relation case from `(p, n, q)`: `r1` for `q ≠ 2`, `r2` for
    /// `q = 2` and odd `n`, `r3` for `q = 2` and even `n`; `f` defaults to 2.
    pub fn new(p: u64, n: u32, q: Option<u64>) -> Result<Self> {
        let kind = match q {
            None => RelationKind::Free,
            Some(2) if n % 2 == 1 => RelationKind::Demushkin(RelationCase::R2),
            Some(2) => RelationKind::Demushkin(RelationCase::R3),
            Some(_) => RelationKind::Demushkin(RelationCase::R1),
        };
        let params = LocalFieldParams { p, n, q, f: FInvariant::Finite(2), kind };
        params.validate()?;
        Ok(params)
    }

    pub fn with_case(mut self, case: RelationCase, f: FInvariant) -> Result<Self> {
        self.kind = RelationKind::Demushkin(case);
        self.f = f;
        self.validate()?;
        Ok(self)
    }

    /// Minimal number of generators of `G_K(p)`.
    pub fn rank(&self) -> u32 {
        match self.kind {
            RelationKind::Free => self.n + 1,
            RelationKind::Demushkin(_) => self.n + 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !arith::is_prime(self.p) {
            return contract(format!("{} is not prime", self.p));
        }
        if self.n == 0 {
            return contract("the degree n must be positive");
        }
        match (self.kind, self.q) {
            (RelationKind::Free, None) => {
                if self.p == 2 {
                    return contract("ζ_2 = -1 lies in every 2-adic field; q is at least 2");
                }
                Ok(())
            }
            (RelationKind::Free, Some(_)) => contract("the free case means ζ_p ∉ K; omit q"),
            (RelationKind::Demushkin(_), None) => contract("a Demushkin relation needs q"),
            (RelationKind::Demushkin(case), Some(q)) => {
                if arith::log_exact(q, self.p).is_none_or(|k| k == 0) {
                    return contract(format!("q = {q} is not a positive power of p = {}", self.p));
                }
                // [Q_p(ζ_q) : Q_p] = φ(q) must divide n
                let phi = q / self.p * (self.p - 1);
                if !(self.n as u64).is_multiple_of(phi) {
                    return contract(format!(
                        "ζ_{q} generates a degree-{phi} extension, which does not divide n = {}",
                        self.n
                    ));
                }
                DemushkinRelation { case, q, f: self.f }.validate(self.rank())
            }
        }
    }
}

impl fmt::Display for LocalFieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p = {}, n = {}", self.p, self.n)?;
        match self.q {
            Some(q) => write!(f, ", q = {q}, f = {}, case {}", self.f, self.kind),
            None => write!(f, ", free"),
        }
    }
}

fn comm_tail(out: &mut Vec<RelationWord>, from: usize, d: usize) {
    for i in (from..d).step_by(2) {
        out.push(RelationWord::comm_of(i, i + 1));
    }
}

fn push_power(out: &mut Vec<RelationWord>, symbol: usize, exponent: i64) {
    if exponent != 0 {
        out.push(RelationWord::gen(symbol, exponent));
    }
}

/// The defining relation of `G_K(p)` over `n + 2` symbols (0-based in the word).
pub fn demushkin_relation(params: &LocalFieldParams) -> Result<RelationWord> {
    params.validate()?;
    let RelationKind::Demushkin(case) = params.kind else {
        return contract("a free pro-p group has no defining relation");
    };
    let d = params.rank() as usize;
    let q = params.q.expect("validated") as i64;
    let two_f = params.f.two_power();
    let mut parts = Vec::new();
    match case {
        RelationCase::R1 => {
            push_power(&mut parts, 0, q);
            comm_tail(&mut parts, 0, d);
        }
        RelationCase::R2 => {
            push_power(&mut parts, 0, 2);
            push_power(&mut parts, 1, two_f);
            comm_tail(&mut parts, 1, d);
        }
        RelationCase::R3 => {
            push_power(&mut parts, 0, 2 + two_f);
            comm_tail(&mut parts, 0, d);
        }
        RelationCase::R4 => {
            push_power(&mut parts, 0, 2);
            parts.push(RelationWord::comm_of(0, 1));
            push_power(&mut parts, 2, two_f);
            comm_tail(&mut parts, 2, d);
        }
    }
    Ok(RelationWord::Concat(parts))
}

/// `α(H)` by direct enumeration of relation solutions in `H`.
pub fn alpha_bruteforce(params: &LocalFieldParams, h: &FiniteGroup) -> Result<BigInt> {
    match params.kind {
        RelationKind::Free => Ok(BigInt::from(h.order()).pow(params.n + 1)),
        RelationKind::Demushkin(_) => {
            Ok(BigInt::from(count_word_solutions(h, &demushkin_relation(params)?)?))
        }
    }
}

/// `α(H) = |H|^{n+1} |{h ∈ H : h^q = 1}|` for abelian `H`.
pub fn alpha_abelian(params: &LocalFieldParams, h: &FiniteGroup) -> Result<BigInt> {
    if !h.is_abelian() {
        return contract("the closed form for α needs an abelian group");
    }
    let base = BigInt::from(h.order()).pow(params.n + 1);
    match params.q {
        None => Ok(base),
        Some(q) => {
            let torsion = (0..h.order()).filter(|&x| h.power(x, q as i64) == h.identity()).count();
            Ok(base * torsion)
        }
    }
}

fn alpha(params: &LocalFieldParams, h: &FiniteGroup) -> Result<BigInt> {
    if h.is_abelian() {
        alpha_abelian(params, h)
    } else {
        alpha_bruteforce(params, h)
    }
}

fn exact_quotient(num: BigInt, den: BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Data(format!("{what}: {num} is not divisible by {den}")));
    }
    Ok(q)
}

/// `ν(K, G) = (1/|Aut G|) Σ_{H ≤ G} μ_G(H) α(H)`.
pub fn nu_yamagishi(params: &LocalFieldParams, g: &FiniteGroup) -> Result<BigInt> {
    params.validate()?;
    g.require_p_group(params.p)?;
    let phi = frattini(g, params.p)?;
    let lattice = overgroup_lattice(g, &phi)?;
    let mu = lattice.mobius()?;
    let terms: Vec<Result<BigInt>> = lattice
        .subgroups
        .par_iter()
        .zip(mu.par_iter())
        .filter(|(_, &m)| m != 0)
        .map(|(h, &m)| Ok(BigInt::from(m) * alpha(params, &g.restrict(h))?))
        .collect();
    let mut total = BigInt::zero();
    for t in terms {
        total += t?;
    }
    let aut = BigInt::from(automorphism_count(g)?);
    exact_quotient(total, aut, "ν(K, G)")
}

/// `ν(K, G)` for `ζ_p ∉ K`:
/// `(1/|Aut G|) (|G|/p^d)^{n+1} ∏_{i<d} (p^{n+1} - p^i)` with `d = dim G/Φ(G)`.
pub fn nu_shafarevich(p: u64, n: u32, g: &FiniteGroup) -> Result<BigInt> {
    g.require_p_group(p)?;
    let phi = frattini(g, p)?;
    let d = arith::log_exact((g.order() / phi.order()) as u64, p).expect("p-group index");
    let base = BigInt::from(phi.order()).pow(n + 1);
    let total = base * shafarevich_product(p, d, n);
    exact_quotient(total, BigInt::from(automorphism_count(g)?), "ν(K, G)")
}

/// `∏_{i=0}^{d-1} (p^{n+1} - p^i)`, the number of surjections `F_p^{n+1} → F_p^d`.
pub fn shafarevich_product(p: u64, d: u32, n: u32) -> BigInt {
    let p = BigInt::from(p);
    let top = p.pow(n + 1);
    (0..d).map(|i| &top - p.pow(i)).product()
}

/// `Σ_{i=0}^{d} (d choose i)_p (-1)^i p^{i(i-1)/2} (p^{n+1})^{d-i}`.
pub fn shafarevich_sum(p: u64, d: u32, n: u32) -> BigInt {
    let pb = BigInt::from(p);
    (0..=d)
        .map(|i| {
            let term =
                gaussian_binomial(d, i, p) * pb.pow(i * i.saturating_sub(1) / 2) * pb.pow((n + 1) * (d - i));
            if i % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// Ordered pairs of independent isotropic vectors for the cup-product form of
/// a Demushkin group of rank `d`: the alternating case (`q ≠ 2`) or the
/// `q = 2` case with one anisotropic basis vector.
pub fn cp_pair_count(p: u64, d: u32, q_is_2: bool) -> Result<BigInt> {
    if !arith::is_prime(p) {
        return contract(format!("{p} is not prime"));
    }
    if d < 3 {
        return contract("pair counts need d >= 3");
    }
    let pb = BigInt::from(p);
    if q_is_2 {
        if p != 2 {
            return contract("q = 2 forces p = 2");
        }
        let h = BigInt::from(2).pow(d - 1);
        Ok((&h - 1) * (&h - 2) + &h * (&h - 1))
    } else {
        Ok((pb.pow(d) - 1) * (pb.pow(d - 1) - &pb))
    }
}

/// Largest `p^d` for [`cp_pair_count_bruteforce`], i.e. at most `2^24` pairs.
const PAIR_BUDGET: u64 = 1 << 12;

/// Gram matrix of the standard form: hyperbolic pairs, skew for odd `p`,
/// plus `diagonal[i] = (v_i, v_i)`. With `diagonal[0] ≠ 0` and odd `d` the
/// pairs start at the second basis vector.
fn cup_form(p: u64, d: usize, diagonal: &[u64]) -> Result<Vec<Vec<u64>>> {
    if diagonal.len() != d {
        return contract(format!("diagonal must have {d} entries"));
    }
    if diagonal.iter().any(|&x| x >= p) {
        return contract("diagonal entries must lie in F_p");
    }
    if p != 2 && diagonal.iter().any(|&x| x != 0) {
        return contract("a skew-symmetric form over F_p with p odd has zero diagonal");
    }
    let mut b = vec![vec![0u64; d]; d];
    let start = if diagonal[0] != 0 && d % 2 == 1 { 1 } else { 0 };
    let mut i = start;
    while i + 1 < d {
        b[i][i + 1] = 1;
        b[i + 1][i] = p - 1;
        i += 2;
    }
    for k in 0..d {
        b[k][k] = diagonal[k];
    }
    if rank_mod_p(&b, p) < d {
        return contract("the form is degenerate");
    }
    Ok(b)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut base, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

fn rank_mod_p(m: &[Vec<u64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][c], p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for k in 0..cols {
                    a[r][k] = (a[r][k] + p * p - f * a[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exhaustive count of ordered pairs `(x, y)` in `F_p^d` with `(x, y) = 0`
/// and `x, y` linearly independent.
pub fn cp_pair_count_bruteforce(p: u64, d: u32, diagonal: &[u64]) -> Result<u128> {
    if !arith::is_prime(p) {
        return contract(format!("{p} is not prime"));
    }
    let size = p
        .checked_pow(d)
        .filter(|&s| s <= PAIR_BUDGET)
        .ok_or_else(|| Error::Resource(format!("{p}^{d} vectors exceed the pair budget")))?;
    let d = d as usize;
    let b = cup_form(p, d, diagonal)?;
    let vectors: Vec<Vec<u64>> = (0..size)
        .map(|mut x| {
            (0..d)
                .map(|_| {
                    let c = x % p;
                    x /= p;
                    c
                })
                .collect()
        })
        .collect();
    // the functional y ↦ (x, y) for every x
    let functionals: Vec<Vec<u64>> = vectors
        .iter()
        .map(|x| (0..d).map(|j| (0..d).map(|i| x[i] * b[i][j]).sum::<u64>() % p).collect())
        .collect();
    let independent = |x: &[u64], y: &[u64]| rank_mod_p(&[x.to_vec(), y.to_vec()], p) == 2;
    let count = (0..size as usize)
        .into_par_iter()
        .map(|xi| {
            let f = &functionals[xi];
            vectors
                .iter()
                .filter(|y| f.iter().zip(y.iter()).map(|(a, b)| a * b).sum::<u64>() % p == 0)
                .filter(|y| independent(&vectors[xi], y))
                .count() as u128
        })
        .sum();
    Ok(count)
}

/// `|Aut(U_3(F_p))|`: `p^3 (p^2 - 1)(p - 1)` for odd `p`, 8 for `p = 2`.
pub fn u3_automorphism_order(p: u64) -> BigInt {
    if p == 2 {
        return BigInt::from(8);
    }
    let pb = BigInt::from(p);
    pb.pow(3) * (pb.pow(2) - 1) * (&pb - 1)
}

fn check_u3_params(p: u64, n: u32, q: u64) -> Result<LocalFieldParams> {
    let params = LocalFieldParams::new(p, n, Some(q))?;
    if q < p {
        return contract("ζ_p must lie in K");
    }
    Ok(params)
}

/// Closed form for `ν(K, U_3(F_p))` when `ζ_p ∈ K`.
pub fn nu_u3(p: u64, n: u32, q: u64) -> Result<BigInt> {
    check_u3_params(p, n, q)?;
    let pb = BigInt::from(p);
    let two = BigInt::from(2);
    Ok(if p > 2 {
        let num = pb.pow(n) * (pb.pow(n + 2) - 1) * (pb.pow(n) - 1);
        arith::div_exact(&num, &((pb.pow(2) - 1) * (&pb - 1)), "nu_u3")
    } else if q > 2 {
        two.pow(n) * (two.pow(n) - 1) * (two.pow(n + 2) - 1)
    } else {
        let t = two.pow(n + 1) - 1;
        two.pow(n) * &t * &t
    })
}

/// `ν(K, U_3(F_p))` as `N · p^{n+2} / |Aut(U_3(F_p))|` with `N` the pair count.
pub fn nu_u3_via_pairs(p: u64, n: u32, q: u64) -> Result<BigInt> {
    check_u3_params(p, n, q)?;
    let pairs = cp_pair_count(p, n + 2, q == 2)?;
    exact_quotient(pairs * BigInt::from(p).pow(n + 2), u3_automorphism_order(p), "ν(K, U_3)")
}

/// The pair count for a SAP field with `n` orderings: `3^n - 2^{n+1} + 1`.
pub fn sap_pair_count(n: u32) -> Result<BigInt> {
    if n < 2 {
        return contract("n must be at least 2");
    }
    Ok(BigInt::from(3).pow(n) - BigInt::from(2).pow(n + 1) + 1)
}

/// `Σ_{k=2}^{n} C(n, k)(2^k - 2)`, the same count summed by support size.
pub fn sap_pair_count_direct(n: u32) -> Result<BigInt> {
    if n < 2 {
        return contract("n must be at least 2");
    }
    Ok((2..=n).map(|k| arith::binomial(&BigInt::from(n), k as usize) * (BigInt::from(2).pow(k) - 2)).sum())
}

/// `D_4`-extensions of a SAP field with `n` orderings: `2^{n-3}(3^n - 2^{n+1} + 1)`.
pub fn sap_d4_count(n: u32) -> Result<BigInt> {
    let pairs = sap_pair_count(n)?;
    let half = arith::div_exact(&pairs, &BigInt::from(2), "sap_d4_count");
    Ok(half * BigInt::from(2).pow(n - 2))
}

/// `8^{n+1} (4 + 1/2^n)`, the relation-solution count of `D_4` for `q = 2`.
pub fn d4_alpha_closed(n: u32) -> BigInt {
    let eight = BigInt::from(8).pow(n + 1);
    let two_n = BigInt::from(2).pow(n);
    arith::div_exact(&(&eight * (BigInt::from(4) * &two_n + BigInt::one())), &two_n, "d4_alpha_closed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::{abelian_group, cyclic_group, dihedral_group, subgroup_lattice, unipotent_group};

    fn d4() -> FiniteGroup {
        dihedral_group(4).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(LocalFieldParams::new(2, 1, Some(2)).is_ok());
        assert!(LocalFieldParams::new(2, 1, None).is_err());
        assert!(LocalFieldParams::new(3, 1, Some(3)).is_err());
        assert!(LocalFieldParams::new(3, 2, Some(3)).is_ok());
        assert!(LocalFieldParams::new(3, 2, None).is_ok());
        assert!(LocalFieldParams::new(2, 1, Some(4)).is_err());
        assert!(LocalFieldParams::new(2, 2, Some(4)).is_ok());
        assert!(LocalFieldParams::new(3, 2, Some(4)).is_err());
        let p = LocalFieldParams::new(2, 2, Some(2)).unwrap();
        assert!(p.with_case(RelationCase::R4, FInvariant::Infinite).is_err());
        assert!(p.with_case(RelationCase::R2, FInvariant::Finite(2)).is_err());
    }

    #[test]
    fn relation_words() {
        let r =
            |p, n, q| demushkin_relation(&LocalFieldParams::new(p, n, Some(q)).unwrap()).unwrap().to_string();
        assert_eq!(r(2, 1, 2), "x1^2x2^4[x2,x3]");
        assert_eq!(r(3, 2, 3), "x1^3[x1,x2][x3,x4]");
        assert_eq!(r(2, 3, 2), "x1^2x2^4[x2,x3][x4,x5]");
        let inf = LocalFieldParams::new(2, 2, Some(2))
            .unwrap()
            .with_case(RelationCase::R3, FInvariant::Infinite)
            .unwrap();
        assert_eq!(demushkin_relation(&inf).unwrap().to_string(), "x1^2[x1,x2][x3,x4]");
        let r4 = LocalFieldParams::new(2, 2, Some(2))
            .unwrap()
            .with_case(RelationCase::R4, FInvariant::Finite(3))
            .unwrap();
        assert_eq!(demushkin_relation(&r4).unwrap().to_string(), "x1^2[x1,x2]x3^8[x3,x4]");
        assert!(demushkin_relation(&LocalFieldParams::new(3, 2, None).unwrap()).is_err());
    }

    #[test]
    fn yamagishi_examples() {
        let p1 = LocalFieldParams::new(2, 1, Some(2)).unwrap();
        assert_eq!(nu_yamagishi(&p1, &d4()).unwrap(), BigInt::from(18));
        let p3 = LocalFieldParams::new(2, 3, Some(2)).unwrap();
        assert_eq!(nu_yamagishi(&p3, &d4()).unwrap(), BigInt::from(1800));
        assert_eq!(nu_yamagishi(&p1, &cyclic_group(2).unwrap()).unwrap(), BigInt::from(7));
        assert!(nu_yamagishi(&p1, &cyclic_group(3).unwrap()).is_err());
    }

    #[test]
    fn yamagishi_matches_u3_closed_forms() {
        for (p, n, q) in [(2u64, 1u32, 2u64), (2, 2, 2), (2, 2, 4), (3, 2, 3)] {
            let params = LocalFieldParams::new(p, n, Some(q)).unwrap();
            let g = unipotent_group(3, p).unwrap();
            assert_eq!(nu_yamagishi(&params, &g).unwrap(), nu_u3(p, n, q).unwrap(), "p={p} n={n} q={q}");
        }
    }

    #[test]
    fn free_case_matches_shafarevich() {
        for g in [cyclic_group(3).unwrap(), abelian_group(&[3, 3]).unwrap(), unipotent_group(3, 3).unwrap()] {
            for n in 1..=2 {
                let params = LocalFieldParams::new(3, n, None).unwrap();
                assert_eq!(nu_yamagishi(&params, &g).unwrap(), nu_shafarevich(3, n, &g).unwrap());
            }
        }
    }

    #[test]
    fn shafarevich_examples() {
        for p in [2u64, 3, 5] {
            assert_eq!(
                nu_shafarevich(p, 1, &cyclic_group(p as usize).unwrap()).unwrap(),
                BigInt::from(p + 1)
            );
        }
        assert_eq!(nu_shafarevich(2, 1, &abelian_group(&[2, 2]).unwrap()).unwrap(), BigInt::one());
        assert_eq!(nu_shafarevich(2, 1, &d4()).unwrap(), BigInt::from(3));
        for p in [2u64, 3, 5] {
            for d in 0..=4 {
                for n in 0..=4 {
                    assert_eq!(shafarevich_product(p, d, n), shafarevich_sum(p, d, n));
                }
            }
        }
    }

    #[test]
    fn alpha_consistency_on_abelian_subgroups() {
        let g = d4();
        let lattice = subgroup_lattice(&g).unwrap();
        for (p, n, q) in [(2u64, 1u32, 2u64), (2, 2, 2), (2, 2, 4)] {
            let params = LocalFieldParams::new(p, n, Some(q)).unwrap();
            for h in &lattice.subgroups {
                let sub = g.restrict(h);
                if sub.is_abelian() {
                    assert_eq!(
                        alpha_bruteforce(&params, &sub).unwrap(),
                        alpha_abelian(&params, &sub).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn d4_alpha_closed_form() {
        assert_eq!(d4_alpha_closed(1), BigInt::from(288));
        assert_eq!(d4_alpha_closed(2), BigInt::from(2176));
        for n in 1..=3 {
            let params = LocalFieldParams::new(2, n, Some(2)).unwrap();
            assert_eq!(alpha_bruteforce(&params, &d4()).unwrap(), d4_alpha_closed(n));
        }
        let r4 = LocalFieldParams::new(2, 2, Some(2))
            .unwrap()
            .with_case(RelationCase::R4, FInvariant::Finite(2))
            .unwrap();
        assert_eq!(alpha_bruteforce(&r4, &d4()).unwrap(), BigInt::from(2176));
    }

    /// Character table of `D_4` on the classes `{e}, {r^2}, {r, r^3}, {s, r^2 s}, {rs, r^3 s}`.
    const D4_CHARACTERS: [[i64; 5]; 5] =
        [[1, 1, 1, 1, 1], [1, 1, 1, -1, -1], [1, 1, -1, 1, -1], [1, 1, -1, -1, 1], [2, -2, 0, 0, 0]];

    fn d4_class(label: &str) -> usize {
        match label {
            "e" => 0,
            "r^2" => 1,
            "r" | "r^3" => 2,
            "s" | "r^2s" => 3,
            _ => 4,
        }
    }

    /// `α = (1/|G|) Σ_χ χ(1)^{2-k} ∏_j S_j(χ)` over the `k` independent factors,
    /// with `S_j(χ)` the character summed over that factor's assignments.
    #[test]
    fn character_sums_agree_with_word_counts() {
        let g = d4();
        let chi = |c: usize, x: usize| D4_CHARACTERS[c][d4_class(&g.label(x))];
        for n in [1u32, 3] {
            let params = LocalFieldParams::new(2, n, Some(2)).unwrap();
            // factors: x1^2 | x2^4 [x2,x3] | [x4,x5] | ...
            let k = 2 + (n as usize - 1) / 2;
            let mut total = 0i64;
            for c in 0..5 {
                let s1: i64 = (0..8).map(|x| chi(c, g.power(x, 2))).sum();
                let s2: i64 = (0..8)
                    .flat_map(|x| (0..8).map(move |y| (x, y)))
                    .map(|(x, y)| chi(c, g.mul(g.power(x, 4), g.commutator(x, y))))
                    .sum();
                let sc: i64 = (0..8)
                    .flat_map(|x| (0..8).map(move |y| (x, y)))
                    .map(|(x, y)| chi(c, g.commutator(x, y)))
                    .sum();
                let deg = D4_CHARACTERS[c][0];
                let prod = s1 * s2 * sc.pow(k as u32 - 2);
                // χ(1)^{2-k} with k >= 2
                assert_eq!(prod % deg.pow(k as u32 - 2), 0);
                total += prod / deg.pow(k as u32 - 2);
            }
            assert_eq!(total % 8, 0);
            assert_eq!(BigInt::from(total / 8), alpha_bruteforce(&params, &g).unwrap());
        }
    }

    #[test]
    fn pair_count_examples() {
        assert_eq!(cp_pair_count(3, 4, false).unwrap(), BigInt::from(1920));
        assert_eq!(cp_pair_count(2, 3, true).unwrap(), BigInt::from(18));
        assert_eq!(cp_pair_count(2, 4, false).unwrap(), BigInt::from(90));
        assert!(cp_pair_count(2, 2, false).is_err());
        assert!(cp_pair_count(3, 4, true).is_err());
        assert_eq!(cp_pair_count_bruteforce(2, 3, &[1, 0, 0]).unwrap(), 18);
        assert_eq!(cp_pair_count_bruteforce(3, 4, &[0; 4]).unwrap(), 1920);
        assert_eq!(cp_pair_count_bruteforce(2, 4, &[0; 4]).unwrap(), 90);
    }

    #[test]
    fn pair_counts_agree() {
        for (p, d) in [(2u64, 3u32), (2, 4), (2, 5), (3, 3), (3, 4)] {
            let mut alt = vec![0u64; d as usize];
            let closed = cp_pair_count(p, d, false).unwrap();
            match cp_pair_count_bruteforce(p, d, &alt) {
                Ok(n) => assert_eq!(BigInt::from(n), closed, "p={p} d={d}"),
                Err(e) => assert!(d % 2 == 1 && matches!(e, Error::Contract(_))),
            }
            alt[0] = 1;
            match cp_pair_count_bruteforce(p, d, &alt) {
                Ok(n) => assert_eq!(BigInt::from(n), cp_pair_count(2, d, true).unwrap(), "p={p} d={d}"),
                Err(e) => assert!(p != 2 && matches!(e, Error::Contract(_))),
            }
        }
        assert!(matches!(cp_pair_count_bruteforce(3, 8, &[0; 8]), Err(Error::Resource(_))));
    }

    #[test]
    fn u3_examples() {
        assert_eq!(nu_u3(2, 1, 2).unwrap(), BigInt::from(18));
        assert_eq!(nu_u3(2, 3, 2).unwrap(), BigInt::from(1800));
        assert_eq!(nu_u3(2, 2, 4).unwrap(), BigInt::from(180));
        assert_eq!(nu_u3(3, 2, 3).unwrap(), BigInt::from(360));
        for (p, n, q) in
            [(2, 1, 2), (2, 2, 2), (2, 3, 2), (2, 4, 2), (2, 2, 4), (2, 4, 4), (3, 2, 3), (3, 4, 3)]
        {
            assert_eq!(nu_u3_via_pairs(p, n, q).unwrap(), nu_u3(p, n, q).unwrap());
        }
        assert!(nu_u3(3, 1, 3).is_err());
        assert_eq!(
            u3_automorphism_order(3),
            BigInt::from(automorphism_count(&unipotent_group(3, 3).unwrap()).unwrap())
        );
        assert_eq!(
            u3_automorphism_order(2),
            BigInt::from(automorphism_count(&unipotent_group(3, 2).unwrap()).unwrap())
        );
    }

    #[test]
    fn sap_counts() {
        assert_eq!(sap_pair_count(2).unwrap(), BigInt::from(2));
        assert_eq!(sap_d4_count(2).unwrap(), BigInt::one());
        assert_eq!(sap_d4_count(4).unwrap(), BigInt::from(100));
        assert_eq!(sap_d4_count(8).unwrap(), BigInt::from(193600));
        for n in 2..=12 {
            assert_eq!(sap_pair_count(n).unwrap(), sap_pair_count_direct(n).unwrap());
        }
        assert!(sap_pair_count(1).is_err());
    }
}
