//! Explicit finite groups given by dense multiplication tables, with the
//! subgroup machinery used as a brute-force oracle.

mod automorphism;
mod builders;
mod element;
mod filtration;
mod lattice;
mod words;

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::arith;
use crate::error::{contract, Error, Result};

pub use automorphism::{automorphism_count, minimal_generating_tuple};
pub use builders::{
    abelian_group, cyclic_group, dihedral_group, group_from_generators, semidirect_inversion,
    unipotent_group, GroupSpec,
};
pub use element::{GroupElement, ModMatrix, Permutation};
pub use filtration::{
    commutator_subgroup, frattini, lower_central_chain, power_subgroup, zassenhaus_chain, ZassenhausChain,
};
pub use lattice::{
    mobius_closed_form, overgroup_lattice, subgroup_lattice, subgroup_mobius, SubgroupLattice,
};
pub use words::{count_word_solutions, RelationWord};

/// Largest group with a materialised multiplication table (a 32 MiB table).
pub const MAX_ORDER: usize = 1 << 12;

/// A finite group on `0..order` with a dense multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    identity: usize,
    inverse: Vec<u16>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a raw table: closure, identity, inverses, associativity
    /// (Light's test against the generators) and generation.
    pub fn from_table(
        order: usize,
        table: Vec<usize>,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 {
            return contract("a group has at least one element");
        }
        if order > MAX_ORDER {
            return Err(Error::Resource(format!("group of order {order} exceeds {MAX_ORDER}")));
        }
        if table.len() != order * order || table.iter().any(|&x| x >= order) {
            return contract("multiplication table has the wrong shape");
        }
        if generators.iter().any(|&g| g >= order) {
            return contract("generator index out of range");
        }
        if labels.as_ref().is_some_and(|l| l.len() != order) {
            return contract("one label per element is required");
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or_else(|| Error::Contract("table has no identity".into()))?;
        let mut inverse = vec![0u16; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| table[x * order + y] == identity)
                .ok_or_else(|| Error::Contract(format!("element {x} has no inverse")))?;
            if table[y * order + x] != identity {
                return contract(format!("element {x} has no two-sided inverse"));
            }
            inverse[x] = y as u16;
        }
        let group = FiniteGroup {
            order,
            table: table.into_iter().map(|x| x as u16).collect(),
            identity,
            inverse,
            generators,
            labels,
        };
        for &g in &group.generators {
            for x in 0..order {
                for y in 0..order {
                    if group.mul(group.mul(x, g), y) != group.mul(x, group.mul(g, y)) {
                        return contract("multiplication is not associative");
                    }
                }
            }
        }
        if group.generate(&group.generators).order() != order {
            return contract("generators do not generate the group");
        }
        Ok(group)
    }

    /// Trusted constructor for tables built from a concrete associative model.
    pub(crate) fn from_parts(
        order: usize,
        table: Vec<u16>,
        identity: usize,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Self {
        let mut inverse = vec![0u16; order];
        for x in 0..order {
            for y in 0..order {
                if table[x * order + y] as usize == identity {
                    inverse[x] = y as u16;
                    break;
                }
            }
        }
        FiniteGroup { order, table, identity, inverse, generators, labels }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `a^e` for any integer exponent.
    pub fn power(&self, a: usize, e: i64) -> usize {
        let ord = self.element_order(a) as i64;
        let mut e = e.rem_euclid(ord) as u64;
        let (mut base, mut acc) = (a, self.identity);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("g{a}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The prime `p` if the order is a power of `p` greater than 1.
    pub fn prime(&self) -> Option<u64> {
        let f = arith::factorize(self.order as u64);
        (f.len() == 1).then(|| f[0].0)
    }

    pub(crate) fn require_p_group(&self, p: u64) -> Result<()> {
        if self.order == 1 || arith::log_exact(self.order as u64, p).is_some() {
            Ok(())
        } else {
            contract(format!("group of order {} is not a {p}-group", self.order))
        }
    }

    pub fn whole(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order);
        bits.insert_range(..);
        Subgroup { bits }
    }

    pub fn trivial(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order);
        bits.insert(self.identity);
        Subgroup { bits }
    }

    /// Subgroup generated by `gens`: the closure of the identity under right
    /// multiplication, which is enough in a finite group.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order);
        bits.insert(self.identity);
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !bits.contains(y) {
                    bits.insert(y);
                    queue.push_back(y);
                }
            }
        }
        Subgroup { bits }
    }

    /// A small generating set of `h`, chosen greedily in index order.
    pub fn small_generators(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        for x in h.elements() {
            if !cur.contains(x) {
                gens.push(x);
                cur = self.generate(&gens);
                if cur.order() == h.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Smallest subgroup containing `base` and every element of `elems`.
    pub fn generate_over(&self, base: &Subgroup, elems: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut gens = self.small_generators(base);
        let mut h = base.clone();
        for x in elems {
            if !h.contains(x) {
                gens.push(x);
                h = self.generate(&gens);
            }
        }
        h
    }

    /// Join of two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.generate_over(a, b.bits.ones())
    }

    /// Checks closure under multiplication (which suffices in a finite group).
    pub fn is_subgroup(&self, bits: &FixedBitSet) -> bool {
        bits.contains(self.identity)
            && bits.ones().all(|a| bits.ones().all(|b| bits.contains(self.mul(a, b))))
    }

    /// The same group with element `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
            return contract("relabelling must be a permutation of the elements");
        }
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u16;
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for (i, s) in l.iter().enumerate() {
                out[perm[i]] = s.clone();
            }
            out
        });
        let gens = self.generators.iter().map(|&g| perm[g]).collect();
        Ok(FiniteGroup::from_parts(n, table, perm[self.identity], gens, labels))
    }

    /// Restriction to a subgroup, re-indexed as `0..|H|` in increasing element order.
    pub fn restrict(&self, h: &Subgroup) -> FiniteGroup {
        let members: Vec<usize> = h.bits.ones().collect();
        let mut index = vec![usize::MAX; self.order];
        for (i, &m) in members.iter().enumerate() {
            index[m] = i;
        }
        let k = members.len();
        let mut table = vec![0u16; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i * k + j] = index[self.mul(a, b)] as u16;
            }
        }
        let labels = members.iter().map(|&m| self.label(m)).collect();
        let identity = index[self.identity];
        let mut sub = FiniteGroup::from_parts(k, table, identity, Vec::new(), Some(labels));
        sub.generators = automorphism::greedy_generators(&sub);
        sub
    }

    /// Short description of a subgroup: its elements when small, its order otherwise.
    pub fn describe(&self, h: &Subgroup) -> String {
        if h.order() == self.order {
            return "G".into();
        }
        if h.order() <= 8 {
            let names: Vec<String> = h.bits.ones().map(|x| self.label(x)).collect();
            format!("{{{}}}", names.join(", "))
        } else {
            format!("subgroup of order {}", h.order())
        }
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {} with {} generators", self.order, self.generators.len())
    }
}

/// A subgroup, as a bitset over its parent group's elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    bits: FixedBitSet,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }
}
