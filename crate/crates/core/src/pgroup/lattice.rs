//! Subgroup lattices and the Möbius function `μ_G(H) = μ(H, G)`.

use std::collections::{HashSet, VecDeque};

use super::{FiniteGroup, Subgroup};
use crate::arith;
use crate::error::{Error, Result};
use crate::mobius::FinitePoset;

/// Largest group whose full subgroup lattice is enumerated.
pub const LATTICE_MAX_ORDER: usize = 512;
/// Largest number of subgroups kept in one lattice.
pub const LATTICE_MAX_SUBGROUPS: usize = 10_000;

/// Subgroups sorted by `(order, members)`, with inclusion as the order.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub subgroups: Vec<Subgroup>,
    pub poset: FinitePoset,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Index of the whole group.
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.subgroups.iter().position(|s| s == h)
    }

    /// `μ(H, G)` for every subgroup `H` in the lattice.
    pub fn mobius(&self) -> Result<Vec<i128>> {
        self.poset.mobius_to(self.top())
    }
}

/// All subgroups of `g`.
pub fn subgroup_lattice(g: &FiniteGroup) -> Result<SubgroupLattice> {
    if g.order() > LATTICE_MAX_ORDER {
        return Err(Error::Resource(format!(
            "subgroup lattice enumeration is limited to order {LATTICE_MAX_ORDER}"
        )));
    }
    overgroup_lattice(g, &g.trivial())
}

/// All subgroups of `g` that contain `base`: joins of the subgroups
/// `<base, x>` closed under further joins.
pub fn overgroup_lattice(g: &FiniteGroup, base: &Subgroup) -> Result<SubgroupLattice> {
    let mut seeds: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    for x in 0..g.order() {
        if base.contains(x) {
            continue;
        }
        let s = g.generate_over(base, [x]);
        if seen.insert(s.clone()) {
            seeds.push(s);
        }
    }
    seen.insert(base.clone());
    let mut found: Vec<Subgroup> = std::iter::once(base.clone()).chain(seeds.iter().cloned()).collect();
    let mut queue: VecDeque<Subgroup> = seeds.iter().cloned().collect();
    while let Some(h) = queue.pop_front() {
        for s in &seeds {
            if s.is_subgroup_of(&h) {
                continue;
            }
            let j = g.join(&h, s);
            if seen.insert(j.clone()) {
                if found.len() >= LATTICE_MAX_SUBGROUPS {
                    return Err(Error::Resource(format!("more than {LATTICE_MAX_SUBGROUPS} subgroups")));
                }
                found.push(j.clone());
                queue.push_back(j);
            }
        }
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    let poset = FinitePoset::new(found.len(), |a, b| found[a].is_subgroup_of(&found[b]))?;
    Ok(SubgroupLattice { subgroups: found, poset })
}

/// The full lattice of `g` together with `μ_G` on it.
pub fn subgroup_mobius(g: &FiniteGroup) -> Result<(SubgroupLattice, Vec<i128>)> {
    let lattice = subgroup_lattice(g)?;
    let mu = lattice.mobius()?;
    Ok((lattice, mu))
}

/// `μ_G(H)` for a `p`-group from the index alone: `(-1)^i p^{i(i-1)/2}` when
/// `Φ(G) ≤ H` and `[G : H] = p^i`, zero otherwise.
pub fn mobius_closed_form(p: u64, index: usize, contains_frattini: bool) -> i128 {
    if !contains_frattini {
        return 0;
    }
    let i = arith::log_exact(index as u64, p).expect("index of a subgroup of a p-group");
    let sign = if i.is_multiple_of(2) { 1 } else { -1 };
    sign * (p as i128).pow(i * (i.saturating_sub(1)) / 2)
}
