//! Frattini subgroup, lower central series and the Zassenhaus filtration.

use super::{FiniteGroup, Subgroup};
use crate::arith;
use crate::error::Result;

/// Subgroup generated by `{a^p : a ∈ h}`.
pub fn power_subgroup(g: &FiniteGroup, h: &Subgroup, p: u64) -> Subgroup {
    g.generate_over(&g.trivial(), h.elements().map(|a| g.power(a, p as i64)))
}

/// Subgroup generated by `{[a, b] : a ∈ x, b ∈ y}`.
pub fn commutator_subgroup(g: &FiniteGroup, x: &Subgroup, y: &Subgroup) -> Subgroup {
    let ys: Vec<usize> = y.elements().collect();
    g.generate_over(&g.trivial(), x.elements().flat_map(|a| ys.iter().map(move |&b| g.commutator(a, b))))
}

/// `Φ(G) = G^p [G, G]` for a `p`-group.
pub fn frattini(g: &FiniteGroup, p: u64) -> Result<Subgroup> {
    g.require_p_group(p)?;
    let whole = g.whole();
    let powers = power_subgroup(g, &whole, p);
    Ok(g.join(&powers, &commutator_subgroup(g, &whole, &whole)))
}

/// `G_1 = G`, `G_{i+1} = [G_i, G]`, ending at the first repeated term.
pub fn lower_central_chain(g: &FiniteGroup) -> Vec<Subgroup> {
    let whole = g.whole();
    let mut chain = vec![whole.clone()];
    loop {
        let next = commutator_subgroup(g, chain.last().unwrap(), &whole);
        if &next == chain.last().unwrap() {
            return chain;
        }
        chain.push(next);
    }
}

/// Levels `G_(1) ⊇ G_(2) ⊇ ...` and the dimensions `log_p [G_(n) : G_(n+1)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZassenhausChain {
    pub p: u64,
    /// `levels[n - 1] = G_(n)` for `n = 1..=max_n + 1`.
    pub levels: Vec<Subgroup>,
    /// `dims[n - 1] = log_p [G_(n) : G_(n+1)]` for `n = 1..=max_n`.
    pub dims: Vec<u32>,
}

impl ZassenhausChain {
    pub fn level(&self, n: usize) -> &Subgroup {
        &self.levels[n - 1]
    }

    /// Largest `n` with `G_(n) ≠ 1`, if the chain reaches the trivial group.
    pub fn depth(&self) -> Option<usize> {
        let first_trivial = self.levels.iter().position(|h| h.is_trivial())?;
        Some(first_trivial)
    }
}

/// `G_(n) = G_(⌈n/p⌉)^p ∏_{i+j=n} [G_(i), G_(j)]` for `n = 1..=max_n + 1`.
pub fn zassenhaus_chain(g: &FiniteGroup, p: u64, max_n: usize) -> Result<ZassenhausChain> {
    g.require_p_group(p)?;
    let mut levels = vec![g.whole()];
    for n in 2..=max_n + 1 {
        let prev = &levels[n.div_ceil(p as usize) - 1];
        let mut h = power_subgroup(g, prev, p);
        for i in 1..=n / 2 {
            let j = n - i;
            let c = commutator_subgroup(g, &levels[i - 1], &levels[j - 1]);
            h = g.join(&h, &c);
        }
        levels.push(h);
    }
    let dims = levels
        .windows(2)
        .map(|w| {
            let index = (w[0].order() / w[1].order()) as u64;
            arith::log_exact(index, p).expect("filtration indices are powers of p")
        })
        .collect();
    Ok(ZassenhausChain { p, levels, dims })
}
