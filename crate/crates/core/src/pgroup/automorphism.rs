//! Counting automorphisms by enumerating images of a minimal generating tuple.

use rayon::prelude::*;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Largest group accepted by [`automorphism_count`].
pub const AUT_MAX_ORDER: usize = 1024;
/// Bound on `(number of candidate tuples) × |G|` checks.
const AUT_BUDGET: u128 = 1 << 34;

pub(crate) fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    g.small_generators(&g.whole())
}

/// A generating tuple of minimal length. For `p`-groups it is a lift of a
/// basis of `G/Φ(G)`; otherwise tuples of length 1, 2, 3 are searched.
pub fn minimal_generating_tuple(g: &FiniteGroup) -> Result<Vec<usize>> {
    if g.order() == 1 {
        return Ok(Vec::new());
    }
    if let Some(p) = g.prime() {
        let mut h: Subgroup = super::frattini(g, p)?;
        let mut tuple = Vec::new();
        for x in 0..g.order() {
            if !h.contains(x) {
                tuple.push(x);
                h = g.generate_over(&h, [x]);
            }
        }
        return Ok(tuple);
    }
    let n = g.order();
    for k in 1..=3u32 {
        if (n as u128).pow(k) > 1 << 24 {
            break;
        }
        for t in 0..n.pow(k) {
            let tuple: Vec<usize> = (0..k).map(|i| (t / n.pow(i)) % n).collect();
            if g.generate(&tuple).order() == n {
                return Ok(tuple);
            }
        }
    }
    Err(Error::Resource("no generating tuple of length at most 3 found".into()))
}

/// `|Aut(G)|`: tuples `(h_1, ..., h_k)` with `ord(h_i) = ord(g_i)` that extend to
/// bijective homomorphisms, for a minimal generating tuple `(g_1, ..., g_k)`.
pub fn automorphism_count(g: &FiniteGroup) -> Result<u128> {
    let n = g.order();
    if n > AUT_MAX_ORDER {
        return Err(Error::Resource(format!("automorphism counting is limited to order {AUT_MAX_ORDER}")));
    }
    let tuple = minimal_generating_tuple(g)?;
    if tuple.is_empty() {
        return Ok(1);
    }
    // breadth-first spanning tree: x = parent[x].0 * tuple[parent[x].1]
    let mut parent = vec![(usize::MAX, 0usize); n];
    let mut order = vec![g.identity()];
    parent[g.identity()] = (g.identity(), 0);
    let mut head = 0;
    while head < order.len() {
        let y = order[head];
        for (i, &t) in tuple.iter().enumerate() {
            let x = g.mul(y, t);
            if parent[x].0 == usize::MAX {
                parent[x] = (y, i);
                order.push(x);
            }
        }
        head += 1;
    }
    let candidates: Vec<Vec<usize>> = tuple
        .iter()
        .map(|&t| {
            let o = g.element_order(t);
            (0..n).filter(|&h| g.element_order(h) == o).collect()
        })
        .collect();
    let total = candidates.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if total.saturating_mul(n as u128) > AUT_BUDGET {
        return Err(Error::Resource(format!("{total} candidate images exceed the budget")));
    }
    let k = tuple.len();
    let count = (0..candidates[0].len())
        .into_par_iter()
        .map(|first| {
            let mut images = vec![0usize; k];
            let mut digits = vec![0usize; k];
            digits[0] = first;
            let mut phi = vec![0usize; n];
            let mut hit = vec![false; n];
            let mut local = 0u128;
            loop {
                for i in 0..k {
                    images[i] = candidates[i][digits[i]];
                }
                if extends(g, &tuple, &images, &order, &parent, &mut phi, &mut hit) {
                    local += 1;
                }
                let mut j = 1;
                while j < k {
                    digits[j] += 1;
                    if digits[j] < candidates[j].len() {
                        break;
                    }
                    digits[j] = 0;
                    j += 1;
                }
                if j >= k {
                    break;
                }
            }
            local
        })
        .sum();
    Ok(count)
}

fn extends(
    g: &FiniteGroup,
    tuple: &[usize],
    images: &[usize],
    order: &[usize],
    parent: &[(usize, usize)],
    phi: &mut [usize],
    hit: &mut [bool],
) -> bool {
    hit.iter_mut().for_each(|h| *h = false);
    for &x in order {
        let value = if x == g.identity() {
            g.identity()
        } else {
            let (y, i) = parent[x];
            g.mul(phi[y], images[i])
        };
        if std::mem::replace(&mut hit[value], true) {
            return false;
        }
        phi[x] = value;
    }
    order.iter().all(|&a| tuple.iter().zip(images).all(|(&t, &h)| phi[g.mul(a, t)] == g.mul(phi[a], h)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::{abelian_group, cyclic_group, dihedral_group, unipotent_group};

    #[test]
    fn known_counts() {
        assert_eq!(automorphism_count(&dihedral_group(4).unwrap()).unwrap(), 8);
        assert_eq!(automorphism_count(&unipotent_group(3, 3).unwrap()).unwrap(), 432);
        assert_eq!(automorphism_count(&unipotent_group(3, 2).unwrap()).unwrap(), 8);
        assert_eq!(automorphism_count(&cyclic_group(4).unwrap()).unwrap(), 2);
        assert_eq!(automorphism_count(&abelian_group(&[2, 2]).unwrap()).unwrap(), 6);
        assert_eq!(automorphism_count(&abelian_group(&[2, 2, 2]).unwrap()).unwrap(), 168);
        assert_eq!(automorphism_count(&abelian_group(&[4, 2]).unwrap()).unwrap(), 8);
        assert_eq!(automorphism_count(&cyclic_group(1).unwrap()).unwrap(), 1);
        // non-p-groups: C_6 and S_3 = D_3
        assert_eq!(automorphism_count(&cyclic_group(6).unwrap()).unwrap(), 2);
        assert_eq!(automorphism_count(&dihedral_group(3).unwrap()).unwrap(), 6);
    }

    #[test]
    fn generating_tuples_are_minimal() {
        assert_eq!(minimal_generating_tuple(&dihedral_group(4).unwrap()).unwrap().len(), 2);
        assert_eq!(minimal_generating_tuple(&abelian_group(&[2, 2, 2]).unwrap()).unwrap().len(), 3);
        assert_eq!(minimal_generating_tuple(&cyclic_group(12).unwrap()).unwrap().len(), 1);
    }
}
