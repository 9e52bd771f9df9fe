//! Cross-module checks: finite groups against series, lattices against
//! Gaussian binomials, extension counts along different routes.

use num_bigint::BigInt;
use zassenhaus::dims::DimensionTable;
use zassenhaus::ext::{nu_shafarevich, nu_u3, nu_yamagishi, LocalFieldParams};
use zassenhaus::hp::GroupFamily;
use zassenhaus::mobius::gaussian_binomial;
use zassenhaus::pgroup::{
    abelian_group, dihedral_group, subgroup_lattice, subgroup_mobius, unipotent_group, zassenhaus_chain,
};

#[test]
fn dihedral_quotients_match_infinite_dihedral_dims() {
    let table = DimensionTable::for_family(&GroupFamily::FreeProdCyclicP { p: 2, copies: 2 }, 2, 8).unwrap();
    for k in 2..=5u32 {
        let g = dihedral_group(1 << k).unwrap();
        let chain = zassenhaus_chain(&g, 2, 8).unwrap();
        // D_{2^k} agrees with the pro-2 completion below the level where r^{2^k} dies
        for n in 1..(1usize << (k - 1)).min(9) {
            assert_eq!(BigInt::from(chain.dims[n - 1]), table.c[n - 1], "k = {k}, n = {n}");
        }
    }
}

#[test]
fn elementary_abelian_lattices() {
    for (p, k) in [(2u64, 3u32), (3, 2), (2, 4)] {
        let g = abelian_group(&vec![p as usize; k as usize]).unwrap();
        let lattice = subgroup_lattice(&g).unwrap();
        let expected: BigInt = (0..=k).map(|j| gaussian_binomial(k, j, p)).sum();
        assert_eq!(BigInt::from(lattice.len()), expected);
        let (lattice, mu) = subgroup_mobius(&g).unwrap();
        let bottom = lattice.subgroups.iter().position(|h| h.is_trivial()).unwrap();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        assert_eq!(mu[bottom], sign * (p as i128).pow(k * (k - 1) / 2));
    }
}

#[test]
fn free_case_routes_agree() {
    for (p, n, g) in [
        (3u64, 1u32, abelian_group(&[3, 3]).unwrap()),
        (3, 2, unipotent_group(3, 3).unwrap()),
        (5, 1, abelian_group(&[5]).unwrap()),
    ] {
        let params = LocalFieldParams::new(p, n, None).unwrap();
        assert_eq!(nu_yamagishi(&params, &g).unwrap(), nu_shafarevich(p, n, &g).unwrap());
    }
}

#[test]
fn unipotent_counts_agree() {
    for (p, n, q) in [(2u64, 1u32, 2u64), (2, 2, 4), (3, 2, 3)] {
        let params = LocalFieldParams::new(p, n, Some(q)).unwrap();
        let g = unipotent_group(3, p).unwrap();
        assert_eq!(nu_yamagishi(&params, &g).unwrap(), nu_u3(p, n, q).unwrap(), "p={p} n={n} q={q}");
    }
}
