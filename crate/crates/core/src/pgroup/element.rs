//! Concrete group elements that [`super::group_from_generators`] can close over.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{contract, Result};

pub trait GroupElement: Clone + Eq + Hash + Debug + Send + Sync {
    /// The identity of the group this element lives in.
    fn identity_like(&self) -> Self;
    fn compose(&self, other: &Self) -> Self;
    fn label(&self) -> String;
}

/// A permutation of `0..n`, composed left to right: `(a * b)(x) = b(a(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u16>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return contract("images do not form a permutation");
            }
        }
        if n > u16::MAX as usize {
            return contract("permutation degree too large");
        }
        Ok(Permutation(images.into_iter().map(|x| x as u16).collect()))
    }

    /// Builds a permutation of `0..n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return contract("cycle entry out of range");
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }
}

impl GroupElement for Permutation {
    fn identity_like(&self) -> Self {
        Permutation((0..self.0.len() as u16).collect())
    }

    fn compose(&self, other: &Self) -> Self {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    fn label(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&x.to_string());
                first = false;
                x = self.0[x] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            "e".into()
        } else {
            out
        }
    }
}

/// A square matrix over `Z/m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    size: usize,
    modulus: u64,
    entries: Vec<u64>,
}

impl ModMatrix {
    pub fn new(size: usize, modulus: u64, entries: Vec<i64>) -> Result<Self> {
        if modulus < 2 || modulus > u32::MAX as u64 {
            return contract("modulus must be in 2..2^32");
        }
        if entries.len() != size * size {
            return contract("matrix entries do not match the size");
        }
        let m = modulus as i64;
        Ok(ModMatrix {
            size,
            modulus,
            entries: entries.into_iter().map(|x| x.rem_euclid(m) as u64).collect(),
        })
    }

    pub fn identity(size: usize, modulus: u64) -> Result<Self> {
        let mut e = vec![0i64; size * size];
        for i in 0..size {
            e[i * size + i] = 1;
        }
        Self::new(size, modulus, e)
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.size + j]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl GroupElement for ModMatrix {
    fn identity_like(&self) -> Self {
        let mut e = vec![0u64; self.size * self.size];
        for i in 0..self.size {
            e[i * self.size + i] = 1;
        }
        ModMatrix { size: self.size, modulus: self.modulus, entries: e }
    }

    fn compose(&self, other: &Self) -> Self {
        let n = self.size;
        let mut e = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    e[i * n + j] = (e[i * n + j] + a * other.entries[k * n + j]) % self.modulus;
                }
            }
        }
        ModMatrix { size: n, modulus: self.modulus, entries: e }
    }

    fn label(&self) -> String {
        let rows: Vec<String> = (0..self.size)
            .map(|i| {
                let r: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
                r.join(" ")
            })
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations() {
        let a = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let b = a.compose(&a);
        assert_eq!(b.label(), "(0 2)(1 3)");
        assert_eq!(b.compose(&b), a.identity_like());
        assert_eq!(a.identity_like().label(), "e");
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn matrices() {
        let u = ModMatrix::new(2, 3, vec![1, 1, 0, 1]).unwrap();
        let u3 = u.compose(&u).compose(&u);
        assert_eq!(u3, ModMatrix::identity(2, 3).unwrap());
        assert_eq!(u.label(), "[1 1; 0 1]");
        let neg = ModMatrix::new(1, 8, vec![-1]).unwrap();
        assert_eq!(neg.get(0, 0), 7);
        assert!(ModMatrix::new(2, 1, vec![0; 4]).is_err());
    }
}
