//! Permutations and the Coxeter presentation of the symmetric group.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a permutation of 1..{0}: {1:?}")]
    NotPermutation(usize, Vec<usize>),
    #[error("need 1 <= m <= n, got m={m}, n={n}")]
    YoungRange { m: usize, n: usize },
    #[error("degrees differ: {0} vs {1}")]
    Degree(usize, usize),
}

/// A permutation of `1..=n` in one-line notation: `images[i]` is the image of `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(GroupError::NotPermutation(n, images));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition `(i, i+1)`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(
            i >= 1 && i < n,
            "s_{i} is not a generator of the symmetric group on {n} letters"
        );
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    /// `self * other`, acting on the left: `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::Degree(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.degree()];
        let mut s = 1;
        for start in 0..self.degree() {
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] - 1;
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 1..=self.degree() {
            if seen[start - 1] || self.apply(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x - 1] {
                seen[x - 1] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

/// `s_1, ..., s_{n-1}`.
pub fn coxeter_generators(n: usize) -> Vec<Permutation> {
    (1..n).map(|i| Permutation::simple(n, i)).collect()
}

/// Indices of the generators of the Young subgroup on `1..m` and `m+1..n`:
/// `s_1..s_{m-1}` and `s_{m+1}..s_{n-1}`.
pub fn young_subgroup_indices(m: usize, n: usize) -> Result<(Vec<usize>, Vec<usize>), GroupError> {
    if m == 0 || m > n {
        return Err(GroupError::YoungRange { m, n });
    }
    Ok(((1..m).collect(), (m + 1..n).collect()))
}

pub fn young_subgroup_generators(
    m: usize,
    n: usize,
) -> Result<(Vec<Permutation>, Vec<Permutation>), GroupError> {
    let (a, b) = young_subgroup_indices(m, n)?;
    let perms = |v: Vec<usize>| v.into_iter().map(|i| Permutation::simple(n, i)).collect();
    Ok((perms(a), perms(b)))
}

/// Relations of the Coxeter presentation as words in generator indices
/// (1-based): `s_i^2`, `(s_i s_{i+1})^3`, and `(s_i s_j)^2` for `|i - j| >= 2`.
pub fn coxeter_relations(n: usize) -> Vec<Vec<usize>> {
    let mut rels = Vec::new();
    for i in 1..n {
        rels.push(vec![i, i]);
    }
    for i in 1..n.saturating_sub(1) {
        rels.push([i, i + 1].repeat(3));
    }
    for i in 1..n {
        for j in i + 2..n {
            rels.push(vec![i, j, i, j]);
        }
    }
    rels
}

/// The product `s_{w_1} s_{w_2} ... s_{w_k}`.
pub fn evaluate_word(n: usize, word: &[usize]) -> Permutation {
    word.iter().fold(Permutation::identity(n), |acc, &i| {
        acc.compose(&Permutation::simple(n, i)).expect("degree")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold() {
        for n in 1..=7 {
            for r in coxeter_relations(n) {
                assert!(evaluate_word(n, &r).is_identity(), "{r:?}");
            }
        }
    }

    #[test]
    fn young_generators() {
        let (a, b) = young_subgroup_indices(3, 6).unwrap();
        assert_eq!(a, vec![1, 2]);
        assert_eq!(b, vec![4, 5]);
        assert!(young_subgroup_indices(0, 3).is_err());
        assert!(young_subgroup_indices(4, 3).is_err());
    }

    #[test]
    fn display_and_sign() {
        let p = Permutation::new(vec![2, 3, 1, 4]).unwrap();
        assert_eq!(p.to_string(), "(1,2,3)");
        assert_eq!(p.sign(), 1);
        assert_eq!(Permutation::simple(4, 2).sign(), -1);
        assert!(Permutation::new(vec![1, 1]).is_err());
    }
}
