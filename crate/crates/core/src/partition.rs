//! Partitions, their combinatorics, residues and p-cores.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts are not weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("degree mismatch: {0} vs {1}")]
    Degree(usize, usize),
    #[error("{0} is not a prime")]
    NotPrime(u32),
}

/// A node `(row, col)`, both 1-based as in the usual English diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub fn new(row: usize, col: usize) -> Self {
        Node { row, col }
    }

    /// `col - row` mod `p`.
    pub fn residue(self, p: u32) -> u32 {
        (self.col as i64 - self.row as i64).rem_euclid(p as i64) as u32
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A partition with strictly positive, weakly decreasing parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition(
            (1..=first)
                .map(|c| self.0.iter().take_while(|&&x| x >= c).count())
                .collect(),
        )
    }

    /// `self ⊴ other` in the dominance order. Degrees must agree.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }

    pub fn contains(&self, inner: &Partition) -> bool {
        inner.len() <= self.len() && inner.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (1..=l).map(move |c| Node::new(i + 1, c)))
    }

    /// Removable nodes, top row first.
    pub fn removable_nodes(&self) -> Vec<Node> {
        (0..self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .map(|i| Node::new(i + 1, self.0[i]))
            .collect()
    }

    /// Addable nodes, top row first.
    pub fn addable_nodes(&self) -> Vec<Node> {
        (0..=self.len())
            .filter(|&i| i == 0 || self.part(i) < self.part(i - 1))
            .map(|i| Node::new(i + 1, self.part(i) + 1))
            .collect()
    }

    pub fn remove_node(&self, node: Node) -> Option<Partition> {
        if !self.removable_nodes().contains(&node) {
            return None;
        }
        let mut parts = self.0.clone();
        parts[node.row - 1] -= 1;
        Some(Partition::new(parts).expect("removing a removable node"))
    }

    pub fn add_node(&self, node: Node) -> Option<Partition> {
        if !self.addable_nodes().contains(&node) {
            return None;
        }
        let mut parts = self.0.clone();
        if node.row > parts.len() {
            parts.push(0);
        }
        parts[node.row - 1] += 1;
        Some(Partition(parts))
    }

    /// Multiset of residues of all nodes, as counts indexed by residue.
    pub fn residue_content(&self, p: u32) -> Vec<usize> {
        let mut c = vec![0; p as usize];
        for n in self.nodes() {
            c[n.residue(p) as usize] += 1;
        }
        c
    }

    pub fn hook_length(&self, node: Node) -> usize {
        let arm = self.0[node.row - 1] - node.col;
        let leg = self
            .0
            .iter()
            .skip(node.row)
            .take_while(|&&x| x >= node.col)
            .count();
        arm + leg + 1
    }

    /// Dimension of the Specht module in characteristic zero.
    pub fn char0_dim(&self) -> u128 {
        let mut num: u128 = 1;
        let mut hooks: Vec<u128> = self.nodes().map(|n| self.hook_length(n) as u128).collect();
        for k in 2..=self.degree() as u128 {
            num *= k;
            // keep the numerator small by cancelling as we go
            for h in hooks.iter_mut() {
                if *h > 1 && num.is_multiple_of(*h) {
                    num /= *h;
                    *h = 1;
                }
            }
        }
        let den: u128 = hooks.iter().product();
        num / den
    }

    /// The p-core, read off the p-abacus of the beta-numbers.
    pub fn core(&self, p: u32) -> Partition {
        let p = p as usize;
        let k = self.len();
        let betas: Vec<usize> = (0..k).map(|i| self.0[i] + k - 1 - i).collect();
        let mut runners = vec![0usize; p];
        for b in &betas {
            runners[b % p] += 1;
        }
        // slide every bead up its runner
        let mut pushed: Vec<usize> = Vec::with_capacity(k);
        for (r, &count) in runners.iter().enumerate() {
            pushed.extend((0..count).map(|j| r + j * p));
        }
        pushed.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(
            pushed
                .iter()
                .enumerate()
                .map(|(i, &b)| b - (k - 1 - i))
                .collect(),
        )
        .expect("core")
    }

    /// The p-weight: number of rim p-hooks removed to reach the core.
    pub fn weight(&self, p: u32) -> usize {
        (self.degree() - self.core(p).degree()) / p as usize
    }

    pub fn is_p_regular(&self, p: u32) -> bool {
        self.0
            .windows(p as usize)
            .all(|w| w[0] != w[p as usize - 1])
    }

    pub fn is_p_restricted(&self, p: u32) -> bool {
        (0..self.len()).all(|i| self.part(i) - self.part(i + 1) < p as usize)
    }

    /// Normal removable nodes: a removable node `R` of residue `a` is normal
    /// when every addable `a`-node above it can be matched to a distinct
    /// removable `a`-node strictly between the two.
    pub fn normal_nodes(&self, p: u32) -> Vec<Node> {
        let removable = self.removable_nodes();
        let addable = self.addable_nodes();
        removable
            .iter()
            .copied()
            .filter(|&r| {
                let a = r.residue(p);
                let mut above: Vec<Node> = addable
                    .iter()
                    .copied()
                    .filter(|n| n.row < r.row && n.residue(p) == a)
                    .collect();
                above.sort_by_key(|x| std::cmp::Reverse(x.row));
                // intervals are nested, so Hall's condition reduces to prefix counts
                above.iter().enumerate().all(|(k, add)| {
                    let between = removable
                        .iter()
                        .filter(|c| c.row > add.row && c.row < r.row && c.residue(p) == a)
                        .count();
                    between > k
                })
            })
            .collect()
    }

    /// Whether the removable nodes have pairwise distinct residues.
    pub fn removable_residues_distinct(&self, p: u32) -> bool {
        let res: Vec<u32> = self
            .removable_nodes()
            .iter()
            .map(|n| n.residue(p))
            .collect();
        (0..res.len()).all(|i| !res[i + 1..].contains(&res[i]))
    }

    /// All partitions of `n`, in lexicographically decreasing order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=rest.min(max)).rev() {
                cur.push(k);
                go(rest - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Multinomial `n! / prod(parts!)`, the dimension of the permutation module.
    pub fn multinomial(&self) -> u128 {
        let mut acc: u128 = 1;
        let mut seen = 0u128;
        for &part in &self.0 {
            for j in 1..=part as u128 {
                seen += 1;
                acc = acc * seen / j;
            }
        }
        acc
    }
}

/// Whether two partitions of the same degree lie in the same p-block.
pub fn same_block(a: &Partition, b: &Partition, p: u32) -> Result<bool, PartitionError> {
    if a.degree() != b.degree() {
        return Err(PartitionError::Degree(a.degree(), b.degree()));
    }
    Ok(a.core(p) == b.core(p))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Accepts `4,3,1`, the exponent shorthand `4^2,1`, and `0` or `""` for
    /// the empty partition. Parentheses are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PartitionError::Parse(s.to_string());
        let body = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if body.is_empty() || body == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<usize>().map_err(|_| err())?),
                None => (tok, 1),
            };
            let b: usize = base.parse().map_err(|_| err())?;
            if b == 0 {
                return Err(err());
            }
            parts.extend(std::iter::repeat_n(b, exp));
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Lexicographically decreasing order, which refines reverse dominance.
pub fn lex_desc(a: &Partition, b: &Partition) -> Ordering {
    b.0.cmp(&a.0)
}

#[macro_export]
macro_rules! part {
    ($($x:expr),* $(,)?) => {
        $crate::partition::Partition::new(vec![$($x),*]).expect("valid partition literal")
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!("4,3,1".parse::<Partition>().unwrap(), part![4, 3, 1]);
        assert_eq!("4^2,1".parse::<Partition>().unwrap(), part![4, 4, 1]);
        assert_eq!("(2,1^3)".parse::<Partition>().unwrap(), part![2, 1, 1, 1]);
        assert!("3,4".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn dimensions() {
        assert_eq!(part![4, 3, 2].char0_dim(), 168);
        assert_eq!(part![5, 4, 1].char0_dim(), 288);
        assert_eq!(part![7, 1, 1].char0_dim(), 28);
        assert_eq!(part![5, 5, 5].char0_dim(), 6006);
        assert_eq!(part![4, 4, 4].char0_dim(), 462);
        assert_eq!(Partition::empty().char0_dim(), 1);
    }

    #[test]
    fn cores() {
        assert_eq!(part![4, 3, 1].core(3), part![2]);
        assert_eq!(part![3, 3, 2].core(3), part![3, 1, 1]);
        assert_eq!(part![4, 3, 2].core(5), part![2, 1, 1]);
        assert_eq!(part![5, 3, 1].core(5), part![2, 1, 1]);
        assert_eq!(part![5].core(5), Partition::empty());
    }

    #[test]
    fn normal_node_of_442() {
        assert_eq!(part![4, 4, 2].normal_nodes(5), vec![Node::new(2, 4)]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn multinomials() {
        assert_eq!(part![5, 5].multinomial(), 252);
        assert_eq!(part![4, 4, 4].multinomial(), 34650);
    }
}
