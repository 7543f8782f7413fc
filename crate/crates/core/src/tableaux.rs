//! Skew shapes, standard tableaux and Littlewood-Richardson multiplicities.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{lex_desc, Node, Partition, PartitionError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("inner shape {inner} does not fit inside {outer}")]
    NotContained { outer: Partition, inner: Partition },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("principal block sections need p >= 3, at most three parts and degree > p; got p={p}, {lambda}")]
    PrincipalRange { p: u32, lambda: Partition },
}

/// The skew diagram `outer / inner`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, ShapeError> {
        if !outer.contains(&inner) {
            return Err(ShapeError::NotContained { outer, inner });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.degree() - self.inner.degree()
    }

    /// Cells row by row, left to right.
    pub fn cells(&self) -> Vec<Node> {
        (0..self.outer.len())
            .flat_map(|i| {
                (self.inner.part(i) + 1..=self.outer.part(i)).map(move |c| Node::new(i + 1, c))
            })
            .collect()
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

impl FromStr for SkewShape {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            Some((o, i)) => SkewShape::new(o.parse()?, i.parse()?),
            None => Ok(SkewShape::straight(s.parse()?)),
        }
    }
}

impl Serialize for SkewShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SkewShape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A filling of a skew shape; `rows[i]` lists the entries of row `i` from
/// left to right, starting at column `inner_i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub shape: SkewShape,
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn entry(&self, node: Node) -> Option<usize> {
        let start = self.shape.inner.part(node.row - 1);
        node.col
            .checked_sub(start + 1)
            .and_then(|c| self.rows.get(node.row - 1)?.get(c).copied())
    }

    pub fn is_standard(&self) -> bool {
        let n = self.shape.size();
        let mut seen = vec![false; n + 1];
        for r in &self.rows {
            for &x in r {
                if x == 0 || x > n || seen[x] {
                    return false;
                }
                seen[x] = true;
            }
        }
        self.shape.cells().iter().all(|&c| {
            let x = self.entry(c).unwrap();
            let right = self.entry(Node::new(c.row, c.col + 1));
            let below = self.entry(Node::new(c.row + 1, c.col));
            right.is_none_or(|y| y > x) && below.is_none_or(|y| y > x)
        })
    }
}

/// All standard tableaux of the shape, in the order produced by placing
/// `1, 2, ...` into addable cells scanned top to bottom.
pub fn standard_tableaux(shape: &SkewShape) -> Vec<Tableau> {
    let outer = shape.outer.parts().to_vec();
    let mut cur: Vec<usize> = (0..outer.len()).map(|i| shape.inner.part(i)).collect();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); outer.len()];
    let mut out = Vec::new();
    fn go(
        k: usize,
        n: usize,
        outer: &[usize],
        cur: &mut Vec<usize>,
        rows: &mut Vec<Vec<usize>>,
        shape: &SkewShape,
        out: &mut Vec<Tableau>,
    ) {
        if k > n {
            out.push(Tableau {
                shape: shape.clone(),
                rows: rows.clone(),
            });
            return;
        }
        for i in 0..outer.len() {
            if cur[i] < outer[i] && (i == 0 || cur[i] < cur[i - 1]) {
                cur[i] += 1;
                rows[i].push(k);
                go(k + 1, n, outer, cur, rows, shape, out);
                rows[i].pop();
                cur[i] -= 1;
            }
        }
    }
    go(
        1,
        shape.size(),
        &outer,
        &mut cur,
        &mut rows,
        shape,
        &mut out,
    );
    out
}

/// Number of standard tableaux, by dynamic programming over intermediate shapes.
pub fn count_standard(shape: &SkewShape) -> u128 {
    fn go(cur: &mut Vec<usize>, outer: &[usize], memo: &mut HashMap<Vec<usize>, u128>) -> u128 {
        if cur.as_slice() == outer {
            return 1;
        }
        if let Some(&v) = memo.get(cur.as_slice()) {
            return v;
        }
        let mut total = 0;
        for i in 0..outer.len() {
            if cur[i] < outer[i] && (i == 0 || cur[i] < cur[i - 1]) {
                cur[i] += 1;
                total += go(cur, outer, memo);
                cur[i] -= 1;
            }
        }
        memo.insert(cur.clone(), total);
        total
    }
    let outer = shape.outer.parts().to_vec();
    let mut cur: Vec<usize> = (0..outer.len()).map(|i| shape.inner.part(i)).collect();
    go(&mut cur, &outer, &mut HashMap::new())
}

/// Sections of a filtration: each partition with its multiplicity, ordered
/// from the top of the filtration (most dominant) to the bottom.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Filtration {
    pub sections: Vec<(Partition, usize)>,
}

impl Filtration {
    pub fn multiplicity(&self, nu: &Partition) -> usize {
        self.sections
            .iter()
            .find(|(p, _)| p == nu)
            .map_or(0, |(_, m)| *m)
    }

    /// Sum of multiplicity times characteristic zero dimension.
    pub fn total_dim(&self) -> u128 {
        self.sections
            .iter()
            .map(|(p, m)| *m as u128 * p.char0_dim())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }
}

/// Littlewood-Richardson multiplicities of `outer / inner`, counted by
/// enumerating lattice-word fillings.
pub fn lr_sections(shape: &SkewShape) -> Filtration {
    let outer = shape.outer.parts();
    let inner: Vec<usize> = (0..outer.len()).map(|i| shape.inner.part(i)).collect();
    // reading order: rows top to bottom, each row right to left
    let cells: Vec<(usize, usize)> = (0..outer.len())
        .flat_map(|i| (inner[i]..outer[i]).rev().map(move |c| (i, c)))
        .collect();
    let mut fill: Vec<Vec<usize>> = outer.iter().map(|&l| vec![0; l]).collect();
    let mut content = vec![0usize; outer.len() + 1];
    let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        inner: &[usize],
        outer: &[usize],
        fill: &mut Vec<Vec<usize>>,
        content: &mut Vec<usize>,
        counts: &mut HashMap<Vec<usize>, usize>,
    ) {
        let Some(&(r, c)) = cells.get(idx) else {
            let nu: Vec<usize> = content
                .iter()
                .copied()
                .skip(1)
                .take_while(|&x| x > 0)
                .collect();
            *counts.entry(nu).or_default() += 1;
            return;
        };
        // weakly increasing along the row: bounded by the cell to the right
        let hi = if c + 1 < outer[r] {
            fill[r][c + 1]
        } else {
            r + 1
        };
        // strictly increasing down columns when the cell above is in the skew shape
        let lo = if r > 0 && c >= inner[r - 1] {
            fill[r - 1][c] + 1
        } else {
            1
        };
        for v in lo..=hi.min(r + 1) {
            if v > 1 && content[v] + 1 > content[v - 1] {
                continue;
            }
            fill[r][c] = v;
            content[v] += 1;
            go(idx + 1, cells, inner, outer, fill, content, counts);
            content[v] -= 1;
        }
        fill[r][c] = 0;
    }
    go(
        0,
        &cells,
        &inner,
        outer,
        &mut fill,
        &mut content,
        &mut counts,
    );
    let mut sections: Vec<(Partition, usize)> = counts
        .into_iter()
        .map(|(nu, m)| (Partition::new(nu).expect("lattice content"), m))
        .collect();
    sections.sort_by(|a, b| lex_desc(&a.0, &b.0));
    Filtration { sections }
}

/// The coefficient `c^lambda_{mu, nu}`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    if lambda.degree() != mu.degree() + nu.degree() || !lambda.contains(mu) || !lambda.contains(nu)
    {
        return 0;
    }
    lr_sections(&SkewShape {
        outer: lambda.clone(),
        inner: mu.clone(),
    })
    .multiplicity(nu)
}

/// Restriction to one fewer letter: one section per removable node,
/// most dominant on top.
pub fn branching_sections(lambda: &Partition) -> Vec<Partition> {
    lambda
        .removable_nodes()
        .iter()
        .rev()
        .map(|&n| lambda.remove_node(n).expect("removable"))
        .collect()
}

/// Partitions `mu` of `m` inside `lambda`, which index the sections of the
/// restriction to the Young subgroup of `m` and `n - m` letters.
pub fn young_filtration_sections(lambda: &Partition, m: usize) -> Vec<Partition> {
    let mut out: Vec<Partition> = Partition::all(m)
        .into_iter()
        .filter(|mu| lambda.contains(mu))
        .collect();
    out.sort_by(lex_desc);
    out
}

/// The three skew pieces of the principal block part of the restriction
/// to `p` and `r - p` letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalSections {
    /// Sections of `lambda / (p)`.
    pub u: Filtration,
    /// Sections of `lambda / (p-1,1)`.
    pub v: Filtration,
    /// Sections of `lambda / (p-2,1,1)`.
    pub w: Filtration,
}

pub fn principal_block_sections(
    lambda: &Partition,
    p: u32,
) -> Result<PrincipalSections, ShapeError> {
    let pu = p as usize;
    if p < 3 || lambda.len() > 3 || lambda.degree() <= pu {
        return Err(ShapeError::PrincipalRange {
            p,
            lambda: lambda.clone(),
        });
    }
    let piece = |inner: Partition| {
        if lambda.contains(&inner) {
            lr_sections(&SkewShape {
                outer: lambda.clone(),
                inner,
            })
        } else {
            Filtration::default()
        }
    };
    Ok(PrincipalSections {
        u: piece(Partition::new(vec![pu]).expect("row")),
        v: piece(Partition::new(vec![pu - 1, 1]).expect("hook")),
        w: piece(Partition::new(vec![pu - 2, 1, 1]).expect("hook")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn skew_parse_and_display() {
        let s: SkewShape = "5,5,1/4,1".parse().unwrap();
        assert_eq!(s.to_string(), "5,5,1/4,1");
        assert_eq!(s.size(), 6);
        assert!("2,1/3".parse::<SkewShape>().is_err());
    }

    #[test]
    fn standard_counts_match_hooks() {
        for n in 0..=8 {
            for l in Partition::all(n) {
                let s = SkewShape::straight(l.clone());
                assert_eq!(standard_tableaux(&s).len() as u128, l.char0_dim());
                assert_eq!(count_standard(&s), l.char0_dim());
            }
        }
    }

    #[test]
    fn lr_examples() {
        assert_eq!(
            lr_coefficient(&part![3, 2, 1], &part![2, 1], &part![2, 1]),
            2
        );
        assert_eq!(lr_coefficient(&part![4, 2], &part![2], &part![2, 2]), 1);
        let f = lr_sections(&"5,5,1/4,1".parse().unwrap());
        assert_eq!(f.total_dim(), count_standard(&"5,5,1/4,1".parse().unwrap()));
    }

    #[test]
    fn branching_of_541() {
        assert_eq!(
            branching_sections(&part![5, 4, 1]),
            vec![part![5, 4], part![5, 3, 1], part![4, 4, 1]]
        );
    }
}
