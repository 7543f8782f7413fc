//! Matrix representations of symmetric groups: Specht modules, permutation
//! modules on tabloids, and the simple heads `D^mu`.
//!
//! A module is stored as the matrices of the Coxeter generators acting on
//! row vectors: `s_i . v = v * A_i`. Specht modules are written in the
//! standard polytabloid basis. A tabloid is packed into a `u64` holding the
//! row index of each entry, four bits per entry with entry 1 in the most
//! significant nibble, so numeric order on packed words is lexicographic
//! order on row words, which refines the dominance order on tabloids.

use std::io::Write;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::gfp::{Field, LinalgError, Matrix};
use crate::partition::Partition;
use crate::symgroup::coxeter_relations;
use crate::tableaux::{standard_tableaux, SkewShape};

/// Packed words hold four bits per entry.
pub const MAX_DEGREE: usize = 16;
/// Largest permutation module built on tabloids.
pub const MAX_TABLOIDS: u128 = 200_000;

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("degree {0} exceeds the supported maximum of {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("permutation module M({0}) has {1} tabloids, above the limit of {MAX_TABLOIDS}")]
    TooManyTabloids(Partition, u128),
    #[error("{0} is not {1}-regular")]
    NotRegular(Partition, u32),
    #[error("expected {expected} generator matrices of size {dim}, got {got}")]
    Generators {
        expected: usize,
        dim: usize,
        got: String,
    },
    #[error("Coxeter relation {0:?} fails")]
    Relation(Vec<usize>),
    #[error("generator indices must be consecutive, got {0:?}")]
    NotConsecutive(Vec<usize>),
    #[error("subspace is not invariant under the action")]
    NotInvariant,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A finite-dimensional module for the symmetric group on `n` letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRep {
    label: String,
    n: usize,
    field: Field,
    dim: usize,
    gens: Vec<Matrix>,
}

impl ModuleRep {
    pub fn new(
        label: impl Into<String>,
        n: usize,
        field: Field,
        dim: usize,
        gens: Vec<Matrix>,
    ) -> Result<Self, ModuleError> {
        let expected = n.saturating_sub(1);
        let ok = gens.len() == expected
            && gens
                .iter()
                .all(|g| g.rows() == dim && g.cols() == dim && g.field() == field);
        if !ok {
            let got = gens
                .iter()
                .map(|g| format!("{}x{}", g.rows(), g.cols()))
                .collect::<Vec<_>>()
                .join(",");
            return Err(ModuleError::Generators {
                expected,
                dim,
                got: format!("[{got}]"),
            });
        }
        Ok(ModuleRep {
            label: label.into(),
            n,
            field,
            dim,
            gens,
        })
    }

    pub fn trivial(n: usize, field: Field) -> Self {
        let gens = (1..n).map(|_| Matrix::identity(field, 1)).collect();
        ModuleRep {
            label: "trivial".into(),
            n,
            field,
            dim: 1,
            gens,
        }
    }

    pub fn sign(n: usize, field: Field) -> Self {
        let gens = (1..n)
            .map(|_| Matrix::identity(field, 1).scale(field.p() - 1))
            .collect();
        ModuleRep {
            label: "sign".into(),
            n,
            field,
            dim: 1,
            gens,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix of `s_i`, `1 <= i < n`.
    pub fn generator(&self, i: usize) -> &Matrix {
        &self.gens[i - 1]
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    /// Matrix of the group element `s_{w_1} ... s_{w_k}`.
    pub fn word_matrix(&self, word: &[usize]) -> Matrix {
        // s_{w_1}(...(s_{w_k} v)) is v * A_{w_k} * ... * A_{w_1}
        let mut acc = Matrix::identity(self.field, self.dim);
        for &i in word.iter().rev() {
            acc = acc.mul(self.generator(i));
        }
        acc
    }

    pub fn check_relations(&self) -> Result<(), ModuleError> {
        for rel in coxeter_relations(self.n) {
            let mut acc = Matrix::identity(self.field, self.dim);
            for &i in &rel {
                acc = acc.mul(self.generator(i));
            }
            if !acc.is_identity() {
                return Err(ModuleError::Relation(rel));
            }
        }
        Ok(())
    }

    /// Contragredient module; generators are involutions, so the action
    /// matrices are just transposed.
    pub fn dual(&self) -> ModuleRep {
        ModuleRep {
            label: format!("dual({})", self.label),
            gens: self.gens.iter().map(Matrix::transpose).collect(),
            ..self.clone()
        }
    }

    pub fn sign_twist(&self) -> ModuleRep {
        ModuleRep {
            label: format!("sgn*{}", self.label),
            gens: self
                .gens
                .iter()
                .map(|g| g.scale(self.field.p() - 1))
                .collect(),
            ..self.clone()
        }
    }

    /// Restriction to the symmetric group generated by the consecutive
    /// generators `s_i, ..., s_j`, relabelled as `s_1, ..., s_{j-i+1}`.
    pub fn restrict(&self, indices: &[usize]) -> Result<ModuleRep, ModuleError> {
        let ok = indices.iter().all(|&i| i >= 1 && i < self.n)
            && indices.windows(2).all(|w| w[1] == w[0] + 1);
        if !ok {
            return Err(ModuleError::NotConsecutive(indices.to_vec()));
        }
        Ok(ModuleRep {
            label: format!("res({})", self.label),
            n: indices.len() + 1,
            field: self.field,
            dim: self.dim,
            gens: indices.iter().map(|&i| self.generator(i).clone()).collect(),
        })
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> ModuleRep {
        assert_eq!((self.n, self.field), (other.n, other.field));
        let d = self.dim + other.dim;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(self.field, d, d);
                for r in 0..self.dim {
                    m.row_mut(r)[..self.dim].copy_from_slice(a.row(r));
                }
                for r in 0..other.dim {
                    m.row_mut(self.dim + r)[self.dim..].copy_from_slice(b.row(r));
                }
                m
            })
            .collect();
        ModuleRep {
            label: format!("{}+{}", self.label, other.label),
            n: self.n,
            field: self.field,
            dim: d,
            gens,
        }
    }

    pub fn is_invariant(&self, basis: &Matrix) -> bool {
        let rs = basis.rowspace();
        let r = rs.rows();
        self.gens.iter().all(|g| rs.vstack(&rs.mul(g)).rank() == r)
    }

    /// The submodule spanned by the rows of `basis`, written in the echelon
    /// basis of that row space.
    pub fn submodule(&self, basis: &Matrix) -> Result<ModuleRep, ModuleError> {
        let (ech, pivots) = basis.rref();
        let k = pivots.len();
        let rows: Vec<usize> = (0..k).collect();
        let ech = ech.select_rows(&rows);
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let img = ech.mul(g);
            // coordinates in an rref basis are the entries at the pivot columns
            let coords = img.select_cols(&pivots);
            if coords.mul(&ech) != img {
                return Err(ModuleError::NotInvariant);
            }
            gens.push(coords);
        }
        Ok(ModuleRep {
            label: format!("sub({})", self.label),
            n: self.n,
            field: self.field,
            dim: k,
            gens,
        })
    }

    /// The quotient by the submodule spanned by the rows of `basis`, in the
    /// basis of standard vectors at non-pivot positions.
    pub fn quotient(&self, basis: &Matrix) -> Result<ModuleRep, ModuleError> {
        if !self.is_invariant(basis) {
            return Err(ModuleError::NotInvariant);
        }
        let (ech, pivots) = basis.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let rows: Vec<Vec<u32>> = free
                    .iter()
                    .map(|&j| {
                        let mut w = g.row(j).to_vec();
                        for (i, &pc) in pivots.iter().enumerate() {
                            let c = w[pc];
                            if c != 0 {
                                f.axpy(&mut w, f.neg(c), ech.row(i));
                            }
                        }
                        free.iter().map(|&c| w[c]).collect()
                    })
                    .collect();
                Matrix::from_vecs(f, free.len(), rows)
            })
            .collect();
        Ok(ModuleRep {
            label: format!("quo({})", self.label),
            n: self.n,
            field: f,
            dim: free.len(),
            gens,
        })
    }

    /// Header `label n p dim`, then each generator as a matrix dump.
    pub fn dump<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(
            out,
            "{} {} {} {}",
            self.label,
            self.n,
            self.field.p(),
            self.dim
        )?;
        for g in &self.gens {
            g.dump(out)?;
        }
        Ok(())
    }
}

fn pack(rows_of: impl Iterator<Item = usize>) -> u64 {
    rows_of.enumerate().fold(0u64, |w, (i, r)| {
        w | ((r as u64) << (4 * (MAX_DEGREE - 1 - i)))
    })
}

/// Row index of each entry of a tabloid word.
pub fn unpack(word: u64, n: usize) -> Vec<usize> {
    (0..n)
        .map(|i| ((word >> (4 * (MAX_DEGREE - 1 - i))) & 0xf) as usize)
        .collect()
}

/// Permutations of `0..len` with their parity (`true` for odd).
fn arrangements(len: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..len).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) -> bool {
        if k <= 1 {
            out.push((perm.clone(), odd));
            return odd;
        }
        let mut odd = heap(k - 1, perm, odd, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
            odd = heap(k - 1, perm, !odd, out);
        }
        odd
    }
    heap(len, &mut perm, false, &mut out);
    out
}

/// The standard polytabloids of `Sp(lambda)` indexed by their leading tabloids.
pub struct SpechtBasis {
    lambda: Partition,
    n: usize,
    /// Standard tableaux in increasing order of leading tabloid; `rows[i][x-1]`
    /// is the row holding entry `x` in tableau `i`.
    rows: Vec<Vec<usize>>,
    cells: Vec<Vec<(usize, usize)>>,
    index: FxHashMap<u64, u32>,
    col_lens: Vec<usize>,
    perms: Vec<Vec<(Vec<usize>, bool)>>,
}

/// A tableau given by the cell `(row, col)` (0-based) of each entry.
pub type Placement = Vec<(usize, usize)>;

impl SpechtBasis {
    pub fn new(lambda: &Partition) -> Result<Self, ModuleError> {
        let n = lambda.degree();
        if n > MAX_DEGREE {
            return Err(ModuleError::DegreeTooLarge(n));
        }
        let mut tabs: Vec<(u64, Vec<usize>, Placement)> =
            standard_tableaux(&SkewShape::straight(lambda.clone()))
                .into_iter()
                .map(|t| {
                    let mut rows = vec![0; n];
                    let mut cells = vec![(0, 0); n];
                    for (r, row) in t.rows.iter().enumerate() {
                        for (c, &x) in row.iter().enumerate() {
                            rows[x - 1] = r;
                            cells[x - 1] = (r, c);
                        }
                    }
                    (pack(rows.iter().copied()), rows, cells)
                })
                .collect();
        tabs.sort_by_key(|t| t.0);
        let index = tabs
            .iter()
            .enumerate()
            .map(|(i, t)| (t.0, i as u32))
            .collect();
        let col_lens = lambda.conjugate().parts().to_vec();
        let max_len = col_lens.first().copied().unwrap_or(0);
        let perms = (0..=max_len.min(7)).map(arrangements).collect();
        let (rows, cells) = tabs.into_iter().map(|t| (t.1, t.2)).unzip();
        Ok(SpechtBasis {
            lambda: lambda.clone(),
            n,
            rows,
            cells,
            index,
            col_lens,
            perms,
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Cells of the `i`-th standard tableau.
    pub fn placement(&self, i: usize) -> &Placement {
        &self.cells[i]
    }

    /// Entries of each column, top to bottom.
    fn columns(&self, placement: &Placement) -> Vec<Vec<usize>> {
        let mut cols: Vec<Vec<usize>> = self.col_lens.iter().map(|&l| vec![0; l]).collect();
        for (x, &(r, c)) in placement.iter().enumerate() {
            cols[c][r] = x + 1;
        }
        cols
    }

    fn expansion_size(&self) -> Option<u128> {
        let mut prod: u128 = 1;
        for &l in &self.col_lens {
            if l >= self.perms.len() {
                return None;
            }
            prod *= self.perms[l].len() as u128;
        }
        Some(prod)
    }

    /// Every tabloid of the polytabloid `e_t`, with parity of its sign.
    pub fn full_expansion(&self, placement: &Placement, mut visit: impl FnMut(u64, bool)) {
        let cols = self.columns(placement);
        let choices: Vec<Vec<(u64, bool)>> = cols
            .iter()
            .map(|col| {
                self.perms[col.len()]
                    .iter()
                    .map(|(perm, odd)| {
                        let w = col.iter().zip(perm).fold(0u64, |w, (&x, &r)| {
                            w | ((r as u64) << (4 * (MAX_DEGREE - x)))
                        });
                        (w, *odd)
                    })
                    .collect()
            })
            .collect();
        fn go(
            i: usize,
            acc: u64,
            odd: bool,
            choices: &[Vec<(u64, bool)>],
            visit: &mut impl FnMut(u64, bool),
        ) {
            match choices.get(i) {
                None => visit(acc, odd),
                Some(opts) => {
                    for &(w, o) in opts {
                        go(i + 1, acc | w, odd ^ o, choices, visit);
                    }
                }
            }
        }
        go(0, 0, false, &choices, &mut visit);
    }

    /// Coordinates of `e_t` on the leading tabloids, as `(index, odd)` pairs.
    /// Since a vector of the Specht module is determined by these
    /// coordinates, they serve as a faithful linear image of `e_t`.
    pub fn leading_coords(&self, placement: &Placement) -> Vec<(u32, bool)> {
        let work = (self.dim() * self.n) as u128;
        if self.expansion_size().is_some_and(|s| s <= 4 * work) {
            self.leading_by_expansion(placement)
        } else {
            self.leading_by_matching(placement)
        }
    }

    fn leading_by_expansion(&self, placement: &Placement) -> Vec<(u32, bool)> {
        let mut out = Vec::new();
        self.full_expansion(placement, |w, odd| {
            if let Some(&i) = self.index.get(&w) {
                out.push((i, odd));
            }
        });
        out.sort_unstable();
        out
    }

    /// For each leading tabloid, the column permutation reaching it is
    /// forced, so its coefficient is read off column by column.
    fn leading_by_matching(&self, placement: &Placement) -> Vec<(u32, bool)> {
        let cols = self.columns(placement);
        let mut out = Vec::new();
        'tab: for (j, rows) in self.rows.iter().enumerate() {
            let mut odd = false;
            for col in &cols {
                let mut seen = 0u32;
                for (i, &x) in col.iter().enumerate() {
                    let r = rows[x - 1];
                    if r >= col.len() || seen & (1 << r) != 0 {
                        continue 'tab;
                    }
                    seen |= 1 << r;
                    odd ^= col[..i].iter().filter(|&&y| rows[y - 1] > r).count() % 2 == 1;
                }
            }
            out.push((j as u32, odd));
        }
        out
    }

    /// Dense leading coordinates of `e_t` reduced into GF(p), added into `acc` with weight `c`.
    pub fn add_leading(&self, field: Field, placement: &Placement, c: u32, acc: &mut [u32]) {
        let neg = field.neg(c);
        for (i, odd) in self.leading_coords(placement) {
            let v = &mut acc[i as usize];
            *v = field.add(*v, if odd { neg } else { c });
        }
    }

    /// Gram matrix of the tabloid inner product on the standard polytabloids.
    pub fn gram(&self, field: Field) -> Result<Matrix, ModuleError> {
        let d = self.dim();
        let size = self.expansion_size().unwrap_or(u128::MAX);
        if size.saturating_mul(d as u128) > 50_000_000 {
            return Err(ModuleError::TooManyTabloids(
                self.lambda.clone(),
                size.saturating_mul(d as u128),
            ));
        }
        let mut buckets: FxHashMap<u64, Vec<(u32, bool)>> = FxHashMap::default();
        for i in 0..d {
            self.full_expansion(&self.cells[i], |w, odd| {
                buckets.entry(w).or_default().push((i as u32, odd))
            });
        }
        let mut g = vec![0i64; d * d];
        for list in buckets.values() {
            for &(a, oa) in list {
                for &(b, ob) in list {
                    g[a as usize * d + b as usize] += if oa == ob { 1 } else { -1 };
                }
            }
        }
        Ok(Matrix::from_flat(
            field,
            d,
            d,
            g.into_iter().map(|x| field.from_i64(x)).collect(),
        ))
    }
}

/// Applies `s_i` to a tableau by swapping the cells of `i` and `i + 1`.
pub fn swap_entries(placement: &Placement, i: usize) -> Placement {
    let mut t = placement.clone();
    t.swap(i - 1, i);
    t
}

/// Applies the permutation `g` (one-line images on `1..k`) to the entries
/// `1..k` of a tableau.
pub fn relabel(placement: &Placement, images: &[usize]) -> Placement {
    let mut t = placement.clone();
    for (x, &gx) in images.iter().enumerate() {
        t[gx - 1] = placement[x];
    }
    t
}

/// `Sp(lambda)` over `field` in the standard polytabloid basis.
pub fn specht_module(lambda: &Partition, field: Field) -> Result<ModuleRep, ModuleError> {
    let basis = SpechtBasis::new(lambda)?;
    specht_module_from(&basis, field)
}

pub fn specht_module_from(basis: &SpechtBasis, field: Field) -> Result<ModuleRep, ModuleError> {
    let d = basis.dim();
    let n = basis.degree();
    // strictly upper part of the unitriangular matrix of polytabloids on leading tabloids
    let upper: Vec<Vec<(u32, u32)>> = (0..d)
        .map(|i| {
            basis
                .leading_coords(basis.placement(i))
                .into_iter()
                .filter(|&(j, _)| j as usize != i)
                .map(|(j, odd)| {
                    debug_assert!(j as usize > i, "leading tabloid is not minimal");
                    (j, if odd { field.p() - 1 } else { 1 })
                })
                .collect()
        })
        .collect();
    let minus_one = field.p() - 1;
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for s in 1..n {
        let mut m = Matrix::zeros(field, d, d);
        for i in 0..d {
            let t = basis.placement(i);
            let (a, b) = (t[s - 1], t[s]);
            if a.1 == b.1 {
                m.set(i, i, minus_one);
                continue;
            }
            let st = swap_entries(t, s);
            if a.0 != b.0 {
                // s_i T is again standard
                let j = basis.index[&pack(st.iter().map(|c| c.0))] as usize;
                m.set(i, j, 1);
                continue;
            }
            let row = m.row_mut(i);
            basis.add_leading(field, &st, 1, row);
            for k in 0..d {
                let x = row[k];
                if x != 0 {
                    for &(j, u) in &upper[k] {
                        let cell = &mut row[j as usize];
                        *cell = field.sub(*cell, field.mul(x, u));
                    }
                }
            }
        }
        gens.push(m);
    }
    ModuleRep::new(format!("Sp({})", basis.partition()), n, field, d, gens)
}

/// `D^mu = Sp(mu) / rad`, the quotient by the radical of the Gram form.
pub fn simple_module(mu: &Partition, field: Field) -> Result<ModuleRep, ModuleError> {
    if !mu.is_p_regular(field.p()) {
        return Err(ModuleError::NotRegular(mu.clone(), field.p()));
    }
    let basis = SpechtBasis::new(mu)?;
    let sp = specht_module_from(&basis, field)?;
    let rad = basis.gram(field)?.kernel_basis();
    Ok(sp.quotient(&rad)?.with_label(format!("D({mu})")))
}

/// The radical of the Gram form on `Sp(mu)`, as a submodule.
pub fn radical_module(mu: &Partition, field: Field) -> Result<ModuleRep, ModuleError> {
    let basis = SpechtBasis::new(mu)?;
    let sp = specht_module_from(&basis, field)?;
    let rad = basis.gram(field)?.kernel_basis();
    Ok(sp.submodule(&rad)?.with_label(format!("rad Sp({mu})")))
}

/// Rank of the Gram form, which is `dim D^mu` for `p`-regular `mu`.
pub fn gram_rank(mu: &Partition, field: Field) -> Result<usize, ModuleError> {
    Ok(SpechtBasis::new(mu)?.gram(field)?.rank())
}

/// The permutation module `M(lambda)` on row tabloids.
pub struct PermutationModule {
    lambda: Partition,
    words: Vec<u64>,
    index: FxHashMap<u64, u32>,
}

impl PermutationModule {
    pub fn new(lambda: &Partition) -> Result<Self, ModuleError> {
        let n = lambda.degree();
        if n > MAX_DEGREE {
            return Err(ModuleError::DegreeTooLarge(n));
        }
        let count = lambda.multinomial();
        if count > MAX_TABLOIDS {
            return Err(ModuleError::TooManyTabloids(lambda.clone(), count));
        }
        let mut word: Vec<usize> = lambda
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(r, &l)| std::iter::repeat_n(r, l))
            .collect();
        let mut words = Vec::with_capacity(count as usize);
        loop {
            words.push(pack(word.iter().copied()));
            // next multiset permutation in lexicographic order
            let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) else {
                break;
            };
            let j = (i..word.len())
                .rev()
                .find(|&j| word[j] > word[i - 1])
                .expect("successor");
            word.swap(i - 1, j);
            word[i..].reverse();
        }
        let index = words
            .iter()
            .enumerate()
            .map(|(i, &w)| (w, i as u32))
            .collect();
        Ok(PermutationModule {
            lambda: lambda.clone(),
            words,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Index of the tabloid obtained by applying `s_i` to tabloid `k`.
    pub fn act(&self, k: usize, i: usize) -> usize {
        let w = self.words[k];
        let (sa, sb) = (4 * (MAX_DEGREE - i), 4 * (MAX_DEGREE - 1 - i));
        let (a, b) = ((w >> sa) & 0xf, (w >> sb) & 0xf);
        let swapped = (w & !((0xf << sa) | (0xf << sb))) | (a << sb) | (b << sa);
        self.index[&swapped] as usize
    }

    pub fn to_module(&self, field: Field) -> Result<ModuleRep, ModuleError> {
        let n = self.lambda.degree();
        let d = self.dim();
        let gens = (1..n)
            .map(|i| {
                let mut m = Matrix::zeros(field, d, d);
                for k in 0..d {
                    m.set(k, self.act(k, i), 1);
                }
                m
            })
            .collect();
        ModuleRep::new(format!("M({})", self.lambda), n, field, d, gens)
    }
}
