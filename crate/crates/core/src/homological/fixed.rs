use crate::gfp::{Field, Matrix};
use crate::partition::Partition;
use crate::specht::{relabel, swap_entries, ModuleRep, Placement, SpechtBasis};
use crate::tableaux::{count_standard, standard_tableaux, SkewShape};

use super::HomologicalError;

/// The fixed points of `Sigma_m` together with the induced action of the
/// symmetric group on the remaining letters `m+1..n`.
#[derive(Debug, Clone)]
pub struct FixedPoints {
    /// Echelon basis of the fixed subspace, one vector per row.
    pub basis: Matrix,
    /// The fixed space as a module for the symmetric group on `n - m` letters.
    pub module: ModuleRep,
}

impl FixedPoints {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
}

/// Common fixed vectors of the generators `s_i` for `i` in `indices`.
pub fn fixed_subspace(v: &ModuleRep, indices: impl IntoIterator<Item = usize>) -> Matrix {
    let mut basis = Matrix::identity(v.field(), v.dim());
    for i in indices {
        if basis.rows() == 0 {
            break;
        }
        let moved = basis.mul(&v.generator(i).minus_identity());
        if moved.is_zero() {
            continue;
        }
        basis = moved.left_kernel().mul(&basis);
    }
    basis.rowspace()
}

/// `V^{Sigma_m}` by dense linear algebra on the module matrices.
pub fn fixed_points(v: &ModuleRep, m: usize) -> Result<FixedPoints, HomologicalError> {
    let n = v.degree();
    if m == 0 || m > n.max(1) {
        return Err(HomologicalError::SubgroupRange { m, n });
    }
    let basis = fixed_subspace(v, 1..m);
    let (_, pivots) = basis.rref();
    let k = basis.rows();
    let gens = (m + 1..n)
        .map(|j| {
            // coordinates in an rref basis are the entries at the pivot columns
            basis.mul(v.generator(j)).select_cols(&pivots)
        })
        .collect();
    let module = ModuleRep::new(format!("F{m}({})", v.label()), n - m, v.field(), k, gens)?;
    Ok(FixedPoints { basis, module })
}

pub fn fixed_point_dim(v: &ModuleRep, m: usize) -> Result<usize, HomologicalError> {
    Ok(fixed_points(v, m)?.dim())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for mut p in permutations(k - 1) {
        for pos in 0..=p.len() {
            p.insert(pos, k);
            out.push(p.clone());
            p.remove(pos);
        }
    }
    out
}

/// Options for [`specht_fixed_dim`].
#[derive(Debug, Clone, Copy, Default)]
pub struct AveragingOptions {
    /// Also check that the averaged polytabloids are independent.
    pub verify_basis: bool,
}

/// Polytabloids averaged over `Sigma_q`, `q = min(m, p - 1)`, one for each
/// standard `T` with `1..q` in its first row. Since `q!` is a unit these
/// span the `Sigma_q`-fixed points of `Sp(lambda)`.
struct Averaged {
    basis: SpechtBasis,
    seeds: Vec<Placement>,
    group: Vec<Vec<usize>>,
    q: usize,
}

impl Averaged {
    fn new(lambda: &Partition, field: Field, m: usize) -> Result<Option<Self>, HomologicalError> {
        let n = lambda.degree();
        if m == 0 || m > n.max(1) {
            return Err(HomologicalError::SubgroupRange { m, n });
        }
        let q = m.min(field.p() as usize - 1);
        if lambda.part(0) < q {
            return Ok(None);
        }
        let basis = SpechtBasis::new(lambda)?;
        let skew = SkewShape::new(lambda.clone(), Partition::new(vec![q]).expect("one row"))
            .expect("fits");
        let seeds = standard_tableaux(&skew)
            .into_iter()
            .map(|t| {
                let mut cells = vec![(0, 0); n];
                for (x, cell) in cells.iter_mut().enumerate().take(q) {
                    *cell = (0, x);
                }
                for (r, entries) in t.rows.iter().enumerate() {
                    let start = if r == 0 { q } else { 0 };
                    for (c, &x) in entries.iter().enumerate() {
                        cells[x + q - 1] = (r, start + c);
                    }
                }
                cells
            })
            .collect();
        Ok(Some(Averaged {
            basis,
            seeds,
            group: permutations(q),
            q,
        }))
    }

    fn k(&self) -> usize {
        self.seeds.len()
    }

    /// Row `i` is `sum_g g e_{T_i}` moved by `s_j` (or unmoved), on leading tabloids.
    fn rows(&self, field: Field, s: Option<usize>) -> Matrix {
        let d = self.basis.dim();
        let mut out = Matrix::zeros(field, self.k(), d);
        for (i, t) in self.seeds.iter().enumerate() {
            for g in &self.group {
                let gt = relabel(t, g);
                let gt = match s {
                    Some(j) => swap_entries(&gt, j),
                    None => gt,
                };
                self.basis.add_leading(field, &gt, 1, out.row_mut(i));
            }
        }
        out
    }

    /// One block of columns per generator `s_q .. s_{m-1}`; its left kernel
    /// is the set of combinations fixed by all of `Sigma_m`.
    fn constraints(&self, field: Field, m: usize) -> Matrix {
        let d = self.basis.dim();
        let minus_one = field.p() - 1;
        let mut z = Matrix::zeros(field, self.k(), (m - self.q) * d);
        for (i, t) in self.seeds.iter().enumerate() {
            for g in &self.group {
                let gt = relabel(t, g);
                let row = z.row_mut(i);
                for (b, s) in (self.q..m).enumerate() {
                    let block = &mut row[b * d..(b + 1) * d];
                    self.basis
                        .add_leading(field, &swap_entries(&gt, s), 1, block);
                    self.basis.add_leading(field, &gt, minus_one, block);
                }
            }
        }
        z
    }

    fn check_rank(&self, x: &Matrix) -> Result<(), HomologicalError> {
        let r = x.rank();
        if r != self.k() {
            return Err(HomologicalError::AveragingRank {
                lambda: self.basis.partition().clone(),
                expected: self.k(),
                found: r,
            });
        }
        Ok(())
    }
}

/// `dim Sp(lambda)^{Sigma_m}` without building the module matrices.
///
/// The `Sigma_{p-1}`-fixed space is spanned by averaged polytabloids and the
/// remaining generators `s_{p-1}, ..., s_{m-1}` cut out the answer. All
/// vectors are handled through their leading-tabloid coordinates.
pub fn specht_fixed_dim(
    lambda: &Partition,
    field: Field,
    m: usize,
    opts: AveragingOptions,
) -> Result<usize, HomologicalError> {
    let n = lambda.degree();
    if m == 0 || m > n.max(1) {
        return Err(HomologicalError::SubgroupRange { m, n });
    }
    if m < field.p() as usize {
        return Ok(if lambda.part(0) >= m {
            count_standard(
                &SkewShape::new(lambda.clone(), Partition::new(vec![m]).expect("one row"))
                    .expect("fits"),
            ) as usize
        } else {
            0
        });
    }
    let Some(avg) = Averaged::new(lambda, field, m)? else {
        return Ok(0);
    };
    if opts.verify_basis {
        avg.check_rank(&avg.rows(field, None))?;
    }
    Ok(avg.k() - avg.constraints(field, m).rank())
}

/// `Sp(lambda)^{Sigma_m}` as a module for the symmetric group on `m+1..n`,
/// built from averaged polytabloids. Agrees with [`fixed_points`] up to a
/// change of basis but never forms the `dim Sp(lambda)`-sized matrices.
pub fn specht_fixed_module(
    lambda: &Partition,
    field: Field,
    m: usize,
) -> Result<ModuleRep, HomologicalError> {
    let n = lambda.degree();
    let label = format!("F{m}(Sp({lambda}))");
    let Some(avg) = Averaged::new(lambda, field, m)? else {
        let gens = (m + 1..n).map(|_| Matrix::zeros(field, 0, 0)).collect();
        return Ok(ModuleRep::new(label, n - m, field, 0, gens)?);
    };
    let x = avg.rows(field, None);
    avg.check_rank(&x)?;
    let coeffs = if m > avg.q {
        avg.constraints(field, m).left_kernel()
    } else {
        Matrix::identity(field, avg.k())
    };
    let fixed = coeffs.mul(&x);
    let (_, pivots) = fixed.rref();
    if pivots.len() != fixed.rows() {
        return Err(HomologicalError::AveragingRank {
            lambda: lambda.clone(),
            expected: fixed.rows(),
            found: pivots.len(),
        });
    }
    let to_coords = fixed
        .select_cols(&pivots)
        .inverse()
        .expect("pivot minor is invertible");
    let gens = (m + 1..n)
        .map(|j| {
            coeffs
                .mul(&avg.rows(field, Some(j)).select_cols(&pivots))
                .mul(&to_coords)
        })
        .collect();
    Ok(ModuleRep::new(label, n - m, field, fixed.rows(), gens)?)
}
