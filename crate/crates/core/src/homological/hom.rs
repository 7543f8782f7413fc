use std::collections::VecDeque;

use rand::Rng;

use crate::gfp::{Echelon, Matrix};
use crate::specht::ModuleRep;

use super::HomologicalError;

/// A basis of `Hom_{Sigma_n}(V, W)`; each map is a `dim V x dim W` matrix
/// acting on row vectors.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn combination(&self, coeffs: &[u32]) -> Matrix {
        let mut acc = self.basis[0].scale(coeffs[0]);
        for (b, &c) in self.basis.iter().zip(coeffs).skip(1) {
            if c != 0 {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    /// Looks for a map of the given rank: every combination when there are
    /// at most 4096 of them, otherwise `samples` random combinations.
    pub fn find_rank<R: Rng>(&self, rank: usize, samples: usize, rng: &mut R) -> Option<Matrix> {
        let first = self.basis.first()?;
        let p = first.modulus();
        let total = (p as u128)
            .checked_pow(self.dim() as u32)
            .unwrap_or(u128::MAX);
        if total <= 4096 {
            for idx in 1..total {
                let mut t = idx;
                let coeffs: Vec<u32> = (0..self.dim())
                    .map(|_| {
                        let c = (t % p as u128) as u32;
                        t /= p as u128;
                        c
                    })
                    .collect();
                let m = self.combination(&coeffs);
                if m.rank() == rank {
                    return Some(m);
                }
            }
            return None;
        }
        (0..samples).find_map(|_| {
            let coeffs: Vec<u32> = (0..self.dim()).map(|_| rng.gen_range(0..p)).collect();
            let m = self.combination(&coeffs);
            (m.rank() == rank).then_some(m)
        })
    }
}

fn check_compatible(v: &ModuleRep, w: &ModuleRep) -> Result<(), HomologicalError> {
    if v.degree() != w.degree() || v.field() != w.field() {
        return Err(HomologicalError::Incompatible {
            left: format!("{} (n={}, p={})", v.label(), v.degree(), v.p()),
            right: format!("{} (n={}, p={})", w.label(), w.degree(), w.p()),
        });
    }
    Ok(())
}

/// `Hom_{Sigma_n}(V, W)` by spinning: `V` is spun up from seed vectors,
/// each spun vector carries its image under a general candidate map, and
/// every linear dependency found while spinning becomes a linear condition
/// on the candidate parameters.
pub fn hom_space(v: &ModuleRep, w: &ModuleRep) -> Result<HomSpace, HomologicalError> {
    check_compatible(v, w)?;
    let f = v.field();
    let (dv, dw) = (v.dim(), w.dim());
    if dv == 0 || dw == 0 {
        return Ok(HomSpace { basis: Vec::new() });
    }
    let gens = v.degree().saturating_sub(1);
    let mut ech = Echelon::new(f, dv);
    let mut vecs: Vec<Vec<u32>> = Vec::new();
    // images[j] has one row per free parameter: the image of vecs[j]
    let mut images: Vec<Matrix> = Vec::new();
    let mut params = 0usize;
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let mut next_seed = 0usize;
    loop {
        let Some((j, g)) = queue.pop_front() else {
            if ech.is_full() {
                break;
            }
            while ech.contains(&unit(dv, next_seed)) {
                next_seed += 1;
            }
            let seed = unit(dv, next_seed);
            ech.insert(&seed).expect("independent seed");
            for img in &mut images {
                *img = img.vstack(&Matrix::zeros(f, dw, dw));
            }
            images.push(Matrix::zeros(f, params, dw).vstack(&Matrix::identity(f, dw)));
            params += dw;
            vecs.push(seed);
            queue.extend((1..=gens).map(|g| (vecs.len() - 1, g)));
            continue;
        };
        let u = v.generator(g).vec_mul(&vecs[j]);
        let img = images[j].mul(w.generator(g));
        match ech.insert(&u) {
            Ok(()) => {
                vecs.push(u);
                images.push(img);
                queue.extend((1..=gens).map(|g| (vecs.len() - 1, g)));
            }
            Err(coords) => {
                let mut cond = img;
                for (k, &c) in coords.iter().enumerate() {
                    if c != 0 {
                        cond = cond.sub(&images[k].scale(c));
                    }
                }
                if cond.is_zero() {
                    continue;
                }
                let keep = cond.left_kernel();
                params = keep.rows();
                for m in &mut images {
                    *m = keep.mul(m);
                }
                if params == 0 && ech.is_full() {
                    return Ok(HomSpace { basis: Vec::new() });
                }
            }
        }
    }
    // the map sends vecs[j] to images[j].row(r); solve B X = Img
    let b = Matrix::from_vecs(f, dv, vecs);
    let binv = b.inverse().expect("spin basis is a basis");
    let basis = (0..params)
        .map(|r| {
            let img = Matrix::from_vecs(f, dw, images.iter().map(|m| m.row(r).to_vec()).collect());
            binv.mul(&img)
        })
        .collect();
    Ok(HomSpace { basis })
}

fn unit(d: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

/// Whether `x` intertwines the two actions.
pub fn is_homomorphism(v: &ModuleRep, w: &ModuleRep, x: &Matrix) -> bool {
    v.generators()
        .iter()
        .zip(w.generators())
        .all(|(a, b)| a.mul(x) == x.mul(b))
}

/// Multiplicity of the simple module `d` in the socle of `v`.
pub fn socle_mult(d: &ModuleRep, v: &ModuleRep) -> Result<usize, HomologicalError> {
    Ok(hom_space(d, v)?.dim())
}

/// Multiplicity of the simple module `d` in the head of `v`.
pub fn head_mult(v: &ModuleRep, d: &ModuleRep) -> Result<usize, HomologicalError> {
    Ok(hom_space(v, d)?.dim())
}

/// Searches the Hom space for an isomorphism.
pub fn find_isomorphism<R: Rng>(
    v: &ModuleRep,
    w: &ModuleRep,
    rng: &mut R,
) -> Result<Option<Matrix>, HomologicalError> {
    if v.dim() != w.dim() {
        return Ok(None);
    }
    Ok(hom_space(v, w)?.find_rank(v.dim(), 64, rng))
}
