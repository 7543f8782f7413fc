use crate::gfp::Matrix;
use crate::specht::ModuleRep;
use crate::symgroup::coxeter_relations;

use super::fixed::fixed_subspace;
use super::HomologicalError;

/// `dim H^1(Sigma_n, V)` from the Coxeter presentation.
///
/// A 1-cocycle is determined by its values `v_i = f(s_i)`, and a tuple
/// extends to a cocycle exactly when every relator word evaluates to zero
/// under `f(gh) = f(g) + g f(h)`. Coboundaries have dimension
/// `dim V - dim V^{Sigma_n}`.
pub fn h1_dimension(v: &ModuleRep) -> Result<usize, HomologicalError> {
    let n = v.degree();
    let d = v.dim();
    let f = v.field();
    let gens = n.saturating_sub(1);
    if gens == 0 || d == 0 {
        return Ok(0);
    }
    let rels = coxeter_relations(n);
    // unknown row vector (v_1 | ... | v_{n-1}); one block column per relator
    let mut big = Matrix::zeros(f, gens * d, rels.len() * d);
    for (ri, word) in rels.iter().enumerate() {
        // operator of the prefix s_{k_1} ... s_{k_{j-1}} on row vectors
        let mut prefix = Matrix::identity(f, d);
        for &k in word {
            for r in 0..d {
                let src = prefix.row(r).to_vec();
                let dst = &mut big.row_mut((k - 1) * d + r)[ri * d..(ri + 1) * d];
                f.axpy(dst, 1, &src);
            }
            prefix = v.generator(k).mul(&prefix);
        }
    }
    let cocycles = gens * d - big.rank();
    let invariants = fixed_subspace(v, 1..n).rows();
    let coboundaries = d - invariants;
    Ok(cocycles - coboundaries)
}
