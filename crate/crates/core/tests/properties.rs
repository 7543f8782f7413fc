use proptest::prelude::*;

use specht::gfp::{Field, Matrix};
use specht::homological::{fixed_point_dim, specht_fixed_dim, spin, AveragingOptions};
use specht::invariants::{Engine, EngineConfig};
use specht::partition::Partition;
use specht::poly::charpoly;
use specht::specht::specht_module;
use specht::tableaux::{count_standard, lr_sections, SkewShape};

fn partition(max_len: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 1..=max_len).prop_map(Partition::from_unsorted)
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5])
}

fn hook(parts: &[usize], i: usize, j: usize) -> usize {
    let leg = parts.iter().skip(i + 1).filter(|&&r| r > j).count();
    parts[i] - j - 1 + leg + 1
}

/// Removes rim hooks of length `p` one at a time until none is left.
fn core_by_rim_hooks(lambda: &Partition, p: usize) -> Partition {
    let mut parts = lambda.parts().to_vec();
    'outer: loop {
        for i in 0..parts.len() {
            for j in 0..parts[i] {
                if hook(&parts, i, j) == p {
                    let leg = parts.iter().skip(i + 1).filter(|&&r| r > j).count();
                    for r in i..i + leg {
                        parts[r] = parts[r + 1] - 1;
                    }
                    parts[i + leg] = j;
                    parts.retain(|&x| x > 0);
                    continue 'outer;
                }
            }
        }
        return Partition::new(parts).unwrap();
    }
}

/// Partitions `nu` with `lambda / nu` a horizontal strip of size `m`.
fn pieri(lambda: &Partition, m: usize) -> Vec<Partition> {
    let l = lambda.parts();
    let mut out = Vec::new();
    let mut cur = vec![0usize; l.len()];
    fn go(i: usize, left: usize, l: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == l.len() {
            if left == 0 {
                out.push(Partition::from_unsorted(cur.clone()));
            }
            return;
        }
        let floor = l.get(i + 1).copied().unwrap_or(0);
        for v in floor..=l[i] {
            let take = l[i] - v;
            if take <= left {
                cur[i] = v;
                go(i + 1, left - take, l, cur, out);
            }
        }
    }
    go(0, m, l, &mut cur, &mut out);
    out.sort();
    out
}

fn matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0..p, rows * cols)
        .prop_map(move |data| Matrix::from_flat(Field::new(p).unwrap(), rows, cols, data))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn core_agrees_with_rim_hook_removal(lambda in partition(7, 8), p in prime()) {
        let core = lambda.core(p);
        prop_assert_eq!(&core, &core_by_rim_hooks(&lambda, p as usize));
        prop_assert_eq!((lambda.degree() - core.degree()) % p as usize, 0);
        prop_assert_eq!(lambda.weight(p), (lambda.degree() - core.degree()) / p as usize);
    }

    #[test]
    fn one_row_sections_follow_pieri(lambda in partition(5, 6), m in 1usize..=6) {
        prop_assume!(m <= lambda.part(0));
        let shape = SkewShape::new(lambda.clone(), Partition::new(vec![m]).unwrap()).unwrap();
        let f = lr_sections(&shape);
        let mut got: Vec<Partition> = f.sections.iter().map(|(nu, mult)| {
            assert_eq!(*mult, 1);
            nu.clone()
        }).collect();
        got.sort();
        prop_assert_eq!(got, pieri(&lambda, m));
    }

    #[test]
    fn sections_count_skew_tableaux(lambda in partition(4, 5), inner in partition(3, 3)) {
        prop_assume!(lambda.contains(&inner));
        let shape = SkewShape::new(lambda, inner).unwrap();
        prop_assert_eq!(lr_sections(&shape).total_dim(), count_standard(&shape));
    }

    #[test]
    fn rank_and_kernels(a in matrix(3, 4, 6)) {
        let r = a.rank();
        let left = a.left_kernel();
        prop_assert_eq!(left.rows(), a.rows() - r);
        prop_assert!(left.mul(&a).is_zero());
        let right = a.kernel_basis();
        prop_assert_eq!(right.rows(), a.cols() - r);
        prop_assert!(a.mul(&right.transpose()).is_zero());
        let (e, pivots) = a.rref();
        prop_assert_eq!(pivots.len(), r);
        prop_assert_eq!(e.rref().0, e);
    }

    #[test]
    fn inverse_is_two_sided(a in matrix(5, 4, 4)) {
        if let Some(inv) = a.inverse() {
            prop_assert!(a.mul(&inv).is_identity());
            prop_assert!(inv.mul(&a).is_identity());
        } else {
            prop_assert!(a.rank() < 4);
        }
    }

    #[test]
    fn cayley_hamilton(a in matrix(5, 5, 5)) {
        prop_assert!(charpoly(&a).eval_matrix(&a).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn averaging_matches_dense_fixed_points(lambda in partition(4, 5), p in prime(), m in 1usize..=5) {
        prop_assume!(lambda.degree() <= 9 && m <= lambda.degree());
        let field = Field::new(p).unwrap();
        let dense = fixed_point_dim(&specht_module(&lambda, field).unwrap(), m).unwrap();
        let averaged = specht_fixed_dim(&lambda, field, m, AveragingOptions { verify_basis: true }).unwrap();
        prop_assert_eq!(dense, averaged);
    }

    #[test]
    fn recursion_brackets_brute_force(lambda in partition(3, 5), p in prop::sample::select(vec![3u32, 5])) {
        let m = p as usize;
        prop_assume!(lambda.degree() > m && lambda.degree() <= m + 5);
        let engine = Engine::new(EngineConfig { cap: 5000, verify_formulas: false, cache_dir: None });
        let exact = engine.brute_force(&lambda, p, m).unwrap();
        let bound = engine.branching_bound(&lambda, p, m).unwrap();
        prop_assert!(bound.lower() <= exact && exact <= bound.upper(), "{} not in {}", exact, bound);
    }

    #[test]
    fn module_identities(lambda in partition(4, 4), p in prime(), seed in 0usize..64) {
        prop_assume!(lambda.degree() <= 7);
        let v = specht_module(&lambda, Field::new(p).unwrap()).unwrap();
        let (dd, tt) = (v.dual().dual(), v.sign_twist().sign_twist());
        prop_assert_eq!(dd.generators(), v.generators());
        prop_assert_eq!(tt.generators(), v.generators());
        let mut unit = vec![0u32; v.dim()];
        unit[seed % v.dim()] = 1;
        let sub = spin(v.field(), &[unit], v.generators());
        prop_assert!(v.is_invariant(&sub));
        let (s, q) = (v.submodule(&sub).unwrap(), v.quotient(&sub).unwrap());
        prop_assert_eq!(s.dim() + q.dim(), v.dim());
        s.check_relations().unwrap();
        q.check_relations().unwrap();
    }
}
