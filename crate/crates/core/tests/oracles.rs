use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use specht::gfp::{Field, Matrix};
use specht::homological::{
    find_isomorphism, fixed_points, h1_dimension, hom_space, specht_fixed_dim, specht_fixed_module,
    AveragingOptions,
};
use specht::partition::Partition;
use specht::specht::{radical_module, specht_module, ModuleRep};
use specht::verify::{run_suite, Status, SuiteOptions};

fn pp(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// Every group element with its matrix, reached by right multiplication by
/// generators from the identity; keys are permutations in one-line form.
fn group_matrices(v: &ModuleRep) -> HashMap<Vec<usize>, Matrix> {
    let n = v.degree();
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashMap<Vec<usize>, Matrix> = HashMap::new();
    seen.insert(id.clone(), Matrix::identity(v.field(), v.dim()));
    let mut frontier = vec![id];
    while let Some(g) = frontier.pop() {
        for i in 1..n {
            let mut h = g.clone();
            h.swap(i - 1, i);
            if !seen.contains_key(&h) {
                let m = seen[&g].mul(v.generator(i));
                seen.insert(h.clone(), m);
                frontier.push(h);
            }
        }
    }
    seen
}

/// `dim Z^1 - dim B^1` from the full cocycle condition over all pairs.
fn h1_by_cocycles(v: &ModuleRep) -> usize {
    let f = v.field();
    let d = v.dim();
    let elems: Vec<(Vec<usize>, Matrix)> = group_matrices(v).into_iter().collect();
    let index: HashMap<&[usize], usize> = elems
        .iter()
        .enumerate()
        .map(|(i, (g, _))| (g.as_slice(), i))
        .collect();
    let unknowns = elems.len() * d;
    let mut rows = Vec::new();
    for (gi, (g, _)) in elems.iter().enumerate() {
        for (hi, (hp, h)) in elems.iter().enumerate() {
            let composed: Vec<usize> = hp.iter().map(|&x| g[x]).collect();
            let gh = index[composed.as_slice()];
            // f(gh) - f(g) h - f(h) = 0, coordinate by coordinate
            for c in 0..d {
                let mut row = vec![0u32; unknowns];
                row[gh * d + c] = f.add(row[gh * d + c], 1);
                for k in 0..d {
                    row[gi * d + k] = f.sub(row[gi * d + k], h.get(k, c));
                }
                row[hi * d + c] = f.sub(row[hi * d + c], 1);
                rows.push(row);
            }
        }
    }
    let cocycles = unknowns - Matrix::from_vecs(f, unknowns, rows).rank();
    let mut stacked = Matrix::zeros(f, d, 0);
    for i in 1..v.degree() {
        stacked = stacked.hstack(&v.generator(i).minus_identity());
    }
    let invariants = d - stacked.rank();
    cocycles - (d - invariants)
}

#[test]
fn first_cohomology_matches_cocycle_count() {
    for p in [2u32, 3, 5] {
        let field = Field::new(p).unwrap();
        for n in 2..=4 {
            for l in Partition::all(n) {
                let v = specht_module(&l, field).unwrap();
                assert_eq!(
                    h1_dimension(&v).unwrap(),
                    h1_by_cocycles(&v),
                    "Sp({l}) over GF({p})"
                );
            }
        }
    }
}

#[test]
fn first_cohomology_is_additive() {
    for p in [2u32, 3, 5] {
        let field = Field::new(p).unwrap();
        for extra in [ModuleRep::trivial(3, field), ModuleRep::sign(3, field)] {
            let v = specht_module(&pp(&[2, 1]), field)
                .unwrap()
                .direct_sum(&extra);
            let expected = h1_dimension(&specht_module(&pp(&[2, 1]), field).unwrap()).unwrap()
                + h1_dimension(&extra).unwrap();
            assert_eq!(h1_by_cocycles(&v), expected, "p={p}");
            assert_eq!(h1_dimension(&v).unwrap(), expected);
        }
    }
}

#[test]
fn sign_twist_is_dual_of_conjugate() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [2u32, 3, 5] {
        let field = Field::new(p).unwrap();
        for n in 2..=6 {
            for l in Partition::all(n) {
                let twisted = specht_module(&l, field).unwrap().sign_twist();
                let dual = specht_module(&l.conjugate(), field).unwrap().dual();
                assert!(
                    find_isomorphism(&twisted, &dual, &mut rng)
                        .unwrap()
                        .is_some(),
                    "Sp({l}) at p={p}"
                );
            }
        }
    }
    let field = Field::new(3).unwrap();
    let a = specht_module(&pp(&[3, 2]), field).unwrap().sign_twist();
    let b = specht_module(&pp(&[2, 2, 1]), field).unwrap().dual();
    assert!(find_isomorphism(&a, &b, &mut rng).unwrap().is_some());
}

#[test]
fn averaged_and_dense_fixed_modules_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (p, parts) in [
        (3u32, &[4, 4, 4][..]),
        (3, &[4, 3, 2]),
        (2, &[4, 4]),
        (5, &[5, 3, 1]),
        (5, &[5, 4]),
    ] {
        let field = Field::new(p).unwrap();
        let lambda = pp(parts);
        let m = p as usize;
        let dense = fixed_points(&specht_module(&lambda, field).unwrap(), m)
            .unwrap()
            .module;
        let averaged = specht_fixed_module(&lambda, field, m).unwrap();
        averaged.check_relations().unwrap();
        assert_eq!(averaged.dim(), dense.dim(), "F{p}({lambda})");
        assert!(
            find_isomorphism(&averaged, &dense, &mut rng)
                .unwrap()
                .is_some(),
            "F{p}({lambda})"
        );
        let checked =
            specht_fixed_dim(&lambda, field, m, AveragingOptions { verify_basis: true }).unwrap();
        assert_eq!(checked, dense.dim());
    }
}

#[test]
fn five_five_five_sits_between_specht_and_radical() {
    let field = Field::new(5).unwrap();
    let f = specht_fixed_module(&pp(&[5, 5, 5]), field, 5).unwrap();
    assert_eq!(f.dim(), 70);
    let sp = specht_module(&pp(&[5, 4, 1]), field).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let hom = hom_space(&f, &sp).unwrap();
    assert_eq!(hom.dim(), 1);
    let map = hom.find_rank(70, 16, &mut rng).expect("injective map");
    let cokernel = sp.quotient(&map.rowspace()).unwrap();
    let rad = radical_module(&pp(&[4, 4, 2]), field).unwrap();
    assert_eq!(cokernel.dim(), rad.dim());
    assert!(find_isomorphism(&cokernel, &rad, &mut rng)
        .unwrap()
        .is_some());
}

#[test]
fn characteristic_three_and_five_suites_pass() {
    for p in [3u32, 5] {
        let out = run_suite(p, &SuiteOptions::default()).unwrap();
        let failing: Vec<_> = out
            .reports
            .iter()
            .filter(|r| r.status != Status::Pass)
            .collect();
        assert!(failing.is_empty(), "{failing:#?}");
        assert!(out.summary.claims >= if p == 3 { 20 } else { 40 });
    }
}

#[test]
fn suite_bodies_are_reproducible() {
    let a = run_suite(
        3,
        &SuiteOptions {
            seed: 4,
            jobs: 1,
            ..Default::default()
        },
    )
    .unwrap();
    let b = run_suite(
        3,
        &SuiteOptions {
            seed: 4,
            jobs: 3,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(a.summary.body_sha256, b.summary.body_sha256);
    let strip = |o: &specht::verify::SuiteOutcome| {
        o.reports
            .iter()
            .map(|r| (r.claim_id.clone(), r.computed.clone(), r.status))
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&a), strip(&b));
}
