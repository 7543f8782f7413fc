//! Acceptance gate: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;

use specht::gfp::Field;
use specht::homological::{
    chop, fixed_point_dim, fixed_points, h1_dimension, hom_space, socle_mult, specht_fixed_module,
    SimpleCatalog, DEFAULT_BUDGET,
};
use specht::invariants::{closed_formula, Engine, EngineConfig};
use specht::partition::Partition;
use specht::specht::{
    gram_rank, simple_module, specht_module, ModuleRep, PermutationModule, SpechtBasis,
};
use specht::tableaux::{branching_sections, count_standard, SkewShape};

type Outcome = Result<Vec<String>, String>;
type Named = (&'static str, fn() -> Outcome);

fn pp(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn gf(p: u32) -> Field {
    Field::new(p).unwrap()
}

/// `n! / prod(hooks)`, written out independently of the library.
fn hook_dim(parts: &[usize]) -> u128 {
    let n: usize = parts.iter().sum();
    let mut conj = vec![0usize; parts.first().copied().unwrap_or(0)];
    for &row in parts {
        for c in conj.iter_mut().take(row) {
            *c += 1;
        }
    }
    let hooks: u128 = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &row)| {
            let conj = &conj;
            (0..row).map(move |j| ((row - j - 1) + (conj[j] - i - 1) + 1) as u128)
        })
        .product();
    (1..=n as u128).product::<u128>() / hooks
}

fn engine(cap: u128) -> Engine {
    Engine::new(EngineConfig {
        cap,
        verify_formulas: false,
        cache_dir: None,
    })
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<String, String> {
    if got == want {
        Ok(format!("{what} = {got:?}"))
    } else {
        Err(format!("{what}: expected {want:?}, computed {got:?}"))
    }
}

fn criterion_1() -> Outcome {
    let mut lines = Vec::new();
    for (p, parts, m, dim, want) in [
        (3u32, &[4, 4, 4][..], 3usize, 462usize, 126usize),
        (2, &[4, 4], 2, 14, 9),
    ] {
        let sp = specht_module(&pp(parts), gf(p)).map_err(|e| e.to_string())?;
        lines.push(expect(
            &format!("dim Sp({}) over GF({p})", pp(parts)),
            sp.dim(),
            dim,
        )?);
        let f = fixed_point_dim(&sp, m).map_err(|e| e.to_string())?;
        lines.push(expect(&format!("F{p}({})", pp(parts)), f, want)?);
    }
    Ok(lines)
}

fn criterion_2() -> Outcome {
    let mut lines = Vec::new();
    let e = engine(10_000);
    let named: [(&[usize], u64); 9] = [
        (&[5, 1], 1),
        (&[5, 2], 2),
        (&[5, 3], 3),
        (&[5, 4], 4),
        (&[5, 5], 4),
        (&[5, 5, 1], 5 * 6 / 2),
        (&[5, 2, 2], hook_dim(&[2, 2]) as u64),
        (
            &[5, 5, 4],
            (hook_dim(&[5, 4]) + hook_dim(&[7, 1, 1])) as u64,
        ),
        (
            &[5, 5, 5],
            (hook_dim(&[5, 4]) + hook_dim(&[7, 1, 1])) as u64,
        ),
    ];
    for (parts, want) in named {
        let got = e.brute_force(&pp(parts), 5, 5).map_err(|x| x.to_string())?;
        lines.push(expect(
            &format!("F5({}) by brute force", pp(parts)),
            got,
            want,
        )?);
    }
    let largest = SpechtBasis::new(&pp(&[5, 5, 5]))
        .map_err(|x| x.to_string())?
        .dim() as u128;
    lines.push(expect(
        "dim Sp(5,5,5) against the hook formula",
        largest,
        hook_dim(&[5, 5, 5]),
    )?);

    let cases: Vec<Partition> = (5..=15)
        .flat_map(Partition::all)
        .filter(|l| {
            l.part(0) == 5 && closed_formula(l, 5, 5).is_some() && hook_dim(l.parts()) <= 10_000
        })
        .collect();
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|l| {
            let f = closed_formula(l, 5, 5).unwrap();
            match e.brute_force(l, 5, 5) {
                Ok(v) if v == f.value => None,
                Ok(v) => Some(format!("{l}: formula {} brute {v}", f.value)),
                Err(x) => Some(format!("{l}: {x}")),
            }
        })
        .collect();
    if !bad.is_empty() {
        return Err(format!("closed formula disagrees: {}", bad.join("; ")));
    }
    lines.push(format!(
        "{} shapes with first part 5 and degree 5..15: brute force = closed formula",
        cases.len()
    ));
    Ok(lines)
}

fn criterion_3() -> Outcome {
    let e = engine(10_000);
    let cases: Vec<Partition> = (5..=12)
        .flat_map(Partition::all)
        .filter(|l| l.part(0) <= 4)
        .collect();
    let values: Vec<(Partition, Result<u64, String>)> = cases
        .par_iter()
        .map(|l| (l.clone(), e.brute_force(l, 5, 5).map_err(|x| x.to_string())))
        .collect();
    let mut bad = Vec::new();
    let mut nonzero = Vec::new();
    for (l, v) in values {
        let v = v?;
        // nonzero exactly for (4^k, a) with 0 <= a <= 4
        let form = l.parts().iter().rev().skip(1).all(|&x| x == 4);
        let want = u64::from(form);
        if v != want {
            bad.push(format!("{l}: {v}"));
        }
        if v != 0 {
            nonzero.push(l.to_string());
        }
    }
    if !bad.is_empty() {
        return Err(format!("unexpected values: {}", bad.join(", ")));
    }
    Ok(vec![
        format!("{} partitions with first part <= 4 checked", cases.len()),
        format!("F5 = 1 exactly on {}", nonzero.join(" ")),
    ])
}

fn criterion_4() -> Outcome {
    let mut lines = Vec::new();
    for (parts, want) in [
        (&[6, 2][..], 13usize),
        (&[4, 4], 1),
        (&[5, 3], 28),
        (&[5, 2, 1], 35),
        (&[4, 3, 1], 7),
    ] {
        let got = gram_rank(&pp(parts), gf(3)).map_err(|e| e.to_string())?;
        lines.push(expect(
            &format!("dim D({}) over GF(3)", pp(parts)),
            got,
            want,
        )?);
    }
    let left = gram_rank(&pp(&[4, 3, 2]), gf(5)).map_err(|e| e.to_string())? as u128;
    let right = hook_dim(&[4, 3, 2]) - hook_dim(&[5, 3, 1]) + hook_dim(&[7, 1, 1]);
    lines.push(expect(
        "dim D(4,3,2) over GF(5) against dim(4,3,2) - dim(5,3,1) + dim(7,1,1)",
        left,
        right,
    )?);
    Ok(lines)
}

fn criterion_5() -> Outcome {
    let cases: [(u32, &[usize], &[&str]); 6] = [
        (2, &[4, 2], &["6", "5,1", "4,2"]),
        (2, &[3, 3], &["6", "4,2"]),
        (3, &[4, 4], &["6,2", "4,4"]),
        (3, &[4, 3, 1], &["5,3", "5,2,1", "4,3,1"]),
        (
            3,
            &[4, 3, 2],
            &[
                "8,1", "7,1,1", "6,3", "6,2,1", "5,4", "5,2,2", "4,4,1", "4,3,2",
            ],
        ),
        (3, &[3, 3, 3], &["7,1,1", "4,3,2"]),
    ];
    let mut lines = Vec::new();
    for (p, parts, want) in cases {
        let lambda = pp(parts);
        let v = specht_module(&lambda, gf(p)).map_err(|e| e.to_string())?;
        let mut catalog = SimpleCatalog::new(v.degree(), gf(p)).map_err(|e| e.to_string())?;
        for seed in 1..=5u64 {
            let cf = chop(&v, &mut catalog, seed, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let got: Vec<String> = cf
                .factors
                .iter()
                .flat_map(|f| std::iter::repeat_n(f.label.clone(), f.mult))
                .collect();
            if got != want || !cf.residual.is_empty() {
                return Err(format!(
                    "Sp({lambda}) at p={p}, seed {seed}: {got:?} residual {:?}",
                    cf.residual
                ));
            }
        }
        lines.push(format!(
            "Sp({lambda}) at p={p}: {} for seeds 1..5",
            want.join(" | ")
        ));
    }
    Ok(lines)
}

fn criterion_6() -> Outcome {
    let mut lines = Vec::new();
    for (p, parts) in [(3u32, &[1, 1, 1][..]), (5, &[3, 1, 1])] {
        let v = specht_module(&pp(parts), gf(p)).map_err(|e| e.to_string())?;
        lines.push(expect(
            &format!("H1(Sp({})) over GF({p})", pp(parts)),
            h1_dimension(&v).map_err(|e| e.to_string())?,
            1,
        )?);
    }
    let e = engine(10_000);
    for p in [2u32, 3, 5] {
        let k = p as usize;
        let mut cases = vec![(vec![k], 1u64), (vec![k - 1, 1], 1)];
        if k >= 3 {
            cases.push((vec![k - 2, 1, 1], 0));
        }
        for (parts, want) in cases {
            let l = Partition::new(parts).unwrap();
            lines.push(expect(
                &format!("F{p}({l})"),
                e.brute_force(&l, p, k).map_err(|x| x.to_string())?,
                want,
            )?);
        }
    }
    Ok(lines)
}

fn criterion_7() -> Outcome {
    let mut lines = Vec::new();
    let f2 = gf(2);
    let sp44 = specht_module(&pp(&[4, 4]), f2).map_err(|e| e.to_string())?;
    let fixed = fixed_points(&sp44, 2).map_err(|e| e.to_string())?.basis;
    let basis = SpechtBasis::new(&pp(&[4, 4])).map_err(|e| e.to_string())?;
    // e_T with 1 and 2 down the first column span the bottom section Sp(3,3)
    let bottom: Vec<Vec<u32>> = (0..basis.dim())
        .filter(|&i| basis.placement(i)[0] == (0, 0) && basis.placement(i)[1] == (1, 0))
        .map(|i| {
            let mut v = vec![0; basis.dim()];
            v[i] = 1;
            v
        })
        .collect();
    let bottom = specht::gfp::Matrix::from_vecs(f2, basis.dim(), bottom);
    let meet = fixed
        .intersect_rowspaces(&bottom)
        .map_err(|e| e.to_string())?
        .rows();
    lines.push(expect(
        "dim of F2(4,4) meeting the Sp(3,3) section",
        meet,
        5,
    )?);
    lines.push(expect(
        "image of F2(4,4) in Sp(4,2)",
        fixed.rows() - meet,
        4,
    )?);
    let sp42 = specht_module(&pp(&[4, 2]), f2).map_err(|e| e.to_string())?;
    lines.push(expect(
        "dim End(Sp(4,2)) over GF(2)",
        hom_space(&sp42, &sp42).map_err(|e| e.to_string())?.dim(),
        1,
    )?);

    let f3 = gf(3);
    let d63 = simple_module(&pp(&[6, 3]), f3).map_err(|e| e.to_string())?;
    let fmod = fixed_points(
        &specht_module(&pp(&[4, 4, 4]), f3).map_err(|e| e.to_string())?,
        3,
    )
    .map_err(|e| e.to_string())?
    .module;
    let in_f = socle_mult(&d63, &fmod).map_err(|e| e.to_string())?;
    if in_f < 1 {
        return Err("D(6,3) does not embed in the F3(4,4,4) module".into());
    }
    lines.push(format!(
        "D(6,3) socle multiplicity in F3(4,4,4) = {in_f} >= 1"
    ));
    let sp63 = specht_module(&pp(&[6, 3]), f3).map_err(|e| e.to_string())?;
    lines.push(expect(
        "D(6,3) socle multiplicity in Sp(6,3)",
        socle_mult(&d63, &sp63).map_err(|e| e.to_string())?,
        0,
    )?);
    Ok(lines)
}

fn three_part_range(p: u32) -> Vec<Partition> {
    let k = p as usize;
    (k + 1..=k + 6)
        .flat_map(Partition::all)
        .filter(|l| l.len() == 3 && l.part(0) <= k)
        .collect()
}

fn recursion_and_lower_bound() -> Outcome {
    let e = engine(10_000);
    let mut checked = 0;
    for p in [3u32, 5] {
        let k = p as usize;
        for l in three_part_range(p) {
            let f = e.brute_force(&l, p, k).map_err(|x| x.to_string())?;
            let kids: u64 = branching_sections(&l)
                .iter()
                .map(|c| e.brute_force(c, p, k))
                .sum::<Result<u64, _>>()
                .map_err(|x| x.to_string())?;
            if f > kids || (l.removable_residues_distinct(p) && f != kids) {
                return Err(format!(
                    "restriction bound fails at {l}, p={p}: F={f}, sum={kids}"
                ));
            }
            let rational = match SkewShape::new(l.clone(), pp(&[k])) {
                Ok(shape) => count_standard(&shape) as u64,
                Err(_) => 0,
            };
            if f < rational {
                return Err(format!(
                    "rational lower bound fails at {l}, p={p}: F={f} < {rational}"
                ));
            }
            checked += 1;
        }
    }
    Ok(vec![format!(
        "restriction upper bound and rational lower bound on {checked} three-part shapes"
    )])
}

fn reciprocity() -> Outcome {
    let mut checked = 0;
    for r in 2..=10usize {
        for m in 1..=r {
            let tabloids: u128 = ((m + 1)..=r).map(|x| x as u128).product();
            if tabloids > 720 {
                continue;
            }
            let young = Partition::from_unsorted([vec![m], vec![1; r - m]].concat());
            let perm = PermutationModule::new(&young).map_err(|e| e.to_string())?;
            for p in [2u32, 3, 5] {
                let mm = perm.to_module(gf(p)).map_err(|e| e.to_string())?;
                for l in Partition::all(r) {
                    let sp = specht_module(&l, gf(p)).map_err(|e| e.to_string())?;
                    let fixed = fixed_point_dim(&sp, m).map_err(|e| e.to_string())?;
                    let hom = hom_space(&mm, &sp).map_err(|e| e.to_string())?.dim();
                    if fixed != hom {
                        return Err(format!(
                            "Sp({l}) p={p} m={m}: fixed {fixed}, Hom(M({young}), Sp) {hom}"
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(vec![format!(
        "fixed points = Hom(M(m,1^(r-m)), Sp) in {checked} cases of degree <= 10"
    )])
}

fn coxeter() -> Outcome {
    let mut modules: Vec<ModuleRep> = Vec::new();
    for p in [2u32, 3, 5] {
        let f = gf(p);
        for n in 1..=7 {
            for l in Partition::all(n) {
                let sp = specht_module(&l, f).map_err(|e| e.to_string())?;
                if l.is_p_regular(p) {
                    modules.push(simple_module(&l, f).map_err(|e| e.to_string())?);
                }
                modules.push(sp.dual());
                modules.push(sp.sign_twist());
                if n > 2 {
                    modules.push(fixed_points(&sp, 2).map_err(|e| e.to_string())?.module);
                }
                modules.push(sp);
            }
        }
    }
    modules.push(specht_fixed_module(&pp(&[4, 4, 4]), gf(3), 3).map_err(|e| e.to_string())?);
    modules.push(specht_fixed_module(&pp(&[5, 5, 5]), gf(5), 5).map_err(|e| e.to_string())?);
    for m in &modules {
        m.check_relations()
            .map_err(|e| format!("{}: {e}", m.label()))?;
    }
    Ok(vec![format!(
        "Coxeter relations hold in {} constructed modules",
        modules.len()
    )])
}

fn tableau_counts() -> Outcome {
    let mut checked = 0;
    for n in 1..=12 {
        for l in Partition::all(n) {
            let d = SpechtBasis::new(&l).map_err(|e| e.to_string())?.dim() as u128;
            if d != hook_dim(l.parts()) {
                return Err(format!(
                    "dim Sp({l}) = {d}, hook formula {}",
                    hook_dim(l.parts())
                ));
            }
            checked += 1;
        }
    }
    Ok(vec![format!(
        "dim Sp = number of standard tableaux for all {checked} partitions of degree <= 12"
    )])
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    let suites: [Named; 4] = [
        ("bounds", recursion_and_lower_bound),
        ("reciprocity", reciprocity),
        ("relations", coxeter),
        ("dimensions", tableau_counts),
    ];
    for (name, suite) in suites {
        match suite() {
            Ok(l) => lines.extend(l.into_iter().map(|x| format!("{name}: {x}"))),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    if failures.is_empty() {
        Ok(lines)
    } else {
        Err(failures.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Named; 8] = [
        (
            "fixed points of Sp(4,4,4) at p=3 and Sp(4,4) at p=2",
            criterion_1,
        ),
        (
            "characteristic 5 values against closed formulas",
            criterion_2,
        ),
        ("first part at most 4 in characteristic 5", criterion_3),
        ("simple dimensions from Gram ranks", criterion_4),
        ("composition factors across seeds", criterion_5),
        ("first cohomology and small fixed points", criterion_6),
        ("obstructions to Specht filtrations", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(lines) => {
                println!("[PASS] criterion {}: {name} ({secs:.1}s)", i + 1);
                for l in lines {
                    println!("       {l}");
                }
            }
            Err(e) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name} ({secs:.1}s)", i + 1);
                println!("       {e}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
