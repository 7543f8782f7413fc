use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gfp::{Echelon, Field, Matrix};
use crate::partition::{lex_desc, Partition};
use crate::poly::charpoly;
use crate::specht::{gram_rank, simple_module, ModuleRep};

use super::hom::hom_space;
use super::HomologicalError;

/// Trials allowed per attempted split.
pub const DEFAULT_BUDGET: usize = 200;

/// Smallest subspace containing `seeds` and stable under `v -> v * m` for
/// every `m` in `mats`.
pub fn spin(field: Field, seeds: &[Vec<u32>], mats: &[Matrix]) -> Matrix {
    let dim = mats
        .first()
        .map_or_else(|| seeds.first().map_or(0, Vec::len), Matrix::rows);
    let mut ech = Echelon::new(field, dim);
    let mut vecs = Vec::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        if ech.insert(s).is_ok() {
            vecs.push(s.clone());
            queue.push_back(vecs.len() - 1);
        }
    }
    while let Some(j) = queue.pop_front() {
        if ech.is_full() {
            break;
        }
        for m in mats {
            let u = m.vec_mul(&vecs[j]);
            if ech.insert(&u).is_ok() {
                vecs.push(u);
                queue.push_back(vecs.len() - 1);
            }
        }
    }
    Matrix::from_vecs(field, dim, vecs)
}

enum Split {
    Irreducible,
    Proper(Matrix),
    Undecided,
}

fn random_element<R: Rng>(v: &ModuleRep, rng: &mut R) -> Matrix {
    let f = v.field();
    let gens = v.degree() - 1;
    let terms = rng.gen_range(2..=4);
    let mut acc = Matrix::zeros(f, v.dim(), v.dim());
    for _ in 0..terms {
        let len = rng.gen_range(1..=4);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=gens)).collect();
        let c = rng.gen_range(1..f.p());
        acc = acc.add(&v.word_matrix(&word).scale(c));
    }
    acc
}

/// Holt-Rees style split with Norton's irreducibility criterion.
fn split<R: Rng>(v: &ModuleRep, budget: usize, rng: &mut R) -> Split {
    let d = v.dim();
    if d <= 1 {
        return Split::Irreducible;
    }
    let f = v.field();
    if v.degree() < 2 {
        // trivial group: every line is a submodule
        return Split::Proper(Matrix::identity(f, d).select_rows(&[0]));
    }
    let transposed: Vec<Matrix> = v.generators().iter().map(Matrix::transpose).collect();
    for _ in 0..budget {
        let theta = random_element(v, rng);
        for factor in charpoly(&theta).irreducible_factors(rng) {
            let deg = factor.degree().unwrap_or(0);
            if deg > 8 && d > 48 {
                continue;
            }
            let ft = factor.eval_matrix(&theta);
            let left = ft.left_kernel();
            let Some(seed) = left.row_vecs().into_iter().next() else {
                continue;
            };
            let sub = spin(f, &[seed], v.generators());
            if sub.rows() < d {
                return Split::Proper(sub);
            }
            if left.rows() == deg {
                let right = ft.kernel_basis();
                let seed = right.row_vecs().into_iter().next().expect("same nullity");
                let dual_sub = spin(f, &[seed], &transposed);
                if dual_sub.rows() == d {
                    return Split::Irreducible;
                }
                return Split::Proper(dual_sub.kernel_basis());
            }
        }
    }
    Split::Undecided
}

/// Composition factors found by the meataxe, without identification.
pub struct Chopped {
    pub factors: Vec<ModuleRep>,
    pub undecided: Vec<ModuleRep>,
}

pub fn chop_raw(v: &ModuleRep, seed: u64, budget: usize) -> Chopped {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Chopped {
        factors: Vec::new(),
        undecided: Vec::new(),
    };
    let mut stack = vec![v.clone()];
    while let Some(m) = stack.pop() {
        if m.dim() == 0 {
            continue;
        }
        match split(&m, budget, &mut rng) {
            Split::Irreducible => out.factors.push(m),
            Split::Undecided => out.undecided.push(m),
            Split::Proper(sub) => {
                let quo = m.quotient(&sub).expect("spun subspace is invariant");
                let sub = m.submodule(&sub).expect("spun subspace is invariant");
                stack.push(quo);
                stack.push(sub);
            }
        }
    }
    out
}

/// The simple modules `D^mu`, `mu` p-regular, for one symmetric group,
/// indexed by dimension; modules are built on demand.
pub struct SimpleCatalog {
    n: usize,
    field: Field,
    dims: Vec<(Partition, usize)>,
    modules: HashMap<Partition, ModuleRep>,
}

impl SimpleCatalog {
    pub fn new(n: usize, field: Field) -> Result<Self, HomologicalError> {
        let mut dims = Vec::new();
        for mu in Partition::all(n) {
            if mu.is_p_regular(field.p()) {
                let r = gram_rank(&mu, field)?;
                dims.push((mu, r));
            }
        }
        Ok(SimpleCatalog {
            n,
            field,
            dims,
            modules: HashMap::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[(Partition, usize)] {
        &self.dims
    }

    pub fn dim_of(&self, mu: &Partition) -> Option<usize> {
        self.dims.iter().find(|(m, _)| m == mu).map(|(_, d)| *d)
    }

    pub fn module(&mut self, mu: &Partition) -> Result<&ModuleRep, HomologicalError> {
        if !self.modules.contains_key(mu) {
            let m = simple_module(mu, self.field)?;
            self.modules.insert(mu.clone(), m);
        }
        Ok(&self.modules[mu])
    }

    /// The `D^mu` of matching dimension admitting a nonzero map into `factor`.
    pub fn identify(&mut self, factor: &ModuleRep) -> Result<Option<Partition>, HomologicalError> {
        let candidates: Vec<Partition> = self
            .dims
            .iter()
            .filter(|(_, d)| *d == factor.dim())
            .map(|(m, _)| m.clone())
            .collect();
        for mu in candidates {
            let d = self.module(&mu)?;
            if hom_space(d, factor)?.dim() > 0 {
                return Ok(Some(mu));
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    /// The partition `mu` of the factor `D^mu`, or `"?"` when unidentified.
    pub label: String,
    pub dim: usize,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionFactors {
    pub factors: Vec<Factor>,
    /// Dimensions of pieces the meataxe could not decide within budget.
    pub residual: Vec<usize>,
    pub seed: u64,
}

impl CompositionFactors {
    pub fn labels(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.label.clone()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.residual.is_empty() && self.factors.iter().all(|f| f.label != "?")
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim * f.mult).sum::<usize>()
            + self.residual.iter().sum::<usize>()
    }
}

/// Composition factors of `v`, identified against `catalog` and listed
/// most dominant label first.
pub fn chop(
    v: &ModuleRep,
    catalog: &mut SimpleCatalog,
    seed: u64,
    budget: usize,
) -> Result<CompositionFactors, HomologicalError> {
    if catalog.degree() != v.degree() || catalog.field() != v.field() {
        return Err(HomologicalError::Incompatible {
            left: v.label().to_string(),
            right: format!(
                "simple modules for n={}, p={}",
                catalog.degree(),
                catalog.field().p()
            ),
        });
    }
    let raw = chop_raw(v, seed, budget);
    let mut known: BTreeMap<Partition, (usize, usize)> = BTreeMap::new();
    let mut unknown: BTreeMap<usize, usize> = BTreeMap::new();
    for m in &raw.factors {
        match catalog.identify(m)? {
            Some(mu) => known.entry(mu).or_insert((m.dim(), 0)).1 += 1,
            None => *unknown.entry(m.dim()).or_default() += 1,
        }
    }
    let mut labelled: Vec<(Partition, (usize, usize))> = known.into_iter().collect();
    labelled.sort_by(|a, b| lex_desc(&a.0, &b.0));
    let mut factors: Vec<Factor> = labelled
        .into_iter()
        .map(|(mu, (dim, mult))| Factor {
            label: mu.to_string(),
            dim,
            mult,
        })
        .collect();
    factors.extend(unknown.into_iter().map(|(dim, mult)| Factor {
        label: "?".into(),
        dim,
        mult,
    }));
    let mut residual: Vec<usize> = raw.undecided.iter().map(ModuleRep::dim).collect();
    residual.sort_unstable();
    Ok(CompositionFactors {
        factors,
        residual,
        seed,
    })
}
