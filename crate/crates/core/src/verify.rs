//! Claim ledgers for characteristics 2, 3 and 5: each claim pairs an
//! expected value with an independent computation.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gfp::{Field, Matrix};
use crate::homological::{
    chop, find_isomorphism, fixed_points, h1_dimension, head_mult, hom_space, socle_mult,
    specht_fixed_module, SimpleCatalog, DEFAULT_BUDGET,
};
use crate::invariants::{
    char0_invariant_dim, closed_formula, Engine, EngineConfig, InvariantError,
};
use crate::part;
use crate::partition::{same_block, Partition};
use crate::specht::{
    gram_rank, radical_module, simple_module, specht_module, ModuleRep, SpechtBasis,
};
use crate::tableaux::{
    branching_sections, principal_block_sections, young_filtration_sections, Filtration,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Cap used by the suites; `Sp(5,5,5)` has dimension 6006.
pub const SUITE_CAP: u128 = 10_000;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("no claim ledger for p={0}; supported primes are 2, 3 and 5")]
    UnsupportedPrime(u32),
    #[error("claim ledger is malformed: {0}")]
    Malformed(String),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Stated in the published result being reproduced.
    Published,
    /// Obtained from an independent computation such as the hook formula.
    Oracle,
    /// Immediate from the definitions.
    Elementary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Datum {
    Bool(bool),
    Int(u64),
    Labels(Vec<String>),
    Text(String),
}

impl From<bool> for Datum {
    fn from(b: bool) -> Self {
        Datum::Bool(b)
    }
}

impl From<u64> for Datum {
    fn from(v: u64) -> Self {
        Datum::Int(v)
    }
}

impl From<usize> for Datum {
    fn from(v: usize) -> Self {
        Datum::Int(v as u64)
    }
}

impl From<u128> for Datum {
    fn from(v: u128) -> Self {
        Datum::Int(v as u64)
    }
}

impl From<&str> for Datum {
    fn from(s: &str) -> Self {
        Datum::Text(s.to_string())
    }
}

impl From<Vec<&str>> for Datum {
    fn from(v: Vec<&str>) -> Self {
        Datum::Labels(v.into_iter().map(String::from).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub statement: String,
    pub expected: Datum,
    pub provenance: Provenance,
    pub computed: Option<Datum>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub seed: u64,
    pub wall_time_ms: u64,
}

#[derive(Serialize)]
struct HashedReport<'a> {
    claim_id: &'a str,
    statement: &'a str,
    expected: &'a Datum,
    provenance: Provenance,
    computed: &'a Option<Datum>,
    status: Status,
    error: &'a Option<String>,
    seed: u64,
}

impl VerificationReport {
    fn hashed_body(&self) -> String {
        serde_json::to_string(&HashedReport {
            claim_id: &self.claim_id,
            statement: &self.statement,
            expected: &self.expected,
            provenance: self.provenance,
            computed: &self.computed,
            status: self.status,
            error: &self.error,
            seed: self.seed,
        })
        .expect("plain data")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub schema_version: u32,
    pub prime: u32,
    pub seed: u64,
    pub claims: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// SHA-256 of the report lines with wall times removed.
    pub body_sha256: String,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

impl SuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.claims
    }

    /// One JSON object per report, then `{"summary": ...}`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&serde_json::to_string(r).expect("plain data"));
            out.push('\n');
        }
        out.push_str(&serde_json::json!({ "summary": self.summary }).to_string());
        out.push('\n');
        out
    }
}

fn datum_text(d: &Datum) -> String {
    match d {
        Datum::Bool(b) => b.to_string(),
        Datum::Int(v) => v.to_string(),
        Datum::Labels(ls) => ls.join(" | "),
        Datum::Text(t) => t.clone(),
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    claim_id: &'a str,
    status: Status,
    expected: String,
    computed: String,
    provenance: Provenance,
    seed: u64,
    wall_time_ms: u64,
    statement: &'a str,
}

/// Writes reports as CSV, one row per claim.
pub fn write_reports_csv<W: std::io::Write>(
    reports: &[VerificationReport],
    out: W,
) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(CsvRow {
            claim_id: &r.claim_id,
            status: r.status,
            expected: datum_text(&r.expected),
            computed: r.computed.as_ref().map(datum_text).unwrap_or_default(),
            provenance: r.provenance,
            seed: r.seed,
            wall_time_ms: r.wall_time_ms,
            statement: &r.statement,
        })?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    pub cap: u128,
    /// Worker threads; `0` uses the rayon default.
    pub jobs: usize,
    pub budget: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 1,
            cap: SUITE_CAP,
            jobs: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

type ClaimError = Box<dyn std::error::Error + Send + Sync>;
type ClaimResult = Result<Datum, ClaimError>;
type Compute = Box<dyn Fn(&Ctx) -> ClaimResult + Send + Sync>;

pub struct Claim {
    pub id: String,
    pub statement: String,
    pub provenance: Provenance,
    pub expected: Datum,
    compute: Compute,
}

type Slot = Arc<Mutex<Option<Arc<ModuleRep>>>>;

/// Shared state for one suite run.
pub struct Ctx {
    field: Field,
    seed: u64,
    budget: usize,
    engine: Engine,
    modules: Mutex<HashMap<String, Slot>>,
    catalogs: Mutex<HashMap<usize, Arc<Mutex<SimpleCatalog>>>>,
}

impl Ctx {
    fn new(p: u32, opts: &SuiteOptions) -> Self {
        Ctx {
            field: Field::new(p).expect("ledger primes"),
            seed: opts.seed,
            budget: opts.budget,
            engine: Engine::new(EngineConfig {
                cap: opts.cap,
                ..EngineConfig::from_env()
            }),
            modules: Mutex::default(),
            catalogs: Mutex::default(),
        }
    }

    fn p(&self) -> u32 {
        self.field.p()
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// `F_p(lambda)` by brute force, also checked against any closed formula.
    fn fixed(&self, lambda: &Partition) -> Result<u64, ClaimError> {
        let p = self.p();
        let v = self.engine.brute_force(lambda, p, p as usize)?;
        if let Some(f) = closed_formula(lambda, p, p as usize) {
            if f.value != v {
                return Err(format!(
                    "closed formula ({}) gives {} but brute force gives {v}",
                    f.citation, f.value
                )
                .into());
            }
        }
        Ok(v)
    }

    /// Sum of the recursive upper bounds of the restriction sections.
    fn section_bound(&self, lambda: &Partition) -> Result<u64, ClaimError> {
        let p = self.p();
        let mut total = 0;
        for c in branching_sections(lambda) {
            total += self.engine.branching_bound(&c, p, p as usize)?.upper();
        }
        Ok(total)
    }

    fn module(
        &self,
        key: String,
        build: impl FnOnce() -> Result<ModuleRep, ClaimError>,
    ) -> Result<Arc<ModuleRep>, ClaimError> {
        let slot = self
            .modules
            .lock()
            .expect("module table")
            .entry(key)
            .or_default()
            .clone();
        let mut guard = slot.lock().expect("module slot");
        if let Some(m) = guard.as_ref() {
            return Ok(m.clone());
        }
        let m = Arc::new(build()?);
        *guard = Some(m.clone());
        Ok(m)
    }

    fn sp(&self, lambda: &Partition) -> Result<Arc<ModuleRep>, ClaimError> {
        self.module(format!("Sp({lambda})"), || {
            Ok(specht_module(lambda, self.field)?)
        })
    }

    fn simple(&self, mu: &Partition) -> Result<Arc<ModuleRep>, ClaimError> {
        self.module(format!("D({mu})"), || Ok(simple_module(mu, self.field)?))
    }

    /// `F_p(lambda)` as a module, by dense elimination when small and by
    /// averaging otherwise.
    fn fixed_module(&self, lambda: &Partition) -> Result<Arc<ModuleRep>, ClaimError> {
        let m = self.p() as usize;
        self.module(format!("F({lambda})"), || {
            if lambda.char0_dim() <= 1000 {
                Ok(fixed_points(&*self.sp(lambda)?, m)?.module)
            } else {
                Ok(specht_fixed_module(lambda, self.field, m)?)
            }
        })
    }

    fn catalog(&self, n: usize) -> Result<Arc<Mutex<SimpleCatalog>>, ClaimError> {
        let mut table = self.catalogs.lock().expect("catalog table");
        if let Some(c) = table.get(&n) {
            return Ok(c.clone());
        }
        let c = Arc::new(Mutex::new(SimpleCatalog::new(n, self.field)?));
        table.insert(n, c.clone());
        Ok(c)
    }

    /// Composition factor labels, repeated by multiplicity, most dominant first.
    fn factors(&self, v: &ModuleRep) -> ClaimResult {
        let catalog = self.catalog(v.degree())?;
        let mut catalog = catalog.lock().expect("catalog");
        let cf = chop(v, &mut catalog, self.seed, self.budget)?;
        let mut labels = Vec::new();
        for f in &cf.factors {
            labels.extend(std::iter::repeat_n(f.label.clone(), f.mult));
        }
        labels.extend(cf.residual.iter().map(|d| format!("undecided:{d}")));
        Ok(Datum::Labels(labels))
    }

    /// Whether `sub` embeds in `v` with cokernel isomorphic to `quo`.
    fn short_exact(&self, sub: &ModuleRep, v: &ModuleRep, quo: &ModuleRep) -> ClaimResult {
        let mut rng = self.rng();
        let Some(map) = hom_space(sub, v)?.find_rank(sub.dim(), 64, &mut rng) else {
            return Ok(false.into());
        };
        let cokernel = v.quotient(&map.rowspace())?;
        Ok(find_isomorphism(&cokernel, quo, &mut rng)?.is_some().into())
    }
}

fn labels(parts: &[Partition]) -> Datum {
    Datum::Labels(parts.iter().map(Partition::to_string).collect())
}

fn filtration_labels(f: &Filtration) -> Vec<String> {
    f.sections
        .iter()
        .flat_map(|(nu, m)| std::iter::repeat_n(nu.to_string(), *m))
        .collect()
}

fn dim(l: &Partition) -> u64 {
    l.char0_dim() as u64
}

fn pp(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("ledger partition")
}

struct Ledger {
    p: u32,
    claims: Vec<Claim>,
}

impl Ledger {
    fn add(
        &mut self,
        id: impl Into<String>,
        statement: impl Into<String>,
        provenance: Provenance,
        expected: impl Into<Datum>,
        compute: impl Fn(&Ctx) -> ClaimResult + Send + Sync + 'static,
    ) {
        self.claims.push(Claim {
            id: id.into(),
            statement: statement.into(),
            provenance,
            expected: expected.into(),
            compute: Box::new(compute),
        });
    }

    /// `F_p(lambda) = value`, computed by brute force.
    fn fixed(&mut self, lambda: Partition, value: u64, provenance: Provenance) {
        let p = self.p;
        self.add(
            format!("F{p}({lambda})"),
            format!("dim Sp({lambda})^(Sigma_{p}) over GF({p})"),
            provenance,
            value,
            move |c| Ok(c.fixed(&lambda)?.into()),
        );
    }

    fn gram(&mut self, mu: Partition, value: u64, provenance: Provenance) {
        let p = self.p;
        self.add(
            format!("dimD{p}({mu})"),
            format!("dim D^({mu}) over GF({p}) as the rank of the Gram form"),
            provenance,
            value,
            move |c| Ok(gram_rank(&mu, c.field)?.into()),
        );
    }

    fn chop(&mut self, lambda: Partition, expected: Vec<&str>) {
        let p = self.p;
        self.add(
            format!("chop{p}(Sp({lambda}))"),
            format!("composition factors of Sp({lambda}) over GF({p})"),
            Provenance::Published,
            expected,
            move |c| c.factors(&*c.sp(&lambda)?),
        );
    }

    fn specht_dim(&mut self, lambda: Partition, value: u64) {
        self.add(
            format!("dim({lambda})"),
            format!("number of standard tableaux of shape ({lambda})"),
            Provenance::Published,
            value,
            move |_| Ok(SpechtBasis::new(&lambda)?.dim().into()),
        );
    }

    fn core(&mut self, lambda: Partition, core: &str) {
        let p = self.p;
        self.add(
            format!("core{p}({lambda})"),
            format!("{p}-core of ({lambda})"),
            Provenance::Published,
            core,
            move |c| Ok(Datum::Text(lambda.core(c.p()).to_string())),
        );
    }
}

/// The claims for one prime, in a fixed order.
pub fn ledger(p: u32) -> Result<Vec<Claim>, VerifyError> {
    let mut l = Ledger {
        p,
        claims: Vec::new(),
    };
    match p {
        2 => char2(&mut l),
        3 => char3(&mut l),
        5 => char5(&mut l),
        _ => return Err(VerifyError::UnsupportedPrime(p)),
    }
    validate(&l.claims)?;
    Ok(l.claims)
}

fn validate(claims: &[Claim]) -> Result<(), VerifyError> {
    let mut seen = HashSet::new();
    for c in claims {
        if c.id.is_empty() || c.statement.is_empty() {
            return Err(VerifyError::Malformed(
                "claim without id or statement".into(),
            ));
        }
        if !seen.insert(c.id.as_str()) {
            return Err(VerifyError::Malformed(format!(
                "duplicate claim id {}",
                c.id
            )));
        }
    }
    Ok(())
}

fn char2(l: &mut Ledger) {
    use Provenance::*;
    for (parts, v) in [
        (&[2][..], 1),
        (&[1, 1], 1),
        (&[2, 1], 1),
        (&[2, 2], 1),
        (&[3, 1], 2),
        (&[3, 2], 3),
        (&[3, 3], 3),
        (&[4, 1], 3),
        (&[4, 2], 6),
        (&[4, 3], 9),
        (&[4, 4], 9),
    ] {
        l.fixed(pp(parts), v, Published);
    }
    for (parts, v) in [(&[3, 2][..], 3u64), (&[4, 1], 3), (&[4, 3], 9)] {
        let lambda = pp(parts);
        l.add(
            format!("char0F2({lambda})"),
            format!("rational dim Sp({lambda})^(Sigma_2)"),
            Published,
            v,
            move |_| Ok(char0_invariant_dim(&lambda, 2).into()),
        );
    }
    for (parts, v) in [(&[3, 2][..], 3u64), (&[4, 3], 9)] {
        let lambda = pp(parts);
        l.add(
            format!("boundF2({lambda})"),
            format!("sum of F_2 over the restriction sections of ({lambda})"),
            Published,
            v,
            move |c| Ok(c.section_bound(&lambda)?.into()),
        );
    }
    l.add(
        "split2(4,2)",
        "removable nodes of (4,2) have distinct 2-residues and F_2(4,1)+F_2(3,2) = 6",
        Published,
        true,
        |c| {
            Ok((part![4, 2].removable_residues_distinct(2)
                && c.fixed(&part![4, 1])? + c.fixed(&part![3, 2])? == 6)
                .into())
        },
    );
    l.gram(part![5, 1], 4, Oracle);
    l.gram(part![4, 2], 4, Oracle);
    l.chop(part![4, 2], vec!["6", "5,1", "4,2"]);
    l.chop(part![3, 3], vec!["6", "4,2"]);
    l.add(
        "sections2(4,4)",
        "partitions of 2 inside (4,4), top section first",
        Published,
        vec!["2", "1,1"],
        |_| Ok(labels(&young_filtration_sections(&part![4, 4], 2))),
    );
    l.add(
        "chop2(F(4,4))",
        "composition factors of the Sigma_6-module F_2(4,4)",
        Published,
        vec!["6", "5,1", "4,2"],
        |c| c.factors(&*c.fixed_module(&part![4, 4])?),
    );
    l.add(
        "bottom2(4,4)",
        "span of e_T with 1,2 down the first column is Sigma_2 x Sigma_6-stable of dimension 5",
        Published,
        true,
        |c| {
            let k = bottom_section(c)?;
            Ok((k.rows() == 5 && stable(&*c.sp(&part![4, 4])?, &k, &[1, 3, 4, 5, 6, 7])).into())
        },
    );
    l.add(
        "bottomIso2(4,4)",
        "that span is Sp(3,3) as a Sigma_6-module",
        Published,
        true,
        |c| {
            let k = bottom_section(c)?;
            let sub = c
                .sp(&part![4, 4])?
                .restrict(&[3, 4, 5, 6, 7])?
                .submodule(&k)?;
            Ok(find_isomorphism(&sub, &*c.sp(&part![3, 3])?, &mut c.rng())?
                .is_some()
                .into())
        },
    );
    l.add(
        "image2(4,4)",
        "image of F_2(4,4) in the top section Sp(4,2) has dimension 9 - 5",
        Published,
        4u64,
        |c| {
            let f = fixed_points(&*c.sp(&part![4, 4])?, 2)?.basis;
            let k = bottom_section(c)?;
            Ok((f.rows() - f.intersect_rowspaces(&k)?.rows()).into())
        },
    );
    l.add(
        "end2(4,2)",
        "dim End(Sp(4,2)) over GF(2)",
        Published,
        1u64,
        |c| {
            let s = c.sp(&part![4, 2])?;
            Ok(hom_space(&s, &s)?.dim().into())
        },
    );
    l.add(
        "iso2(F(4,4),Sp(4,2))",
        "F_2(4,4) is isomorphic to Sp(4,2)",
        Published,
        false,
        |c| {
            Ok(find_isomorphism(
                &*c.fixed_module(&part![4, 4])?,
                &*c.sp(&part![4, 2])?,
                &mut c.rng(),
            )?
            .is_some()
            .into())
        },
    );
    l.add(
        "iso2(F(4,4),Sp(2,2,1,1))",
        "F_2(4,4) is isomorphic to Sp(2,2,1,1)",
        Published,
        false,
        |c| {
            let v = c.fixed_module(&part![4, 4])?;
            Ok(
                find_isomorphism(&v, &*c.sp(&part![2, 2, 1, 1])?, &mut c.rng())?
                    .is_some()
                    .into(),
            )
        },
    );
    l.add(
        "head2(Sp(3,2),D(3,2))",
        "multiplicity of D^(3,2) in the head of Sp(3,2)",
        Published,
        1u64,
        |c| Ok(head_mult(&*c.sp(&part![3, 2])?, &*c.simple(&part![3, 2])?)?.into()),
    );
    l.add(
        "head2(Sp(4,2),k)",
        "multiplicity of the trivial module in the head of Sp(4,2)",
        Published,
        0u64,
        |c| Ok(head_mult(&*c.sp(&part![4, 2])?, &ModuleRep::trivial(6, c.field))?.into()),
    );
    l.add(
        "soc2(k,Sp(3,3))",
        "multiplicity of the trivial module in the socle of Sp(3,3)",
        Published,
        1u64,
        |c| Ok(socle_mult(&ModuleRep::trivial(6, c.field), &*c.sp(&part![3, 3])?)?.into()),
    );
    l.add(
        "soc2(k,Sp(2,2,1,1))",
        "dim Hom(k, Sp(2,2,1,1)) over GF(2)",
        Published,
        0u64,
        |c| Ok(socle_mult(&ModuleRep::trivial(6, c.field), &*c.sp(&part![2, 2, 1, 1])?)?.into()),
    );
    l.add(
        "dualHom2(2,2,1,1)",
        "dim Hom(Sp(2,2,1,1)*, k) over GF(2)",
        Published,
        0u64,
        |c| {
            Ok(hom_space(
                &c.sp(&part![2, 2, 1, 1])?.dual(),
                &ModuleRep::trivial(6, c.field),
            )?
            .dim()
            .into())
        },
    );
}

/// Coordinates of the standard tableaux of shape (4,4) with 1 and 2 in the first column.
fn bottom_section(c: &Ctx) -> Result<Matrix, ClaimError> {
    let basis = SpechtBasis::new(&part![4, 4])?;
    let rows: Vec<Vec<u32>> = (0..basis.dim())
        .filter(|&i| {
            let t = basis.placement(i);
            t[0] == (0, 0) && t[1] == (1, 0)
        })
        .map(|i| {
            let mut v = vec![0; basis.dim()];
            v[i] = 1;
            v
        })
        .collect();
    Ok(Matrix::from_vecs(c.field, basis.dim(), rows))
}

fn stable(v: &ModuleRep, basis: &Matrix, gens: &[usize]) -> bool {
    let r = basis.rank();
    gens.iter()
        .all(|&i| basis.vstack(&basis.mul(v.generator(i))).rank() == r)
}

fn char3(l: &mut Ledger) {
    use Provenance::*;
    for (parts, v) in [
        (&[3][..], 1),
        (&[3, 1], 1),
        (&[3, 2], 2),
        (&[3, 3], 2),
        (&[3, 1, 1], 1),
        (&[3, 2, 1], 4),
        (&[3, 2, 2], 5),
        (&[3, 3, 1], 6),
        (&[3, 3, 2], 11),
        (&[3, 3, 3], 11),
        (&[4, 1], 2),
        (&[4, 2], 3),
        (&[4, 3], 5),
        (&[4, 4], 5),
        (&[4, 1, 1], 3),
        (&[4, 4, 3], 126),
        (&[4, 4, 4], 126),
        (&[2, 1], 1),
        (&[1, 1, 1], 0),
    ] {
        l.fixed(pp(parts), v, Published);
    }
    l.add(
        "H1_3(1,1,1)",
        "dim H^1(Sigma_3, Sp(1,1,1)) over GF(3)",
        Published,
        1u64,
        |c| Ok(h1_dimension(&*c.sp(&part![1, 1, 1])?)?.into()),
    );
    for (parts, v) in [
        (&[4, 2, 1][..], 10u64),
        (&[4, 2, 2], 15),
        (&[4, 3, 1], 21),
        (&[4, 3, 2], 47),
        (&[4, 3, 3], 58),
        (&[4, 4, 1], 26),
        (&[4, 4, 2], 73),
        (&[4, 4, 3], 131),
    ] {
        let lambda = pp(parts);
        l.add(
            format!("boundF3({lambda})"),
            format!("sum of bounds for F_3 over the restriction sections of ({lambda})"),
            Published,
            v,
            move |c| Ok(c.section_bound(&lambda)?.into()),
        );
    }
    l.specht_dim(part![4, 3, 1], 70);
    l.specht_dim(part![4, 2, 2], 56);
    l.specht_dim(part![3, 3, 2], 42);
    l.specht_dim(part![4, 3, 2], 168);
    l.specht_dim(part![3, 3, 3], 42);
    l.core(part![4, 3, 1], "2");
    l.core(part![4, 2, 2], "1,1");
    l.core(part![3, 3, 2], "3,1,1");
    l.core(part![4, 4], "1,1");
    l.add(
        "principal3(4,4,3)",
        "sections U | V | W of the principal block filtration of Sp(4,4,3)",
        Published,
        vec![
            "U:4,4", "U:4,3,1", "V:4,3,1", "V:4,2,2", "V:3,3,2", "W:3,3,2",
        ],
        |c| principal_labels(&part![4, 4, 3], c.p()),
    );
    l.gram(part![6, 2], 13, Published);
    l.gram(part![4, 4], 1, Published);
    l.gram(part![5, 3], 28, Published);
    l.gram(part![5, 2, 1], 35, Published);
    l.gram(part![4, 3, 1], 7, Published);
    l.chop(part![4, 4], vec!["6,2", "4,4"]);
    l.chop(part![4, 3, 1], vec!["5,3", "5,2,1", "4,3,1"]);
    l.add(
        "soc3(D(6,2),Sp(4,4))",
        "multiplicity of D^(6,2) in the socle of Sp(4,4)",
        Published,
        1u64,
        |c| Ok(socle_mult(&*c.simple(&part![6, 2])?, &*c.sp(&part![4, 4])?)?.into()),
    );
    l.add(
        "head3(Sp(4,4),D(4,4))",
        "multiplicity of D^(4,4) in the head of Sp(4,4)",
        Published,
        1u64,
        |c| Ok(head_mult(&*c.sp(&part![4, 4])?, &*c.simple(&part![4, 4])?)?.into()),
    );
    l.add(
        "head3(Sp(4,3,1),D(4,3,1))",
        "multiplicity of D^(4,3,1) in the head of Sp(4,3,1)",
        Published,
        1u64,
        |c| Ok(head_mult(&*c.sp(&part![4, 3, 1])?, &*c.simple(&part![4, 3, 1])?)?.into()),
    );
    l.add(
        "sections3(4,4,4)",
        "partitions of 3 inside (4,4,4), top section first",
        Published,
        vec!["3", "2,1", "1,1,1"],
        |_| Ok(labels(&young_filtration_sections(&part![4, 4, 4], 3))),
    );
    l.add(
        "exact3(F(4,4,4),Sp(4,3,2),Sp(3,3,3))",
        "F_3(4,4,4) embeds in Sp(4,3,2) with cokernel Sp(3,3,3)",
        Published,
        true,
        |c| {
            c.short_exact(
                &*c.fixed_module(&part![4, 4, 4])?,
                &*c.sp(&part![4, 3, 2])?,
                &*c.sp(&part![3, 3, 3])?,
            )
        },
    );
    l.chop(
        part![4, 3, 2],
        vec![
            "8,1", "7,1,1", "6,3", "6,2,1", "5,4", "5,2,2", "4,4,1", "4,3,2",
        ],
    );
    l.chop(part![3, 3, 3], vec!["7,1,1", "4,3,2"]);
    l.add(
        "chop3(F(4,4,4))",
        "composition factors of the Sigma_9-module F_3(4,4,4)",
        Published,
        vec!["8,1", "6,3", "6,2,1", "5,4", "5,2,2", "4,4,1"],
        |c| c.factors(&*c.fixed_module(&part![4, 4, 4])?),
    );
    l.add(
        "soc3(D(6,3),Sp(4,3,2))",
        "D^(6,3) embeds in Sp(4,3,2)",
        Published,
        true,
        |c| Ok((socle_mult(&*c.simple(&part![6, 3])?, &*c.sp(&part![4, 3, 2])?)? >= 1).into()),
    );
    l.add(
        "soc3(D(6,3),F(4,4,4))",
        "D^(6,3) embeds in F_3(4,4,4)",
        Published,
        true,
        |c| {
            Ok((socle_mult(
                &*c.simple(&part![6, 3])?,
                &*c.fixed_module(&part![4, 4, 4])?,
            )? >= 1)
                .into())
        },
    );
    for parts in [&[6, 3][..], &[5, 1, 1, 1, 1], &[2, 1, 1, 1, 1, 1, 1, 1]] {
        let lambda = pp(parts);
        l.add(
            format!("soc3(D(6,3),Sp({lambda}))"),
            format!("multiplicity of D^(6,3) in the socle of Sp({lambda})"),
            Published,
            0u64,
            move |c| Ok(socle_mult(&*c.simple(&part![6, 3])?, &*c.sp(&lambda)?)?.into()),
        );
    }
    l.chop(part![6, 3], vec!["8,1", "6,3"]);
    l.add(
        "head3(Sp(6,3),D(6,3))",
        "multiplicity of D^(6,3) in the head of Sp(6,3)",
        Published,
        1u64,
        |c| Ok(head_mult(&*c.sp(&part![6, 3])?, &*c.simple(&part![6, 3])?)?.into()),
    );
}

fn principal_labels(lambda: &Partition, p: u32) -> ClaimResult {
    let s = principal_block_sections(lambda, p)?;
    let mut out = Vec::new();
    for (tag, f) in [("U", &s.u), ("V", &s.v), ("W", &s.w)] {
        out.extend(
            filtration_labels(f)
                .into_iter()
                .map(|x| format!("{tag}:{x}")),
        );
    }
    Ok(Datum::Labels(out))
}

fn char5(l: &mut Ledger) {
    use Provenance::*;
    // values given directly in terms of p and a
    for (parts, v) in [
        (&[5][..], 1),
        (&[5, 1], 1),
        (&[5, 2], 2),
        (&[5, 3], 3),
        (&[5, 4], 4),
        (&[5, 5], 4),
        (&[5, 1, 1], 1),
        (&[5, 2, 1], 3),
        (&[5, 3, 1], 6),
        (&[5, 4, 1], 11),
        (&[5, 5, 1], 15),
        (&[4, 1], 1),
        (&[3, 1, 1], 0),
        (&[4, 4], 1),
        (&[4, 4, 1], 1),
        (&[4, 4, 2], 1),
        (&[4, 4, 3], 1),
        (&[4, 4, 4], 1),
        (&[4, 3, 1], 0),
        (&[4, 2, 2], 0),
    ] {
        l.fixed(pp(parts), v, Published);
    }
    // values given through Specht dimensions, evaluated by the hook formula
    let hook = |parts: &[usize]| dim(&pp(parts));
    for (parts, v) in [
        (&[5, 2, 2][..], hook(&[2, 2])),
        (&[5, 3, 2], hook(&[3, 2])),
        (&[5, 3, 3], hook(&[3, 3])),
        (&[5, 4, 2], hook(&[4, 2]) + hook(&[5, 1])),
        (&[5, 4, 3], hook(&[4, 3]) + hook(&[6, 1])),
        (&[5, 4, 4], hook(&[4, 4]) + hook(&[7, 1])),
        (&[5, 5, 2], hook(&[5, 2]) + hook(&[5, 1, 1])),
        (&[5, 5, 3], hook(&[5, 3]) + hook(&[6, 1, 1])),
        (&[5, 5, 4], hook(&[5, 4]) + hook(&[7, 1, 1])),
        (&[5, 5, 5], hook(&[5, 4]) + hook(&[7, 1, 1])),
    ] {
        l.fixed(pp(parts), v, Oracle);
    }
    l.add(
        "nonzeroF5(first part <= 4)",
        "partitions with first part at most 4 and degree 5..12 having nonzero F_5",
        Published,
        vec![
            "4,4,4", "4,4,3", "4,4,2", "4,4,1", "4,4", "4,3", "4,2", "4,1",
        ],
        |c| {
            let mut hits = Vec::new();
            for n in 5..=12 {
                for lambda in Partition::all(n) {
                    if lambda.part(0) <= 4 && c.engine.brute_force(&lambda, 5, 5)? != 0 {
                        hits.push(lambda);
                    }
                }
            }
            hits.sort_by(crate::partition::lex_desc);
            Ok(labels(&hits))
        },
    );
    l.add(
        "H1_5(3,1,1)",
        "dim H^1(Sigma_5, Sp(3,1,1)) over GF(5)",
        Published,
        1u64,
        |c| Ok(h1_dimension(&*c.sp(&part![3, 1, 1])?)?.into()),
    );
    l.add(
        "H1_5(5)",
        "dim H^1(Sigma_5, k) over GF(5)",
        Elementary,
        0u64,
        |c| Ok(h1_dimension(&ModuleRep::trivial(5, c.field))?.into()),
    );
    l.add(
        "rec5(5,3,3)",
        "F_5(5,3,3) = F_5(5,3,2)",
        Published,
        true,
        |c| Ok((c.fixed(&part![5, 3, 3])? == c.fixed(&part![5, 3, 2])?).into()),
    );
    l.add(
        "rec5(5,4,3)",
        "F_5(5,4,3) = F_5(5,3,2) + F_5(5,4,2) + 1",
        Published,
        true,
        |c| {
            Ok((c.fixed(&part![5, 4, 3])?
                == c.fixed(&part![5, 3, 2])? + c.fixed(&part![5, 4, 2])? + 1)
                .into())
        },
    );
    l.add(
        "rec5(5,5,2)",
        "F_5(5,5,2) = F_5(5,4,2) + F_5(5,5,1)",
        Published,
        true,
        |c| {
            Ok((c.fixed(&part![5, 5, 2])?
                == c.fixed(&part![5, 4, 2])? + c.fixed(&part![5, 5, 1])?)
            .into())
        },
    );
    l.add(
        "rec5(5,5,5)",
        "F_5(5,5,5) = F_5(5,5,4)",
        Published,
        true,
        |c| Ok((c.fixed(&part![5, 5, 5])? == c.fixed(&part![5, 5, 4])?).into()),
    );
    for a in 3..=5usize {
        let sum: u64 = (3..=a).map(|i| dim(&pp(&[i, 2]))).sum();
        l.add(
            format!("dimSum({a},3)"),
            format!("dim({a},3) equals the sum of dim(i,2) for 3 <= i <= {a}"),
            Published,
            sum,
            move |_| Ok(SpechtBasis::new(&pp(&[a, 3]))?.dim().into()),
        );
    }
    l.add(
        "normal5(4,4,2)",
        "normal nodes of (4,4,2) for p = 5",
        Published,
        vec!["(2,4)"],
        |c| {
            Ok(Datum::Labels(
                part![4, 4, 2]
                    .normal_nodes(c.p())
                    .iter()
                    .map(|n| format!("({},{})", n.row, n.col))
                    .collect(),
            ))
        },
    );
    l.gram(
        part![4, 4, 2],
        dim(&part![4, 3, 2]) - dim(&part![5, 3, 1]) + dim(&part![7, 1, 1]),
        Oracle,
    );
    l.gram(
        part![4, 3, 2],
        dim(&part![4, 3, 2]) - dim(&part![5, 3, 1]) + dim(&part![7, 1, 1]),
        Oracle,
    );
    l.gram(part![7, 1, 1], dim(&part![7, 1, 1]), Published);
    l.gram(
        part![5, 3, 1],
        dim(&part![5, 3, 1]) - dim(&part![7, 1, 1]),
        Published,
    );
    l.chop(part![4, 3, 2], vec!["5,3,1", "4,3,2"]);
    l.core(part![4, 3, 2], "2,1,1");
    l.add(
        "above5(4,3,2)",
        "partitions of 9 dominating (4,3,2) with the same 5-core",
        Published,
        vec!["7,1,1", "5,3,1", "4,3,2"],
        |c| {
            let target = part![4, 3, 2];
            let mut hits: Vec<Partition> = Partition::all(9)
                .into_iter()
                .filter(|mu| {
                    target.dominated_by(mu) && same_block(mu, &target, c.p()).unwrap_or(false)
                })
                .collect();
            hits.sort_by(crate::partition::lex_desc);
            Ok(labels(&hits))
        },
    );
    l.add(
        "resD5(4,4,2)",
        "D^(4,4,2) restricted to Sigma_9 is D^(4,3,2)",
        Published,
        true,
        |c| {
            let res = c
                .simple(&part![4, 4, 2])?
                .restrict(&(1..=8).collect::<Vec<_>>())?;
            Ok(
                find_isomorphism(&res, &*c.simple(&part![4, 3, 2])?, &mut c.rng())?
                    .is_some()
                    .into(),
            )
        },
    );
    l.add(
        "dimRad5(5,4,1)",
        "F_5(5,5,5) + dim rad Sp(4,4,2) against dim(5,4,1)",
        Oracle,
        dim(&part![5, 4, 1]),
        |c| {
            let rad = dim(&part![4, 4, 2]) - gram_rank(&part![4, 4, 2], c.field)? as u64;
            Ok((c.fixed(&part![5, 5, 5])? + rad).into())
        },
    );
    l.add(
        "principal5(5,5,5)",
        "sections U | V | W of the principal block filtration of Sp(5,5,5)",
        Published,
        vec!["U:5,5", "V:5,4,1", "W:4,4,2"],
        |c| principal_labels(&part![5, 5, 5], c.p()),
    );
    l.add(
        "dimF5(5,5,5)module",
        "dimension of the averaged fixed-point module of Sp(5,5,5)",
        Oracle,
        70u64,
        |c| Ok(c.fixed_module(&part![5, 5, 5])?.dim().into()),
    );
    l.add(
        "exact5(F(5,5,5),Sp(5,4,1),rad)",
        "F_5(5,5,5) embeds in Sp(5,4,1) with cokernel rad Sp(4,4,2)",
        Published,
        true,
        |c| {
            let rad = c.module("rad(4,4,2)".into(), || {
                Ok(radical_module(&part![4, 4, 2], c.field)?)
            })?;
            c.short_exact(
                &*c.fixed_module(&part![5, 5, 5])?,
                &*c.sp(&part![5, 4, 1])?,
                &rad,
            )
        },
    );
    l.add(
        "branch(5,4,1)",
        "restriction sections of (5,4,1), top first",
        Published,
        vec!["5,4", "5,3,1", "4,4,1"],
        |_| Ok(labels(&branching_sections(&part![5, 4, 1]))),
    );
    l.add(
        "branch(4,4,2)",
        "restriction sections of (4,4,2), top first",
        Published,
        vec!["4,4,1", "4,3,2"],
        |_| Ok(labels(&branching_sections(&part![4, 4, 2]))),
    );
    l.add(
        "split5(5,4,1)",
        "removable nodes of (5,4,1) have distinct 5-residues",
        Published,
        true,
        |c| Ok(part![5, 4, 1].removable_residues_distinct(c.p()).into()),
    );
    l.add(
        "split5(4,4,2)",
        "removable nodes of (4,4,2) have distinct 5-residues",
        Published,
        true,
        |c| Ok(part![4, 4, 2].removable_residues_distinct(c.p()).into()),
    );
    l.add(
        "blocks5(res(5,4,1))",
        "block pattern of (5,4), (5,3,1), (4,4,1), (4,3,2): only (5,3,1) and (4,3,2) share a block",
        Published,
        vec!["4,3,2~5,3,1"],
        |c| {
            let ls = [part![5, 4], part![5, 3, 1], part![4, 4, 1], part![4, 3, 2]];
            let mut pairs = Vec::new();
            for (i, a) in ls.iter().enumerate() {
                for b in &ls[i + 1..] {
                    if same_block(a, b, c.p())? {
                        let (x, y) = if a < b { (a, b) } else { (b, a) };
                        pairs.push(format!("{x}~{y}"));
                    }
                }
            }
            Ok(Datum::Labels(pairs))
        },
    );
    l.add(
        "resF5(5,5,5)",
        "Sp(5,4) embeds in F_5(5,5,5) restricted to Sigma_9",
        Published,
        true,
        |c| {
            let f = c.fixed_module(&part![5, 5, 5])?;
            let res = f.restrict(&(1..=8).collect::<Vec<_>>())?;
            let sp = c.sp(&part![5, 4])?;
            Ok(hom_space(&sp, &res)?
                .find_rank(sp.dim(), 64, &mut c.rng())
                .is_some()
                .into())
        },
    );
    l.add(
        "dimY2_5",
        "dim(5,3,1) - dim rad Sp(4,3,2) against dim(7,1,1)",
        Published,
        dim(&part![7, 1, 1]),
        |c| {
            Ok((dim(&part![5, 3, 1])
                - (dim(&part![4, 3, 2]) - gram_rank(&part![4, 3, 2], c.field)? as u64))
                .into())
        },
    );
    for (target, expected) in [(part![5, 4], vec!["5,5"]), (part![7, 1, 1], vec![])] {
        l.add(
            format!("lone5({target})"),
            format!("partitions of 10 whose restriction has the single section ({target})"),
            if expected.is_empty() {
                Published
            } else {
                Oracle
            },
            expected,
            move |_| {
                let hits: Vec<Partition> = Partition::all(10)
                    .into_iter()
                    .filter(|l| branching_sections(l) == [target.clone()])
                    .collect();
                Ok(labels(&hits))
            },
        );
    }
    l.add(
        "filtration5(5,5,5)",
        "some Specht modules of degree 10 restrict with sections exactly (5,4) and (7,1,1) together",
        Published,
        false,
        |_| {
            let target = [part![5, 4], part![7, 1, 1]];
            let fits = |secs: &[Partition]| {
                let mut s = secs.to_vec();
                s.sort();
                s == target
            };
            let pieces: Vec<Vec<Partition>> = Partition::all(10)
                .iter()
                .map(branching_sections)
                .filter(|s| s.iter().all(|x| target.contains(x)))
                .collect();
            let single = pieces.iter().any(|a| fits(a));
            let pair = pieces.iter().any(|a| pieces.iter().any(|b| fits(&[a.clone(), b.clone()].concat())));
            Ok((single || pair).into())
        },
    );
}

/// Runs the ledger for `p`, claims in parallel, reports in claim-id order.
pub fn run_suite(p: u32, opts: &SuiteOptions) -> Result<SuiteOutcome, VerifyError> {
    let claims = ledger(p)?;
    let ctx = Ctx::new(p, opts);
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    let mut reports: Vec<VerificationReport> =
        pool.install(|| claims.par_iter().map(|c| run_claim(c, &ctx)).collect());
    reports.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    let mut hasher = Sha256::new();
    for r in &reports {
        hasher.update(r.hashed_body().as_bytes());
        hasher.update(b"\n");
    }
    let summary = Summary {
        schema_version: SCHEMA_VERSION,
        prime: p,
        seed: opts.seed,
        claims: reports.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        body_sha256: hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect(),
        wall_time_ms: start.elapsed().as_millis() as u64,
    };
    Ok(SuiteOutcome { reports, summary })
}

fn run_claim(claim: &Claim, ctx: &Ctx) -> VerificationReport {
    let start = Instant::now();
    let outcome = (claim.compute)(ctx);
    let (computed, status, error) = match outcome {
        Ok(d) => {
            let status = if d == claim.expected {
                Status::Pass
            } else {
                Status::Fail
            };
            (Some(d), status, None)
        }
        Err(e) => {
            let capped = matches!(
                e.downcast_ref::<InvariantError>(),
                Some(InvariantError::CapExceeded { .. })
            );
            (
                None,
                if capped {
                    Status::Skipped
                } else {
                    Status::Fail
                },
                Some(e.to_string()),
            )
        }
    };
    VerificationReport {
        claim_id: claim.id.clone(),
        statement: claim.statement.clone(),
        expected: claim.expected.clone(),
        provenance: claim.provenance,
        computed,
        status,
        error,
        seed: ctx.seed,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}
