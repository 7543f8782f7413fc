//! Dimensions `F_m(lambda) = dim Sp(lambda)^{Sigma_m}`: closed formulas,
//! the restriction recursion, the rational lower bound and brute force.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gfp::{is_prime, Field};
use crate::homological::{specht_fixed_dim, AveragingOptions, HomologicalError};
use crate::partition::Partition;
use crate::tableaux::{branching_sections, lr_sections, SkewShape};

/// Default ceiling on `dim Sp(lambda)` for brute-force evaluation.
pub const DEFAULT_CAP: u128 = 5000;

/// Environment variable naming the on-disk cache directory.
pub const CACHE_ENV: &str = "SPECHT_CACHE_DIR";

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("subgroup size m={m} out of range for {lambda}")]
    Range { lambda: Partition, m: usize },
    #[error(
        "brute force for {lambda} needs dim Sp = {dim}, above the cap {cap}; raise it with --cap"
    )]
    CapExceeded {
        lambda: Partition,
        dim: u128,
        cap: u128,
    },
    #[error("no closed formula covers {lambda} at p={p}, m={m}")]
    NoFormula { lambda: Partition, p: u32, m: usize },
    #[error(
        "closed formula gives {formula} for {lambda} at p={p} but brute force gives {computed}"
    )]
    FormulaMismatch {
        lambda: Partition,
        p: u32,
        formula: u64,
        computed: u64,
    },
    #[error(transparent)]
    Homological(#[from] HomologicalError),
}

/// A dimension, known exactly or only up to an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Exact(u64),
    Interval { lower: u64, upper: u64 },
}

impl Value {
    fn between(lower: u64, upper: u64) -> Value {
        if lower == upper {
            Value::Exact(lower)
        } else {
            Value::Interval { lower, upper }
        }
    }

    pub fn lower(self) -> u64 {
        match self {
            Value::Exact(v) => v,
            Value::Interval { lower, .. } => lower,
        }
    }

    pub fn upper(self) -> u64 {
        match self {
            Value::Exact(v) => v,
            Value::Interval { upper, .. } => upper,
        }
    }

    pub fn exact(self) -> Option<u64> {
        match self {
            Value::Exact(v) => Some(v),
            Value::Interval { .. } => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(v) => write!(f, "{v}"),
            Value::Interval { lower, upper } => write!(f, "[{lower},{upper}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedFormula,
    BranchingExact,
    BranchingBound,
    Char0Bound,
    BruteForce,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedFormula => "closed_formula",
            Method::BranchingExact => "branching_exact",
            Method::BranchingBound => "branching_bound",
            Method::Char0Bound => "char0_bound",
            Method::BruteForce => "brute_force",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantResult {
    pub p: u32,
    pub lambda: Partition,
    pub m: usize,
    pub value: Value,
    pub method: Method,
    pub citation: String,
}

/// A closed-form value and the family it comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formula {
    pub value: u64,
    pub citation: &'static str,
}

pub const CITE_TRIVIAL: &str = "Sp(n) is the trivial module";
pub const CITE_COPRIME: &str =
    "m < p: Sigma_m is p-regular, so the rational count of skew tableaux is exact";
pub const CITE_SHORT_ROW: &str =
    "first part below p: nonzero exactly for (p-1)^l a, then one-dimensional";
pub const CITE_TWO_ROWS: &str = "F_p(p,a) = a for a < p and p-1 for a = p";
pub const CITE_HOOK_ONE: &str = "F_p(p,a,1) = a(a+1)/2, except p(p-1)/2+1 at a = p-1";
pub const CITE_THREE_ROWS: &str = "F_p(p,a,b), 2 <= b <= a <= p, b != p: dim(a,b), or plus dim(p+b-2,1) at a = p-1, dim(p+b-2,1,1) at a = p";
pub const CITE_CUBE: &str = "F_p(p,p,p) = dim(p,p-1) + dim(2p-3,1,1)";
pub const CITE_CHAR3: &str = "characteristic 3 table for first part 3 or 4";
pub const CITE_CHAR2: &str = "characteristic 2 table for two-row shapes";
pub const CITE_SPLIT: &str =
    "restriction to Sigma_{n-1} splits over removable nodes of distinct residues";
pub const CITE_BOUND: &str =
    "left exactness over the restriction filtration, rational count from below";
pub const CITE_CHAR0: &str = "rational invariants: sum of c^lambda_{(m),nu} dim(nu)";
pub const CITE_BRUTE: &str = "averaged polytabloids cut down by the remaining generators";

fn dim(parts: &[usize]) -> u64 {
    Partition::from_unsorted(parts.to_vec()).char0_dim() as u64
}

/// The characteristic 3 values for first part 3 or 4.
fn char3_table(parts: &[usize]) -> Option<u64> {
    Some(match parts {
        [3] => 1,
        [3, a] if *a <= 2 => *a as u64,
        [3, 3] => 2,
        [3, 1, 1] => 1,
        [3, 2, b] if *b <= 2 => *b as u64 + 3,
        [3, 3, b] if *b <= 2 => 5 * *b as u64 + 1,
        [3, 3, 3] => 11,
        [4] => 1,
        [4, 3] => 5,
        [4, a] if *a <= 4 => *a as u64 + 1,
        [4, 1, 1] => 3,
        [4, 4, 3] | [4, 4, 4] => 126,
        _ => return None,
    })
}

/// The characteristic 2 values for shapes with at most two rows of length at most 4.
fn char2_table(parts: &[usize]) -> Option<u64> {
    Some(match parts {
        [2] | [1, 1] => 1,
        [2, 1] | [2, 2] => 1,
        [3, 1] => 2,
        [3, 2] | [3, 3] => 3,
        [4, 1] => 3,
        [4, 2] => 6,
        [4, 3] | [4, 4] => 9,
        _ => return None,
    })
}

/// `F_m(lambda)` from a closed formula, when `lambda` lies in a family with
/// a known answer. Formulas are applied only inside the parameter range
/// they were proved for.
pub fn closed_formula(lambda: &Partition, p: u32, m: usize) -> Option<Formula> {
    let n = lambda.degree();
    if m == 0 || m > n || !is_prime(p) {
        return None;
    }
    let parts = lambda.parts();
    let f = |value, citation| Some(Formula { value, citation });
    if parts.len() == 1 {
        return f(1, CITE_TRIVIAL);
    }
    let pu = p as usize;
    if m < pu {
        let skew = SkewShape::new(lambda.clone(), Partition::new(vec![m]).expect("one row"));
        let count = skew.map_or(0, |s| crate::tableaux::count_standard(&s) as u64);
        return f(count, CITE_COPRIME);
    }
    if m != pu {
        return None;
    }
    if parts[0] < pu {
        let l = parts.iter().take_while(|&&x| x == pu - 1).count();
        let shaped = l >= 1 && parts.len() <= l + 1;
        return f(u64::from(shaped), CITE_SHORT_ROW);
    }
    if p == 3 {
        return char3_table(parts).and_then(|v| f(v, CITE_CHAR3));
    }
    if p == 2 {
        return char2_table(parts).and_then(|v| f(v, CITE_CHAR2));
    }
    if parts[0] != pu {
        return None;
    }
    match *parts {
        [_, a] => f(if a < pu { a as u64 } else { pu as u64 - 1 }, CITE_TWO_ROWS),
        [_, a, 1] => {
            let v = if a == pu - 1 {
                (pu * (pu - 1) / 2 + 1) as u64
            } else {
                (a * (a + 1) / 2) as u64
            };
            f(v, CITE_HOOK_ONE)
        }
        [_, a, b] if b == pu => {
            debug_assert_eq!(a, pu);
            f(dim(&[pu, pu - 1]) + dim(&[2 * pu - 3, 1, 1]), CITE_CUBE)
        }
        [_, a, b] => {
            let v = if a <= pu - 2 {
                dim(&[a, b])
            } else if a == pu - 1 {
                dim(&[pu - 1, b]) + dim(&[pu + b - 2, 1])
            } else {
                dim(&[pu, b]) + dim(&[pu + b - 2, 1, 1])
            };
            f(v, CITE_THREE_ROWS)
        }
        _ => None,
    }
}

/// `dim_Q Sp_Q(lambda)^{Sigma_m}`, read off the Littlewood-Richardson
/// sections of `lambda / (m)`.
pub fn char0_invariant_dim(lambda: &Partition, m: usize) -> u128 {
    match SkewShape::new(lambda.clone(), Partition::new(vec![m]).expect("one row")) {
        Ok(shape) => lr_sections(&shape).total_dim(),
        Err(_) => 0,
    }
}

/// How [`Engine::evaluate`] is allowed to obtain a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Closed formula, then an exact recursion, then brute force, then a bound.
    #[default]
    Auto,
    ClosedFormula,
    Branching,
    BruteForce,
    Char0,
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Largest `dim Sp(lambda)` brute force will accept.
    pub cap: u128,
    /// Recompute every closed-formula value by brute force when under the cap.
    pub verify_formulas: bool,
    /// Directory for the persistent brute-force cache.
    pub cache_dir: Option<PathBuf>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            cap: DEFAULT_CAP,
            verify_formulas: false,
            cache_dir: None,
        }
    }
}

impl EngineConfig {
    /// Default settings with the cache directory taken from `SPECHT_CACHE_DIR`.
    pub fn from_env() -> Self {
        EngineConfig {
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
            ..Default::default()
        }
    }
}

type Key = (u32, Partition, usize);

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    p: u32,
    lambda: Partition,
    m: usize,
    dim: u64,
}

/// Evaluates `F_m(lambda)`, memoising brute-force values and recursive
/// bounds. Safe to share between threads.
pub struct Engine {
    config: EngineConfig,
    brute: RwLock<HashMap<Key, u64>>,
    bounds: RwLock<HashMap<Key, Value>>,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Engine {
            config,
            brute: RwLock::default(),
            bounds: RwLock::default(),
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    fn check(lambda: &Partition, p: u32, m: usize) -> Result<Field, InvariantError> {
        if m == 0 || m > lambda.degree() {
            return Err(InvariantError::Range {
                lambda: lambda.clone(),
                m,
            });
        }
        Field::new(p).map_err(|_| InvariantError::NotPrime(p))
    }

    /// Brute-force dimension of the fixed points, subject to the cap.
    pub fn brute_force(&self, lambda: &Partition, p: u32, m: usize) -> Result<u64, InvariantError> {
        let field = Self::check(lambda, p, m)?;
        let key = (p, lambda.clone(), m);
        if let Some(&v) = self.brute.read().expect("memo lock").get(&key) {
            return Ok(v);
        }
        if let Some(v) = self.read_cache(&key) {
            self.brute.write().expect("memo lock").insert(key, v);
            return Ok(v);
        }
        let d = lambda.char0_dim();
        if d > self.config.cap {
            return Err(InvariantError::CapExceeded {
                lambda: lambda.clone(),
                dim: d,
                cap: self.config.cap,
            });
        }
        let v = specht_fixed_dim(lambda, field, m, AveragingOptions::default())? as u64;
        self.write_cache(&key, v);
        self.brute
            .write()
            .expect("memo lock")
            .entry(key)
            .or_insert(v);
        Ok(v)
    }

    fn cache_path(dir: &Path, key: &Key) -> PathBuf {
        let digest = Sha256::digest(format!("{};{};{}", key.0, key.1, key.2).as_bytes());
        let name: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        dir.join(format!("{name}.json"))
    }

    fn read_cache(&self, key: &Key) -> Option<u64> {
        let dir = self.config.cache_dir.as_ref()?;
        let text = std::fs::read_to_string(Self::cache_path(dir, key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.p == key.0 && entry.lambda == key.1 && entry.m == key.2).then_some(entry.dim)
    }

    fn write_cache(&self, key: &Key, dim: u64) {
        let Some(dir) = self.config.cache_dir.as_ref() else {
            return;
        };
        let entry = CacheEntry {
            p: key.0,
            lambda: key.1.clone(),
            m: key.2,
            dim,
        };
        let path = Self::cache_path(dir, key);
        // a failed write only costs a recomputation later
        let _ = std::fs::create_dir_all(dir).and_then(|_| {
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            std::fs::write(&tmp, serde_json::to_vec(&entry).expect("plain data"))?;
            std::fs::rename(&tmp, &path)
        });
    }

    /// Bound from restricting to `Sigma_{n-1}`, recursing on the sections
    /// until a closed formula or the degree `m` applies.
    pub fn branching_bound(
        &self,
        lambda: &Partition,
        p: u32,
        m: usize,
    ) -> Result<Value, InvariantError> {
        Self::check(lambda, p, m)?;
        self.bound(lambda, p, m)
    }

    fn bound(&self, lambda: &Partition, p: u32, m: usize) -> Result<Value, InvariantError> {
        let key = (p, lambda.clone(), m);
        if let Some(&v) = self.bounds.read().expect("memo lock").get(&key) {
            return Ok(v);
        }
        let v = if let Some(f) = closed_formula(lambda, p, m) {
            Value::Exact(f.value)
        } else if lambda.degree() == m {
            Value::Exact(self.brute_force(lambda, p, m)?)
        } else {
            let mut lower = 0u64;
            let mut upper = 0u64;
            for child in branching_sections(lambda) {
                let c = self.bound(&child, p, m)?;
                lower += c.lower();
                upper += c.upper();
            }
            let rational = char0_invariant_dim(lambda, m) as u64;
            let lower = if lambda.removable_residues_distinct(p) {
                lower.max(rational)
            } else {
                rational
            };
            Value::between(lower.min(upper), upper)
        };
        self.bounds
            .write()
            .expect("memo lock")
            .entry(key)
            .or_insert(v);
        Ok(v)
    }

    pub fn evaluate(
        &self,
        lambda: &Partition,
        p: u32,
        m: usize,
        strategy: Strategy,
    ) -> Result<InvariantResult, InvariantError> {
        Self::check(lambda, p, m)?;
        let done = |value, method, citation: &str| {
            Ok(InvariantResult {
                p,
                lambda: lambda.clone(),
                m,
                value,
                method,
                citation: citation.to_string(),
            })
        };
        match strategy {
            Strategy::ClosedFormula => {
                let Some(f) = closed_formula(lambda, p, m) else {
                    return Err(InvariantError::NoFormula {
                        lambda: lambda.clone(),
                        p,
                        m,
                    });
                };
                self.verify(lambda, p, m, f)?;
                done(Value::Exact(f.value), Method::ClosedFormula, f.citation)
            }
            Strategy::Branching => {
                let v = self.bound(lambda, p, m)?;
                match v {
                    Value::Exact(_) => done(v, Method::BranchingExact, CITE_SPLIT),
                    Value::Interval { .. } => done(v, Method::BranchingBound, CITE_BOUND),
                }
            }
            Strategy::BruteForce => done(
                Value::Exact(self.brute_force(lambda, p, m)?),
                Method::BruteForce,
                CITE_BRUTE,
            ),
            Strategy::Char0 => {
                let lower = char0_invariant_dim(lambda, m) as u64;
                done(
                    Value::between(lower, lambda.char0_dim() as u64),
                    Method::Char0Bound,
                    CITE_CHAR0,
                )
            }
            Strategy::Auto => {
                if let Some(f) = closed_formula(lambda, p, m) {
                    self.verify(lambda, p, m, f)?;
                    return done(Value::Exact(f.value), Method::ClosedFormula, f.citation);
                }
                let bound = match self.bound(lambda, p, m) {
                    Ok(v) => Some(v),
                    Err(InvariantError::CapExceeded { .. }) => None,
                    Err(e) => return Err(e),
                };
                if let Some(v @ Value::Exact(_)) = bound {
                    return done(v, Method::BranchingExact, CITE_SPLIT);
                }
                match self.brute_force(lambda, p, m) {
                    Ok(v) => done(Value::Exact(v), Method::BruteForce, CITE_BRUTE),
                    Err(e @ InvariantError::CapExceeded { .. }) => match bound {
                        Some(v) => done(v, Method::BranchingBound, CITE_BOUND),
                        None => Err(e),
                    },
                    Err(e) => Err(e),
                }
            }
        }
    }

    fn verify(
        &self,
        lambda: &Partition,
        p: u32,
        m: usize,
        f: Formula,
    ) -> Result<(), InvariantError> {
        if !self.config.verify_formulas || lambda.char0_dim() > self.config.cap {
            return Ok(());
        }
        let computed = self.brute_force(lambda, p, m)?;
        if computed != f.value {
            return Err(InvariantError::FormulaMismatch {
                lambda: lambda.clone(),
                p,
                formula: f.value,
                computed,
            });
        }
        Ok(())
    }

    /// Evaluates independent requests in parallel, preserving input order.
    pub fn evaluate_all(
        &self,
        requests: &[(Partition, u32, usize)],
        strategy: Strategy,
    ) -> Vec<Result<InvariantResult, InvariantError>> {
        requests
            .par_iter()
            .map(|(l, p, m)| self.evaluate(l, *p, *m, strategy))
            .collect()
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    p: u32,
    lambda: String,
    m: usize,
    value_or_interval: String,
    method: String,
    citation: &'a str,
}

/// Writes results as CSV with columns `p, lambda, m, value_or_interval, method, citation`.
pub fn write_csv<W: Write>(results: &[InvariantResult], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in results {
        w.serialize(CsvRow {
            p: r.p,
            lambda: r.lambda.to_string(),
            m: r.m,
            value_or_interval: r.value.to_string(),
            method: r.method.to_string(),
            citation: &r.citation,
        })?;
    }
    w.flush()?;
    Ok(())
}
