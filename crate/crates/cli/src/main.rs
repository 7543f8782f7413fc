use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use specht::gfp::Field;
use specht::homological::{chop, h1_dimension, SimpleCatalog, DEFAULT_BUDGET};
use specht::invariants::{write_csv, Engine, EngineConfig, Strategy, DEFAULT_CAP};
use specht::partition::Partition;
use specht::specht::specht_module;
use specht::tableaux::{branching_sections, lr_sections, SkewShape};
use specht::verify::{run_suite, write_reports_csv, SuiteOptions, VerifyError, SUITE_CAP};

#[derive(Parser)]
#[command(
    name = "specht",
    version,
    about = "Fixed points of Young subgroups on Specht modules over GF(p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the Sigma_m-fixed points of Sp(lambda).
    Invariants(InvariantsArgs),
    /// Runs the claim ledger for one prime.
    VerifyPaper(VerifyArgs),
    /// Dimension of Sp(lambda).
    Dim(ShapeArg),
    /// The p-core of lambda.
    Core(PrimeShape),
    /// p-core classes of the partitions of r.
    Blocks(BlocksArgs),
    /// Littlewood-Richardson sections of a skew shape such as 4,3/2,1.
    Lr(SkewArg),
    /// Restriction sections of Sp(lambda), most dominant first.
    Branch(ShapeArg),
    /// Composition factors of Sp(lambda) over GF(p).
    Chop(ChopArgs),
    /// dim H^1(Sigma_n, Sp(lambda)) over GF(p).
    H1(ModuleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Formula,
    Branching,
    Brute,
    Char0,
}

impl From<MethodArg> for Strategy {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Strategy::Auto,
            MethodArg::Formula => Strategy::ClosedFormula,
            MethodArg::Branching => Strategy::Branching,
            MethodArg::Brute => Strategy::BruteForce,
            MethodArg::Char0 => Strategy::Char0,
        }
    }
}

#[derive(Args)]
struct InvariantsArgs {
    #[arg(short, long)]
    prime: u32,
    #[arg(short, long)]
    lambda: Partition,
    #[arg(short = 'm', long = "subgroup")]
    subgroup: usize,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Largest Specht dimension handled by brute force.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
    /// Print CSV instead of JSON.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long)]
    prime: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = SUITE_CAP)]
    cap: u128,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Print CSV instead of JSON lines.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct ShapeArg {
    #[arg(short, long)]
    lambda: Partition,
}

#[derive(Args)]
struct SkewArg {
    #[arg(short, long)]
    lambda: SkewShape,
}

#[derive(Args)]
struct PrimeShape {
    #[arg(short, long)]
    lambda: Partition,
    #[arg(short, long)]
    prime: u32,
}

#[derive(Args)]
struct BlocksArgs {
    #[arg(short = 'r', long)]
    degree: usize,
    #[arg(short, long)]
    prime: u32,
}

#[derive(Args)]
struct ModuleArgs {
    #[arg(short, long)]
    lambda: Partition,
    #[arg(short, long)]
    prime: u32,
    /// Write the generator matrices of Sp(lambda) to this file.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct ChopArgs {
    #[command(flatten)]
    module: ModuleArgs,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// Bad input that parsed but cannot be used; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn field(p: u32) -> Result<Field> {
    Field::new(p).map_err(|_| Usage(format!("-p/--prime must be a prime, got {p}")).into())
}

fn print_json(v: serde_json::Value) -> Result<ExitCode> {
    println!("{v}");
    Ok(ExitCode::SUCCESS)
}

fn dump_module(path: &PathBuf, lambda: &Partition, f: Field) -> Result<()> {
    let v = specht_module(lambda, f)?;
    let mut out = BufWriter::new(
        File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
    );
    v.dump(&mut out)?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Invariants(a) => {
            field(a.prime)?;
            let engine = Engine::new(EngineConfig {
                cap: a.cap,
                ..EngineConfig::from_env()
            });
            let r = engine.evaluate(&a.lambda, a.prime, a.subgroup, a.method.into())?;
            if a.csv {
                write_csv(std::slice::from_ref(&r), io::stdout().lock())?;
                return Ok(ExitCode::SUCCESS);
            }
            print_json(serde_json::to_value(&r)?)
        }
        Command::VerifyPaper(a) => {
            let opts = SuiteOptions {
                seed: a.seed,
                cap: a.cap,
                jobs: a.jobs,
                budget: DEFAULT_BUDGET,
            };
            let out = run_suite(a.prime, &opts)?;
            let mut stdout = io::stdout().lock();
            if a.csv {
                write_reports_csv(&out.reports, &mut stdout)?;
            } else {
                stdout.write_all(out.to_json_lines().as_bytes())?;
            }
            stdout.flush()?;
            Ok(if out.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Dim(a) => print_json(json!(a.lambda.char0_dim() as u64)),
        Command::Core(a) => {
            field(a.prime)?;
            print_json(json!(a.lambda.core(a.prime).to_string()))
        }
        Command::Blocks(a) => {
            field(a.prime)?;
            let mut classes: BTreeMap<Partition, Vec<Partition>> = BTreeMap::new();
            for lambda in Partition::all(a.degree) {
                classes
                    .entry(lambda.core(a.prime))
                    .or_default()
                    .push(lambda);
            }
            let rows: Vec<_> = classes
                .into_iter()
                .rev()
                .map(|(core, members)| {
                    json!({
                        "core": core.to_string(),
                        "partitions": members.iter().map(Partition::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect();
            print_json(json!(rows))
        }
        Command::Lr(a) => {
            let f = lr_sections(&a.lambda);
            let rows: Vec<_> = f
                .sections
                .iter()
                .map(|(nu, m)| json!({ "partition": nu.to_string(), "mult": m }))
                .collect();
            print_json(json!(rows))
        }
        Command::Branch(a) => {
            let secs: Vec<String> = branching_sections(&a.lambda)
                .iter()
                .map(Partition::to_string)
                .collect();
            print_json(json!(secs))
        }
        Command::Chop(a) => {
            let f = field(a.module.prime)?;
            if let Some(path) = &a.module.dump {
                dump_module(path, &a.module.lambda, f)?;
            }
            let v = specht_module(&a.module.lambda, f)?;
            let mut catalog = SimpleCatalog::new(v.degree(), f)?;
            let cf = chop(&v, &mut catalog, a.seed, DEFAULT_BUDGET)?;
            print_json(serde_json::to_value(&cf)?)
        }
        Command::H1(a) => {
            let f = field(a.prime)?;
            if let Some(path) = &a.dump {
                dump_module(path, &a.lambda, f)?;
            }
            print_json(json!(h1_dimension(&specht_module(&a.lambda, f)?)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<Usage>().is_some()
                || matches!(
                    e.downcast_ref::<VerifyError>(),
                    Some(VerifyError::UnsupportedPrime(_))
                );
            if usage {
                return ExitCode::from(2);
            }
            ExitCode::FAILURE
        }
    }
}
