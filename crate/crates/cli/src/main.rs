//! `obstruction`: reproduction commands for the obstruction-design invariants.

mod paper;
mod report;

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use obstruction::design::Diagonal;
use obstruction::latin::{self, Array3, CubeFamily};
use obstruction::run::{CheckpointConfig, SearchOptions};
use obstruction::tensor::{self, TensorSpec};
use obstruction::{kron, valuation, verify, DesignSpec, Error, ObstructionDesign, Partition, TensorDecomposition};

use report::Report;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "OBSTRUCTION_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "obstruction", version, about = "Exact evaluation of obstruction-design invariants and Latin cube censuses")]
#[command(subcommand_required = false, arg_required_else_help = true)]
struct Cli {
    #[command(flatten)]
    global: Global,

    /// Run the reproduction battery and compare against the published values.
    #[arg(long)]
    paper_table: bool,

    /// With --paper-table, skip the two multi-minute rows.
    #[arg(long, requires = "paper_table")]
    quick: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads [default: all cores]
    #[arg(long, global = true, env = WORKERS_ENV, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,

    /// Stop after exploring this many search nodes.
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,

    /// Checkpoint file; an existing file is resumed.
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,

    /// Seconds between checkpoint writes.
    #[arg(long, global = true, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
    checkpoint_interval: u64,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

impl Global {
    fn workers(&self) -> usize {
        match self.workers {
            Some(w) => w as usize,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }

    fn options(&self) -> SearchOptions {
        SearchOptions {
            workers: self.workers(),
            budget_nodes: self.budget_nodes,
            checkpoint: self.checkpoint.as_ref().map(|path| CheckpointConfig {
                path: path.clone(),
                interval: Duration::from_secs(self.checkpoint_interval),
            }),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// F_(l,m,n)(<l,m,n>) with the per-class breakdown.
    EvaluateMmt(Shape),
    /// The canonical class I₀ of <l,m,n> alone.
    ClassSumI0(Shape),
    /// The unit tensor <n²> on the cube B(n,n,n).
    EvaluateUnit {
        n: usize,
        /// Delete the main diagonal and use <n²−1>.
        #[arg(long)]
        deleted_diagonal: bool,
    },
    /// Signed unipotent cube count, by enumeration and by evaluation.
    Unipotent { n: usize },
    /// Signed count of Latin squares (--dim 2) or cubes (--dim 3).
    AlonTarsi {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=3))]
        dim: u8,
        n: usize,
        /// Cubes only: count one cube per symbol relabeling class.
        #[arg(long)]
        by_relabeling: bool,
    },
    /// Counts of Latin cubes by sign and symbol sign.
    LatinCensus {
        n: usize,
        /// Only cubes whose main diagonal holds n².
        #[arg(long)]
        unipotent: bool,
        #[arg(long, conflicts_with = "dump")]
        by_relabeling: bool,
        /// Also write every cube as a JSON line to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Kronecker coefficient of three partitions given as "3,2,1".
    Kron { lambda: String, mu: String, nu: String },
    /// Hyperdeterminant and hyperpermanent of an n×n×n array read as nested JSON.
    Hyperdet {
        /// File with the array, or "-" for stdin.
        input: PathBuf,
    },
    /// Run a seeded property suite ("all" runs every suite).
    Verify { suite: String },
    /// Evaluate an invariant on a tensor read as JSON.
    EvaluateTensor {
        /// Tensor file, or "-" for stdin.
        #[arg(required_unless_present = "vandermonde")]
        input: Option<PathBuf>,
        /// Design as inline JSON or a file path.
        #[arg(long, required_unless_present = "vandermonde")]
        design: Option<String>,
        /// Instead of a file: a Vandermonde tensor for l,m,n with seeded
        /// integer points, evaluated on the matching box.
        #[arg(long, conflicts_with_all = ["input", "design"])]
        vandermonde: Option<String>,
        /// Number of points for --vandermonde.
        #[arg(long, default_value_t = 1, requires = "vandermonde")]
        rank: usize,
    },
}

#[derive(Args, Debug)]
struct Shape {
    l: usize,
    m: usize,
    n: usize,
}

/// Failures mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    Budget(Error, Option<PathBuf>),
    Invalid(String),
    Mismatch(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Budget(..) => 2,
            Failure::Invalid(_) => 3,
            Failure::Mismatch(_) | Failure::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Budget(e, Some(p)) => write!(f, "{e}; progress saved to {}", p.display()),
            Failure::Budget(e, None) => write!(f, "{e}; no checkpoint configured"),
            Failure::Invalid(s) | Failure::Mismatch(s) | Failure::Io(s) => f.write_str(s),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn lift(global: &Global) -> impl Fn(Error) -> Failure + Copy + '_ {
    move |e| match e {
        Error::BudgetExceeded { .. } => Failure::Budget(e, global.checkpoint.clone()),
        other => Failure::Invalid(other.to_string()),
    }
}

fn read_input(path: &Path) -> Outcome<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Outcome<T> {
    serde_json::from_str(text).map_err(|e| Failure::Invalid(format!("bad {what} JSON: {e}")))
}

fn emit<T: Serialize + Report>(global: &Global, value: &T) -> Outcome<()> {
    let text = if global.json {
        serde_json::to_string_pretty(value).expect("reports serialize")
    } else {
        value.text()
    };
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| Failure::Io(e.to_string()))
}

#[derive(Serialize, Deserialize)]
struct UnipotentReport {
    n: usize,
    enumeration: obstruction::SignedCount,
    #[serde(with = "obstruction::serde_big::bigint")]
    enumeration_value: BigInt,
    evaluation: Option<valuation::UnitEvaluation>,
    agree: Option<bool>,
}

#[derive(Serialize, Deserialize)]
struct AlonTarsiReport {
    dim: u8,
    n: usize,
    census: Option<latin::LatinCensus>,
    squares: Option<obstruction::SignedCount>,
    #[serde(with = "obstruction::serde_big::bigint")]
    delta: BigInt,
}

#[derive(Serialize, Deserialize)]
struct KronReport {
    lambda: String,
    mu: String,
    nu: String,
    #[serde(with = "obstruction::serde_big::biguint")]
    coefficient: num_bigint::BigUint,
}

#[derive(Serialize, Deserialize)]
struct HyperdetReport {
    n: usize,
    #[serde(with = "obstruction::serde_big::bigint")]
    det: BigInt,
    #[serde(with = "obstruction::serde_big::bigint")]
    per: BigInt,
}

#[derive(Serialize)]
struct DumpLine<'a> {
    entries: &'a [usize],
    sign: i32,
    symbol_sign: i32,
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Str(String),
}

fn parse_array3(text: &str) -> Outcome<Array3> {
    let nested: Vec<Vec<Vec<Entry>>> = parse_json(text, "array")?;
    let n = nested.len();
    let mut entries = Vec::with_capacity(n * n * n);
    for plane in &nested {
        if plane.len() != n || plane.iter().any(|row| row.len() != n) {
            return Err(Failure::Invalid("array must be n×n×n".into()));
        }
        for e in plane.iter().flatten() {
            entries.push(match e {
                Entry::Int(v) => BigInt::from(*v),
                Entry::Str(s) => s.parse().map_err(|_| Failure::Invalid(format!("bad integer {s:?}")))?,
            });
        }
    }
    Array3::new(n, entries).map_err(|e| Failure::Invalid(e.to_string()))
}

fn run(cli: Cli) -> Outcome<()> {
    let global = &cli.global;
    let opts = global.options();
    let err = lift(global);
    if cli.paper_table {
        return paper::run(global.json, cli.quick, &opts).map_err(|e| match e {
            paper::TableError::Search(e) => err(e),
            paper::TableError::Mismatch(n) => Failure::Mismatch(format!("{n} row(s) differ from the published values")),
        });
    }
    let Some(command) = cli.command else {
        return Err(Failure::Invalid("no command given".into()));
    };
    match command {
        Command::EvaluateMmt(s) => emit(global, &valuation::evaluate_matmul(s.l, s.m, s.n, &opts).map_err(err)?),
        Command::ClassSumI0(s) => emit(global, &valuation::class_sum_i0(s.l, s.m, s.n, &opts).map_err(err)?),
        Command::EvaluateUnit { n, deleted_diagonal } => {
            let r = if deleted_diagonal {
                valuation::evaluate_unit_deleted(&Diagonal::main(n), &opts)
            } else {
                valuation::evaluate_unit(n, &opts)
            };
            emit(global, &r.map_err(err)?)
        }
        Command::Unipotent { n } => {
            let enumeration = latin::unipotent_delta(n, &opts).map_err(&err)?;
            // the evaluation path needs n² − 1 ≥ 1 boxes per slice
            let evaluation = if n >= 2 {
                Some(valuation::evaluate_unit_deleted(&Diagonal::main(n), &opts).map_err(&err)?)
            } else {
                None
            };
            let enumeration_value = enumeration.value();
            emit(
                global,
                &UnipotentReport {
                    n,
                    agree: evaluation.as_ref().map(|e| e.oriented_value == enumeration_value),
                    enumeration,
                    enumeration_value,
                    evaluation,
                },
            )
        }
        Command::AlonTarsi { dim, n, by_relabeling } => {
            let r = if dim == 2 {
                let sq = latin::latin_square_delta(n, global.budget_nodes).map_err(&err)?;
                AlonTarsiReport {
                    dim,
                    n,
                    delta: sq.value(),
                    census: None,
                    squares: Some(sq),
                }
            } else {
                let census = if by_relabeling {
                    latin::latin_census_by_relabeling(n, CubeFamily::All, &opts)
                } else {
                    latin::latin_census(n, CubeFamily::All, &opts)
                }
                .map_err(&err)?;
                AlonTarsiReport {
                    dim,
                    n,
                    delta: census.delta(),
                    census: Some(census),
                    squares: None,
                }
            };
            emit(global, &r)
        }
        Command::LatinCensus { n, unipotent, by_relabeling, dump } => {
            let family = if unipotent { CubeFamily::Unipotent } else { CubeFamily::All };
            if let Some(path) = dump {
                write_dump(&path, n, family, global.budget_nodes).map_err(|f| match f {
                    Failure::Budget(e, _) => Failure::Budget(e, None),
                    other => other,
                })?;
            }
            let census = if by_relabeling {
                latin::latin_census_by_relabeling(n, family, &opts)
            } else {
                latin::latin_census(n, family, &opts)
            };
            emit(global, &census.map_err(err)?)
        }
        Command::Kron { lambda, mu, nu } => {
            let parse = |s: &str| s.parse::<Partition>().map_err(|e| Failure::Invalid(e.to_string()));
            let (a, b, c) = (parse(&lambda)?, parse(&mu)?, parse(&nu)?);
            let coefficient = kron::kronecker_coefficient(&a, &b, &c).map_err(err)?;
            emit(
                global,
                &KronReport {
                    lambda: a.to_string(),
                    mu: b.to_string(),
                    nu: c.to_string(),
                    coefficient,
                },
            )
        }
        Command::Hyperdet { input } => {
            let a = parse_array3(&read_input(&input)?)?;
            emit(
                global,
                &HyperdetReport {
                    n: a.order(),
                    det: latin::hyperdet(&a).map_err(&err)?,
                    per: latin::hyperper(&a).map_err(&err)?,
                },
            )
        }
        Command::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" { verify::SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports = Vec::new();
            for name in names {
                reports.push(verify::run_suite(name, global.seed, &opts).map_err(&err)?);
            }
            let passed = reports.iter().all(|r| r.passed);
            emit(global, &reports)?;
            if passed {
                Ok(())
            } else {
                Err(Failure::Mismatch("property suite failed".into()))
            }
        }
        Command::EvaluateTensor {
            input,
            design,
            vandermonde,
            rank,
        } => {
            let (design, tensor) = match (vandermonde, input, design) {
                (Some(shape), _, _) => vandermonde_case(&shape, rank, global.seed)?,
                (None, Some(input), Some(design)) => {
                    let spec: TensorSpec = parse_json(&read_input(&input)?, "tensor")?;
                    let design_text = if design.trim_start().starts_with('{') {
                        design
                    } else {
                        read_input(Path::new(&design))?
                    };
                    let design: DesignSpec = parse_json(&design_text, "design")?;
                    (design.build().map_err(&err)?, spec.build().map_err(&err)?)
                }
                _ => return Err(Failure::Invalid("a tensor file and --design are required".into())),
            };
            emit(global, &valuation::evaluate_tensor(&design, &tensor, &opts).map_err(err)?)
        }
    }
}

/// Points are integers in `[-9, 9]` drawn from the seed; repeats are allowed.
fn vandermonde_case(shape: &str, rank: usize, seed: u64) -> Outcome<(ObstructionDesign, TensorDecomposition)> {
    let dims: Vec<usize> = shape
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| Failure::Invalid(format!("bad shape {shape:?}"))))
        .collect::<Outcome<_>>()?;
    let [l, m, n] = dims[..] else {
        return Err(Failure::Invalid(format!("shape needs three parts, got {shape:?}")));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<[BigRational; 3]> = (0..rank)
        .map(|_| std::array::from_fn(|_| BigRational::from_integer(rng.gen_range(-9i64..=9).into())))
        .collect();
    let invalid = |e: Error| Failure::Invalid(e.to_string());
    let tensor = tensor::vandermonde_tensor(l, m, n, &points).map_err(invalid)?;
    Ok((valuation::matmul_design(l, m, n).map_err(invalid)?, tensor))
}

fn write_dump(path: &Path, n: usize, family: CubeFamily, budget: Option<u64>) -> Outcome<()> {
    let file = std::fs::File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let mut out = io::BufWriter::new(file);
    let mut io_err = None;
    latin::enumerate_latin_cubes(n, family, budget, |c| {
        if io_err.is_none() {
            let line = DumpLine {
                entries: c.entries(),
                sign: c.sign(),
                symbol_sign: c.symbol_sign(),
            };
            let r = serde_json::to_writer(&mut out, &line)
                .map_err(io::Error::from)
                .and_then(|_| out.write_all(b"\n"));
            io_err = r.err();
        }
    })
    .map_err(|e| match e {
        Error::BudgetExceeded { .. } => Failure::Budget(e, None),
        other => Failure::Invalid(other.to_string()),
    })?;
    if let Some(e) = io_err {
        return Err(Failure::Io(e.to_string()));
    }
    out.flush().map_err(|e| Failure::Io(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion
                | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
