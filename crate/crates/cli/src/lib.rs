//! The `exactify` command line: every pipeline of `exactify-core` as a
//! subcommand, composed through JSON files and JSON-lines streams.

mod docs;
mod error;
mod solve;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use exactify_core::kernelize::{length_guard, KernelHeader};
use exactify_core::model::validate_instance;
use exactify_core::solvers::{Limits, SumSetCache};
use exactify_core::{
    brute_force_ranged, compress_weights, evaluate_kernel_output, gen_instance, kernelize, knapsack_to_subsetsum,
    maximize_knapsack, shrink, Epsilon, FamilyKind, FamilyOracle, GeneratorSpec, InstanceDoc, ProblemKind,
    RangedInstance, Solver, SubsetSumInstance,
};

pub use docs::{read_kernel, read_subset_sums, CompressedDoc, KernelItemDoc, PairDoc, ShrinkDoc};
pub use error::{CliError, CliResult, EXIT_GUARD, EXIT_NO, EXIT_OK, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(name = "exactify", version, about = "Ranged-to-exact reductions for weighted subset problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolverArg {
    Brute,
    Dp,
    Mitm,
    Auto,
}

impl From<SolverArg> for Solver {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Brute => Solver::Brute,
            SolverArg::Dp => Solver::Dp,
            SolverArg::Mitm => Solver::Mitm,
            SolverArg::Auto => Solver::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleArg {
    Subsets,
    Vc,
    Ds,
    Ham,
}

impl From<OracleArg> for FamilyKind {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Subsets => FamilyKind::AllSubsets,
            OracleArg::Vc => FamilyKind::VertexCover,
            OracleArg::Ds => FamilyKind::DominatingSet,
            OracleArg::Ham => FamilyKind::HamiltonianCycle,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Ranged,
    Subsetsum,
    Knapsack,
    Vertexcover,
    Dominatingset,
    Tsp,
}

impl From<KindArg> for ProblemKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Ranged => ProblemKind::Ranged,
            KindArg::Subsetsum => ProblemKind::SubsetSum,
            KindArg::Knapsack => ProblemKind::Knapsack,
            KindArg::Vertexcover => ProblemKind::VertexCover,
            KindArg::Dominatingset => ProblemKind::DominatingSet,
            KindArg::Tsp => ProblemKind::Tsp,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cover the range of an instance with exact (weights, target) pairs.
    Shrink {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include the recursion trace.
        #[arg(long)]
        trace: bool,
    },
    /// Reduce a Knapsack instance to Subset Sum instances (JSON lines).
    Reduce {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum Knapsack profit by binary search over reductions.
    Maximize {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        solver: SolverArg,
    },
    /// Compress an exact pair modulo a random prime.
    Compress {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Decide a stream of Subset Sum instances.
    Solve {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        solver: SolverArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Decide every instance and write the verdicts as a JSON array of booleans.
        #[arg(long)]
        answers: Option<PathBuf>,
    },
    /// Enumerate the members of a family whose weight lies in [l, u].
    Verify {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Defaults to the family of the instance kind.
        #[arg(long, value_enum)]
        oracle: Option<OracleArg>,
        #[arg(long)]
        l: Option<String>,
        #[arg(long)]
        u: Option<String>,
        /// Print only the number of witnesses.
        #[arg(long)]
        count: bool,
    },
    /// Shrink and compress an instance into small-weight exact instances.
    Kernelize {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        oracle: Option<OracleArg>,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        seed: u64,
        /// Skip the `bitlen(N) ≤ 2^n` precondition.
        #[arg(long)]
        allow_long_weights: bool,
    },
    /// OR-combine the answers to a kernel's instances.
    KernelDecide {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        answers: PathBuf,
    },
    /// Generate a planted-Yes instance.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 32)]
        weight_bits: u64,
        #[arg(long)]
        duplicate_fraction: Option<f64>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `argv` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn read_input(path: Option<&Path>) -> CliResult<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            Ok(s)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn read_instance(path: Option<&Path>) -> CliResult<RangedInstance> {
    let doc = InstanceDoc::from_json(&read_input(path)?)?;
    Ok(validate_instance(&doc)?)
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("documents always serialize");
    s.push('\n');
    s
}

fn default_family(kind: ProblemKind) -> FamilyKind {
    match kind {
        ProblemKind::VertexCover => FamilyKind::VertexCover,
        ProblemKind::DominatingSet => FamilyKind::DominatingSet,
        ProblemKind::Tsp => FamilyKind::HamiltonianCycle,
        ProblemKind::Ranged | ProblemKind::SubsetSum | ProblemKind::Knapsack => FamilyKind::AllSubsets,
    }
}

fn dispatch(command: Command) -> CliResult<i32> {
    match command {
        Command::Shrink { input, out, trace } => {
            let inst = read_instance(input.as_deref())?;
            let pairs = shrink(inst.omega(), inst.l(), inst.u());
            write_output(out.as_deref(), &json_line(&ShrinkDoc::new(&pairs, trace)))?;
            Ok(EXIT_OK)
        }
        Command::Reduce { input, out } => {
            let inst = read_instance(input.as_deref())?;
            let reduction = knapsack_to_subsetsum(&inst)?;
            let mut text = String::new();
            for sub in reduction.instances() {
                let doc = InstanceDoc::from(&RangedInstance::subset_sum((*sub.alpha).clone(), sub.target)?);
                text.push_str(&json_line(&doc));
            }
            write_output(out.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Maximize { input, out, solver } => {
            let inst = read_instance(input.as_deref())?;
            let solver = Solver::from(solver);
            let mut cache = SumSetCache::new();
            let memo = matches!(solver, Solver::Auto) && 2 * inst.n() <= Limits::default().memo_max_n;
            let best = maximize_knapsack(&inst, |s| {
                if memo {
                    if cache.len() > 4096 {
                        cache.clear();
                    }
                    cache.decide(s)
                } else {
                    Ok(solver.solve(s)?.satisfiable)
                }
            })?;
            write_output(out.as_deref(), &json_line(&serde_json::json!({ "optimum": best.to_string() })))?;
            Ok(EXIT_OK)
        }
        Command::Compress { input, out, eps, seed } => {
            let eps = Epsilon::new(eps)?;
            let pair = read_pair(&read_input(input.as_deref())?)?;
            let c = compress_weights(&pair.alpha, &pair.target, eps, seed)?;
            write_output(out.as_deref(), &json_line(&CompressedDoc::from(&c)))?;
            Ok(EXIT_OK)
        }
        Command::Solve {
            input,
            out,
            solver,
            jobs,
            answers,
        } => {
            let instances = read_subset_sums(&read_input(input.as_deref())?)?;
            let report = solve::solve_stream(&instances, solver.into(), jobs.max(1), answers.is_some());
            write_output(out.as_deref(), &report.render())?;
            if let Some(path) = answers {
                let verdicts = report.answers()?;
                write_output(Some(&path), &json_line(&verdicts))?;
            }
            report.exit_code()
        }
        Command::Verify {
            input,
            out,
            oracle,
            l,
            u,
            count,
        } => {
            let inst = read_instance(input.as_deref())?;
            let family = oracle.map_or_else(|| default_family(inst.kind()), FamilyKind::from);
            let oracle = FamilyOracle::new(family, inst.n(), inst.graph().cloned())?;
            let parse = |field, v: Option<String>, default: &exactify_core::Natural| match v {
                Some(s) => exactify_core::model::parse_natural(field, &s),
                None => Ok(default.clone()),
            };
            let l = parse("l", l, inst.l())?;
            let u = parse("u", u, inst.u())?;
            let witnesses = brute_force_ranged(&oracle, inst.omega(), &l, &u)?;
            let text = if count {
                json_line(&serde_json::json!({ "count": witnesses.len() }))
            } else {
                witnesses.iter().map(|&x| json_line(&docs::subset_json(x))).collect()
            };
            write_output(out.as_deref(), &text)?;
            Ok(if witnesses.is_empty() { EXIT_NO } else { EXIT_OK })
        }
        Command::Kernelize {
            input,
            out,
            oracle,
            eps,
            seed,
            allow_long_weights,
        } => {
            let eps = Epsilon::new(eps)?;
            let inst = read_instance(input.as_deref())?;
            if !allow_long_weights {
                length_guard(&inst)?;
            }
            let family = oracle.map_or_else(|| default_family(inst.kind()), FamilyKind::from);
            let kernel = kernelize(&inst, family, eps, seed)?;
            let mut text = json_line(&KernelHeader::from(&kernel));
            for item in &kernel.items {
                text.push_str(&json_line(&KernelItemDoc::from(item)));
            }
            write_output(out.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::KernelDecide { input, answers } => {
            let kernel = read_kernel(&read_input(input.as_deref())?)?;
            let answers: Vec<bool> = serde_json::from_str(&read_input(Some(&answers))?)
                .map_err(|e| CliError::Input(format!("answers: {e}")))?;
            let yes = evaluate_kernel_output(kernel.items.len(), &answers)?;
            write_output(None, if yes { "yes\n" } else { "no\n" })?;
            Ok(if yes { EXIT_OK } else { EXIT_NO })
        }
        Command::Gen {
            kind,
            n,
            weight_bits,
            duplicate_fraction,
            seed,
            out,
        } => {
            let spec = GeneratorSpec {
                n,
                weight_bits,
                kind: kind.into(),
                duplicate_fraction,
                seed,
            };
            let doc = gen_instance(&spec)?;
            write_output(out.as_deref(), &json_line(&doc))?;
            Ok(EXIT_OK)
        }
    }
}

/// An exact pair document, or an instance document with `l = u`.
fn read_pair(text: &str) -> CliResult<SubsetSumInstance> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(exactify_core::Error::from)?;
    if value.get("kind").is_some() {
        let doc: InstanceDoc = serde_json::from_value(value).map_err(exactify_core::Error::from)?;
        Ok(validate_instance(&doc)?.to_subset_sum()?)
    } else {
        let pair: PairDoc = serde_json::from_value(value).map_err(exactify_core::Error::from)?;
        Ok(pair.parse()?)
    }
}
