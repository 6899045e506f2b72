//! Command-line front end. `main` only forwards to [`run`].
//!
//! Exit codes: 0 success, 1 infeasible instance or failed verification,
//! 2 unreadable or malformed input, 3 internal invariant violation,
//! 4 disagreement found by `compare`.

pub mod bench;
pub mod compare;
pub mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::circular_cover::{min_circular_point_cover, CoverError, CoverProblem};
use crate::instance::{
    generate, parse_instance, parse_solution, serialize_instance, serialize_solution,
    verify_hitting_set, HittingSet, Instance, Status, Verdict,
};
use crate::preprocess::{feasibility_check, Feasibility};
use crate::solver::{solve, solve_baseline, solve_brute_force, SolveError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "planehit",
    version,
    about = "Minimum hitting sets of half-planes by points"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance file and print the solution JSON.
    Solve(SolveArgs),
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Check a solution file against an instance file.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Minimum cover of a circle by intervals, from the text format.
    Cover { input: PathBuf },
    /// Cross-check the solver tiers on seeded random instances.
    Compare(compare::CompareArgs),
    /// Time the solver on growing instances.
    Bench(bench::BenchArgs),
    /// Draw the circle, its positions and the reduced arcs as SVG.
    Diagram {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub input: PathBuf,
    /// Cover with every maximal arc instead of the reduced family.
    #[arg(long, conflicts_with = "brute")]
    pub baseline: bool,
    /// Enumerate point subsets directly.
    #[arg(long)]
    pub brute: bool,
    /// Largest subset size tried by `--brute`.
    #[arg(long, default_value_t = 14)]
    pub max_k: usize,
    /// Also draw the instance and the chosen points.
    #[arg(long)]
    pub emit_svg: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub points: usize,
    #[arg(long)]
    pub halfplanes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub ensure_feasible: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn parse(path: &Path, e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::InternalInvariant(_) => EXIT_INTERNAL,
            SolveError::LimitExceeded(_) => EXIT_INFEASIBLE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::parse(path, e))
}

pub fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::parse(path, e))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure {
        code: EXIT_PARSE,
        message: e.to_string(),
    };
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(io),
        None => writeln!(out, "{text}").map_err(io),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Solve(args) => cmd_solve(&args, out),
        Command::Gen(args) => {
            let inst = generate(
                args.points.max(1),
                args.halfplanes.max(1),
                args.seed,
                args.ensure_feasible,
            );
            emit(out, args.output.as_deref(), &serialize_instance(&inst))?;
            Ok(EXIT_OK)
        }
        Command::Verify { instance, solution } => cmd_verify(&instance, &solution, out),
        Command::Cover { input } => cmd_cover(&input, out),
        Command::Compare(args) => compare::cmd_compare(&args, out, err),
        Command::Bench(args) => bench::cmd_bench(&args, out, err),
        Command::Diagram { input, output } => {
            let inst = load_instance(&input)?;
            match svg::diagram(&inst)? {
                svg::Diagram::Svg(text) => {
                    fs::write(&output, text).map_err(|e| Failure::parse(&output, e))?;
                    Ok(EXIT_OK)
                }
                svg::Diagram::Infeasible => {
                    let _ = writeln!(err, "infeasible instance, nothing to draw");
                    Ok(EXIT_INFEASIBLE)
                }
                svg::Diagram::Trivial(i) => {
                    let _ = writeln!(out, "trivial: point {i} hits all");
                    Ok(EXIT_OK)
                }
            }
        }
    }
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let inst = load_instance(&args.input)?;
    let set = if args.brute {
        solve_brute_force(&inst, args.max_k)?
    } else if args.baseline {
        solve_baseline(&inst)?
    } else {
        solve(&inst)?
    };
    emit(out, args.output.as_deref(), &serialize_solution(&set))?;
    if let Some(path) = &args.emit_svg {
        fs::write(path, svg::instance_svg(&inst, &set.point_ids))
            .map_err(|e| Failure::parse(path, e))?;
    }
    Ok(if set.is_optimal() {
        EXIT_OK
    } else {
        EXIT_INFEASIBLE
    })
}

fn cmd_verify(instance: &Path, solution: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let inst = load_instance(instance)?;
    let sol: HittingSet =
        parse_solution(&read(solution)?).map_err(|e| Failure::parse(solution, e))?;
    let (json, code) = match sol.status {
        Status::Optimal => match verify_hitting_set(&inst, &sol.point_ids)
            .map_err(|e| Failure::parse(solution, e))?
        {
            Verdict::Ok => (r#"{"verdict":"ok"}"#.to_string(), EXIT_OK),
            Verdict::FirstViolation(h) => (
                format!(r#"{{"verdict":"violation","halfplane":{h}}}"#),
                EXIT_INFEASIBLE,
            ),
        },
        Status::Infeasible => match feasibility_check(inst.points(), inst.halfplanes()) {
            Feasibility::Infeasible(_) => (r#"{"verdict":"ok"}"#.to_string(), EXIT_OK),
            Feasibility::Ok => (r#"{"verdict":"feasible"}"#.to_string(), EXIT_INFEASIBLE),
        },
    };
    emit(out, None, &json)?;
    Ok(code)
}

fn cmd_cover(input: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let prob = CoverProblem::from_text(&read(input)?).map_err(|e| Failure::parse(input, e))?;
    match min_circular_point_cover(&prob) {
        Ok(sol) => {
            let ids: Vec<String> = sol
                .interval_ids
                .iter()
                .map(|i| (i + 1).to_string())
                .collect();
            emit(out, None, &format!("{}\n{}", sol.size(), ids.join(" ")))?;
            Ok(EXIT_OK)
        }
        Err(CoverError::Uncoverable(q)) => Err(Failure {
            code: EXIT_INFEASIBLE,
            message: format!("position {} lies in no interval", q + 1),
        }),
        Err(e) => Err(Failure::parse(input, e)),
    }
}
