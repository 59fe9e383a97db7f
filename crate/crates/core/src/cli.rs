//! Command-line surface. Parsing lives here so the commands can be tested
//! without spawning a process; the `kway` binary only maps the outcome to
//! stdout, a file and an exit code.
//!
//! Exit codes: 0 success, 1 internal consistency failure, 2 usage error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::grover::{optimal_query_count, speedup_curve, MAX_GROVER_LOCATIONS};
use crate::polytope::{enumerate_vertices, is_k_way, max_b_over_vertices, MembershipResult};
use crate::quantum::{delta_max, optimal_scheme, PhasePattern};
use crate::report::{format_sig, to_csv, to_json, TableRow, ViolationRow};
use crate::signaling::eval_b;

/// Environment variable capping the worker threads used by scans.
pub const THREADS_ENV: &str = "KWAY_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "kway",
    version,
    about = "k-way signaling bounds and their single-particle quantum violation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Violation δ at one angle, or maximised over the angle.
    Violation {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        angle: OptionalAngle,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Vertex count and largest witness value of the level-k polytope.
    Polytope {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Quantum versus classical winning probability per query count.
    Grover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kmax: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Optimal quantum behaviour, its witness value and an (N−1)-way membership test.
    Witness {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        angle: RequiredAngle,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Largest violation for every N in a range.
    Scan {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
pub struct OptionalAngle {
    /// Oracle phase in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Oracle phase in degrees.
    #[arg(long, allow_hyphen_values = true)]
    pub phi_deg: Option<f64>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct RequiredAngle {
    /// Oracle phase in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Oracle phase in degrees.
    #[arg(long, allow_hyphen_values = true)]
    pub phi_deg: Option<f64>,
}

fn radians(phi: Option<f64>, phi_deg: Option<f64>) -> Option<f64> {
    phi.or(phi_deg.map(f64::to_radians))
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Result of running a command: text to emit and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
    pub out: Option<PathBuf>,
    /// Diagnostic for stderr.
    pub message: Option<String>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

impl Outcome {
    fn ok(output: String, out: Option<PathBuf>) -> Self {
        Outcome {
            output,
            exit_code: EXIT_OK,
            out,
            message: None,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Outcome {
            output: String::new(),
            exit_code: EXIT_USAGE,
            out: None,
            message: Some(message.into()),
        }
    }

    fn inconsistent(output: String, out: Option<PathBuf>, message: impl Into<String>) -> Self {
        Outcome {
            output,
            exit_code: EXIT_INCONSISTENT,
            out,
            message: Some(message.into()),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            Outcome {
                output: if e.use_stderr() {
                    String::new()
                } else {
                    e.to_string()
                },
                exit_code: code,
                out: None,
                message: e.use_stderr().then(|| e.to_string()),
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Violation { n, angle, output } => {
            cmd_violation(*n, radians(angle.phi, angle.phi_deg), output)
        }
        Command::Polytope { n, k, output } => cmd_polytope(*n, *k, output),
        Command::Grover { n, kmax, output } => cmd_grover(*n, *kmax, output),
        Command::Witness { n, angle, output } => match radians(angle.phi, angle.phi_deg) {
            Some(phi) => cmd_witness(*n, phi, output),
            None => Outcome::usage("--phi or --phi-deg is required"),
        },
        Command::Scan {
            n_min,
            n_max,
            output,
        } => cmd_scan(*n_min, *n_max, output),
    }
}

fn emit<R: TableRow>(rows: &[R], output: &OutputArgs) -> Outcome {
    let text = match output.format {
        Format::Csv => to_csv(rows),
        Format::Json => to_json(&rows),
    };
    Outcome::ok(text, output.out.clone())
}

fn usage_from(e: Error) -> Outcome {
    Outcome::usage(e.to_string())
}

pub fn cmd_violation(n: usize, phi: Option<f64>, output: &OutputArgs) -> Outcome {
    if n < 2 {
        return Outcome::usage(format!("--n must be at least 2, got {n}"));
    }
    if phi.is_some_and(|p| !p.is_finite()) {
        return Outcome::usage("--phi must be finite");
    }
    let phi = match phi {
        Some(p) => p,
        None => match delta_max(n) {
            Ok(m) => m.phi,
            Err(e) => return usage_from(e),
        },
    };
    match ViolationRow::compute(n, phi) {
        Ok(row) => emit(&[row], output),
        Err(e) => usage_from(e),
    }
}

#[derive(Debug, Clone, Serialize)]
struct PolytopeReport {
    n: usize,
    k: usize,
    vertices: usize,
    #[serde(rename = "max_B")]
    max_b: f64,
    expected_max_b: f64,
}

impl TableRow for PolytopeReport {
    fn header() -> &'static [&'static str] {
        &["N", "k", "vertices", "max_B", "expected_max_B"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.k.to_string(),
            self.vertices.to_string(),
            format_sig(self.max_b),
            format_sig(self.expected_max_b),
        ]
    }
}

pub fn cmd_polytope(n: usize, k: usize, output: &OutputArgs) -> Outcome {
    let vertices = match enumerate_vertices(n, k) {
        Ok(v) => v.len(),
        Err(e) => return usage_from(e),
    };
    let max_b = match max_b_over_vertices(n, k) {
        Ok(b) => b,
        Err(e) => return usage_from(e),
    };
    let expected = if k < n { n as f64 - 1.0 } else { n as f64 };
    let report = PolytopeReport {
        n,
        k,
        vertices,
        max_b,
        expected_max_b: expected,
    };
    let out = emit(&[report], output);
    if max_b != expected {
        return Outcome::inconsistent(
            out.output,
            out.out,
            format!("max B over level-{k} vertices is {max_b}, expected {expected}"),
        );
    }
    out
}

pub fn cmd_grover(n: usize, kmax: Option<usize>, output: &OutputArgs) -> Outcome {
    if !(2..=MAX_GROVER_LOCATIONS).contains(&n) {
        return Outcome::usage(format!(
            "--n must lie in 2..={MAX_GROVER_LOCATIONS}, got {n}"
        ));
    }
    let kmax = match kmax {
        Some(k) => k,
        None => match optimal_query_count(n) {
            Ok(k) => k.min(n),
            Err(e) => return usage_from(e),
        },
    };
    match speedup_curve(n, kmax) {
        Ok(rows) => emit(&rows, output),
        Err(e) => usage_from(e),
    }
}

/// Largest N the witness command runs the exact LP for.
pub const MAX_WITNESS_LOCATIONS: usize = 3;

#[derive(Debug, Clone, Serialize)]
struct WitnessReport {
    phi: f64,
    #[serde(rename = "B")]
    b_value: f64,
    bound: f64,
    #[serde(flatten)]
    membership: MembershipResult,
}

impl TableRow for WitnessReport {
    fn header() -> &'static [&'static str] {
        &["N", "phi", "B", "bound", "k", "member"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.membership.n.to_string(),
            format_sig(self.phi),
            format_sig(self.b_value),
            format_sig(self.bound),
            self.membership.k.to_string(),
            self.membership.is_member.to_string(),
        ]
    }
}

pub fn cmd_witness(n: usize, phi: f64, output: &OutputArgs) -> Outcome {
    if !(2..=MAX_WITNESS_LOCATIONS).contains(&n) {
        return Outcome::usage(format!(
            "--n must lie in 2..={MAX_WITNESS_LOCATIONS}, got {n}"
        ));
    }
    if !phi.is_finite() {
        return Outcome::usage("--phi must be finite");
    }
    let scheme = match PhasePattern::standard(n, phi).and_then(|p| optimal_scheme(n, &p)) {
        Ok(s) => s,
        Err(e) => return usage_from(e),
    };
    let b_value = eval_b(&scheme.behavior);
    let bound = n as f64 - 1.0;
    let membership = match is_k_way(&scheme.behavior, n - 1) {
        Ok(m) => m,
        Err(e) => return usage_from(e),
    };
    let violated = b_value > bound;
    let member = membership.is_member;
    let report = WitnessReport {
        phi,
        b_value,
        bound,
        membership,
    };
    let out = match output.format {
        Format::Csv => Outcome::ok(to_csv(&[report]), output.out.clone()),
        Format::Json => Outcome::ok(to_json(&report), output.out.clone()),
    };
    if violated && member {
        return Outcome::inconsistent(
            out.output,
            out.out,
            format!(
                "B = {b_value} exceeds {bound} but the behavior was found {}-way",
                n - 1
            ),
        );
    }
    out
}

/// Thread pool honouring [`THREADS_ENV`]; falls back to rayon's default.
fn scan_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
    {
        builder = builder.num_threads(t);
    }
    builder.build().expect("thread pool")
}

pub fn cmd_scan(n_min: usize, n_max: usize, output: &OutputArgs) -> Outcome {
    if n_min < 2 || n_min > n_max {
        return Outcome::usage(format!(
            "need 2 <= --n-min <= --n-max, got {n_min}..={n_max}"
        ));
    }
    let rows: Result<Vec<ViolationRow>, Error> = scan_pool().install(|| {
        (n_min..=n_max)
            .into_par_iter()
            .map(|n| delta_max(n).and_then(|m| ViolationRow::compute(n, m.phi)))
            .collect()
    });
    match rows {
        Ok(rows) => emit(&rows, output),
        Err(e) => usage_from(e),
    }
}
