//! Command-line front end: the `check` suite runner and the `compute`
//! calculator.

pub mod operand;
#[cfg(test)]
mod tests;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use hvir_arith::Scalar;
use hvir_core::intermediate::FamilyConfig;
use hvir_core::lab::{registry, run_suite_with, CheckSpec, LabConfig, Status, SuiteReport};
use hvir_core::{basis_lemma21, basis_lemma23, BasisChange, CoreError, LatticeBasis, Lemma23Case, SeriesVector, Virasoro};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hvir", version, about = "Exact checks for Virasoro algebras over lattices and their modules")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run verification checks and write a JSON report.
    Check(CheckArgs),
    /// Exact calculator for brackets, module actions and lattice bases.
    #[command(subcommand)]
    Compute(Compute),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Check ids, comma separated or repeated; "all" runs every check.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    ids: Vec<String>,
    /// Rank for randomized and box checks.
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// Coordinate radius of the exhaustive module box.
    #[arg(long, default_value_t = 3)]
    radius: i64,
    /// Random samples per randomized property.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report path; "-" prints the report instead of the summary.
    #[arg(long, short)]
    output: Option<String>,
    /// Record elapsed milliseconds per check.
    #[arg(long)]
    timings: bool,
    /// List the check ids and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Debug, Subcommand)]
enum Compute {
    /// Bracket of two elements, e.g. "L 1,0" "L 0,1".
    Bracket {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Action of L_μ on x_ν in a module of the intermediate series.
    Act {
        /// Aab, Aprime or Bprime.
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// a′ for Aprime/Bprime; "inf" for the point at infinity.
        #[arg(long = "a-prime", allow_hyphen_values = true)]
        a_prime: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Shifted basis whose non-negative cone lies in the degree ≥ k cone.
    #[command(name = "basis-lemma21")]
    BasisLemma21 {
        #[arg(long)]
        rank: usize,
        #[arg(short, long)]
        k: u32,
    },
    /// Basis adapted to a nonzero vector μ.
    #[command(name = "basis-lemma23")]
    BasisLemma23 {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Sum of coordinates.
    Deg {
        #[arg(allow_hyphen_values = true)]
        mu: String,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Operand(#[from] operand::OperandError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot write `{path}`: {source}")]
    Write { path: String, source: std::io::Error },
}

fn rows(c: &BasisChange) -> String {
    let r: Vec<String> = c
        .rows()
        .iter()
        .map(|row| format!("({})", row.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("rows {}, det={}", r.join(","), c.determinant())
}

fn series(v: &SeriesVector) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter().rev().map(|(k, c)| format!("({c})·x{k}")).collect::<Vec<_>>().join(" + ")
}

fn compute(cmd: &Compute) -> Result<String, CliError> {
    Ok(match cmd {
        Compute::Bracket { x, y } => {
            let (x, y) = (operand::parse_element(x)?, operand::parse_element(y)?);
            let rank = x.terms().keys().chain(y.terms().keys()).map(|v| v.rank()).max().unwrap_or(1);
            Virasoro::new(LatticeBasis::standard(rank)?).bracket(&x, &y)?.to_string()
        }
        Compute::Act { family, a, b, a_prime, mu, nu } => {
            let (mu, nu) = (operand::parse_coords(mu)?, operand::parse_coords(nu)?);
            let basis = LatticeBasis::standard(mu.rank())?;
            basis.check(&nu)?;
            let spec = FamilyConfig {
                family: family.clone(),
                a: a.clone(),
                b: b.clone(),
                a_prime: a_prime.clone(),
            }
            .build(&basis)?;
            let x = SeriesVector::from([(nu, Scalar::one())]);
            series(&spec.act(&basis, &mu, &x)?)
        }
        Compute::BasisLemma21 { rank, k } => rows(&basis_lemma21(*rank, *k)?),
        Compute::BasisLemma23 { mu } => {
            let l = basis_lemma23(&operand::parse_coords(mu)?)?;
            let case = match l.case {
                Lemma23Case::BothLeading => "first two coordinates nonzero".to_string(),
                Lemma23Case::ZeroAt(i) => format!("coordinate {} is zero", i + 1),
            };
            let flips: Vec<String> = l.flips.iter().map(|i| format!("b{}", i + 1)).collect();
            let flips = if flips.is_empty() { "none".to_string() } else { flips.join(",") };
            format!("case: {case}; sign flips: {flips}; {}", rows(&l.change_in_original()))
        }
        Compute::Deg { mu } => operand::parse_coords(mu)?.deg().to_string(),
    })
}

/// 0 when every selected check passes, 1 otherwise.
pub fn exit_code(report: &SuiteReport) -> i32 {
    if report.all_pass() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn summary(report: &SuiteReport) -> String {
    let mut s = String::new();
    for c in &report.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Undecidable => "UNDECIDED",
        };
        s.push_str(&format!("{status:<9} {:<18} {}\n", c.id, c.anchor));
        if let Some(w) = &c.witness {
            s.push_str(&format!("          witness: {w}\n"));
        }
    }
    let m = &report.summary;
    s.push_str(&format!("{} pass, {} fail, {} undecidable\n", m.pass, m.fail, m.undecidable));
    s
}

fn check(args: &CheckArgs, checks: &[CheckSpec], out: &mut dyn Write) -> Result<i32, CliError> {
    if args.list {
        for c in checks {
            let _ = writeln!(out, "{:<18} {}", c.id, c.anchor);
        }
        return Ok(EXIT_PASS);
    }
    let config = LabConfig {
        rank: args.rank,
        radius: args.radius,
        samples: args.samples,
        seed: args.seed,
        timings: args.timings,
    };
    let report = run_suite_with(checks, &config, &args.ids)?;
    let json = report.to_json();
    match args.output.as_deref() {
        Some("-") => {
            let _ = out.write_all(json.as_bytes());
        }
        Some(path) => {
            std::fs::write(path, &json).map_err(|source| CliError::Write { path: path.to_string(), source })?;
            let _ = out.write_all(summary(&report).as_bytes());
        }
        None => {
            let _ = out.write_all(summary(&report).as_bytes());
        }
    }
    Ok(exit_code(&report))
}

/// Runs the command line against an explicit registry and returns the
/// exit status.
pub fn run_with<I, T>(args: I, checks: &[CheckSpec], out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Check(args) => check(args, checks, out),
        Command::Compute(cmd) => compute(cmd).map(|s| {
            let _ = writeln!(out, "{s}");
            EXIT_PASS
        }),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_USAGE
    })
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &registry(), out, err)
}
