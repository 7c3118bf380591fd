use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cdyb::{Command, Job, Options};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cdyb", version, about = "Exact checks for dynamical Yang-Baxter and reflection equations")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Residuals of the configured equations and perturbation identities.
    Verify(Common),
    /// Fold r along the involution and check the folded equations.
    Fold(Common),
    /// Compare the explicit criterion with twisted symmetry over all admissible triples.
    Classify(Common),
    /// Enumerate generalised Belavin-Drinfeld triples.
    Bd(Common),
    /// Pairwise commutation of Gaudin Hamiltonians.
    Gaudin(Common),
    /// Commutators of the first-order difference operators.
    Operators(Common),
    /// Radial component identities.
    Radial {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        check: String,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Record wall-clock times (reports are then no longer byte-identical).
    #[arg(long)]
    timings: bool,
}

fn load(common: &Common) -> Result<Job, String> {
    let text = std::fs::read_to_string(&common.config).map_err(|e| format!("{}: {e}", common.config.display()))?;
    let mut job = cdyb::load(&text).map_err(|e| format!("{}: config error at {e}", common.config.display()))?;
    if let Some(seed) = common.seed {
        job.seed = seed;
    }
    if common.max_degree.is_some() {
        job.max_degree = common.max_degree;
    }
    if common.out.is_some() {
        job.output = common.out.clone();
    }
    Ok(job)
}

fn write(path: Option<&Path>, json: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, json),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(json.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common, radial) = match &cli.command {
        Sub::Verify(c) => (Command::Verify, c, None),
        Sub::Fold(c) => (Command::Fold, c, None),
        Sub::Classify(c) => (Command::Classify, c, None),
        Sub::Bd(c) => (Command::Bd, c, None),
        Sub::Gaudin(c) => (Command::Gaudin, c, None),
        Sub::Operators(c) => (Command::Operators, c, None),
        Sub::Radial { common, check } => (Command::Radial, common, Some(check.as_str())),
    };
    let mut job = match load(common) {
        Ok(job) => job,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Some(check) = radial {
        job.checks = if check == "all" { Vec::new() } else { vec![check.to_string()] };
    }
    let opts = Options { timings: common.timings, jobs: common.jobs };
    let report = match cdyb::run(&job, command, opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = write(job.output.as_deref(), &report.to_json()) {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
