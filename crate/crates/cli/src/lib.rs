//! Command-line driver for the foliation-loci library.

pub mod commands;
pub mod job;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{run, CliError, Command, Flags};
pub use job::{JobError, JobFile};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "FOLIATION_LOCI_THREADS";

#[derive(Parser, Debug)]
#[command(name = "foliation-loci", version, about = "Exact loci of foliations and Gauss-Manin data of hyperelliptic families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Args, Debug, Clone)]
pub struct JobArgs {
    /// Job file
    pub job: PathBuf,
    #[arg(long)]
    pub k: Option<String>,
    /// Integer or `heuristic`
    #[arg(long)]
    pub mu: Option<String>,
    #[arg(long = "subset-cap")]
    pub subset_cap: Option<String>,
    /// Rational base point, e.g. `3/7`
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Requested decimal digits
    #[arg(long)]
    pub prec: Option<String>,
    /// Truncation order for series output
    #[arg(long)]
    pub order: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// Validate a foliation (commutation, tangency, independence)
    CheckFoliation(JobArgs),
    /// Multiplicity operators of one order
    MultOps(JobArgs),
    /// Equations for the locus where leaves meet V in dimension at least k
    Sigma(JobArgs),
    /// Sigma with parameter variables carried along the leaves
    ALocus(JobArgs),
    /// Gauss-Manin connection of a hyperelliptic family
    GaussManin(JobArgs),
    /// Picard-Fuchs operator of one form
    PicardFuchs(JobArgs),
    /// Residue pairing matrix
    Pairing(JobArgs),
    /// Symplectic normalization of the connection
    Normalize(JobArgs),
    /// Numeric period matrix at a base point
    Periods(JobArgs),
}

impl Sub {
    pub fn split(&self) -> (Command, &JobArgs) {
        match self {
            Sub::CheckFoliation(a) => (Command::CheckFoliation, a),
            Sub::MultOps(a) => (Command::MultOps, a),
            Sub::Sigma(a) => (Command::Sigma, a),
            Sub::ALocus(a) => (Command::ALocus, a),
            Sub::GaussManin(a) => (Command::GaussManin, a),
            Sub::PicardFuchs(a) => (Command::PicardFuchs, a),
            Sub::Pairing(a) => (Command::Pairing, a),
            Sub::Normalize(a) => (Command::Normalize, a),
            Sub::Periods(a) => (Command::Periods, a),
        }
    }
}

impl JobArgs {
    pub fn flags(&self) -> Flags {
        Flags {
            k: self.k.clone(),
            mu: self.mu.clone(),
            subset_cap: self.subset_cap.clone(),
            lambda: self.lambda.clone(),
            prec: self.prec.clone(),
            order: self.order.clone(),
        }
    }
}

/// Result of one invocation: what goes to stdout and stderr, and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs a subcommand on job text.
pub fn execute(cmd: Command, text: &str, flags: &Flags) -> Outcome {
    let result = JobFile::parse(text)
        .map_err(CliError::from)
        .and_then(|job| run(cmd, &job, flags));
    match result {
        Ok(v) => Outcome {
            stdout: pretty(&v),
            stderr: String::new(),
            code: 0,
        },
        Err(e) => {
            let v = serde_json::json!({
                "command": cmd.name(),
                "error": e.name(),
                "message": e.to_string(),
            });
            Outcome {
                stdout: pretty(&v),
                stderr: format!("error: {}: {}\n", e.name(), e),
                code: e.exit_code(),
            }
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
