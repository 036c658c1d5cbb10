use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use foliation_loci_cli::{execute, Cli, THREADS_ENV};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Ok(n) = std::env::var(THREADS_ENV) {
        match n.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: UsageError: {THREADS_ENV} must be a positive integer, got `{n}`");
                return ExitCode::from(1);
            }
        }
    }
    let (cmd, args) = cli.command.split();
    let text = match std::fs::read_to_string(&args.job) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: UsageError: cannot read {}: {e}", args.job.display());
            return ExitCode::from(1);
        }
    };
    let out = execute(cmd, &text, &args.flags());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
