use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

mod commands;
mod error;
mod selftest;

use error::CliError;

/// Exact local L-factors, base change, Grunwald-Wang characters and semistable
/// reduction certificates.
#[derive(Parser, Debug)]
#[command(name = "ssred", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Local factor(s) and their expansion.
    Lfactor {
        #[arg(required = true)]
        fixtures: Vec<String>,
        #[arg(long)]
        place: Option<String>,
        #[arg(long)]
        ldata: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Base change along the fixture's cyclic extensions.
    Bc {
        fixture: String,
        #[arg(long)]
        ext: Option<String>,
        #[arg(long)]
        ldata: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Twist by a Dirichlet character (`mod N values ...`).
    Twist {
        fixture: String,
        #[arg(long)]
        chi: Option<String>,
        #[arg(long)]
        ldata: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Global character with prescribed local components.
    GwSolve {
        #[arg(long, required = true)]
        at: Vec<String>,
        #[arg(long)]
        order: u32,
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the reduction to the semistable case and emit a certificate.
    Reduce {
        fixture: String,
        #[arg(long, default_value_t = 3)]
        probes: usize,
        #[arg(long)]
        ldata: Option<String>,
        /// Certificate path; without it the certificate goes into the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate.
    Replay {
        certificate: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Descend tables over two or more disjoint cyclic extensions.
    Descend {
        fixture: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fill the single unknown factor of a transfer pair.
    Complete {
        fixture: String,
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        place: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-place comparison of a transfer pair.
    Verify {
        fixture: String,
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariant suite on the embedded fixtures.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cmd: Command) -> Result<(ssred::report::RunReport, Option<PathBuf>), CliError> {
    use commands::*;
    Ok(match cmd {
        Command::Lfactor { fixtures, place, ldata, out } => (lfactor(&fixtures, place.as_deref(), ldata.as_deref())?, out),
        Command::Bc { fixture, ext, ldata, out } => (bc(&fixture, ext.as_deref(), ldata.as_deref())?, out),
        Command::Twist { fixture, chi, ldata, out } => (twist(&fixture, chi.as_deref(), ldata.as_deref())?, out),
        Command::GwSolve { at, order, avoid, out } => (gw_solve(&at, order, &avoid)?, out),
        Command::Reduce { fixture, probes, ldata, out } => (reduce(&fixture, probes, ldata.as_deref(), out.as_deref())?, None),
        Command::Replay { certificate, out } => (replay_cmd(&certificate)?, out),
        Command::Descend { fixture, out } => (descend_cmd(&fixture)?, out),
        Command::Complete { fixture, pair, place, out } => (complete(&fixture, pair.as_deref(), place.as_deref())?, out),
        Command::Verify { fixture, pair, out } => (verify(&fixture, pair.as_deref())?, out),
        Command::Selftest { seed, out } => (selftest::selftest(seed), out),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(cli.command) {
        Ok((mut report, out)) => {
            if let Some(p) = out {
                if let Err(e) = fs::write(&p, report.to_string()) {
                    eprintln!("error[E_IO]: {}: {e}", p.display());
                    return ExitCode::from(1);
                }
            }
            report.timing = Some(start.elapsed());
            // a closed pipe (`| head`) is not an error worth a panic
            let _ = write!(std::io::stdout().lock(), "{report}");
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                let failed = report.assertions.iter().filter(|a| !a.pass).count();
                eprintln!("error[E_ASSERTION]: {failed} assertion(s) failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
