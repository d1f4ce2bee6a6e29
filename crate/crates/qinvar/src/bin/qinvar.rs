//! Thin command-line front end over the `qinvar` library.
//!
//! Exit codes: 0 all checks pass, 1 a verification check failed,
//! 2 usage or domain error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qinvar::channels::ChannelKind;
use qinvar::cli;

#[derive(Parser)]
#[command(
    name = "qinvar",
    about = "Qudit invariant information: MUB construction, complementarity sweeps, and verification suites",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify the d+1 mutually unbiased bases for a prime-power d.
    Mub {
        /// Hilbert-space dimension (prime power, at most 32).
        d: usize,
        /// Verification tolerance for overlaps and trace identities.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write every basis entry to this CSV file (basis,row,col,re,im).
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Sweep the d = 3 isotropic family over fidelity and emit CSV.
    IsotropicSweep {
        /// Local dimension; only 3 is supported (the printed tangle).
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Number of fidelity grid points.
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a decoherence channel over the (a, p) unit square and emit CSV.
    DecoherenceSweep {
        /// Channel kind: depolarization | dephasing | dissipation.
        #[arg(long)]
        kind: String,
        /// Grid points per axis.
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        /// Suite name: eq2-eq4 | eq5 | eq6 | eq10 | eq12 | channels |
        /// conjecture9 | gap-example | all.
        #[arg(long)]
        suite: String,
        /// RNG seed (falls back to QINVAR_SEED, then 0).
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn writer_for(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run() -> qinvar::Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Mub { d, tol, dump } => {
            let out = match dump {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(&path)?);
                    let out = cli::cmd_mub(d, tol, Some(&mut file))?;
                    file.flush()?;
                    println!(
                        "dumped {} complex entries to {}",
                        out.dumped_entries.unwrap_or(0),
                        path.display()
                    );
                    out
                }
                None => cli::cmd_mub(d, tol, None)?,
            };
            println!(
                "d = {}: {} bases; max overlap error {:.3e}; max trace-identity error {:.3e}; orthonormality error {:.3e}",
                out.dim,
                out.dim + 1,
                out.report.max_overlap_error,
                out.report.max_trace_identity_error,
                out.report.orthonormality_error
            );
            println!("{}", if out.pass { "PASS" } else { "FAIL" });
            Ok(out.pass)
        }
        Command::IsotropicSweep { d, steps, out } => {
            let mut w = writer_for(&out)?;
            let pass = cli::cmd_isotropic_sweep(d, steps, &mut w)?;
            w.flush()?;
            Ok(pass)
        }
        Command::DecoherenceSweep { kind, steps, out } => {
            let kind: ChannelKind = kind.parse()?;
            let mut w = writer_for(&out)?;
            let pass = cli::cmd_decoherence_sweep(kind, steps, &mut w)?;
            w.flush()?;
            Ok(pass)
        }
        Command::Verify { suite, seed } => {
            let seed = cli::resolve_seed(seed);
            let report = cli::cmd_verify(&suite, seed)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable report")
            );
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
