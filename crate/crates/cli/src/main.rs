use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mss_cli::bench::{self, BenchConfig, Phase};
use mss_cli::commands::{self, DealArgs, Method, RecoverArgs};
use mss_cli::CliError;
use mss_core::scheme::Variant;
use mss_core::{FieldPrime, MERSENNE_61};

#[derive(Parser)]
#[command(name = "mss", version, about = "Verifiable multi-stage secret sharing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run setup and construction; write the bulletin and share files.
    Deal {
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated thresholds, one per secret (or one value for all k).
        #[arg(long, value_delimiter = ',', required = true)]
        thresholds: Vec<usize>,
        #[arg(long, default_value_t = MERSENNE_61)]
        q: u64,
        #[arg(long, env = "MSS_SEED")]
        seed: Option<u64>,
        /// Dealer secrets file; random secrets are drawn when absent.
        #[arg(long)]
        secrets: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Check one share against its published commitment.
    VerifyShare {
        #[arg(long)]
        bulletin: PathBuf,
        #[arg(long)]
        share: PathBuf,
    },
    /// Recover one secret from share files.
    Recover {
        #[arg(long)]
        bulletin: PathBuf,
        #[arg(long = "share", required = true, num_args = 1..)]
        shares: Vec<PathBuf>,
        #[arg(long)]
        secret: usize,
        #[arg(long, value_enum, default_value_t = Method::Vandermonde)]
        method: Method,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Check a recovered secret against its published hash.
    VerifySecret {
        #[arg(long)]
        bulletin: PathBuf,
        #[arg(long)]
        secret: usize,
        /// A recovered_<i>.json file.
        #[arg(long)]
        candidate: PathBuf,
    },
    /// Public-value counts of the compared schemes.
    Counts {
        #[arg(long, required_unless_present = "figure1")]
        t: Option<u64>,
        #[arg(long, required_unless_present = "figure1")]
        k: Option<u64>,
        #[arg(long, required_unless_present = "figure1")]
        n: Option<u64>,
        /// Emit CSV rows for the five reference tuples.
        #[arg(long, conflicts_with_all = ["t", "k", "n"])]
        figure1: bool,
    },
    /// Time each phase over a range of thresholds; CSV on stdout.
    Bench {
        #[arg(long, value_parser = parse_variant, default_value = "s1")]
        variant: Variant,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// `lo..hi` (inclusive) or `a,b,c`.
        #[arg(long, default_value = "2,4,8,16,32")]
        t_range: String,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        #[arg(long, default_value_t = MERSENNE_61)]
        q: u64,
        #[arg(long, env = "MSS_SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: mss_core::Error| e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Deal {
            variant,
            n,
            k,
            thresholds,
            q,
            seed,
            secrets,
            out: dir,
        } => commands::deal(
            &DealArgs {
                variant,
                n,
                k,
                thresholds,
                q,
                seed,
                secrets,
                out: dir,
            },
            &mut out,
        ),
        Command::VerifyShare { bulletin, share } => commands::verify_share(&bulletin, &share, &mut out),
        Command::Recover {
            bulletin,
            shares,
            secret,
            method,
            out: dir,
        } => commands::recover(
            &RecoverArgs {
                bulletin,
                shares,
                secret,
                method,
                out: dir,
            },
            &mut out,
        )
        .map(|_| ()),
        Command::VerifySecret {
            bulletin,
            secret,
            candidate,
        } => commands::verify_secret(&bulletin, secret, &candidate, &mut out),
        Command::Counts { t, k, n, figure1 } => {
            if figure1 {
                commands::figure1(&mut out)
            } else {
                commands::counts(t.unwrap_or(0), k.unwrap_or(0), n.unwrap_or(0), &mut out)
            }
        }
        Command::Bench {
            variant,
            n,
            k,
            t_range,
            trials,
            q,
            seed,
        } => {
            let cfg = BenchConfig {
                variant,
                n,
                k,
                thresholds: bench::parse_t_range(&t_range)?,
                trials,
                q: FieldPrime::new(q)?,
                seed,
            };
            let rows = bench::run(&cfg)?;
            let write_err = |source| CliError::Io {
                path: "<stdout>".into(),
                source,
            };
            writeln!(out, "{}", bench::CSV_HEADER).map_err(write_err)?;
            for row in &rows {
                writeln!(out, "{}", row.csv()).map_err(write_err)?;
            }
            for &t in &cfg.thresholds {
                let way1 = bench::median_for(&rows, t, Phase::RecoveryVandermonde);
                let way2 = bench::median_for(&rows, t, Phase::RecoveryBackward);
                if let (Some(w1), Some(w2)) = (way1, way2) {
                    let verdict = if w2 < w1 { "holds" } else { "does not hold" };
                    eprintln!("t={t}: backward {w2} ns vs vandermonde {w1} ns, ordering {verdict}");
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
