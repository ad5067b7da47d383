mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use normcheck::Error;

use commands::{AssembleArgs, ArchTarget, PadicArgs};
use report::{Report, Status};

#[derive(Parser)]
#[command(name = "normcheck", version, about = "Verification suites for the Miyawaki-lift norm formula")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Omit timings so reports are byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Exact check of the archimedean Gamma-factor identity.
    VerifyArchimedean {
        #[arg(long, requires_all = ["n", "r"], conflicts_with = "grid")]
        k: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
        /// kmax nmax rmax
        #[arg(long, num_args = 3, value_names = ["KMAX", "NMAX", "RMAX"])]
        grid: Option<Vec<i64>>,
    },
    /// Truncated Cartan sum for I(Phi_p, Psi_p) against the local L-value.
    VerifyPadic {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        r: i64,
        /// Satake angle of alpha as a fraction a/N of a full turn.
        #[arg(long, value_parser = commands::parse_angle)]
        alpha_angle: (i64, u64),
        #[arg(long, value_parser = commands::parse_angle)]
        beta_angle: (i64, u64),
        #[arg(long, default_value_t = 60)]
        truncation: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Exact cyclotomic arithmetic instead of 352-bit floating point.
        #[arg(long)]
        exact: bool,
    },
    /// Polynomial identities among the exponents and the constant derivation.
    CheckExponents,
    /// Assemble the numeric part of the conjectural right-hand side.
    Assemble {
        #[arg(long)]
        hecke_f: PathBuf,
        #[arg(long)]
        hecke_g: PathBuf,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        r: i64,
        /// Place set such as "inf,2,3"; repeat for S-independence checks.
        #[arg(long = "set")]
        sets: Vec<String>,
        #[arg(long)]
        truncation: Option<usize>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Also form the partial Euler product of the global L over p <= P (n >= 1 only).
        #[arg(long, value_name = "P")]
        numeric_global: Option<u64>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Domain(_) | Error::NotImplemented(_) => 2,
        Error::Convergence(_) => 3,
        Error::Parse { .. } | Error::Data(_) | Error::Io(_) => 4,
        Error::Pole(_) | Error::NotInvertible(_) => 1,
    }
}

fn run(cli: &Cli) -> normcheck::Result<Report> {
    match &cli.command {
        Command::VerifyArchimedean { k, n, r, grid } => {
            let target = match (k, n, r, grid) {
                (_, _, _, Some(g)) => ArchTarget::Grid { kmax: g[0], nmax: g[1], rmax: g[2] },
                (Some(k), Some(n), Some(r), None) => ArchTarget::Single { k: *k, n: *n, r: *r },
                _ => return Err(Error::Usage("give --k --n --r or --grid KMAX NMAX RMAX".into())),
            };
            commands::verify_archimedean(target)
        }
        Command::VerifyPadic { p, n, r, alpha_angle, beta_angle, truncation, tol, exact } => {
            commands::verify_padic(&PadicArgs {
                p: *p,
                n: *n,
                r: *r,
                alpha: *alpha_angle,
                beta: *beta_angle,
                truncation: *truncation,
                tol: *tol,
                exact: *exact,
            })
        }
        Command::CheckExponents => commands::check_exponents(),
        Command::Assemble { hecke_f, hecke_g, k, n, r, sets, truncation, tol, numeric_global } => {
            commands::assemble(&AssembleArgs {
                hecke_f: hecke_f.clone(),
                hecke_g: hecke_g.clone(),
                k: *k,
                n: *n,
                r: *r,
                sets: sets.clone(),
                truncation: *truncation,
                tol: *tol,
                numeric_global: *numeric_global,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("normcheck: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    report.total_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    if cli.no_timings {
        report.strip_timings();
    }
    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Tsv => report.to_tsv(),
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("normcheck: {}: {e}", path.display());
                return ExitCode::from(4);
            }
        }
        None => print!("{rendered}"),
    }
    if report.status == Status::Fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
