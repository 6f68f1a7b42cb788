use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polyrank::{FieldSpec, Property, DEFAULT_MAX_ORDER};
use polyrank_cli::commands::{self, Outcome};
use polyrank_cli::fuzz::{FuzzConfig, InclusiveRange};
use polyrank_cli::generators::Generator;
use polyrank_cli::{CliError, EXIT_USAGE};

/// Exact rank identities for matrix polynomials over Q and GF(p).
#[derive(Debug, Parser)]
#[command(name = "polyrank", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build and check the rank certificate for (A, f, g).
    Verify {
        #[arg(long, required_unless_present = "cert")]
        matrix: Option<PathBuf>,
        /// Ascending coefficients of f.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "cert")]
        f: Option<String>,
        /// Ascending coefficients of g.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "cert")]
        g: Option<String>,
        /// Write the certificate JSON here.
        #[arg(long)]
        cert_out: Option<PathBuf>,
        /// Re-verify an existing certificate file instead.
        #[arg(long, conflicts_with_all = ["matrix", "f", "g", "cert_out"])]
        cert: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Compare a property with its rank characterizations.
    Classify {
        #[arg(long)]
        matrix: PathBuf,
        /// idempotent, involutive, tripotent, a3a5, charfactors or app5.
        #[arg(long)]
        property: Property,
        /// Semicolon-separated factors of the characteristic polynomial.
        #[arg(long, allow_hyphen_values = true)]
        factors: Option<String>,
    },
    /// Print the minimal polynomial (ascending coefficients).
    Minpoly {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the characteristic polynomial (ascending coefficients).
    Charpoly {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the rank.
    Rank {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the seeded randomized contract suite and print its JSON report.
    Fuzz {
        /// Q or a prime below 2^31.
        #[arg(long)]
        field: FieldSpec,
        #[arg(long, default_value = "1..8")]
        n: InclusiveRange,
        #[arg(long, default_value = "0..6")]
        deg: InclusiveRange,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated subset of generic, idempotent, involutive,
        /// tripotent, nilpotent, companion.
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<Generator>>,
        /// Largest accepted matrix order.
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        /// Worker threads; 0 picks one per core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Accepted for symmetry; the report is always JSON.
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Verify {
            cert: Some(path),
            json,
            ..
        } => commands::cmd_verify_certificate(&path, json),
        Command::Verify {
            matrix,
            f,
            g,
            cert_out,
            json,
            ..
        } => {
            let (Some(matrix), Some(f), Some(g)) = (matrix, f, g) else {
                return Err(CliError::Config(
                    "verify needs --matrix, --f and --g".into(),
                ));
            };
            commands::cmd_verify(&matrix, &f, &g, cert_out.as_deref(), json)
        }
        Command::Classify {
            matrix,
            property,
            factors,
        } => commands::cmd_classify(&matrix, property, factors.as_deref()),
        Command::Minpoly { matrix, json } => commands::cmd_minpoly(&matrix, json),
        Command::Charpoly { matrix, json } => commands::cmd_charpoly(&matrix, json),
        Command::Rank { matrix, json } => commands::cmd_rank(&matrix, json),
        Command::Fuzz {
            field,
            n,
            deg,
            trials,
            seed,
            generators,
            max_order,
            threads,
            json: _,
        } => {
            let mut cfg = FuzzConfig::new(field);
            cfg.n_range = n;
            cfg.deg_range = deg;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.max_order = max_order;
            if let Some(g) = generators {
                cfg.generators = g;
            }
            commands::cmd_fuzz(&cfg, threads)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
