//! Batch front end for the verification engine. Every subcommand runs one
//! computation or sweep and exits 0 (everything passed), 1 (a verification
//! failed; the witness is in the stream), or 2 (usage or configuration
//! error). Conjecture-level findings are reported in-stream and never
//! change the exit status. Output is deterministic: the same configuration
//! produces byte-identical streams.

mod commands;
mod config;
mod emit;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use emit::Format;

#[derive(Parser)]
#[command(
    name = "padic-zeta",
    version,
    about = "Exact computation and verification for 2-adic zeta linear forms"
)]
struct Cli {
    /// Output format for the report stream.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Key=value configuration file overriding built-in defaults.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Cache directory (falls back to PADIC_ZETA_CACHE_DIR, then
    /// ./.padic-zeta-cache).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// 2-adic zeta values.
    #[command(subcommand)]
    Zeta(ZetaCmd),
    /// Linear-form coefficient tables.
    #[command(subcommand)]
    Forms(FormsCmd),
    /// Verification sweeps.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Irrationality-measure reporting.
    #[command(subcommand)]
    Measure(MeasureCmd),
    /// On-disk cache maintenance.
    #[command(subcommand)]
    Cache(CacheCmd),
}

#[derive(Subcommand)]
enum ZetaCmd {
    /// Evaluate zeta_2(s) at a certified absolute precision.
    Compute {
        /// Integer argument, s >= 2.
        #[arg(long)]
        s: u64,
        /// Certified 2-adic digits.
        #[arg(long)]
        bits: i64,
    },
}

#[derive(Subcommand)]
enum FormsCmd {
    /// Stream the coefficient table row by row.
    Table {
        #[arg(long)]
        n_max: Option<u64>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Double sum, partial fractions, and the recurrence agree.
    Recurrence {
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Determinant of consecutive forms equals its closed form.
    Determinant {
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Telescoping certificate, coefficient and sample modes.
    Telescoping {
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Binomial double sum against the well-poised series expansion.
    DoubleSum {
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Quadruple-sum jets: block identity, cascade, per-term valuations.
    QuadSum {
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Denominator inclusions and the per-prime valuation floor.
    Denominators {
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Measured v_2 of the evaluated forms against the predicted floor.
    ValuationBound {
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Archimedean companion series against the closed evaluation.
    Archimedean {
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Quarter- vs half-shift integral comparison.
    Zeta3Coincidence {
        #[arg(long)]
        n_max: Option<u64>,
    },
}

#[derive(Subcommand)]
enum MeasureCmd {
    /// Assemble the certificate: rates, bound, nonvanishing.
    Report {
        #[arg(long)]
        n_max: Option<u64>,
    },
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Precompute and persist caches.
    Warm {
        /// Highest Bernoulli index to materialize.
        #[arg(long)]
        bernoulli: u64,
    },
}

#[derive(Debug)]
pub enum AppError {
    Usage(String),
    Core(padic_zeta::Error),
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Usage(msg) => write!(f, "{msg}"),
            AppError::Core(err) => write!(f, "{err}"),
        }
    }
}

impl From<padic_zeta::Error> for AppError {
    fn from(err: padic_zeta::Error) -> AppError {
        AppError::Core(err)
    }
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Core(padic_zeta::Error::Verification { .. }) => 1,
            AppError::Core(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<bool, AppError> {
    let config = config::load(cli.config.as_deref()).map_err(AppError::Usage)?;
    let format = cli.format.or(config.format).unwrap_or(Format::Text);
    let cache_dir = config.cache_dir(cli.cache_dir.clone());
    commands::warm_start(&cache_dir)?;

    let range = |key: &str, flag: Option<u64>, default: u64| {
        config.n_max(key, flag, default).map_err(AppError::Usage)
    };
    match cli.command {
        Command::Zeta(ZetaCmd::Compute { s, bits }) => commands::zeta_compute(format, s, bits),
        Command::Forms(FormsCmd::Table { n_max }) => {
            commands::forms_table(format, range("table", n_max, 20)?)
        }
        Command::Verify(check) => match check {
            VerifyCmd::Recurrence { n_max } => {
                commands::verify_recurrence(format, range("recurrence", n_max, 200)?)
            }
            VerifyCmd::Determinant { n_max } => {
                commands::verify_determinant(format, range("determinant", n_max, 100)?)
            }
            VerifyCmd::Telescoping { n_max } => {
                commands::verify_telescoping(format, range("telescoping", n_max, 30)?)
            }
            VerifyCmd::DoubleSum { n_max } => {
                commands::verify_double_sum(format, range("double_sum", n_max, 20)?)
            }
            VerifyCmd::QuadSum { n_max } => {
                commands::verify_quad_sum(format, range("quad_sum", n_max, 12)?)
            }
            VerifyCmd::Denominators { n_max } => {
                commands::verify_denominators(format, range("denominators", n_max, 1000)?)
            }
            VerifyCmd::ValuationBound { n_max } => commands::verify_valuation_bound(
                format,
                range("valuation_bound", n_max, 64)?,
                config.valuation_probes,
            ),
            VerifyCmd::Archimedean { n_max } => commands::verify_archimedean(
                format,
                range("archimedean", n_max, 12)?,
                config.archimedean_tolerance_exponent,
            ),
            VerifyCmd::Zeta3Coincidence { n_max } => {
                commands::verify_zeta3(format, range("zeta3_coincidence", n_max, 20)?)
            }
        },
        Command::Measure(MeasureCmd::Report { n_max }) => {
            commands::measure_report(format, range("measure", n_max, 64)?)
        }
        Command::Cache(CacheCmd::Warm { bernoulli }) => {
            commands::cache_warm(format, &cache_dir, bernoulli)
        }
    }
}
