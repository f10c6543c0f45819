mod cache;
mod commands;
mod error;
mod payload;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cache::Cache;
use commands::Context;
use error::{CliError, CliResult};
use payload::{Kind, Payload};
use render::Format;

#[derive(Parser)]
#[command(
    name = "symcover",
    version,
    about = "Normal coverings of symmetric groups: bounds, basic sets and certified minimal covers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Directory for cached results, keyed by a hash of each request.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Worker threads for the cover search.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Lift resource limits and recompute instead of reading the cache.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand)]
enum Command {
    /// One row per degree: g, h, |δ_E|, γ, the γ' upper bound and r.
    Bounds {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        /// Largest degree for which γ is searched and certified.
        #[arg(long, default_value_t = 30)]
        search_limit: u32,
    },
    /// Checks that a set is basic, and special when claimed or requested.
    Verify {
        n: u32,
        /// A set name (deltaC, delta1, delta2, deltaE, prime, primePower,
        /// twoP), a comma-separated list such as `P_1,P_3,S_2≀S_4`, or a
        /// JSON array of components.
        #[arg(long)]
        set: String,
        #[arg(long)]
        special: bool,
        /// Decide shapes the sufficient rules leave open by enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Minimum cover of the types of S_n by a component pool.
    Search {
        n: u32,
        /// `standard`, `standard-half`, `augmented`, or a component list.
        #[arg(long, default_value = "standard")]
        pool: String,
        #[arg(long, value_delimiter = ',')]
        force_in: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        force_out: Vec<String>,
        #[arg(long)]
        max_size: Option<u32>,
        /// Also write the certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certifies γ(S_n) and the absence of P_2 from minimal basic sets, for n = 10 or 14.
    Certify {
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lists the special metacyclic shapes of S_n, with their covers by a set.
    Shapes {
        n: u32,
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        oracle: bool,
    },
    /// Compares g and h over a range, or builds an odd n with h(n) < g(n).
    CompareGh {
        #[arg(long, requires = "to", conflicts_with = "primes")]
        from: Option<u64>,
        #[arg(long, requires = "from")]
        to: Option<u64>,
        /// Two starting primes p1,p2 for the product of consecutive primes.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        primes: Option<Vec<u64>>,
        #[arg(long, default_value_t = 12)]
        max_factors: usize,
    },
    /// Re-validates a certificate written by `search` or `certify`.
    CheckCertificate { file: PathBuf },
}

fn emit(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn write_certificate(path: &PathBuf, payload: &Payload) -> CliResult<()> {
    std::fs::write(path, serde_json::to_string_pretty(&payload.data)? + "\n")?;
    Ok(())
}

fn run(cli: Cli) -> CliResult<bool> {
    let ctx = Context {
        cache: Cache::new(cli.cache_dir, cli.force),
        jobs: cli.jobs,
        force: cli.force,
    };
    let format = cli.format;
    let payload = match cli.command {
        Command::Bounds {
            from,
            to,
            search_limit,
        } => {
            if from < 3 || from > to {
                return Err(CliError::Usage(format!(
                    "invalid degree range {from}..={to}, need 3 <= from <= to"
                )));
            }
            emit(&render::header(Kind::Bounds, format))?;
            for n in from..=to {
                emit(&render::row(
                    &commands::bounds_row(&ctx, n, search_limit)?,
                    format,
                ))?;
            }
            return Ok(true);
        }
        Command::Verify {
            n,
            set,
            special,
            oracle,
        } => commands::verify(&ctx, n, &set, special, oracle)?,
        Command::Search {
            n,
            pool,
            force_in,
            force_out,
            max_size,
            out,
        } => {
            let p = commands::search(&ctx, n, &pool, &force_in, &force_out, max_size)?;
            if let Some(path) = out {
                write_certificate(&path, &p)?;
            }
            p
        }
        Command::Certify { n, out } => {
            let p = commands::certify(&ctx, n)?;
            if let Some(path) = out {
                write_certificate(&path, &p)?;
            }
            p
        }
        Command::Shapes { n, set, oracle } => commands::shapes(&ctx, n, set.as_deref(), oracle)?,
        Command::CompareGh {
            from,
            to,
            primes,
            max_factors,
        } => match (from, to, primes) {
            (Some(from), Some(to), None) => {
                if from < 4 || from > to {
                    return Err(CliError::Usage(format!(
                        "invalid degree range {from}..={to}, need 4 <= from <= to"
                    )));
                }
                let p = commands::compare_range(&ctx, from, to)?;
                emit(&(render::header(Kind::CompareGh, format) + &render::row(&p, format)))?;
                return Ok(true);
            }
            (None, None, Some(primes)) => match primes.as_slice() {
                &[p1, p2] => commands::compare_construction(&ctx, p1, p2, max_factors)?,
                _ => return Err(CliError::Usage("--primes takes exactly two primes".into())),
            },
            _ => {
                return Err(CliError::Usage(
                    "give either --from/--to or --primes".into(),
                ))
            }
        },
        Command::CheckCertificate { file } => commands::check_file(&file)?,
    };
    emit(&render::render(&payload, format))?;
    Ok(payload.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(hint) = e.hint() {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
