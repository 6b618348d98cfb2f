mod bench;
mod spec;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mzv_core::{
    run_suite, write_reports, Format, IdentityId, MzvError, Precision, RealCache, RealEvaluator, RealField, Summary,
    DEFAULT_Z_MAX,
};

use crate::spec::Expr;

#[derive(Parser, Debug)]
#[command(name = "mzv", version, about = "Multiple zeta values, weighted sums and identity checks")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Working precision in decimal digits (at least 30).
    #[arg(long, global = true, default_value_t = 40)]
    precision: u32,

    /// Largest weight enumerated by `verify` and `bench`.
    #[arg(long, global = true, default_value_t = 9, value_parser = clap::value_parser!(u32).range(5..=14))]
    weight_cap: u32,

    /// Random (x, y, z) draws per identity and weight.
    #[arg(long, global = true, default_value_t = 2)]
    samples: usize,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Bound on |z| for polylogarithms, in (0, 1).
    #[arg(long, global = true, default_value_t = DEFAULT_Z_MAX)]
    zmax: f64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Cache file; defaults to $XDG_CACHE_HOME/mzv/zeta-values.tsv.
    #[arg(long, global = true, env = "MZV_CACHE")]
    cache: Option<PathBuf>,

    /// Comma-separated identity ids, or `all`.
    #[arg(long, global = true, default_value = "all")]
    ids: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Table => Format::Table,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one quantity, e.g. `zeta 2,1`, `li 1,1 @ 0.5`, `S 7 3 x=1 y=2`,
    /// `Z 4 2 1`, `Sdq 7 3 p=0 q=1 x=2 y=1`, `T 5 x=1 y=2`, `Shat 4 2 x=1 y=1 z=1/2`.
    Eval {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Check identities and print one record per instance.
    Verify,
    /// Time the convolution algorithm against truncated nested sums.
    Bench {
        /// Truncation point M for the nested sums.
        #[arg(long, default_value_t = 100_000)]
        cutoff: u64,
    },
    /// Inspect or move the on-disk value cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Entry count and lookup hit ratio.
    Stats,
    /// Remove every entry.
    Clear,
    /// Copy the cache to PATH.
    Export { path: PathBuf },
    /// Merge records from PATH; malformed lines are skipped.
    Import { path: PathBuf },
}

/// Failure of the command as a whole, mapped onto the exit-code contract.
enum Failure {
    Identities,
    Usage(String),
    Domain(String),
    Io(String),
}

impl From<MzvError> for Failure {
    fn from(e: MzvError) -> Self {
        match e {
            MzvError::Parse(_) | MzvError::InvalidIndex(_) | MzvError::PrecisionTooLow { .. } => {
                Failure::Usage(e.to_string())
            }
            MzvError::Io(_) => Failure::Io(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn default_cache_path() -> PathBuf {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .unwrap_or_else(|| PathBuf::from("."));
    base.join("mzv").join("zeta-values.tsv")
}

struct Session {
    ev: RealEvaluator,
    path: PathBuf,
}

impl Session {
    fn open(config: &RunConfig) -> Result<Self, Failure> {
        let prec = Precision::new(config.precision)?;
        let path = config.cache.clone().unwrap_or_else(default_cache_path);
        let cache = Arc::new(RealCache::new());
        if path.exists() {
            let summary = cache.import(&path)?;
            log::debug!("loaded {} cached values from {}", summary.loaded, path.display());
        }
        let ev = RealEvaluator::with_cache(prec, cache).with_z_max(config.zmax)?;
        Ok(Session { ev, path })
    }

    fn save(&self) -> Result<(), Failure> {
        self.ev.cache().export(&self.path)?;
        Ok(())
    }
}

fn parse_ids(s: &str) -> Result<Vec<IdentityId>, Failure> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(IdentityId::all().to_vec());
    }
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse::<IdentityId>().map_err(Failure::from))
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = &cli.config;
    let stdout = io::stdout();
    match cli.command {
        Command::Eval { expr } => {
            let expr: Expr = expr.join(" ").parse()?;
            let session = Session::open(config)?;
            let value = expr.eval(&session.ev)?;
            writeln!(stdout.lock(), "{}", value.to_decimal(config.precision))?;
            session.save()?;
        }
        Command::Verify => {
            let ids = parse_ids(&config.ids)?;
            let session = Session::open(config)?;
            let reports = run_suite(&session.ev, &ids, config.weight_cap, config.samples, config.seed)?;
            write_reports(&reports, config.format.into(), stdout.lock())?;
            let summary = Summary::of(&reports);
            eprintln!("{summary}");
            session.save()?;
            if !summary.all_passed() {
                return Err(Failure::Identities);
            }
        }
        Command::Bench { cutoff } => {
            let prec = Precision::new(config.precision)?;
            let rows = bench::run(prec, config.weight_cap, cutoff)?;
            bench::write_table(&rows, cutoff, stdout.lock())?;
        }
        Command::Cache { action } => {
            let session = Session::open(config)?;
            let cache = session.ev.cache();
            match action {
                CacheAction::Stats => {
                    let stats = cache.stats();
                    let mut out = stdout.lock();
                    writeln!(out, "path: {}", session.path.display())?;
                    writeln!(out, "entries: {}", stats.entries)?;
                    writeln!(out, "hits: {}  misses: {}", stats.hits, stats.misses)?;
                    writeln!(out, "hit ratio: {:.3}", stats.hit_ratio())?;
                }
                CacheAction::Clear => {
                    cache.clear();
                    session.save()?;
                    eprintln!("cleared {}", session.path.display());
                }
                CacheAction::Export { path } => {
                    let n = cache.export(&path)?;
                    eprintln!("exported {n} entries to {}", path.display());
                }
                CacheAction::Import { path } => {
                    let summary = cache.import(&path)?;
                    session.save()?;
                    eprintln!("imported {} entries, skipped {}", summary.loaded, summary.skipped);
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identities) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}
