mod cache;
mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use klow::{Budget, Catalog, Context, Error};
use serde::Deserialize;
use serde_json::json;

use cache::FileCache;
use commands::{Env, Suite};
use report::{Outcome, RunReport};

const EXIT_FAILED: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_BAD_INPUT: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "klow",
    version,
    about = "Exact lower K-theory and cyclic homology of small rings"
)]
struct Cli {
    /// JSON config: {"budgets": {"gl_candidates", "tensor_dim"}, "cache_dir"}.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cache directory (overrides KLOW_CACHE and the config file).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Extra ring catalog (JSON list of {"name", "kind", "params"}).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[arg(long, global = true)]
    gl_budget: Option<u128>,
    #[arg(long, global = true)]
    tensor_budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect the ring catalog.
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    K0 {
        ring: String,
        #[arg(long)]
        nmax: Option<usize>,
    },
    K1 {
        ring: String,
        /// Comma-separated matrix levels, e.g. 2,3.
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<usize>>,
    },
    /// Boundary K_1(C) -> K_0(A) of one invertible matrix.
    Boundary {
        #[arg(long)]
        extension: String,
        /// Matrix over C as JSON rows, e.g. [[1]].
        #[arg(long)]
        element: String,
        #[arg(long)]
        lift: Option<String>,
        #[arg(long)]
        lift_inv: Option<String>,
    },
    /// Six-term exactness verdicts for an extension.
    Exactness {
        #[arg(long)]
        extension: String,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
    Swan {
        #[arg(long)]
        field: String,
    },
    Hc {
        algebra: String,
        #[arg(long)]
        nmax: Option<usize>,
    },
    Hbar {
        algebra: String,
        #[arg(long)]
        nmax: Option<usize>,
    },
    ExcisionVerdict {
        algebra: String,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Run identity suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value = "Z4")]
        ring: String,
        #[arg(long)]
        window: Option<usize>,
    },
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum RingAction {
    List,
    Show { name: String },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    Clear,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    #[serde(default)]
    budgets: Budget,
    cache_dir: Option<PathBuf>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::IdentityFailed { .. } => EXIT_FAILED,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_BAD_INPUT,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::AxiomViolation { .. } => "axiom_violation",
        Error::NotIrreducible { .. } => "not_irreducible",
        Error::NotUnital(_) => "not_unital",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::RingMismatch(..) => "ring_mismatch",
        Error::NotInvertible => "not_invertible",
        Error::IdentityFailed { .. } => "identity_failed",
        Error::LiftMismatch { .. } => "lift_mismatch",
        Error::NotInIdeal { .. } => "not_in_ideal",
        Error::FieldTooSmall(_) => "field_too_small",
        Error::UnitalInput(_) => "unital_input",
        Error::NotFiniteSupport => "not_finite_support",
        Error::Dimension(_) => "dimension",
        Error::BadInput(_) => "bad_input",
    }
}

fn fail(kind: &str, message: String, code: u8) -> ExitCode {
    eprintln!(
        "{}",
        json!({"error": kind, "message": message, "exit_code": code})
    );
    ExitCode::from(code)
}

fn load_config(cli: &Cli) -> Result<Config, Error> {
    let Some(path) = &cli.config else {
        return Ok(Config::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::BadInput(format!("config {}: {e}", path.display())))
}

fn cache_dir(cli: &Cli, config: &Config) -> Option<PathBuf> {
    cli.cache_dir
        .clone()
        .or_else(|| {
            std::env::var_os("KLOW_CACHE")
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
        })
        .or_else(|| config.cache_dir.clone())
}

fn setup(cli: &Cli) -> Result<(Env, Option<Arc<FileCache>>), Error> {
    let config = load_config(cli)?;
    let mut budget = config.budgets;
    if let Some(b) = cli.gl_budget {
        budget.gl_candidates = b;
    }
    if let Some(b) = cli.tensor_budget {
        budget.tensor_dim = b;
    }
    let cache = match cache_dir(cli, &config) {
        Some(dir) => Some(Arc::new(FileCache::open(&dir).map_err(|e| {
            Error::BadInput(format!("cache dir {}: {e}", dir.display()))
        })?)),
        None => None,
    };
    let mut catalog = Catalog::builtin();
    if let Some(path) = &cli.catalog {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::BadInput(format!("catalog {}: {e}", path.display())))?;
        catalog.extend(Catalog::from_json(&text)?);
    }
    let ctx = Context {
        budget,
        cache: cache.clone().map(|c| c as Arc<dyn klow::Cache>),
    };
    Ok((Env { catalog, ctx }, cache))
}

fn dispatch(cli: &Cli, env: &Env, cache: Option<&FileCache>) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Ring {
            action: RingAction::List,
        } => commands::ring_list(env),
        Command::Ring {
            action: RingAction::Show { name },
        } => commands::ring_show(env, name),
        Command::K0 { ring, nmax } => commands::k0(env, ring, *nmax),
        Command::K1 { ring, levels } => commands::k1(env, ring, levels.clone()),
        Command::Boundary {
            extension,
            element,
            lift,
            lift_inv,
        } => commands::boundary(
            env,
            extension,
            element,
            lift.as_deref(),
            lift_inv.as_deref(),
        ),
        Command::Exactness { extension, level } => commands::exactness(env, extension, *level),
        Command::Swan { field } => commands::swan(env, field),
        Command::Hc { algebra, nmax } => commands::hc(env, algebra, *nmax),
        Command::Hbar { algebra, nmax } => commands::hbar(env, algebra, *nmax),
        Command::ExcisionVerdict { algebra, nmax } => {
            commands::excision_verdict(env, algebra, *nmax)
        }
        Command::Verify {
            suite,
            ring,
            window,
        } => commands::verify(env, *suite, ring, *window),
        Command::Cache {
            action: CacheAction::Clear,
        } => {
            let cache =
                cache.ok_or_else(|| Error::BadInput("no cache directory configured".into()))?;
            let removed = cache.clear().map_err(|e| Error::BadInput(e.to_string()))?;
            Ok(Outcome::new(
                json!({"cleared": removed, "dir": cache.dir()}),
                vec![],
            ))
        }
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("usage", e.to_string(), EXIT_BAD_INPUT),
    };
    let (env, cache) = match setup(&cli) {
        Ok(v) => v,
        Err(e) => return fail(error_kind(&e), e.to_string(), exit_code(&e)),
    };
    let outcome = match dispatch(&cli, &env, cache.as_deref()) {
        Ok(o) => o,
        Err(e) => return fail(error_kind(&e), e.to_string(), exit_code(&e)),
    };
    let command: Vec<String> = std::env::args().skip(1).collect();
    let report = RunReport::new(command, &outcome, start.elapsed().as_millis());
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    // A closed stdout (e.g. piped into `head`) is not an error of the computation.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if outcome.failed {
        return fail(
            "identity_failed",
            "a verified identity does not hold; see the report".into(),
            EXIT_FAILED,
        );
    }
    ExitCode::SUCCESS
}
