//! `classprod`: class products in symmetric groups from the command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad usage or unmet
//! hypotheses, 3 a size bound was hit, 4 an I/O error, 5 the requested
//! construction is known to be impossible.

mod cache;
mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use classprod::class_algebra::{ClassAlgebra, ClassProduct, Engine};
use classprod::verification::{RunOptions, Statement, VerificationReport, Verifier};
use classprod::{Construction, CycleType, Error, Limits, Permutation};

use cache::Cache;

#[derive(Parser)]
#[command(name = "classprod", version, about = "Products of conjugacy classes in symmetric groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Brute,
    Character,
    Auto,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Brute => Engine::Brute,
            EngineArg::Character => Engine::Character,
            EngineArg::Auto => Engine::Auto,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decompose C_lhs · C_rhs into classes and report eta.
    Eta {
        #[arg(long)]
        n: usize,
        /// Cycle type such as 3,2,1.
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// eta for every ordered pair of non-identity classes.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "character")]
        engine: EngineArg,
        #[arg(long, default_value = ".classprod-cache")]
        cache_dir: PathBuf,
        /// Neither read nor write the cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Check a statement (or all of them) for every n in a range.
    Verify {
        /// Statement id, or `all`.
        #[arg(long, default_value = "all")]
        statement: String,
        #[arg(long, default_value_t = 6)]
        from: usize,
        /// Defaults to --from.
        #[arg(long)]
        to: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random trials per construction and degree.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Include elapsed_ms in JSON output (makes output run-dependent).
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a conjugator sigma controlling the fixed points of alpha^sigma · beta.
    Construct {
        /// 5 avoid, 6 derangement, 7 shrink, 11 at least one, 12 exactly one, 13 at least two fixed points.
        #[arg(long)]
        lemma: u32,
        #[arg(long)]
        n: usize,
        /// Permutation in cycle notation, e.g. "(1 2 3)(4 5)".
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Smaller degree for lemma 7; alpha and beta must fix every point above it.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact character table with class sizes.
    Chartable {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Everything that ends a run early, mapped to an exit code.
enum Failure {
    Usage(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 4,
            Failure::Core(e) => match e {
                Error::Domain(_) | Error::Parse(_) => 2,
                Error::Resource(_) => 3,
                Error::Impossible(_) => 5,
                // A computed result failed its own check.
                Error::Invariant(_) => 1,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn parse_type(s: &str, n: usize, flag: &str) -> Result<CycleType, Failure> {
    let t: CycleType = s.parse().map_err(|e: Error| Failure::Usage(format!("--{flag}: {e}")))?;
    if t.n() != n {
        return Err(Failure::Usage(format!("--{flag} {t} is a partition of {}, not of --n {n}", t.n())));
    }
    Ok(t)
}

fn check_n(n: usize, limits: &Limits) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    if n > limits.max_n {
        return Err(Error::Resource(format!(
            "n = {n} exceeds the bound {} (set {} to raise it)",
            limits.max_n,
            classprod::limits::MAX_N_ENV
        ))
        .into());
    }
    Ok(())
}

fn csv_failure(e: csv::Error) -> Failure {
    Failure::Io(format!("csv output failed: {e}"))
}

fn cmd_eta(limits: Limits, n: usize, lhs: &str, rhs: &str, engine: Engine, format: Format) -> Outcome {
    check_n(n, &limits)?;
    let (lhs, rhs) = (parse_type(lhs, n, "lhs")?, parse_type(rhs, n, "rhs")?);
    let product = ClassAlgebra::new(limits).eta(&lhs, &rhs, engine)?;
    let text = match format {
        Format::Text => render::product_text(&product),
        Format::Json => render::json(&product),
        Format::Csv => render::table_csv(std::slice::from_ref(&product)).map_err(csv_failure)?,
    };
    emit(&text, None)?;
    Ok(ExitCode::SUCCESS)
}

/// Every ordered pair of non-identity types, in reverse-lexicographic order.
fn ordered_rows(algebra: &ClassAlgebra, n: usize, unordered: &[ClassProduct]) -> Result<Vec<ClassProduct>, Failure> {
    let lookup: std::collections::HashMap<(CycleType, CycleType), &ClassProduct> =
        unordered.iter().map(|p| ((p.lhs.clone(), p.rhs.clone()), p)).collect();
    let types: Vec<CycleType> = algebra.partitions(n)?.into_iter().filter(|t| !t.is_identity()).collect();
    let mut rows = Vec::with_capacity(types.len() * types.len());
    for a in &types {
        for b in &types {
            let row = match (lookup.get(&(a.clone(), b.clone())), lookup.get(&(b.clone(), a.clone()))) {
                (Some(p), _) => (*p).clone(),
                (None, Some(p)) => p.swapped(),
                (None, None) => return Err(Error::Invariant(format!("scan is missing [{a}]·[{b}]")).into()),
            };
            rows.push(row);
        }
    }
    Ok(rows)
}

#[allow(clippy::too_many_arguments)]
fn cmd_table(
    limits: Limits,
    n: usize,
    format: Format,
    output: Option<&PathBuf>,
    engine: Engine,
    cache_dir: &PathBuf,
    no_cache: bool,
) -> Outcome {
    check_n(n, &limits)?;
    let algebra = ClassAlgebra::new(limits);
    let cache = (!no_cache).then(|| Cache::new(cache_dir));
    let unordered = match cache.as_ref().and_then(|c| c.load(n, engine)) {
        Some(products) => products,
        None => {
            let products = algebra.scan(n, engine)?;
            if let Some(c) = &cache {
                if let Err(e) = c.store(n, engine, &products) {
                    eprintln!("warning: could not write cache {}: {e}", c.path(n, engine).display());
                }
            }
            products
        }
    };
    let rows = ordered_rows(&algebra, n, &unordered)?;
    let text = match format {
        Format::Json => render::json(&rows),
        Format::Csv => render::table_csv(&rows).map_err(csv_failure)?,
        Format::Text => render::table_text(&rows),
    };
    emit(&text, output)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    limits: Limits,
    statement: &str,
    from: usize,
    to: Option<usize>,
    seed: u64,
    trials: usize,
    timings: bool,
    format: Format,
    output: Option<&PathBuf>,
) -> Outcome {
    let statements: Vec<Statement> = if statement == "all" {
        Statement::suite().collect()
    } else {
        vec![statement.parse::<Statement>().map_err(|e| Failure::Usage(e.to_string()))?]
    };
    let to = to.unwrap_or(from);
    if from < 4 || from > to {
        return Err(Failure::Usage(format!("need 4 <= --from <= --to, got {from}..{to}")));
    }
    if trials == 0 {
        return Err(Failure::Usage("--trials must be positive".into()));
    }
    check_n(to, &limits)?;
    if matches!(format, Format::Csv) {
        return Err(Failure::Usage("verify supports --format text or json".into()));
    }
    let verifier = Verifier::new(limits);
    let opts = RunOptions { seed, trials };
    let reports: Vec<VerificationReport> = statements
        .iter()
        .map(|&s| verifier.run(s, from, to, &opts))
        .collect::<Result<_, _>>()?;
    let text = match format {
        Format::Json => {
            let records: Vec<_> = reports.iter().map(|r| r.record(timings)).collect();
            render::json(&records)
        }
        _ => render::reports_text(&reports),
    };
    emit(&text, output)?;
    Ok(if reports.iter().all(VerificationReport::passed) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn construction_for(lemma: u32) -> Result<Construction, Failure> {
    Ok(match lemma {
        5 => Construction::Avoid,
        6 => Construction::Derangement,
        7 => Construction::Shrink,
        11 => Construction::AtLeastOne,
        12 => Construction::OneFixedPoint,
        13 => Construction::TwoFixedPoints,
        other => return Err(Failure::Usage(format!("--lemma must be one of 5, 6, 7, 11, 12, 13, got {other}"))),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    limits: Limits,
    lemma: u32,
    n: usize,
    alpha: &str,
    beta: &str,
    m: Option<usize>,
    format: Format,
) -> Outcome {
    let construction = construction_for(lemma)?;
    check_n(n, &limits)?;
    let parse = |s: &str, flag: &str| {
        Permutation::parse(s, n).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
    };
    let (alpha, beta) = (parse(alpha, "alpha")?, parse(beta, "beta")?);
    if construction == Construction::Shrink && m.is_none() {
        return Err(Failure::Usage("--lemma 7 needs --m".into()));
    }
    if matches!(format, Format::Csv) {
        return Err(Failure::Usage("construct supports --format text or json".into()));
    }
    let witness = construction.run(&alpha, &beta, m)?;
    let text = match format {
        Format::Json => render::witness_json(lemma, construction.name(), &alpha, &beta, &witness),
        _ => render::witness_text(&alpha, &beta, &witness),
    };
    emit(&text, None)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_chartable(limits: Limits, n: usize, format: Format, output: Option<&PathBuf>) -> Outcome {
    check_n(n, &limits)?;
    let table = ClassAlgebra::new(limits).table(n)?;
    table.check_invariants()?;
    let text = match format {
        Format::Json => render::chartable_json(&table),
        Format::Csv => render::chartable_csv(&table).map_err(csv_failure)?,
        Format::Text => render::chartable_text(&table),
    };
    emit(&text, output)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::from_env();
    let result = match cli.command {
        Command::Eta { n, lhs, rhs, engine, format } => cmd_eta(limits, n, &lhs, &rhs, engine.into(), format),
        Command::Table { n, format, output, engine, cache_dir, no_cache } => {
            cmd_table(limits, n, format, output.as_ref(), engine.into(), &cache_dir, no_cache)
        }
        Command::Verify { statement, from, to, seed, trials, timings, format, output } => {
            cmd_verify(limits, &statement, from, to, seed, trials, timings, format, output.as_ref())
        }
        Command::Construct { lemma, n, alpha, beta, m, format } => {
            cmd_construct(limits, lemma, n, &alpha, &beta, m, format)
        }
        Command::Chartable { n, format, output } => cmd_chartable(limits, n, format, output.as_ref()),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
