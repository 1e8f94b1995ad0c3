mod cache;
mod jobs;
mod output;

use cache::Cache;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use jobs::{Job, Selection};
use output::Format;
use rayon::prelude::*;
use serde_json::{json, Value};
use springer_qh::report::VerifyReport;
use springer_qh::rootdata::{Family, RootSystem};
use springer_qh::weyl::{WeylGroup, DEFAULT_MAX_WEYL};
use springer_qh::{classical, qh_stable, toda, Error};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "sqh", version, about = "Quantum cohomology of Springer resolutions: presentations and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the ring presentation for a root system.
    Present(Common),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Print one of the matrices behind the presentations.
    Matrix(MatrixArgs),
    /// Inspect or clean the result cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
        #[arg(long, env = "SQH_CACHE_DIR", default_value = ".sqh-cache")]
        cache_dir: PathBuf,
    },
}

#[derive(Subcommand, Clone, Copy)]
enum CacheAction {
    /// Remove entries written by other versions and stray temporary files.
    Gc,
    /// Print entry count and total size.
    Stat,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    #[arg(long)]
    rank: Option<usize>,
    /// Use SL_n instead of GL_n (type A only).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    special_linear: Option<bool>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_MAX_WEYL)]
    max_weyl: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "all")]
    suite: String,
    /// `-e1`, `rho`, `fund:i`, `0` or explicit coordinates such as `1/2,-1/2`.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    /// A single k, an inclusive range `1..3`, or a list `1,3`.
    #[arg(long, value_parser = parse_k_range)]
    k: Option<KRange>,
    /// Weyl element as a word such as `s1s2`, or `id`.
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    w: Option<String>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, env = "SQH_CACHE_DIR", default_value = ".sqh-cache")]
    cache_dir: PathBuf,
    #[arg(long)]
    no_cache: bool,
    /// Instances not started within this many seconds are skipped.
    #[arg(long)]
    timeout: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Mchi,
    Achi,
    Theta,
    Toda,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    which: Which,
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| format!("unknown family `{s}`; expected A, B, C or D"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct KRange(Vec<u32>);

fn parse_k_range(s: &str) -> Result<KRange, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad k value `{t}`"));
    let ks: Vec<u32> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty k range `{s}`"));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if ks.contains(&0) {
        return Err("k must be positive".into());
    }
    Ok(KRange(ks))
}

/// Writes to stdout; a closed pipe (`sqh ... | head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

/// Failure modes that map to exit codes 2 and 3.
enum Fatal {
    Config(String),
    Resource(String),
}

impl From<Error> for Fatal {
    fn from(e: Error) -> Fatal {
        match e {
            Error::Resource { .. } => Fatal::Resource(e.to_string()),
            _ => Fatal::Config(e.to_string()),
        }
    }
}

impl Common {
    fn root_system(&self) -> Result<RootSystem, Fatal> {
        let family = self.family.ok_or_else(|| Fatal::Config("--family is required".into()))?;
        let rank = self.rank.ok_or_else(|| Fatal::Config("--rank is required".into()))?;
        Ok(match (family, self.special_linear.unwrap_or(false)) {
            (Family::A, true) => RootSystem::special_linear(rank)?,
            (_, true) => return Err(Fatal::Config("--special-linear applies to family A only".into())),
            (f, false) => RootSystem::new(f, rank)?,
        })
    }

    fn config(&self) -> serde_json::Map<String, Value> {
        let mut m = serde_json::Map::new();
        if let Some(f) = self.family {
            m.insert("family".into(), json!(f.to_string()));
        }
        if let Some(r) = self.rank {
            m.insert("rank".into(), json!(r));
        }
        if let Some(sl) = self.special_linear {
            m.insert("special_linear".into(), json!(sl));
        }
        m.insert("max_weyl".into(), json!(self.max_weyl));
        m
    }
}

fn present(args: &Common) -> Result<u8, Fatal> {
    let rs = args.root_system()?;
    let p = classical::emit_presentation(&rs)?;
    emit(&output::presentation(&p, args.format, args.config()));
    Ok(0)
}

fn matrix(args: &MatrixArgs) -> Result<u8, Fatal> {
    let c = &args.common;
    let m = match args.which {
        Which::Mchi => {
            let rs = c.root_system()?;
            classical::m_chi(rs.family, rs.dim())?
        }
        Which::Achi => {
            let n = c.rank.ok_or_else(|| Fatal::Config("--rank is required".into()))?;
            classical::a_chi(n)?
        }
        Which::Theta => {
            let rs = c.root_system()?;
            let g = WeylGroup::new(&rs, c.max_weyl)?;
            let lambda = rs.parse_weight(args.weight.as_deref().unwrap_or("-e1"))?;
            qh_stable::theta_matrix(&g, &lambda)?.scalar_skeleton()?
        }
        Which::Toda => {
            let rs = c.root_system()?;
            if rs.special_linear {
                return Err(Fatal::Config("Toda limits are defined for GL_n".into()));
            }
            toda::classical_toda_limit(rs.family, rs.dim())?
        }
    };
    let mut config = c.config();
    config.insert("which".into(), json!(args.which.to_possible_value().unwrap().get_name()));
    if let Some(w) = &args.weight {
        config.insert("weight".into(), json!(w));
    }
    emit(&output::matrix(&m, c.format, config));
    Ok(0)
}

enum Outcome {
    Done(Vec<VerifyReport>),
    Skipped,
    Resource(String),
}

fn run_job(job: &Job, max_weyl: usize, cache: Option<&Cache>, deadline: Option<Instant>) -> Result<Outcome, String> {
    if deadline.is_some_and(|d| Instant::now() >= d) {
        return Ok(Outcome::Skipped);
    }
    let key = format!("{} max-weyl={max_weyl}", job.key());
    if let Some(hit) = cache.and_then(|c| c.get(&key)) {
        return Ok(Outcome::Done(hit));
    }
    let reports = match job.run(max_weyl) {
        Ok(r) => r,
        Err(e @ Error::Resource { .. }) => return Ok(Outcome::Resource(e.to_string())),
        Err(e @ (Error::Domain(_) | Error::Parse(_))) => return Err(format!("{}: {e}", job.key())),
        Err(e) => {
            let mut r = VerifyReport::new(job.suite, &job.params());
            r.fail(e.to_string());
            vec![r]
        }
    };
    if let Some(c) = cache {
        if let Err(e) = c.put(&key, &reports) {
            eprintln!("warning: cache write to {} failed: {e}", c.dir().display());
        }
    }
    Ok(Outcome::Done(reports))
}

fn verify(args: &VerifyArgs) -> Result<u8, Fatal> {
    let c = &args.common;
    if !jobs::is_suite(&args.suite) {
        return Err(Fatal::Config(format!("unknown suite `{}`; expected one of {}", args.suite, jobs::SUITES.join(", "))));
    }
    if c.special_linear == Some(true) && c.family.is_some_and(|f| f != Family::A) {
        return Err(Fatal::Config("--special-linear applies to family A only".into()));
    }
    if let Some(w) = &args.u {
        jobs::parse_word(w)?;
    }
    if let Some(w) = &args.w {
        jobs::parse_word(w)?;
    }
    let sel = Selection {
        family: c.family,
        rank: c.rank,
        special_linear: c.special_linear.unwrap_or(false),
        weight: args.weight.clone(),
        k: args.k.clone().map(|k| k.0),
        u: args.u.clone(),
        w: args.w.clone(),
    };
    let plan = jobs::plan(&args.suite, &sel)?;
    let cache = (!args.no_cache).then(|| Cache::new(&args.cache_dir));
    let deadline = args.timeout.map(|s| Instant::now() + Duration::from_secs(s));
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.jobs {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Fatal::Config(e.to_string()))?;
    let outcomes: Vec<Result<Outcome, String>> =
        pool.install(|| plan.par_iter().map(|j| run_job(j, c.max_weyl, cache.as_ref(), deadline)).collect());

    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    let mut resource = None;
    for (job, o) in plan.iter().zip(outcomes) {
        match o.map_err(Fatal::Config)? {
            Outcome::Done(r) => reports.extend(r),
            Outcome::Skipped => skipped.push(job.key()),
            Outcome::Resource(msg) => {
                skipped.push(job.key());
                resource.get_or_insert(msg);
            }
        }
    }
    let mut config = c.config();
    config.insert("suite".into(), json!(args.suite));
    for (name, v) in [("weight", &args.weight), ("u", &args.u), ("w", &args.w)] {
        if let Some(v) = v {
            config.insert(name.into(), json!(v));
        }
    }
    if let Some(k) = &args.k {
        config.insert("k".into(), json!(k.0));
    }
    emit(&output::reports(&reports, &skipped, c.format, config));
    if let Some(msg) = resource {
        eprintln!("error: {msg}");
    }
    Ok(if !skipped.is_empty() {
        EXIT_RESOURCE
    } else if reports.iter().all(|r| r.passed) {
        0
    } else {
        EXIT_FAIL
    })
}

fn cache_cmd(action: CacheAction, dir: PathBuf) -> Result<u8, Fatal> {
    let cache = Cache::new(dir);
    match action {
        CacheAction::Stat => {
            let (n, bytes, stale) = cache.stat();
            println!("{}: {n} entries, {bytes} bytes, {stale} stale", cache.dir().display());
        }
        CacheAction::Gc => {
            let removed = cache.gc().map_err(|e| Fatal::Config(e.to_string()))?;
            println!("removed {removed} entries from {}", cache.dir().display());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Present(a) => present(a),
        Command::Verify(a) => verify(a),
        Command::Matrix(a) => matrix(a),
        Command::Cache { action, cache_dir } => cache_cmd(*action, cache_dir.clone()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fatal::Config(msg)) => {
            eprintln!("error: {msg}\n\n{}", Cli::command().render_usage());
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Fatal::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_RESOURCE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_ranges() {
        assert_eq!(parse_k_range("2").unwrap().0, vec![2]);
        assert_eq!(parse_k_range("1..3").unwrap().0, vec![1, 2, 3]);
        assert_eq!(parse_k_range("1..=2").unwrap().0, vec![1, 2]);
        assert_eq!(parse_k_range("1,4").unwrap().0, vec![1, 4]);
        assert!(parse_k_range("3..1").is_err());
        assert!(parse_k_range("0").is_err());
    }

    #[test]
    fn cli_shape() {
        Cli::command().debug_assert();
    }
}
