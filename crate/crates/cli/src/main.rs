use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdouble::qscalars::format_complex;
use qdouble::RSpec;

use qdouble_cli::config::{parse_rspec, ConfigError, SuiteConfig};
use qdouble_cli::output::{self, Document, Outcome};
use qdouble_cli::suite;

#[derive(Parser)]
#[command(
    name = "qdouble",
    version,
    about = "Verify q-boson Hopf structures and R-matrices on truncated Fock spaces"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML suite configuration
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Deformation parameter, e.g. 1.3 or 0.7+0.2i
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    kappa: Option<i64>,
    /// Pairwise truncation; also replaces every rep dimension
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Pairwise window W
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Report path (stdout if absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    dump_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for independent cases
    #[arg(long, global = true, env = "QDOUBLE_WORKERS")]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full suite
    Verify,
    /// Build one R-matrix, dump it and check it
    Rmatrix {
        #[arg(long, default_value = "quantum_double")]
        rspec: String,
    },
    /// Print the pairing Gram table
    Pairing,
    /// Run the suite at each q, one JSON document per line
    Scan {
        /// Comma-separated q values
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        qs: Vec<String>,
    },
}

fn load(common: &Common, q_override: Option<&str>) -> Result<SuiteConfig, ConfigError> {
    let mut cfg = match (&common.config, q_override.or(common.q.as_deref())) {
        (Some(path), _) => SuiteConfig::from_path(path)?,
        (None, Some(q)) => SuiteConfig::with_q(q)?,
        (None, None) => {
            return Err(ConfigError {
                line: None,
                message: "q is required (--q or a config file)".into(),
            })
        }
    };
    let retune = |e: qdouble::Error| ConfigError {
        line: None,
        message: e.to_string(),
    };
    let q = match q_override.or(common.q.as_deref()) {
        Some(text) => qdouble::qscalars::parse_complex(text).map_err(|m| ConfigError {
            line: None,
            message: m,
        })?,
        None => cfg.params.q,
    };
    let kappa = common.kappa.unwrap_or(cfg.params.kappa);
    cfg.params = qdouble::DeformParams::with_tol(q, kappa, cfg.params.tol).map_err(retune)?;
    if let Some(d) = common.dim {
        cfg.caps.pair_dim = d;
        cfg.caps.max_dim = cfg.caps.max_dim.max(d);
        for r in &mut cfg.reps {
            r.dim = d;
        }
    }
    if let Some(w) = common.window {
        cfg.window = w;
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if common.out.is_some() {
        cfg.output.report = common.out.clone();
    }
    if common.dump_dir.is_some() {
        cfg.output.dump_dir = common.dump_dir.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn with_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, String> {
    #[cfg(feature = "parallel")]
    {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = workers {
            if n == 0 {
                return Err("worker count must be positive".into());
            }
            builder = builder.num_threads(n);
        }
        let pool = builder.build().map_err(|e| e.to_string())?;
        Ok(pool.install(f))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        Ok(f())
    }
}

fn summarize(results: &[qdouble::IdentityReport]) {
    let unmet: Vec<_> = results.iter().filter(|r| !r.meets_expectation()).collect();
    eprintln!(
        "{} entries, {} unmet expectations",
        results.len(),
        unmet.len()
    );
    for r in unmet {
        match &r.error {
            Some(e) => eprintln!("  error {}: {e}", r.identity),
            None => eprintln!(
                "  {} {:?} (expected {:?}) normalized {:e}",
                r.identity, r.verdict, r.expect, r.normalized_residual
            ),
        }
    }
}

fn verify(cfg: &SuiteConfig, workers: Option<usize>) -> Result<Outcome, String> {
    let results = with_pool(workers, || suite::run_suite(cfg))?;
    if let Some(dir) = &cfg.output.dump_dir {
        for spec in &cfg.rspecs {
            suite::dump_r(cfg, spec, dir)?;
        }
        suite::dump_pairing(cfg, dir)?;
    }
    summarize(&results);
    let outcome = Outcome::of(&results);
    let doc = Document {
        config: cfg.echo(),
        results,
    };
    output::emit_report(&doc, cfg.output.report.as_deref())
        .map_err(|e| format!("writing report: {e}"))?;
    Ok(outcome)
}

fn rmatrix(cfg: &SuiteConfig, spec: RSpec, workers: Option<usize>) -> Result<Outcome, String> {
    let dir = cfg
        .output
        .dump_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("."));
    let path = suite::dump_r(cfg, &spec, &dir)?;
    eprintln!("wrote {}", path.display());
    let mut single = cfg.clone();
    single.rspecs = vec![spec];
    let rcfg = qdouble::rmatrix::RSuiteConfig {
        pair_dim: cfg.caps.pair_dim,
        pair_window: cfg.window,
        triple_dim: cfg.caps.triple_dim,
        triple_window: cfg.triple_window,
        triple_cap: cfg.caps.triple_cap,
        branch: cfg.branch,
    };
    let results = with_pool(workers, || {
        qdouble::rmatrix::run_suite(&spec, &cfg.params, &rcfg)
    })?;
    summarize(&results);
    let outcome = Outcome::of(&results);
    let doc = Document {
        config: single.echo(),
        results,
    };
    output::emit_report(&doc, cfg.output.report.as_deref())
        .map_err(|e| format!("writing report: {e}"))?;
    Ok(outcome)
}

fn pairing(cfg: &SuiteConfig) -> Result<Outcome, String> {
    let gram = suite::pairing_table(cfg).map_err(|e| e.to_string())?;
    let text = suite::format_pairing_table(&gram);
    match &cfg.output.report {
        Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display()))?,
        None => print!("{text}"),
    }
    if let Some(dir) = &cfg.output.dump_dir {
        suite::dump_pairing(cfg, dir)?;
    }
    let check = qdouble::symalg::pairing_check(&qdouble::symalg::SymCtx::new(cfg.params), 3, 3)
        .map_err(|e| e.to_string())?;
    eprintln!(
        "pairing vs closed form: {:?} ({:e})",
        check.verdict, check.normalized_residual
    );
    Ok(Outcome::of(&[check]))
}

fn scan(common: &Common, qs: &[String]) -> Result<Outcome, String> {
    let mut outcome = Outcome::Met;
    let mut lines = String::new();
    for q in qs {
        let cfg = load(common, Some(q)).map_err(|e| e.to_string())?;
        let results = with_pool(common.workers, || suite::run_suite(&cfg))?;
        eprint!("q = {}: ", format_complex(cfg.params.q));
        summarize(&results);
        outcome = outcome.worst(Outcome::of(&results));
        let doc = Document {
            config: cfg.echo(),
            results,
        };
        lines.push_str(&serde_json::to_string(&doc).map_err(|e| e.to_string())?);
        lines.push('\n');
    }
    match &common.out {
        Some(p) => std::fs::write(p, lines).map_err(|e| format!("{}: {e}", p.display()))?,
        None => print!("{lines}"),
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> Result<Outcome, String> {
        match &cli.command {
            Command::Scan { qs } => scan(&cli.common, qs),
            cmd => {
                let cfg = load(&cli.common, None).map_err(|e| e.to_string())?;
                match cmd {
                    Command::Verify => verify(&cfg, cli.common.workers),
                    Command::Rmatrix { rspec } => {
                        let spec = parse_rspec(rspec)?;
                        rmatrix(&cfg, spec, cli.common.workers)
                    }
                    Command::Pairing => pairing(&cfg),
                    Command::Scan { .. } => unreachable!(),
                }
            }
        }
    };
    match run() {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
