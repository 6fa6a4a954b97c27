mod cache;
mod commands;
mod config;
mod envelope;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser};
use sha2::{Digest, Sha256};

use commands::{CliError, Command};
use config::{Format, Overrides, Precision, RunConfig};
use envelope::Envelope;

#[derive(Debug, Parser)]
#[command(name = "dds", version, about = "Diophantine Dirichlet series laboratory")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    precision: Option<Precision>,
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Digit-string file for the irrational (default: built-in π).
    #[arg(long, global = true)]
    pi_digits: Option<PathBuf>,
}

fn render(env: &Envelope, format: Format) -> String {
    match format {
        Format::Json => env.to_json() + "\n",
        Format::Csv => envelope::to_csv(env),
        Format::Table => envelope::to_table(env),
    }
}

fn emit(text: &str, cfg: &RunConfig) -> Result<(), CliError> {
    match &cfg.out_path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

/// Cache key inputs: parsed arguments, precision, and the digit file's bytes.
fn cache_params(cmd: &Command, cfg: &RunConfig) -> serde_json::Map<String, serde_json::Value> {
    let mut m = serde_json::Map::new();
    m.insert("args".into(), format!("{cmd:?}").into());
    m.insert("precision".into(), format!("{:?}", cfg.precision).into());
    if let (Command::Convergents(_), Some(p)) = (cmd, cfg.pi_digits_source()) {
        let digest = std::fs::read(&p).map(|b| hex::encode(Sha256::digest(&b))).unwrap_or_default();
        m.insert("digits".into(), digest.into());
    }
    m
}

fn compute(cmd: &Command, cfg: &RunConfig) -> Result<Envelope, CliError> {
    let Some(dir) = cfg.cache_root() else {
        let mut env = commands::run(cmd, cfg)?;
        env.diag("cache_hit", false);
        return Ok(env);
    };
    let store = cache::Cache::new(dir);
    let key = cache::key(cmd.name(), &cache_params(cmd, cfg));
    if let Some(mut env) = store.load(&key) {
        env.diag("cache_hit", true);
        return Ok(env);
    }
    let mut env = commands::run(cmd, cfg)?;
    env.diag("cache_hit", false);
    if let Err(e) = store.store(&key, &env) {
        eprintln!("warning: cache write to {} failed: {e}", store.dir().display());
    }
    Ok(env)
}

fn fail(err: &CliError, format: Format) -> ExitCode {
    if format == Format::Json {
        println!("{}", err.to_json());
    } else {
        eprintln!("error: {}", err.message());
    }
    ExitCode::from(err.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let g = cli.global;
    let overrides = Overrides {
        precision: g.precision,
        format: g.format,
        out_path: g.out,
        cache_dir: g.cache_dir,
        pi_digits_path: g.pi_digits,
        no_cache: g.no_cache,
    };
    let fallback_format = overrides.format.unwrap_or_default();
    let cfg = match RunConfig::load(overrides) {
        Ok(c) => c,
        Err(msg) => return fail(&CliError::Usage(format!("configuration: {msg}")), fallback_format),
    };

    if let Command::Verify(v) = &cli.command {
        let (env, ok) = verify::verify(v.suite);
        if let Err(e) = emit(&render(&env, cfg.format), &cfg) {
            return fail(&e, cfg.format);
        }
        return ExitCode::from(if ok { 0 } else { 1 });
    }

    match compute(&cli.command, &cfg).and_then(|env| emit(&render(&env, cfg.format), &cfg)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e, cfg.format),
    }
}
