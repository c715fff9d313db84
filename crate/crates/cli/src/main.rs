use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use petty_core::harness::{run, verify_kernel, ExperimentConfig, ExperimentKind, ExperimentReport, Verdict};
use petty_core::kernel::BodyLiteral;

#[derive(Parser, Debug)]
#[command(name = "petty-lab", version, about = "Monte Carlo and deterministic checks of projection-body inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args, Debug)]
struct Opts {
    /// Experiment config (JSON). For `petty` a bare body literal is also accepted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed; overrides the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of Monte Carlo trials; overrides the config.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Worker threads. PETTY_LAB_THREADS takes precedence.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Run the kernel oracle suite.
    VerifyKernel,
    /// Deterministic volume-product functional of a body.
    Petty,
    Thm12,
    Thm11,
    Cor13,
    Empmixed,
    Emppetty2,
    Lln,
    /// Iterated Steiner symmetrization toward the ball.
    Symmetrize,
}

impl Command {
    fn kind(self) -> Option<ExperimentKind> {
        Some(match self {
            Command::VerifyKernel => return None,
            Command::Petty => ExperimentKind::Petty,
            Command::Thm12 => ExperimentKind::Thm12,
            Command::Thm11 => ExperimentKind::Thm11,
            Command::Cor13 => ExperimentKind::Cor13,
            Command::Empmixed => ExperimentKind::EmpMixed,
            Command::Emppetty2 => ExperimentKind::EmpPetty2,
            Command::Lln => ExperimentKind::Lln,
            Command::Symmetrize => ExperimentKind::Symmetrize,
        })
    }
}

fn thread_count(flag: Option<usize>) -> anyhow::Result<Option<usize>> {
    match std::env::var("PETTY_LAB_THREADS") {
        Ok(v) if !v.trim().is_empty() => {
            let n: usize = v.trim().parse().with_context(|| format!("PETTY_LAB_THREADS={v:?} is not a thread count"))?;
            Ok(Some(n))
        }
        _ => Ok(flag),
    }
}

fn load_config(path: &Path, kind: ExperimentKind) -> anyhow::Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match ExperimentConfig::from_json(&text) {
        Ok(cfg) => {
            if cfg.experiment != kind {
                bail!("config is for `{}`, not `{}`", cfg.experiment.name(), kind.name());
            }
            Ok(cfg)
        }
        Err(config_err) if kind == ExperimentKind::Petty => {
            let body: BodyLiteral = serde_json::from_str(&text).map_err(|_| anyhow!("{config_err}"))?;
            let wrapped = serde_json::json!({ "experiment": "petty", "dim": body.dim(), "bodies": [body] });
            Ok(ExperimentConfig::from_json(&wrapped.to_string())?)
        }
        Err(e) => Err(e.into()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(report: &ExperimentReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

fn execute(cli: Cli) -> anyhow::Result<ExitCode> {
    let opts = &cli.opts;
    if let Some(n) = thread_count(opts.threads)? {
        if n == 0 {
            bail!("thread count must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring thread pool")?;
    }
    let Some(kind) = cli.command.kind() else {
        let report = verify_kernel()?;
        let text = serde_json::to_string_pretty(&report)? + "\n";
        emit(&text, opts.out.as_deref())?;
        return Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(2) });
    };
    let path = opts.config.as_deref().ok_or_else(|| anyhow!("`{}` needs --config PATH", kind.name()))?;
    let mut cfg = load_config(path, kind)?;
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = opts.trials {
        cfg.trials = trials;
    }
    let start = Instant::now();
    let mut report = run(&cfg)?;
    if opts.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    let out = opts.out.clone().or_else(|| cfg.output.as_ref().map(PathBuf::from));
    emit(&render(&report, opts.format), out.as_deref())?;
    Ok(if report.verdict == Verdict::Violated { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
