use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use charvar::cache::FileCache;
use charvar::commands::{self, BlocksReport, MethodChoice};
use charvar::config::{
    block_panel, parse_primes, wide_panel, ConfigError, LambdaPolicy, OutputFormat, RunConfig,
};
use charvar::report::Report;
use charvar::verify::{verify, Scope};
use charvar_core::strata::CaseId;
use charvar_core::{CountEngine, EPolynomial, Limits};
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "charvar",
    version,
    about = "Point counts and E-polynomials of SL(2) character varieties"
)]
struct Cli {
    /// Worker threads for counting.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Directory for cached class distributions.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Record wall times (reports are then no longer reproducible).
    #[arg(long, global = true)]
    timings: bool,
    /// Largest prime the engine will enumerate.
    #[arg(long, global = true)]
    max_prime: Option<u32>,
    /// `all` or a list such as `2,3`.
    #[arg(long, global = true, default_value = "all")]
    lambdas: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the building-block polynomials and check their identities.
    Blocks,
    /// Replay one two-puncture derivation: J+J+, J+J-, J+xi, xixi-generic,
    /// xixi-special or xixi-equal.
    Derive { case: String },
    /// Count targets over a prime panel.
    Count {
        #[arg(required = true)]
        targets: Vec<String>,
        #[arg(long)]
        primes: String,
        #[arg(long, value_enum, default_value_t = MethodChoice::Fast)]
        method: MethodChoice,
    },
    /// Count, fit and compare a group of targets against their closed forms.
    Verify {
        #[arg(value_enum)]
        scope: Scope,
        /// Defaults to 5..31 for blocks and 5..73 otherwise.
        #[arg(long)]
        primes: Option<String>,
    },
    /// Enumerate Hodge tables compatible with an E-polynomial and Betti
    /// numbers.
    Hodge {
        /// E-polynomial in q.
        #[arg(long)]
        e: Option<String>,
        /// Compactly supported Poincaré polynomial in t.
        #[arg(long)]
        poincare: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        no_weight_bound: bool,
        /// List every table.
        #[arg(long)]
        dump: bool,
    },
    /// Union of diagonal commutator fibers against two candidate polynomials.
    Probe {
        #[arg(long)]
        primes: String,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Usage(e.into())
    }
}

fn run_config(cli: &Cli, primes: Vec<u32>) -> Result<RunConfig, ConfigError> {
    let mut limits = Limits::default();
    if let Some(m) = cli.max_prime {
        limits.enumeration_bound = m;
    }
    RunConfig {
        primes,
        limits,
        threads: cli.threads,
        cache_dir: cli.cache_dir.clone(),
        format: cli.format,
        lambdas: cli.lambdas.parse::<LambdaPolicy>()?,
        timings: cli.timings,
    }
    .validated()
}

fn engine(cfg: &RunConfig) -> CountEngine {
    let e = CountEngine::new(cfg.limits);
    match &cfg.cache_dir {
        Some(dir) => e.with_cache(Box::new(FileCache::new(dir))),
        None => e,
    }
}

fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
    }
}

fn poly(text: &str, var: char) -> Result<EPolynomial, Failure> {
    EPolynomial::parse_in(text, var).map_err(|e| Failure::Usage(anyhow::anyhow!("{text:?}: {e}")))
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    if cli.threads == 0 {
        return Err(ConfigError::ZeroThreads.into());
    }
    // Ignored if a pool already exists.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global();
    Ok(match &cli.command {
        Command::Blocks => {
            let b = BlocksReport::new();
            (b.render(cli.format), u8::from(!b.all_pass()))
        }
        Command::Derive { case } => {
            let case: CaseId = case
                .parse()
                .map_err(|e| Failure::Usage(anyhow::anyhow!("{e}")))?;
            let out = commands::derive_output(case, cli.format)
                .map_err(|e| Failure::Runtime(e.into()))?;
            (out, 0)
        }
        Command::Count {
            targets,
            primes,
            method,
        } => {
            let cfg = run_config(cli, parse_primes(primes)?)?;
            let report = commands::count_report(&cfg, &mut engine(&cfg), targets, *method)?;
            (render(&report, cli.format), report.summary.exit_code as u8)
        }
        Command::Verify { scope, primes } => {
            let panel = match primes {
                Some(p) => parse_primes(p)?,
                None if *scope == Scope::Blocks => block_panel(),
                None => wide_panel(),
            };
            let cfg = run_config(cli, panel)?;
            let report = verify(&cfg, *scope, &mut engine(&cfg))?;
            (render(&report, cli.format), report.summary.exit_code as u8)
        }
        Command::Hodge {
            e,
            poincare,
            dim,
            no_weight_bound,
            dump,
        } => {
            let (se, sp, sd) = charvar_core::hodge::standard_instance();
            let e = e
                .as_deref()
                .map(|t| poly(t, 'q'))
                .transpose()?
                .unwrap_or(se);
            let p = poincare
                .as_deref()
                .map(|t| poly(t, 't'))
                .transpose()?
                .unwrap_or(sp);
            let report = commands::hodge_report(&e, &p, dim.unwrap_or(sd), !no_weight_bound, *dump)
                .map_err(|e| Failure::Usage(e.into()))?;
            (report.render(cli.format), 0)
        }
        Command::Probe { primes } => {
            let cfg = run_config(cli, parse_primes(primes)?)?;
            let reports = commands::probe_reports(&cfg, &mut engine(&cfg))
                .map_err(|e| Failure::Runtime(e.into()))?;
            (commands::render_probes(&reports, cli.format), 0)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((out, code)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &out)
                    .with_context(|| format!("writing {}", path.display())),
                None => {
                    print!("{out}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(code),
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(2)
                }
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
