//! `infdilog`: run the identity checks from the command line.
//!
//! Exit status is 0 when every executed check passes, 1 when a check fails
//! and 2 on a configuration error. Pattern files use 0-indexed directions;
//! human-readable trajectories print them 1-indexed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use infdilog::cluster::{check_periodicity, Pattern, YSeed};
use infdilog::dilog::DilogParams;
use infdilog::exec::trial_rng;
use infdilog::fields::Field;
use infdilog::series::TruncatedSeries;
use infdilog::verify::{
    self, CheckContext, CheckReport, NamedIdentity, PentagonMode, Sampling, SuiteConfig,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "infdilog",
    version,
    about = "Exact checks of infinitesimal dilogarithm identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Base field
    #[arg(long, value_enum, default_value_t = FieldArg::Q, global = true)]
    field: FieldArg,
    /// Characteristic for `--field fp` and characteristic-p checks
    #[arg(long, default_value_t = 7, global = true)]
    p: u64,
    /// Modulus m
    #[arg(long, default_value_t = 2, global = true)]
    m: usize,
    /// Weight w, with m < w < 2m
    #[arg(long, default_value_t = 3, global = true)]
    w: usize,
    /// Built-in pattern name (A1, A2, B2)
    #[arg(long, default_value = "A2", global = true)]
    pattern: String,
    /// Pattern file (TOML), overrides --pattern
    #[arg(long, global = true)]
    pattern_file: Option<PathBuf>,
    /// Valid points per sampled check
    #[arg(long, default_value_t = 100, global = true)]
    trials: usize,
    /// Height bound for random rationals
    #[arg(long, default_value_t = 10, global = true)]
    height: u64,
    /// Series precision N (lemma: default 6; mutate: inferred from input)
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Master seed
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Trial-division bound for factoring rational constants
    #[arg(long, default_value_t = 1_000_000, global = true)]
    factor_bound: u64,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FieldArg {
    Q,
    Fp,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Human,
    #[value(alias = "json-like")]
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one check
    Check {
        #[command(subcommand)]
        check: CheckCommand,
    },
    /// Run the full acceptance battery
    Suite,
    /// Print the trajectory of the pattern's schedule from a seed
    Mutate {
        /// Initial y-values, one per direction, e.g. `--y 2+t --y 3`
        #[arg(long = "y", required = true)]
        y: Vec<String>,
    },
    /// Print the skew-symmetrizer of the pattern's exchange matrix
    Theta,
    /// Certify the pattern's periodicity
    Periodicity,
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Five-term relation (`--field q` uses m, w; `--field fp` uses p)
    Pentagon,
    /// Cluster identity for the char-0 dilogarithm
    Cluster,
    /// Cluster identity for the char-p dilogarithm
    ClusterP,
    /// A named char-p identity
    Named {
        /// four_term, a2_five_term_charp, elementary, involution,
        /// a2_pentagon_substitution or b2_printed
        id: String,
    },
    /// Wedge-ledger vanishing along the pattern's schedule
    Lemma,
    /// Lift independence of the Bloch-complex expression
    Welldef,
}

struct ConfigError(String);

impl<E: std::fmt::Display> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.to_string())
    }
}

fn load_pattern(opts: &Opts) -> Result<Pattern, ConfigError> {
    match &opts.pattern_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
            Ok(Pattern::parse_toml(&text)?)
        }
        None => Pattern::builtin(&opts.pattern).ok_or_else(|| {
            ConfigError(format!(
                "unknown pattern {:?} (built-ins: {})",
                opts.pattern,
                Pattern::builtin_names().join(", ")
            ))
        }),
    }
}

fn field(opts: &Opts) -> Result<Field, ConfigError> {
    Ok(match opts.field {
        FieldArg::Q => Field::Rational,
        FieldArg::Fp => Field::prime(opts.p)?,
    })
}

fn params(opts: &Opts) -> Result<DilogParams, ConfigError> {
    Ok(DilogParams::new(opts.m, opts.w)?)
}

/// What a command produced: reports to judge, or plain output.
enum Outcome {
    Reports(Vec<CheckReport>),
    Suite(verify::SuiteReport),
    Info {
        human: String,
        data: Value,
        ok: bool,
    },
}

fn run_check(
    ctx: &CheckContext,
    opts: &Opts,
    check: &CheckCommand,
) -> Result<CheckReport, ConfigError> {
    let trials = opts.trials;
    Ok(match check {
        CheckCommand::Pentagon => {
            let mode = match opts.field {
                FieldArg::Q => PentagonMode::CharZero(params(opts)?),
                FieldArg::Fp => {
                    Field::prime(opts.p)?;
                    PentagonMode::CharP(opts.p)
                }
            };
            verify::check_pentagon(ctx, mode, Sampling::Random { trials }, opts.height)?
        }
        CheckCommand::Cluster => {
            if opts.field == FieldArg::Fp {
                return Err(ConfigError(
                    "check cluster runs over Q; use check cluster-p".into(),
                ));
            }
            verify::check_cluster_char0(
                ctx,
                &load_pattern(opts)?,
                params(opts)?,
                trials,
                opts.height,
            )?
        }
        CheckCommand::ClusterP => verify::check_cluster_charp(
            ctx,
            &load_pattern(opts)?,
            opts.p,
            Sampling::Auto { trials },
        )?,
        CheckCommand::Named { id } => {
            let which = NamedIdentity::from_name(id).ok_or_else(|| {
                let names: Vec<&str> = NamedIdentity::ALL.iter().map(|n| n.name()).collect();
                ConfigError(format!(
                    "unknown identity {id:?} (known: {})",
                    names.join(", ")
                ))
            })?;
            verify::check_named_identity(ctx, which, opts.p, Sampling::Auto { trials })?
        }
        CheckCommand::Lemma => verify::check_lemma_wedge(
            ctx,
            &load_pattern(opts)?,
            field(opts)?,
            opts.precision.unwrap_or(6),
            trials,
            opts.height,
            opts.factor_bound,
        )?,
        CheckCommand::Welldef => {
            if opts.field == FieldArg::Fp {
                return Err(ConfigError("check welldef runs over Q".into()));
            }
            verify::check_welldef(ctx, params(opts)?, trials, opts.height, 10)
        }
    })
}

fn parse_seed(
    opts: &Opts,
    pattern: &Pattern,
    texts: &[String],
) -> Result<Vec<TruncatedSeries>, ConfigError> {
    let field = field(opts)?;
    if texts.len() != pattern.rank() {
        return Err(ConfigError(format!(
            "pattern {} has rank {}, got {} y-values",
            pattern.name,
            pattern.rank(),
            texts.len()
        )));
    }
    let precision = match opts.precision {
        Some(n) => n,
        None => {
            // smallest precision that keeps every given coefficient
            let mut n = 1;
            for t in texts {
                let wide = TruncatedSeries::parse(field, t, 64)?;
                if let Some(d) = wide.coeffs().iter().rposition(|c| !c.is_zero()) {
                    n = n.max(d + 1);
                }
            }
            n
        }
    };
    Ok(texts
        .iter()
        .map(|t| TruncatedSeries::parse(field, t, precision))
        .collect::<Result<_, _>>()?)
}

fn dispatch(cli: &Cli) -> Result<Outcome, ConfigError> {
    let opts = &cli.opts;
    let ctx = CheckContext::new(opts.seed);
    Ok(match &cli.command {
        Command::Check { check } => Outcome::Reports(vec![run_check(&ctx, opts, check)?]),
        Command::Suite => {
            let config = SuiteConfig {
                seed: opts.seed,
                height: opts.height,
                factor_bound: opts.factor_bound,
                lemma_precision: opts.precision.unwrap_or(6),
            };
            Outcome::Suite(verify::run_suite(&ctx, &config)?)
        }
        Command::Mutate { y } => {
            let pattern = load_pattern(opts)?;
            let y0 = parse_seed(opts, &pattern, y)?;
            YSeed::new(pattern.matrix.clone(), y0.clone())?;
            let traj = pattern.run(y0)?;
            let steps: Vec<Value> = traj
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "direction": s.direction + 1,
                        "value": s.value.to_string(),
                        "y_after": s.seed_after.y.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Outcome::Info {
                human: traj.to_string(),
                data: json!({"pattern": pattern.name, "steps": steps}),
                ok: true,
            }
        }
        Command::Theta => {
            let pattern = load_pattern(opts)?;
            let theta = pattern.theta();
            let text: Vec<String> = theta.iter().map(u64::to_string).collect();
            Outcome::Info {
                human: format!("({})", text.join(", ")),
                data: json!({"pattern": pattern.name, "theta": theta}),
                ok: true,
            }
        }
        Command::Periodicity => {
            let pattern = load_pattern(opts)?;
            let mut rng = trial_rng(opts.seed, &format!("periodicity:{}", pattern.name), 0);
            let v = check_periodicity(&pattern, opts.trials, field(opts)?, opts.height, &mut rng);
            let human = format!(
                "{}: period {}, nu {:?}, matrix returns: {}, points {} agreeing / {} checked ({} rejected) -> {}",
                pattern.name,
                pattern.schedule.len(),
                pattern.schedule.nu,
                v.matrix_returns,
                v.points_agreeing,
                v.points_checked,
                v.points_rejected,
                if v.periodic { "periodic" } else { "NOT periodic" }
            );
            Outcome::Info {
                human,
                data: json!({"pattern": pattern.name, "verdict": v}),
                ok: v.periodic,
            }
        }
    })
}

fn resolved_config(cli: &Cli) -> Value {
    let o = &cli.opts;
    json!({
        "command": format!("{:?}", cli.command),
        "field": format!("{:?}", o.field).to_lowercase(),
        "p": o.p,
        "m": o.m,
        "w": o.w,
        "pattern": o.pattern,
        "pattern_file": o.pattern_file.as_ref().map(|p| p.display().to_string()),
        "trials": o.trials,
        "height": o.height,
        "precision": o.precision,
        "seed": o.seed,
        "factor_bound": o.factor_bound,
    })
}

fn render(cli: &Cli, outcome: &Outcome) -> (String, bool) {
    let json_out = cli.opts.format == Format::Json;
    match outcome {
        Outcome::Reports(reports) => {
            let ok = reports.iter().all(CheckReport::passed);
            let text = if json_out {
                serde_json::to_string_pretty(
                    &json!({"config": resolved_config(cli), "reports": reports, "passed": ok}),
                )
                .expect("serializable")
            } else {
                reports
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            (text, ok)
        }
        Outcome::Suite(report) => {
            let text = if json_out {
                report.to_json()
            } else {
                report.to_string()
            };
            (text, report.passed)
        }
        Outcome::Info { human, data, ok } => {
            let text = if json_out {
                serde_json::to_string_pretty(
                    &json!({"config": resolved_config(cli), "result": data}),
                )
                .expect("serializable")
            } else {
                human.clone()
            };
            (text, *ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(ConfigError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let (text, ok) = render(&cli, &outcome);
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
