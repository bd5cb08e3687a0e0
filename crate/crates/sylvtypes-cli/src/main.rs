//! Command-line front end: closed-form tables, verification suites, Youden
//! probabilities, Monte-Carlo estimates, and CLT convergence tables.
//!
//! Output is schema-stable: CSV headers are fixed, JSON carries a schema
//! tag, exact rationals are rendered canonically as "p/q", and floats are
//! printed with 17 significant digits. Identical invocations with identical
//! seeds produce byte-identical output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter
//! error.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use sylvtypes::mc::{estimate, McConfig};
use sylvtypes::models::{
    beta_prime_type_probs_with_tol, beta_type_probs_with_tol, clt_row, conv_rw_type_probs,
    default_tol, gaussian_type_probs_with_tol, pos_bridge_type_probs, pos_walk_type_probs,
    wendel_type_probs, youden_with_tol, ExactModel, IncrementLaw, ModelSpec,
};
use sylvtypes::types::{eta, TypeDistribution};
use sylvtypes::verify;

const SCHEMA: &str = "sylvtypes/1";

#[derive(Parser)]
#[command(
    name = "sylvtypes",
    version,
    about = "Type distributions of random polytopes and cones on d+2 generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON config file for default tolerances and budgets
    #[arg(long, global = true, env = "SYLVTYPES_CONFIG")]
    config: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, env = "SYLVTYPES_FORMAT", value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true, env = "SYLVTYPES_OUT")]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModelName {
    Gaussian,
    Beta,
    Betaprime,
    Sphere,
    Halfsphere,
    Convrw,
    Wendel,
    Poswalk,
    Posbridge,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum IncrementName {
    Gaussian,
    Scalemixture,
}

impl From<IncrementName> for IncrementLaw {
    fn from(v: IncrementName) -> Self {
        match v {
            IncrementName::Gaussian => IncrementLaw::Gaussian,
            IncrementName::Scalemixture => IncrementLaw::ScaleMixture,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    Identities,
    Quadrature,
    Pipeline,
    Mc,
}

#[derive(Args)]
struct ModelArgs {
    /// Random model
    #[arg(long, value_enum)]
    model: ModelName,
    /// Dimension
    #[arg(long)]
    d: u32,
    /// Beta parameter (beta and betaprime models)
    #[arg(long)]
    beta: Option<f64>,
    /// Increment law for the walk and bridge models
    #[arg(long, value_enum, default_value = "gaussian")]
    increments: IncrementName,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form type distribution of a model
    Compute {
        #[command(flatten)]
        model: ModelArgs,
        /// Quadrature tolerance override
        #[arg(long, env = "SYLVTYPES_TOL")]
        tol: Option<f64>,
    },
    /// Run a named verification suite
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
        #[arg(long, env = "SYLVTYPES_SAMPLES")]
        samples: Option<u64>,
        #[arg(long, env = "SYLVTYPES_SEED")]
        seed: Option<u64>,
        #[arg(long, env = "SYLVTYPES_WORKERS")]
        workers: Option<usize>,
    },
    /// Youden order-statistics probabilities P(n, k)
    Youden {
        #[arg(long)]
        n: u32,
        /// Single rank; omitted prints the whole row
        #[arg(long)]
        k: Option<i32>,
        #[arg(long, env = "SYLVTYPES_TOL")]
        tol: Option<f64>,
    },
    /// Monte-Carlo estimate of a model's type distribution
    Mc {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, env = "SYLVTYPES_SAMPLES")]
        samples: Option<u64>,
        #[arg(long, env = "SYLVTYPES_SEED")]
        seed: Option<u64>,
        #[arg(long, env = "SYLVTYPES_WORKERS")]
        workers: Option<usize>,
    },
    /// CLT convergence table for the exact models
    Clt {
        /// Exact model (convrw, wendel, poswalk, posbridge)
        #[arg(long, value_enum)]
        model: ModelName,
        #[arg(long, default_value_t = 200)]
        d_max: u32,
        /// Comma-separated thresholds t
        #[arg(long = "t", value_delimiter = ',', default_value = "1.0")]
        t_list: Vec<f64>,
    },
}

/// Optional config file; flags take precedence over these, which take
/// precedence over built-in defaults.
#[derive(Deserialize, Default)]
struct FileConfig {
    tol: Option<f64>,
    seed: Option<u64>,
    samples: Option<u64>,
    workers: Option<usize>,
}

struct UsageError(String);

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig, UsageError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| UsageError(format!("cannot read config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| UsageError(format!("cannot parse config {}: {e}", p.display())))
        }
    }
}

fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

fn build_model(args: &ModelArgs) -> Result<ModelSpec, UsageError> {
    let d = args.d;
    let need_beta = || {
        args.beta
            .ok_or_else(|| UsageError("this model requires --beta".into()))
    };
    Ok(match args.model {
        ModelName::Gaussian => ModelSpec::Gaussian { d },
        ModelName::Beta => ModelSpec::Beta { d, beta: need_beta()? },
        ModelName::Betaprime => ModelSpec::BetaPrime { d, beta: need_beta()? },
        ModelName::Sphere => ModelSpec::Sphere { d },
        ModelName::Halfsphere => ModelSpec::HalfSphere { d },
        ModelName::Convrw => ModelSpec::ConvRw {
            d,
            increments: args.increments.into(),
        },
        ModelName::Wendel => ModelSpec::Wendel { d },
        ModelName::Poswalk => ModelSpec::PosWalk {
            d,
            increments: args.increments.into(),
        },
        ModelName::Posbridge => ModelSpec::PosBridge {
            d,
            increments: args.increments.into(),
        },
    })
}

#[derive(Serialize)]
struct ComputeRow {
    m: i32,
    probability: String,
    eta: u32,
    facets: u64,
}

fn facets_of(d: u32, m: i32) -> u64 {
    if m < 0 {
        0
    } else {
        ((m + 1) * (d as i32 - m + 1)) as u64
    }
}

fn distribution_rows(model: &ModelSpec, tol: f64) -> Result<Vec<ComputeRow>, UsageError> {
    let d = model.d();
    let exact = |dist: TypeDistribution<sylvtypes::BigRational>| {
        dist.iter()
            .map(|(m, p)| (m, format!("{}/{}", p.numer(), p.denom())))
            .collect::<Vec<_>>()
    };
    let float = |dist: TypeDistribution<f64>| {
        dist.iter()
            .map(|(m, p)| (m, float17(*p)))
            .collect::<Vec<_>>()
    };
    let probs = match *model {
        ModelSpec::ConvRw { d, .. } => exact(conv_rw_type_probs(d)),
        ModelSpec::Wendel { d } => exact(wendel_type_probs(d)),
        ModelSpec::PosWalk { d, .. } => exact(pos_walk_type_probs(d)),
        ModelSpec::PosBridge { d, .. } => exact(pos_bridge_type_probs(d)),
        ModelSpec::Gaussian { d } => float(
            gaussian_type_probs_with_tol(d, tol).map_err(|e| UsageError(e.to_string()))?,
        ),
        ModelSpec::Beta { d, beta } => float(
            beta_type_probs_with_tol(d, beta, tol).map_err(|e| UsageError(e.to_string()))?,
        ),
        ModelSpec::Sphere { d } => float(
            beta_type_probs_with_tol(d, -1.0, tol).map_err(|e| UsageError(e.to_string()))?,
        ),
        ModelSpec::BetaPrime { d, beta } => float(
            beta_prime_type_probs_with_tol(d, beta, tol).map_err(|e| UsageError(e.to_string()))?,
        ),
        ModelSpec::HalfSphere { d } => float(
            beta_prime_type_probs_with_tol(d, (d as f64 + 1.0) / 2.0, tol)
                .map_err(|e| UsageError(e.to_string()))?,
        ),
    };
    Ok(probs
        .into_iter()
        .map(|(m, probability)| ComputeRow {
            m,
            probability,
            eta: eta(d, m).unwrap(),
            facets: facets_of(d, m),
        })
        .collect())
}

fn emit(out: &Option<PathBuf>, body: String) -> Result<(), UsageError> {
    match out {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(p) => fs::write(p, body)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", p.display()))),
    }
}

fn json_wrap(command: &str, payload: serde_json::Value) -> String {
    let mut doc = serde_json::Map::new();
    doc.insert("schema".into(), SCHEMA.into());
    doc.insert("command".into(), command.into());
    doc.insert("result".into(), payload);
    let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(doc)).unwrap();
    s.push('\n');
    s
}

fn run_compute(
    args: &ModelArgs,
    tol: Option<f64>,
    cfg: &FileConfig,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), UsageError> {
    let model = build_model(args)?;
    let tol = tol.or(cfg.tol).unwrap_or_else(|| default_tol(model.d()));
    let rows = distribution_rows(&model, tol)?;
    let body = match format {
        Format::Csv => {
            let mut s = String::from("m,probability,eta,facets\n");
            for r in &rows {
                writeln!(s, "{},{},{},{}", r.m, r.probability, r.eta, r.facets).unwrap();
            }
            s
        }
        Format::Json => json_wrap(
            "compute",
            serde_json::json!({
                "model": model.to_string(),
                "rows": rows,
            }),
        ),
    };
    emit(out, body)
}

fn run_verify(
    suite: SuiteName,
    samples: Option<u64>,
    seed: Option<u64>,
    workers: Option<usize>,
    cfg: &FileConfig,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<bool, UsageError> {
    let samples = samples.or(cfg.samples).unwrap_or(100_000);
    let seed = seed.or(cfg.seed).unwrap_or(7);
    let workers = workers.or(cfg.workers).unwrap_or(4);
    let results = match suite {
        SuiteName::Identities => verify::suite_identities(),
        SuiteName::Quadrature => verify::suite_quadrature(),
        SuiteName::Pipeline => verify::suite_pipeline(),
        SuiteName::Mc => verify::suite_mc(samples, seed, workers),
    };
    let all_pass = results.iter().all(|r| r.passed);
    let body = match format {
        Format::Csv => {
            let mut s = String::from("check,passed,detail\n");
            for r in &results {
                writeln!(s, "{},{},\"{}\"", r.name, r.passed, r.detail.replace('"', "'")).unwrap();
            }
            s
        }
        Format::Json => json_wrap(
            "verify",
            serde_json::json!({
                "checks": results
                    .iter()
                    .map(|r| serde_json::json!({
                        "name": r.name,
                        "passed": r.passed,
                        "detail": r.detail,
                    }))
                    .collect::<Vec<_>>(),
                "passed": all_pass,
            }),
        ),
    };
    emit(out, body)?;
    Ok(all_pass)
}

fn run_youden(
    n: u32,
    k: Option<i32>,
    tol: Option<f64>,
    cfg: &FileConfig,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), UsageError> {
    let tol = tol.or(cfg.tol).unwrap_or(1e-10);
    let ks: Vec<i32> = match k {
        Some(k) => vec![k],
        None => (0..=n as i32).collect(),
    };
    let mut rows = Vec::new();
    for k in ks {
        let p = youden_with_tol(n, k, tol).map_err(|e| UsageError(e.to_string()))?;
        rows.push((k, p));
    }
    let body = match format {
        Format::Csv => {
            let mut s = String::from("n,k,probability\n");
            for (k, p) in &rows {
                writeln!(s, "{n},{k},{}", float17(*p)).unwrap();
            }
            s
        }
        Format::Json => json_wrap(
            "youden",
            serde_json::json!({
                "n": n,
                "rows": rows
                    .iter()
                    .map(|(k, p)| serde_json::json!({"k": k, "probability": float17(*p)}))
                    .collect::<Vec<_>>(),
            }),
        ),
    };
    emit(out, body)
}

fn run_mc(
    args: &ModelArgs,
    samples: Option<u64>,
    seed: Option<u64>,
    workers: Option<usize>,
    cfg: &FileConfig,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), UsageError> {
    let model = build_model(args)?;
    let samples = samples.or(cfg.samples).unwrap_or(1_000_000);
    let seed = seed.or(cfg.seed).unwrap_or(7);
    let workers = workers.or(cfg.workers).unwrap_or(4);
    if samples == 0 {
        return Err(UsageError("--samples must be at least 1".into()));
    }
    let report = estimate(&model, samples, seed, workers, &McConfig::default());
    let body = match format {
        Format::Csv => {
            let mut s = String::from(
                "model,m,count,estimate,wilson99_lo,wilson99_hi,samples,seed,workers,degenerate,healthy\n",
            );
            for (m, c) in &report.counts {
                let e = report.estimates[m];
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    model,
                    m,
                    c,
                    float17(e.p_hat),
                    float17(e.lo),
                    float17(e.hi),
                    report.samples,
                    report.seed,
                    report.workers,
                    report.degenerate,
                    report.healthy
                )
                .unwrap();
            }
            s
        }
        Format::Json => json_wrap(
            "mc",
            serde_json::json!({
                "model": model.to_string(),
                "samples": report.samples,
                "seed": report.seed,
                "workers": report.workers,
                "degenerate": report.degenerate,
                "healthy": report.healthy,
                "rows": report
                    .counts
                    .iter()
                    .map(|(m, c)| {
                        let e = report.estimates[m];
                        serde_json::json!({
                            "m": m,
                            "count": c,
                            "estimate": float17(e.p_hat),
                            "wilson99_lo": float17(e.lo),
                            "wilson99_hi": float17(e.hi),
                        })
                    })
                    .collect::<Vec<_>>(),
            }),
        ),
    };
    emit(out, body)
}

fn run_clt(
    model: ModelName,
    d_max: u32,
    t_list: &[f64],
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), UsageError> {
    let exact = match model {
        ModelName::Convrw => ExactModel::ConvRw,
        ModelName::Wendel => ExactModel::Wendel,
        ModelName::Poswalk => ExactModel::PosWalk,
        ModelName::Posbridge => ExactModel::PosBridge,
        _ => {
            return Err(UsageError(
                "clt requires an exact model: convrw, wendel, poswalk or posbridge".into(),
            ))
        }
    };
    if d_max < 10 {
        return Err(UsageError("--d-max must be at least 10".into()));
    }
    let mut dims = Vec::new();
    let mut d = 10;
    while d < d_max {
        dims.push(d);
        d *= 2;
    }
    dims.push(d_max);
    let mut rows = Vec::new();
    for &d in &dims {
        for &t in t_list {
            rows.push(clt_row(exact, d, t));
        }
    }
    let body = match format {
        Format::Csv => {
            let mut s = String::from("d,t,cumulative,limit,gap\n");
            for r in &rows {
                writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.d,
                    r.t,
                    float17(r.cumulative_f64),
                    float17(r.limit),
                    float17(r.gap)
                )
                .unwrap();
            }
            s
        }
        Format::Json => json_wrap(
            "clt",
            serde_json::json!({
                "model": format!("{exact:?}").to_lowercase(),
                "rows": rows
                    .iter()
                    .map(|r| serde_json::json!({
                        "d": r.d,
                        "t": r.t,
                        "cumulative": float17(r.cumulative_f64),
                        "cumulative_exact": format!("{}/{}", r.cumulative.numer(), r.cumulative.denom()),
                        "limit": float17(r.limit),
                        "gap": float17(r.gap),
                    }))
                    .collect::<Vec<_>>(),
            }),
        ),
    };
    emit(out, body)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.unwrap_or(Format::Csv);
    let cfg = match load_config(&cli.config) {
        Ok(c) => c,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.command {
        Command::Compute { model, tol } => {
            run_compute(model, *tol, &cfg, format, &cli.out).map(|_| true)
        }
        Command::Verify {
            suite,
            samples,
            seed,
            workers,
        } => run_verify(*suite, *samples, *seed, *workers, &cfg, format, &cli.out),
        Command::Youden { n, k, tol } => {
            run_youden(*n, *k, *tol, &cfg, format, &cli.out).map(|_| true)
        }
        Command::Mc {
            model,
            samples,
            seed,
            workers,
        } => run_mc(model, *samples, *seed, *workers, &cfg, format, &cli.out).map(|_| true),
        Command::Clt {
            model,
            d_max,
            t_list,
        } => run_clt(*model, *d_max, t_list, format, &cli.out).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
