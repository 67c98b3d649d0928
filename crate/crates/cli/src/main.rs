//! `abcu`: build, combine and query significance curves from the command line.
//!
//! Exit status is 0 on success, 2 for invalid input and 3 for numerical
//! failures such as a quantile beyond the represented mass.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abcu::evidence::{EvidenceFile, TreeExpr};
use abcu::game::{play, EstimatorSpec, GameConfig, PivotKind};
use abcu::laplace::CombinationSummary;
use abcu::worked;
use abcu::{combine, combine_tree, Alternative, Error, NormalModelSpec, SignificanceCurve};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "abcu",
    version,
    about = "Combine and query significance curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combine every source of an evidence file and dump the combined curve.
    Combine {
        input: PathBuf,
        /// CSV path for the combined curve (`theta,cdf`).
        #[arg(long, short)]
        output: PathBuf,
        /// Nesting expression, e.g. "((0,1),(2,3))"; leaves are indices or ids.
        #[arg(long)]
        tree: Option<String>,
        /// Also report the p-value at this null value.
        #[arg(long = "null", allow_hyphen_values = true)]
        null: Option<f64>,
        #[arg(long, default_value = "greater")]
        alternative: AltArg,
    },
    /// p-value of the combined curve at a null value.
    Pvalue {
        input: PathBuf,
        #[arg(long = "null", allow_hyphen_values = true)]
        null: f64,
        #[arg(long, default_value = "greater")]
        alternative: AltArg,
        #[arg(long)]
        tree: Option<String>,
    },
    /// Confidence interval from the combined curve.
    Ci {
        input: PathBuf,
        #[arg(long)]
        level: f64,
        #[arg(long, default_value = "central")]
        tails: Tails,
        #[arg(long)]
        tree: Option<String>,
    },
    /// Play the betting game against a curve builder on simulated normal data.
    Game {
        /// calibrated, shift:<v> or scale:<v> (in standard-error units).
        #[arg(long, default_value = "calibrated", allow_hyphen_values = true)]
        estimator: String,
        /// Use the known-sigma pivot with this sigma instead of Student t.
        #[arg(long)]
        known_sigma: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Reproduce a worked example.
    Example {
        name: ExampleName,
        /// Write each curve as `<name>.csv` into this directory.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AltArg {
    Greater,
    Less,
    TwoSided,
}

impl From<AltArg> for Alternative {
    fn from(a: AltArg) -> Self {
        match a {
            AltArg::Greater => Alternative::Greater,
            AltArg::Less => Alternative::Less,
            AltArg::TwoSided => Alternative::TwoSided,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Tails {
    Central,
    Lower,
    Upper,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    Torricelli,
    CommonMean,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_numerical() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    }
}

fn load(path: &Path) -> Result<EvidenceFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    EvidenceFile::from_json(&text).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn combined(path: &Path, tree: Option<&str>) -> Result<(SignificanceCurve, Value), Failure> {
    let file = load(path)?;
    let curves = file.build_curves()?;
    let result = match tree {
        Some(expr) => combine_tree(&TreeExpr::parse(expr)?.resolve(&file, &curves)?)?,
        None => combine(&curves)?,
    };
    let summary =
        serde_json::to_value(CombinationSummary::from(&result)).expect("summary serializes");
    Ok((result.curve, summary))
}

fn write_curve(curve: &SignificanceCurve, path: &Path) -> Result<(), Failure> {
    let file = File::create(path).map_err(|e| io_failure(path, e))?;
    let mut out = BufWriter::new(file);
    curve.write_csv(&mut out).map_err(|e| io_failure(path, e))?;
    out.flush().map_err(|e| io_failure(path, e))
}

fn dump_all(curves: &[(String, SignificanceCurve)], dir: &Path) -> Result<Vec<String>, Failure> {
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    curves
        .iter()
        .map(|(name, c)| {
            let path = dir.join(format!("{name}.csv"));
            write_curve(c, &path)?;
            Ok(path.display().to_string())
        })
        .collect()
}

fn check_finite(name: &str, v: f64) -> Result<(), Failure> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            message: format!("--{name} must be finite, got {v}"),
        })
    }
}

fn run(cli: Cli) -> Result<Value, Failure> {
    match cli.command {
        Command::Combine {
            input,
            output,
            tree,
            null,
            alternative,
        } => {
            let (curve, mut summary) = combined(&input, tree.as_deref())?;
            write_curve(&curve, &output)?;
            summary["output"] = json!(output.display().to_string());
            if let Some(theta0) = null {
                check_finite("null", theta0)?;
                let alt: Alternative = alternative.into();
                summary["null"] = json!(theta0);
                summary["alternative"] = json!(alt.to_string());
                summary["p_value"] = json!(curve.p_value(theta0, alt)?);
            }
            Ok(summary)
        }
        Command::Pvalue {
            input,
            null,
            alternative,
            tree,
        } => {
            let theta0 = null;
            check_finite("null", theta0)?;
            let (curve, _) = combined(&input, tree.as_deref())?;
            let alt: Alternative = alternative.into();
            Ok(json!({
                "p_value": curve.p_value(theta0, alt)?,
                "null": theta0,
                "alternative": alt.to_string(),
            }))
        }
        Command::Ci {
            input,
            level,
            tails,
            tree,
        } => {
            if !(level > 0.0 && level < 1.0) {
                return Err(Failure {
                    code: 2,
                    message: format!("--level must be in (0, 1), got {level}"),
                });
            }
            let (curve, _) = combined(&input, tree.as_deref())?;
            let (lo, hi) = match tails {
                Tails::Central => (
                    Some(curve.quantile((1.0 - level) / 2.0)?),
                    Some(curve.quantile((1.0 + level) / 2.0)?),
                ),
                Tails::Lower => (None, Some(curve.quantile(level)?)),
                Tails::Upper => (Some(curve.quantile(1.0 - level)?), None),
            };
            let tails = match tails {
                Tails::Central => "central",
                Tails::Lower => "lower",
                Tails::Upper => "upper",
            };
            // null marks an unbounded side.
            Ok(json!({ "level": level, "tails": tails, "lower": lo, "upper": hi }))
        }
        Command::Game {
            estimator,
            known_sigma,
            theta,
            gamma,
            n,
            reps,
            seed,
            workers,
        } => {
            check_finite("theta", theta)?;
            let mut est = EstimatorSpec::parse(&estimator)?;
            if let Some(sigma) = known_sigma {
                est.pivot = PivotKind::KnownSigma { sigma };
                est.validate()?;
            }
            let model = NormalModelSpec::new(theta, gamma, n)?;
            let mut cfg = GameConfig::new(model, reps, seed);
            if let Some(w) = workers {
                cfg = cfg.with_workers(w);
            }
            let report = play(&est, &cfg)?;
            Ok(serde_json::to_value(&report).expect("report serializes"))
        }
        Command::Example { name, dump_dir } => {
            let (mut value, curves) = match name {
                ExampleName::Torricelli => {
                    let r = worked::torricelli()?;
                    (json!({ "example": "torricelli", "report": &r }), r.curves)
                }
                ExampleName::CommonMean => {
                    let r = worked::common_mean()?;
                    (json!({ "example": "common-mean", "report": &r }), r.curves)
                }
            };
            if let Some(dir) = dump_dir {
                value["dumps"] = json!(dump_all(&curves, &dir)?);
            }
            Ok(value)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(value) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("json output")
            );
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
