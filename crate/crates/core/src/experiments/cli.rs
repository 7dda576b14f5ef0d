//! The `matsec` command line. Exit codes: 0 when everything checked holds,
//! 1 when a bound or verification fails, 2 for usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use super::{
    load_instance, render, run, run_suite, ExperimentConfig, Format, RunMode, SuiteOptions, WeightSpec,
};
use crate::algorithms::parse_params;
use crate::error::{Error, Result};
use crate::matroid::full_rank;
use crate::principal::{
    check_principal_sequence, convex_decomposition, density, minors_of, partition_cover,
    principal_sequence, three_cobase_cover,
};
use crate::rational::format_rational;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "matsec", version, about = "Matroid secretary experiments and certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Mc,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Args)]
struct Output {
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Debug, Args)]
struct Experiment {
    /// Matroid file, or zoo:<fixture>.
    #[arg(long)]
    matroid: String,
    #[arg(long = "alg")]
    algorithm: String,
    /// Algorithm parameter as KEY=VALUE; repeatable.
    #[arg(long = "alg-param", value_name = "K=V")]
    params: Vec<String>,
    /// Weight generator, e.g. geometric:1/2.
    #[arg(long, default_value = "geometric")]
    weights: String,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monte Carlo estimate of E[w(OPT)], E[w(ALG)] and their ratio.
    Simulate(Experiment),
    /// Exact expectations by enumeration (small ground sets).
    Exact(Experiment),
    /// Principal sequence, critical values and minor densities as JSON.
    Principal {
        /// Matroid file, or zoo:<fixture>.
        file: Option<String>,
        #[arg(long)]
        matroid: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Run a verification suite on its default fixtures or on one matroid.
    Verify {
        suite: String,
        #[arg(long)]
        matroid: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Cover by k independent sets, or three cobases of a graph.
    Cover {
        #[arg(long)]
        matroid: String,
        /// Number of independent sets.
        #[arg(long, conflicts_with = "cobases")]
        k: Option<usize>,
        /// Three cobases covering every edge of a graph instance.
        #[arg(long)]
        cobases: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Convex decomposition of the all-1/gamma point into independent sets.
    Decompose {
        #[arg(long)]
        matroid: String,
        #[command(flatten)]
        output: Output,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_)
        | Error::Parse { .. }
        | Error::Io { .. }
        | Error::SizeBound { .. }
        | Error::Unsupported(_)
        | Error::ElementOutOfRange { .. }
        | Error::HasLoops(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

struct Emit<'a> {
    stdout: &'a mut dyn Write,
}

impl Emit<'_> {
    fn text(&mut self, output: &Output, text: &str) -> Result<()> {
        match &output.out {
            Some(p) => std::fs::write(p, text).map_err(|e| Error::Io {
                path: p.display().to_string(),
                message: e.to_string(),
            }),
            None => self.stdout.write_all(text.as_bytes()).map_err(|e| Error::Io {
                path: "<stdout>".into(),
                message: e.to_string(),
            }),
        }
    }

    /// Structured reports are JSON only.
    fn json<T: Serialize>(&mut self, output: &Output, value: &T) -> Result<()> {
        if let Some(FormatArg::Csv) = output.format {
            return Err(Error::InvalidInput("this report is JSON only".into()));
        }
        let text = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
        self.text(output, &(text + "\n"))
    }
}

fn experiment(e: &Experiment, default_mode: RunMode, emit: &mut Emit) -> Result<bool> {
    let mode = match e.mode {
        Some(ModeArg::Exact) => RunMode::Exact,
        Some(ModeArg::Mc) => RunMode::MonteCarlo,
        None => default_mode,
    };
    let config = ExperimentConfig {
        matroid: e.matroid.clone(),
        algorithm: e.algorithm.clone(),
        params: parse_params(&e.params)?,
        weights: WeightSpec::parse(&e.weights)?,
        trials: e.trials,
        seed: e.seed,
        mode,
        exact: Default::default(),
    };
    let report = run(&config)?;
    let format = e.output.format.map(Format::from).unwrap_or(Format::Csv);
    emit.text(&e.output, &render(&report, format)?)?;
    Ok(report.passed())
}

fn principal(source: &str, output: &Output, emit: &mut Emit) -> Result<bool> {
    let m = load_instance(source)?.oracle();
    let seq = principal_sequence(&*m)?;
    let minors = minors_of(&m, &seq)?;
    let densities = minors
        .iter()
        .map(|minor| density(minor).map(|d| format_rational(&d.value)))
        .collect::<Result<Vec<_>>>()?;
    let checks = check_principal_sequence(&m, &seq)?;
    let passed = checks.iter().all(|c| c.passed);
    emit.json(
        output,
        &json!({
            "matroid": source,
            "n": m.ground_size(),
            "rank": full_rank(&*m),
            "sets": seq.sets,
            "critical_values": seq.critical_values.iter().map(format_rational).collect::<Vec<_>>(),
            "parts": seq.parts,
            "ranks": seq.ranks,
            "minor_densities": densities,
            "checks": checks,
            "passed": passed,
        }),
    )?;
    Ok(passed)
}

fn cover(source: &str, k: Option<usize>, cobases: bool, output: &Output, emit: &mut Emit) -> Result<bool> {
    let instance = load_instance(source)?;
    if cobases {
        let g = instance
            .graph()
            .ok_or_else(|| Error::InvalidInput("--cobases needs a graph or cograph instance".into()))?;
        return match three_cobase_cover(g) {
            Ok(c) => emit.json(output, &json!({"feasible": true, "cobases": c.cobases, "trees": c.trees})).map(|_| true),
            Err(Error::Connectivity { detail, .. }) => emit
                .json(output, &json!({"feasible": false, "reason": format!("not 3-edge-connected: {detail}")}))
                .map(|_| false),
            Err(e) => Err(e),
        };
    }
    let k = k.ok_or_else(|| Error::InvalidInput("cover needs --k or --cobases".into()))?;
    let m = instance.oracle();
    match partition_cover(&*m, k) {
        Ok(parts) => emit.json(output, &json!({"k": k, "feasible": true, "parts": parts})).map(|_| true),
        Err(Error::InfeasibleCover { witness, rank, .. }) => emit
            .json(
                output,
                &json!({"k": k, "feasible": false, "witness": witness, "witness_size": witness.len(), "witness_rank": rank}),
            )
            .map(|_| false),
        Err(e) => Err(e),
    }
}

fn decompose(source: &str, output: &Output, emit: &mut Emit) -> Result<bool> {
    let m = load_instance(source)?.oracle();
    let d = convex_decomposition(&*m)?;
    let verified = d.verify(&*m);
    emit.json(
        output,
        &json!({
            "gamma": format_rational(&d.gamma),
            "terms": d.terms,
            "verified": verified.is_ok(),
            "error": verified.as_ref().err().map(|e| e.to_string()),
        }),
    )?;
    Ok(verified.is_ok())
}

fn dispatch(cli: Cli, emit: &mut Emit) -> Result<bool> {
    match cli.command {
        Command::Simulate(e) => experiment(&e, RunMode::MonteCarlo, emit),
        Command::Exact(e) => experiment(&e, RunMode::Exact, emit),
        Command::Principal { file, matroid, output } => {
            let source = file
                .or(matroid)
                .ok_or_else(|| Error::InvalidInput("principal needs a matroid file".into()))?;
            principal(&source, &output, emit)
        }
        Command::Verify {
            suite,
            matroid,
            trials,
            seed,
            output,
        } => {
            let instances = match matroid {
                Some(src) => Some(vec![(src.clone(), load_instance(&src)?)]),
                None => None,
            };
            let report = run_suite(&suite, instances, &SuiteOptions { trials, seed })?;
            let format = output.format.map(Format::from).unwrap_or(Format::Json);
            emit.text(&output, &render(&report, format)?)?;
            Ok(report.passed)
        }
        Command::Cover {
            matroid,
            k,
            cobases,
            output,
        } => cover(&matroid, k, cobases, &output, emit),
        Command::Decompose { matroid, output } => decompose(&matroid, &output, emit),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let mut emit = Emit { stdout };
    match dispatch(cli, &mut emit) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
