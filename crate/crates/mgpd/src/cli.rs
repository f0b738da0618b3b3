//! Command-line interface.
//!
//! Subcommands:
//! - `tables` — emit the commutation, remap, and observation tables as CSV
//!   and compare the generated rows against the published reference rows.
//! - `simulate` — run the block protocol and write run statistics as JSON.
//! - `detect` — Bob's eavesdropping scan over a saved run.
//! - `steganalyze` — Eve's channel-profiling scan over a saved run.
//! - `curves` — scheme-comparison curves as CSV (or JSON with `--json`).
//! - `verify proposition` / `verify circuits` — dense-matrix verification.
//! - `fidelity` — dense encode/decode round-trip sweep.
//!
//! Exit codes: 0 success, 1 usage or runtime error, 2 a verification or
//! golden-table check failed. Errors print one line, `error: <reason>`, to
//! stderr. All outputs embed the tool version and a hash of the generating
//! configuration, and identical invocations produce byte-identical files.

use crate::adversary::{bob_eavesdrop_detect, eve_steganalysis, TrialStats};
use crate::channel::{ChannelKind, ChannelParams};
use crate::error::{Error, Result};
use crate::metrics::{emit_curves, CurveParams, FigureId};
use crate::protocol::{compute_pg_bound, run_protocol, ProtocolConfig, DEFAULT_KEY_LEN};
use crate::report::{
    commutation_table_csv, config_hash, json_report, mask_observation_csv, remap_table_csv,
    run_table_checks,
};
use crate::steane::{CodeDefinition, GENERATOR_COUNT};
use crate::verify::{run_circuit_checks, run_fidelity_sweep, run_proposition_checks};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "mgpd",
    version,
    about = "Simulator and verifier for generator-sign steganography on the Steane code"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the reference tables as CSV and check them against published rows.
    Tables(TablesArgs),
    /// Run the block protocol and write run statistics as JSON.
    Simulate(SimulateArgs),
    /// Bob's eavesdropping scan over a saved simulation report.
    Detect(DetectArgs),
    /// Eve's channel-profiling scan over a saved simulation report.
    Steganalyze(SteganalyzeArgs),
    /// Emit the scheme-comparison curves.
    Curves(CurvesArgs),
    /// Dense-matrix verification suites.
    #[command(subcommand)]
    Verify(VerifyTarget),
    /// Dense encode/decode round-trip sweep across frames and errors.
    Fidelity(FidelityArgs),
}

#[derive(Args, Debug)]
struct TablesArgs {
    /// Error family for the remap and observation tables.
    #[arg(long, default_value = "phase-flip")]
    kind: ChannelKind,
    /// Directory receiving the CSV files.
    #[arg(long, value_name = "DIR", default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Flat JSON file holding the run parameters instead of flags.
    #[arg(
        long,
        value_name = "FILE",
        conflicts_with_all = ["kind", "p", "delta", "pg", "key_len", "blocks", "seed", "attack", "eps_slack"]
    )]
    config: Option<PathBuf>,
    /// Channel kind: bit-flip, phase-flip, or bit-phase-flip.
    #[arg(long, required_unless_present = "config")]
    kind: Option<ChannelKind>,
    /// Per-qubit channel error probability.
    #[arg(long, required_unless_present = "config")]
    p: Option<f64>,
    /// Allowed deviation budget on top of p.
    #[arg(long, required_unless_present = "config")]
    delta: Option<f64>,
    /// Steganographic per-qubit rate, or "auto" for the budget bound.
    #[arg(long, default_value = "auto")]
    pg: PgSpec,
    /// Shared key length.
    #[arg(long, default_value_t = DEFAULT_KEY_LEN)]
    key_len: usize,
    /// Number of seven-qubit blocks to run.
    #[arg(long, required_unless_present = "config")]
    blocks: Option<u64>,
    /// Master seed; every run pins one explicitly.
    #[arg(long, required_unless_present = "config")]
    seed: Option<u64>,
    /// Insert the intercept-resend adversary on masked blocks.
    #[arg(long)]
    attack: bool,
    /// Calibration drift added to the channel but not to the declared params.
    #[arg(long, default_value_t = 0.0)]
    eps_slack: f64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DetectArgs {
    /// Simulation report produced by `simulate`.
    #[arg(long, value_name = "FILE")]
    stats: PathBuf,
    /// Per-position significance level.
    #[arg(long, default_value_t = 0.001)]
    alpha: f64,
    /// Positions with fewer blocks than this stay inconclusive.
    #[arg(long, default_value_t = 100)]
    min_samples: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SteganalyzeArgs {
    /// Simulation report produced by `simulate`.
    #[arg(long, value_name = "FILE")]
    stats: PathBuf,
    /// Significance level for the per-qubit band test.
    #[arg(long, default_value_t = 0.001)]
    alpha: f64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CurvesArgs {
    /// Which curve family to emit: fig5, fig6, fig7, or fig9.
    #[arg(long)]
    figure: FigureId,
    /// Override the deviation budget (narrows fig6 to this single value).
    #[arg(long)]
    delta: Option<f64>,
    /// Override the channel error rate for the key-consumption curve.
    #[arg(long)]
    p: Option<f64>,
    /// Override the detection-sampling fraction for the key-rate curves.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Override the shared key length used for the flat consumption line.
    #[arg(long)]
    key_len: Option<usize>,
    /// Emit a JSON report instead of CSV.
    #[arg(long)]
    json: bool,
    /// Write the output here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// Projector sweep: orthogonality plus the error-pair case partition.
    Proposition(PropositionArgs),
    /// Sign conjugation, frame agreement, and measurement contrast.
    Circuits(CircuitsArgs),
}

#[derive(Args, Debug)]
struct PropositionArgs {
    /// Generator indices to sweep (repeatable); default is all six.
    #[arg(long, value_name = "K")]
    flip_index: Vec<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CircuitsArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FidelityArgs {
    /// Master seed for the random logical states and errors.
    #[arg(long)]
    seed: u64,
    /// Random states per (family, mask) pair.
    #[arg(long, default_value_t = 25)]
    samples: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// Either a fixed steganographic rate or "auto" (use the budget bound).
#[derive(Clone, Copy, Debug, Default)]
enum PgSpec {
    #[default]
    Auto,
    Fixed(f64),
}

impl std::str::FromStr for PgSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(PgSpec::Auto);
        }
        s.parse::<f64>().map(PgSpec::Fixed).map_err(|_| {
            Error::InvalidParameter(format!("pg must be a number or \"auto\", got {s:?}"))
        })
    }
}

impl<'de> Deserialize<'de> for PgSpec {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Word(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(v) => Ok(PgSpec::Fixed(v)),
            Raw::Word(w) if w == "auto" => Ok(PgSpec::Auto),
            Raw::Word(w) => Err(serde::de::Error::custom(format!(
                "pg must be a number or \"auto\", got {w:?}"
            ))),
        }
    }
}

/// Flat run specification, shared by the flag and config-file paths. Unknown
/// keys in a config file are rejected.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimulateSpec {
    kind: ChannelKind,
    p: f64,
    delta: f64,
    #[serde(default)]
    pg: PgSpec,
    #[serde(default = "default_key_len")]
    key_len: usize,
    blocks: u64,
    seed: u64,
    #[serde(default)]
    attack: bool,
    #[serde(default)]
    eps_slack: f64,
}

fn default_key_len() -> usize {
    DEFAULT_KEY_LEN
}

impl SimulateSpec {
    fn resolve(self) -> Result<ProtocolConfig> {
        let params = ChannelParams::with_slack(self.kind, self.p, self.delta, self.eps_slack)?;
        let p_g = match self.pg {
            PgSpec::Auto => compute_pg_bound(self.p, self.delta),
            PgSpec::Fixed(v) => v,
        };
        ProtocolConfig::new(params, p_g, self.key_len, self.blocks, self.seed, self.attack)
    }
}

/// What `simulate` writes: the resolved configuration next to the counters.
#[derive(Serialize, Deserialize)]
struct StoredRun {
    config: ProtocolConfig,
    stats: TrialStats,
}

/// Provenance envelope as written by every JSON-emitting command.
#[derive(Deserialize)]
struct StoredEnvelope {
    #[allow(dead_code)]
    tool_version: String,
    config_hash: String,
    payload: StoredRun,
}

/// Parse arguments and dispatch; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Tables(args) => cmd_tables(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Detect(args) => cmd_detect(args),
        Command::Steganalyze(args) => cmd_steganalyze(args),
        Command::Curves(args) => cmd_curves(args),
        Command::Verify(VerifyTarget::Proposition(args)) => cmd_verify_proposition(args),
        Command::Verify(VerifyTarget::Circuits(args)) => cmd_verify_circuits(args),
        Command::Fidelity(args) => cmd_fidelity(args),
    }
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_tables(args: TablesArgs) -> Result<i32> {
    #[derive(Serialize)]
    struct TablesConfig {
        kind: ChannelKind,
    }
    let code = CodeDefinition::steane();
    let hash = config_hash(&TablesConfig { kind: args.kind });
    fs::create_dir_all(&args.out_dir)?;
    let kind_tag = args.kind.label();
    fs::write(
        args.out_dir.join("commutation_signs.csv"),
        commutation_table_csv(&code, &hash),
    )?;
    fs::write(
        args.out_dir.join(format!("remap_{kind_tag}.csv")),
        remap_table_csv(args.kind, &hash),
    )?;
    fs::write(
        args.out_dir.join(format!("observation_{kind_tag}.csv")),
        mask_observation_csv(&code, args.kind, &hash),
    )?;
    let bundle = run_table_checks(&code, args.kind);
    print!("{}", json_report(&hash, &bundle));
    Ok(if bundle.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_simulate(args: SimulateArgs) -> Result<i32> {
    let spec = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            serde_json::from_str::<SimulateSpec>(&text)?
        }
        None => SimulateSpec {
            kind: args.kind.expect("required by clap"),
            p: args.p.expect("required by clap"),
            delta: args.delta.expect("required by clap"),
            pg: args.pg,
            key_len: args.key_len,
            blocks: args.blocks.expect("required by clap"),
            seed: args.seed.expect("required by clap"),
            attack: args.attack,
            eps_slack: args.eps_slack,
        },
    };
    let config = spec.resolve()?;
    let stats = run_protocol(&config);
    let hash = config_hash(&config);
    let report = json_report(&hash, &StoredRun { config, stats });
    emit(args.out.as_deref(), &report)?;
    Ok(EXIT_OK)
}

fn load_run(path: &Path) -> Result<StoredEnvelope> {
    let text = fs::read_to_string(path)?;
    let envelope: StoredEnvelope = serde_json::from_str(&text)?;
    envelope.payload.config.validate()?;
    envelope.payload.stats.check_invariants()?;
    if envelope.payload.stats.total_blocks != envelope.payload.config.blocks {
        return Err(Error::InvalidConfig(format!(
            "stats cover {} blocks but the stored config ran {}",
            envelope.payload.stats.total_blocks, envelope.payload.config.blocks
        )));
    }
    Ok(envelope)
}

fn cmd_detect(args: DetectArgs) -> Result<i32> {
    #[derive(Serialize)]
    struct DetectPayload<'a> {
        alpha: f64,
        min_samples: u64,
        source_config_hash: &'a str,
        report: crate::adversary::DetectionReport,
    }
    let envelope = load_run(&args.stats)?;
    let report = bob_eavesdrop_detect(
        &envelope.payload.stats,
        &envelope.payload.config.params,
        args.alpha,
        args.min_samples,
    );
    let payload = DetectPayload {
        alpha: args.alpha,
        min_samples: args.min_samples,
        source_config_hash: &envelope.config_hash,
        report,
    };
    let hash = config_hash(&(args.alpha, args.min_samples, &envelope.config_hash));
    emit(args.out.as_deref(), &json_report(&hash, &payload))?;
    Ok(EXIT_OK)
}

fn cmd_steganalyze(args: SteganalyzeArgs) -> Result<i32> {
    #[derive(Serialize)]
    struct SteganalysisPayload<'a> {
        alpha: f64,
        source_config_hash: &'a str,
        report: crate::adversary::SteganalysisReport,
    }
    let envelope = load_run(&args.stats)?;
    let report = eve_steganalysis(
        &envelope.payload.stats.per_qubit_error_counts,
        envelope.payload.stats.total_blocks,
        &envelope.payload.config.params,
        args.alpha,
    );
    let payload = SteganalysisPayload {
        alpha: args.alpha,
        source_config_hash: &envelope.config_hash,
        report,
    };
    let hash = config_hash(&(args.alpha, &envelope.config_hash));
    emit(args.out.as_deref(), &json_report(&hash, &payload))?;
    Ok(EXIT_OK)
}

fn cmd_curves(args: CurvesArgs) -> Result<i32> {
    #[derive(Serialize)]
    struct CurvesConfig<'a> {
        figure: &'static str,
        params: &'a CurveParams,
    }
    let mut params = CurveParams::default();
    if let Some(d) = args.delta {
        params.delta = d;
        params.deltas = vec![d];
    }
    if let Some(p) = args.p {
        params.p = p;
    }
    if let Some(e) = args.epsilon {
        params.epsilon = e;
    }
    if let Some(l) = args.key_len {
        params.mgpd_key_len = l;
    }
    let rows = emit_curves(args.figure, &params)?;
    let hash = config_hash(&CurvesConfig { figure: args.figure.label(), params: &params });
    let output = if args.json {
        json_report(&hash, &rows)
    } else {
        crate::report::curves_csv(&rows, &hash)
    };
    emit(args.out.as_deref(), &output)?;
    Ok(EXIT_OK)
}

fn cmd_verify_proposition(args: PropositionArgs) -> Result<i32> {
    #[derive(Serialize)]
    struct PropositionConfig<'a> {
        flip_indices: &'a [usize],
    }
    let flip_indices = if args.flip_index.is_empty() {
        (1..=GENERATOR_COUNT).collect()
    } else {
        args.flip_index.clone()
    };
    if let Some(&bad) = flip_indices.iter().find(|&&h| !(1..=GENERATOR_COUNT).contains(&h)) {
        return Err(Error::InvalidParameter(format!(
            "flip index {bad} outside 1..={GENERATOR_COUNT}"
        )));
    }
    let code = CodeDefinition::steane();
    let bundle = run_proposition_checks(&code, &flip_indices);
    let hash = config_hash(&PropositionConfig { flip_indices: &flip_indices });
    emit(args.out.as_deref(), &json_report(&hash, &bundle))?;
    Ok(if bundle.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_verify_circuits(args: CircuitsArgs) -> Result<i32> {
    let code = CodeDefinition::steane();
    let report = run_circuit_checks(&code);
    let hash = config_hash(&"circuits");
    emit(args.out.as_deref(), &json_report(&hash, &report))?;
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_fidelity(args: FidelityArgs) -> Result<i32> {
    #[derive(Serialize)]
    struct FidelityConfig {
        seed: u64,
        samples: usize,
    }
    let code = CodeDefinition::steane();
    let report = run_fidelity_sweep(&code, args.seed, args.samples)?;
    let hash = config_hash(&FidelityConfig { seed: args.seed, samples: args.samples });
    emit(args.out.as_deref(), &json_report(&hash, &report))?;
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}
