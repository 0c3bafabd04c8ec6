//! `flowpat` command-line tool.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or knowledge-base error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use flowpat::bp::{train, ModelFile, TrainConfig, TrainedModel};
use flowpat::dataset::{
    embedded_dataset, parse_csv, serialize_csv, split, ExperimentRecord, SplitSpec,
};
use flowpat::eval::evaluate;
use flowpat::fuzzy::FuzzySystem;
use flowpat::kb::{
    build_default_kb, classify, load_kb, save_kb, FlowPattern, KnowledgeBaseDoc, OperatingPoint,
};
use flowpat::sweep::{run_sweep, Axis, SweepSpec};
use flowpat::FlowError;

const KB_ENV: &str = "FLOWPAT_KB";

#[derive(Parser)]
#[command(
    name = "flowpat",
    version,
    about = "Oil-water flow-pattern identification with a fuzzy inference system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct KbArg {
    /// Knowledge-base JSON file; the built-in knowledge base is used when absent.
    #[arg(long, env = KB_ENV)]
    kb: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct DataArg {
    /// CSV dataset; the embedded 60-point dataset is used when absent.
    #[arg(long)]
    data: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SplitKind {
    /// The 18 published test points form the test set.
    Paper,
    /// Seeded shuffle controlled by --test-fraction and --split-seed.
    Random,
    /// No split: every record is used for both training and evaluation.
    None,
}

#[derive(Args, Clone)]
struct SplitArgs {
    #[arg(long, value_enum, default_value = "paper")]
    split: SplitKind,
    #[arg(long, default_value_t = 0.3)]
    test_fraction: f64,
    #[arg(long, default_value_t = 7)]
    split_seed: u64,
}

#[derive(Args, Clone)]
struct TrainArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 300)]
    epochs: usize,
    /// Hidden layer sizes, e.g. `8,6`.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [8, 6])]
    hidden: Vec<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SweepFormat {
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one operating point.
    Classify {
        /// Inclination in degrees (0 vertical, 90 horizontal).
        #[arg(long, allow_negative_numbers = true)]
        angle: f64,
        /// Total flow rate in m³/d.
        #[arg(long, allow_negative_numbers = true)]
        flow: f64,
        /// Water cut as a fraction in [0, 1].
        #[arg(long, allow_negative_numbers = true)]
        watercut: f64,
        /// Print the rules that fired for each pattern.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        kb: KbArg,
    },
    /// Check a knowledge-base file and print its diagnostics.
    ValidateKb {
        /// File to check; defaults to $FLOWPAT_KB, then the built-in knowledge base.
        path: Option<PathBuf>,
    },
    /// Train the neural baseline and write a model file.
    TrainBp {
        #[command(flatten)]
        data: DataArg,
        #[command(flatten)]
        split: SplitArgs,
        #[command(flatten)]
        train: TrainArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare fuzzy and neural predictions on the test split.
    Evaluate {
        #[command(flatten)]
        data: DataArg,
        #[command(flatten)]
        split: SplitArgs,
        #[command(flatten)]
        train: TrainArgs,
        /// Use a trained model instead of training one.
        #[arg(long)]
        bp_model: Option<PathBuf>,
        /// Evaluate the fuzzy system only.
        #[arg(long)]
        fis_only: bool,
        /// Write the machine-readable report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        kb: KbArg,
    },
    /// Classify a flow x water-cut grid at a fixed inclination.
    Sweep {
        #[arg(long)]
        angle: f64,
        /// Steps on both axes unless overridden per axis.
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long, default_value_t = 100.0)]
        flow_min: f64,
        #[arg(long, default_value_t = 600.0)]
        flow_max: f64,
        #[arg(long)]
        flow_steps: Option<usize>,
        #[arg(long, default_value_t = 0.0)]
        wc_min: f64,
        #[arg(long, default_value_t = 1.0)]
        wc_max: f64,
        #[arg(long)]
        wc_steps: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: SweepFormat,
        /// Add the four Φ columns to CSV output.
        #[arg(long)]
        phi: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        kb: KbArg,
    },
    /// Write the embedded dataset as CSV.
    ExportData {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the built-in knowledge base as JSON.
    ExportKb {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 1,
        error: error.into(),
    }
}

fn data(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 2,
        error: error.into(),
    }
}

/// Configuration problems are usage errors; everything else is a data error.
fn classify_err(e: FlowError) -> Failure {
    match e {
        FlowError::Config(_) => usage(e),
        _ => data(e),
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Classify {
            angle,
            flow,
            watercut,
            trace,
            kb,
        } => cmd_classify(OperatingPoint::new(angle, flow, watercut), trace, &kb),
        Command::ValidateKb { path } => cmd_validate_kb(path),
        Command::TrainBp {
            data,
            split,
            train,
            out,
        } => cmd_train_bp(&data, &split, &train, &out),
        Command::Evaluate {
            data,
            split,
            train,
            bp_model,
            fis_only,
            report,
            kb,
        } => cmd_evaluate(
            &data,
            &split,
            &train,
            bp_model.as_deref(),
            fis_only,
            report.as_deref(),
            &kb,
        ),
        Command::Sweep {
            angle,
            steps,
            flow_min,
            flow_max,
            flow_steps,
            wc_min,
            wc_max,
            wc_steps,
            format,
            phi,
            out,
            kb,
        } => {
            let spec = SweepSpec {
                angle,
                flow: Axis::new(flow_min, flow_max, flow_steps.unwrap_or(steps)),
                watercut: Axis::new(wc_min, wc_max, wc_steps.unwrap_or(steps)),
            };
            cmd_sweep(&spec, format, phi, out.as_deref(), &kb)
        }
        Command::ExportData { out } => emit(out.as_deref(), &serialize_csv(&embedded_dataset())),
        Command::ExportKb { out } => emit(
            out.as_deref(),
            &save_kb(&build_default_kb::<f64>()).to_json(),
        ),
    }
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(data),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_system(kb: &KbArg) -> Result<FuzzySystem<f64>, Failure> {
    match &kb.kb {
        None => Ok(build_default_kb()),
        Some(path) => KnowledgeBaseDoc::read(path)
            .and_then(|doc| load_kb(&doc))
            .with_context(|| format!("knowledge base {}", path.display()))
            .map_err(data),
    }
}

fn load_records(arg: &DataArg) -> Result<Vec<ExperimentRecord>, Failure> {
    match &arg.data {
        None => Ok(embedded_dataset()),
        Some(path) => std::fs::read_to_string(path)
            .map_err(FlowError::from)
            .and_then(|text| parse_csv(&text))
            .with_context(|| format!("dataset {}", path.display()))
            .map_err(data),
    }
}

fn split_records(
    records: &[ExperimentRecord],
    args: &SplitArgs,
) -> Result<(Vec<ExperimentRecord>, Vec<ExperimentRecord>), Failure> {
    let spec = match args.split {
        SplitKind::None => {
            if records.is_empty() {
                return Err(data(anyhow!("dataset is empty")));
            }
            return Ok((records.to_vec(), records.to_vec()));
        }
        SplitKind::Paper => SplitSpec::Paper,
        SplitKind::Random => SplitSpec::SeededRandom {
            test_fraction: args.test_fraction,
            seed: args.split_seed,
        },
    };
    split(records, spec).map_err(data)
}

fn train_config(args: &TrainArgs) -> Result<TrainConfig, Failure> {
    let config = TrainConfig {
        epochs: args.epochs,
        seed: args.seed,
        hidden: [args.hidden[0], args.hidden[1]],
        ..TrainConfig::default()
    };
    config.validate().map_err(usage)?;
    Ok(config)
}

fn cmd_classify(point: OperatingPoint<f64>, trace: bool, kb: &KbArg) -> CmdResult {
    let system = load_system(kb)?;
    let result = classify(&system, &point).map_err(classify_err)?;
    for note in &result.clamps {
        eprintln!("warning: {note}");
    }
    let mut out = String::new();
    let _ = writeln!(out, "predicted: {}", result.predicted);
    for p in FlowPattern::ALL {
        let _ = writeln!(out, "  phi[{:<8}] = {:.6}", p.label(), result.phi_of(p));
    }
    if trace {
        let _ = writeln!(out, "fired rules:");
        for p in FlowPattern::ALL {
            for fired in &result.trace[p.index()] {
                let rule = system
                    .rules()
                    .iter()
                    .find(|r| r.id == fired.rule_id)
                    .expect("fired rules come from the system");
                let antecedent = rule
                    .antecedent
                    .iter()
                    .map(|c| format!("{} is {}", c.variable, c.term))
                    .collect::<Vec<_>>()
                    .join(" and ");
                let _ = writeln!(
                    out,
                    "  {:<4} if {} then {} is {} (weight {}) -> {:.6}",
                    rule.id,
                    antecedent,
                    rule.consequent.class,
                    rule.consequent.term,
                    rule.weight,
                    fired.strength
                );
            }
        }
    }
    print!("{out}");
    Ok(())
}

fn cmd_validate_kb(path: Option<PathBuf>) -> CmdResult {
    let path = path.or_else(|| std::env::var_os(KB_ENV).map(PathBuf::from));
    let (name, doc) = match path {
        Some(p) => {
            let doc = KnowledgeBaseDoc::read(&p)
                .with_context(|| format!("knowledge base {}", p.display()))
                .map_err(data)?;
            (p.display().to_string(), doc)
        }
        None => (
            "<built-in>".to_string(),
            save_kb(&build_default_kb::<f64>()),
        ),
    };
    let diags = doc
        .diagnostics()
        .with_context(|| format!("knowledge base {name}"))
        .map_err(data)?;
    if diags.is_empty() {
        println!("OK");
        return Ok(());
    }
    for (location, diag) in &diags {
        match location {
            Some(loc) => println!("{name}: {loc}: {diag}"),
            None => println!("{name}: {diag}"),
        }
    }
    Err(data(anyhow!("{} diagnostic(s)", diags.len())))
}

fn fit(config: &TrainConfig, train_set: &[ExperimentRecord]) -> Result<TrainedModel<f64>, Failure> {
    train(config, train_set).map_err(classify_err)
}

fn cmd_train_bp(
    data_arg: &DataArg,
    split_args: &SplitArgs,
    train_args: &TrainArgs,
    out: &Path,
) -> CmdResult {
    let config = train_config(train_args)?;
    let records = load_records(data_arg)?;
    let (train_set, _) = split_records(&records, split_args)?;
    let model = fit(&config, &train_set)?;
    emit(Some(out), &ModelFile::from_model(&model).to_json())?;
    let h = &model.history;
    println!(
        "trained on {} records: {} epochs, initial mse {:.6}, final mse {:.6}{}",
        train_set.len(),
        h.epochs_run,
        h.mse[0],
        h.final_mse(),
        if h.converged { " (goal reached)" } else { "" }
    );
    println!("model written to {}", out.display());
    Ok(())
}

fn cmd_evaluate(
    data_arg: &DataArg,
    split_args: &SplitArgs,
    train_args: &TrainArgs,
    bp_model: Option<&Path>,
    fis_only: bool,
    report_path: Option<&Path>,
    kb: &KbArg,
) -> CmdResult {
    let config = train_config(train_args)?;
    let system = load_system(kb)?;
    let records = load_records(data_arg)?;
    let (train_set, test_set) = split_records(&records, split_args)?;
    let model = if fis_only {
        None
    } else if let Some(path) = bp_model {
        let model = ModelFile::read(path)
            .and_then(ModelFile::into_model::<f64>)
            .with_context(|| format!("model {}", path.display()))
            .map_err(data)?;
        Some(model)
    } else {
        Some(fit(&config, &train_set)?)
    };
    let report = evaluate(&system, model.as_ref(), &test_set).map_err(classify_err)?;
    print!("{}", report.render_table());
    if let Some(path) = report_path {
        emit(Some(path), &report.to_json())?;
    }
    Ok(())
}

fn cmd_sweep(
    spec: &SweepSpec,
    format: SweepFormat,
    phi: bool,
    out: Option<&Path>,
    kb: &KbArg,
) -> CmdResult {
    let system = load_system(kb)?;
    let grid = run_sweep(&system, spec).map_err(classify_err)?;
    let text = match format {
        SweepFormat::Csv => grid.to_csv(phi),
        SweepFormat::Svg => grid.to_svg(),
    };
    emit(out, &text)
}
