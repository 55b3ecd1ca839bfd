//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage, input or parse errors, 2 when the
//! data are valid but the requested statistic is degenerate.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::comparison::{mcnemar, paired_bootstrap, PairedOutcomes, TrialSelector};
use crate::design::{budget_plan, icc_convergence, SubsampleMode};
use crate::ingest::{build_matrix, build_matrix_for_level, parse_trials, write_trials, LogFormat};
use crate::reporting::{
    analyze, emit_plot_data, make_card, parse_card_meta, render_card, to_json_line, CardFormat, ComparisonReport,
    PlotRecords,
};
use crate::simulator::{matrix_records, sample_dataset, true_components, DifficultyModel, SimSpec};
use crate::stats::IccVariant;
use crate::{Error, Result, TrialMatrix};

#[derive(Debug, Parser)]
#[command(name = "evalrel", version, about = "Reliability analysis for stochastic agent evaluations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Accuracy, variance decomposition, ICC and per-question profile for one agent.
    Analyze(AnalyzeArgs),
    /// McNemar test and paired bootstrap for two agents.
    Compare(CompareArgs),
    /// ICC as a function of trials per question (CSV).
    Converge(ConvergeArgs),
    /// Allocate a trial budget between questions and repeats.
    Budget(BudgetArgs),
    /// Write a synthetic trial log with known variance components.
    Simulate(SimulateArgs),
    /// Build an Evaluation Card from metadata and an analysis document.
    Card(CardArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Md,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SelectorArg {
    First,
    Majority,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Prefix,
    Random,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Paper,
    Anova,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    agent: String,
    #[arg(long)]
    benchmark: String,
    #[arg(long)]
    level: Option<String>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    agent_a: String,
    #[arg(long)]
    agent_b: String,
    #[arg(long)]
    benchmark: String,
    #[arg(long)]
    replicates: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "first")]
    selector: SelectorArg,
}

#[derive(Debug, Args)]
struct ConvergeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    agent: String,
    #[arg(long)]
    benchmark: String,
    #[arg(long, value_delimiter = ',', required = true)]
    trials: Vec<usize>,
    #[arg(long)]
    resamples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value = "random")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "paper")]
    variant: VariantArg,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Between-question variance σ²_b.
    #[arg(long)]
    sigma_b: f64,
    /// Within-question variance σ²_w.
    #[arg(long)]
    sigma_w: f64,
    #[arg(long)]
    budget: u64,
    #[arg(long)]
    n_max: u64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("difficulty").required(true).args(["beta", "fixed"])))]
struct SimulateArgs {
    #[arg(long)]
    questions: usize,
    #[arg(long)]
    trials: usize,
    /// Beta difficulty parameters `A,B`.
    #[arg(long, value_delimiter = ',')]
    beta: Option<Vec<f64>>,
    /// Per-question probabilities, cycled over the questions.
    #[arg(long, value_delimiter = ',')]
    fixed: Option<Vec<f64>>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct CardArgs {
    #[arg(long)]
    meta: PathBuf,
    #[arg(long)]
    analysis: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    1
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(Output::Stdout(text)) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                1
            }
        },
        Ok(Output::Written) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_degenerate() {
                2
            } else {
                1
            }
        }
    }
}

enum Output {
    Stdout(String),
    /// The document went to a file.
    Written,
}

fn read_matrix_input(path: &Path) -> Result<Vec<crate::TrialRecord>> {
    let file = fs::File::open(path)
        .map_err(|e| Error::invalid(format!("cannot open {}: {e}", path.display())))?;
    parse_trials(std::io::BufReader::new(file), LogFormat::from_path(path))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

fn dispatch(command: Command) -> Result<Output> {
    match command {
        Command::Analyze(a) => {
            let records = read_matrix_input(&a.input)?;
            let matrix = build_matrix_for_level(&records, &a.agent, &a.benchmark, a.level.as_deref())?;
            let report = analyze(&matrix, a.alpha)?;
            let text = match a.format {
                OutputFormat::Json => to_json_line(&report)?,
                OutputFormat::Md => report.to_markdown(),
            };
            match a.out {
                Some(path) => {
                    fs::write(&path, text)?;
                    Ok(Output::Written)
                }
                None => Ok(Output::Stdout(text)),
            }
        }
        Command::Compare(c) => {
            let records = read_matrix_input(&c.input)?;
            let a = build_matrix(&records, &c.agent_a, &c.benchmark)?;
            let b = build_matrix(&records, &c.agent_b, &c.benchmark)?;
            let pairs = PairedOutcomes::from_matrices(&a, &b)?;
            let selector = match c.selector {
                SelectorArg::First => TrialSelector::FirstTrial,
                SelectorArg::Majority => TrialSelector::MajorityVote,
            };
            let test = mcnemar(&pairs, selector)?;
            let boot = paired_bootstrap(&pairs, c.replicates, c.seed, c.alpha)?;
            let report = ComparisonReport::new(&c.benchmark, (&c.agent_a, &c.agent_b), &boot, &test, selector);
            Ok(Output::Stdout(to_json_line(&report)?))
        }
        Command::Converge(c) => {
            let records = read_matrix_input(&c.input)?;
            let matrix = build_matrix(&records, &c.agent, &c.benchmark)?;
            let mode = match c.mode {
                ModeArg::Prefix => SubsampleMode::Prefix,
                ModeArg::Random => SubsampleMode::Random,
            };
            let variant = match c.variant {
                VariantArg::Paper => IccVariant::PaperNaive,
                VariantArg::Anova => IccVariant::AnovaCorrected,
            };
            let points = icc_convergence(&matrix, &c.trials, c.resamples, c.seed, mode, variant)?;
            Ok(Output::Stdout(emit_plot_data(PlotRecords::Convergence(&points))?))
        }
        Command::Budget(b) => {
            let plan = budget_plan(b.sigma_b, b.sigma_w, b.budget, b.n_max)?;
            Ok(Output::Stdout(to_json_line(&plan)?))
        }
        Command::Simulate(s) => {
            let difficulty = match (s.beta, s.fixed) {
                (Some(ab), None) => match ab[..] {
                    [a, b] => DifficultyModel::Beta { a, b },
                    _ => return Err(Error::invalid("--beta takes exactly two values: A,B")),
                },
                (None, Some(ps)) => DifficultyModel::Fixed(ps),
                _ => return Err(Error::invalid("give exactly one of --beta or --fixed")),
            };
            let spec = SimSpec {
                n_questions: s.questions,
                trials_per_question: s.trials,
                difficulty,
                seed: s.seed,
            };
            let truth = true_components(&spec)?;
            let matrix: TrialMatrix = sample_dataset(&spec)?;
            fs::write(&s.out, write_trials(&matrix_records(&matrix), LogFormat::Jsonl))?;
            let sidecar = to_json_line(&truth)?;
            fs::write(sidecar_path(&s.out), &sidecar)?;
            Ok(Output::Stdout(sidecar))
        }
        Command::Card(c) => {
            let mut meta = parse_card_meta(&read_text(&c.meta)?)?;
            let report: crate::reporting::AnalysisReport = serde_json::from_str(&read_text(&c.analysis)?)?;
            if let Some(level) = &report.level {
                meta.entry("task_complexity_level".to_string()).or_insert_with(|| level.clone());
            }
            let (summary, decomp, estimate) = report.records(IccVariant::PaperNaive)?;
            let card = make_card(&meta, &summary, &decomp, &estimate)?;
            let format = match c.format {
                OutputFormat::Json => CardFormat::Json,
                OutputFormat::Md => CardFormat::Markdown,
            };
            Ok(Output::Stdout(render_card(&card, format)?))
        }
    }
}

/// `trials.jsonl` → `trials.truth.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("truth.json")
}
