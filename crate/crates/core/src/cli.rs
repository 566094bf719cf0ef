//! File-based pipeline stages behind the `ingest | candidates | train |
//! eval` subcommands. Every stage is a pure function of its input files
//! and flags; re-runs write byte-identical output.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::candidates::{
    candidate_stats, compare_candidate_methods, load_candidate_sets, save_candidate_sets,
    select_candidates, CandidateSet, Preset, SelectionConfig,
};
use crate::corpus::{load_mctest, load_race, ExampleSet, Split};
use crate::error::Error;
use crate::eval::{breakdown_report, MethodComparison, RunMetadata};
use crate::matching::{load_eqa_predictions, save_choice_scores, score_choices, ScoreMethod};
use crate::objectives::{AnnealSchedule, ObjectiveKind, DEFAULT_TAU};
use crate::scorer::{predict_all, train, LinearScorer, TrainingConfig};

/// Top-level argument parser for the `mcqa` binary.
#[derive(Debug, Parser)]
#[command(name = "mcqa", version, about = "Unsupervised multiple-choice QA pipeline")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a dataset into the interchange JSONL format.
    Ingest(IngestArgs),
    /// Score choices and select candidate sets.
    Candidates(CandidatesArgs),
    /// Train the linear scorer on candidate sets.
    Train(TrainArgs),
    /// Evaluate a trained model and write reports.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DatasetKind {
    Race,
    Mc500,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Dataset family to load.
    #[arg(long, value_enum)]
    pub dataset: DatasetKind,
    /// RACE root directory (contains train/dev/test).
    #[arg(long)]
    pub root: Option<PathBuf>,
    /// MCTest tab-separated story file.
    #[arg(long)]
    pub stories: Option<PathBuf>,
    /// MCTest answer file parallel to the story file.
    #[arg(long)]
    pub answers: Option<PathBuf>,
    /// Split label (selects the RACE subdirectory).
    #[arg(long)]
    pub split: Split,
    /// Output interchange JSONL.
    #[arg(long)]
    pub out: PathBuf,
    /// Optional JSON counts summary.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CandidatesArgs {
    /// Interchange JSONL of examples.
    #[arg(long)]
    pub examples: PathBuf,
    /// Scoring method.
    #[arg(long)]
    pub method: ScoreMethod,
    /// EQA predictions JSONL (required with --method eqa).
    #[arg(long)]
    pub eqa_predictions: Option<PathBuf>,
    /// Named threshold/cap preset: race-sw|race-eqa|mc500-sw|mc500-eqa.
    #[arg(long)]
    pub preset: Option<Preset>,
    /// Score threshold t (overrides the preset).
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Candidate cap k (overrides the preset).
    #[arg(long)]
    pub top_k: Option<usize>,
    /// Output JSONL of per-choice scores.
    #[arg(long)]
    pub out_scores: PathBuf,
    /// Output JSONL of candidate sets.
    #[arg(long)]
    pub out_candidates: PathBuf,
    /// Optional JSON candidate statistics.
    #[arg(long)]
    pub out_stats: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Interchange JSONL of examples.
    #[arg(long)]
    pub examples: PathBuf,
    /// Candidate sets JSONL from the candidates stage.
    #[arg(long)]
    pub candidates: PathBuf,
    /// EQA predictions JSONL for the EQA feature.
    #[arg(long)]
    pub eqa_predictions: Option<PathBuf>,
    /// Training objective.
    #[arg(long)]
    pub objective: ObjectiveKind,
    /// MML/Hard-EM annealing.
    #[arg(long, default_value = "off")]
    pub anneal: Switch,
    /// Annealing horizon tau.
    #[arg(long, default_value_t = DEFAULT_TAU)]
    pub tau: f64,
    #[arg(long, default_value_t = 32)]
    pub batch_size: usize,
    #[arg(long, default_value_t = 1000)]
    pub warmup_steps: u64,
    /// Number of optimizer steps (required).
    #[arg(long)]
    pub total_steps: u64,
    #[arg(long, default_value_t = 0.1)]
    pub peak_lr: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output model JSON.
    #[arg(long)]
    pub out_model: PathBuf,
    /// Output training log CSV.
    #[arg(long)]
    pub out_log: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Interchange JSONL of examples with gold labels.
    #[arg(long)]
    pub examples: PathBuf,
    /// Trained model JSON.
    #[arg(long)]
    pub model: PathBuf,
    /// EQA predictions JSONL for the EQA feature.
    #[arg(long)]
    pub eqa_predictions: Option<PathBuf>,
    /// Two candidate-set files to cross-compare against gold.
    #[arg(long, num_args = 2, value_names = ["SETS_A", "SETS_B"])]
    pub compare: Option<Vec<PathBuf>>,
    /// Output report JSON.
    #[arg(long)]
    pub out_json: PathBuf,
    /// Output report CSV.
    #[arg(long)]
    pub out_csv: PathBuf,
    /// Metadata echoed into the report.
    #[arg(long)]
    pub method: Option<ScoreMethod>,
    #[arg(long)]
    pub objective: Option<ObjectiveKind>,
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub top_k: Option<usize>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// on/off flag values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Switch {
    On,
    Off,
}

impl Switch {
    pub fn is_on(self) -> bool {
        matches!(self, Switch::On)
    }
}

impl clap::ValueEnum for Preset {
    fn value_variants<'a>() -> &'a [Self] {
        &[Preset::RaceSw, Preset::RaceEqa, Preset::Mc500Sw, Preset::Mc500Eqa]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            Preset::RaceSw => "race-sw",
            Preset::RaceEqa => "race-eqa",
            Preset::Mc500Sw => "mc500-sw",
            Preset::Mc500Eqa => "mc500-eqa",
        }))
    }
}

impl clap::ValueEnum for ScoreMethod {
    fn value_variants<'a>() -> &'a [Self] {
        &[ScoreMethod::Sw, ScoreMethod::Eqa]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            ScoreMethod::Sw => "sw",
            ScoreMethod::Eqa => "eqa",
        }))
    }
}

impl clap::ValueEnum for ObjectiveKind {
    fn value_variants<'a>() -> &'a [Self] {
        &[
            ObjectiveKind::HighestOnly,
            ObjectiveKind::Mml,
            ObjectiveKind::HardEm,
        ]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            ObjectiveKind::HighestOnly => "highest",
            ObjectiveKind::Mml => "mml",
            ObjectiveKind::HardEm => "hard-em",
        }))
    }
}

impl clap::ValueEnum for Split {
    fn value_variants<'a>() -> &'a [Self] {
        &[Split::Train, Split::Dev, Split::Test]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.dir_name()))
    }
}

/// Usage/validation problems exit with 2, runtime failures with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Runtime(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Runtime(e)
    }
}

fn require_exists(path: &Path, what: &str) -> Result<(), CliError> {
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "{what} not found: {}",
            path.display()
        )));
    }
    Ok(())
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "examples".to_string())
}

/// Dispatch a parsed command line.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ingest(args) => cmd_ingest(&args),
        Command::Candidates(args) => cmd_candidates(&args),
        Command::Train(args) => cmd_train(&args),
        Command::Eval(args) => cmd_eval(&args),
    }
}

#[derive(Serialize)]
struct IngestSummary {
    name: String,
    split: Split,
    total: usize,
    by_subset: BTreeMap<String, usize>,
}

/// Load a dataset and write the interchange JSONL plus a counts summary.
pub fn cmd_ingest(args: &IngestArgs) -> Result<(), CliError> {
    let set = match args.dataset {
        DatasetKind::Race => {
            let root = args.root.as_ref().ok_or_else(|| {
                CliError::Usage("--dataset race requires --root".to_string())
            })?;
            require_exists(root, "RACE root")?;
            load_race(root, args.split)?
        }
        DatasetKind::Mc500 => {
            let stories = args.stories.as_ref().ok_or_else(|| {
                CliError::Usage("--dataset mc500 requires --stories".to_string())
            })?;
            let answers = args.answers.as_ref().ok_or_else(|| {
                CliError::Usage("--dataset mc500 requires --answers".to_string())
            })?;
            require_exists(stories, "story file")?;
            require_exists(answers, "answer file")?;
            let mut set = load_mctest(stories, answers)?;
            set.split = args.split;
            set
        }
    };
    set.save_jsonl(&args.out)?;

    let summary = IngestSummary {
        name: set.name.clone(),
        split: set.split,
        total: set.len(),
        by_subset: set
            .subset_counts()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    };
    let text = serde_json::to_string_pretty(&summary)
        .map_err(|e| CliError::Runtime(Error::json(&args.out, e)))?;
    println!("{text}");
    if let Some(path) = &args.summary {
        std::fs::write(path, text + "\n").map_err(|e| CliError::Runtime(Error::io(path, e)))?;
    }
    Ok(())
}

fn selection_config(args: &CandidatesArgs) -> Result<SelectionConfig, CliError> {
    let base = args.preset.map(Preset::config);
    let threshold = args.threshold.or(base.map(|c| c.threshold));
    let top_k = args.top_k.or(base.map(|c| c.max_candidates));
    match (threshold, top_k) {
        (Some(threshold), Some(max_candidates)) => {
            SelectionConfig::new(threshold, max_candidates)
                .map_err(|e| CliError::Usage(e.to_string()))
        }
        _ => Err(CliError::Usage(
            "need --preset or both --threshold and --top-k".to_string(),
        )),
    }
}

/// Score all examples, select candidate sets, and report diagnostics.
pub fn cmd_candidates(args: &CandidatesArgs) -> Result<(), CliError> {
    require_exists(&args.examples, "examples file")?;
    match (args.method, &args.eqa_predictions) {
        (ScoreMethod::Eqa, None) => {
            return Err(CliError::Usage(
                "--method eqa requires --eqa-predictions".to_string(),
            ))
        }
        (ScoreMethod::Sw, Some(_)) => {
            return Err(CliError::Usage(
                "--eqa-predictions only applies to --method eqa".to_string(),
            ))
        }
        _ => {}
    }
    if let Some(path) = &args.eqa_predictions {
        require_exists(path, "EQA predictions file")?;
    }
    let config = selection_config(args)?;

    let set = ExampleSet::load_jsonl(&args.examples, file_stem(&args.examples), Split::Train)?;
    if let Some(min_n) = set.examples.iter().map(|e| e.num_choices()).min() {
        if config.max_candidates >= min_n {
            return Err(CliError::Usage(format!(
                "--top-k {} must be smaller than the number of choices ({})",
                config.max_candidates, min_n
            )));
        }
    }
    let predictions = match &args.eqa_predictions {
        Some(path) => Some(load_eqa_predictions(path)?),
        None => None,
    };

    let mut scores = Vec::with_capacity(set.len());
    for example in &set.examples {
        let pred = predictions.as_ref().and_then(|m| m.get(&example.id));
        scores.push(score_choices(example, args.method, pred)?);
    }
    save_choice_scores(&scores, &args.out_scores)?;

    let sets: Vec<CandidateSet> = scores
        .iter()
        .map(|s| select_candidates(s, &config))
        .collect();
    save_candidate_sets(&sets, &args.out_candidates)?;

    let nonempty = sets.iter().filter(|s| !s.is_empty()).count();
    println!(
        "scored {} examples (method {}, t={}, k={}); {} nonempty candidate sets",
        set.len(),
        args.method,
        config.threshold,
        config.max_candidates,
        nonempty
    );

    let gold = set.gold_map();
    if sets.is_empty() {
        return Ok(());
    }
    if gold.len() == set.len() {
        let stats = candidate_stats(&sets, &gold)?;
        println!(
            "candidate stats: avg size {:.2} (A), including answer {:.1}% (B), random baseline {:.1}% (B/A)",
            stats.avg_size, stats.pct_including_answer, stats.random_baseline
        );
        if let Some(path) = &args.out_stats {
            let text = serde_json::to_string_pretty(&stats)
                .map_err(|e| CliError::Runtime(Error::json(path, e)))?;
            std::fs::write(path, text + "\n")
                .map_err(|e| CliError::Runtime(Error::io(path, e)))?;
        }
    } else {
        println!("candidate stats skipped: gold labels incomplete");
    }
    Ok(())
}

/// Train the scorer from example and candidate files.
pub fn cmd_train(args: &TrainArgs) -> Result<(), CliError> {
    require_exists(&args.examples, "examples file")?;
    require_exists(&args.candidates, "candidates file")?;
    if let Some(path) = &args.eqa_predictions {
        require_exists(path, "EQA predictions file")?;
    }
    let anneal = if args.anneal.is_on() {
        Some(AnnealSchedule::new(args.tau).map_err(|e| CliError::Usage(e.to_string()))?)
    } else {
        None
    };
    let config = TrainingConfig {
        batch_size: args.batch_size,
        warmup_steps: args.warmup_steps,
        total_steps: args.total_steps,
        peak_lr: args.peak_lr,
        seed: args.seed,
        objective: args.objective,
        anneal,
    };
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let set = ExampleSet::load_jsonl(&args.examples, file_stem(&args.examples), Split::Train)?;
    let cands = load_candidate_sets(&args.candidates)?;
    let predictions = match &args.eqa_predictions {
        Some(path) => Some(load_eqa_predictions(path)?),
        None => None,
    };

    let (scorer, log) = train(&set.examples, &cands, predictions.as_ref(), &config)?;
    scorer.save_json(&args.out_model)?;
    log.save_csv(&args.out_log)?;
    let last_loss = log.records.last().map(|r| r.loss);
    println!(
        "trained {} steps (objective {}, anneal {}, seed {}); final loss {}",
        log.records.len(),
        args.objective,
        if args.anneal.is_on() { "on" } else { "off" },
        args.seed,
        last_loss.map(|l| format!("{l:.4}")).unwrap_or_else(|| "n/a".to_string())
    );
    Ok(())
}

/// Evaluate a model over a labeled split and write the reports.
pub fn cmd_eval(args: &EvalArgs) -> Result<(), CliError> {
    require_exists(&args.examples, "examples file")?;
    require_exists(&args.model, "model file")?;
    if let Some(path) = &args.eqa_predictions {
        require_exists(path, "EQA predictions file")?;
    }
    if let Some(pair) = &args.compare {
        for path in pair {
            require_exists(path, "candidate-set file")?;
        }
    }

    let set = ExampleSet::load_jsonl(&args.examples, file_stem(&args.examples), Split::Test)?;
    let scorer = LinearScorer::load_json(&args.model)?;
    let predictions_eqa = match &args.eqa_predictions {
        Some(path) => Some(load_eqa_predictions(path)?),
        None => None,
    };

    let predicted = predict_all(&scorer, &set.examples, predictions_eqa.as_ref());
    let gold = set.gold_map();

    let comparison = match &args.compare {
        Some(pair) => {
            let sets_a = load_candidate_sets(&pair[0])?;
            let sets_b = load_candidate_sets(&pair[1])?;
            let (count_a_only, count_b_only) = compare_candidate_methods(&sets_a, &sets_b, &gold)?;
            Some(MethodComparison {
                count_a_only,
                count_b_only,
            })
        }
        None => None,
    };

    let metadata = RunMetadata {
        method: args.method.map(|m| m.to_string()),
        objective: args.objective.map(|o| o.to_string()),
        threshold: args.threshold,
        top_k: args.top_k,
        tau: args.tau,
        seed: args.seed,
    };
    let report = breakdown_report(&predicted, &gold, &set, None, comparison, metadata)?;
    report.save_json(&args.out_json)?;
    report.save_csv(&args.out_csv)?;
    print!("{}", report.render());
    Ok(())
}
