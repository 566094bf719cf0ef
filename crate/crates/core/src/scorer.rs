//! Trainable MCQA scorer: a linear softmax over per-choice lexical
//! features, trained with the weak-supervision objectives. The
//! featurize/forward/train/predict surface is the extension point for
//! heavier models.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::io::Write;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::candidates::CandidateSet;
use crate::corpus::Example;
use crate::error::{Error, Result};
use crate::matching::{
    build_ic_table, eqa_match_score, sliding_window_score, EqaPrediction, InverseCountTable,
};
use crate::objectives::{anneal_pick, loss_and_grad, AnnealSchedule, ObjectiveKind};

/// Number of per-choice features.
pub const FEATURE_COUNT: usize = 6;
/// Bumped whenever the feature definition changes; stored in model files.
pub const FEATURE_SET_VERSION: u32 = 1;
/// Passages are truncated to this many tokens before featurization.
pub const MAX_PASSAGE_TOKENS: usize = 320;

/// Per-choice feature values, standardized across the question's choices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: [f64; FEATURE_COUNT],
}

/// The passage window visible to the scorer.
fn passage_window(example: &Example) -> &[String] {
    let len = example.passage.len().min(MAX_PASSAGE_TOKENS);
    &example.passage[..len]
}

/// Inverse-count table over the truncated passage, as featurize expects.
pub fn build_feature_table(example: &Example) -> InverseCountTable {
    build_ic_table(passage_window(example))
}

/// Distinct tokens in first-occurrence order.
fn distinct(tokens: &[String]) -> Vec<&str> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in tokens {
        if seen.insert(t.as_str()) {
            out.push(t.as_str());
        }
    }
    out
}

fn raw_features(
    example: &Example,
    eqa: Option<&EqaPrediction>,
    table: &InverseCountTable,
) -> Vec<[f64; FEATURE_COUNT]> {
    let passage = passage_window(example);
    let passage_vocab: HashSet<&str> = passage.iter().map(String::as_str).collect();
    let question_vocab: HashSet<&str> = example.question.iter().map(String::as_str).collect();

    example
        .choices
        .iter()
        .zip(&example.choices_raw)
        .map(|(choice, choice_raw)| {
            let sw = sliding_window_score(passage, &example.question, choice, table);
            let eqa_score = eqa.map(|p| eqa_match_score(p, choice_raw)).unwrap_or(0.0);
            let choice_vocab = distinct(choice);
            let in_passage = choice_vocab
                .iter()
                .filter(|w| passage_vocab.contains(**w))
                .count();
            let in_question = choice_vocab
                .iter()
                .filter(|w| question_vocab.contains(**w))
                .count();
            let (passage_overlap, question_overlap) = if choice_vocab.is_empty() {
                (0.0, 0.0)
            } else {
                (
                    in_passage as f64 / choice_vocab.len() as f64,
                    in_question as f64 / choice_vocab.len() as f64,
                )
            };
            let ic_overlap: f64 = choice_vocab
                .iter()
                .filter(|w| passage_vocab.contains(**w))
                .map(|w| table.ic(w))
                .sum();
            let log_len = (1.0 + choice.len() as f64).ln();
            [sw, eqa_score, passage_overlap, question_overlap, ic_overlap, log_len]
        })
        .collect()
}

/// Standardize each feature across the question's choices to mean 0 and
/// unit variance; a feature with zero variance standardizes to zeros.
fn standardize(raw: &mut [[f64; FEATURE_COUNT]]) {
    let n = raw.len();
    if n == 0 {
        return;
    }
    for f in 0..FEATURE_COUNT {
        let mean = raw.iter().map(|v| v[f]).sum::<f64>() / n as f64;
        let var = raw.iter().map(|v| (v[f] - mean).powi(2)).sum::<f64>() / n as f64;
        if var == 0.0 {
            for v in raw.iter_mut() {
                v[f] = 0.0;
            }
        } else {
            let std = var.sqrt();
            for v in raw.iter_mut() {
                v[f] = (v[f] - mean) / std;
            }
        }
    }
}

/// Compute the per-choice feature vectors for one example.
///
/// Raw features per choice: sliding-window score, EQA gestalt score (0
/// without a prediction), passage and question token-overlap fractions,
/// IC-weighted passage overlap, and log choice length; each feature is
/// then standardized across the choices. `table` must come from
/// [`build_feature_table`] for the same example.
pub fn featurize(
    example: &Example,
    eqa: Option<&EqaPrediction>,
    table: &InverseCountTable,
) -> Vec<FeatureVector> {
    let mut raw = raw_features(example, eqa, table);
    standardize(&mut raw);
    raw.into_iter().map(|values| FeatureVector { values }).collect()
}

/// Linear softmax over feature vectors: `P(c_i | p; q)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearScorer {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl LinearScorer {
    /// All-zero parameters: uniform predictions.
    pub fn zeroed() -> Self {
        LinearScorer {
            weights: vec![0.0; FEATURE_COUNT],
            bias: 0.0,
        }
    }

    fn logit(&self, features: &FeatureVector) -> f64 {
        let mut z = self.bias;
        for (w, x) in self.weights.iter().zip(features.values.iter()) {
            z += w * x;
        }
        z
    }

    /// Write the model as JSON with its feature-set version.
    pub fn save_json(&self, path: &Path) -> Result<()> {
        let file = ModelFile {
            weights: self.weights.clone(),
            bias: self.bias,
            feature_set_version: FEATURE_SET_VERSION,
        };
        let text = serde_json::to_string_pretty(&file).map_err(|e| Error::json(path, e))?;
        fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }

    /// Read a model written by [`LinearScorer::save_json`], rejecting
    /// files from a different feature-set version.
    pub fn load_json(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let file: ModelFile = serde_json::from_str(&text).map_err(|e| Error::json(path, e))?;
        if file.feature_set_version != FEATURE_SET_VERSION {
            return Err(Error::ModelVersionMismatch {
                path: path.to_path_buf(),
                found: file.feature_set_version,
                expected: FEATURE_SET_VERSION,
            });
        }
        if file.weights.len() != FEATURE_COUNT {
            return Err(Error::MalformedFile {
                path: path.to_path_buf(),
                detail: format!("expected {} weights, got {}", FEATURE_COUNT, file.weights.len()),
            });
        }
        Ok(LinearScorer {
            weights: file.weights,
            bias: file.bias,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    weights: Vec<f64>,
    bias: f64,
    feature_set_version: u32,
}

/// Softmax probabilities over the choices.
pub fn forward(scorer: &LinearScorer, features: &[FeatureVector]) -> Vec<f64> {
    let logits: Vec<f64> = features.iter().map(|f| scorer.logit(f)).collect();
    softmax(&logits)
}

fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&l| (l - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.iter().map(|&e| e / sum).collect()
}

/// Argmax over forward probabilities across all choices, lowest index
/// on ties. No candidate filtering happens at test time.
pub fn predict(
    scorer: &LinearScorer,
    example: &Example,
    eqa: Option<&EqaPrediction>,
    table: &InverseCountTable,
) -> usize {
    let features = featurize(example, eqa, table);
    let probs = forward(scorer, &features);
    let mut best = 0usize;
    for (i, &p) in probs.iter().enumerate().skip(1) {
        if p > probs[best] {
            best = i;
        }
    }
    best
}

/// Predict every example, building each feature table internally.
pub fn predict_all(
    scorer: &LinearScorer,
    examples: &[Example],
    eqa: Option<&HashMap<String, EqaPrediction>>,
) -> HashMap<String, usize> {
    examples
        .iter()
        .map(|example| {
            let table = build_feature_table(example);
            let pred = eqa.and_then(|m| m.get(&example.id));
            (example.id.clone(), predict(scorer, example, pred, &table))
        })
        .collect()
}

/// Training hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingConfig {
    pub batch_size: usize,
    pub warmup_steps: u64,
    pub total_steps: u64,
    pub peak_lr: f64,
    pub seed: u64,
    pub objective: ObjectiveKind,
    pub anneal: Option<AnnealSchedule>,
}

impl TrainingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.batch_size == 0 {
            return Err(Error::InvalidConfig("batch_size must be >= 1".into()));
        }
        if self.warmup_steps > self.total_steps {
            return Err(Error::InvalidConfig(format!(
                "warmup_steps ({}) exceeds total_steps ({})",
                self.warmup_steps, self.total_steps
            )));
        }
        if !self.peak_lr.is_finite() || self.peak_lr <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "peak_lr must be > 0, got {}",
                self.peak_lr
            )));
        }
        Ok(())
    }
}

/// Linear warmup to `peak_lr` at `warmup_steps`, then linear decay to 0
/// at `total_steps`. Steps are 1-based.
pub fn learning_rate(step: u64, config: &TrainingConfig) -> f64 {
    if config.total_steps == 0 || step > config.total_steps {
        return 0.0;
    }
    if config.warmup_steps > 0 && step <= config.warmup_steps {
        config.peak_lr * step as f64 / config.warmup_steps as f64
    } else {
        // reachable only with warmup < step <= total, so the span is >= 1
        let remaining = (config.total_steps - step) as f64;
        let decay_span = (config.total_steps - config.warmup_steps) as f64;
        config.peak_lr * remaining / decay_span
    }
}

/// One row of the training log.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainRecord {
    pub step: u64,
    pub objective: ObjectiveKind,
    pub loss: f64,
    pub lr: f64,
}

/// Per-step loss/lr records, written as CSV.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrainLog {
    pub records: Vec<TrainRecord>,
}

impl TrainLog {
    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = std::io::BufWriter::new(file);
        writeln!(w, "step,objective,loss,lr").map_err(|e| Error::io(path, e))?;
        for r in &self.records {
            writeln!(w, "{},{},{},{}", r.step, r.objective, r.loss, r.lr)
                .map_err(|e| Error::io(path, e))?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }
}

struct TrainInstance {
    features: Vec<FeatureVector>,
    cands: CandidateSet,
}

/// Train a linear scorer on candidate sets with mini-batch gradient
/// descent under the warmup/decay schedule.
///
/// Examples whose candidate set is empty or missing are dropped from
/// the stream. Gold labels are stripped before any feature or loss
/// computation. Each epoch reshuffles with the seeded rng; when
/// annealing is configured the objective is re-picked every step,
/// otherwise the configured objective applies throughout. Identical
/// inputs and seed reproduce the log and the weights bit for bit.
pub fn train(
    examples: &[Example],
    cands: &[CandidateSet],
    eqa: Option<&HashMap<String, EqaPrediction>>,
    config: &TrainingConfig,
) -> Result<(LinearScorer, TrainLog)> {
    config.validate()?;
    let ids: HashSet<&str> = examples.iter().map(|e| e.id.as_str()).collect();
    for set in cands {
        if !ids.contains(set.example_id.as_str()) {
            return Err(Error::UnknownPredictionId(set.example_id.clone()));
        }
    }
    let cands_by_id: HashMap<&str, &CandidateSet> = cands
        .iter()
        .map(|s| (s.example_id.as_str(), s))
        .collect();

    // featurize once up front; training never sees gold labels
    let mut instances: Vec<TrainInstance> = Vec::new();
    for example in examples {
        let Some(&set) = cands_by_id.get(example.id.as_str()) else {
            continue;
        };
        if set.is_empty() {
            continue;
        }
        let blind = example.without_gold();
        let table = build_feature_table(&blind);
        let pred = eqa.and_then(|m| m.get(&blind.id));
        instances.push(TrainInstance {
            features: featurize(&blind, pred, &table),
            cands: set.clone(),
        });
    }
    if instances.is_empty() {
        return Err(Error::NoTrainableExamples);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut scorer = LinearScorer::zeroed();
    let mut log = TrainLog::default();

    let n = instances.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut cursor = n; // forces a shuffle before the first batch

    for step in 1..=config.total_steps {
        let lr = learning_rate(step, config);
        let kind = match &config.anneal {
            Some(schedule) => anneal_pick(step, schedule, &mut rng),
            None => config.objective,
        };

        if cursor >= n {
            order.shuffle(&mut rng);
            cursor = 0;
        }
        let batch_end = (cursor + config.batch_size).min(n);
        let batch = &order[cursor..batch_end];
        cursor = batch_end;

        let mut grad_w = [0.0_f64; FEATURE_COUNT];
        let mut grad_b = 0.0_f64;
        let mut loss_sum = 0.0_f64;
        for &idx in batch {
            let instance = &instances[idx];
            let logits: Vec<f64> = instance.features.iter().map(|f| scorer.logit(f)).collect();
            let result = loss_and_grad(&logits, &instance.cands, kind)?;
            loss_sum += result.loss;
            for (g, features) in result.grad_logits.iter().zip(&instance.features) {
                for (acc, x) in grad_w.iter_mut().zip(features.values.iter()) {
                    *acc += g * x;
                }
                grad_b += g;
            }
        }
        let scale = 1.0 / batch.len() as f64;
        for (w, g) in scorer.weights.iter_mut().zip(grad_w.iter()) {
            *w -= lr * g * scale;
        }
        scorer.bias -= lr * grad_b * scale;

        log.records.push(TrainRecord {
            step,
            objective: kind,
            loss: loss_sum * scale,
            lr,
        });
    }

    Ok((scorer, log))
}
