//! Per-choice likelihood scoring: sliding-window lexical matching and
//! Gestalt (Ratcliff-Obershelp) matching of EQA answer spans.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::Example;
use crate::error::{Error, Result};

/// Word counts over a passage together with inverse-count weights
/// `IC(w) = ln(1 + 1/Count(w))`. Words absent from the passage weigh 0.
#[derive(Debug, Clone)]
pub struct InverseCountTable {
    counts: HashMap<String, usize>,
    ic: HashMap<String, f64>,
    total: usize,
}

/// Count passage tokens and precompute their inverse-count weights.
pub fn build_ic_table(passage: &[String]) -> InverseCountTable {
    let mut counts: HashMap<String, usize> = HashMap::new();
    for token in passage {
        *counts.entry(token.clone()).or_insert(0) += 1;
    }
    let ic = counts
        .iter()
        .map(|(w, &c)| (w.clone(), (1.0 + 1.0 / c as f64).ln()))
        .collect();
    InverseCountTable {
        counts,
        ic,
        total: passage.len(),
    }
}

impl InverseCountTable {
    /// Occurrences of `word` in the passage.
    pub fn count(&self, word: &str) -> usize {
        self.counts.get(word).copied().unwrap_or(0)
    }

    /// `ln(1 + 1/Count(word))`, or 0 for words not in the passage.
    pub fn ic(&self, word: &str) -> f64 {
        self.ic.get(word).copied().unwrap_or(0.0)
    }

    /// Total passage token count (the sum of all counts).
    pub fn total_tokens(&self) -> usize {
        self.total
    }
}

/// Sliding-window score of one choice against the passage.
///
/// The window alphabet `S` is the de-duplicated union of question and
/// choice tokens. For each start position `j = 1..|P|` the window sums
/// `IC` over passage positions `j+1 ..= j+|S|` whose token is in `S`;
/// positions past the passage end contribute 0. Returns the best
/// window sum, or 0 for an empty passage or empty union.
pub fn sliding_window_score(
    passage: &[String],
    question: &[String],
    choice: &[String],
    table: &InverseCountTable,
) -> f64 {
    let union: HashSet<&str> = question
        .iter()
        .chain(choice.iter())
        .map(String::as_str)
        .collect();
    let window = union.len();
    if passage.is_empty() || window == 0 {
        return 0.0;
    }
    let mut best = 0.0_f64;
    for j in 1..=passage.len() {
        let mut sum = 0.0_f64;
        for w in 1..=window {
            let pos = j + w; // 1-based passage position
            if pos > passage.len() {
                break;
            }
            let token = passage[pos - 1].as_str();
            if union.contains(token) {
                sum += table.ic(token);
            }
        }
        best = best.max(sum);
    }
    best
}

// Longest common substring of a[alo..ahi] and b[blo..bhi], as
// (start_a, start_b, len). Ties go to the smallest start in `a`, then
// the smallest start in `b`.
fn longest_match(a: &[char], b: &[char], alo: usize, ahi: usize, blo: usize, bhi: usize) -> (usize, usize, usize) {
    let mut best = (alo, blo, 0usize);
    if alo == ahi || blo == bhi {
        return best;
    }
    // run lengths ending at the previous row, rolled per i
    let mut prev = vec![0usize; bhi - blo];
    let mut cur = vec![0usize; bhi - blo];
    for (i, &ac) in a.iter().enumerate().take(ahi).skip(alo) {
        for (k, &bc) in b[blo..bhi].iter().enumerate() {
            if ac == bc {
                let len = if k == 0 { 1 } else { prev[k - 1] + 1 };
                cur[k] = len;
                if len > best.2 {
                    best = (i + 1 - len, blo + k + 1 - len, len);
                }
            } else {
                cur[k] = 0;
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    best
}

// Total matched character count: longest common substring, then the
// unmatched left and right remainders, processed with an explicit stack.
fn matched_chars(a: &[char], b: &[char]) -> usize {
    let mut total = 0usize;
    let mut stack = vec![(0usize, a.len(), 0usize, b.len())];
    while let Some((alo, ahi, blo, bhi)) = stack.pop() {
        let (ai, bj, len) = longest_match(a, b, alo, ahi, blo, bhi);
        if len == 0 {
            continue;
        }
        total += len;
        stack.push((alo, ai, blo, bj));
        stack.push((ai + len, ahi, bj + len, bhi));
    }
    total
}

/// Ratcliff-Obershelp similarity `2·K_m / (|a| + |b|)` over the
/// lowercased character sequences, where `K_m` counts the characters in
/// matching blocks found by recursive longest-common-substring
/// decomposition. Two empty strings compare as 1.
pub fn gestalt_similarity(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.to_lowercase().chars().collect();
    let b: Vec<char> = b.to_lowercase().chars().collect();
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let km = matched_chars(&a, &b);
    2.0 * km as f64 / (a.len() + b.len()) as f64
}

/// A predicted answer span from an external extractive-QA system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqaPrediction {
    #[serde(rename = "id")]
    pub question_id: String,
    pub span: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confidence: Option<f64>,
}

/// Gestalt similarity between the predicted span and a choice, on the
/// 0..100 scale the EQA thresholds are expressed in.
pub fn eqa_match_score(prediction: &EqaPrediction, choice_raw: &str) -> f64 {
    100.0 * gestalt_similarity(&prediction.span, choice_raw)
}

/// Which scoring system produced a score vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScoreMethod {
    #[serde(rename = "sw")]
    Sw,
    #[serde(rename = "eqa")]
    Eqa,
}

impl fmt::Display for ScoreMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoreMethod::Sw => "sw",
            ScoreMethod::Eqa => "eqa",
        })
    }
}

impl std::str::FromStr for ScoreMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "sw" => Ok(ScoreMethod::Sw),
            "eqa" => Ok(ScoreMethod::Eqa),
            other => Err(format!("unknown method '{other}' (expected sw|eqa)")),
        }
    }
}

/// Per-choice scores for one example, in choice order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChoiceScores {
    #[serde(rename = "id")]
    pub example_id: String,
    pub method: ScoreMethod,
    pub scores: Vec<f64>,
}

/// Score every choice of an example with the requested method.
///
/// Sliding-window scoring shares one inverse-count table across the
/// choices; EQA scoring requires a prediction whose id matches the
/// example.
pub fn score_choices(
    example: &Example,
    method: ScoreMethod,
    eqa: Option<&EqaPrediction>,
) -> Result<ChoiceScores> {
    let scores = match method {
        ScoreMethod::Sw => {
            let table = build_ic_table(&example.passage);
            example
                .choices
                .iter()
                .map(|choice| {
                    sliding_window_score(&example.passage, &example.question, choice, &table)
                })
                .collect()
        }
        ScoreMethod::Eqa => {
            let prediction =
                eqa.ok_or_else(|| Error::MissingEqaPrediction(example.id.clone()))?;
            if prediction.question_id != example.id {
                return Err(Error::MismatchedEqaPrediction {
                    expected: example.id.clone(),
                    found: prediction.question_id.clone(),
                });
            }
            example
                .choices_raw
                .iter()
                .map(|choice| eqa_match_score(prediction, choice))
                .collect()
        }
    };
    Ok(ChoiceScores {
        example_id: example.id.clone(),
        method,
        scores,
    })
}

/// Read an EQA predictions JSONL file into an id-keyed map.
pub fn load_eqa_predictions(path: &Path) -> Result<HashMap<String, EqaPrediction>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let mut map = HashMap::new();
    for line in reader.lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let pred: EqaPrediction = serde_json::from_str(&line).map_err(|e| Error::json(path, e))?;
        if map.insert(pred.question_id.clone(), pred).is_some() {
            return Err(Error::MalformedFile {
                path: path.to_path_buf(),
                detail: "duplicate prediction id".to_string(),
            });
        }
    }
    Ok(map)
}

/// Write per-choice score vectors as JSONL.
pub fn save_choice_scores(scores: &[ChoiceScores], path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    for s in scores {
        let line = serde_json::to_string(s).map_err(|e| Error::json(path, e))?;
        w.write_all(line.as_bytes())
            .and_then(|_| w.write_all(b"\n"))
            .map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Read a JSONL file of per-choice score vectors.
pub fn load_choice_scores(path: &Path) -> Result<Vec<ChoiceScores>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::json(path, e))?);
    }
    Ok(out)
}
