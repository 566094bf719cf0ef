//! Candidate-set selection (threshold + top-k) and the diagnostics
//! reported over candidate sets.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::ChoiceScores;

/// Threshold `t` and cap `k` for candidate selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectionConfig {
    pub threshold: f64,
    pub max_candidates: usize,
}

impl SelectionConfig {
    pub fn new(threshold: f64, max_candidates: usize) -> Result<Self> {
        if max_candidates == 0 {
            return Err(Error::InvalidConfig("max_candidates must be >= 1".into()));
        }
        Ok(SelectionConfig {
            threshold,
            max_candidates,
        })
    }
}

/// Named threshold/cap presets for the two corpora and two methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    RaceSw,
    RaceEqa,
    Mc500Sw,
    Mc500Eqa,
}

impl Preset {
    pub fn config(self) -> SelectionConfig {
        let (threshold, max_candidates) = match self {
            Preset::RaceSw => (0.0, 3),
            Preset::RaceEqa => (50.0, 3),
            Preset::Mc500Sw => (3.0, 2),
            Preset::Mc500Eqa => (50.0, 3),
        };
        SelectionConfig {
            threshold,
            max_candidates,
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "race-sw" => Ok(Preset::RaceSw),
            "race-eqa" => Ok(Preset::RaceEqa),
            "mc500-sw" => Ok(Preset::Mc500Sw),
            "mc500-eqa" => Ok(Preset::Mc500Eqa),
            other => Err(format!(
                "unknown preset '{other}' (expected race-sw|race-eqa|mc500-sw|mc500-eqa)"
            )),
        }
    }
}

/// One selected choice with its selection score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateEntry {
    pub choice: usize,
    pub score: f64,
}

/// The per-question candidate set: choices passing the threshold,
/// sorted by descending score (ascending choice index on ties) and
/// truncated to the cap. May be empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSet {
    #[serde(rename = "id")]
    pub example_id: String,
    #[serde(rename = "candidates")]
    pub entries: Vec<CandidateEntry>,
}

impl CandidateSet {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn contains(&self, choice: usize) -> bool {
        self.entries.iter().any(|e| e.choice == choice)
    }

    /// Choice indices in entry order (best first).
    pub fn choices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.choice)
    }
}

/// Filter scores by `score >= t`, rank them, and keep at most `k`.
pub fn select_candidates(scores: &ChoiceScores, config: &SelectionConfig) -> CandidateSet {
    let mut entries: Vec<CandidateEntry> = scores
        .scores
        .iter()
        .enumerate()
        .filter(|(_, &s)| s >= config.threshold)
        .map(|(choice, &score)| CandidateEntry { choice, score })
        .collect();
    entries.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| a.choice.cmp(&b.choice))
    });
    entries.truncate(config.max_candidates);
    CandidateSet {
        example_id: scores.example_id.clone(),
        entries,
    }
}

/// Average size (A), percent including the answer (B), and the
/// random-pick-from-candidates baseline B/A.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CandidateStats {
    pub avg_size: f64,
    pub pct_including_answer: f64,
    pub random_baseline: f64,
}

/// Candidate-set diagnostics over a whole split. Empty sets stay in
/// the denominator of the average.
pub fn candidate_stats(
    sets: &[CandidateSet],
    gold: &HashMap<String, usize>,
) -> Result<CandidateStats> {
    if sets.is_empty() {
        return Err(Error::InvalidConfig(
            "candidate_stats needs at least one candidate set".into(),
        ));
    }
    let mut size_sum = 0usize;
    let mut including = 0usize;
    for set in sets {
        let g = *gold
            .get(&set.example_id)
            .ok_or_else(|| Error::MissingGold(set.example_id.clone()))?;
        size_sum += set.len();
        if set.contains(g) {
            including += 1;
        }
    }
    let avg_size = size_sum as f64 / sets.len() as f64;
    let pct_including_answer = 100.0 * including as f64 / sets.len() as f64;
    let random_baseline = if avg_size > 0.0 {
        pct_including_answer / avg_size
    } else {
        0.0
    };
    Ok(CandidateStats {
        avg_size,
        pct_including_answer,
        random_baseline,
    })
}

/// Count examples where method A's candidates include the answer and
/// method B's do not, and vice versa. Both lists must cover the same
/// example ids.
pub fn compare_candidate_methods(
    sets_a: &[CandidateSet],
    sets_b: &[CandidateSet],
    gold: &HashMap<String, usize>,
) -> Result<(usize, usize)> {
    let ids_a: HashSet<&str> = sets_a.iter().map(|s| s.example_id.as_str()).collect();
    let ids_b: HashSet<&str> = sets_b.iter().map(|s| s.example_id.as_str()).collect();
    let difference = ids_a.symmetric_difference(&ids_b).count();
    if difference != 0 {
        return Err(Error::IdSetMismatch(difference));
    }
    let by_id_b: HashMap<&str, &CandidateSet> = sets_b
        .iter()
        .map(|s| (s.example_id.as_str(), s))
        .collect();
    let mut a_only = 0usize;
    let mut b_only = 0usize;
    for a in sets_a {
        let g = *gold
            .get(&a.example_id)
            .ok_or_else(|| Error::MissingGold(a.example_id.clone()))?;
        let b = by_id_b[a.example_id.as_str()];
        match (a.contains(g), b.contains(g)) {
            (true, false) => a_only += 1,
            (false, true) => b_only += 1,
            _ => {}
        }
    }
    Ok((a_only, b_only))
}

/// Argmax over the raw scores (ascending-index tie-break): the
/// no-training baseline prediction.
pub fn baseline_predict(scores: &ChoiceScores) -> usize {
    let mut best = 0usize;
    for (i, &s) in scores.scores.iter().enumerate().skip(1) {
        if s > scores.scores[best] {
            best = i;
        }
    }
    best
}

/// Write candidate sets as JSONL.
pub fn save_candidate_sets(sets: &[CandidateSet], path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    for set in sets {
        let line = serde_json::to_string(set).map_err(|e| Error::json(path, e))?;
        w.write_all(line.as_bytes())
            .and_then(|_| w.write_all(b"\n"))
            .map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Read a JSONL file of candidate sets.
pub fn load_candidate_sets(path: &Path) -> Result<Vec<CandidateSet>> {
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
