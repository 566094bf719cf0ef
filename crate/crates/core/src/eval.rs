//! Accuracy computation and report assembly: overall, per subset, per
//! question type, with optional candidate diagnostics attached.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::candidates::CandidateStats;
use crate::corpus::{ExampleSet, QuestionType, Subset};
use crate::error::{Error, Result};

/// Percentage of predictions matching their gold label.
pub fn accuracy(
    predictions: &HashMap<String, usize>,
    gold: &HashMap<String, usize>,
) -> Result<f64> {
    if predictions.is_empty() {
        return Err(Error::EmptyPredictions);
    }
    let mut correct = 0usize;
    for (id, &pred) in predictions {
        let &g = gold
            .get(id)
            .ok_or_else(|| Error::UnknownPredictionId(id.clone()))?;
        if pred == g {
            correct += 1;
        }
    }
    Ok(100.0 * correct as f64 / predictions.len() as f64)
}

/// Accuracy and size of one report group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupStat {
    pub accuracy: f64,
    pub count: usize,
}

/// Table-3-style cross-method counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MethodComparison {
    pub count_a_only: usize,
    pub count_b_only: usize,
}

/// Echo of the run configuration, carried into reports.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RunMetadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Full evaluation report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub overall_accuracy: f64,
    pub overall_count: usize,
    pub by_subset: BTreeMap<Subset, GroupStat>,
    pub by_qtype: BTreeMap<QuestionType, GroupStat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate_stats: Option<CandidateStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method_comparison: Option<MethodComparison>,
    pub run_metadata: RunMetadata,
}

/// Group predictions by the examples' subset and question type and
/// compute per-group accuracy, attaching any extra diagnostics.
pub fn breakdown_report(
    predictions: &HashMap<String, usize>,
    gold: &HashMap<String, usize>,
    examples: &ExampleSet,
    candidate_stats: Option<CandidateStats>,
    method_comparison: Option<MethodComparison>,
    run_metadata: RunMetadata,
) -> Result<EvalReport> {
    let overall_accuracy = accuracy(predictions, gold)?;
    let by_example: HashMap<&str, &crate::corpus::Example> = examples
        .examples
        .iter()
        .map(|e| (e.id.as_str(), e))
        .collect();

    let mut subset_counts: BTreeMap<Subset, (usize, usize)> = BTreeMap::new();
    let mut qtype_counts: BTreeMap<QuestionType, (usize, usize)> = BTreeMap::new();
    for (id, &pred) in predictions {
        let example = by_example
            .get(id.as_str())
            .ok_or_else(|| Error::UnknownPredictionId(id.clone()))?;
        let correct = (pred == gold[id]) as usize;
        let s = subset_counts.entry(example.subset).or_insert((0, 0));
        s.0 += correct;
        s.1 += 1;
        let q = qtype_counts.entry(example.qtype).or_insert((0, 0));
        q.0 += correct;
        q.1 += 1;
    }

    let group = |(correct, count): (usize, usize)| GroupStat {
        accuracy: 100.0 * correct as f64 / count as f64,
        count,
    };
    Ok(EvalReport {
        overall_accuracy,
        overall_count: predictions.len(),
        by_subset: subset_counts.into_iter().map(|(k, v)| (k, group(v))).collect(),
        by_qtype: qtype_counts.into_iter().map(|(k, v)| (k, group(v))).collect(),
        candidate_stats,
        method_comparison,
        run_metadata,
    })
}

impl EvalReport {
    pub fn save_json(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::json(path, e))?;
        fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn load_json(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::json(path, e))
    }

    /// One CSV row per (grouping, key, accuracy, count), full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("grouping,key,accuracy,count\n");
        let _ = writeln!(out, "overall,all,{},{}", self.overall_accuracy, self.overall_count);
        for (subset, stat) in &self.by_subset {
            let _ = writeln!(out, "subset,{},{},{}", subset, stat.accuracy, stat.count);
        }
        for (qtype, stat) in &self.by_qtype {
            let _ = writeln!(out, "qtype,{},{},{}", qtype, stat.accuracy, stat.count);
        }
        out
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    /// Human-readable rendering, accuracies to one decimal place.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "overall accuracy: {:.1}% ({} questions)",
            self.overall_accuracy, self.overall_count
        );
        if !self.by_subset.is_empty() {
            let _ = writeln!(out, "by subset:");
            for (subset, stat) in &self.by_subset {
                let _ = writeln!(out, "  {:<12} {:>5.1}%  (n={})", subset.to_string(), stat.accuracy, stat.count);
            }
        }
        if !self.by_qtype.is_empty() {
            let _ = writeln!(out, "by question type:");
            for (qtype, stat) in &self.by_qtype {
                let _ = writeln!(out, "  {:<12} {:>5.1}%  (n={})", qtype.to_string(), stat.accuracy, stat.count);
            }
        }
        if let Some(stats) = &self.candidate_stats {
            let _ = writeln!(
                out,
                "candidates: avg size {:.2}, including answer {:.1}%, random baseline {:.1}%",
                stats.avg_size, stats.pct_including_answer, stats.random_baseline
            );
        }
        if let Some(cmp) = &self.method_comparison {
            let _ = writeln!(
                out,
                "method comparison: A-only {}, B-only {}",
                cmp.count_a_only, cmp.count_b_only
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Example, Split};

    fn preds(pairs: &[(&str, usize)]) -> HashMap<String, usize> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn accuracy_basics() {
        let gold = preds(&[("a", 0), ("b", 1), ("c", 2), ("d", 3)]);
        assert_eq!(accuracy(&gold, &gold).unwrap(), 100.0);
        let one_right = preds(&[("a", 0), ("b", 0), ("c", 0), ("d", 0)]);
        assert_eq!(accuracy(&one_right, &gold).unwrap(), 25.0);
    }

    #[test]
    fn accuracy_errors() {
        let gold = preds(&[("a", 0)]);
        assert!(matches!(
            accuracy(&HashMap::new(), &gold),
            Err(Error::EmptyPredictions)
        ));
        let stranger = preds(&[("zz", 0)]);
        assert!(matches!(
            accuracy(&stranger, &gold),
            Err(Error::UnknownPredictionId(_))
        ));
    }

    fn toy_set() -> ExampleSet {
        let make = |id: &str, question: &str, subset| {
            Example::new(
                id,
                "some passage text",
                question,
                vec!["a".into(), "b".into(), "c".into(), "d".into()],
                Some(0),
                subset,
            )
            .unwrap()
        };
        ExampleSet::new(
            "toy",
            Split::Dev,
            vec![
                make("e1", "Why is it so?", Subset::RaceM),
                make("e2", "What is it?", Subset::RaceM),
                make("e3", "The answer is _.", Subset::RaceH),
                make("e4", "Why not?", Subset::RaceH),
            ],
        )
        .unwrap()
    }

    #[test]
    fn breakdown_groups_and_recomposes() {
        let set = toy_set();
        let gold = set.gold_map();
        let predictions = preds(&[("e1", 0), ("e2", 1), ("e3", 0), ("e4", 2)]);
        let report = breakdown_report(
            &predictions,
            &gold,
            &set,
            None,
            None,
            RunMetadata::default(),
        )
        .unwrap();

        assert_eq!(report.overall_count, 4);
        assert_eq!(report.by_subset.len(), 2);
        assert_eq!(report.by_subset[&Subset::RaceM].count, 2);
        assert_eq!(report.by_subset[&Subset::RaceM].accuracy, 50.0);
        let qtypes: Vec<_> = report.by_qtype.keys().copied().collect();
        assert_eq!(
            qtypes,
            vec![QuestionType::Why, QuestionType::What, QuestionType::Other]
        );

        // counts recompose the total for both groupings
        let subset_total: usize = report.by_subset.values().map(|s| s.count).sum();
        let qtype_total: usize = report.by_qtype.values().map(|s| s.count).sum();
        assert_eq!(subset_total, report.overall_count);
        assert_eq!(qtype_total, report.overall_count);

        // count-weighted subset accuracies recompose the overall accuracy
        let weighted: f64 = report
            .by_subset
            .values()
            .map(|s| s.accuracy * s.count as f64)
            .sum::<f64>()
            / report.overall_count as f64;
        assert!((weighted - report.overall_accuracy).abs() < 1e-9);
    }

    #[test]
    fn single_subset_reports_single_key() {
        let set = toy_set();
        let gold = set.gold_map();
        let predictions = preds(&[("e1", 0), ("e2", 0)]);
        let report =
            breakdown_report(&predictions, &gold, &set, None, None, RunMetadata::default())
                .unwrap();
        assert_eq!(report.by_subset.len(), 1);
        assert!(report.by_subset.contains_key(&Subset::RaceM));
    }

    #[test]
    fn report_serialization_round_trips() {
        let tmp = tempfile::tempdir().unwrap();
        let path = tmp.path().join("report.json");
        let set = toy_set();
        let gold = set.gold_map();
        let predictions = preds(&[("e1", 0), ("e2", 1), ("e3", 3), ("e4", 0)]);
        let report = breakdown_report(
            &predictions,
            &gold,
            &set,
            Some(CandidateStats {
                avg_size: 3.0,
                pct_including_answer: 79.25,
                random_baseline: 79.25 / 3.0,
            }),
            Some(MethodComparison {
                count_a_only: 5,
                count_b_only: 2,
            }),
            RunMetadata {
                method: Some("sw".into()),
                seed: Some(7),
                ..Default::default()
            },
        )
        .unwrap();
        report.save_json(&path).unwrap();
        assert_eq!(EvalReport::load_json(&path).unwrap(), report);

        let csv = report.to_csv();
        assert!(csv.starts_with("grouping,key,accuracy,count\n"));
        assert!(csv.contains("overall,all,"));
        assert!(csv.contains("subset,race-m,"));
        assert!(csv.contains("qtype,why,"));
        let rows = csv.lines().count();
        assert_eq!(rows, 1 + 1 + report.by_subset.len() + report.by_qtype.len());
    }
}
