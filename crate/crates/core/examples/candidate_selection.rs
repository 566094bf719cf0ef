//! Turn per-choice scores into candidate sets and inspect the
//! diagnostics: average size (A), percent including the answer (B),
//! and the random baseline B/A.
//!
//! Run: `cargo run --example candidate_selection`

use std::collections::HashMap;

use mcqa::candidates::{candidate_stats, select_candidates, Preset, SelectionConfig};
use mcqa::matching::{ChoiceScores, ScoreMethod};

fn main() {
    for preset in ["race-sw", "race-eqa", "mc500-sw", "mc500-eqa"] {
        let config = preset.parse::<Preset>().unwrap().config();
        println!(
            "preset {preset:<10} t = {:<4} k = {}",
            config.threshold, config.max_candidates
        );
    }

    let scores = ChoiceScores {
        example_id: "demo-q0".into(),
        method: ScoreMethod::Sw,
        scores: vec![4.8, 0.9, 3.1, 3.1],
    };
    println!("\nscores: {:?}", scores.scores);
    for (t, k) in [(0.0, 3), (3.0, 2), (5.0, 3)] {
        let set = select_candidates(&scores, &SelectionConfig::new(t, k).unwrap());
        let picked: Vec<_> = set.entries.iter().map(|e| (e.choice, e.score)).collect();
        println!("  t = {t}, k = {k} -> {picked:?}");
    }

    // diagnostics over a small batch; empty sets stay in the average
    let config = SelectionConfig::new(3.0, 2).unwrap();
    let batch = [
        ("q0", vec![4.8, 0.9, 3.1, 3.1], 0usize),
        ("q1", vec![1.0, 2.0, 0.5, 0.8], 1),
        ("q2", vec![6.0, 5.5, 4.0, 0.2], 2),
        ("q3", vec![3.5, 0.1, 0.2, 9.0], 3),
    ];
    let mut sets = Vec::new();
    let mut gold = HashMap::new();
    for (id, values, answer) in batch {
        sets.push(select_candidates(
            &ChoiceScores {
                example_id: id.into(),
                method: ScoreMethod::Sw,
                scores: values,
            },
            &config,
        ));
        gold.insert(id.to_string(), answer);
    }
    let stats = candidate_stats(&sets, &gold).unwrap();
    println!("\nbatch under t = 3, k = 2:");
    for set in &sets {
        let picked: Vec<_> = set.choices().collect();
        println!("  {}: candidates {picked:?}", set.example_id);
    }
    println!(
        "A = {:.2}, B = {:.1}%, B/A = {:.1}%",
        stats.avg_size, stats.pct_including_answer, stats.random_baseline
    );
}
