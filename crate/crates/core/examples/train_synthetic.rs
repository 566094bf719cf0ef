//! Train the linear scorer on synthetic planted-signal data with each
//! objective and compare dev accuracy against the no-training baseline
//! and the random-pick-from-candidates baseline.
//!
//! Run: `cargo run --release --example train_synthetic`

use mcqa::candidates::{baseline_predict, candidate_stats, select_candidates, Preset};
use mcqa::corpus::Split;
use mcqa::eval::accuracy;
use mcqa::matching::{score_choices, ScoreMethod};
use mcqa::objectives::{AnnealSchedule, ObjectiveKind};
use mcqa::scorer::{predict_all, train, TrainingConfig};
use mcqa::synth::{generate, SynthConfig};

fn main() {
    let train_set = generate(
        "synth-train",
        Split::Train,
        &SynthConfig { num_examples: 2000, noise: 0.2, seed: 1 },
    )
    .unwrap();
    let dev_set = generate(
        "synth-dev",
        Split::Dev,
        &SynthConfig { num_examples: 500, noise: 0.2, seed: 2 },
    )
    .unwrap();
    println!("{} train / {} dev synthetic questions", train_set.len(), dev_set.len());

    // stage 1: sliding-window scores -> candidate sets (t=0, k=3)
    let config = Preset::RaceSw.config();
    let mut cands = Vec::with_capacity(train_set.len());
    for example in &train_set.examples {
        let scores = score_choices(example, ScoreMethod::Sw, None).unwrap();
        cands.push(select_candidates(&scores, &config));
    }
    let stats = candidate_stats(&cands, &train_set.gold_map()).unwrap();
    println!(
        "candidates: A = {:.2}, B = {:.1}%, random baseline B/A = {:.1}%",
        stats.avg_size, stats.pct_including_answer, stats.random_baseline
    );

    let dev_gold = dev_set.gold_map();
    let sw_baseline: f64 = {
        let predictions = dev_set
            .examples
            .iter()
            .map(|e| {
                let scores = score_choices(e, ScoreMethod::Sw, None).unwrap();
                (e.id.clone(), baseline_predict(&scores))
            })
            .collect();
        accuracy(&predictions, &dev_gold).unwrap()
    };
    println!("no-training SW baseline on dev: {sw_baseline:.1}%\n");

    // stage 2: weak-supervision training, one run per objective
    let runs = [
        ("highest-only", ObjectiveKind::HighestOnly, None),
        ("mml", ObjectiveKind::Mml, None),
        ("hard-em+anneal", ObjectiveKind::HardEm, Some(AnnealSchedule::new(50.0).unwrap())),
    ];
    println!("{:<16} {:>10} {:>12}", "objective", "dev acc", "final loss");
    for (label, objective, anneal) in runs {
        let config = TrainingConfig {
            batch_size: 32,
            warmup_steps: 100,
            total_steps: 600,
            peak_lr: 0.5,
            seed: 7,
            objective,
            anneal,
        };
        let (scorer, log) = train(&train_set.examples, &cands, None, &config).unwrap();
        let predictions = predict_all(&scorer, &dev_set.examples, None);
        let acc = accuracy(&predictions, &dev_gold).unwrap();
        let final_loss = log.records.last().map(|r| r.loss).unwrap_or(f64::NAN);
        println!("{label:<16} {acc:>9.1}% {final_loss:>12.4}");
    }
}
