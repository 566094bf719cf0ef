//! Ratcliff-Obershelp similarity and EQA-span matching on the 0-100
//! scale used by the candidate thresholds.
//!
//! Run: `cargo run --example gestalt_matching`

use mcqa::matching::{eqa_match_score, gestalt_similarity, EqaPrediction};

fn main() {
    println!("gestalt similarity = 2 * matched chars / (|a| + |b|):\n");
    let pairs = [
        ("abandonned", "abandoned"),
        ("pennsylvania", "pencilvaneya"),
        ("the red kite", "a red kite"),
        ("Saturday", "saturday"),
        ("abc", "xyz"),
    ];
    for (a, b) in pairs {
        println!("  {a:<14} vs {b:<14} -> {:.4}", gestalt_similarity(a, b));
    }

    // an extractive-QA span scored against each choice
    let prediction = EqaPrediction {
        question_id: "demo-q0".into(),
        span: "three red apples".into(),
        confidence: Some(0.91),
    };
    let choices = [
        "three red apples and a bag of flour",
        "a new bicycle",
        "three green pears",
        "red apples",
    ];
    println!("\npredicted span: {:?}", prediction.span);
    for (i, choice) in choices.iter().enumerate() {
        println!(
            "  choice {i}: {:>6.1} / 100  {choice}",
            eqa_match_score(&prediction, choice)
        );
    }
    println!("\nscores above 50 would pass the default EQA threshold.");
}
