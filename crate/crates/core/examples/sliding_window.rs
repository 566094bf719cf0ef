//! Score the choices of one question with the sliding-window matcher.
//!
//! Run: `cargo run --example sliding_window`

use mcqa::candidates::baseline_predict;
use mcqa::corpus::tokenize;
use mcqa::matching::{build_ic_table, score_choices, sliding_window_score, ScoreMethod};

fn main() {
    let passage = "Tom went to the market on Saturday morning. He bought three red apples \
                   and a small bag of flour. On the way home he shared one apple with his \
                   sister Ann, who was waiting by the gate.";
    let question = "What did Tom buy at the market?";
    let choices = [
        "three red apples and a bag of flour",
        "a new bicycle",
        "a kite for his sister",
        "nothing at all",
    ];

    let passage_tokens = tokenize(passage);
    let question_tokens = tokenize(question);
    let table = build_ic_table(&passage_tokens);

    println!("passage ({} tokens): {passage}\n", passage_tokens.len());
    println!("inverse-count weights of a few passage words:");
    for word in ["tom", "the", "apples", "market"] {
        println!(
            "  {word:<8} count {}  IC = ln(1 + 1/count) = {:.4}",
            table.count(word),
            table.ic(word)
        );
    }

    println!("\nquestion: {question}");
    for (i, choice) in choices.iter().enumerate() {
        let score = sliding_window_score(&passage_tokens, &question_tokens, &tokenize(choice), &table);
        println!("  choice {i}: {score:>7.4}  {choice}");
    }

    // the same scores through the per-example surface
    let example = mcqa::corpus::Example::new(
        "demo-q0",
        passage,
        question,
        choices.iter().map(|s| s.to_string()).collect(),
        Some(0),
        mcqa::corpus::Subset::Other,
    )
    .unwrap();
    let scores = score_choices(&example, ScoreMethod::Sw, None).unwrap();
    let pick = baseline_predict(&scores);
    println!("\nbaseline (argmax) picks choice {pick}: {}", choices[pick]);
}
