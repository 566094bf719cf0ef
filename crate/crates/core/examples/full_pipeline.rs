//! The four file-based pipeline stages run back to back on a tiny
//! MCTest-format fixture written to a temporary directory. The same
//! flow works from the shell through the `mcqa` binary.
//!
//! Run: `cargo run --example full_pipeline`

use std::fs;

use mcqa::cli::{
    cmd_candidates, cmd_eval, cmd_ingest, cmd_train, CandidatesArgs, DatasetKind, EvalArgs,
    IngestArgs, Switch, TrainArgs,
};
use mcqa::corpus::Split;
use mcqa::matching::ScoreMethod;
use mcqa::objectives::ObjectiveKind;

fn main() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();

    // an MCTest-format story file: id, properties, story, then four
    // question blocks of question + 4 answers, tab-separated
    let story = [
        "mc500.demo.0",
        "Author(Demo)",
        "Ann had a small red kite. She flew the red kite in the park.\\newlineHer dog Rex chased the kite all day.",
        "one: What did Ann fly in the park?", "the red kite", "a paper plane", "a green balloon", "her shoe",
        "one: Who chased the kite?", "the cat", "her dog Rex", "a bird", "nobody",
        "multiple: Where did Ann fly the kite?", "at school", "by the sea", "in the park", "at home",
        "multiple: Why was Rex in the park?", "he was lost", "he was sleeping", "he was eating", "he chased the kite",
    ]
    .join("\t");
    let stories = dir.join("mc500.demo.tsv");
    let answers = dir.join("mc500.demo.ans");
    fs::write(&stories, story + "\n").unwrap();
    fs::write(&answers, "A\tB\tC\tD\n").unwrap();

    let examples = dir.join("examples.jsonl");
    println!("== ingest ==");
    cmd_ingest(&IngestArgs {
        dataset: DatasetKind::Mc500,
        root: None,
        stories: Some(stories),
        answers: Some(answers),
        split: Split::Dev,
        out: examples.clone(),
        summary: None,
    })
    .unwrap();

    let scores = dir.join("scores.jsonl");
    let cands = dir.join("cands.jsonl");
    println!("\n== candidates (preset mc500-sw) ==");
    cmd_candidates(&CandidatesArgs {
        examples: examples.clone(),
        method: ScoreMethod::Sw,
        eqa_predictions: None,
        preset: Some("mc500-sw".parse().unwrap()),
        threshold: None,
        top_k: None,
        out_scores: scores,
        out_candidates: cands.clone(),
        out_stats: None,
    })
    .unwrap();

    let model = dir.join("model.json");
    let log = dir.join("log.csv");
    println!("\n== train ==");
    cmd_train(&TrainArgs {
        examples: examples.clone(),
        candidates: cands,
        eqa_predictions: None,
        objective: ObjectiveKind::Mml,
        anneal: Switch::Off,
        tau: 4000.0,
        batch_size: 4,
        warmup_steps: 5,
        total_steps: 60,
        peak_lr: 0.5,
        seed: 7,
        out_model: model.clone(),
        out_log: log.clone(),
    })
    .unwrap();

    println!("\n== eval ==");
    cmd_eval(&EvalArgs {
        examples,
        model: model.clone(),
        eqa_predictions: None,
        compare: None,
        out_json: dir.join("report.json"),
        out_csv: dir.join("report.csv"),
        method: Some(ScoreMethod::Sw),
        objective: Some(ObjectiveKind::Mml),
        threshold: None,
        top_k: None,
        tau: None,
        seed: Some(7),
    })
    .unwrap();

    println!("\nmodel file:\n{}", fs::read_to_string(&model).unwrap());
    println!("first log lines:");
    for line in fs::read_to_string(&log).unwrap().lines().take(4) {
        println!("  {line}");
    }
}
