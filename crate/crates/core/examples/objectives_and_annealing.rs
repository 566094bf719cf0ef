//! The three weak-supervision losses, their gradients, and the
//! MML/Hard-EM annealing schedule.
//!
//! Run: `cargo run --example objectives_and_annealing`

use mcqa::candidates::{CandidateEntry, CandidateSet};
use mcqa::objectives::{
    anneal_pick, loss_and_grad, loss_hard_em, loss_highest_only, loss_mml, AnnealSchedule,
    ObjectiveKind,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let probs = [0.5, 0.25, 0.15, 0.10];
    let cands = CandidateSet {
        example_id: "demo".into(),
        entries: vec![
            CandidateEntry { choice: 0, score: 7.0 },
            CandidateEntry { choice: 1, score: 5.0 },
        ],
    };
    println!("P = {probs:?}, candidate set = {{0, 1}}");
    println!(
        "  highest-only = {:.4}   (-ln P(c_max))",
        loss_highest_only(&probs, &cands).unwrap()
    );
    println!(
        "  mml          = {:.4}   (-ln sum of candidate mass)",
        loss_mml(&probs, &cands).unwrap()
    );
    println!(
        "  hard-em      = {:.4}   (-ln max candidate prob)",
        loss_hard_em(&probs, &cands).unwrap()
    );

    // analytic gradients with respect to the logits
    let logits = [1.2, 0.4, -0.3, 0.0];
    println!("\nlogits = {logits:?}");
    for kind in [ObjectiveKind::HighestOnly, ObjectiveKind::Mml, ObjectiveKind::HardEm] {
        let r = loss_and_grad(&logits, &cands, kind).unwrap();
        let grads: Vec<String> = r.grad_logits.iter().map(|g| format!("{g:+.4}")).collect();
        println!("  {kind:<12} loss {:.4}  grad [{}]", r.loss, grads.join(", "));
    }

    // annealing: MML probability ramps as min(step/tau, 0.8)
    let schedule = AnnealSchedule::new(4000.0).unwrap();
    println!("\nannealing with tau = {}:", schedule.tau);
    println!("  {:>6} {:>8} {:>10}", "step", "p(mml)", "observed");
    for step in [0u64, 500, 1000, 2000, 3200, 8000] {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mml = (0..20_000)
            .filter(|_| anneal_pick(step, &schedule, &mut rng) == ObjectiveKind::Mml)
            .count();
        println!(
            "  {step:>6} {:>8.3} {:>10.3}",
            schedule.mml_probability(step),
            mml as f64 / 20_000.0
        );
    }
}
