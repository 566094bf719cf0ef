//! Weak-supervision training objectives over a per-question probability
//! vector: Highest-Only, maximum marginal likelihood, and Hard-EM, plus
//! the stochastic MML/Hard-EM annealing rule.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::candidates::CandidateSet;
use crate::error::{Error, Result};

/// Which loss to apply at a training step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObjectiveKind {
    #[serde(rename = "highest")]
    HighestOnly,
    #[serde(rename = "mml")]
    Mml,
    #[serde(rename = "hard-em")]
    HardEm,
}

impl fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectiveKind::HighestOnly => "highest",
            ObjectiveKind::Mml => "mml",
            ObjectiveKind::HardEm => "hard-em",
        })
    }
}

impl std::str::FromStr for ObjectiveKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "highest" => Ok(ObjectiveKind::HighestOnly),
            "mml" => Ok(ObjectiveKind::Mml),
            "hard-em" => Ok(ObjectiveKind::HardEm),
            other => Err(format!(
                "unknown objective '{other}' (expected highest|mml|hard-em)"
            )),
        }
    }
}

/// Default annealing horizon.
pub const DEFAULT_TAU: f64 = 4000.0;
/// The MML probability never exceeds this cap.
pub const ANNEAL_CAP: f64 = 0.8;

/// Stochastic MML/Hard-EM mixing: at step `t` use MML with probability
/// `min(t/tau, 0.8)`, otherwise Hard-EM.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealSchedule {
    pub tau: f64,
    pub cap: f64,
}

impl AnnealSchedule {
    pub fn new(tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::InvalidConfig(format!("tau must be > 0, got {tau}")));
        }
        Ok(AnnealSchedule {
            tau,
            cap: ANNEAL_CAP,
        })
    }

    /// MML probability at the given step.
    pub fn mml_probability(&self, step: u64) -> f64 {
        (step as f64 / self.tau).min(self.cap)
    }
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        AnnealSchedule {
            tau: DEFAULT_TAU,
            cap: ANNEAL_CAP,
        }
    }
}

/// Pick the objective for a training step, consuming exactly one
/// uniform draw from the caller's rng.
pub fn anneal_pick<R: Rng + ?Sized>(
    step: u64,
    schedule: &AnnealSchedule,
    rng: &mut R,
) -> ObjectiveKind {
    let p = schedule.mml_probability(step);
    let u: f64 = rng.random();
    if u < p {
        ObjectiveKind::Mml
    } else {
        ObjectiveKind::HardEm
    }
}

fn check_indices(probs_len: usize, cands: &CandidateSet) -> Result<()> {
    if cands.is_empty() {
        return Err(Error::EmptyCandidates(cands.example_id.clone()));
    }
    for entry in &cands.entries {
        if entry.choice >= probs_len {
            return Err(Error::InvalidChoiceIndex {
                id: cands.example_id.clone(),
                choice: entry.choice,
                n: probs_len,
            });
        }
    }
    Ok(())
}

/// `-ln P(c_max)` where `c_max` is the candidate with the highest
/// selection score (the first entry of the set).
pub fn loss_highest_only(probs: &[f64], cands: &CandidateSet) -> Result<f64> {
    check_indices(probs.len(), cands)?;
    let c_max = cands.entries[0].choice;
    Ok(-probs[c_max].ln())
}

/// `-ln Σ_{i ∈ T} P(c_i)`.
pub fn loss_mml(probs: &[f64], cands: &CandidateSet) -> Result<f64> {
    check_indices(probs.len(), cands)?;
    let mass: f64 = cands.choices().map(|i| probs[i]).sum();
    if mass == 0.0 {
        return Err(Error::ZeroCandidateMass(cands.example_id.clone()));
    }
    Ok(-mass.ln())
}

/// `-ln max_{i ∈ T} P(c_i)`.
pub fn loss_hard_em(probs: &[f64], cands: &CandidateSet) -> Result<f64> {
    check_indices(probs.len(), cands)?;
    let max = cands
        .choices()
        .map(|i| probs[i])
        .fold(f64::NEG_INFINITY, f64::max);
    if max == 0.0 {
        return Err(Error::ZeroCandidateMass(cands.example_id.clone()));
    }
    Ok(-max.ln())
}

/// Loss together with its analytic gradient with respect to the choice
/// logits.
#[derive(Debug, Clone, PartialEq)]
pub struct LossResult {
    pub loss: f64,
    pub grad_logits: Vec<f64>,
}

fn log_sum_exp(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = values.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = values.map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

/// Softmax the logits and evaluate the requested objective, returning
/// the loss and its gradient. Everything runs in log space so tiny
/// candidate mass early in training stays representable.
///
/// Hard-EM picks `argmax_{i ∈ T} P(c_i)` with ties going to the lowest
/// choice index; Highest-Only uses the set's own ranking. Both reduce
/// to cross-entropy against the picked index `m`: `grad_j = P_j -
/// 1[j=m]`. MML uses `grad_j = P_j - 1[j ∈ T]·P_j / Σ_{i ∈ T} P_i`.
pub fn loss_and_grad(
    logits: &[f64],
    cands: &CandidateSet,
    kind: ObjectiveKind,
) -> Result<LossResult> {
    check_indices(logits.len(), cands)?;
    let lse_all = log_sum_exp(logits.iter().copied());
    let probs: Vec<f64> = logits.iter().map(|&l| (l - lse_all).exp()).collect();

    // candidate indices in ascending order (fixed summation order)
    let mut members: Vec<usize> = cands.choices().collect();
    members.sort_unstable();
    members.dedup();

    match kind {
        ObjectiveKind::HighestOnly | ObjectiveKind::HardEm => {
            let m = match kind {
                ObjectiveKind::HighestOnly => cands.entries[0].choice,
                _ => {
                    let mut best = members[0];
                    for &i in &members[1..] {
                        if logits[i] > logits[best] {
                            best = i;
                        }
                    }
                    best
                }
            };
            let loss = lse_all - logits[m];
            let grad = probs
                .iter()
                .enumerate()
                .map(|(j, &p)| if j == m { p - 1.0 } else { p })
                .collect();
            Ok(LossResult {
                loss,
                grad_logits: grad,
            })
        }
        ObjectiveKind::Mml => {
            let lse_cands = log_sum_exp(members.iter().map(|&i| logits[i]));
            let loss = lse_all - lse_cands;
            let grad = probs
                .iter()
                .enumerate()
                .map(|(j, &p)| {
                    if members.binary_search(&j).is_ok() {
                        p - (logits[j] - lse_cands).exp()
                    } else {
                        p
                    }
                })
                .collect();
            Ok(LossResult {
                loss,
                grad_logits: grad,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::CandidateEntry;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cand_set(choices: &[usize]) -> CandidateSet {
        // give earlier entries higher selection scores
        CandidateSet {
            example_id: "t".into(),
            entries: choices
                .iter()
                .enumerate()
                .map(|(rank, &choice)| CandidateEntry {
                    choice,
                    score: 100.0 - rank as f64,
                })
                .collect(),
        }
    }

    const PROBS: [f64; 4] = [0.5, 0.25, 0.15, 0.10];

    #[test]
    fn highest_only_values() {
        let loss = loss_highest_only(&PROBS, &cand_set(&[0, 1])).unwrap();
        assert!((loss + 0.5_f64.ln()).abs() < 1e-12); // -ln 0.5 ≈ 0.6931
        let perfect = loss_highest_only(&[1.0, 0.0], &cand_set(&[0])).unwrap();
        assert_eq!(perfect, 0.0);
    }

    #[test]
    fn mml_values() {
        let loss = loss_mml(&PROBS, &cand_set(&[0, 1])).unwrap();
        assert!((loss + 0.75_f64.ln()).abs() < 1e-12); // -ln 0.75 ≈ 0.2877
        let full = loss_mml(&PROBS, &cand_set(&[0, 1, 2, 3])).unwrap();
        assert!(full.abs() < 1e-12);
    }

    #[test]
    fn hard_em_values() {
        let loss = loss_hard_em(&PROBS, &cand_set(&[0, 1])).unwrap();
        assert!((loss + 0.5_f64.ln()).abs() < 1e-12);
        let uniform = [0.25, 0.25, 0.25, 0.25];
        let loss = loss_hard_em(&uniform, &cand_set(&[2, 3])).unwrap();
        assert!((loss + 0.25_f64.ln()).abs() < 1e-12); // -ln 0.25 ≈ 1.3863
    }

    #[test]
    fn singleton_candidate_sets_coincide() {
        let cands = cand_set(&[2]);
        let a = loss_highest_only(&PROBS, &cands).unwrap();
        let b = loss_mml(&PROBS, &cands).unwrap();
        let c = loss_hard_em(&PROBS, &cands).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(a.to_bits(), c.to_bits());
    }

    #[test]
    fn empty_and_degenerate_errors() {
        let empty = CandidateSet {
            example_id: "t".into(),
            entries: vec![],
        };
        assert!(matches!(
            loss_highest_only(&PROBS, &empty),
            Err(Error::EmptyCandidates(_))
        ));
        assert!(matches!(loss_mml(&PROBS, &empty), Err(Error::EmptyCandidates(_))));
        let degenerate = [0.0, 0.0, 0.5, 0.5];
        assert!(matches!(
            loss_mml(&degenerate, &cand_set(&[0, 1])),
            Err(Error::ZeroCandidateMass(_))
        ));
        assert!(matches!(
            loss_hard_em(&degenerate, &cand_set(&[0, 1])),
            Err(Error::ZeroCandidateMass(_))
        ));
    }

    #[test]
    fn grad_uniform_logits_single_candidate() {
        let logits = [0.3, 0.3, 0.3, 0.3];
        for kind in [ObjectiveKind::HighestOnly, ObjectiveKind::Mml, ObjectiveKind::HardEm] {
            let r = loss_and_grad(&logits, &cand_set(&[0]), kind).unwrap();
            let expected = [-0.75, 0.25, 0.25, 0.25];
            for (g, e) in r.grad_logits.iter().zip(expected) {
                assert!((g - e).abs() < 1e-12, "{kind}: {g} vs {e}");
            }
        }
    }

    #[test]
    fn grad_components_sum_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        use rand::Rng as _;
        for _ in 0..200 {
            let n = rng.random_range(2..6);
            let logits: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
            let size = rng.random_range(1..=n);
            let mut choices: Vec<usize> = (0..n).collect();
            for i in (1..choices.len()).rev() {
                choices.swap(i, rng.random_range(0..=i));
            }
            choices.truncate(size);
            let cands = cand_set(&choices);
            for kind in [ObjectiveKind::HighestOnly, ObjectiveKind::Mml, ObjectiveKind::HardEm] {
                let r = loss_and_grad(&logits, &cands, kind).unwrap();
                let total: f64 = r.grad_logits.iter().sum();
                assert!(total.abs() < 1e-12, "{kind}: sum {total}");
                assert!(r.loss >= 0.0);
            }
        }
    }

    #[test]
    fn log_space_losses_agree_with_direct_formulas() {
        // loss_and_grad works from logits through log-sum-exp; the
        // standalone ops take probabilities directly. Two routes, same
        // numbers.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        use rand::Rng as _;
        for _ in 0..500 {
            let n = rng.random_range(2..6);
            let logits: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
            let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let exps: Vec<f64> = logits.iter().map(|&l| (l - max).exp()).collect();
            let total: f64 = exps.iter().sum();
            let probs: Vec<f64> = exps.iter().map(|&e| e / total).collect();
            let size = rng.random_range(1..=n);
            let mut choices: Vec<usize> = (0..n).collect();
            for i in (1..choices.len()).rev() {
                choices.swap(i, rng.random_range(0..=i));
            }
            choices.truncate(size);
            let cands = cand_set(&choices);
            for (kind, direct) in [
                (ObjectiveKind::HighestOnly, loss_highest_only(&probs, &cands).unwrap()),
                (ObjectiveKind::Mml, loss_mml(&probs, &cands).unwrap()),
                (ObjectiveKind::HardEm, loss_hard_em(&probs, &cands).unwrap()),
            ] {
                let via_logits = loss_and_grad(&logits, &cands, kind).unwrap().loss;
                assert!(
                    (via_logits - direct).abs() <= 1e-9 * direct.abs().max(1.0),
                    "{kind}: log-space {via_logits} vs direct {direct}"
                );
            }
        }
    }

    #[test]
    fn hard_em_argmax_tie_breaks_low() {
        // choices 1 and 3 share the max logit; ties go to the lowest index
        let logits = [0.0, 2.0, 1.0, 2.0];
        let r = loss_and_grad(&logits, &cand_set(&[3, 1]), ObjectiveKind::HardEm).unwrap();
        let m = r
            .grad_logits
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert_eq!(m, 1);
    }

    #[test]
    fn anneal_step_zero_is_always_hard_em() {
        let schedule = AnnealSchedule::default();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..1000 {
            assert_eq!(anneal_pick(0, &schedule, &mut rng), ObjectiveKind::HardEm);
        }
    }

    #[test]
    fn anneal_probability_caps_at_point_eight() {
        let schedule = AnnealSchedule::new(4000.0).unwrap();
        assert_eq!(schedule.mml_probability(0), 0.0);
        assert_eq!(schedule.mml_probability(1000), 0.25);
        assert_eq!(schedule.mml_probability(3200), 0.8);
        assert_eq!(schedule.mml_probability(1_000_000), 0.8);
    }

    #[test]
    fn anneal_reproducible_with_seed() {
        let schedule = AnnealSchedule::new(1000.0).unwrap();
        let draw = |seed: u64| -> Vec<ObjectiveKind> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..100).map(|s| anneal_pick(s, &schedule, &mut rng)).collect()
        };
        assert_eq!(draw(9), draw(9));
        assert_ne!(draw(9), draw(10));
    }

    #[test]
    fn invalid_choice_index_rejected() {
        let r = loss_and_grad(&[0.0, 0.0], &cand_set(&[5]), ObjectiveKind::Mml);
        assert!(matches!(r, Err(Error::InvalidChoiceIndex { .. })));
    }
}
