//! Seeded generator of synthetic MCQA data with a planted lexical
//! signal. The gold choice always overlaps the passage; with
//! probability `noise` one distractor gets two of its words planted
//! right next to the question words, which flips the sliding-window
//! ranking for that question while the overlap features still single
//! out the gold choice. Candidate sets built from these scores contain
//! the answer but rank it wrong on noisy questions, so the three
//! training objectives genuinely differ.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Example, ExampleSet, Split, Subset};
use crate::error::Result;

/// Generator knobs.
#[derive(Debug, Clone, Copy)]
pub struct SynthConfig {
    pub num_examples: usize,
    /// Probability that a question's top sliding-window choice is a
    /// distractor instead of the gold choice.
    pub noise: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            num_examples: 1000,
            noise: 0.1,
            seed: 0,
        }
    }
}

fn sample_distinct(rng: &mut ChaCha8Rng, prefix: &str, pool: usize, n: usize) -> Vec<String> {
    let mut picked = Vec::with_capacity(n);
    while picked.len() < n {
        let w = format!("{prefix}{:03}", rng.random_range(0..pool));
        if !picked.contains(&w) {
            picked.push(w);
        }
    }
    picked
}

/// Generate a split of planted-signal examples named `name`.
pub fn generate(name: &str, split: Split, config: &SynthConfig) -> Result<ExampleSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut examples = Vec::with_capacity(config.num_examples);
    for i in 0..config.num_examples {
        let gold = rng.random_range(0..4usize);
        let gold_words = sample_distinct(&mut rng, "c", 150, 3);
        let question_words = sample_distinct(&mut rng, "q", 80, 4);

        let mut choices_raw = vec![String::new(); 4];
        choices_raw[gold] = gold_words.join(" ");
        let mut distractor_slots = Vec::new();
        for (c, choice) in choices_raw.iter_mut().enumerate() {
            if c != gold {
                *choice = sample_distinct(&mut rng, "d", 300, 3).join(" ");
                distractor_slots.push(c);
            }
        }
        let planted: Option<Vec<String>> = if rng.random::<f64>() < config.noise {
            let slot = distractor_slots[rng.random_range(0..distractor_slots.len())];
            Some(
                choices_raw[slot]
                    .split(' ')
                    .take(2)
                    .map(str::to_owned)
                    .collect(),
            )
        } else {
            None
        };

        // signal block: two question words then the first gold word;
        // a noisy question appends two distractor words to the block,
        // giving that distractor the strongest window. The remaining
        // gold words are scattered so no window covers all of them.
        let mut passage: Vec<String> = sample_distinct(&mut rng, "f", 150, 6);
        passage.push(question_words[0].clone());
        passage.push(question_words[1].clone());
        passage.push(gold_words[0].clone());
        if let Some(words) = &planted {
            passage.extend(words.iter().cloned());
        }
        passage.extend(sample_distinct(&mut rng, "f", 150, 4));
        passage.push(gold_words[1].clone());
        passage.extend(sample_distinct(&mut rng, "f", 150, 5));
        passage.push(gold_words[2].clone());
        passage.extend(sample_distinct(&mut rng, "f", 150, 5));

        let example = Example::new(
            format!("{name}-{i:05}"),
            passage.join(" "),
            question_words.join(" "),
            choices_raw,
            Some(gold),
            Subset::Other,
        )?;
        examples.push(example);
    }
    ExampleSet::new(name, split, examples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::{baseline_predict, select_candidates, Preset};
    use crate::matching::{score_choices, ScoreMethod};

    #[test]
    fn generator_is_seeded_and_sized() {
        let config = SynthConfig {
            num_examples: 25,
            noise: 0.2,
            seed: 9,
        };
        let a = generate("synth", Split::Train, &config).unwrap();
        let b = generate("synth", Split::Train, &config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 25);
        for e in &a.examples {
            assert_eq!(e.num_choices(), 4);
            assert!(e.gold.is_some());
        }
        let other = generate("synth", Split::Train, &SynthConfig { seed: 10, ..config }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn gold_choice_overlaps_passage() {
        let set = generate(
            "synth",
            Split::Dev,
            &SynthConfig {
                num_examples: 20,
                noise: 0.0,
                seed: 4,
            },
        )
        .unwrap();
        for e in &set.examples {
            let gold = e.gold.unwrap();
            let passage: std::collections::HashSet<&str> =
                e.passage.iter().map(String::as_str).collect();
            for token in e.choices[gold].iter() {
                assert!(passage.contains(token.as_str()));
            }
            for (i, choice) in e.choices.iter().enumerate() {
                if i != gold {
                    assert!(choice.iter().all(|t| !passage.contains(t.as_str())));
                }
            }
        }
    }

    #[test]
    fn clean_questions_rank_gold_first_noisy_ones_do_not() {
        let clean = generate(
            "clean",
            Split::Dev,
            &SynthConfig {
                num_examples: 30,
                noise: 0.0,
                seed: 5,
            },
        )
        .unwrap();
        for e in &clean.examples {
            let scores = score_choices(e, ScoreMethod::Sw, None).unwrap();
            assert_eq!(baseline_predict(&scores), e.gold.unwrap());
        }

        // with noise 1.0, the planted distractor outranks gold, but
        // gold survives into the top-3 candidate set
        let noisy = generate(
            "noisy",
            Split::Dev,
            &SynthConfig {
                num_examples: 30,
                noise: 1.0,
                seed: 6,
            },
        )
        .unwrap();
        let config = Preset::RaceSw.config();
        for e in &noisy.examples {
            let scores = score_choices(e, ScoreMethod::Sw, None).unwrap();
            assert_ne!(baseline_predict(&scores), e.gold.unwrap());
            let set = select_candidates(&scores, &config);
            assert!(set.contains(e.gold.unwrap()));
        }
    }
}
