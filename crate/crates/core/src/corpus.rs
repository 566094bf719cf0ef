//! Dataset loading: RACE and MCTest files into a uniform example model.
//!
//! Both loaders emit one [`Example`] per question. Tokenization happens
//! exactly once at load time; downstream stages only consume the stored
//! token sequences.

use std::collections::BTreeMap;
use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::ops::Deref;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered sequence of lowercase word tokens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TokenSeq(Vec<String>);

impl TokenSeq {
    pub fn new(tokens: Vec<String>) -> Self {
        TokenSeq(tokens)
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }
}

impl Deref for TokenSeq {
    type Target = [String];

    fn deref(&self) -> &[String] {
        &self.0
    }
}

impl From<Vec<String>> for TokenSeq {
    fn from(tokens: Vec<String>) -> Self {
        TokenSeq(tokens)
    }
}

/// Lowercase and split on every non-alphanumeric character, dropping
/// empty fragments. `"don't-stop 2x"` becomes `[don, t, stop, 2x]`.
pub fn tokenize(text: &str) -> TokenSeq {
    let lowered = text.to_lowercase();
    let tokens = lowered
        .split(|c: char| !c.is_alphanumeric())
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect();
    TokenSeq(tokens)
}

/// Which part of which corpus an example came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subset {
    #[serde(rename = "race-m")]
    RaceM,
    #[serde(rename = "race-h")]
    RaceH,
    #[serde(rename = "mc500-one")]
    Mc500One,
    #[serde(rename = "mc500-multi")]
    Mc500Multi,
    #[serde(rename = "other")]
    Other,
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subset::RaceM => "race-m",
            Subset::RaceH => "race-h",
            Subset::Mc500One => "mc500-one",
            Subset::Mc500Multi => "mc500-multi",
            Subset::Other => "other",
        };
        f.write_str(s)
    }
}

/// Interrogative category of a question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuestionType {
    Why,
    What,
    Where,
    When,
    Who,
    How,
    Other,
}

impl fmt::Display for QuestionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QuestionType::Why => "why",
            QuestionType::What => "what",
            QuestionType::Where => "where",
            QuestionType::When => "when",
            QuestionType::Who => "who",
            QuestionType::How => "how",
            QuestionType::Other => "other",
        };
        f.write_str(s)
    }
}

/// The type whose keyword occurs earliest in the question as a whole
/// token (case-insensitive); `Other` when none occurs.
pub fn classify_question_type(question_raw: &str) -> QuestionType {
    for token in tokenize(question_raw).iter() {
        match token.as_str() {
            "why" => return QuestionType::Why,
            "what" => return QuestionType::What,
            "where" => return QuestionType::Where,
            "when" => return QuestionType::When,
            "who" => return QuestionType::Who,
            "how" => return QuestionType::How,
            _ => {}
        }
    }
    QuestionType::Other
}

/// One passage/question/choices unit with an optional gold label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Example {
    pub id: String,
    pub passage_raw: String,
    pub passage: TokenSeq,
    pub question_raw: String,
    pub question: TokenSeq,
    pub choices_raw: Vec<String>,
    pub choices: Vec<TokenSeq>,
    pub gold: Option<usize>,
    pub subset: Subset,
    pub qtype: QuestionType,
}

impl Example {
    /// Build an example, tokenizing passage, question and choices and
    /// classifying the question type. Requires at least two choices and
    /// a valid gold index when one is given.
    pub fn new(
        id: impl Into<String>,
        passage_raw: impl Into<String>,
        question_raw: impl Into<String>,
        choices_raw: Vec<String>,
        gold: Option<usize>,
        subset: Subset,
    ) -> Result<Self> {
        let id = id.into();
        let passage_raw = passage_raw.into();
        let question_raw = question_raw.into();
        if choices_raw.len() < 2 {
            return Err(Error::InvalidExample(
                id,
                format!("need at least 2 choices, got {}", choices_raw.len()),
            ));
        }
        if let Some(g) = gold {
            if g >= choices_raw.len() {
                return Err(Error::InvalidExample(
                    id,
                    format!("gold index {} out of range for {} choices", g, choices_raw.len()),
                ));
            }
        }
        let passage = tokenize(&passage_raw);
        let question = tokenize(&question_raw);
        let choices = choices_raw.iter().map(|c| tokenize(c)).collect();
        let qtype = classify_question_type(&question_raw);
        Ok(Example {
            id,
            passage_raw,
            passage,
            question_raw,
            question,
            choices_raw,
            choices,
            gold,
            subset,
            qtype,
        })
    }

    /// Number of choices.
    pub fn num_choices(&self) -> usize {
        self.choices.len()
    }

    /// Copy with the gold label removed. Training paths work on
    /// stripped examples so the label can never leak into a loss.
    pub fn without_gold(&self) -> Example {
        let mut e = self.clone();
        e.gold = None;
        e
    }
}

/// Dataset split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Dev,
    Test,
}

impl Split {
    pub fn dir_name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Dev => "dev",
            Split::Test => "test",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.dir_name())
    }
}

impl std::str::FromStr for Split {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "train" => Ok(Split::Train),
            "dev" => Ok(Split::Dev),
            "test" => Ok(Split::Test),
            other => Err(format!("unknown split '{other}' (expected train|dev|test)")),
        }
    }
}

/// An ordered, immutable collection of examples with unique ids.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleSet {
    pub name: String,
    pub split: Split,
    pub examples: Vec<Example>,
}

impl ExampleSet {
    pub fn new(name: impl Into<String>, split: Split, examples: Vec<Example>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &examples {
            if !seen.insert(e.id.as_str()) {
                return Err(Error::DuplicateId(e.id.clone()));
            }
        }
        Ok(ExampleSet {
            name: name.into(),
            split,
            examples,
        })
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    /// Map id -> gold index for every example that carries a label.
    pub fn gold_map(&self) -> std::collections::HashMap<String, usize> {
        self.examples
            .iter()
            .filter_map(|e| e.gold.map(|g| (e.id.clone(), g)))
            .collect()
    }

    /// Per-subset example counts, for ingest summaries.
    pub fn subset_counts(&self) -> BTreeMap<Subset, usize> {
        let mut counts = BTreeMap::new();
        for e in &self.examples {
            *counts.entry(e.subset).or_insert(0) += 1;
        }
        counts
    }

    /// Write the interchange JSONL: one example per line, UTF-8.
    pub fn save_jsonl(&self, path: &Path) -> Result<()> {
        let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = std::io::BufWriter::new(file);
        for e in &self.examples {
            let line = serde_json::to_string(e).map_err(|e| Error::json(path, e))?;
            w.write_all(line.as_bytes())
                .and_then(|_| w.write_all(b"\n"))
                .map_err(|e| Error::io(path, e))?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }

    /// Read the interchange JSONL written by [`ExampleSet::save_jsonl`].
    pub fn load_jsonl(path: &Path, name: impl Into<String>, split: Split) -> Result<Self> {
        let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let reader = BufReader::new(file);
        let mut examples = Vec::new();
        for line in reader.lines() {
            let line = line.map_err(|e| Error::io(path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let example: Example =
                serde_json::from_str(&line).map_err(|e| Error::json(path, e))?;
            examples.push(example);
        }
        ExampleSet::new(name, split, examples)
    }
}

/// Letter A..D to choice index.
fn answer_index(letter: &str, context: &str) -> Result<usize> {
    match letter.trim() {
        "A" => Ok(0),
        "B" => Ok(1),
        "C" => Ok(2),
        "D" => Ok(3),
        other => Err(Error::BadAnswerLetter {
            letter: other.to_string(),
            context: context.to_string(),
        }),
    }
}

#[derive(Deserialize)]
struct RaceDocument {
    article: String,
    questions: Vec<String>,
    options: Vec<Vec<String>>,
    answers: Vec<String>,
    id: String,
}

/// Load a RACE split from `<root>/<split>/<middle|high>/<id>.txt`.
///
/// Each file is a JSON document holding one passage and its questions;
/// one example is emitted per question with id `<file-id>-q<index>`.
/// Files are visited in sorted order, middle school before high school,
/// so repeated loads produce the same sequence.
pub fn load_race(root: &Path, split: Split) -> Result<ExampleSet> {
    if !root.exists() {
        return Err(Error::io(
            root,
            std::io::Error::new(std::io::ErrorKind::NotFound, "RACE root not found"),
        ));
    }
    let mut examples = Vec::new();
    for (sub, subset) in [("middle", Subset::RaceM), ("high", Subset::RaceH)] {
        let dir = root.join(split.dir_name()).join(sub);
        if !dir.exists() {
            continue;
        }
        let mut paths: Vec<_> = fs::read_dir(&dir)
            .map_err(|e| Error::io(&dir, e))?
            .collect::<std::io::Result<Vec<_>>>()
            .map_err(|e| Error::io(&dir, e))?
            .into_iter()
            .map(|entry| entry.path())
            .filter(|p| p.is_file())
            .collect();
        paths.sort();
        for path in paths {
            let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            let doc: RaceDocument =
                serde_json::from_str(&text).map_err(|e| Error::json(&path, e))?;
            if doc.questions.len() != doc.options.len()
                || doc.questions.len() != doc.answers.len()
            {
                return Err(Error::MalformedFile {
                    path: path.clone(),
                    detail: format!(
                        "{} questions, {} option lists, {} answers",
                        doc.questions.len(),
                        doc.options.len(),
                        doc.answers.len()
                    ),
                });
            }
            for (i, question) in doc.questions.iter().enumerate() {
                let gold = answer_index(&doc.answers[i], &format!("{}", path.display()))?;
                let example = Example::new(
                    format!("{}-q{}", doc.id, i),
                    doc.article.clone(),
                    question.clone(),
                    doc.options[i].clone(),
                    Some(gold),
                    subset,
                )?;
                examples.push(example);
            }
        }
    }
    ExampleSet::new(format!("race-{}", split), split, examples)
}

// MCTest stories carry 4 questions, each followed by its 4 answers.
const MCTEST_QUESTIONS: usize = 4;
const MCTEST_COLUMNS: usize = 3 + MCTEST_QUESTIONS * 5;

/// Load MCTest from a tab-separated story file and a parallel answer file.
///
/// Story rows hold id, properties (ignored), story text, then four
/// question blocks of one question column (prefixed `one: ` or
/// `multiple: `) and four answer columns. The answer file has one line
/// per story with four tab-separated letters.
pub fn load_mctest(story_file: &Path, answer_file: &Path) -> Result<ExampleSet> {
    let stories = fs::read_to_string(story_file).map_err(|e| Error::io(story_file, e))?;
    let answers = fs::read_to_string(answer_file).map_err(|e| Error::io(answer_file, e))?;
    let story_rows: Vec<&str> = stories.lines().filter(|l| !l.trim().is_empty()).collect();
    let answer_rows: Vec<&str> = answers.lines().filter(|l| !l.trim().is_empty()).collect();
    if story_rows.len() != answer_rows.len() {
        return Err(Error::AnswerCountMismatch {
            path: answer_file.to_path_buf(),
            answers: answer_rows.len(),
            stories: story_rows.len(),
        });
    }

    let mut examples = Vec::new();
    for (row_idx, (story_row, answer_row)) in story_rows.iter().zip(&answer_rows).enumerate() {
        let row_no = row_idx + 1;
        let cols: Vec<&str> = story_row.split('\t').collect();
        if cols.len() != MCTEST_COLUMNS {
            return Err(Error::MalformedRow {
                path: story_file.to_path_buf(),
                row: row_no,
                detail: format!("expected {} columns, got {}", MCTEST_COLUMNS, cols.len()),
            });
        }
        let letters: Vec<&str> = answer_row.split('\t').collect();
        if letters.len() != MCTEST_QUESTIONS {
            return Err(Error::MalformedRow {
                path: answer_file.to_path_buf(),
                row: row_no,
                detail: format!("expected {} answers, got {}", MCTEST_QUESTIONS, letters.len()),
            });
        }
        let story_id = cols[0];
        // The story field encodes line breaks as a literal "\newline".
        let story_text = cols[2].replace("\\newline", " ");
        for (q, letter) in letters.iter().enumerate() {
            let base = 3 + q * 5;
            let question_col = cols[base];
            let (subset, question) = if let Some(rest) = question_col.strip_prefix("one:") {
                (Subset::Mc500One, rest.trim_start())
            } else if let Some(rest) = question_col.strip_prefix("multiple:") {
                (Subset::Mc500Multi, rest.trim_start())
            } else {
                return Err(Error::MalformedRow {
                    path: story_file.to_path_buf(),
                    row: row_no,
                    detail: format!("question {} lacks a one:/multiple: prefix", q + 1),
                });
            };
            let choices: Vec<String> = cols[base + 1..base + 5]
                .iter()
                .map(|s| s.to_string())
                .collect();
            let gold = answer_index(letter, &format!("{} row {}", answer_file.display(), row_no))?;
            let example = Example::new(
                format!("{}-q{}", story_id, q),
                story_text.clone(),
                question,
                choices,
                Some(gold),
                subset,
            )?;
            examples.push(example);
        }
    }
    let name = story_file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "mctest".to_string());
    ExampleSet::new(name, Split::Train, examples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenize_basic() {
        assert!(tokenize("").is_empty());
        assert_eq!(tokenize("The cat sat.").as_slice(), ["the", "cat", "sat"]);
        assert_eq!(
            tokenize("don't-stop 2x").as_slice(),
            ["don", "t", "stop", "2x"]
        );
    }

    #[test]
    fn tokenize_deterministic_and_clean() {
        let inputs = ["Hello,   world!", "a--b__c", "  \t ", "ÀBC déjà 42"];
        for input in inputs {
            let a = tokenize(input);
            let b = tokenize(input);
            assert_eq!(a, b);
            for tok in a.iter() {
                assert!(!tok.is_empty());
                assert!(tok.chars().all(|c| c.is_alphanumeric()));
            }
        }
    }

    #[test]
    fn question_type_classification() {
        assert_eq!(classify_question_type("Why did Tom leave?"), QuestionType::Why);
        assert_eq!(
            classify_question_type("What do you know about when he left?"),
            QuestionType::What
        );
        assert_eq!(
            classify_question_type("The passage is mainly about _ ."),
            QuestionType::Other
        );
        assert_eq!(classify_question_type("HOW many?"), QuestionType::How);
        assert_eq!(classify_question_type("Whoever left, why?"), QuestionType::Why);
    }

    #[test]
    fn example_rejects_bad_shapes() {
        let one_choice = Example::new("e1", "p", "q", vec!["a".into()], None, Subset::Other);
        assert!(one_choice.is_err());
        let bad_gold = Example::new(
            "e2",
            "p",
            "q",
            vec!["a".into(), "b".into()],
            Some(2),
            Subset::Other,
        );
        assert!(bad_gold.is_err());
    }

    #[test]
    fn example_tokenizes_once_at_load() {
        let e = Example::new(
            "e1",
            "The cat sat.",
            "Why, though?",
            vec!["On a mat!".into(), "Nowhere".into()],
            Some(0),
            Subset::Other,
        )
        .unwrap();
        assert_eq!(e.passage, tokenize(&e.passage_raw));
        assert_eq!(e.question, tokenize(&e.question_raw));
        for (c, raw) in e.choices.iter().zip(&e.choices_raw) {
            assert_eq!(c, &tokenize(raw));
        }
    }

    fn write_race_file(dir: &Path, name: &str, id: &str, questions: usize) {
        let doc = serde_json::json!({
            "article": "Tom went to the market. He bought three red apples.",
            "questions": (0..questions).map(|i| format!("Why did Tom go q{i}?")).collect::<Vec<_>>(),
            "options": (0..questions).map(|_| vec!["to buy apples", "to sleep", "to sing", "to swim"]).collect::<Vec<_>>(),
            "answers": (0..questions).map(|_| "A").collect::<Vec<_>>(),
            "id": id,
        });
        fs::write(dir.join(name), serde_json::to_string(&doc).unwrap()).unwrap();
    }

    #[test]
    fn race_loader_reads_both_subsets() {
        let tmp = tempfile::tempdir().unwrap();
        let middle = tmp.path().join("dev/middle");
        let high = tmp.path().join("dev/high");
        fs::create_dir_all(&middle).unwrap();
        fs::create_dir_all(&high).unwrap();
        write_race_file(&middle, "m2.txt", "middle2.txt", 2);
        write_race_file(&middle, "m1.txt", "middle1.txt", 1);
        write_race_file(&high, "h1.txt", "high1.txt", 3);

        let set = load_race(tmp.path(), Split::Dev).unwrap();
        assert_eq!(set.len(), 6);
        // sorted file order within a subset, middle before high
        assert_eq!(set.examples[0].id, "middle1.txt-q0");
        assert_eq!(set.examples[1].id, "middle2.txt-q0");
        assert_eq!(set.examples[3].id, "high1.txt-q0");
        assert_eq!(set.examples[0].subset, Subset::RaceM);
        assert_eq!(set.examples[5].subset, Subset::RaceH);
        assert_eq!(set.examples[0].gold, Some(0));

        let counts = set.subset_counts();
        assert_eq!(counts[&Subset::RaceM], 3);
        assert_eq!(counts[&Subset::RaceH], 3);
    }

    #[test]
    fn race_loader_empty_dir() {
        let tmp = tempfile::tempdir().unwrap();
        let set = load_race(tmp.path(), Split::Dev).unwrap();
        assert!(set.is_empty());
    }

    #[test]
    fn race_loader_rejects_bad_letter() {
        let tmp = tempfile::tempdir().unwrap();
        let middle = tmp.path().join("train/middle");
        fs::create_dir_all(&middle).unwrap();
        let doc = serde_json::json!({
            "article": "a",
            "questions": ["q?"],
            "options": [["w", "x", "y", "z"]],
            "answers": ["E"],
            "id": "m1.txt",
        });
        fs::write(middle.join("m1.txt"), serde_json::to_string(&doc).unwrap()).unwrap();
        match load_race(tmp.path(), Split::Train) {
            Err(Error::BadAnswerLetter { letter, .. }) => assert_eq!(letter, "E"),
            other => panic!("expected BadAnswerLetter, got {other:?}"),
        }
    }

    #[test]
    fn race_loader_names_malformed_file() {
        let tmp = tempfile::tempdir().unwrap();
        let middle = tmp.path().join("train/middle");
        fs::create_dir_all(&middle).unwrap();
        fs::write(middle.join("bad.txt"), "not json").unwrap();
        match load_race(tmp.path(), Split::Train) {
            Err(Error::Json { path, .. }) => {
                assert!(path.to_string_lossy().ends_with("bad.txt"))
            }
            other => panic!("expected Json error, got {other:?}"),
        }
    }

    fn mctest_story_row(id: &str, prefixes: [&str; 4]) -> String {
        let mut cols = vec![
            id.to_string(),
            "Author(Anonymous)".to_string(),
            "Ann had a box.\\newlineShe kept a toy inside.".to_string(),
        ];
        for (q, prefix) in prefixes.iter().enumerate() {
            cols.push(format!("{prefix} What was in the box q{q}?"));
            for c in 0..4 {
                cols.push(format!("choice {q}{c}"));
            }
        }
        cols.join("\t")
    }

    #[test]
    fn mctest_loader_parses_stories() {
        let tmp = tempfile::tempdir().unwrap();
        let story_path = tmp.path().join("mc500.dev.tsv");
        let ans_path = tmp.path().join("mc500.dev.ans");
        let mut f = fs::File::create(&story_path).unwrap();
        writeln!(f, "{}", mctest_story_row("mc500.dev.0", ["one:", "multiple:", "one:", "multiple:"])).unwrap();
        writeln!(f, "{}", mctest_story_row("mc500.dev.1", ["multiple:", "multiple:", "one:", "one:"])).unwrap();
        fs::write(&ans_path, "A\tB\tC\tD\nD\tC\tB\tA\n").unwrap();

        let set = load_mctest(&story_path, &ans_path).unwrap();
        assert_eq!(set.len(), 8);
        assert_eq!(set.examples[0].id, "mc500.dev.0-q0");
        assert_eq!(set.examples[0].subset, Subset::Mc500One);
        assert_eq!(set.examples[1].subset, Subset::Mc500Multi);
        assert_eq!(set.examples[0].gold, Some(0));
        assert_eq!(set.examples[7].gold, Some(0));
        // escaped newline marker became a space before tokenization
        assert!(!set.examples[0].passage_raw.contains("\\newline"));
        assert!(set.examples[0].passage.iter().any(|t| t == "she"));
        assert!(!set.examples[0].passage.iter().any(|t| t == "newline"));
    }

    #[test]
    fn mctest_loader_rejects_wrong_columns() {
        let tmp = tempfile::tempdir().unwrap();
        let story_path = tmp.path().join("s.tsv");
        let ans_path = tmp.path().join("s.ans");
        fs::write(&story_path, "only\tthree\tcolumns\n").unwrap();
        fs::write(&ans_path, "A\tB\tC\tD\n").unwrap();
        match load_mctest(&story_path, &ans_path) {
            Err(Error::MalformedRow { row, .. }) => assert_eq!(row, 1),
            other => panic!("expected MalformedRow, got {other:?}"),
        }
    }

    #[test]
    fn mctest_loader_rejects_answer_mismatch() {
        let tmp = tempfile::tempdir().unwrap();
        let story_path = tmp.path().join("s.tsv");
        let ans_path = tmp.path().join("s.ans");
        fs::write(&story_path, mctest_story_row("x", ["one:", "one:", "one:", "one:"]) + "\n").unwrap();
        fs::write(&ans_path, "A\tB\tC\tD\nA\tB\tC\tD\n").unwrap();
        assert!(matches!(
            load_mctest(&story_path, &ans_path),
            Err(Error::AnswerCountMismatch { .. })
        ));
    }

    #[test]
    fn mctest_loader_empty_files() {
        let tmp = tempfile::tempdir().unwrap();
        let story_path = tmp.path().join("s.tsv");
        let ans_path = tmp.path().join("s.ans");
        fs::write(&story_path, "").unwrap();
        fs::write(&ans_path, "").unwrap();
        let set = load_mctest(&story_path, &ans_path).unwrap();
        assert!(set.is_empty());
    }

    #[test]
    fn jsonl_round_trip() {
        let tmp = tempfile::tempdir().unwrap();
        let path = tmp.path().join("set.jsonl");
        let examples = vec![
            Example::new(
                "a-q0",
                "The cat sat on the mat.",
                "Where did the cat sit?",
                vec!["mat".into(), "roof".into(), "box".into(), "car".into()],
                Some(0),
                Subset::Mc500One,
            )
            .unwrap(),
            Example::new(
                "a-q1",
                "The cat sat on the mat.",
                "Who sat?",
                vec!["the cat".into(), "a dog".into()],
                None,
                Subset::Other,
            )
            .unwrap(),
        ];
        let set = ExampleSet::new("toy", Split::Dev, examples).unwrap();
        set.save_jsonl(&path).unwrap();
        let reloaded = ExampleSet::load_jsonl(&path, "toy", Split::Dev).unwrap();
        assert_eq!(set, reloaded);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let e = Example::new("dup", "p", "q", vec!["a".into(), "b".into()], None, Subset::Other)
            .unwrap();
        assert!(matches!(
            ExampleSet::new("x", Split::Train, vec![e.clone(), e]),
            Err(Error::DuplicateId(_))
        ));
    }
}
