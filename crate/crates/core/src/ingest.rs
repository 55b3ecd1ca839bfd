//! Parsing, validation and grouping of trial-level evaluation logs.
//!
//! Two line formats are accepted. JSONL carries one object per line with the
//! keys `benchmark`, `agent`, `question_id`, `trial`, `correct` and an
//! optional `level`; CSV carries a header row with the same column names.
//! Unknown keys and columns are ignored. Identifiers are restricted to
//! `[A-Za-z0-9_.-]` so downstream CSV output never needs quoting.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One binary outcome of one trial of one question by one agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub benchmark_id: String,
    pub agent_id: String,
    pub question_id: String,
    pub trial_index: u64,
    pub outcome: bool,
    pub level: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogFormat {
    Jsonl,
    Csv,
}

impl LogFormat {
    /// Guesses the format from a file extension; anything but `.csv` is JSONL.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => LogFormat::Csv,
            _ => LogFormat::Jsonl,
        }
    }
}

// Every field optional so a missing key can be reported by name.
#[derive(Debug, Deserialize)]
struct RawRecord {
    benchmark: Option<String>,
    agent: Option<String>,
    question_id: Option<String>,
    trial: Option<i64>,
    correct: Option<i64>,
    level: Option<String>,
}

#[derive(Serialize)]
struct JsonlRow<'a> {
    benchmark: &'a str,
    agent: &'a str,
    question_id: &'a str,
    trial: u64,
    correct: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    level: Option<&'a str>,
}

pub fn is_valid_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'-'))
}

fn require<T>(value: Option<T>, key: &str, line: usize) -> Result<T> {
    value.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing required field `{key}`"),
    })
}

fn require_id(value: Option<String>, key: &str, line: usize) -> Result<String> {
    let id = require(value, key, line)?;
    if !is_valid_id(&id) {
        return Err(Error::Parse {
            line,
            message: format!("invalid {key} {id:?}: identifiers must match [A-Za-z0-9_.-]+"),
        });
    }
    Ok(id)
}

impl RawRecord {
    fn validate(self, line: usize) -> Result<TrialRecord> {
        let benchmark_id = require_id(self.benchmark, "benchmark", line)?;
        let agent_id = require_id(self.agent, "agent", line)?;
        let question_id = require_id(self.question_id, "question_id", line)?;
        let trial = require(self.trial, "trial", line)?;
        let correct = require(self.correct, "correct", line)?;
        if trial < 0 {
            return Err(Error::Parse {
                line,
                message: format!("trial index must be non-negative, got {trial}"),
            });
        }
        let outcome = match correct {
            0 => false,
            1 => true,
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("outcome out of range: {other} (expected 0 or 1)"),
                })
            }
        };
        Ok(TrialRecord {
            benchmark_id,
            agent_id,
            question_id,
            trial_index: trial as u64,
            outcome,
            level: self.level,
        })
    }
}

/// Parses a trial log. Line order is preserved; blank JSONL lines are skipped.
pub fn parse_trials<R: Read>(mut input: R, format: LogFormat) -> Result<Vec<TrialRecord>> {
    match format {
        LogFormat::Jsonl => {
            let mut text = String::new();
            input.read_to_string(&mut text).map_err(|e| Error::Parse {
                line: 0,
                message: format!("input is not valid UTF-8 text: {e}"),
            })?;
            parse_jsonl(&text)
        }
        LogFormat::Csv => parse_csv(input),
    }
}

fn parse_jsonl(text: &str) -> Result<Vec<TrialRecord>> {
    let mut records = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        if raw_line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord = serde_json::from_str(raw_line).map_err(|e| Error::Parse {
            line,
            message: format!("malformed JSON: {e}"),
        })?;
        records.push(raw.validate(line)?);
    }
    Ok(records)
}

fn parse_csv<R: Read>(input: R) -> Result<Vec<TrialRecord>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse {
            line: 1,
            message: format!("unreadable CSV header: {e}"),
        })?
        .clone();
    for key in ["benchmark", "agent", "question_id", "trial", "correct"] {
        if !headers.iter().any(|h| h == key) {
            return Err(Error::Parse {
                line: 1,
                message: format!("missing required column `{key}`"),
            });
        }
    }
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: format!("malformed CSV row: {e}"),
        })?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let mut raw: RawRecord = row.deserialize(Some(&headers)).map_err(|e| Error::Parse {
            line,
            message: format!("malformed CSV row: {e}"),
        })?;
        if raw.level.as_deref() == Some("") {
            raw.level = None;
        }
        records.push(raw.validate(line)?);
    }
    Ok(records)
}

/// Serializes records in the same schema [`parse_trials`] reads.
pub fn write_trials(records: &[TrialRecord], format: LogFormat) -> String {
    let mut out = String::new();
    match format {
        LogFormat::Jsonl => {
            for r in records {
                let row = JsonlRow {
                    benchmark: &r.benchmark_id,
                    agent: &r.agent_id,
                    question_id: &r.question_id,
                    trial: r.trial_index,
                    correct: r.outcome as u8,
                    level: r.level.as_deref(),
                };
                // Serializing plain strings and integers cannot fail.
                out.push_str(&serde_json::to_string(&row).expect("trial row serializes"));
                out.push('\n');
            }
        }
        LogFormat::Csv => {
            out.push_str("benchmark,agent,question_id,trial,correct,level\n");
            for r in records {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.benchmark_id,
                    r.agent_id,
                    r.question_id,
                    r.trial_index,
                    r.outcome as u8,
                    csv_field(r.level.as_deref().unwrap_or(""))
                );
            }
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) || s.trim() != s {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Outcomes of one agent on one benchmark, grouped by question.
///
/// Questions are kept in lexicographic id order and each question's outcomes
/// in trial-index order, so the matrix is a canonical function of the record
/// set regardless of input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialMatrix {
    benchmark_id: String,
    agent_id: String,
    level: Option<String>,
    question_ids: Vec<String>,
    outcomes: Vec<Vec<bool>>,
}

impl TrialMatrix {
    /// Builds a matrix from already-grouped rows. Rows are sorted by id.
    pub fn new(
        benchmark_id: impl Into<String>,
        agent_id: impl Into<String>,
        rows: impl IntoIterator<Item = (String, Vec<bool>)>,
    ) -> Result<Self> {
        let mut rows: Vec<(String, Vec<bool>)> = rows.into_iter().collect();
        if rows.is_empty() {
            return Err(Error::invalid("a trial matrix needs at least one question"));
        }
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        let mut seen = HashSet::new();
        for (id, outcomes) in &rows {
            if !seen.insert(id.as_str()) {
                return Err(Error::invalid(format!("question {id} appears twice")));
            }
            if outcomes.is_empty() {
                return Err(Error::invalid(format!("question {id} has no trials")));
            }
        }
        let (question_ids, outcomes) = rows.into_iter().unzip();
        Ok(Self {
            benchmark_id: benchmark_id.into(),
            agent_id: agent_id.into(),
            level: None,
            question_ids,
            outcomes,
        })
    }

    pub fn with_level(mut self, level: Option<String>) -> Self {
        self.level = level;
        self
    }

    pub fn benchmark_id(&self) -> &str {
        &self.benchmark_id
    }

    pub fn agent_id(&self) -> &str {
        &self.agent_id
    }

    pub fn level(&self) -> Option<&str> {
        self.level.as_deref()
    }

    pub fn question_ids(&self) -> &[String] {
        &self.question_ids
    }

    pub fn outcomes(&self) -> &[Vec<bool>] {
        &self.outcomes
    }

    pub fn n_questions(&self) -> usize {
        self.question_ids.len()
    }

    /// Tᵢ for each question, in question order.
    pub fn trial_counts(&self) -> Vec<usize> {
        self.outcomes.iter().map(Vec::len).collect()
    }

    /// N = Σ Tᵢ.
    pub fn total_trials(&self) -> usize {
        self.outcomes.iter().map(Vec::len).sum()
    }

    pub fn total_correct(&self) -> usize {
        self.outcomes.iter().flatten().filter(|&&o| o).count()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&str, &[bool])> {
        self.question_ids
            .iter()
            .map(String::as_str)
            .zip(self.outcomes.iter().map(Vec::as_slice))
    }

    /// Outcomes as 0/1 scores, the input shape of the variance routines.
    pub fn scores(&self) -> Vec<(&str, Vec<f64>)> {
        self.rows()
            .map(|(id, o)| (id, o.iter().map(|&x| if x { 1.0 } else { 0.0 }).collect()))
            .collect()
    }
}

/// Groups the records of one agent on one benchmark into a [`TrialMatrix`].
pub fn build_matrix(records: &[TrialRecord], agent_id: &str, benchmark_id: &str) -> Result<TrialMatrix> {
    build_matrix_for_level(records, agent_id, benchmark_id, None)
}

/// As [`build_matrix`], additionally keeping only records whose `level` tag
/// equals `level` when one is given.
pub fn build_matrix_for_level(
    records: &[TrialRecord],
    agent_id: &str,
    benchmark_id: &str,
    level: Option<&str>,
) -> Result<TrialMatrix> {
    let mut grouped: BTreeMap<&str, BTreeMap<u64, bool>> = BTreeMap::new();
    let mut matched = 0usize;
    for r in records.iter().filter(|r| {
        r.agent_id == agent_id
            && r.benchmark_id == benchmark_id
            && level.is_none_or(|l| r.level.as_deref() == Some(l))
    }) {
        matched += 1;
        let trials = grouped.entry(r.question_id.as_str()).or_default();
        if trials.insert(r.trial_index, r.outcome).is_some() {
            return Err(Error::DuplicateKey {
                question_id: r.question_id.clone(),
                trial: r.trial_index,
            });
        }
    }
    if matched == 0 {
        return Err(Error::NoRecords {
            agent: agent_id.to_string(),
            benchmark: benchmark_id.to_string(),
        });
    }
    let rows = grouped
        .into_iter()
        .map(|(q, trials)| (q.to_string(), trials.into_values().collect()));
    Ok(TrialMatrix::new(benchmark_id, agent_id, rows)?.with_level(level.map(str::to_string)))
}
