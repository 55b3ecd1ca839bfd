//! Synthetic trial matrices with known variance components.
//!
//! Question i draws its success probability pᵢ from the difficulty model and
//! then Tᵢ Bernoulli(pᵢ) outcomes, all from ChaCha8 stream i of the [`SimSpec`]
//! seed. This is the binary analogue of the random-effects model: σ²_b is the
//! variance of pᵢ and σ²_w the mean Bernoulli variance pᵢ(1 − pᵢ).

use rand::Rng;
use rand_distr::{Beta, Distribution};
use serde::Serialize;

use crate::ingest::TrialRecord;
use crate::rng::substream;
use crate::{Error, Exec, Result, TrialMatrix};

pub const SIM_BENCHMARK: &str = "synthetic";
pub const SIM_AGENT: &str = "simulated";

#[derive(Debug, Clone, PartialEq)]
pub enum DifficultyModel {
    Beta { a: f64, b: f64 },
    /// Probabilities assigned to questions in order, cycling when the list is
    /// shorter than the question count.
    Fixed(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimSpec {
    pub n_questions: usize,
    pub trials_per_question: usize,
    pub difficulty: DifficultyModel,
    pub seed: u64,
}

/// Population variance components of a [`SimSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrueComponents {
    #[serde(serialize_with = "crate::reporting::sig6")]
    pub sigma_b2_true: f64,
    #[serde(serialize_with = "crate::reporting::sig6")]
    pub sigma_w2_true: f64,
    /// NaN when both components are zero.
    #[serde(serialize_with = "crate::reporting::sig6")]
    pub icc_true: f64,
}

impl SimSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_questions == 0 {
            return Err(Error::invalid("simulation needs at least one question"));
        }
        if self.trials_per_question == 0 {
            return Err(Error::invalid("simulation needs at least one trial per question"));
        }
        match &self.difficulty {
            DifficultyModel::Beta { a, b } => {
                if !(*a > 0.0 && *b > 0.0 && a.is_finite() && b.is_finite()) {
                    return Err(Error::invalid(format!(
                        "beta parameters must be positive and finite, got ({a}, {b})"
                    )));
                }
            }
            DifficultyModel::Fixed(ps) => {
                if ps.is_empty() {
                    return Err(Error::invalid("fixed difficulty list is empty"));
                }
                if let Some(p) = ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
                    return Err(Error::invalid(format!("probability {p} outside [0, 1]")));
                }
            }
        }
        Ok(())
    }

    fn question_id(&self, i: usize) -> String {
        let width = (self.n_questions.saturating_sub(1)).to_string().len().max(3);
        format!("q{i:0width$}")
    }
}

pub fn true_components(spec: &SimSpec) -> Result<TrueComponents> {
    spec.validate()?;
    let (sb, sw) = match &spec.difficulty {
        DifficultyModel::Beta { a, b } => {
            let s = a + b;
            (a * b / (s * s * (s + 1.0)), a * b / (s * (s + 1.0)))
        }
        DifficultyModel::Fixed(ps) => {
            let assigned: Vec<f64> = (0..spec.n_questions).map(|i| ps[i % ps.len()]).collect();
            let n = assigned.len() as f64;
            let mean = assigned.iter().sum::<f64>() / n;
            let sb = assigned.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / n;
            let sw = assigned.iter().map(|p| p * (1.0 - p)).sum::<f64>() / n;
            (sb, sw)
        }
    };
    let icc_true = match &spec.difficulty {
        DifficultyModel::Beta { a, b } => 1.0 / (a + b + 1.0),
        DifficultyModel::Fixed(_) => sb / (sb + sw),
    };
    Ok(TrueComponents {
        sigma_b2_true: sb,
        sigma_w2_true: sw,
        icc_true,
    })
}

pub fn sample_dataset(spec: &SimSpec) -> Result<TrialMatrix> {
    sample_dataset_with(spec, Exec::default())
}

pub fn sample_dataset_with(spec: &SimSpec, exec: Exec) -> Result<TrialMatrix> {
    spec.validate()?;
    let beta = match &spec.difficulty {
        DifficultyModel::Beta { a, b } => {
            Some(Beta::new(*a, *b).map_err(|e| Error::invalid(format!("beta distribution: {e}")))?)
        }
        DifficultyModel::Fixed(_) => None,
    };
    let rows = exec.map_indexed(spec.n_questions, |i| {
        let mut rng = substream(spec.seed, i as u64);
        let p = match (&spec.difficulty, &beta) {
            (DifficultyModel::Fixed(ps), _) => ps[i % ps.len()],
            (_, Some(beta)) => beta.sample(&mut rng),
            (DifficultyModel::Beta { .. }, None) => unreachable!("beta built above"),
        };
        let outcomes = (0..spec.trials_per_question)
            .map(|_| rng.random::<f64>() < p)
            .collect();
        (spec.question_id(i), outcomes)
    });
    TrialMatrix::new(SIM_BENCHMARK, SIM_AGENT, rows)
}

/// Flattens a matrix back into trial records (trial indices 0..Tᵢ).
pub fn matrix_records(matrix: &TrialMatrix) -> Vec<TrialRecord> {
    matrix
        .rows()
        .flat_map(|(q, outcomes)| {
            outcomes.iter().enumerate().map(move |(t, &o)| TrialRecord {
                benchmark_id: matrix.benchmark_id().to_string(),
                agent_id: matrix.agent_id().to_string(),
                question_id: q.to_string(),
                trial_index: t as u64,
                outcome: o,
                level: matrix.level().map(str::to_string),
            })
        })
        .collect()
}
