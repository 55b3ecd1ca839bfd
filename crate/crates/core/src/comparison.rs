//! Paired comparison of two agents on the same question set.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::rng::substream;
use crate::special::chi2_sf_df1;
use crate::{Error, Exec, Result, TrialMatrix};

/// Per-question outcomes of agents A and B over an identical question list.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedOutcomes {
    pub question_ids: Vec<String>,
    pub a_means: Vec<f64>,
    pub b_means: Vec<f64>,
    pub a_trials: Vec<Vec<bool>>,
    pub b_trials: Vec<Vec<bool>>,
}

fn mean(outcomes: &[bool]) -> f64 {
    outcomes.iter().filter(|&&o| o).count() as f64 / outcomes.len() as f64
}

impl PairedOutcomes {
    /// Pairs two matrices; both must cover exactly the same questions.
    pub fn from_matrices(a: &TrialMatrix, b: &TrialMatrix) -> Result<Self> {
        if a.question_ids() != b.question_ids() {
            let only_a: Vec<&str> = a
                .question_ids()
                .iter()
                .filter(|q| !b.question_ids().contains(q))
                .map(String::as_str)
                .collect();
            let only_b: Vec<&str> = b
                .question_ids()
                .iter()
                .filter(|q| !a.question_ids().contains(q))
                .map(String::as_str)
                .collect();
            return Err(Error::invalid(format!(
                "agents were not evaluated on the same questions (only A: {only_a:?}, only B: {only_b:?})"
            )));
        }
        Ok(Self {
            question_ids: a.question_ids().to_vec(),
            a_means: a.outcomes().iter().map(|o| mean(o)).collect(),
            b_means: b.outcomes().iter().map(|o| mean(o)).collect(),
            a_trials: a.outcomes().to_vec(),
            b_trials: b.outcomes().to_vec(),
        })
    }

    /// Pairs per-question accuracies without raw trials (bootstrap only).
    pub fn from_means(question_ids: Vec<String>, a_means: Vec<f64>, b_means: Vec<f64>) -> Result<Self> {
        if question_ids.len() != a_means.len() || a_means.len() != b_means.len() {
            return Err(Error::invalid("paired mean vectors differ in length"));
        }
        Ok(Self {
            question_ids,
            a_means,
            b_means,
            a_trials: Vec::new(),
            b_trials: Vec::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.question_ids.len()
    }

    /// The same pairs with A and B exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            question_ids: self.question_ids.clone(),
            a_means: self.b_means.clone(),
            b_means: self.a_means.clone(),
            a_trials: self.b_trials.clone(),
            b_trials: self.a_trials.clone(),
        }
    }
}

/// How an agent's trials on one question collapse to a single verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialSelector {
    #[default]
    FirstTrial,
    /// Strict majority correct; ties count as incorrect.
    MajorityVote,
}

impl TrialSelector {
    fn verdict(self, outcomes: &[bool]) -> bool {
        match self {
            TrialSelector::FirstTrial => outcomes[0],
            TrialSelector::MajorityVote => 2 * outcomes.iter().filter(|&&o| o).count() > outcomes.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McNemarResult {
    /// Questions where A is wrong and B is right.
    pub n01: u64,
    /// Questions where A is right and B is wrong.
    pub n10: u64,
    pub chi2: f64,
    pub p_value: f64,
    pub continuity_corrected: bool,
}

/// McNemar's test on one verdict per question and agent.
pub fn mcnemar(pairs: &PairedOutcomes, selector: TrialSelector) -> Result<McNemarResult> {
    if pairs.a_trials.len() != pairs.n() || pairs.b_trials.len() != pairs.n() {
        return Err(Error::invalid("McNemar needs raw trials for both agents"));
    }
    let (mut n01, mut n10) = (0u64, 0u64);
    for (qid, (a, b)) in pairs.question_ids.iter().zip(pairs.a_trials.iter().zip(&pairs.b_trials)) {
        if a.is_empty() || b.is_empty() {
            return Err(Error::invalid(format!("question {qid} lacks trials for one agent")));
        }
        match (selector.verdict(a), selector.verdict(b)) {
            (false, true) => n01 += 1,
            (true, false) => n10 += 1,
            _ => {}
        }
    }
    mcnemar_counts(n01, n10)
}

/// Continuity-corrected McNemar statistic from discordant counts.
/// |n01 − n10| − 1 is clamped at zero so symmetric discordance gives p = 1.
pub fn mcnemar_counts(n01: u64, n10: u64) -> Result<McNemarResult> {
    let discordant = n01 + n10;
    if discordant == 0 {
        return Err(Error::degenerate("no discordant pairs; test undefined"));
    }
    let excess = (n01.abs_diff(n10) as f64 - 1.0).max(0.0);
    let chi2 = excess * excess / discordant as f64;
    Ok(McNemarResult {
        n01,
        n10,
        chi2,
        p_value: chi2_sf_df1(chi2)?,
        continuity_corrected: true,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapResult {
    /// Observed mean(A) − mean(B) over question-level accuracies.
    pub delta_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub replicates: usize,
    pub seed: u64,
    pub alpha: f64,
}

pub const MIN_REPLICATES: usize = 100;

pub fn paired_bootstrap(pairs: &PairedOutcomes, replicates: usize, seed: u64, alpha: f64) -> Result<BootstrapResult> {
    paired_bootstrap_with(pairs, replicates, seed, alpha, Exec::default())
}

/// Percentile bootstrap over questions for the accuracy difference A − B.
///
/// Replicate `r` resamples question indices from ChaCha8 stream `r` of
/// `seed`, so the result does not depend on `exec`.
pub fn paired_bootstrap_with(
    pairs: &PairedOutcomes,
    replicates: usize,
    seed: u64,
    alpha: f64,
    exec: Exec,
) -> Result<BootstrapResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if replicates < MIN_REPLICATES {
        return Err(Error::invalid(format!(
            "too few replicates: {replicates} (minimum {MIN_REPLICATES})"
        )));
    }
    let n = pairs.n();
    if n < 2 {
        return Err(Error::degenerate(format!("bootstrap needs at least 2 questions, got {n}")));
    }
    let diffs: Vec<f64> = pairs.a_means.iter().zip(&pairs.b_means).map(|(a, b)| a - b).collect();
    let delta_hat = mean_of(&pairs.a_means) - mean_of(&pairs.b_means);

    let mut stats = exec.map_indexed(replicates, |r| {
        let mut rng = substream(seed, r as u64);
        let sum: f64 = (0..n).map(|_| diffs[rng.random_range(0..n)]).sum();
        sum / n as f64
    });
    stats.sort_by(f64::total_cmp);
    let (lo, hi) = percentile_indices(replicates, alpha);
    Ok(BootstrapResult {
        delta_hat,
        ci_low: stats[lo],
        ci_high: stats[hi],
        replicates,
        seed,
        alpha,
    })
}

fn mean_of(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Order-statistic indices of the [α/2, 1 − α/2] percentile interval.
fn percentile_indices(replicates: usize, alpha: f64) -> (usize, usize) {
    let r = replicates as f64;
    let last = replicates - 1;
    let lo = ((alpha / 2.0 * r).floor() as usize).min(last);
    let hi = (((1.0 - alpha / 2.0) * r).ceil() as usize).saturating_sub(1).clamp(lo, last);
    (lo, hi)
}
