//! Experiment planning: estimator variance under a trial budget, ICC
//! convergence curves and trial counts for a target SE(ICC).

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::rng::{stream_id, substream};
use crate::stats::{decompose_scores, icc, icc_se, IccVariant};
use crate::{Error, Exec, Result, TrialMatrix};

/// Var(μ̂) = σ²_b / n + σ²_w / (n·t).
pub fn estimator_variance(sigma_b2: f64, sigma_w2: f64, n: u64, t: u64) -> f64 {
    sigma_b2 / n as f64 + sigma_w2 / (n * t) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Allocation {
    pub n: u64,
    pub t: u64,
    #[serde(serialize_with = "crate::reporting::sig6")]
    pub variance: f64,
    #[serde(serialize_with = "crate::reporting::sig6")]
    pub se: f64,
}

impl Allocation {
    fn new(sigma_b2: f64, sigma_w2: f64, n: u64, t: u64) -> Self {
        let variance = estimator_variance(sigma_b2, sigma_w2, n, t);
        Self { n, t, variance, se: variance.sqrt() }
    }
}

/// Optimum of the continuous relaxation (real-valued T = B / n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuousOptimum {
    #[serde(serialize_with = "crate::reporting::sig6")]
    pub n: f64,
    #[serde(serialize_with = "crate::reporting::sig6")]
    pub t: f64,
    #[serde(serialize_with = "crate::reporting::sig6")]
    pub variance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetPlan {
    #[serde(serialize_with = "crate::reporting::sig6")]
    pub sigma_b2: f64,
    #[serde(serialize_with = "crate::reporting::sig6")]
    pub sigma_w2: f64,
    pub budget: u64,
    pub n_max: u64,
    /// For every feasible n, the largest T with n·T ≤ budget.
    pub allocations: Vec<Allocation>,
    pub recommended: Allocation,
    pub continuous: ContinuousOptimum,
}

/// Enumerates allocations of `budget` trials and picks the one with the
/// smallest estimator variance (ties go to more questions).
///
/// With items to spare this is n = budget, T = 1; once `n_max` binds, the
/// leftover budget goes to T.
pub fn budget_plan(sigma_b2: f64, sigma_w2: f64, budget: u64, n_max: u64) -> Result<BudgetPlan> {
    for (name, v) in [("sigma_b2", sigma_b2), ("sigma_w2", sigma_w2)] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::invalid(format!("{name} must be a non-negative finite number, got {v}")));
        }
    }
    if budget < 2 {
        return Err(Error::invalid(format!("budget must be at least 2 trials, got {budget}")));
    }
    if n_max < 1 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let n_cap = n_max.min(budget);
    let allocations: Vec<Allocation> = (1..=n_cap)
        .map(|n| Allocation::new(sigma_b2, sigma_w2, n, budget / n))
        .collect();
    let recommended = *allocations
        .iter()
        .reduce(|best, a| if a.variance <= best.variance { a } else { best })
        .expect("n_cap >= 1");
    let n_star = n_cap as f64;
    let continuous = ContinuousOptimum {
        n: n_star,
        t: budget as f64 / n_star,
        variance: sigma_b2 / n_star + sigma_w2 / budget as f64,
    };
    Ok(BudgetPlan {
        sigma_b2,
        sigma_w2,
        budget,
        n_max,
        allocations,
        recommended,
        continuous,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsampleMode {
    /// First t trials of every question, once.
    Prefix,
    /// Independent without-replacement subsets, repeated per resample.
    #[default]
    Random,
}

impl SubsampleMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SubsampleMode::Prefix => "prefix",
            SubsampleMode::Random => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergencePoint {
    pub t_sub: usize,
    pub icc_mean: f64,
    /// Sample SD across resamples; 0 for prefix mode or a single resample.
    pub icc_sd: f64,
    pub resamples: usize,
    pub mode: SubsampleMode,
    pub variant: IccVariant,
}

pub fn icc_convergence(
    matrix: &TrialMatrix,
    trial_counts: &[usize],
    resamples: usize,
    seed: u64,
    mode: SubsampleMode,
    variant: IccVariant,
) -> Result<Vec<ConvergencePoint>> {
    icc_convergence_with(matrix, trial_counts, resamples, seed, mode, variant, Exec::default())
}

/// ICC as a function of trials per question.
///
/// In random mode, resample `r` at the `k`-th trial count draws from stream
/// (k, r) of `seed`; every (k, r) cell is independent work.
pub fn icc_convergence_with(
    matrix: &TrialMatrix,
    trial_counts: &[usize],
    resamples: usize,
    seed: u64,
    mode: SubsampleMode,
    variant: IccVariant,
    exec: Exec,
) -> Result<Vec<ConvergencePoint>> {
    if trial_counts.is_empty() {
        return Err(Error::invalid("no trial counts requested"));
    }
    if trial_counts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(format!("trial counts must be strictly increasing: {trial_counts:?}")));
    }
    if resamples == 0 {
        return Err(Error::invalid("resamples must be at least 1"));
    }
    for &t_sub in trial_counts {
        if t_sub == 0 {
            return Err(Error::invalid("trial counts must be positive"));
        }
        if let Some((q, o)) = matrix.rows().find(|(_, o)| o.len() < t_sub) {
            return Err(Error::invalid(format!(
                "question {q} has only {} trials, fewer than requested {t_sub}",
                o.len()
            )));
        }
    }

    let rows: Vec<(&str, &[bool])> = matrix.rows().collect();
    let per_count = match mode {
        SubsampleMode::Prefix => 1,
        SubsampleMode::Random => resamples,
    };
    let cells = trial_counts.len() * per_count;
    let values = exec.try_map_indexed(cells, |cell| {
        let (k, r) = (cell / per_count, cell % per_count);
        let t_sub = trial_counts[k];
        let sub: Vec<(&str, Vec<f64>)> = match mode {
            SubsampleMode::Prefix => rows
                .iter()
                .map(|(q, o)| (*q, o[..t_sub].iter().map(|&x| f64::from(u8::from(x))).collect()))
                .collect(),
            SubsampleMode::Random => {
                let mut rng = substream(seed, stream_id(k, r));
                rows.iter()
                    .map(|(q, o)| {
                        let picked = sample(&mut rng, o.len(), t_sub);
                        (*q, picked.iter().map(|j| f64::from(u8::from(o[j]))).collect())
                    })
                    .collect()
            }
        };
        let decomp = decompose_scores(&sub, Exec::Sequential)?;
        Ok::<f64, Error>(icc(&decomp, variant)?.icc)
    })?;

    Ok(trial_counts
        .iter()
        .zip(values.chunks(per_count))
        .map(|(&t_sub, vals)| {
            let m = vals.len() as f64;
            let mean = vals.iter().sum::<f64>() / m;
            let sd = if vals.len() > 1 {
                (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0)).sqrt()
            } else {
                0.0
            };
            ConvergencePoint {
                t_sub,
                icc_mean: mean,
                icc_sd: sd,
                resamples: vals.len(),
                mode,
                variant,
            }
        })
        .collect())
}

pub const MAX_PLANNED_TRIALS: u64 = 1_000_000;

/// F implied by an ICC under a balanced design: (1 + (T−1)·ICC) / (1 − ICC).
pub fn balanced_f(icc: f64, t: f64) -> f64 {
    (1.0 + (t - 1.0) * icc) / (1.0 - icc)
}

/// Smallest T ≥ 2 whose predicted SE(ICC) meets `target_se`, or `None` when
/// no T up to [`MAX_PLANNED_TRIALS`] does.
pub fn trials_for_target_se(icc_guess: f64, n: usize, target_se: f64) -> Result<Option<u64>> {
    if !(icc_guess > 0.0 && icc_guess < 1.0) {
        return Err(Error::invalid(format!("icc_guess must lie in (0, 1), got {icc_guess}")));
    }
    if n < 2 {
        return Err(Error::invalid(format!("n must be at least 2, got {n}")));
    }
    if !(target_se > 0.0) {
        return Err(Error::invalid(format!("target SE must be positive, got {target_se}")));
    }
    for t in 2..=MAX_PLANNED_TRIALS {
        let tf = t as f64;
        if icc_se(icc_guess, n, tf, balanced_f(icc_guess, tf))? <= target_se {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
