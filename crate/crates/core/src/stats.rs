//! Accuracy intervals, variance decomposition and ICC(1,1).
//!
//! The decomposition follows the one-way random-effects model
//! `Y_ij = μ + α_i + ε_ij`: `sigma_b2` is the sample variance of the question
//! means (divisor n − 1, centred on their unweighted mean) and `sigma_w2`
//! pools the per-question sample variances with weights Tᵢ − 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::special::{inv_norm_cdf, t_quantile};
use crate::{Error, Exec, Result, TrialMatrix};

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

/// Two-sided normal critical value z_{α/2}.
pub fn z_critical(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    inv_norm_cdf(1.0 - alpha / 2.0)
}

macro_rules! labelled_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $label:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $label)] $variant),+
        }

        impl $name {
            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $label),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

labelled_enum!(
    /// How an accuracy interval was constructed.
    CiMethod { Wald => "wald", ClusterT => "cluster_t" }
);

labelled_enum!(
    /// Interval used for the per-question accuracy profile.
    ProfileMethod { Wald => "wald", Wilson => "wilson" }
);

labelled_enum!(
    /// ICC estimator.
    ///
    /// `PaperNaive` plugs the raw variance of question means into
    /// σ²_b / (σ²_b + σ²_w); that between-variance carries an extra σ²_w/T, so
    /// the estimate is biased upward at small T. `AnovaCorrected` is the
    /// Shrout–Fleiss one-way ICC(1,1) from ANOVA mean squares, which removes
    /// the bias.
    IccVariant { PaperNaive => "paper_naive", AnovaCorrected => "anova_corrected" }
);

labelled_enum!(
    /// Reliability band: good at ICC ≥ 0.75, moderate on [0.50, 0.75), poor below.
    IccBand { Good => "good", Moderate => "moderate", Poor => "poor" }
);

// The macro cannot carry `#[default]` through to a single variant.
#[allow(clippy::derivable_impls)]
impl Default for IccVariant {
    fn default() -> Self {
        IccVariant::PaperNaive
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracySummary {
    pub mu_hat: f64,
    pub se: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub alpha: f64,
    /// Σ Tᵢ of the source data.
    pub n_total: usize,
    pub method: CiMethod,
}

/// Pooled accuracy over all trials with a Wald interval clamped to [0, 1].
pub fn accuracy(matrix: &TrialMatrix, alpha: f64) -> Result<AccuracySummary> {
    let z = z_critical(alpha)?;
    let n_total = matrix.total_trials();
    if n_total == 0 {
        return Err(Error::invalid("accuracy of an empty matrix is undefined"));
    }
    let mu_hat = matrix.total_correct() as f64 / n_total as f64;
    let se = (mu_hat * (1.0 - mu_hat) / n_total as f64).sqrt();
    Ok(AccuracySummary {
        mu_hat,
        se,
        ci_low: (mu_hat - z * se).clamp(0.0, 1.0),
        ci_high: (mu_hat + z * se).clamp(0.0, 1.0),
        alpha,
        n_total,
        method: CiMethod::Wald,
    })
}

/// Interval from question-level means: μ̂ ± t_{α/2, n−1} · sqrt(σ²_b / n).
pub fn cluster_accuracy_ci(decomp: &VarianceDecomposition, alpha: f64) -> Result<AccuracySummary> {
    cluster_interval(decomp.grand_mean, decomp.sigma_b2, decomp.n, decomp.total_trials(), alpha)
}

/// [`cluster_accuracy_ci`] from summary statistics alone.
pub fn cluster_interval(
    mu_hat: f64,
    sigma_b2: f64,
    n: usize,
    n_total: usize,
    alpha: f64,
) -> Result<AccuracySummary> {
    check_alpha(alpha)?;
    if n < 2 {
        return Err(Error::degenerate("need ≥2 questions for cluster CI"));
    }
    if !(sigma_b2 >= 0.0) {
        return Err(Error::invalid(format!("between-question variance must be non-negative, got {sigma_b2}")));
    }
    let t = t_quantile(1.0 - alpha / 2.0, n as u64 - 1)?;
    let se = (sigma_b2 / n as f64).sqrt();
    Ok(AccuracySummary {
        mu_hat,
        se,
        ci_low: (mu_hat - t * se).clamp(0.0, 1.0),
        ci_high: (mu_hat + t * se).clamp(0.0, 1.0),
        alpha,
        n_total,
        method: CiMethod::ClusterT,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuestionMean {
    pub question_id: String,
    pub mean: f64,
    pub trials: usize,
}

/// Between- and within-question variance components.
#[derive(Debug, Clone, PartialEq)]
pub struct VarianceDecomposition {
    pub sigma_b2: f64,
    pub sigma_w2: f64,
    /// Unweighted mean of the question means.
    pub grand_mean: f64,
    pub question_means: Vec<QuestionMean>,
    pub n: usize,
}

/// One-way ANOVA quantities derived from a decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSquares {
    pub msb: f64,
    pub msw: f64,
    /// Adjusted trial count (N − Σ Tᵢ² / N) / (n − 1); equals T when balanced.
    pub t0: f64,
}

impl VarianceDecomposition {
    pub fn total_trials(&self) -> usize {
        self.question_means.iter().map(|q| q.trials).sum()
    }

    /// Mean Tᵢ, the trial count used for SE(ICC) in unbalanced designs.
    pub fn mean_trials(&self) -> f64 {
        self.total_trials() as f64 / self.n as f64
    }

    /// sqrt(σ²_b / n).
    pub fn between_query_se(&self) -> f64 {
        (self.sigma_b2 / self.n as f64).sqrt()
    }

    pub fn mean_squares(&self) -> MeanSquares {
        let n_total = self.total_trials() as f64;
        let weighted_mean = self
            .question_means
            .iter()
            .map(|q| q.trials as f64 * q.mean)
            .sum::<f64>()
            / n_total;
        let ssb: f64 = self
            .question_means
            .iter()
            .map(|q| q.trials as f64 * (q.mean - weighted_mean).powi(2))
            .sum();
        let sum_sq_trials: f64 = self.question_means.iter().map(|q| (q.trials as f64).powi(2)).sum();
        let dof_b = (self.n - 1) as f64;
        MeanSquares {
            msb: ssb / dof_b,
            msw: self.sigma_w2,
            t0: (n_total - sum_sq_trials / n_total) / dof_b,
        }
    }
}

pub fn decompose_variance(matrix: &TrialMatrix) -> Result<VarianceDecomposition> {
    decompose_variance_with(matrix, Exec::default())
}

pub fn decompose_variance_with(matrix: &TrialMatrix, exec: Exec) -> Result<VarianceDecomposition> {
    decompose_scores(&matrix.scores(), exec)
}

/// Decomposes real-valued per-question scores. Binary outcomes are the usual
/// input; any finite scores are accepted.
pub fn decompose_scores<S: AsRef<str> + Sync>(rows: &[(S, Vec<f64>)], exec: Exec) -> Result<VarianceDecomposition> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::degenerate(format!(
            "variance decomposition needs at least 2 questions, got {n}"
        )));
    }
    if let Some((id, _)) = rows.iter().find(|(_, s)| s.is_empty()) {
        return Err(Error::invalid(format!("question {} has no trials", id.as_ref())));
    }
    if rows.iter().all(|(_, s)| s.len() < 2) {
        return Err(Error::degenerate(
            "within-variance undefined: every question has a single trial",
        ));
    }

    // (mean, sample variance, T) per question; reduced below in question order.
    let per_question = exec.map_indexed(n, |i| {
        let scores = &rows[i].1;
        let t = scores.len();
        let mean = scores.iter().sum::<f64>() / t as f64;
        let s2 = if t > 1 {
            scores.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / (t - 1) as f64
        } else {
            0.0
        };
        (mean, s2, t)
    });

    let grand_mean = per_question.iter().map(|q| q.0).sum::<f64>() / n as f64;
    let sigma_b2 = per_question.iter().map(|q| (q.0 - grand_mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let (weighted, dof) = per_question.iter().fold((0.0, 0.0), |(w, d), &(_, s2, t)| {
        let df = (t - 1) as f64;
        (w + df * s2, d + df)
    });
    let question_means = rows
        .iter()
        .zip(&per_question)
        .map(|((id, _), &(mean, _, trials))| QuestionMean {
            question_id: id.as_ref().to_string(),
            mean,
            trials,
        })
        .collect();
    Ok(VarianceDecomposition {
        sigma_b2,
        sigma_w2: weighted / dof,
        grand_mean,
        question_means,
        n,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IccEstimate {
    pub icc: f64,
    pub variant: IccVariant,
    /// MSB / MSW; infinite when there is no within-question variance.
    pub f_statistic: f64,
    /// None when the standard error is undefined (F = 0).
    pub se_icc: Option<f64>,
    pub band: IccBand,
    pub n: usize,
    /// Trials per question fed to the SE formula (mean Tᵢ).
    pub t_nominal: f64,
    /// Set when the ANOVA estimate was negative and clamped to 0.
    pub degenerate: bool,
}

/// ICC(1,1) of a decomposition, with its standard error filled in.
pub fn icc(decomp: &VarianceDecomposition, variant: IccVariant) -> Result<IccEstimate> {
    let total = decomp.sigma_b2 + decomp.sigma_w2;
    if !(total > 0.0) {
        return Err(Error::degenerate("zero total variance"));
    }
    let ms = decomp.mean_squares();
    let f_statistic = if ms.msw > 0.0 { ms.msb / ms.msw } else { f64::INFINITY };

    let (value, degenerate) = if decomp.sigma_w2 == 0.0 {
        (1.0, false)
    } else {
        match variant {
            IccVariant::PaperNaive => (decomp.sigma_b2 / total, false),
            IccVariant::AnovaCorrected => {
                let raw = (ms.msb - ms.msw) / (ms.msb + (ms.t0 - 1.0) * ms.msw);
                (raw.clamp(0.0, 1.0), raw < 0.0)
            }
        }
    };

    let t_nominal = decomp.mean_trials();
    let se_icc = if value >= 1.0 {
        Some(0.0)
    } else if f_statistic > 0.0 && f_statistic.is_finite() && t_nominal > 1.0 {
        Some(icc_se(value, decomp.n, t_nominal, f_statistic)?)
    } else {
        None
    };

    Ok(IccEstimate {
        icc: value,
        variant,
        f_statistic,
        se_icc,
        band: interpret_icc(value),
        n: decomp.n,
        t_nominal,
        degenerate,
    })
}

/// Approximate standard error of ICC(1,1):
/// sqrt(2(1−ICC)²(1+(T−1)ICC)² / (n(n−1)(T−1)F²)).
pub fn icc_se(icc: f64, n: usize, t: f64, f: f64) -> Result<f64> {
    if !(t > 1.0) {
        return Err(Error::invalid("SE undefined for single trial"));
    }
    if n < 2 {
        return Err(Error::invalid(format!("SE(ICC) needs at least 2 questions, got {n}")));
    }
    if !(f > 0.0) {
        return Err(Error::invalid(format!("F statistic must be positive, got {f}")));
    }
    if !(0.0..=1.0).contains(&icc) {
        return Err(Error::invalid(format!("ICC must lie in [0, 1], got {icc}")));
    }
    let n = n as f64;
    let num = 2.0 * (1.0 - icc).powi(2) * (1.0 + (t - 1.0) * icc).powi(2);
    let den = n * (n - 1.0) * (t - 1.0) * (f * f);
    Ok((num / den).sqrt())
}

pub fn interpret_icc(icc: f64) -> IccBand {
    if icc >= 0.75 {
        IccBand::Good
    } else if icc >= 0.50 {
        IccBand::Moderate
    } else {
        IccBand::Poor
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuestionInterval {
    pub question_id: String,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: usize,
}

/// Per-question accuracy with a Wald or Wilson interval.
pub fn question_accuracy_profile(
    matrix: &TrialMatrix,
    alpha: f64,
    method: ProfileMethod,
) -> Result<Vec<QuestionInterval>> {
    let z = z_critical(alpha)?;
    let rows: Vec<(&str, &[bool])> = matrix.rows().collect();
    Ok(Exec::default().map_indexed(rows.len(), |i| {
        let (id, outcomes) = rows[i];
        let t = outcomes.len() as f64;
        let p = outcomes.iter().filter(|&&o| o).count() as f64 / t;
        let (lo, hi) = match method {
            ProfileMethod::Wald => {
                let half = z * (p * (1.0 - p) / t).sqrt();
                (p - half, p + half)
            }
            ProfileMethod::Wilson => {
                let z2 = z * z;
                let denom = 1.0 + z2 / t;
                let centre = (p + z2 / (2.0 * t)) / denom;
                let half = z * (p * (1.0 - p) / t + z2 / (4.0 * t * t)).sqrt() / denom;
                (centre - half, centre + half)
            }
        };
        QuestionInterval {
            question_id: id.to_string(),
            p_hat: p,
            ci_low: lo.clamp(0.0, 1.0),
            ci_high: hi.clamp(0.0, 1.0),
            trials: outcomes.len(),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[(&str, &[u8])]) -> TrialMatrix {
        TrialMatrix::new(
            "b",
            "a",
            rows.iter().map(|(id, o)| (id.to_string(), o.iter().map(|&x| x == 1).collect())),
        )
        .unwrap()
    }

    fn three_question() -> TrialMatrix {
        matrix(&[("q1", &[1, 1]), ("q2", &[0, 1]), ("q3", &[0, 0])])
    }

    #[test]
    fn wald_accuracy_half_correct() {
        let ones = vec![1u8; 50];
        let zeros = vec![0u8; 50];
        let m = matrix(&[("q1", &ones), ("q2", &zeros)]);
        let s = accuracy(&m, 0.05).unwrap();
        assert_eq!(s.mu_hat, 0.5);
        assert!((s.se - 0.05).abs() < 1e-15);
        // scipy: 0.5 ∓ 1.959963984540054 · 0.05
        assert!((s.ci_low - 0.4020018007729973).abs() < 1e-12);
        assert!((s.ci_high - 0.5979981992270027).abs() < 1e-12);
        assert_eq!(s.n_total, 100);
        assert_eq!(s.method, CiMethod::Wald);
    }

    #[test]
    fn wald_accuracy_degenerate() {
        let s = accuracy(&matrix(&[("q1", &[1, 1, 1]), ("q2", &[1])]), 0.05).unwrap();
        assert_eq!((s.mu_hat, s.se, s.ci_low, s.ci_high), (1.0, 0.0, 1.0, 1.0));
        let s = accuracy(&matrix(&[("q1", &[0])]), 0.05).unwrap();
        assert_eq!((s.mu_hat, s.se, s.ci_low, s.ci_high), (0.0, 0.0, 0.0, 0.0));
        assert!(accuracy(&three_question(), 1.0).is_err());
    }

    #[test]
    fn cluster_interval_reproduces_published_rows() {
        let l1 = cluster_interval(0.227, 0.100, 53, 53 * 64, 0.05).unwrap();
        assert!((l1.ci_low - 0.140).abs() <= 0.005 && (l1.ci_high - 0.314).abs() <= 0.005);
        let l3 = cluster_interval(0.066, 0.019, 26, 26 * 64, 0.05).unwrap();
        assert!((l3.ci_low - 0.010).abs() <= 0.005 && (l3.ci_high - 0.122).abs() <= 0.005);
        assert_eq!(l3.method, CiMethod::ClusterT);
    }

    #[test]
    fn cluster_interval_edge_cases() {
        let s = cluster_interval(0.4, 0.0, 10, 40, 0.05).unwrap();
        assert_eq!((s.ci_low, s.ci_high), (0.4, 0.4));
        let err = cluster_interval(0.4, 0.1, 1, 4, 0.05).unwrap_err();
        assert!(err.to_string().contains("need ≥2 questions"));
    }

    #[test]
    fn decomposition_hand_oracle() {
        let d = decompose_variance(&three_question()).unwrap();
        assert!((d.grand_mean - 0.5).abs() < 1e-15);
        assert!((d.sigma_b2 - 0.25).abs() < 1e-15);
        assert!((d.sigma_w2 - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(d.n, 3);
        assert_eq!(d.question_means[1].question_id, "q2");
        assert_eq!(d.question_means[1].mean, 0.5);
    }

    #[test]
    fn decomposition_constant_and_unbalanced() {
        let d = decompose_variance(&matrix(&[("q1", &[1, 1]), ("q2", &[1, 1, 1])])).unwrap();
        assert_eq!((d.sigma_b2, d.sigma_w2), (0.0, 0.0));

        let d = decompose_variance(&matrix(&[("q1", &[0, 1]), ("q2", &[1, 1, 1, 1])])).unwrap();
        assert!((d.sigma_w2 - 0.125).abs() < 1e-15);
        // unweighted grand mean: (0.5 + 1) / 2
        assert!((d.grand_mean - 0.75).abs() < 1e-15);
    }

    #[test]
    fn single_trial_questions_only_feed_between_variance() {
        let d = decompose_variance(&matrix(&[("q1", &[1]), ("q2", &[0, 1]), ("q3", &[0, 0, 1, 1])])).unwrap();
        // (1·0.5 + 3·(1/3)) / (0 + 1 + 3)
        assert!((d.sigma_w2 - 0.375).abs() < 1e-15);
        let means = [1.0, 0.5, 0.5];
        let gm = 2.0 / 3.0;
        let sb = means.iter().map(|m: &f64| (m - gm).powi(2)).sum::<f64>() / 2.0;
        assert!((d.sigma_b2 - sb).abs() < 1e-15);
    }

    #[test]
    fn decomposition_errors() {
        let err = decompose_variance(&matrix(&[("q1", &[1, 0])])).unwrap_err();
        assert!(err.is_degenerate());
        let err = decompose_variance(&matrix(&[("q1", &[1]), ("q2", &[0])])).unwrap_err();
        assert!(err.to_string().contains("within-variance undefined"));
    }

    #[test]
    fn icc_hand_oracles() {
        let d = decompose_variance(&three_question()).unwrap();
        let naive = icc(&d, IccVariant::PaperNaive).unwrap();
        assert!((naive.icc - 0.6).abs() < 1e-12);
        assert!((naive.f_statistic - 3.0).abs() < 1e-12);
        assert_eq!(naive.band, IccBand::Moderate);
        assert_eq!(naive.t_nominal, 2.0);

        let anova = icc(&d, IccVariant::AnovaCorrected).unwrap();
        assert!((anova.icc - 0.5).abs() < 1e-12);
        assert!((anova.f_statistic - 3.0).abs() < 1e-12);
        assert!(!anova.degenerate);
        let ms = d.mean_squares();
        assert!((ms.msb - 0.5).abs() < 1e-15 && (ms.t0 - 2.0).abs() < 1e-15);
    }

    #[test]
    fn icc_perfectly_consistent_agent() {
        let d = decompose_variance(&matrix(&[("q1", &[1, 1]), ("q2", &[0, 0])])).unwrap();
        for variant in [IccVariant::PaperNaive, IccVariant::AnovaCorrected] {
            let e = icc(&d, variant).unwrap();
            assert_eq!(e.icc, 1.0);
            assert_eq!(e.band, IccBand::Good);
            assert!(e.f_statistic.is_infinite());
            assert_eq!(e.se_icc, Some(0.0));
        }
    }

    #[test]
    fn icc_degenerate_cases() {
        let d = decompose_variance(&matrix(&[("q1", &[1, 1]), ("q2", &[1, 1])])).unwrap();
        let err = icc(&d, IccVariant::PaperNaive).unwrap_err();
        assert!(err.to_string().contains("zero total variance"));

        // Identical question means: MSB = 0, ANOVA estimate negative.
        let d = decompose_variance(&matrix(&[("q1", &[1, 0]), ("q2", &[0, 1])])).unwrap();
        let e = icc(&d, IccVariant::AnovaCorrected).unwrap();
        assert_eq!(e.icc, 0.0);
        assert!(e.degenerate);
        assert_eq!(e.se_icc, None);
        assert_eq!(icc(&d, IccVariant::PaperNaive).unwrap().icc, 0.0);
    }

    #[test]
    fn icc_standard_error_points() {
        assert!((icc_se(0.5, 20, 4.0, 5.0).unwrap() - 0.010471347707292388).abs() < 1e-12);
        assert!((icc_se(0.3, 50, 8.0, 4.428571).unwrap() - 0.00529150313421013).abs() < 1e-9);
        assert_eq!(icc_se(1.0, 20, 4.0, 5.0).unwrap(), 0.0);
        let err = icc_se(0.5, 20, 1.0, 5.0).unwrap_err();
        assert!(err.to_string().contains("single trial"));
    }

    #[test]
    fn bands() {
        assert_eq!(interpret_icc(0.774), IccBand::Good);
        assert_eq!(interpret_icc(0.75), IccBand::Good);
        assert_eq!(interpret_icc(0.662), IccBand::Moderate);
        assert_eq!(interpret_icc(0.50), IccBand::Moderate);
        assert_eq!(interpret_icc(0.304), IccBand::Poor);
    }

    #[test]
    fn profile_wald_and_wilson() {
        let m = matrix(&[("q1", &[1, 1, 0, 1]), ("q2", &[0, 0, 0, 0]), ("q3", &[1])]);
        let wald = question_accuracy_profile(&m, 0.05, ProfileMethod::Wald).unwrap();
        assert_eq!(wald[0].p_hat, 0.75);
        assert!((wald[0].ci_low - 0.3256553497214356).abs() < 1e-12);
        assert_eq!(wald[0].ci_high, 1.0);
        assert_eq!((wald[1].ci_low, wald[1].ci_high), (0.0, 0.0));
        assert_eq!((wald[2].p_hat, wald[2].ci_low, wald[2].ci_high), (1.0, 1.0, 1.0));

        let wilson = question_accuracy_profile(&m, 0.05, ProfileMethod::Wilson).unwrap();
        assert!(wilson[1].ci_low.abs() < 1e-15);
        assert!((wilson[1].ci_high - 0.4898908364545973).abs() < 1e-12);
        assert!(wilson[0].ci_low < 0.75 && wilson[0].ci_high < 1.0);
    }
}
