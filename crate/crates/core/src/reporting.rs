//! Output documents: the analysis report, the comparison report, Evaluation
//! Cards and plot-ready CSV.
//!
//! Analysis-type JSON documents print floats with 6 significant digits via
//! [`sig6`]; card JSON keeps full precision so it round-trips exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::comparison::{BootstrapResult, McNemarResult, TrialSelector};
use crate::design::ConvergencePoint;
use crate::stats::{
    accuracy, cluster_accuracy_ci, decompose_variance, icc, question_accuracy_profile, AccuracySummary, CiMethod,
    IccBand, IccEstimate, IccVariant, ProfileMethod, QuestionInterval, QuestionMean, VarianceDecomposition,
};
use crate::{Error, Result, TrialMatrix};

/// Formats `v` with 6 significant digits, keeping trailing zeros
/// (`0.6` → `0.600000`). Non-finite values become `null`.
pub fn format_sig6(v: f64) -> String {
    if !v.is_finite() {
        return "null".to_string();
    }
    if v == 0.0 {
        return "0.00000".to_string();
    }
    let sci = format!("{v:.5e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        format!("{:.*}", (5 - exp).max(0) as usize, v)
    } else {
        sci
    }
}

pub fn sig6<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    RawValue::from_string(format_sig6(*v))
        .map_err(serde::ser::Error::custom)?
        .serialize(s)
}

pub fn sig6_opt<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => sig6(v, s),
        None => s.serialize_none(),
    }
}

pub fn sig6_pair<S: Serializer>(v: &[f64; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    RawValue::from_string(format!("[{},{}]", format_sig6(v[0]), format_sig6(v[1])))
        .map_err(serde::ser::Error::custom)?
        .serialize(s)
}

/// Compact JSON followed by a newline.
pub fn to_json_line<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string(doc)?;
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyDoc {
    #[serde(serialize_with = "sig6")]
    pub accuracy: f64,
    #[serde(serialize_with = "sig6")]
    pub se: f64,
    #[serde(serialize_with = "sig6_pair")]
    pub ci: [f64; 2],
    #[serde(serialize_with = "sig6")]
    pub alpha: f64,
    pub method: CiMethod,
    pub n_total: usize,
}

impl From<&AccuracySummary> for AccuracyDoc {
    fn from(s: &AccuracySummary) -> Self {
        Self {
            accuracy: s.mu_hat,
            se: s.se,
            ci: [s.ci_low, s.ci_high],
            alpha: s.alpha,
            method: s.method,
            n_total: s.n_total,
        }
    }
}

impl From<&AccuracyDoc> for AccuracySummary {
    fn from(d: &AccuracyDoc) -> Self {
        Self {
            mu_hat: d.accuracy,
            se: d.se,
            ci_low: d.ci[0],
            ci_high: d.ci[1],
            alpha: d.alpha,
            n_total: d.n_total,
            method: d.method,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IccDoc {
    #[serde(serialize_with = "sig6")]
    pub icc: f64,
    pub icc_variant: IccVariant,
    #[serde(serialize_with = "sig6_opt")]
    pub icc_se: Option<f64>,
    /// `null` when infinite (no within-question variance).
    #[serde(serialize_with = "sig6_opt")]
    pub f_statistic: Option<f64>,
    pub band: IccBand,
    #[serde(serialize_with = "sig6")]
    pub t_nominal: f64,
    pub degenerate: bool,
}

impl From<&IccEstimate> for IccDoc {
    fn from(e: &IccEstimate) -> Self {
        Self {
            icc: e.icc,
            icc_variant: e.variant,
            icc_se: e.se_icc,
            f_statistic: e.f_statistic.is_finite().then_some(e.f_statistic),
            band: e.band,
            t_nominal: e.t_nominal,
            degenerate: e.degenerate,
        }
    }
}

impl IccDoc {
    fn to_estimate(&self, n: usize) -> IccEstimate {
        IccEstimate {
            icc: self.icc,
            variant: self.icc_variant,
            f_statistic: self.f_statistic.unwrap_or(f64::INFINITY),
            se_icc: self.icc_se,
            band: self.band,
            n,
            t_nominal: self.t_nominal,
            degenerate: self.degenerate,
        }
    }
}

/// Accuracy ± CI | ICC | between-query SE.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleDoc {
    #[serde(serialize_with = "sig6")]
    pub accuracy: f64,
    #[serde(serialize_with = "sig6_pair")]
    pub ci: [f64; 2],
    #[serde(serialize_with = "sig6")]
    pub icc: f64,
    pub icc_variant: IccVariant,
    #[serde(serialize_with = "sig6")]
    pub between_query_se: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileDoc {
    pub question_id: String,
    #[serde(serialize_with = "sig6")]
    pub p_hat: f64,
    #[serde(serialize_with = "sig6")]
    pub ci_low: f64,
    #[serde(serialize_with = "sig6")]
    pub ci_high: f64,
    pub trials: usize,
}

/// Everything `analyze` reports for one agent on one benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub benchmark: String,
    pub agent: String,
    pub level: Option<String>,
    pub n_questions: usize,
    pub trials_profile: Vec<usize>,
    #[serde(serialize_with = "sig6")]
    pub alpha: f64,
    pub wald: AccuracyDoc,
    pub cluster: AccuracyDoc,
    #[serde(serialize_with = "sig6")]
    pub grand_mean: f64,
    #[serde(serialize_with = "sig6")]
    pub sigma_b2: f64,
    #[serde(serialize_with = "sig6")]
    pub sigma_w2: f64,
    /// paper_naive first, then anova_corrected.
    pub icc_estimates: Vec<IccDoc>,
    pub triple: TripleDoc,
    pub profile_method: ProfileMethod,
    pub profile: Vec<ProfileDoc>,
}

/// The full analysis pipeline: both accuracy intervals, the decomposition,
/// both ICC variants and the per-question profile.
pub fn analyze(matrix: &TrialMatrix, alpha: f64) -> Result<AnalysisReport> {
    let wald = accuracy(matrix, alpha)?;
    let decomp = decompose_variance(matrix)?;
    let cluster = cluster_accuracy_ci(&decomp, alpha)?;
    let naive = icc(&decomp, IccVariant::PaperNaive)?;
    let anova = icc(&decomp, IccVariant::AnovaCorrected)?;
    let profile = question_accuracy_profile(matrix, alpha, ProfileMethod::Wald)?;
    Ok(AnalysisReport {
        benchmark: matrix.benchmark_id().to_string(),
        agent: matrix.agent_id().to_string(),
        level: matrix.level().map(str::to_string),
        n_questions: matrix.n_questions(),
        trials_profile: matrix.trial_counts(),
        alpha,
        wald: (&wald).into(),
        cluster: (&cluster).into(),
        grand_mean: decomp.grand_mean,
        sigma_b2: decomp.sigma_b2,
        sigma_w2: decomp.sigma_w2,
        icc_estimates: vec![(&naive).into(), (&anova).into()],
        triple: TripleDoc {
            accuracy: cluster.mu_hat,
            ci: [cluster.ci_low, cluster.ci_high],
            icc: naive.icc,
            icc_variant: naive.variant,
            between_query_se: decomp.between_query_se(),
        },
        profile_method: ProfileMethod::Wald,
        profile: profile
            .iter()
            .map(|q| ProfileDoc {
                question_id: q.question_id.clone(),
                p_hat: q.p_hat,
                ci_low: q.ci_low,
                ci_high: q.ci_high,
                trials: q.trials,
            })
            .collect(),
    })
}

impl AnalysisReport {
    /// Rebuilds the analysis records a card is made from.
    pub fn records(&self, variant: IccVariant) -> Result<(AccuracySummary, VarianceDecomposition, IccEstimate)> {
        let estimate = self
            .icc_estimates
            .iter()
            .find(|e| e.icc_variant == variant)
            .ok_or_else(|| Error::invalid(format!("analysis has no {variant} ICC estimate")))?
            .to_estimate(self.n_questions);
        if self.profile.len() != self.n_questions {
            return Err(Error::invalid("analysis profile does not cover every question"));
        }
        let decomp = VarianceDecomposition {
            sigma_b2: self.sigma_b2,
            sigma_w2: self.sigma_w2,
            grand_mean: self.grand_mean,
            question_means: self
                .profile
                .iter()
                .map(|p| QuestionMean {
                    question_id: p.question_id.clone(),
                    mean: p.p_hat,
                    trials: p.trials,
                })
                .collect(),
            n: self.n_questions,
        };
        Ok(((&self.cluster).into(), decomp, estimate))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Reliability analysis: {} on {}", self.agent, self.benchmark);
        out.push('\n');
        if let Some(level) = &self.level {
            let _ = writeln!(out, "Level: {level}\n");
        }
        let t = &self.triple;
        let _ = writeln!(
            out,
            "**{}**\n",
            triple_line(t.accuracy, t.ci, t.icc, t.icc_variant, t.between_query_se)
        );
        out.push_str("| Metric | Value |\n|---|---|\n");
        let rows = [
            ("Questions", self.n_questions.to_string()),
            ("Total trials", self.wald.n_total.to_string()),
            ("Alpha", format_sig6(self.alpha)),
            ("Accuracy (pooled)", format_sig6(self.wald.accuracy)),
            (
                "Wald CI",
                format!("[{}, {}]", format_sig6(self.wald.ci[0]), format_sig6(self.wald.ci[1])),
            ),
            (
                "Cluster-t CI",
                format!("[{}, {}]", format_sig6(self.cluster.ci[0]), format_sig6(self.cluster.ci[1])),
            ),
            ("Between-question variance", format_sig6(self.sigma_b2)),
            ("Within-question variance", format_sig6(self.sigma_w2)),
        ];
        for (k, v) in rows {
            let _ = writeln!(out, "| {k} | {v} |");
        }
        for e in &self.icc_estimates {
            let se = e.icc_se.map_or_else(|| "undefined".to_string(), format_sig6);
            let f = e.f_statistic.map_or_else(|| "inf".to_string(), format_sig6);
            let _ = writeln!(
                out,
                "| ICC ({}) | {} ± {} ({}, F={}) |",
                e.icc_variant,
                format_sig6(e.icc),
                se,
                e.band,
                f
            );
        }
        out.push_str("\n| Question | p̂ | CI low | CI high | Trials |\n|---|---|---|---|---|\n");
        for p in &self.profile {
            let _ = writeln!(
                out,
                "| {} | {:.6} | {:.6} | {:.6} | {} |",
                p.question_id, p.p_hat, p.ci_low, p.ci_high, p.trials
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McNemarDoc {
    pub n01: u64,
    pub n10: u64,
    #[serde(serialize_with = "sig6")]
    pub chi2: f64,
    #[serde(serialize_with = "sig6")]
    pub p: f64,
    pub continuity_corrected: bool,
    pub selector: TrialSelector,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub benchmark: String,
    pub agent_a: String,
    pub agent_b: String,
    #[serde(serialize_with = "sig6")]
    pub delta: f64,
    #[serde(serialize_with = "sig6_pair")]
    pub ci: [f64; 2],
    #[serde(serialize_with = "sig6")]
    pub alpha: f64,
    pub replicates: usize,
    pub seed: u64,
    pub mcnemar: McNemarDoc,
}

impl ComparisonReport {
    pub fn new(
        benchmark: &str,
        agents: (&str, &str),
        boot: &BootstrapResult,
        test: &McNemarResult,
        selector: TrialSelector,
    ) -> Self {
        Self {
            benchmark: benchmark.to_string(),
            agent_a: agents.0.to_string(),
            agent_b: agents.1.to_string(),
            delta: boot.delta_hat,
            ci: [boot.ci_low, boot.ci_high],
            alpha: boot.alpha,
            replicates: boot.replicates,
            seed: boot.seed,
            mcnemar: McNemarDoc {
                n01: test.n01,
                n10: test.n10,
                chi2: test.chi2,
                p: test.p_value,
                continuity_corrected: test.continuity_corrected,
                selector,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CardMetrics {
    pub accuracy: f64,
    pub ci: [f64; 2],
    pub alpha: f64,
    pub icc: f64,
    pub icc_variant: IccVariant,
    pub icc_se: Option<f64>,
    /// sqrt(σ²_b / n) of the source decomposition.
    pub between_query_se: f64,
}

/// Run-level metadata record for an evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationCard {
    pub benchmark: String,
    pub agent: String,
    pub trials_and_seeds: String,
    pub metrics: CardMetrics,
    pub task_complexity_level: Option<String>,
    pub scoring_details: String,
    pub limitations: String,
}

pub const REQUIRED_CARD_FIELDS: [&str; 5] = ["benchmark", "agent", "trials_and_seeds", "scoring_details", "limitations"];

pub fn make_card(
    meta: &BTreeMap<String, String>,
    summary: &AccuracySummary,
    decomp: &VarianceDecomposition,
    estimate: &IccEstimate,
) -> Result<EvaluationCard> {
    let field = |key: &str| {
        meta.get(key)
            .cloned()
            .ok_or_else(|| Error::invalid(format!("missing field: {key}")))
    };
    for key in REQUIRED_CARD_FIELDS {
        field(key)?;
    }
    Ok(EvaluationCard {
        benchmark: field("benchmark")?,
        agent: field("agent")?,
        trials_and_seeds: field("trials_and_seeds")?,
        metrics: CardMetrics {
            accuracy: summary.mu_hat,
            ci: [summary.ci_low, summary.ci_high],
            alpha: summary.alpha,
            icc: estimate.icc,
            icc_variant: estimate.variant,
            icc_se: estimate.se_icc,
            between_query_se: decomp.between_query_se(),
        },
        task_complexity_level: meta.get("task_complexity_level").cloned(),
        scoring_details: field("scoring_details")?,
        limitations: field("limitations")?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CardFormat {
    Json,
    Markdown,
}

fn triple_line(accuracy: f64, ci: [f64; 2], icc: f64, variant: IccVariant, bq_se: f64) -> String {
    format!(
        "{:.1}% ± [{:.1}%, {:.1}%] | ICC={:.3} ({}) | between-query SE={:.3}",
        accuracy * 100.0,
        ci[0] * 100.0,
        ci[1] * 100.0,
        icc,
        variant,
        bq_se
    )
}

/// The card's metrics in reporting-triple form.
pub fn metrics_line(card: &EvaluationCard) -> String {
    let m = &card.metrics;
    triple_line(m.accuracy, m.ci, m.icc, m.icc_variant, m.between_query_se)
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

pub fn render_card(card: &EvaluationCard, format: CardFormat) -> Result<String> {
    match format {
        CardFormat::Json => to_json_line(card),
        CardFormat::Markdown => {
            let level = card.task_complexity_level.as_deref().unwrap_or("not specified");
            let rows = [
                ("Benchmark", card.benchmark.as_str()),
                ("Agent", card.agent.as_str()),
                ("Trials & seeds", card.trials_and_seeds.as_str()),
                ("Metrics", &metrics_line(card)),
                ("Task complexity level", level),
                ("Scoring details", card.scoring_details.as_str()),
                ("Limitations", card.limitations.as_str()),
            ];
            let mut out = String::from("| Field | Description |\n|---|---|\n");
            for (k, v) in rows {
                let _ = writeln!(out, "| {k} | {} |", md_cell(v));
            }
            Ok(out)
        }
    }
}

/// Reads card metadata: a JSON object of string fields.
pub fn parse_card_meta(text: &str) -> Result<BTreeMap<String, String>> {
    Ok(serde_json::from_str(text)?)
}

/// Records a plot-data CSV can be produced from.
#[derive(Debug, Clone, Copy)]
pub enum PlotRecords<'a> {
    Profile(&'a [QuestionInterval]),
    Convergence(&'a [ConvergencePoint]),
}

/// CSV with a header row, `,` separators, `\n` endings and 6-decimal floats.
pub fn emit_plot_data(records: PlotRecords<'_>) -> Result<String> {
    let mut out = String::new();
    match records {
        PlotRecords::Profile(rows) => {
            if rows.is_empty() {
                return Err(Error::invalid("no profile records to emit"));
            }
            out.push_str("question_id,p_hat,ci_low,ci_high,trials\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{:.6},{:.6},{:.6},{}",
                    r.question_id, r.p_hat, r.ci_low, r.ci_high, r.trials
                );
            }
        }
        PlotRecords::Convergence(rows) => {
            if rows.is_empty() {
                return Err(Error::invalid("no convergence records to emit"));
            }
            out.push_str("t_sub,icc_mean,icc_sd,resamples,mode,variant\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{:.6},{:.6},{},{},{}",
                    r.t_sub,
                    r.icc_mean,
                    r.icc_sd,
                    r.resamples,
                    r.mode.as_str(),
                    r.variant
                );
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_question() -> TrialMatrix {
        TrialMatrix::new(
            "gaia",
            "a1",
            [
                ("q1".to_string(), vec![true, true]),
                ("q2".to_string(), vec![false, true]),
                ("q3".to_string(), vec![false, false]),
            ],
        )
        .unwrap()
    }

    fn meta() -> BTreeMap<String, String> {
        [
            ("benchmark", "GAIA v2024 validation"),
            ("agent", "a1, temperature 0.7, web search"),
            ("trials_and_seeds", "2 trials per question, seeds from run index"),
            ("scoring_details", "exact match after normalization"),
            ("limitations", "three questions only"),
            ("task_complexity_level", "GAIA Level 2"),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
    }

    fn derived_card() -> EvaluationCard {
        let report = analyze(&three_question(), 0.05).unwrap();
        let (summary, decomp, estimate) = report.records(IccVariant::PaperNaive).unwrap();
        make_card(&meta(), &summary, &decomp, &estimate).unwrap()
    }

    #[test]
    fn sig6_formatting() {
        assert_eq!(format_sig6(0.6), "0.600000");
        assert_eq!(format_sig6(0.5), "0.500000");
        assert_eq!(format_sig6(1.0 / 6.0), "0.166667");
        assert_eq!(format_sig6(0.0010625), "0.00106250");
        assert_eq!(format_sig6(3.0), "3.00000");
        assert_eq!(format_sig6(123456.7), "123457");
        assert_eq!(format_sig6(0.9999996), "1.00000");
        assert_eq!(format_sig6(-0.25), "-0.250000");
        assert_eq!(format_sig6(0.0), "0.00000");
        assert_eq!(format_sig6(1.234567e-7), "1.23457e-7");
        assert_eq!(format_sig6(f64::INFINITY), "null");
    }

    #[test]
    fn analysis_document_keys() {
        let report = analyze(&three_question(), 0.05).unwrap();
        let json = to_json_line(&report).unwrap();
        assert!(json.contains(r#""icc":0.600000"#), "{json}");
        assert!(json.contains(r#""icc":0.500000"#), "{json}");
        for key in [
            "accuracy", "se", "ci", "alpha", "method", "sigma_b2", "sigma_w2", "icc", "icc_variant", "icc_se",
            "f_statistic", "band", "n_questions", "trials_profile",
        ] {
            assert!(json.contains(&format!("\"{key}\":")), "missing {key}");
        }
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.n_questions, 3);
        assert_eq!(back.icc_estimates[1].icc, 0.5);
    }

    #[test]
    fn card_metrics_from_hand_oracle() {
        let card = derived_card();
        assert_eq!(card.metrics.accuracy, 0.5);
        assert!((card.metrics.icc - 0.6).abs() < 1e-15);
        assert!((card.metrics.between_query_se - (0.25f64 / 3.0).sqrt()).abs() < 1e-6);
        assert_eq!(card.task_complexity_level.as_deref(), Some("GAIA Level 2"));
        assert_eq!(
            metrics_line(&card),
            "50.0% ± [0.0%, 100.0%] | ICC=0.600 (paper_naive) | between-query SE=0.289"
        );
    }

    #[test]
    fn card_requires_fields() {
        let report = analyze(&three_question(), 0.05).unwrap();
        let (s, d, e) = report.records(IccVariant::PaperNaive).unwrap();
        let mut m = meta();
        m.remove("scoring_details");
        let err = make_card(&m, &s, &d, &e).unwrap_err();
        assert_eq!(err.to_string(), "missing field: scoring_details");
        m = meta();
        m.remove("task_complexity_level");
        assert_eq!(make_card(&m, &s, &d, &e).unwrap().task_complexity_level, None);
    }

    #[test]
    fn card_json_is_ordered_and_round_trips() {
        let card = derived_card();
        let json = render_card(&card, CardFormat::Json).unwrap();
        let keys = [
            "\"benchmark\"",
            "\"agent\"",
            "\"trials_and_seeds\"",
            "\"metrics\"",
            "\"task_complexity_level\"",
            "\"scoring_details\"",
            "\"limitations\"",
        ];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let back: EvaluationCard = serde_json::from_str(&json).unwrap();
        assert_eq!(back, card);
        assert_eq!(render_card(&back, CardFormat::Json).unwrap(), json);
    }

    #[test]
    fn card_markdown_has_seven_rows() {
        let md = render_card(&derived_card(), CardFormat::Markdown).unwrap();
        let lines: Vec<&str> = md.lines().collect();
        assert_eq!(lines.len(), 2 + 7);
        assert!(lines[2].starts_with("| Benchmark |"));
        assert!(lines[8].starts_with("| Limitations |"));
        assert!(md.contains("50.0% ± [0.0%, 100.0%] \\| ICC=0.600 (paper_naive) \\| between-query SE=0.289"));
    }

    #[test]
    fn profile_csv() {
        let m = TrialMatrix::new("b", "a", [("q1".to_string(), vec![true, true, false, true])]).unwrap();
        let prof = question_accuracy_profile(&m, 0.05, ProfileMethod::Wald).unwrap();
        let csv = emit_plot_data(PlotRecords::Profile(&prof)).unwrap();
        assert_eq!(csv, "question_id,p_hat,ci_low,ci_high,trials\nq1,0.750000,0.325655,1.000000,4\n");
        assert!(emit_plot_data(PlotRecords::Profile(&[])).is_err());
        assert!(emit_plot_data(PlotRecords::Convergence(&[])).is_err());
    }

    #[test]
    fn convergence_csv() {
        let pts = [ConvergencePoint {
            t_sub: 2,
            icc_mean: 0.4286,
            icc_sd: 0.01,
            resamples: 20,
            mode: crate::design::SubsampleMode::Random,
            variant: IccVariant::PaperNaive,
        }];
        let csv = emit_plot_data(PlotRecords::Convergence(&pts)).unwrap();
        assert_eq!(
            csv,
            "t_sub,icc_mean,icc_sd,resamples,mode,variant\n2,0.428600,0.010000,20,random,paper_naive\n"
        );
    }
}
