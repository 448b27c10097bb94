//! End-to-end minor constructions and the helpers they are built from.

mod clique;
mod expansion;
mod ks;
mod kst;
mod prune;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::covers::FreenessCheck;
use crate::graph::DegreeStats;
use crate::minor::BranchModelJson;

pub use clique::{dense_to_clique, densest_core, DEFAULT_CLIQUE_BUDGET};
pub use expansion::{expansion_decompose, find_sparse_independent_set, ExpansionOutcome};
pub use ks::{ks_pipeline, trim_threshold};
pub use kst::{kst_pipeline, KST_CHECK_MAX_SETS};
pub use prune::{prune_activated_witnesses, prune_middle_edges, MiddlePrune, WitnessPrune};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub s: usize,
    pub t: usize,
    pub eps: f64,
    /// Used instead of the formula when set; still clamped into `(0, 1/2]`.
    pub p_override: Option<f64>,
    /// Multiplier applied to the formula for `p`.
    pub constant_scale: f64,
    pub trials: usize,
    pub seed: u64,
    /// Step budget handed to [`dense_to_clique`] per trial.
    pub clique_budget: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            s: 2,
            t: 2,
            eps: 0.05,
            p_override: None,
            constant_scale: 1.0,
            trials: 1,
            seed: 0,
            clique_budget: DEFAULT_CLIQUE_BUDGET,
        }
    }
}

impl PipelineConfig {
    /// Whether `0 < eps < 1/(10(s-2))`. Always false for `s < 3`.
    pub fn eps_in_range(&self) -> bool {
        self.s >= 3 && self.eps > 0.0 && self.eps < 1.0 / (10.0 * (self.s as f64 - 2.0))
    }
}

/// Which formula [`default_p`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PFormula {
    /// `2^12 sqrt(t) d^{-1/(2(s-1))}`, for `s >= 2`.
    Kst { s: usize, t: usize },
    /// `2^10 d^{2 eps - 1/(2(s-2))}`, for `s >= 3`.
    Ks { s: usize, eps: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PChoice {
    pub p: f64,
    /// Value before clamping.
    pub raw: f64,
    pub clamped: bool,
}

/// Clamps `raw` into `(0, 1/2]`.
pub fn clamp_p(raw: f64) -> PChoice {
    let p = if raw > 0.5 {
        0.5
    } else if raw > 0.0 {
        raw
    } else {
        f64::MIN_POSITIVE
    };
    PChoice {
        p,
        raw,
        clamped: p != raw,
    }
}

/// `scale` times the formula at degree `d` (at least 1), clamped into `(0, 1/2]`.
pub fn default_p(formula: PFormula, d: f64, scale: f64) -> PChoice {
    let d = d.max(1.0);
    let raw = match formula {
        PFormula::Kst { s, t } => 4096.0 * (t as f64).sqrt() * d.powf(-1.0 / (2.0 * (s as f64 - 1.0))),
        PFormula::Ks { s, eps } => 1024.0 * d.powf(2.0 * eps - 1.0 / (2.0 * (s as f64 - 2.0))),
    };
    clamp_p(scale * raw)
}

fn choose_p(cfg: &PipelineConfig, formula: PFormula, d: f64) -> PChoice {
    match cfg.p_override {
        Some(p) => clamp_p(p),
        None => default_p(formula, d, cfg.constant_scale),
    }
}

/// Counters for one sampled minor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub red_count: usize,
    pub activated_count: usize,
    pub pruned_6cycles: usize,
    pub pruned_stars: usize,
    /// Multiplicity -> number of branch pairs, before pruning.
    pub raw_histogram: BTreeMap<usize, usize>,
    /// Multiplicity -> number of branch pairs in the reported minor.
    pub parallel_histogram: BTreeMap<usize, usize>,
    pub minor_order: usize,
    pub avg_degree_of_minor: f64,
    pub clique_minor_order: usize,
    pub minor_valid: bool,
    pub clique_valid: bool,
}

impl TrialRecord {
    pub fn max_multiplicity(&self) -> usize {
        self.parallel_histogram.keys().next_back().copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub mean_activated: f64,
    /// Standard error of the mean activated count.
    pub stderr_activated: f64,
    pub mean_minor_order: f64,
    pub mean_avg_degree: f64,
    pub mean_clique_order: f64,
    pub max_clique_order: usize,
    pub max_multiplicity: usize,
}

impl Aggregate {
    fn from_trials(trials: &[TrialRecord]) -> Self {
        let k = trials.len().max(1) as f64;
        let mean = |f: &dyn Fn(&TrialRecord) -> f64| trials.iter().map(f).sum::<f64>() / k;
        let mean_activated = mean(&|r| r.activated_count as f64);
        let var = if trials.len() > 1 {
            trials
                .iter()
                .map(|r| (r.activated_count as f64 - mean_activated).powi(2))
                .sum::<f64>()
                / (k - 1.0)
        } else {
            0.0
        };
        Self {
            mean_activated,
            stderr_activated: (var / k).sqrt(),
            mean_minor_order: mean(&|r| r.minor_order as f64),
            mean_avg_degree: mean(&|r| r.avg_degree_of_minor),
            mean_clique_order: mean(&|r| r.clique_minor_order as f64),
            max_clique_order: trials.iter().map(|r| r.clique_minor_order).max().unwrap_or(0),
            max_multiplicity: trials.iter().map(TrialRecord::max_multiplicity).max().unwrap_or(0),
        }
    }
}

/// Hard checks decide [`Flags::passed`]; assumption checks only decide
/// [`Flags::trusted`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flags {
    /// Every emitted model passed `verify_minor_model`.
    pub minor_valid: bool,
    /// Post-pruning multiplicity at most `s - 1` in every trial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity_within_bound: Option<bool>,
    /// Every clique model is complete and valid in the input graph.
    pub clique_complete: bool,
    pub forbidden_subgraph: FreenessCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub almost_regular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_in_range: Option<bool>,
    pub p_clamped: bool,
    pub trusted: bool,
}

impl Flags {
    pub fn passed(&self) -> bool {
        self.minor_valid && self.multiplicity_within_bound != Some(false) && self.clique_complete
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub pipeline: String,
    pub n: usize,
    pub m: usize,
    pub degree: DegreeStats,
    /// Vertices and edges of the graph the minor was sampled from.
    pub sampled_n: usize,
    pub sampled_m: usize,
    pub p: PChoice,
    pub seed: u64,
    /// Trial with the largest clique minor (smallest index on ties).
    pub best_trial: Option<u64>,
    pub activated_count: usize,
    pub pruned_6cycles: usize,
    pub pruned_stars: usize,
    pub parallel_histogram: BTreeMap<usize, usize>,
    pub minor_order: usize,
    pub avg_degree_of_minor: f64,
    pub clique_minor_order: usize,
    /// Branch sets of the best clique minor, in input-graph ids.
    pub clique_model: Option<BranchModelJson>,
    pub aggregate: Aggregate,
    pub trials: Vec<TrialRecord>,
    pub flags: Flags,
}

pub(crate) struct Assembled<'a> {
    pub pipeline: &'a str,
    pub n: usize,
    pub m: usize,
    pub degree: DegreeStats,
    pub sampled_n: usize,
    pub sampled_m: usize,
    pub p: PChoice,
    pub seed: u64,
    pub flags: Flags,
}

impl PipelineReport {
    pub(crate) fn assemble(base: Assembled<'_>, runs: Vec<(TrialRecord, Option<BranchModelJson>)>) -> Self {
        let best = runs
            .iter()
            .enumerate()
            .max_by(|(i, a), (j, b)| {
                a.0.clique_minor_order
                    .cmp(&b.0.clique_minor_order)
                    .then(j.cmp(i))
            })
            .map(|(i, _)| i);
        let mut clique_model = None;
        let mut trials = Vec::with_capacity(runs.len());
        for (i, (record, model)) in runs.into_iter().enumerate() {
            if Some(i) == best {
                clique_model = model;
            }
            trials.push(record);
        }
        let aggregate = Aggregate::from_trials(&trials);
        let top = best.map(|i| &trials[i]);
        Self {
            pipeline: base.pipeline.to_string(),
            n: base.n,
            m: base.m,
            degree: base.degree,
            sampled_n: base.sampled_n,
            sampled_m: base.sampled_m,
            p: base.p,
            seed: base.seed,
            best_trial: top.map(|r| r.trial),
            activated_count: top.map_or(0, |r| r.activated_count),
            pruned_6cycles: top.map_or(0, |r| r.pruned_6cycles),
            pruned_stars: top.map_or(0, |r| r.pruned_stars),
            parallel_histogram: top.map(|r| r.parallel_histogram.clone()).unwrap_or_default(),
            minor_order: top.map_or(0, |r| r.minor_order),
            avg_degree_of_minor: top.map_or(0.0, |r| r.avg_degree_of_minor),
            clique_minor_order: top.map_or(0, |r| r.clique_minor_order),
            clique_model,
            aggregate,
            trials,
            flags: base.flags,
        }
    }
}

pub(crate) fn avg_degree(order: usize, edges: usize) -> f64 {
    if order == 0 {
        0.0
    } else {
        2.0 * edges as f64 / order as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kst_formula_unclamped() {
        let c = default_p(PFormula::Kst { s: 2, t: 2 }, 2f64.powi(60), 1.0);
        assert!(!c.clamped);
        assert!((c.p - 4096.0 * 2f64.sqrt() * 2f64.powi(-30)).abs() < 1e-15);
        assert!((c.p - 5.39e-6).abs() < 1e-8);
    }

    #[test]
    fn ks_formula_unclamped() {
        let c = default_p(PFormula::Ks { s: 3, eps: 0.05 }, 1e9, 1.0);
        assert!(!c.clamped);
        assert!((c.p - 0.257).abs() < 1e-3, "{}", c.p);
    }

    #[test]
    fn ks_formula_clamped_at_small_degree() {
        let c = default_p(PFormula::Ks { s: 3, eps: 0.05 }, 100.0, 1.0);
        assert!(c.clamped);
        assert_eq!(c.p, 0.5);
        assert!(c.raw > 0.5);
    }

    #[test]
    fn scale_and_lower_clamp() {
        let c = default_p(PFormula::Kst { s: 2, t: 2 }, 2f64.powi(60), 0.5);
        assert!((c.raw - 2048.0 * 2f64.sqrt() * 2f64.powi(-30)).abs() < 1e-15);
        let z = clamp_p(0.0);
        assert!(z.clamped && z.p > 0.0);
    }

    #[test]
    fn eps_range() {
        let mut cfg = PipelineConfig {
            s: 3,
            eps: 0.05,
            ..PipelineConfig::default()
        };
        assert!(cfg.eps_in_range());
        cfg.eps = 0.1;
        assert!(!cfg.eps_in_range());
        cfg.s = 2;
        cfg.eps = 0.01;
        assert!(!cfg.eps_in_range());
    }
}
