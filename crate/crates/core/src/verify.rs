//! Exact and Monte Carlo activation probabilities checked against closed-form
//! bounds.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::VerifyError;
use crate::graph::Graph;
use crate::random_minor::{activation_lb, all_activate_locally, coactivation_ub};
use crate::rng::{generator_rng, TrialStreams};

/// Largest number of free vertices [`exact_activation`] enumerates over.
pub const EXACT_MAX_FREE: usize = 24;

const PATH_SAMPLE_SALT: u64 = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    AtLeast,
    AtMost,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison {
    pub bound: f64,
    pub direction: Direction,
    /// Whether the estimate is on the right side of the bound within 3 stderr.
    pub passed: bool,
}

/// Empirical frequency of an event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub successes: u64,
    pub trials: u64,
    /// `sqrt(value (1 - value) / trials)`.
    pub stderr: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

impl Estimate {
    pub fn new(successes: u64, trials: u64) -> Self {
        assert!(trials > 0 && successes <= trials);
        let value = successes as f64 / trials as f64;
        Self {
            value,
            successes,
            trials,
            stderr: (value * (1.0 - value) / trials as f64).sqrt(),
            comparison: None,
        }
    }

    pub fn compare(mut self, bound: f64, direction: Direction) -> Self {
        let band = 3.0 * self.stderr;
        let passed = match direction {
            Direction::AtLeast => self.value >= bound - band,
            Direction::AtMost => self.value <= bound + band,
        };
        self.comparison = Some(Comparison {
            bound,
            direction,
            passed,
        });
        self
    }

    /// `|value - exact| <= 3 stderr`.
    pub fn within_3_sigma(&self, exact: f64) -> bool {
        (self.value - exact).abs() <= 3.0 * self.stderr
    }
}

fn check_paths(g: &Graph, paths: &[[usize; 4]]) -> Result<(), VerifyError> {
    let n = g.num_vertices();
    for &path in paths {
        let [v, x, y, u] = path;
        let distinct = v != x && v != y && v != u && x != y && x != u && y != u;
        if path.iter().any(|&a| a >= n) || !distinct || !(g.has_edge(v, x) && g.has_edge(x, y) && g.has_edge(y, u)) {
            return Err(VerifyError::NotAPath { path });
        }
    }
    Ok(())
}

/// Exact probability that every path in `paths` is activated.
///
/// Only the colors of the path vertices and of the choosers' neighbors matter;
/// the sum runs over all colorings of those free vertices, weighting each by
/// `p^red (1-p)^blue` times the chance that every chooser picks its target.
pub fn exact_activation(g: &Graph, paths: &[[usize; 4]], p: f64) -> Result<f64, VerifyError> {
    check_paths(g, paths)?;
    let n = g.num_vertices();
    // 0 = unconstrained, 1 = must be red, 2 = must be blue
    let mut fixed = vec![0u8; n];
    let mut target: Vec<Option<usize>> = vec![None; n];
    for &[v, x, y, u] in paths {
        for (chooser, t) in [(x, v), (y, u)] {
            for (vertex, want) in [(t, 1u8), (chooser, 2u8)] {
                if fixed[vertex] != 0 && fixed[vertex] != want {
                    return Ok(0.0);
                }
                fixed[vertex] = want;
            }
            match target[chooser] {
                Some(prev) if prev != t => return Ok(0.0),
                _ => target[chooser] = Some(t),
            }
        }
    }
    let choosers: Vec<usize> = (0..n).filter(|&c| target[c].is_some()).collect();
    let mut free: Vec<usize> = choosers
        .iter()
        .flat_map(|&c| g.neighbors(c).iter().copied())
        .filter(|&w| fixed[w] == 0)
        .collect();
    free.sort_unstable();
    free.dedup();
    if free.len() > EXACT_MAX_FREE {
        return Err(VerifyError::HostTooLarge {
            n: free.len(),
            limit: EXACT_MAX_FREE,
        });
    }
    let reds = fixed.iter().filter(|&&f| f == 1).count() as i32;
    let blues = fixed.iter().filter(|&&f| f == 2).count() as i32;
    let base = p.powi(reds) * (1.0 - p).powi(blues);
    if base == 0.0 {
        return Ok(0.0);
    }
    let mut red = vec![false; n];
    for v in 0..n {
        red[v] = fixed[v] == 1;
    }
    let mut total = 0.0;
    for mask in 0u64..1 << free.len() {
        let mut weight = 1.0;
        for (b, &w) in free.iter().enumerate() {
            let r = mask >> b & 1 == 1;
            red[w] = r;
            weight *= if r { p } else { 1.0 - p };
        }
        if weight == 0.0 {
            continue;
        }
        for &c in &choosers {
            let k = g.neighbors(c).iter().filter(|&&w| red[w]).count();
            weight /= k as f64;
        }
        total += weight;
    }
    Ok(base * total)
}

/// Frequency with which every path in `paths` activates over `trials` seeded
/// trials. Each trial draws only the colors and choices the event depends on.
pub fn estimate_activation(g: &Graph, paths: &[[usize; 4]], p: f64, trials: u64, seed: u64) -> Result<Estimate, VerifyError> {
    check_paths(g, paths)?;
    if trials == 0 {
        return Err(VerifyError::NoTrials);
    }
    let successes = (0..trials)
        .into_par_iter()
        .filter(|&t| all_activate_locally(g, paths, p, &mut TrialStreams::new(seed, t)))
        .count() as u64;
    Ok(Estimate::new(successes, trials))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckStatus {
    Passed,
    Failed,
    /// The bound's hypotheses do not hold, so nothing is asserted.
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathEstimate {
    pub paths: Vec<[usize; 4]>,
    pub estimate: Estimate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    #[serde(flatten)]
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    pub samples: Vec<PathEstimate>,
}

impl BoundCheck {
    fn skipped(reason: String) -> Self {
        Self {
            status: CheckStatus::Skipped { reason },
            bound: None,
            samples: Vec::new(),
        }
    }

    fn from_samples(bound: f64, samples: Vec<PathEstimate>) -> Self {
        let ok = samples.iter().all(|s| s.estimate.comparison.is_some_and(|c| c.passed));
        Self {
            status: if samples.is_empty() {
                CheckStatus::Skipped {
                    reason: "no suitable paths in the graph".into(),
                }
            } else if ok {
                CheckStatus::Passed
            } else {
                CheckStatus::Failed
            },
            bound: Some(bound),
            samples,
        }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Failed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsOptions {
    /// Random 3-paths estimated for the lower bound.
    pub single_paths: usize,
    /// Path families estimated for the upper bound.
    pub families: usize,
    /// Internal vertices per family (two per path).
    pub m: usize,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        Self {
            single_paths: 4,
            families: 2,
            m: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub p: f64,
    pub d: usize,
    pub d_prime: usize,
    pub trials: u64,
    pub lower: BoundCheck,
    pub upper: BoundCheck,
}

impl BoundsReport {
    pub fn failed(&self) -> bool {
        self.lower.failed() || self.upper.failed()
    }
}

/// Uniformly random 3-path `v - x - y - u` on four distinct vertices, or `None`
/// after repeated misses.
fn random_path<R: Rng>(g: &Graph, rng: &mut R) -> Option<[usize; 4]> {
    let n = g.num_vertices();
    if n < 4 {
        return None;
    }
    for _ in 0..1000 {
        let x = rng.gen_range(0..n);
        let (Some(&v), Some(&y)) = (g.neighbors(x).choose(rng), g.neighbors(x).choose(rng)) else {
            continue;
        };
        let Some(&u) = g.neighbors(y).choose(rng) else { continue };
        let path = [v, x, y, u];
        if v != y && u != x && u != v {
            return Some(path);
        }
    }
    None
}

/// `count` internally disjoint 3-paths sharing both endpoints: `v` and `u` at
/// distance 3, with middle edges chosen greedily.
fn random_family<R: Rng>(g: &Graph, count: usize, rng: &mut R) -> Option<Vec<[usize; 4]>> {
    let n = g.num_vertices();
    for _ in 0..200 {
        let [v, _, _, u] = random_path(g, rng)?;
        if u == v || g.has_edge(v, u) {
            continue;
        }
        let mut used = vec![false; n];
        used[v] = true;
        used[u] = true;
        let mut family = Vec::new();
        'outer: for &x in g.neighbors(v) {
            if used[x] || g.has_edge(x, u) {
                continue;
            }
            for &y in g.neighbors(x) {
                if !used[y] && y != x && g.has_edge(y, u) && !g.has_edge(y, v) {
                    used[x] = true;
                    used[y] = true;
                    family.push([v, x, y, u]);
                    if family.len() == count {
                        return Some(family);
                    }
                    continue 'outer;
                }
            }
        }
    }
    None
}

/// Checks the single-path lower bound `1/(2^7 d^2)` and the family upper bound
/// `2p^2/(d'p/4)^m` on random paths of `g`, with `d` and `d'` the maximum and
/// minimum degree. Each bound is skipped, with the reason recorded, when its
/// hypotheses fail.
pub fn check_activation_bounds(g: &Graph, p: f64, trials: u64, seed: u64, opts: BoundsOptions) -> Result<BoundsReport, VerifyError> {
    if trials == 0 {
        return Err(VerifyError::NoTrials);
    }
    let stats = g.degree_stats();
    let mut rng = generator_rng(seed, PATH_SAMPLE_SALT);

    let lower = match activation_lb(stats.max as f64, p) {
        Err(e) => BoundCheck::skipped(e.reason),
        Ok(lb) => {
            let mut samples = Vec::new();
            for k in 0..opts.single_paths {
                let Some(path) = random_path(g, &mut rng) else { break };
                let est = estimate_activation(g, &[path], p, trials, seed.wrapping_add(k as u64))?;
                samples.push(PathEstimate {
                    paths: vec![path],
                    estimate: est.compare(lb, Direction::AtLeast),
                });
            }
            BoundCheck::from_samples(lb, samples)
        }
    };

    let upper = match coactivation_ub(stats.min as f64, p, opts.m) {
        Err(e) => BoundCheck::skipped(e.reason),
        Ok(_) if opts.m % 2 == 1 => BoundCheck::skipped(format!("m = {} is odd; each 3-path has two internal vertices", opts.m)),
        Ok(ub) => {
            let mut samples = Vec::new();
            for k in 0..opts.families {
                let Some(family) = random_family(g, opts.m / 2, &mut rng) else { break };
                let est = estimate_activation(g, &family, p, trials, seed.wrapping_add(1000 + k as u64))?;
                samples.push(PathEstimate {
                    paths: family,
                    estimate: est.compare(ub, Direction::AtMost),
                });
            }
            BoundCheck::from_samples(ub, samples)
        }
    };

    Ok(BoundsReport {
        p,
        d: stats.max,
        d_prime: stats.min,
        trials,
        lower,
        upper,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub n: usize,
    pub p: f64,
    /// `2 p n`.
    pub threshold: f64,
    /// `exp(-p n / 3)`.
    pub bound: f64,
    /// Frequency of more than `2 p n` red vertices, compared against `bound`.
    pub estimate: Estimate,
    #[serde(flatten)]
    pub status: CheckStatus,
}

/// Frequency of `#red > 2pn` over seeded colorings of `g`'s vertices, compared
/// against `exp(-pn/3)`.
pub fn vertex_concentration(g: &Graph, p: f64, trials: u64, seed: u64) -> Result<ConcentrationReport, VerifyError> {
    if trials == 0 {
        return Err(VerifyError::NoTrials);
    }
    let n = g.num_vertices();
    let threshold = 2.0 * p * n as f64;
    let bound = (-p * n as f64 / 3.0).exp();
    let exceed = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut streams = TrialStreams::new(seed, t);
            let reds = (0..n).filter(|&v| streams.is_red(v, p)).count();
            reds as f64 > threshold
        })
        .count() as u64;
    let estimate = Estimate::new(exceed, trials).compare(bound, Direction::AtMost);
    let status = if estimate.comparison.is_some_and(|c| c.passed) {
        CheckStatus::Passed
    } else {
        CheckStatus::Failed
    };
    Ok(ConcentrationReport {
        n,
        p,
        threshold,
        bound,
        estimate,
        status,
    })
}
