//! The random star-contraction minor.
//!
//! Every vertex is colored red with probability `p`; each blue vertex then picks
//! one of its red neighbors uniformly at random. Contracting every red vertex
//! together with the blue vertices that picked it, and dropping blue vertices
//! with no red neighbor, yields a minor of the host graph.

use serde::Serialize;

use crate::error::{BoundError, DecompositionError};
use crate::graph::Graph;
use crate::minor::BranchModel;
use crate::rng::TrialStreams;

/// Outcome of the coloring and choice steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarDecomposition {
    red: Vec<bool>,
    choice: Vec<Option<usize>>,
    isolated: Vec<usize>,
}

impl StarDecomposition {
    /// Builds a decomposition from explicit colors and choices; `isolated` is
    /// derived from `g`. Call [`StarDecomposition::validate`] before use.
    pub fn from_parts(g: &Graph, red: Vec<bool>, choice: Vec<Option<usize>>) -> Self {
        let isolated = (0..red.len().min(g.num_vertices()))
            .filter(|&v| !red[v] && !g.neighbors(v).iter().any(|&w| red.get(w) == Some(&true)))
            .collect();
        Self {
            red,
            choice,
            isolated,
        }
    }

    pub fn is_red(&self, v: usize) -> bool {
        self.red[v]
    }

    pub fn choice(&self, v: usize) -> Option<usize> {
        self.choice[v]
    }

    /// Blue vertices without a red neighbor.
    pub fn isolated(&self) -> &[usize] {
        &self.isolated
    }

    pub fn red_count(&self) -> usize {
        self.red.iter().filter(|&&r| r).count()
    }

    pub fn red_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.red.iter().enumerate().filter(|(_, &r)| r).map(|(v, _)| v)
    }

    pub fn num_vertices(&self) -> usize {
        self.red.len()
    }

    pub fn validate(&self, g: &Graph) -> Result<(), DecompositionError> {
        let n = g.num_vertices();
        if self.red.len() != n || self.choice.len() != n {
            return Err(DecompositionError::SizeMismatch {
                got: self.red.len().min(self.choice.len()),
                n,
            });
        }
        let mut isolated = vec![false; n];
        for &v in &self.isolated {
            if v >= n || self.red[v] || g.neighbors(v).iter().any(|&w| self.red[w]) {
                return Err(DecompositionError::BadIsolated { vertex: v });
            }
            isolated[v] = true;
        }
        for v in 0..n {
            match (self.red[v], self.choice[v]) {
                (true, Some(_)) => return Err(DecompositionError::RedChooses { vertex: v }),
                (true, None) => {}
                (false, Some(c)) => {
                    if c >= n || !self.red[c] || !g.has_edge(v, c) {
                        return Err(DecompositionError::BadChoice { vertex: v, target: c });
                    }
                }
                (false, None) => {
                    if !isolated[v] {
                        if g.neighbors(v).iter().any(|&w| self.red[w]) {
                            return Err(DecompositionError::MissingChoice { vertex: v });
                        }
                        return Err(DecompositionError::BadIsolated { vertex: v });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Samples the two-step process on `g`, deterministically per `(seed, trial)`.
pub fn sample_star_decomposition(g: &Graph, p: f64, seed: u64, trial: u64) -> StarDecomposition {
    assert!((0.0..=1.0).contains(&p), "red probability {p} outside [0, 1]");
    let n = g.num_vertices();
    let mut streams = TrialStreams::new(seed, trial);
    let red: Vec<bool> = (0..n).map(|v| streams.is_red(v, p)).collect();
    let mut choice = vec![None; n];
    let mut isolated = Vec::new();
    let mut reds = Vec::new();
    for v in 0..n {
        if red[v] {
            continue;
        }
        reds.clear();
        reds.extend(g.neighbors(v).iter().copied().filter(|&w| red[w]));
        if reds.is_empty() {
            isolated.push(v);
        } else {
            choice[v] = Some(reds[streams.choose(v, reds.len())]);
        }
    }
    StarDecomposition {
        red,
        choice,
        isolated,
    }
}

/// Contracts each red-centered star. Branch `i` belongs to the `i`-th red vertex
/// in increasing id order and lists the center first, then its choosers.
pub fn build_random_minor<'g>(g: &'g Graph, sd: &StarDecomposition) -> Result<BranchModel<'g>, DecompositionError> {
    sd.validate(g)?;
    let n = g.num_vertices();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut branches: Vec<Vec<usize>> = Vec::with_capacity(sd.red_count());
    for v in sd.red_vertices() {
        owner[v] = Some(branches.len());
        branches.push(vec![v]);
    }
    for v in 0..n {
        if let Some(c) = sd.choice[v] {
            let b = owner[c].expect("choice target is red");
            owner[v] = Some(b);
            branches[b].push(v);
        }
    }
    Ok(BranchModel::from_owner(g, &owner, branches))
}

/// An activated 3-path `v - x - y - u`: `v`, `u` red, `x`, `y` blue, `x` chose `v`
/// and `y` chose `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ActivatedPath {
    pub v: usize,
    pub x: usize,
    pub y: usize,
    pub u: usize,
}

/// Every activated 3-path, one per blue-blue edge whose endpoints chose
/// different red vertices, listed with `x < y`.
pub fn activated_paths(g: &Graph, sd: &StarDecomposition) -> Vec<ActivatedPath> {
    g.edges()
        .filter_map(|(x, y)| match (sd.choice[x], sd.choice[y]) {
            (Some(v), Some(u)) if v != u => Some(ActivatedPath { v, x, y, u }),
            _ => None,
        })
        .collect()
}

/// Whether the path `[v, x, y, u]` is activated by `sd`.
pub fn is_activated(sd: &StarDecomposition, path: [usize; 4]) -> bool {
    let [v, x, y, u] = path;
    sd.red[v] && sd.red[u] && sd.choice[x] == Some(v) && sd.choice[y] == Some(u)
}

/// Evaluates whether all `paths` activate in the trial behind `streams`,
/// drawing only the colors and choices the event depends on. Agrees exactly
/// with [`sample_star_decomposition`] for the same `(seed, trial)`.
pub fn all_activate_locally(g: &Graph, paths: &[[usize; 4]], p: f64, streams: &mut TrialStreams) -> bool {
    let mut reds = Vec::new();
    for &[v, x, y, u] in paths {
        if !streams.is_red(v, p) || !streams.is_red(u, p) {
            return false;
        }
        for (chooser, target) in [(x, v), (y, u)] {
            if streams.is_red(chooser, p) {
                return false;
            }
            reds.clear();
            for &w in g.neighbors(chooser) {
                if streams.is_red(w, p) {
                    reds.push(w);
                }
            }
            if reds.is_empty() || reds[streams.choose(chooser, reds.len())] != target {
                return false;
            }
        }
    }
    true
}

/// Lower bound `1 / (2^7 d^2)` on the activation probability of a single 3-path
/// in a graph with maximum degree at most `d`, valid for `4/d <= p <= 1/2`.
pub fn activation_lb(d: f64, p: f64) -> Result<f64, BoundError> {
    if !(d > 0.0) {
        return Err(BoundError {
            reason: format!("degree bound d = {d} must be positive"),
        });
    }
    if p < 4.0 / d || p > 0.5 {
        return Err(BoundError {
            reason: format!("need 4/d <= p <= 1/2, got d = {d}, p = {p} (4/d = {})", 4.0 / d),
        });
    }
    Ok(1.0 / (128.0 * d * d))
}

/// Upper bound `2 p^2 / (d' p / 4)^m` on the probability that a family of 3-paths
/// with common endpoints and `m` internal vertices activates simultaneously,
/// valid for `m >= 2`, `0 < p < 1` and `2^7 m ln m < p d'` (natural log).
pub fn coactivation_ub(d_prime: f64, p: f64, m: usize) -> Result<f64, BoundError> {
    if m < 2 {
        return Err(BoundError {
            reason: format!("need m >= 2 internal vertices, got {m}"),
        });
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(BoundError {
            reason: format!("need 0 < p < 1, got {p}"),
        });
    }
    let mf = m as f64;
    let lhs = 128.0 * mf * mf.ln();
    if lhs >= p * d_prime {
        return Err(BoundError {
            reason: format!("need 2^7 m ln m < p d', got {lhs:.3} >= {:.3}", p * d_prime),
        });
    }
    Ok(2.0 * p * p / (d_prime * p / 4.0).powi(m as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minor::verify_minor_model;

    #[test]
    fn extreme_probabilities() {
        let g = Graph::petersen();
        let all_red = sample_star_decomposition(&g, 1.0, 3, 0);
        assert_eq!(all_red.red_count(), 10);
        assert!(all_red.isolated().is_empty());
        assert!((0..10).all(|v| all_red.choice(v).is_none()));
        let b = build_random_minor(&g, &all_red).unwrap();
        assert_eq!(b.simplified(), g);
        assert!(activated_paths(&g, &all_red).is_empty());

        let all_blue = sample_star_decomposition(&g, 0.0, 3, 0);
        assert_eq!(all_blue.isolated(), (0..10).collect::<Vec<_>>().as_slice());
        let b = build_random_minor(&g, &all_blue).unwrap();
        assert_eq!(b.order(), 0);
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = Graph::petersen();
        assert_eq!(
            sample_star_decomposition(&g, 0.4, 11, 5),
            sample_star_decomposition(&g, 0.4, 11, 5)
        );
    }

    #[test]
    fn p4_every_coloring_gives_valid_minor() {
        let g = Graph::path(4);
        for mask in 0u32..16 {
            let red: Vec<bool> = (0..4).map(|v| mask >> v & 1 == 1).collect();
            // Blue vertices pick their smallest red neighbor.
            let choice: Vec<Option<usize>> = (0..4)
                .map(|v| {
                    if red[v] {
                        None
                    } else {
                        g.neighbors(v).iter().copied().find(|&w| red[w])
                    }
                })
                .collect();
            let sd = StarDecomposition::from_parts(&g, red, choice);
            sd.validate(&g).unwrap();
            let b = build_random_minor(&g, &sd).unwrap();
            assert!(verify_minor_model(&b).is_valid(), "mask {mask:04b}");
            assert_eq!(b.order(), mask.count_ones() as usize);
        }
    }

    #[test]
    fn p4_activated_path() {
        let g = Graph::path(4);
        let sd = StarDecomposition::from_parts(
            &g,
            vec![true, false, false, true],
            vec![None, Some(0), Some(3), None],
        );
        assert_eq!(activated_paths(&g, &sd), vec![ActivatedPath { v: 0, x: 1, y: 2, u: 3 }]);
        assert!(is_activated(&sd, [0, 1, 2, 3]));
    }

    #[test]
    fn invalid_decompositions_are_rejected() {
        let g = Graph::path(4);
        let bad = StarDecomposition::from_parts(
            &g,
            vec![true, false, false, true],
            vec![None, Some(3), Some(3), None],
        );
        assert_eq!(
            build_random_minor(&g, &bad).unwrap_err(),
            DecompositionError::BadChoice { vertex: 1, target: 3 }
        );
        let missing = StarDecomposition::from_parts(
            &g,
            vec![true, false, false, true],
            vec![None, None, Some(3), None],
        );
        assert_eq!(
            missing.validate(&g).unwrap_err(),
            DecompositionError::MissingChoice { vertex: 1 }
        );
    }

    #[test]
    fn local_evaluation_matches_full_sampling() {
        let g = Graph::petersen();
        let paths: Vec<[usize; 4]> = vec![[0, 1, 2, 3], [5, 0, 1, 6], [7, 2, 1, 0]];
        for trial in 0..2000 {
            let sd = sample_star_decomposition(&g, 0.35, 17, trial);
            for path in &paths {
                let mut streams = TrialStreams::new(17, trial);
                assert_eq!(
                    all_activate_locally(&g, &[*path], 0.35, &mut streams),
                    is_activated(&sd, *path)
                );
            }
        }
    }

    #[test]
    fn activation_lb_values() {
        assert!((activation_lb(16.0, 0.25).unwrap() - 1.0 / 32768.0).abs() < 1e-18);
        assert!((activation_lb(8.0, 0.5).unwrap() - 1.0 / 8192.0).abs() < 1e-18);
        assert!(activation_lb(16.0, 0.1).is_err());
        assert!(activation_lb(16.0, 0.6).is_err());
    }

    #[test]
    fn coactivation_ub_values() {
        let m4 = coactivation_ub(16384.0, 0.25, 4).unwrap();
        assert!((m4 / (0.125 / 1024f64.powi(4)) - 1.0).abs() < 1e-12);
        assert!((m4 - 1.137e-13).abs() < 1e-16);
        let m3 = coactivation_ub(16384.0, 0.25, 3).unwrap();
        assert!((m3 - 1.164e-10).abs() < 1e-13);
        assert!(coactivation_ub(64.0, 0.25, 4).is_err());
        assert!(coactivation_ub(16384.0, 0.25, 1).is_err());
    }
}
