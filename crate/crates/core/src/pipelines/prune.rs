use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::Graph;
use crate::random_minor::{activated_paths, ActivatedPath, StarDecomposition};

/// Result of pruning one pair's middle edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MiddlePrune {
    pub kept: Vec<(usize, usize)>,
    pub pruned_6cycles: usize,
    pub pruned_stars: usize,
}

/// Prunes the middle edges `(x, y)` of one red pair: while two of them are
/// independent one is deleted, then the surviving star is cut down to `s - 1`
/// edges.
///
/// The survivors are the star at the endpoint of largest degree (smallest id on
/// ties, left side first), keeping its smallest leaves.
pub fn prune_middle_edges(edges: &[(usize, usize)], s: usize) -> MiddlePrune {
    let mut edges = edges.to_vec();
    edges.sort_unstable();
    edges.dedup();
    if edges.is_empty() {
        return MiddlePrune {
            kept: Vec::new(),
            pruned_6cycles: 0,
            pruned_stars: 0,
        };
    }
    let mut left: BTreeMap<usize, usize> = BTreeMap::new();
    let mut right: BTreeMap<usize, usize> = BTreeMap::new();
    for &(x, y) in &edges {
        *left.entry(x).or_insert(0) += 1;
        *right.entry(y).or_insert(0) += 1;
    }
    // (degree, left side first, smallest id)
    let best_left = left.iter().map(|(&x, &c)| (c, true, std::cmp::Reverse(x)));
    let best_right = right.iter().map(|(&y, &c)| (c, false, std::cmp::Reverse(y)));
    let (_, on_left, std::cmp::Reverse(center)) = best_left.chain(best_right).max().unwrap();

    let star: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(x, y)| if on_left { x == center } else { y == center })
        .collect();
    let pruned_6cycles = edges.len() - star.len();
    let keep = star.len().min(s.saturating_sub(1));
    // Star edges are sorted by their leaf, so the smallest leaves come first.
    let kept = star[..keep].to_vec();
    MiddlePrune {
        pruned_stars: star.len() - keep,
        kept,
        pruned_6cycles,
    }
}

/// Activated paths of one sampled decomposition, before and after pruning.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessPrune {
    pub activated: Vec<ActivatedPath>,
    /// Surviving paths, oriented so that `v < u`.
    pub kept: Vec<ActivatedPath>,
    pub pruned_6cycles: usize,
    pub pruned_stars: usize,
    /// Number of activated paths per red pair -> number of pairs.
    pub raw_histogram: BTreeMap<usize, usize>,
}

/// Groups the activated paths of `sd` by red pair and prunes each group with
/// [`prune_middle_edges`].
pub fn prune_activated_witnesses(g: &Graph, sd: &StarDecomposition, s: usize) -> WitnessPrune {
    let activated = activated_paths(g, sd);
    let mut by_pair: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for p in &activated {
        let (v, x, y, u) = if p.v < p.u {
            (p.v, p.x, p.y, p.u)
        } else {
            (p.u, p.y, p.x, p.v)
        };
        by_pair.entry((v, u)).or_default().push((x, y));
    }
    let mut kept = Vec::new();
    let mut pruned_6cycles = 0;
    let mut pruned_stars = 0;
    let mut raw_histogram = BTreeMap::new();
    for ((v, u), middle) in by_pair {
        *raw_histogram.entry(middle.len()).or_insert(0) += 1;
        let r = prune_middle_edges(&middle, s);
        pruned_6cycles += r.pruned_6cycles;
        pruned_stars += r.pruned_stars;
        kept.extend(r.kept.into_iter().map(|(x, y)| ActivatedPath { v, x, y, u }));
    }
    WitnessPrune {
        activated,
        kept,
        pruned_6cycles,
        pruned_stars,
        raw_histogram,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_independent_edges() {
        let r = prune_middle_edges(&[(1, 2), (3, 4)], 2);
        assert_eq!(r.kept, vec![(1, 2)]);
        assert_eq!((r.pruned_6cycles, r.pruned_stars), (1, 0));
    }

    #[test]
    fn three_star_with_s3() {
        let r = prune_middle_edges(&[(1, 4), (1, 2), (1, 3)], 3);
        assert_eq!(r.kept, vec![(1, 2), (1, 3)]);
        assert_eq!((r.pruned_6cycles, r.pruned_stars), (0, 1));
    }

    #[test]
    fn right_center() {
        let r = prune_middle_edges(&[(1, 9), (2, 9), (3, 7)], 5);
        assert_eq!(r.kept, vec![(1, 9), (2, 9)]);
        assert_eq!(r.pruned_6cycles, 1);
    }

    #[test]
    fn single_edge_untouched() {
        let r = prune_middle_edges(&[(5, 6)], 2);
        assert_eq!(r.kept, vec![(5, 6)]);
        assert_eq!((r.pruned_6cycles, r.pruned_stars), (0, 0));
        assert!(prune_middle_edges(&[], 2).kept.is_empty());
    }

    #[test]
    fn c6_activated_cycle() {
        // 0 - 1 - 2 - 3 - 4 - 5 - 0 with 0 and 3 red: two activated paths, one survives.
        let g = Graph::cycle(6);
        let red = vec![true, false, false, true, false, false];
        let choice = vec![None, Some(0), Some(3), None, Some(3), Some(0)];
        let sd = StarDecomposition::from_parts(&g, red, choice);
        sd.validate(&g).unwrap();
        let w = prune_activated_witnesses(&g, &sd, 2);
        assert_eq!(w.activated.len(), 2);
        assert_eq!(w.kept.len(), 1);
        assert_eq!(w.pruned_6cycles, 1);
        assert_eq!(w.raw_histogram, BTreeMap::from([(2, 1)]));
        assert!(w.kept.iter().all(|p| p.v == 0 && p.u == 3));
    }
}
