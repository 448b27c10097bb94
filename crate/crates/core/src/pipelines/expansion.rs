use serde::Serialize;

use crate::graph::Graph;

/// Seeds tried by [`find_sparse_independent_set`], lowest degree first.
const MAX_SEEDS: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ExpansionOutcome {
    /// An independent set of size at least `target = n / d^{1-eps}`.
    IndependentSet {
        set: Vec<usize>,
        target: f64,
        /// Violating sets removed along the way, in input ids.
        rounds: Vec<Vec<usize>>,
    },
    /// No violating set was found among the candidates examined. This is a
    /// heuristic certificate, not a proof of expansion.
    Certificate {
        heuristic: bool,
        threshold: f64,
        target: f64,
        /// Independent set accumulated before the search failed.
        partial: Vec<usize>,
        /// Vertices still present when the search failed.
        remaining: Vec<usize>,
        /// Best candidate set per seed, in input ids.
        examined: Vec<Vec<usize>>,
    },
}

/// Repeatedly removes independent sets `S` with `|N(S)| < (d^{1-eps} - 1)|S|`
/// together with their neighborhoods, accumulating the sets, until either the
/// union reaches `n / d^{1-eps}` or no violating set can be found.
///
/// When at most `d^{1-eps}` vertices remain a single vertex is taken.
///
/// # Panics
///
/// If `d < 2` or `eps` is outside `(0, 1)`.
pub fn expansion_decompose(g: &Graph, d: f64, eps: f64) -> ExpansionOutcome {
    assert!(d >= 2.0, "expansion target d = {d} must be at least 2");
    assert!(eps > 0.0 && eps < 1.0, "eps = {eps} must lie in (0, 1)");
    let n = g.num_vertices();
    let theta = d.powf(1.0 - eps);
    let target = n as f64 / theta;
    let mut alive = vec![true; n];
    let mut out = Vec::new();
    let mut rounds = Vec::new();
    loop {
        if out.len() as f64 >= target {
            out.sort_unstable();
            return ExpansionOutcome::IndependentSet { set: out, target, rounds };
        }
        let remaining: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        if remaining.is_empty() {
            break;
        }
        let found = if remaining.len() as f64 <= theta {
            vec![remaining[0]]
        } else {
            let (sub, remap) = g.induced_subgraph(&remaining).expect("alive vertices are in range");
            match search(&sub, theta - 1.0) {
                Ok(set) => set.into_iter().map(|v| remap[v]).collect(),
                Err(examined) => {
                    out.sort_unstable();
                    return ExpansionOutcome::Certificate {
                        heuristic: true,
                        threshold: theta - 1.0,
                        target,
                        partial: out,
                        remaining,
                        examined: examined
                            .into_iter()
                            .map(|set| set.into_iter().map(|v| remap[v]).collect())
                            .collect(),
                    };
                }
            }
        };
        for &v in &found {
            alive[v] = false;
            for &w in g.neighbors(v) {
                alive[w] = false;
            }
        }
        out.extend_from_slice(&found);
        rounds.push(found);
    }
    out.sort_unstable();
    ExpansionOutcome::Certificate {
        heuristic: true,
        threshold: theta - 1.0,
        target,
        partial: out,
        remaining: Vec::new(),
        examined: Vec::new(),
    }
}

/// Searches for an independent set `S` with `|N(S)| < theta |S|`.
///
/// From each of the lowest-degree seeds, grows an independent set by always
/// adding the vertex with the fewest new neighbors, keeps the prefix with the
/// smallest ratio `|N(S)| / |S|` (the larger one on ties), then drops members
/// while that lowers the ratio. Returns the best verified set over all seeds.
pub fn find_sparse_independent_set(g: &Graph, theta: f64) -> Option<Vec<usize>> {
    search(g, theta).ok()
}

fn search(g: &Graph, theta: f64) -> Result<Vec<usize>, Vec<Vec<usize>>> {
    let n = g.num_vertices();
    let mut seeds: Vec<usize> = (0..n).collect();
    seeds.sort_by_key(|&v| (g.degree(v), v));
    seeds.truncate(MAX_SEEDS);
    let mut examined = Vec::with_capacity(seeds.len());
    let mut best: Option<(f64, Vec<usize>)> = None;
    for &seed in &seeds {
        let set = improve(g, grow(g, seed));
        let ratio = g.neighborhood_of_set(&set).len() as f64 / set.len() as f64;
        if best.as_ref().is_none_or(|(r, b)| ratio < *r || (ratio == *r && set.len() > b.len())) {
            best = Some((ratio, set.clone()));
        }
        examined.push(set);
    }
    match best {
        Some((_, set))
            if g.is_independent(&set) && (g.neighborhood_of_set(&set).len() as f64) < theta * set.len() as f64 =>
        {
            Ok(set)
        }
        _ => Err(examined),
    }
}

fn grow(g: &Graph, seed: usize) -> Vec<usize> {
    let n = g.num_vertices();
    let mut in_s = vec![false; n];
    let mut in_n = vec![false; n];
    // marginal[c] = |N(c) \ N(S)| for candidates c
    let mut marginal: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut order = Vec::new();
    let mut n_size = 0usize;
    let mut best_len = 0;
    let mut best_ratio = f64::INFINITY;
    let mut next = Some(seed);
    while let Some(z) = next {
        in_s[z] = true;
        order.push(z);
        for &w in g.neighbors(z) {
            if !in_n[w] {
                in_n[w] = true;
                n_size += 1;
                for &q in g.neighbors(w) {
                    marginal[q] -= 1;
                }
            }
        }
        let ratio = n_size as f64 / order.len() as f64;
        if ratio <= best_ratio {
            best_ratio = ratio;
            best_len = order.len();
        }
        next = (0..n)
            .filter(|&c| !in_s[c] && !in_n[c])
            .min_by_key(|&c| (marginal[c], g.degree(c), c));
    }
    order.truncate(best_len);
    order.sort_unstable();
    order
}

/// Drops members whose private neighbors outweigh their share while the ratio
/// strictly improves.
fn improve(g: &Graph, mut set: Vec<usize>) -> Vec<usize> {
    let mut count = vec![0usize; g.num_vertices()];
    for &v in &set {
        for &w in g.neighbors(v) {
            count[w] += 1;
        }
    }
    let mut n_size = count.iter().filter(|&&c| c > 0).count();
    while set.len() > 1 {
        let k = set.len() as f64;
        let current = n_size as f64 / k;
        let mut pick: Option<(f64, usize, usize)> = None;
        for (idx, &v) in set.iter().enumerate() {
            let private = g.neighbors(v).iter().filter(|&&w| count[w] == 1).count();
            let ratio = (n_size - private) as f64 / (k - 1.0);
            if ratio < current && pick.is_none_or(|(r, ..)| ratio < r) {
                pick = Some((ratio, idx, private));
            }
        }
        let Some((_, idx, private)) = pick else { break };
        let v = set.remove(idx);
        for &w in g.neighbors(v) {
            count[w] -= 1;
        }
        n_size -= private;
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_vertex_is_found() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let s = find_sparse_independent_set(&g, 1.5).unwrap();
        assert!(s.contains(&3));
        assert!(g.neighborhood_of_set(&s).len() < s.len() * 2);
    }

    #[test]
    fn complete_bipartite_side() {
        let g = Graph::complete_bipartite(5, 5);
        let s = find_sparse_independent_set(&g, 3.0).unwrap();
        assert!(s == (0..5).collect::<Vec<_>>() || s == (5..10).collect::<Vec<_>>(), "{s:?}");
    }

    #[test]
    fn complete_graph_has_none() {
        for n in 4..=12 {
            assert!(find_sparse_independent_set(&Graph::complete(n), 1.5).is_none());
        }
    }

    #[test]
    fn edgeless_graph_returns_everything() {
        match expansion_decompose(&Graph::empty(7), 4.0, 0.5) {
            ExpansionOutcome::IndependentSet { set, .. } => assert_eq!(set, (0..7).collect::<Vec<_>>()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complete_bipartite_empties_into_one_side() {
        let g = Graph::complete_bipartite(5, 5);
        match expansion_decompose(&g, 4.0, 0.1) {
            ExpansionOutcome::IndependentSet { set, target, .. } => {
                assert_eq!(set.len(), 5);
                assert!(set.len() as f64 >= target);
                assert!(g.is_independent(&set));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complete_graph_gives_certificate() {
        match expansion_decompose(&Graph::complete(10), 8.0, 0.1) {
            ExpansionOutcome::Certificate { heuristic, examined, .. } => {
                assert!(heuristic);
                assert!(!examined.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }
}
