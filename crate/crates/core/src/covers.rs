//! Half-degree bipartite subgraphs, Ramsey independent-set covers and
//! complete-bipartite subgraph detection.

use serde::Serialize;

use crate::error::CoverError;
use crate::graph::Graph;

/// Exhaustive `K_s`-freeness checks run only up to this many vertices.
pub const KS_VERIFY_MAX_VERTICES: usize = 100;
/// Exhaustive `K_s`-freeness checks run only up to this clique size.
pub const KS_VERIFY_MAX_S: usize = 5;
/// Side-size limit for [`find_kst`].
pub const KST_SIDE_LIMIT: usize = 64;

/// A spanning bipartite subgraph together with its bipartition.
#[derive(Debug, Clone)]
pub struct Bipartite {
    pub graph: Graph,
    pub side: Vec<bool>,
}

/// Spanning bipartite subgraph in which every vertex keeps at least half of its
/// degree.
///
/// Starts from BFS-depth parity (exact for bipartite inputs) and flips any
/// vertex with more same-side than cross-side neighbors until none remains.
/// Each flip strictly increases the cut, so the loop terminates.
pub fn half_degree_bipartite(g: &Graph) -> Bipartite {
    let n = g.num_vertices();
    let mut side = vec![false; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    side[y] = !side[x];
                    queue.push_back(y);
                }
            }
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            let same = g.neighbors(v).iter().filter(|&&w| side[w] == side[v]).count();
            if 2 * same > g.degree(v) {
                side[v] = !side[v];
                changed = true;
            }
        }
    }
    let adj = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| side[w] != side[v])
                .collect()
        })
        .collect();
    Bipartite {
        graph: Graph::from_sorted_adjacency(adj),
        side,
    }
}

/// Guaranteed size of the independent set found in a `K_s`-free graph on `m`
/// vertices: `m^{1/(s-1)} / 2`.
pub fn ramsey_set_bound(m: usize, s: usize) -> f64 {
    (m as f64).powf(1.0 / (s as f64 - 1.0)) / 2.0
}

/// Independent set of size at least `m^{1/(s-1)}/2` in a `K_s`-free graph.
///
/// If some vertex has degree at least `m^{(s-2)/(s-1)}`, recurses into its
/// neighborhood (which is `K_{s-1}`-free); otherwise extracts greedily by
/// minimum degree, smallest id first. The recursion chain is itself a clique,
/// so an edge met at the `s = 2` level exposes a `K_s` and is reported.
pub fn ramsey_independent_set(g: &Graph, s: usize) -> Result<Vec<usize>, CoverError> {
    if s < 2 {
        return Err(CoverError::CliqueBoundTooSmall { s });
    }
    let identity: Vec<usize> = (0..g.num_vertices()).collect();
    let mut chain = Vec::new();
    let mut set = ramsey_rec(g, s, s, &identity, &mut chain)?;
    set.sort_unstable();
    Ok(set)
}

fn ramsey_rec(
    g: &Graph,
    s: usize,
    s_top: usize,
    map: &[usize],
    chain: &mut Vec<usize>,
) -> Result<Vec<usize>, CoverError> {
    let m = g.num_vertices();
    if m == 0 {
        return Ok(Vec::new());
    }
    if s == 2 {
        if let Some((a, b)) = g.edges().next() {
            let mut witness = chain.clone();
            witness.extend([map[a], map[b]]);
            witness.sort_unstable();
            return Err(CoverError::CliqueFound { s: s_top, witness });
        }
        return Ok(map.to_vec());
    }
    let threshold = (m as f64).powf((s as f64 - 2.0) / (s as f64 - 1.0));
    let hub = (0..m).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
    if g.degree(hub) as f64 >= threshold {
        let (sub, local) = g
            .induced_subgraph(g.neighbors(hub))
            .expect("neighbors are in range");
        let sub_map: Vec<usize> = local.iter().map(|&v| map[v]).collect();
        chain.push(map[hub]);
        let out = ramsey_rec(&sub, s - 1, s_top, &sub_map, chain);
        chain.pop();
        return out;
    }
    Ok(greedy_min_degree(g).into_iter().map(|v| map[v]).collect())
}

/// Greedy independent set: repeatedly take a minimum-degree vertex of the
/// remaining graph (smallest id on ties) and delete its closed neighborhood.
pub fn greedy_min_degree(g: &Graph) -> Vec<usize> {
    let n = g.num_vertices();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut left = n;
    let mut out = Vec::new();
    while left > 0 {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        out.push(v);
        let mut removed = vec![v];
        removed.extend(g.neighbors(v).iter().copied().filter(|&w| alive[w]));
        for &r in &removed {
            alive[r] = false;
            left -= 1;
        }
        for &r in &removed {
            for &w in g.neighbors(r) {
                if alive[w] {
                    deg[w] -= 1;
                }
            }
        }
    }
    out
}

/// Disjoint independent sets covering at least half of the vertices.
#[derive(Debug, Clone, Serialize)]
pub struct CoverResult {
    pub sets: Vec<Vec<usize>>,
    pub covered: usize,
    /// `4 n^{1 - 1/(s-1)}`.
    pub budget: f64,
    /// Extractions that came out smaller than `m^{1/(s-1)}/2`.
    pub bound_violations: usize,
}

impl CoverResult {
    pub fn within_budget(&self) -> bool {
        self.sets.len() as f64 <= self.budget
    }
}

/// `4 n^{1 - 1/(s-1)}`.
pub fn cover_budget(n: usize, s: usize) -> f64 {
    4.0 * (n as f64).powf(1.0 - 1.0 / (s as f64 - 1.0))
}

/// Extracts Ramsey independent sets from the uncovered part until at least
/// `ceil(n/2)` vertices are covered.
pub fn ramsey_cover(g: &Graph, s: usize) -> Result<CoverResult, CoverError> {
    if s < 2 {
        return Err(CoverError::CliqueBoundTooSmall { s });
    }
    let n = g.num_vertices();
    let target = n.div_ceil(2);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut sets = Vec::new();
    let mut covered = 0;
    let mut bound_violations = 0;
    while covered < target {
        let (sub, remap) = g.induced_subgraph(&remaining).expect("remaining ids are valid");
        let local = ramsey_independent_set(&sub, s)?;
        if (local.len() as f64) < ramsey_set_bound(remaining.len(), s) {
            bound_violations += 1;
        }
        let set: Vec<usize> = local.iter().map(|&v| remap[v]).collect();
        covered += set.len();
        let mut taken = vec![false; n];
        for &v in &set {
            taken[v] = true;
        }
        remaining.retain(|&v| !taken[v]);
        sets.push(set);
    }
    Ok(CoverResult {
        sets,
        covered,
        budget: cover_budget(n, s),
        bound_violations,
    })
}

/// Kővári–Sós–Turán edge count `(t-1) n^{2-1/s} + s n` forcing a `K_{s,t}` in
/// a bipartite graph with parts of size `n`.
pub fn kst_threshold(s: usize, t: usize, n: usize) -> f64 {
    let n = n as f64;
    (t as f64 - 1.0) * n.powf(2.0 - 1.0 / s as f64) + s as f64 * n
}

/// A copy of `K_{s,t}`: every vertex of `s_side` is adjacent to every vertex of
/// `t_side`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KstWitness {
    pub s_side: Vec<usize>,
    pub t_side: Vec<usize>,
}

/// Brute-force search for `K_{s,t}` in a bipartite graph with sides `side`,
/// in either orientation. Each side may hold at most [`KST_SIDE_LIMIT`] vertices.
pub fn find_kst(g: &Graph, side: &[bool], s: usize, t: usize) -> Result<Option<KstWitness>, CoverError> {
    let n = g.num_vertices();
    if side.len() != n {
        return Err(CoverError::SideLength { got: side.len(), n });
    }
    if s == 0 || s > t {
        return Err(CoverError::BadShape { s, t });
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| side[u] == side[v]) {
        return Err(CoverError::NotBipartite(u, v));
    }
    let left: Vec<usize> = (0..n).filter(|&v| !side[v]).collect();
    let right: Vec<usize> = (0..n).filter(|&v| side[v]).collect();
    if left.len() > KST_SIDE_LIMIT || right.len() > KST_SIDE_LIMIT {
        return Err(CoverError::TooLarge {
            left: left.len(),
            right: right.len(),
            limit: KST_SIDE_LIMIT,
        });
    }
    Ok(kst_oriented(g, &left, &right, s, t).or_else(|| kst_oriented(g, &right, &left, s, t)))
}

fn kst_oriented(g: &Graph, from: &[usize], to: &[usize], s: usize, t: usize) -> Option<KstWitness> {
    let mut pos = vec![usize::MAX; g.num_vertices()];
    for (i, &v) in to.iter().enumerate() {
        pos[v] = i;
    }
    let masks: Vec<u64> = from
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| pos[w] != usize::MAX)
                .fold(0u64, |m, &w| m | (1 << pos[w]))
        })
        .collect();
    let mut chosen = Vec::with_capacity(s);
    let full = if to.len() == 64 { u64::MAX } else { (1u64 << to.len()) - 1 };
    let hit = kst_rec(&masks, 0, full, s, t, &mut chosen)?;
    let t_side: Vec<usize> = (0..to.len())
        .filter(|&i| hit >> i & 1 == 1)
        .take(t)
        .map(|i| to[i])
        .collect();
    Some(KstWitness {
        s_side: chosen.iter().map(|&i| from[i]).collect(),
        t_side,
    })
}

fn kst_rec(masks: &[u64], start: usize, common: u64, s: usize, t: usize, chosen: &mut Vec<usize>) -> Option<u64> {
    if chosen.len() == s {
        return Some(common);
    }
    for i in start..masks.len() {
        if masks.len() - i < s - chosen.len() {
            break;
        }
        let next = common & masks[i];
        if (next.count_ones() as usize) < t {
            continue;
        }
        chosen.push(i);
        if let Some(found) = kst_rec(masks, i + 1, next, s, t, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// Outcome of an exhaustive forbidden-subgraph check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FreenessCheck {
    Verified,
    Violated { witness: Vec<usize> },
    /// Too large to check exhaustively; the property is trusted.
    Unchecked,
}

impl FreenessCheck {
    /// False only when a violation was actually found.
    pub fn trusted(&self) -> bool {
        !matches!(self, FreenessCheck::Violated { .. })
    }
}

/// Exhaustive `K_s`-freeness check for `n <= 100` and `s <= 5`.
pub fn check_ks_free(g: &Graph, s: usize) -> FreenessCheck {
    if g.num_vertices() > KS_VERIFY_MAX_VERTICES || s > KS_VERIFY_MAX_S {
        return FreenessCheck::Unchecked;
    }
    match g.find_clique(s) {
        Some(witness) => FreenessCheck::Violated { witness },
        None => FreenessCheck::Verified,
    }
}

/// Exhaustive `K_{s,t}`-freeness check for general graphs: enumerates `s`-sets
/// with a common neighborhood of size `t`, giving up (unchecked) beyond
/// `max_sets` candidate sets.
pub fn check_kst_free(g: &Graph, s: usize, t: usize, max_sets: u64) -> FreenessCheck {
    let n = g.num_vertices() as u64;
    let mut combos: u64 = 1;
    for i in 0..s as u64 {
        combos = combos.saturating_mul(n.saturating_sub(i)) / (i + 1);
    }
    if combos > max_sets {
        return FreenessCheck::Unchecked;
    }
    let all: Vec<usize> = (0..g.num_vertices()).collect();
    let mut chosen = Vec::with_capacity(s);
    match kst_general(g, 0, &all, s, t, &mut chosen) {
        Some((a, b)) => FreenessCheck::Violated {
            witness: a.into_iter().chain(b).collect(),
        },
        None => FreenessCheck::Verified,
    }
}

fn kst_general(
    g: &Graph,
    start: usize,
    common: &[usize],
    s: usize,
    t: usize,
    chosen: &mut Vec<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if chosen.len() == s {
        return Some((chosen.clone(), common[..t].to_vec()));
    }
    for v in start..g.num_vertices() {
        let next: Vec<usize> = if chosen.is_empty() {
            g.neighbors(v).to_vec()
        } else {
            common.iter().copied().filter(|&w| g.has_edge(v, w)).collect()
        };
        if next.len() < t {
            continue;
        }
        chosen.push(v);
        if let Some(found) = kst_general(g, v + 1, &next, s, t, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_half_degree(g: &Graph) {
        let b = half_degree_bipartite(g);
        for v in 0..g.num_vertices() {
            assert!(2 * b.graph.degree(v) >= g.degree(v));
        }
        for (u, v) in b.graph.edges() {
            assert_ne!(b.side[u], b.side[v]);
            assert!(g.has_edge(u, v));
        }
    }

    #[test]
    fn half_degree_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(half_degree_bipartite(&c4).graph, c4);

        let k3 = half_degree_bipartite(&Graph::complete(3));
        let mut degs: Vec<usize> = (0..3).map(|v| k3.graph.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 2]);

        let k4 = half_degree_bipartite(&Graph::complete(4));
        assert_eq!(k4.side.iter().filter(|&&s| s).count(), 2);
        assert!((0..4).all(|v| k4.graph.degree(v) == 2));

        for n in 1..9 {
            check_half_degree(&Graph::complete(n));
        }
        check_half_degree(&Graph::petersen());
    }

    #[test]
    fn ramsey_set_examples() {
        assert_eq!(ramsey_independent_set(&Graph::empty(6), 2).unwrap(), (0..6).collect::<Vec<_>>());
        let c5 = ramsey_independent_set(&Graph::cycle(5), 3).unwrap();
        assert_eq!(c5.len(), 2);
        assert!(Graph::cycle(5).is_independent(&c5));
        let k33 = ramsey_independent_set(&Graph::complete_bipartite(3, 3), 3).unwrap();
        assert_eq!(k33, vec![3, 4, 5]);
        assert!(matches!(
            ramsey_independent_set(&Graph::empty(2), 1),
            Err(CoverError::CliqueBoundTooSmall { s: 1 })
        ));
    }

    #[test]
    fn ramsey_set_exposes_cliques() {
        let err = ramsey_independent_set(&Graph::complete(5), 3).unwrap_err();
        match err {
            CoverError::CliqueFound { s, witness } => {
                assert_eq!(s, 3);
                assert_eq!(witness.len(), 3);
                let (k, _) = Graph::complete(5).induced_subgraph(&witness).unwrap();
                assert!(k.is_complete());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(ramsey_independent_set(&Graph::path(2), 2).is_err());
    }

    #[test]
    fn cover_examples() {
        let e = ramsey_cover(&Graph::empty(7), 2).unwrap();
        assert_eq!(e.sets.len(), 1);
        assert_eq!(e.covered, 7);

        let c5 = ramsey_cover(&Graph::cycle(5), 3).unwrap();
        assert_eq!(c5.sets, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(c5.covered, 4);
        assert!((c5.budget - 4.0 * 5f64.sqrt()).abs() < 1e-12);

        let k33 = ramsey_cover(&Graph::complete_bipartite(3, 3), 3).unwrap();
        assert_eq!(k33.sets, vec![vec![3, 4, 5]]);

        let none = ramsey_cover(&Graph::empty(0), 3).unwrap();
        assert!(none.sets.is_empty());
    }

    #[test]
    fn kst_threshold_value() {
        let v = kst_threshold(2, 2, 10);
        assert!((v - (10f64.powf(1.5) + 20.0)).abs() < 1e-9);
        assert!((v - 51.6228).abs() < 1e-3);
    }

    #[test]
    fn find_kst_examples() {
        let k23 = Graph::complete_bipartite(2, 3);
        let side = k23.bipartition().unwrap();
        let w = find_kst(&k23, &side, 2, 2).unwrap().unwrap();
        assert_eq!(w.s_side.len(), 2);
        assert_eq!(w.t_side.len(), 2);
        for &a in &w.s_side {
            for &b in &w.t_side {
                assert!(k23.has_edge(a, b));
            }
        }
        assert!(find_kst(&k23, &side, 2, 4).unwrap().is_none());
        assert!(find_kst(&k23, &side, 3, 2).is_err());
        assert!(matches!(
            find_kst(&Graph::cycle(4), &[false, false, true, true], 1, 1),
            Err(CoverError::NotBipartite(0, 1))
        ));
        let big = Graph::complete_bipartite(65, 1);
        let side = big.bipartition().unwrap();
        assert!(matches!(find_kst(&big, &side, 1, 1), Err(CoverError::TooLarge { .. })));
    }

    #[test]
    fn freeness_checks() {
        assert_eq!(check_ks_free(&Graph::petersen(), 3), FreenessCheck::Verified);
        assert!(!check_ks_free(&Graph::complete(5), 3).trusted());
        assert_eq!(check_ks_free(&Graph::empty(101), 3), FreenessCheck::Unchecked);
        assert_eq!(check_kst_free(&Graph::cycle(6), 2, 2, 1_000_000), FreenessCheck::Verified);
        assert!(!check_kst_free(&Graph::cycle(4), 2, 2, 1_000_000).trusted());
        assert!(!check_kst_free(&Graph::complete(5), 2, 3, 1_000_000).trusted());
        assert_eq!(check_kst_free(&Graph::empty(5000), 3, 3, 1000), FreenessCheck::Unchecked);
    }
}
