//! Simple undirected host graphs with dense vertex ids.
//!
//! Neighbor lists are kept sorted so adjacency tests are a binary search.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::GraphError;

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// Minimum, average and maximum degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegreeStats {
    pub min: usize,
    pub avg: f64,
    pub max: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::Loop { vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { adj })
    }

    /// Wraps adjacency lists that are already sorted, symmetric and loop-free.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let g = Self { adj };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u).collect())
            .collect();
        Self { adj }
    }

    pub fn cycle(n: usize) -> Self {
        if n < 3 {
            return Self::path(n);
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)));
        Self::from_edges(a + b, edges).expect("bipartite edges are valid")
    }

    /// Star `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Self {
        Self::complete_bipartite(1, k)
    }

    /// The Petersen graph: outer cycle `0..5`, inner pentagram `5..10`,
    /// spokes `i -- i+5`.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Self::from_edges(10, edges).expect("petersen edges are valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let n = self.adj.len();
        if n == 0 {
            return DegreeStats {
                min: 0,
                avg: 0.0,
                max: 0,
            };
        }
        let degs = self.adj.iter().map(Vec::len);
        DegreeStats {
            min: degs.clone().min().unwrap_or(0),
            avg: 2.0 * self.num_edges() as f64 / n as f64,
            max: degs.max().unwrap_or(0),
        }
    }

    /// `N(S)`: vertices outside `set` adjacent to at least one vertex of it.
    pub fn neighborhood_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.adj.len()];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.adj.len()];
        let mut out = Vec::new();
        for &v in set {
            for &w in &self.adj[v] {
                if !inside[w] && !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| !self.has_edge(a, b)))
    }

    /// Whether every pair of distinct vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        let n = self.adj.len();
        self.adj.iter().all(|list| list.len() + 1 == n)
    }

    /// Whether `set` induces a connected subgraph. The empty set is not connected.
    pub fn is_connected_subset(&self, set: &[usize]) -> bool {
        let Some(&start) = set.first() else {
            return false;
        };
        let mut member = vec![false; self.adj.len()];
        for &v in set {
            member[v] = true;
        }
        let mut seen = vec![false; self.adj.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if member[y] && !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        let distinct = {
            let mut s = set.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        reached == distinct
    }

    /// Subgraph induced by `keep`, relabeled `0..|keep|` in increasing order of
    /// the original ids. The returned remap sends new ids to original ids.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let n = self.adj.len();
        let mut remap: Vec<usize> = keep.to_vec();
        remap.sort_unstable();
        remap.dedup();
        if let Some(&bad) = remap.iter().find(|&&v| v >= n) {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n });
        }
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in remap.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = remap
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (new_id[w] != usize::MAX).then_some(new_id[w]))
                    .collect()
            })
            .collect();
        Ok((Graph::from_sorted_adjacency(adj), remap))
    }

    /// Proper 2-coloring (`true`/`false` sides) if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.adj.len();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                let cx = color[x].unwrap();
                for &y in &self.adj[x] {
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            stack.push(y);
                        }
                        Some(cy) if cy == cx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    /// Searches exhaustively for a clique on `k` vertices.
    ///
    /// Branches over common neighborhoods in increasing id order, so the cost is
    /// polynomial for fixed `k` on sparse inputs.
    pub fn find_clique(&self, k: usize) -> Option<Vec<usize>> {
        if k == 0 {
            return Some(Vec::new());
        }
        let n = self.adj.len();
        let mut chosen = Vec::with_capacity(k);
        for v in 0..n {
            if self.adj[v].len() + 1 < k {
                continue;
            }
            chosen.push(v);
            let cands: Vec<usize> = self.adj[v].iter().copied().filter(|&w| w > v).collect();
            if self.extend_clique(&mut chosen, &cands, k) {
                return Some(chosen);
            }
            chosen.pop();
        }
        None
    }

    fn extend_clique(&self, chosen: &mut Vec<usize>, cands: &[usize], k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        if chosen.len() + cands.len() < k {
            return false;
        }
        for (i, &w) in cands.iter().enumerate() {
            let next: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&x| self.has_edge(w, x))
                .collect();
            chosen.push(w);
            if self.extend_clique(chosen, &next, k) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    pub(crate) fn check_invariants(&self) -> Result<(), String> {
        for (u, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("adjacency of {u} not strictly sorted"));
            }
            for &v in list {
                if v == u {
                    return Err(format!("loop at {u}"));
                }
                if v >= self.adj.len() || self.adj[v].binary_search(&u).is_err() {
                    return Err(format!("asymmetric edge {u}-{v}"));
                }
            }
        }
        Ok(())
    }
}

/// Edge-list text plus the original ids when sparse ids were compacted.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    /// `original[i]` is the id used in the text for vertex `i`.
    pub original: Vec<usize>,
}

/// Edge pairs and the declared vertex count, if any.
type Pairs = (Vec<(usize, usize)>, Option<usize>);

fn parse_pairs(text: &str) -> Result<Pairs, GraphError> {
    let mut pairs = Vec::new();
    let mut declared = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            // "# n <count>" declares the vertex count so isolated vertices survive.
            let mut tok = comment.split_whitespace();
            if tok.next() == Some("n") {
                if let Some(Ok(count)) = tok.next().map(str::parse::<usize>) {
                    declared = Some(count);
                }
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let parse = |t: Option<&str>| -> Result<usize, GraphError> {
            t.and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| GraphError::Malformed {
                    line: line_no,
                    content: raw.to_string(),
                })
        };
        let u = parse(tok.next())?;
        let v = parse(tok.next())?;
        if tok.next().is_some() {
            return Err(GraphError::Malformed {
                line: line_no,
                content: raw.to_string(),
            });
        }
        if u == v {
            return Err(GraphError::LoopAtLine {
                line: line_no,
                vertex: u,
            });
        }
        pairs.push((u, v));
    }
    Ok((pairs, declared))
}

/// Parses "u v" lines into a graph over `0..=max id` (or the `# n` count when
/// declared). Lines starting with `#` are comments; duplicates collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let (pairs, declared) = parse_pairs(text)?;
    let max_id = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = declared.unwrap_or(0).max(max_id);
    Graph::from_edges(n, pairs)
}

/// Parses an edge list whose ids may be sparse, compacting them to `0..k` in
/// increasing order of the original ids.
pub fn parse_edge_list_compact(text: &str) -> Result<ParsedGraph, GraphError> {
    let (pairs, _) = parse_pairs(text)?;
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    for &(u, v) in &pairs {
        ids.insert(u, 0);
        ids.insert(v, 0);
    }
    let original: Vec<usize> = ids.keys().copied().collect();
    for (i, id) in ids.values_mut().enumerate() {
        *id = i;
    }
    let graph = Graph::from_edges(original.len(), pairs.iter().map(|&(u, v)| (ids[&u], ids[&v])))?;
    Ok(ParsedGraph { graph, original })
}

/// Canonical edge-list text: a `# n` header then one `u v` line per edge, `u < v`,
/// sorted.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(g.num_edges() * 8 + 16);
    let _ = writeln!(out, "# n {}", g.num_vertices());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_path() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 2);
    }

    #[test]
    fn parse_collapses_reverse_duplicate() {
        let g = parse_edge_list("0 1\n1 0\n").unwrap();
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn parse_rejects_loop() {
        assert!(matches!(
            parse_edge_list("0 0"),
            Err(GraphError::LoopAtLine { line: 1, vertex: 0 })
        ));
    }

    #[test]
    fn parse_reports_line_number() {
        let err = parse_edge_list("# header\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, GraphError::Malformed { line: 3, .. }));
        assert!(parse_edge_list("0 1 2").is_err());
        assert!(parse_edge_list("-1 2").is_err());
    }

    #[test]
    fn parse_honors_declared_count() {
        let g = parse_edge_list("# n 5\n0 1\n").unwrap();
        assert_eq!(g.num_vertices(), 5);
        let g = parse_edge_list("# n 0\n").unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn compact_remaps_sparse_ids() {
        let p = parse_edge_list_compact("10 20\n20 35\n").unwrap();
        assert_eq!(p.original, vec![10, 20, 35]);
        assert!(p.graph.has_edge(0, 1) && p.graph.has_edge(1, 2));
        assert!(!p.graph.has_edge(0, 2));
    }

    #[test]
    fn induced_subgraph_examples() {
        let (k3, remap) = Graph::complete(4).induced_subgraph(&[0, 2, 3]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(remap, vec![0, 2, 3]);

        let p = Graph::petersen();
        let all: Vec<usize> = (0..10).collect();
        let (copy, remap) = p.induced_subgraph(&all).unwrap();
        assert_eq!(copy, p);
        assert_eq!(remap, all);

        let (e, _) = Graph::cycle(5).induced_subgraph(&[3, 2]).unwrap();
        assert_eq!(e.num_vertices(), 2);
        assert_eq!(e.num_edges(), 1);

        assert!(matches!(
            Graph::cycle(5).induced_subgraph(&[7]),
            Err(GraphError::VertexOutOfRange { vertex: 7, n: 5 })
        ));
    }

    #[test]
    fn degree_stats_are_ordered() {
        let s = Graph::star(4).degree_stats();
        assert_eq!((s.min, s.max), (1, 4));
        assert!((s.avg - 8.0 / 5.0).abs() < 1e-12);
    }

    #[test]
    fn petersen_shape() {
        let p = Graph::petersen();
        assert_eq!(p.num_edges(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert!(p.find_clique(3).is_none());
        assert!(p.check_invariants().is_ok());
    }

    #[test]
    fn clique_search() {
        assert_eq!(Graph::complete(5).find_clique(5), Some(vec![0, 1, 2, 3, 4]));
        assert!(Graph::complete(5).find_clique(6).is_none());
        assert!(Graph::complete_bipartite(3, 3).find_clique(3).is_none());
        assert!(Graph::empty(3).find_clique(1).is_some());
    }

    #[test]
    fn bipartition_detects_odd_cycles() {
        assert!(Graph::cycle(4).bipartition().is_some());
        assert!(Graph::cycle(5).bipartition().is_none());
    }

    #[test]
    fn neighborhood_and_connectivity() {
        let c = Graph::cycle(6);
        assert_eq!(c.neighborhood_of_set(&[0, 1]), vec![2, 5]);
        assert!(c.is_connected_subset(&[0, 1, 2]));
        assert!(!c.is_connected_subset(&[0, 2]));
        assert!(!c.is_connected_subset(&[]));
    }
}
