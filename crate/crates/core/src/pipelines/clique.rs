use std::collections::{BTreeSet, VecDeque};

use crate::graph::Graph;
use crate::minor::{contract_partition, BranchModel};

/// Default step budget for [`dense_to_clique`].
pub const DEFAULT_CLIQUE_BUDGET: usize = 200_000;

/// Vertex set left at the point of minimum-degree peeling where the average
/// degree peaks (the largest such set on ties).
pub fn densest_core(g: &Graph) -> Vec<usize> {
    let n = g.num_vertices();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut edges = g.num_edges();
    let mut order = Vec::with_capacity(n);
    let mut best = (if n == 0 { 0.0 } else { edges as f64 / n as f64 }, 0);
    while let Some((_, v)) = queue.pop_first() {
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
                edges -= 1;
            }
        }
        let left = n - order.len();
        if left > 0 {
            let density = edges as f64 / left as f64;
            if density > best.0 {
                best = (density, order.len());
            }
        }
    }
    let mut core = order.split_off(best.1);
    core.sort_unstable();
    core
}

/// Best-effort clique minor of `g`.
///
/// Works on the whole graph and on its densest core. On each, min-degree
/// contraction (into the neighbor sharing the fewest neighbors) gives a first
/// clique minor; branch-set growth then tries to beat it one order at a time.
/// The result is checked with [`contract_partition`] and is always a complete
/// model; the empty graph gives order 0.
pub fn dense_to_clique(g: &Graph, budget: usize) -> BranchModel<'_> {
    let n = g.num_vertices();
    let mut best: Vec<Vec<usize>> = Vec::new();
    let mut steps = 0usize;
    let core = densest_core(g);
    let mut work_sets = vec![(0..n).collect::<Vec<usize>>()];
    if !core.is_empty() && core.len() < n {
        work_sets.push(core);
    }
    for keep in work_sets {
        let (w, remap) = g.induced_subgraph(&keep).expect("core vertices are in range");
        let mut local = contract_greedily(&w, budget, &mut steps);
        loop {
            let k = local.len() + 1;
            if k > w.num_vertices() || steps >= budget {
                break;
            }
            match grow_branches(&w, k, budget, &mut steps) {
                Some(found) => local = found,
                None => break,
            }
        }
        if local.len() > best.len() {
            best = local
                .into_iter()
                .map(|set| {
                    let mut mapped: Vec<usize> = set.into_iter().map(|v| remap[v]).collect();
                    mapped.sort_unstable();
                    mapped
                })
                .collect();
        }
    }
    let model = contract_partition(g, &best).expect("heuristic branch sets are disjoint and connected");
    debug_assert!(model.is_clique_model());
    model
}

/// Contracts the minimum-degree vertex into its neighbor with the fewest common
/// neighbors until the graph is complete. Isolated vertices are deleted. Falls
/// back to a greedy clique of the contracted graph when the budget runs out.
fn contract_greedily(g: &Graph, budget: usize, steps: &mut usize) -> Vec<Vec<usize>> {
    let n = g.num_vertices();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (adj[v].len(), v)).collect();
    let mut alive = vec![true; n];
    let mut exhausted = false;
    while let Some(&(deg, v)) = queue.first() {
        if deg + 1 == queue.len() {
            break;
        }
        if *steps >= budget {
            exhausted = true;
            break;
        }
        *steps += 1;
        queue.remove(&(deg, v));
        alive[v] = false;
        let nv = std::mem::take(&mut adj[v]);
        let Some(&u) = nv.iter().min_by_key(|&&u| (adj[u].intersection(&nv).count(), u)) else {
            members[v].clear();
            continue;
        };
        queue.remove(&(adj[u].len(), u));
        adj[u].remove(&v);
        for &w in &nv {
            if w == u {
                continue;
            }
            queue.remove(&(adj[w].len(), w));
            adj[w].remove(&v);
            if adj[u].insert(w) {
                adj[w].insert(u);
            }
            queue.insert((adj[w].len(), w));
        }
        queue.insert((adj[u].len(), u));
        let moved = std::mem::take(&mut members[v]);
        members[u].extend(moved);
    }
    let mut nodes: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if exhausted {
        nodes = greedy_clique(&adj, &nodes);
    }
    nodes.into_iter().map(|v| std::mem::take(&mut members[v])).collect()
}

/// Greedy clique among `nodes`: repeatedly add the highest-degree common neighbor.
fn greedy_clique(adj: &[BTreeSet<usize>], nodes: &[usize]) -> Vec<usize> {
    let mut cands: Vec<usize> = nodes.to_vec();
    let mut clique = Vec::new();
    while let Some(&v) = cands.iter().max_by_key(|&&v| (adj[v].len(), std::cmp::Reverse(v))) {
        clique.push(v);
        cands.retain(|w| adj[v].contains(w));
    }
    clique
}

struct Growth<'a> {
    g: &'a Graph,
    owner: Vec<Option<usize>>,
    branches: Vec<Vec<usize>>,
    /// Edge counts between branches.
    links: Vec<Vec<u32>>,
    missing: usize,
}

impl<'a> Growth<'a> {
    fn new(g: &'a Graph, seeds: &[usize]) -> Self {
        let mut s = Self {
            g,
            owner: vec![None; g.num_vertices()],
            branches: Vec::new(),
            links: Vec::new(),
            missing: 0,
        };
        for &v in seeds {
            s.owner[v] = Some(s.branches.len());
            s.branches.push(vec![v]);
        }
        s.rebuild_links();
        s
    }

    fn rebuild_links(&mut self) {
        let k = self.branches.len();
        self.links = vec![vec![0; k]; k];
        for (i, b) in self.branches.iter().enumerate() {
            for &v in b {
                for &w in self.g.neighbors(v) {
                    if let Some(j) = self.owner[w] {
                        if j != i {
                            self.links[i][j] += 1;
                        }
                    }
                }
            }
        }
        self.missing = (0..k)
            .map(|i| (i + 1..k).filter(|&j| self.links[i][j] == 0).count())
            .sum();
    }

    fn assign(&mut self, z: usize, i: usize) {
        self.owner[z] = Some(i);
        self.branches[i].push(z);
        for &w in self.g.neighbors(z) {
            if let Some(j) = self.owner[w] {
                if j != i {
                    if self.links[i][j] == 0 {
                        self.missing -= 1;
                    }
                    self.links[i][j] += 1;
                    self.links[j][i] += 1;
                }
            }
        }
    }

    /// Unassigned vertex and branch maximizing the number of newly adjacent pairs.
    fn best_addition(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        let mut touched = Vec::new();
        for z in 0..self.g.num_vertices() {
            if self.owner[z].is_some() {
                continue;
            }
            touched.clear();
            touched.extend(self.g.neighbors(z).iter().filter_map(|&w| self.owner[w]));
            touched.sort_unstable();
            touched.dedup();
            for &i in &touched {
                let gain = touched.iter().filter(|&&j| j != i && self.links[i][j] == 0).count();
                if gain > 0 && best.is_none_or(|(g, ..)| gain > g) {
                    best = Some((gain, z, i));
                }
            }
        }
        best.map(|(_, z, i)| (z, i))
    }

    fn first_missing(&self) -> Option<(usize, usize)> {
        let k = self.branches.len();
        (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .find(|&(i, j)| self.links[i][j] == 0)
    }

    /// Shortest path of unassigned vertices from branch `i` to a vertex adjacent
    /// to branch `j`.
    fn bridge(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        let n = self.g.num_vertices();
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for &v in &self.branches[i] {
            for &z in self.g.neighbors(v) {
                if self.owner[z].is_none() && parent[z] == usize::MAX {
                    parent[z] = z;
                    queue.push_back(z);
                }
            }
        }
        while let Some(z) = queue.pop_front() {
            if self.g.neighbors(z).iter().any(|&w| self.owner[w] == Some(j)) {
                let mut path = vec![z];
                let mut cur = z;
                while parent[cur] != cur {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in self.g.neighbors(z) {
                if self.owner[w].is_none() && parent[w] == usize::MAX {
                    parent[w] = z;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    fn drop_worst(&mut self) {
        let k = self.branches.len();
        let worst = (0..k)
            .max_by_key(|&i| ((0..k).filter(|&j| j != i && self.links[i][j] == 0).count(), i))
            .expect("at least one branch");
        for v in self.branches.remove(worst) {
            self.owner[v] = None;
        }
        for o in self.owner.iter_mut().flatten() {
            if *o > worst {
                *o -= 1;
            }
        }
        self.rebuild_links();
    }
}

/// Tries to grow `k` pairwise adjacent connected branch sets from a greedy
/// clique padded with high-degree seeds.
fn grow_branches(g: &Graph, k: usize, budget: usize, steps: &mut usize) -> Option<Vec<Vec<usize>>> {
    let adj: Vec<BTreeSet<usize>> = (0..g.num_vertices())
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let all: Vec<usize> = (0..g.num_vertices()).collect();
    let mut seeds = greedy_clique(&adj, &all);
    seeds.truncate(k);
    let mut rest: Vec<usize> = all.into_iter().filter(|v| !seeds.contains(v)).collect();
    rest.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    seeds.extend(rest.into_iter().take(k - seeds.len()));
    if seeds.len() < k {
        return None;
    }
    let mut st = Growth::new(g, &seeds);
    while st.missing > 0 {
        if *steps >= budget {
            return None;
        }
        *steps += 1;
        if let Some((z, i)) = st.best_addition() {
            st.assign(z, i);
            continue;
        }
        let (i, j) = st.first_missing().expect("missing pair exists");
        match st.bridge(i, j) {
            Some(path) => {
                for z in path {
                    st.assign(z, i);
                }
            }
            None => {
                st.drop_worst();
                if st.branches.len() < k {
                    return None;
                }
            }
        }
    }
    Some(st.branches)
}
