//! Branch-set models of minors and their verification.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::Graph;

/// Loop-free multigraph keyed by unordered vertex pairs `(min, max)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), usize>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Adds `count` parallel edges between `u` and `v`.
    pub fn add_edges(&mut self, u: usize, v: usize, count: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(GraphError::Loop { vertex: u });
        }
        if count > 0 {
            *self.edges.entry(key(u, v)).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.add_edges(u, v, 1)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Number of distinct adjacent pairs.
    pub fn num_pairs(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn num_edges(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges.get(&key(u, v)).copied().unwrap_or(0)
    }

    /// `((u, v), multiplicity)` with `u < v`, ordered by pair.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.edges.iter().map(|(&k, &m)| (k, m))
    }

    pub fn max_multiplicity(&self) -> usize {
        self.edges.values().copied().max().unwrap_or(0)
    }

    /// Map from multiplicity to number of pairs carrying it.
    pub fn multiplicity_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &m in self.edges.values() {
            *h.entry(m).or_insert(0) += 1;
        }
        h
    }
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple graph with an edge wherever the multigraph has multiplicity at least one.
pub fn simplify_multigraph(m: &MultiGraph) -> Graph {
    let mut adj = vec![Vec::new(); m.n];
    for &(u, v) in m.edges.keys() {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Graph::from_sorted_adjacency(adj)
}

/// A minor of `host` witnessed by disjoint connected branch sets.
///
/// `model` is a multigraph on branch indices whose multiplicities count the host
/// edges running between each pair of branch sets.
#[derive(Debug, Clone)]
pub struct BranchModel<'g> {
    host: &'g Graph,
    branches: Vec<Vec<usize>>,
    model: MultiGraph,
}

impl<'g> BranchModel<'g> {
    /// Assembles a model without checking it. Use [`verify_minor_model`] before
    /// trusting the result.
    pub fn from_parts_unchecked(host: &'g Graph, branches: Vec<Vec<usize>>, model: MultiGraph) -> Self {
        Self {
            host,
            branches,
            model,
        }
    }

    /// Builds the model from a vertex-to-branch assignment, counting host edges
    /// between distinct branches. Connectivity of the branches is not checked.
    pub(crate) fn from_owner(host: &'g Graph, owner: &[Option<usize>], branches: Vec<Vec<usize>>) -> Self {
        let mut model = MultiGraph::new(branches.len());
        for (a, b) in host.edges() {
            if let (Some(i), Some(j)) = (owner[a], owner[b]) {
                if i != j {
                    *model.edges.entry(key(i, j)).or_insert(0) += 1;
                }
            }
        }
        Self {
            host,
            branches,
            model,
        }
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn branches(&self) -> &[Vec<usize>] {
        &self.branches
    }

    pub fn model(&self) -> &MultiGraph {
        &self.model
    }

    /// Number of branch sets, i.e. the order of the minor.
    pub fn order(&self) -> usize {
        self.branches.len()
    }

    pub fn simplified(&self) -> Graph {
        simplify_multigraph(&self.model)
    }

    /// Whether every pair of branch sets is joined in the model.
    pub fn is_clique_model(&self) -> bool {
        let k = self.branches.len();
        self.model.num_pairs() == k * k.saturating_sub(1) / 2
    }

    pub fn to_json(&self) -> BranchModelJson {
        BranchModelJson {
            branches: self.branches.clone(),
            model_edges: self.model.iter().map(|((i, j), m)| [i, j, m]).collect(),
        }
    }
}

/// Serialized form of a [`BranchModel`]; the host travels separately as an edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchModelJson {
    pub branches: Vec<Vec<usize>>,
    pub model_edges: Vec<[usize; 3]>,
}

impl BranchModelJson {
    /// Re-attaches a host. The result is unchecked.
    pub fn into_model(self, host: &Graph) -> Result<BranchModel<'_>, GraphError> {
        let mut model = MultiGraph::new(self.branches.len());
        for [i, j, m] in self.model_edges {
            model.add_edges(i, j, m)?;
        }
        Ok(BranchModel::from_parts_unchecked(host, self.branches, model))
    }
}

/// Contracts disjoint connected `parts` of `g`. Vertices outside every part are
/// dropped.
pub fn contract_partition<'g>(g: &'g Graph, parts: &[Vec<usize>]) -> Result<BranchModel<'g>, GraphError> {
    let n = g.num_vertices();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(GraphError::EmptyPart { part: i });
        }
        for &v in part {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            match owner[v] {
                Some(first) => {
                    return Err(GraphError::OverlappingParts {
                        vertex: v,
                        first,
                        second: i,
                    })
                }
                None => owner[v] = Some(i),
            }
        }
    }
    for (i, part) in parts.iter().enumerate() {
        if !g.is_connected_subset(part) {
            return Err(GraphError::DisconnectedPart { part: i });
        }
    }
    Ok(BranchModel::from_owner(g, &owner, parts.to_vec()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyBranch { branch: usize },
    VertexOutOfRange { branch: usize, vertex: usize },
    Overlap { vertex: usize, first: usize, second: usize },
    Disconnected { branch: usize },
    /// The model claims an edge but no host edge joins the two branch sets.
    UnwitnessedEdge { first: usize, second: usize, claimed: usize },
    /// Host edges join the branch sets but the model has no edge.
    MissingEdge { first: usize, second: usize, actual: usize },
    WrongMultiplicity { first: usize, second: usize, claimed: usize, actual: usize },
    ModelSizeMismatch { branches: usize, model_vertices: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks disjointness, connectivity and exact multiplicities of a model,
/// listing every violation found.
pub fn verify_minor_model(b: &BranchModel<'_>) -> ValidityReport {
    let g = b.host;
    let n = g.num_vertices();
    let mut violations = Vec::new();
    if b.model.num_vertices() != b.branches.len() {
        violations.push(Violation::ModelSizeMismatch {
            branches: b.branches.len(),
            model_vertices: b.model.num_vertices(),
        });
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, part) in b.branches.iter().enumerate() {
        if part.is_empty() {
            violations.push(Violation::EmptyBranch { branch: i });
            continue;
        }
        let mut in_range = true;
        for &v in part {
            if v >= n {
                violations.push(Violation::VertexOutOfRange { branch: i, vertex: v });
                in_range = false;
                continue;
            }
            match owner[v] {
                Some(first) => violations.push(Violation::Overlap {
                    vertex: v,
                    first,
                    second: i,
                }),
                None => owner[v] = Some(i),
            }
        }
        if in_range && !g.is_connected_subset(part) {
            violations.push(Violation::Disconnected { branch: i });
        }
    }
    let mut actual: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (x, y) in g.edges() {
        if let (Some(i), Some(j)) = (owner[x], owner[y]) {
            if i != j {
                *actual.entry(key(i, j)).or_insert(0) += 1;
            }
        }
    }
    for (&(i, j), &claimed) in &b.model.edges {
        match actual.get(&(i, j)) {
            None => violations.push(Violation::UnwitnessedEdge {
                first: i,
                second: j,
                claimed,
            }),
            Some(&a) if a != claimed => violations.push(Violation::WrongMultiplicity {
                first: i,
                second: j,
                claimed,
                actual: a,
            }),
            Some(_) => {}
        }
    }
    for (&(i, j), &a) in &actual {
        if !b.model.edges.contains_key(&(i, j)) {
            violations.push(Violation::MissingEdge {
                first: i,
                second: j,
                actual: a,
            });
        }
    }
    ValidityReport { violations }
}

/// Composes a model of a minor of `outer` (`inner_branches` are sets of branch
/// indices of `outer`) into branch sets of `outer`'s host, translated through
/// `host_remap` (host-local id to final id).
pub fn compose_branches(
    outer: &BranchModel<'_>,
    inner_branches: &[Vec<usize>],
    host_remap: &[usize],
) -> Vec<Vec<usize>> {
    inner_branches
        .iter()
        .map(|set| {
            let mut merged: Vec<usize> = set
                .iter()
                .flat_map(|&bi| outer.branches[bi].iter().map(|&v| host_remap[v]))
                .collect();
            merged.sort_unstable();
            merged
        })
        .collect()
}
