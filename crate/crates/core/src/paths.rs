//! Anchored 3-path families in `K_s`-free graphs.
//!
//! From a root `v`, the neighborhood is covered by independent sets `S_i`.
//! Every outer neighbor of `S_i` keeps a single edge into `S_i` (to its
//! lowest-id neighbor there), so the kept edges form stars centered in `S_i`.
//! The kept neighborhood of each center `w` is covered again by independent
//! sets `S_{w,j}`, and every vertex `u` outside `{v} ∪ N(v)` adjacent to
//! `S_{w,j}` marks one permissible edge into it. Each permissible edge yields
//! one path `v - w - y - u`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::covers::ramsey_cover;
use crate::error::PathError;
use crate::graph::Graph;
use crate::random_minor::{is_activated, StarDecomposition};

/// One path `v - w - y - u` with `w ∈ S_i` and `y ∈ S_{w,j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FamilyPath {
    pub v: usize,
    pub w: usize,
    pub y: usize,
    pub u: usize,
    pub i: usize,
    pub j: usize,
}

impl FamilyPath {
    pub fn vertices(&self) -> [usize; 4] {
        [self.v, self.w, self.y, self.u]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PathFamily {
    root: usize,
    s: usize,
    anchors: Vec<Vec<usize>>,
    /// Per anchor `i`: outer vertex -> its single kept neighbor in `S_i`.
    star_assignment: Vec<BTreeMap<usize, usize>>,
    /// Center `w` -> its second-level sets `S_{w,1..}`.
    second_level: BTreeMap<usize, Vec<Vec<usize>>>,
    /// `(w, j)` -> endpoint `u` -> the `y ∈ S_{w,j}` of its permissible edge.
    permissible: BTreeMap<(usize, usize), BTreeMap<usize, usize>>,
    paths: Vec<FamilyPath>,
    by_endpoint: BTreeMap<usize, Vec<usize>>,
}

impl PathFamily {
    /// Assembles a family from raw paths without running the construction.
    /// Intended for fixtures; [`path_family_claims`] only reads the anchors
    /// and paths.
    pub fn from_paths_unchecked(root: usize, s: usize, anchors: Vec<Vec<usize>>, paths: Vec<FamilyPath>) -> Self {
        let by_endpoint = index_by_endpoint(&paths);
        Self {
            root,
            s,
            anchors,
            star_assignment: Vec::new(),
            second_level: BTreeMap::new(),
            permissible: BTreeMap::new(),
            paths,
            by_endpoint,
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn clique_bound(&self) -> usize {
        self.s
    }

    pub fn anchors(&self) -> &[Vec<usize>] {
        &self.anchors
    }

    pub fn star_assignment(&self) -> &[BTreeMap<usize, usize>] {
        &self.star_assignment
    }

    pub fn second_level(&self) -> &BTreeMap<usize, Vec<Vec<usize>>> {
        &self.second_level
    }

    pub fn permissible(&self) -> &BTreeMap<(usize, usize), BTreeMap<usize, usize>> {
        &self.permissible
    }

    pub fn paths(&self) -> &[FamilyPath] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Endpoints in increasing order.
    pub fn endpoints(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_endpoint.keys().copied()
    }

    /// Paths ending in `u`.
    pub fn paths_to(&self, u: usize) -> impl Iterator<Item = &FamilyPath> + '_ {
        self.by_endpoint
            .get(&u)
            .into_iter()
            .flatten()
            .map(|&k| &self.paths[k])
    }

    /// Paths of the family activated by `sd`.
    pub fn activated<'a>(&'a self, sd: &'a StarDecomposition) -> impl Iterator<Item = &'a FamilyPath> + 'a {
        self.paths.iter().filter(move |p| is_activated(sd, p.vertices()))
    }

    /// Checks the structural invariants of a constructed family against `g`,
    /// returning one message per violation.
    pub fn check_invariants(&self, g: &Graph) -> Vec<String> {
        let mut errs = Vec::new();
        let v = self.root;
        let nv = g.neighbors(v);
        let mut anchor_of = vec![None; g.num_vertices()];
        let mut covered = 0;
        for (i, set) in self.anchors.iter().enumerate() {
            if !g.is_independent(set) {
                errs.push(format!("S_{i} is not independent"));
            }
            for &w in set {
                if !g.has_edge(v, w) {
                    errs.push(format!("S_{i} member {w} is not a neighbor of the root"));
                }
                if let Some(other) = anchor_of[w].replace(i) {
                    errs.push(format!("{w} lies in S_{other} and S_{i}"));
                }
            }
            covered += set.len();
        }
        if covered < nv.len().div_ceil(2) {
            errs.push(format!("anchors cover {covered} of {} neighbors", nv.len()));
        }
        let excluded = |x: usize| x == v || g.has_edge(v, x);
        for (i, assign) in self.star_assignment.iter().enumerate() {
            let outer = g.neighborhood_of_set(&self.anchors[i]);
            let expected: Vec<usize> = outer.into_iter().filter(|&x| !excluded(x)).collect();
            let got: Vec<usize> = assign.keys().copied().collect();
            if expected != got {
                errs.push(format!("star assignment of S_{i} does not cover N_{i} exactly"));
            }
            for (&x, &w) in assign {
                if anchor_of[w] != Some(i) || !g.has_edge(x, w) {
                    errs.push(format!("{x} keeps an edge to {w}, which is not its neighbor in S_{i}"));
                }
            }
        }
        let mut seen_wju = std::collections::BTreeSet::new();
        for p in &self.paths {
            if p.v != v || anchor_of[p.w] != Some(p.i) {
                errs.push(format!("path {p:?} does not start at the root through S_i"));
            }
            if !(g.has_edge(p.v, p.w) && g.has_edge(p.w, p.y) && g.has_edge(p.y, p.u)) {
                errs.push(format!("path {p:?} uses a non-edge"));
            }
            if excluded(p.y) || excluded(p.u) || p.u == p.y {
                errs.push(format!("path {p:?} re-enters the closed root neighborhood"));
            }
            let in_swj = self
                .second_level
                .get(&p.w)
                .and_then(|sets| sets.get(p.j))
                .is_some_and(|set| set.binary_search(&p.y).is_ok());
            if !self.second_level.is_empty() && !in_swj {
                errs.push(format!("path {p:?}: y is not in S_(w,j)"));
            }
            if !seen_wju.insert((p.w, p.j, p.u)) {
                errs.push(format!("endpoint {} has two permissible edges into S_({},{})", p.u, p.w, p.j));
            }
        }
        let stars = check_stars(&self.paths);
        if let Some(detail) = stars.detail {
            errs.push(detail);
        }
        errs
    }
}

fn index_by_endpoint(paths: &[FamilyPath]) -> BTreeMap<usize, Vec<usize>> {
    let mut by = BTreeMap::new();
    for (k, p) in paths.iter().enumerate() {
        by.entry(p.u).or_insert_with(Vec::new).push(k);
    }
    by
}

/// Runs the anchored construction from `v` in a `K_s`-free graph (`s >= 3`).
pub fn build_path_family(g: &Graph, v: usize, s: usize) -> Result<PathFamily, PathError> {
    let n = g.num_vertices();
    if v >= n {
        return Err(PathError::VertexOutOfRange { vertex: v, n });
    }
    if s < 3 {
        return Err(PathError::CliqueBoundTooSmall { s });
    }
    let mut excluded = vec![false; n];
    excluded[v] = true;
    for &w in g.neighbors(v) {
        excluded[w] = true;
    }

    let (nbhd, remap) = g.induced_subgraph(g.neighbors(v)).expect("neighbors are in range");
    let anchors: Vec<Vec<usize>> = ramsey_cover(&nbhd, s - 1)?
        .sets
        .into_iter()
        .map(|set| set.into_iter().map(|x| remap[x]).collect())
        .collect();

    let mut star_assignment = Vec::with_capacity(anchors.len());
    let mut second_level = BTreeMap::new();
    let mut permissible = BTreeMap::new();
    let mut paths = Vec::new();
    let mut in_set = vec![false; n];
    for (i, anchor) in anchors.iter().enumerate() {
        for &w in anchor {
            in_set[w] = true;
        }
        // Clean: each outer vertex keeps only its edge to the lowest-id anchor neighbor.
        let mut assign = BTreeMap::new();
        let mut kept: BTreeMap<usize, Vec<usize>> = anchor.iter().map(|&w| (w, Vec::new())).collect();
        for x in g.neighborhood_of_set(anchor) {
            if excluded[x] {
                continue;
            }
            let w = *g.neighbors(x).iter().find(|&&w| in_set[w]).expect("x borders the anchor");
            assign.insert(x, w);
            kept.get_mut(&w).unwrap().push(x);
        }
        for &w in anchor {
            in_set[w] = false;
        }

        for (&w, kept_w) in &kept {
            let (sub, local) = g.induced_subgraph(kept_w).expect("kept vertices are in range");
            let sets: Vec<Vec<usize>> = ramsey_cover(&sub, s - 1)?
                .sets
                .into_iter()
                .map(|set| set.into_iter().map(|x| local[x]).collect())
                .collect();
            for (j, swj) in sets.iter().enumerate() {
                for &y in swj {
                    in_set[y] = true;
                }
                let mut marks = BTreeMap::new();
                for u in g.neighborhood_of_set(swj) {
                    if excluded[u] {
                        continue;
                    }
                    let y = *g.neighbors(u).iter().find(|&&y| in_set[y]).expect("u borders S_(w,j)");
                    marks.insert(u, y);
                    paths.push(FamilyPath { v, w, y, u, i, j });
                }
                for &y in swj {
                    in_set[y] = false;
                }
                permissible.insert((w, j), marks);
            }
            second_level.insert(w, sets);
        }
        star_assignment.push(assign);
    }
    let by_endpoint = index_by_endpoint(&paths);
    Ok(PathFamily {
        root: v,
        s,
        anchors,
        star_assignment,
        second_level,
        permissible,
        paths,
        by_endpoint,
    })
}

/// Bipartite graph of middle edges of the paths ending at one endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MiddleGraph {
    pub u: usize,
    /// Successors of the root.
    pub left: Vec<usize>,
    /// Predecessors of `u`.
    pub right: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl MiddleGraph {
    pub fn max_degree(&self) -> usize {
        let mut deg: BTreeMap<(bool, usize), usize> = BTreeMap::new();
        for &(w, y) in &self.edges {
            *deg.entry((false, w)).or_insert(0) += 1;
            *deg.entry((true, y)).or_insert(0) += 1;
        }
        deg.values().copied().max().unwrap_or(0)
    }
}

pub fn middle_graph(pf: &PathFamily, u: usize) -> Result<MiddleGraph, PathError> {
    let idx = pf.by_endpoint.get(&u).ok_or(PathError::UnknownEndpoint { u })?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut edges = Vec::with_capacity(idx.len());
    for &k in idx {
        let p = &pf.paths[k];
        left.push(p.w);
        right.push(p.y);
        edges.push((p.w, p.y));
    }
    left.sort_unstable();
    left.dedup();
    right.sort_unstable();
    right.dedup();
    edges.sort_unstable();
    Ok(MiddleGraph { u, left, right, edges })
}

/// Expansion hypothesis under which the size claims are asserted: every
/// independent set `S` has `|N(S)| >= d' |S|`, so in particular `δ(G) >= d'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionCertificate {
    pub d_prime: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimOutcome {
    pub passed: bool,
    pub bound: f64,
    pub observed: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeClaims {
    /// `|P_i| >= d'^2 |S_i| / 4 - 2 d' d`, one outcome per anchor.
    pub per_anchor: Vec<ClaimOutcome>,
    /// `|P| >= d'^3 / 16`.
    pub total: ClaimOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    /// (a) middle edges of each `P_i` span vertex-disjoint stars centered in `S_i`.
    pub stars: ClaimOutcome,
    /// (b) at most `4 d^{1-1/(s-2)}` paths of `P_i` through `w` end in `u`.
    pub multiplicity: ClaimOutcome,
    /// (c) every middle graph has maximum degree at most `4 d^{1-1/(s-2)}`.
    pub middle_degree: ClaimOutcome,
    /// (d) size claims, only with an expansion certificate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<SizeClaims>,
}

impl ClaimReport {
    pub fn all_passed(&self) -> bool {
        self.stars.passed
            && self.multiplicity.passed
            && self.middle_degree.passed
            && self
                .size
                .as_ref()
                .is_none_or(|s| s.total.passed && s.per_anchor.iter().all(|c| c.passed))
    }
}

fn check_stars(paths: &[FamilyPath]) -> ClaimOutcome {
    let mut center: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for p in paths {
        match center.get(&(p.i, p.y)) {
            Some(&w) if w != p.w => {
                return ClaimOutcome {
                    passed: false,
                    bound: 1.0,
                    observed: 2.0,
                    detail: Some(format!(
                        "in P_{} vertex {} is joined to centers {} and {}",
                        p.i, p.y, w, p.w
                    )),
                }
            }
            _ => {
                center.insert((p.i, p.y), p.w);
            }
        }
    }
    ClaimOutcome {
        passed: true,
        bound: 1.0,
        observed: if paths.is_empty() { 0.0 } else { 1.0 },
        detail: None,
    }
}

/// `4 d^{1 - 1/(s-2)}`.
pub fn path_multiplicity_bound(d: f64, s: usize) -> f64 {
    4.0 * d.powf(1.0 - 1.0 / (s as f64 - 2.0))
}

/// Checks the structural claims of a family against degree bound `d >= Δ(G)`.
pub fn path_family_claims(pf: &PathFamily, d: f64, certificate: Option<ExpansionCertificate>) -> ClaimReport {
    let bound = path_multiplicity_bound(d, pf.s);

    let mut per_wu: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for p in &pf.paths {
        *per_wu.entry((p.w, p.u)).or_insert(0) += 1;
    }
    let worst_wu = per_wu.values().copied().max().unwrap_or(0) as f64;
    let multiplicity = ClaimOutcome {
        passed: worst_wu <= bound,
        bound,
        observed: worst_wu,
        detail: None,
    };

    let worst_deg = pf
        .endpoints()
        .map(|u| middle_graph(pf, u).expect("endpoint is indexed").max_degree())
        .max()
        .unwrap_or(0) as f64;
    let middle_degree = ClaimOutcome {
        passed: worst_deg <= bound,
        bound,
        observed: worst_deg,
        detail: None,
    };

    let size = certificate.map(|c| {
        let dp = c.d_prime;
        let mut per_i = vec![0usize; pf.anchors.len()];
        for p in &pf.paths {
            if p.i < per_i.len() {
                per_i[p.i] += 1;
            }
        }
        let per_anchor = pf
            .anchors
            .iter()
            .zip(&per_i)
            .map(|(set, &count)| {
                let b = dp * dp * set.len() as f64 / 4.0 - 2.0 * dp * d;
                ClaimOutcome {
                    passed: count as f64 >= b,
                    bound: b,
                    observed: count as f64,
                    detail: None,
                }
            })
            .collect();
        let total_bound = dp.powi(3) / 16.0;
        SizeClaims {
            per_anchor,
            total: ClaimOutcome {
                passed: pf.paths.len() as f64 >= total_bound,
                bound: total_bound,
                observed: pf.paths.len() as f64,
                detail: None,
            },
        }
    });

    ClaimReport {
        stars: check_stars(&pf.paths),
        multiplicity,
        middle_degree,
        size,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // v=0, a=1, c=2, d=3, b=4 on the cycle v-a-c-d-b-v.
    fn c5_family() -> (Graph, PathFamily) {
        let g = Graph::cycle(5);
        let pf = build_path_family(&g, 0, 3).unwrap();
        (g, pf)
    }

    #[test]
    fn star_root_gives_empty_family() {
        let g = Graph::star(5);
        let pf = build_path_family(&g, 0, 3).unwrap();
        assert!(pf.is_empty());
        assert!(pf.check_invariants(&g).is_empty());
    }

    #[test]
    fn isolated_root_gives_empty_family() {
        let g = Graph::empty(3);
        assert!(build_path_family(&g, 1, 3).unwrap().is_empty());
    }

    #[test]
    fn c5_family_has_two_paths() {
        let (g, pf) = c5_family();
        assert_eq!(pf.anchors(), &[vec![1, 4]]);
        let got: Vec<[usize; 4]> = pf.paths().iter().map(FamilyPath::vertices).collect();
        assert_eq!(got, vec![[0, 1, 2, 3], [0, 4, 3, 2]]);
        assert!(pf.check_invariants(&g).is_empty());
        assert_eq!(pf.star_assignment()[0].get(&2), Some(&1));
        assert_eq!(pf.star_assignment()[0].get(&3), Some(&4));
    }

    #[test]
    fn c5_claims_and_middle_graph() {
        let (_, pf) = c5_family();
        let r = path_family_claims(&pf, 2.0, None);
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(r.multiplicity.observed, 1.0);
        let mg = middle_graph(&pf, 3).unwrap();
        assert_eq!(mg.left, vec![1]);
        assert_eq!(mg.right, vec![2]);
        assert_eq!(mg.edges.len(), 1);
        assert!(middle_graph(&pf, 0).is_err());
    }

    #[test]
    fn petersen_family() {
        let g = Graph::petersen();
        for v in 0..10 {
            let pf = build_path_family(&g, v, 3).unwrap();
            assert!(!pf.is_empty());
            assert!(pf.check_invariants(&g).is_empty(), "{:?}", pf.check_invariants(&g));
            assert!(path_family_claims(&pf, 3.0, None).all_passed());
        }
    }

    #[test]
    fn shared_middle_vertex_fails_star_claim() {
        let paths = vec![
            FamilyPath { v: 0, w: 1, y: 5, u: 7, i: 0, j: 0 },
            FamilyPath { v: 0, w: 2, y: 5, u: 8, i: 0, j: 0 },
        ];
        let pf = PathFamily::from_paths_unchecked(0, 3, vec![vec![1, 2]], paths);
        let r = path_family_claims(&pf, 3.0, None);
        assert!(!r.stars.passed);
        assert!(!r.all_passed());
    }

    #[test]
    fn triangles_are_reported() {
        let g = Graph::complete(4);
        assert!(matches!(build_path_family(&g, 0, 3), Err(PathError::Cover(_))));
        assert!(matches!(
            build_path_family(&g, 0, 2),
            Err(PathError::CliqueBoundTooSmall { s: 2 })
        ));
    }

    #[test]
    fn size_claims_need_certificate() {
        let (_, pf) = c5_family();
        assert!(path_family_claims(&pf, 2.0, None).size.is_none());
        let r = path_family_claims(&pf, 2.0, Some(ExpansionCertificate { d_prime: 1.0 }));
        let size = r.size.unwrap();
        assert!(size.total.passed);
        assert_eq!(size.per_anchor.len(), 1);
    }
}
