//! Seeded construction of test corpora.
//!
//! Every generator is a pure function of its parameters and seed.

mod field;

pub use field::FiniteField;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::GenError;
use crate::graph::Graph;
use crate::rng::generator_rng;

const GNP_SALT: u64 = 1;
const REGULAR_SALT: u64 = 2;

/// Attempts allowed before the pairing model gives up.
pub const REGULAR_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    Gnp { n: usize, prob: f64 },
    Regular { n: usize, d: usize },
    Blowup {
        #[serde(skip)]
        base: Graph,
        k: usize,
    },
    Incidence { q: usize },
}

impl GenSpec {
    pub fn generate(&self, seed: u64) -> Result<Graph, GenError> {
        match self {
            GenSpec::Gnp { n, prob } => gen_gnp(*n, *prob, seed),
            GenSpec::Regular { n, d } => gen_random_regular(*n, *d, seed),
            GenSpec::Blowup { base, k } => gen_blowup(base, *k),
            GenSpec::Incidence { q } => gen_incidence(*q),
        }
    }
}

/// Erdős–Rényi `G(n, prob)`.
pub fn gen_gnp(n: usize, prob: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&prob) {
        return Err(GenError::InvalidParameter(format!(
            "edge probability {prob} outside [0, 1]"
        )));
    }
    let mut rng = generator_rng(seed, GNP_SALT);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < prob {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("generated edges are valid"))
}

/// Simple `d`-regular graph from the pairing model.
///
/// Points are paired one at a time; a partner that would create a loop or a
/// duplicate edge is never picked, and an attempt restarts when the remaining
/// points admit no valid partner.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    if (n * d) % 2 == 1 || (d >= n && !(n == 0 || d == 0)) {
        return Err(GenError::Infeasible { n, d });
    }
    let mut rng = generator_rng(seed, REGULAR_SALT);
    'attempt: for _ in 0..REGULAR_ATTEMPTS {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        points.shuffle(&mut rng);
        let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
        let mut valid = Vec::new();
        while let Some(a) = points.pop() {
            valid.clear();
            valid.extend(
                points
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| b != a && !adj[a].contains(&b))
                    .map(|(j, _)| j),
            );
            if valid.is_empty() {
                continue 'attempt;
            }
            let j = valid[rng.gen_range(0..valid.len())];
            let b = points.swap_remove(j);
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        return Ok(Graph::from_sorted_adjacency(adj));
    }
    Err(GenError::RejectionBudget {
        attempts: REGULAR_ATTEMPTS,
    })
}

/// Replaces each vertex of `base` by an independent set of size `k` and each
/// edge by a complete bipartite graph. Vertex `(b, i)` gets id `b * k + i`.
pub fn gen_blowup(base: &Graph, k: usize) -> Result<Graph, GenError> {
    if k == 0 {
        return Err(GenError::InvalidParameter("blow-up part size must be at least 1".into()));
    }
    let edges = base.edges().flat_map(|(a, b)| {
        (0..k).flat_map(move |i| (0..k).map(move |j| (a * k + i, b * k + j)))
    });
    Ok(Graph::from_edges(base.num_vertices() * k, edges).expect("blow-up edges are valid"))
}

/// Normalized homogeneous coordinates of PG(2, q): first nonzero entry is 1.
fn projective_points(q: usize) -> Vec<[usize; 3]> {
    let mut pts = Vec::with_capacity(q * q + q + 1);
    for b in 0..q {
        for c in 0..q {
            pts.push([1, b, c]);
        }
    }
    for c in 0..q {
        pts.push([0, 1, c]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// Point-line incidence graph of the projective plane PG(2, q). Points are
/// `0..N`, lines `N..2N` with `N = q^2 + q + 1`.
pub fn gen_incidence(q: usize) -> Result<Graph, GenError> {
    let field = FiniteField::new(q)?;
    let pts = projective_points(q);
    let n = pts.len();
    let mut edges = Vec::with_capacity(n * (q + 1));
    for (i, p) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            let dot = (0..3).fold(0, |acc, c| field.add(acc, field.mul(p[c], l[c])));
            if dot == 0 {
                edges.push((i, n + j));
            }
        }
    }
    Ok(Graph::from_edges(2 * n, edges).expect("incidence edges are valid"))
}

/// The Heawood graph, i.e. the incidence graph of the Fano plane.
pub fn heawood() -> Graph {
    gen_incidence(2).expect("GF(2) is supported")
}

/// Named graphs covering every generator kind, all with at most 500 vertices.
pub fn standard_corpus(seed: u64) -> Vec<(String, Graph)> {
    let c5 = Graph::cycle(5);
    let mut out: Vec<(String, Graph)> = vec![
        ("gnp_60_0.15".into(), gen_gnp(60, 0.15, seed).unwrap()),
        ("gnp_200_0.05".into(), gen_gnp(200, 0.05, seed).unwrap()),
        ("gnp_500_0.02".into(), gen_gnp(500, 0.02, seed).unwrap()),
        ("regular_64_16".into(), gen_random_regular(64, 16, seed).unwrap()),
        ("regular_100_3".into(), gen_random_regular(100, 3, seed).unwrap()),
        ("regular_300_6".into(), gen_random_regular(300, 6, seed).unwrap()),
        ("blowup_c5_3".into(), gen_blowup(&c5, 3).unwrap()),
        ("blowup_c5_5".into(), gen_blowup(&c5, 5).unwrap()),
        ("blowup_petersen_2".into(), gen_blowup(&Graph::petersen(), 2).unwrap()),
    ];
    for q in [2, 3, 4, 5, 7] {
        out.push((format!("incidence_{q}"), gen_incidence(q).unwrap()));
    }
    out.push(("petersen".into(), Graph::petersen()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_extremes_and_determinism() {
        assert_eq!(gen_gnp(10, 0.0, 3).unwrap().num_edges(), 0);
        assert_eq!(gen_gnp(10, 1.0, 3).unwrap(), Graph::complete(10));
        assert_eq!(gen_gnp(40, 0.3, 9).unwrap(), gen_gnp(40, 0.3, 9).unwrap());
        assert_ne!(gen_gnp(40, 0.3, 9).unwrap(), gen_gnp(40, 0.3, 10).unwrap());
        assert!(gen_gnp(3, 1.5, 0).is_err());
    }

    #[test]
    fn regular_examples() {
        let g = gen_random_regular(16, 3, 1).unwrap();
        assert!((0..16).all(|v| g.degree(v) == 3));
        assert_eq!(g.num_edges(), 24);
        assert_eq!(gen_random_regular(4, 3, 5).unwrap(), Graph::complete(4));
        assert_eq!(gen_random_regular(5, 3, 0).unwrap_err(), GenError::Infeasible { n: 5, d: 3 });
        assert!(gen_random_regular(4, 4, 0).is_err());
        assert_eq!(gen_random_regular(6, 0, 0).unwrap().num_edges(), 0);
    }

    #[test]
    fn dense_regular_is_feasible() {
        let g = gen_random_regular(64, 16, 42).unwrap();
        assert!((0..64).all(|v| g.degree(v) == 16));
        assert_eq!(g, gen_random_regular(64, 16, 42).unwrap());
    }

    #[test]
    fn blowup_examples() {
        let b = gen_blowup(&Graph::cycle(5), 3).unwrap();
        assert_eq!((b.num_vertices(), b.num_edges()), (15, 45));
        let base = Graph::petersen();
        assert_eq!(gen_blowup(&base, 1).unwrap(), base);
        assert_eq!(gen_blowup(&Graph::path(2), 2).unwrap().num_edges(), 4);
        assert!(gen_blowup(&base, 0).is_err());
    }

    #[test]
    fn incidence_examples() {
        let h = heawood();
        assert_eq!((h.num_vertices(), h.num_edges()), (14, 21));
        assert!((0..14).all(|v| h.degree(v) == 3));
        let g = gen_incidence(3).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (26, 52));
        assert!((0..26).all(|v| g.degree(v) == 4));
        assert_eq!(gen_incidence(6).unwrap_err(), GenError::UnsupportedFieldOrder { q: 6 });
    }

    #[test]
    fn incidence_is_regular_for_all_supported_q() {
        for q in [4, 5, 7, 8, 9, 11, 13] {
            let g = gen_incidence(q).unwrap();
            let n = q * q + q + 1;
            assert_eq!(g.num_vertices(), 2 * n);
            assert!((0..2 * n).all(|v| g.degree(v) == q + 1), "q = {q}");
        }
    }
}
