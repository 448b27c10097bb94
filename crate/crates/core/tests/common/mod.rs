//! Brute-force reference implementations shared by the integration tests.
//! These never call into the library's algorithms beyond `Graph` accessors.

#![allow(dead_code)]

use minorforge::generators::{gen_gnp, gen_random_regular, standard_corpus};
use minorforge::Graph;

/// Probability that all `paths` activate, by summing over every one of the
/// `2^n` colorings and, within each, every combination of blue choices.
pub fn activation_by_enumeration(g: &Graph, paths: &[[usize; 4]], p: f64) -> f64 {
    let n = g.num_vertices();
    assert!(n <= 16);
    let mut total = 0.0;
    for mask in 0u32..1 << n {
        let red = |v: usize| mask >> v & 1 == 1;
        let mut weight = 1.0;
        for v in 0..n {
            weight *= if red(v) { p } else { 1.0 - p };
        }
        if weight == 0.0 {
            continue;
        }
        // Blue vertices with red neighbors choose uniformly; sum over all choice vectors.
        let choosers: Vec<(usize, Vec<usize>)> = (0..n)
            .filter(|&v| !red(v))
            .map(|v| (v, g.neighbors(v).iter().copied().filter(|&w| red(w)).collect::<Vec<_>>()))
            .filter(|(_, r)| !r.is_empty())
            .collect();
        let mut idx = vec![0usize; choosers.len()];
        let combos: usize = choosers.iter().map(|(_, r)| r.len()).product();
        for _ in 0..combos {
            let choice = |v: usize| {
                choosers
                    .iter()
                    .zip(&idx)
                    .find(|((c, _), _)| *c == v)
                    .map(|((_, r), &i)| r[i])
            };
            let ok = paths.iter().all(|&[v, x, y, u]| {
                red(v) && red(u) && !red(x) && !red(y) && choice(x) == Some(v) && choice(y) == Some(u)
            });
            if ok {
                total += weight / combos as f64;
            }
            for (k, (_, r)) in choosers.iter().enumerate() {
                idx[k] += 1;
                if idx[k] < r.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    total
}

/// Whether some `k` vertices are pairwise adjacent, by trying every `k`-subset.
pub fn has_clique_bruteforce(g: &Graph, k: usize) -> bool {
    fn rec(g: &Graph, start: usize, chosen: &mut Vec<usize>, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        for v in start..g.num_vertices() {
            if chosen.iter().all(|&c| g.has_edge(c, v)) {
                chosen.push(v);
                if rec(g, v + 1, chosen, k) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(g, 0, &mut Vec::new(), k)
}

/// Independence by checking every pair.
pub fn independent(g: &Graph, set: &[usize]) -> bool {
    set.iter().all(|&a| set.iter().all(|&b| a == b || !g.has_edge(a, b)))
}

/// `|N(S)|` counted directly from the edge list.
pub fn neighborhood_size(g: &Graph, set: &[usize]) -> usize {
    let mut hit = vec![false; g.num_vertices()];
    for (a, b) in g.edges() {
        if set.contains(&a) && !set.contains(&b) {
            hit[b] = true;
        }
        if set.contains(&b) && !set.contains(&a) {
            hit[a] = true;
        }
    }
    hit.into_iter().filter(|&h| h).count()
}

/// Connectivity of `set` by repeated relaxation over the edge list.
pub fn connected(g: &Graph, set: &[usize]) -> bool {
    let Some(&first) = set.first() else { return false };
    let mut reached = vec![first];
    loop {
        let before = reached.len();
        for (a, b) in g.edges() {
            for (x, y) in [(a, b), (b, a)] {
                if reached.contains(&x) && set.contains(&y) && !reached.contains(&y) {
                    reached.push(y);
                }
            }
        }
        if reached.len() == before {
            break;
        }
    }
    reached.len() == set.len()
}

/// Whether `branches` are disjoint, connected and pairwise joined by an edge of `g`.
pub fn is_clique_minor(g: &Graph, branches: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; g.num_vertices()];
    for b in branches {
        for &v in b {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        if !connected(g, b) {
            return false;
        }
    }
    for i in 0..branches.len() {
        for j in i + 1..branches.len() {
            let joined = g
                .edges()
                .any(|(a, b)| (branches[i].contains(&a) && branches[j].contains(&b)) || (branches[i].contains(&b) && branches[j].contains(&a)));
            if !joined {
                return false;
            }
        }
    }
    true
}

/// Small graphs (at most 100 vertices) from the standard corpus plus sparse
/// random and cubic graphs, for filtering by forbidden subgraphs.
pub fn small_candidates() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = standard_corpus(7)
        .into_iter()
        .filter(|(_, g)| g.num_vertices() <= 100)
        .collect();
    for seed in 0..40u64 {
        let n = 30 + (seed as usize * 7) % 70;
        let p = 1.5 / n as f64 + (seed % 4) as f64 * 0.02;
        out.push((format!("gnp_{n}_{p:.3}_s{seed}"), gen_gnp(n, p, seed).unwrap()));
    }
    for seed in 0..20u64 {
        let n = 20 + 4 * seed as usize;
        out.push((format!("regular_{n}_3_s{seed}"), gen_random_regular(n, 3, seed).unwrap()));
        out.push((format!("gnp_{n}_sparse_s{seed}"), gen_gnp(n, 2.0 / n as f64, seed).unwrap()));
    }
    out
}

/// The first `count` candidates with no `K_s`, checked by brute force.
pub fn ks_free_corpus(s: usize, count: usize) -> Vec<(String, Graph)> {
    small_candidates()
        .into_iter()
        .filter(|(_, g)| !has_clique_bruteforce(g, s))
        .take(count)
        .collect()
}
