mod common;

use common::*;
use minorforge::covers::{cover_budget, kst_threshold, ramsey_cover};
use minorforge::generators::{gen_blowup, gen_incidence, heawood};
use minorforge::paths::{build_path_family, path_multiplicity_bound};
use minorforge::pipelines::{default_p, expansion_decompose, find_sparse_independent_set, ExpansionOutcome, PFormula};
use minorforge::random_minor::{activation_lb, coactivation_ub};
use minorforge::verify::exact_activation;
use minorforge::{contract_partition, verify_minor_model, Graph};

fn fixture5() -> Graph {
    Graph::from_edges(5, [(0, 1), (4, 1), (1, 2), (2, 3)]).unwrap()
}

#[test]
fn p4_activation_by_full_enumeration() {
    let g = Graph::path(4);
    let oracle = activation_by_enumeration(&g, &[[0, 1, 2, 3]], 0.5);
    assert!((oracle - 0.0625).abs() < 1e-15);
    assert_eq!(exact_activation(&g, &[[0, 1, 2, 3]], 0.5).unwrap(), oracle);
}

#[test]
fn fixture_activation_by_full_enumeration() {
    let g = fixture5();
    let oracle = activation_by_enumeration(&g, &[[0, 1, 2, 3]], 0.5);
    assert!((oracle - 0.046875).abs() < 1e-15);
    // closed form p^2 (1-p)^2 (1 - p/2)
    for p in [0.1, 0.3, 0.7] {
        let closed = p * p * (1.0 - p) * (1.0 - p) * (1.0 - p / 2.0);
        let o = activation_by_enumeration(&g, &[[0, 1, 2, 3]], p);
        assert!((o - closed).abs() < 1e-12);
        assert!((exact_activation(&g, &[[0, 1, 2, 3]], p).unwrap() - closed).abs() < 1e-12);
    }
}

#[test]
fn exact_matches_enumeration_on_small_graphs() {
    let graphs = [Graph::cycle(6), Graph::petersen(), Graph::complete_bipartite(3, 3), fixture5()];
    for g in &graphs {
        let path = {
            let x = 1;
            let v = g.neighbors(x)[0];
            let y = *g.neighbors(x).iter().find(|&&y| y != v).unwrap();
            let u = *g.neighbors(y).iter().find(|&&u| u != x && u != v).unwrap();
            [v, x, y, u]
        };
        for p in [0.1, 0.25, 0.5, 0.9] {
            let e = exact_activation(g, &[path], p).unwrap();
            let o = activation_by_enumeration(g, &[path], p);
            assert!((e - o).abs() < 1e-12, "{path:?} p={p}: {e} vs {o}");
            assert!((0.0..=1.0).contains(&e));
        }
    }
}

#[test]
fn bound_constants() {
    assert_eq!(activation_lb(16.0, 0.25).unwrap(), 1.0 / 32768.0);
    assert!((1.0f64 / 32768.0 - 3.0518e-5).abs() < 1e-9);
    // 2^7 * 4 * ln 4 = 709.78 is far above p d' = 4
    assert!(coactivation_ub(16.0, 0.25, 4).is_err());
    assert!((128.0 * 4.0 * 4f64.ln() - 709.78).abs() < 0.01);
    assert!((-10f64).exp() < 4.6e-5);
}

#[test]
fn p_formulas() {
    let kst = default_p(PFormula::Kst { s: 2, t: 2 }, 2f64.powi(60), 1.0);
    // 2^12 * 2^{1/2} * 2^{-30}
    assert!((kst.p - 2f64.powf(-17.5)).abs() < 1e-18);
    assert!((kst.p - 5.394e-6).abs() < 1e-9);
    let ks = default_p(PFormula::Ks { s: 3, eps: 0.05 }, 1e9, 1.0);
    assert!((ks.p - 1024.0 * 10f64.powf(-3.6)).abs() < 1e-12);
    assert!(default_p(PFormula::Ks { s: 3, eps: 0.05 }, 100.0, 1.0).clamped);
}

#[test]
fn kst_threshold_and_budget_values() {
    // (t-1) n^{2-1/s} + s n with s = t = 2, n = 16: 64 + 32
    assert_eq!(kst_threshold(2, 2, 16), 96.0);
    assert_eq!(cover_budget(16, 3), 16.0);
    assert!((cover_budget(64, 4) - 4.0 * 16.0).abs() < 1e-9);
    assert_eq!(path_multiplicity_bound(100.0, 3), 4.0);
    assert!((path_multiplicity_bound(64.0, 4) - 32.0).abs() < 1e-9);
}

#[test]
fn incidence_graphs_are_c4_free() {
    for q in [2, 3, 4] {
        let g = gen_incidence(q).unwrap();
        // any two points share at most one line
        for a in 0..g.num_vertices() {
            for b in a + 1..g.num_vertices() {
                let common = g.neighbors(a).iter().filter(|w| g.neighbors(b).contains(w)).count();
                assert!(common <= 1, "q={q}: {a} and {b} share {common}");
            }
        }
    }
    assert_eq!(heawood().num_edges(), 21);
}

#[test]
fn petersen_spoke_witness() {
    let g = Graph::petersen();
    let spokes: Vec<Vec<usize>> = (0..5).map(|i| vec![i, i + 5]).collect();
    assert!(is_clique_minor(&g, &spokes));
    let m = contract_partition(&g, &spokes).unwrap();
    assert!(verify_minor_model(&m).is_valid());
    assert!(m.is_clique_model());
    assert_eq!(m.order(), 5);
}

#[test]
fn c5_blowup_has_triangle_minor_by_hand() {
    // part b of C5[2] is {2b, 2b+1}
    let g = gen_blowup(&Graph::cycle(5), 2).unwrap();
    let witness = vec![vec![0, 2], vec![4, 6], vec![8]];
    assert!(is_clique_minor(&g, &witness));
    assert!(contract_partition(&g, &witness).unwrap().is_clique_model());
}

#[test]
fn complete_graph_has_no_sparse_set_exhaustively() {
    for n in 4..=12 {
        let g = Graph::complete(n);
        // independent sets of K_n are singletons; each has n - 1 >= 1.5 neighbors
        assert!((0..n).all(|v| neighborhood_size(&g, &[v]) as f64 >= 1.5));
        assert!(find_sparse_independent_set(&g, 1.5).is_none());
    }
}

#[test]
fn complete_bipartite_expansion_by_hand() {
    let m = 6;
    let g = Graph::complete_bipartite(m, m);
    let side: Vec<usize> = (0..m).collect();
    assert_eq!(neighborhood_size(&g, &side), m);
    let found = find_sparse_independent_set(&g, 3.0).unwrap();
    assert!(independent(&g, &found));
    assert!((neighborhood_size(&g, &found) as f64) < 3.0 * found.len() as f64);
    match expansion_decompose(&g, 9.0, 0.2) {
        ExpansionOutcome::IndependentSet { set, target, .. } => {
            assert!(independent(&g, &set));
            assert!(set.len() as f64 >= target);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn c5_path_family_by_hand() {
    let g = Graph::cycle(5);
    let pf = build_path_family(&g, 0, 3).unwrap();
    let mut got: Vec<[usize; 4]> = pf.paths().iter().map(|p| p.vertices()).collect();
    got.sort();
    assert_eq!(got, vec![[0, 1, 2, 3], [0, 4, 3, 2]]);
}

#[test]
fn cover_of_c5_by_hand() {
    let c = ramsey_cover(&Graph::cycle(5), 3).unwrap();
    assert!(c.covered >= 3);
    for s in &c.sets {
        assert!(independent(&Graph::cycle(5), s));
    }
}
