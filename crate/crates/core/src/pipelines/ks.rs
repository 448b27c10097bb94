use rayon::prelude::*;

use super::{avg_degree, choose_p, dense_to_clique, Assembled, Flags, PFormula, PipelineConfig, PipelineReport, TrialRecord};
use crate::covers::check_ks_free;
use crate::graph::Graph;
use crate::minor::{compose_branches, contract_partition, verify_minor_model, BranchModelJson};
use crate::random_minor::{activated_paths, build_random_minor, sample_star_decomposition};

/// Degree at or above which a vertex is trimmed before sampling:
/// `2 d sqrt(max(ln d, 1))`.
pub fn trim_threshold(d: f64) -> f64 {
    2.0 * d * d.ln().max(1.0).sqrt()
}

/// Trims high-degree vertices, samples the star-contraction minor, looks for a
/// clique minor in its simplification and maps the winner back to `g`.
pub fn ks_pipeline(g: &Graph, cfg: &PipelineConfig) -> PipelineReport {
    let degree = g.degree_stats();
    let d = degree.avg;
    let forbidden = check_ks_free(g, cfg.s);
    let threshold = trim_threshold(d);
    let keep: Vec<usize> = (0..g.num_vertices())
        .filter(|&v| d == 0.0 || (g.degree(v) as f64) < threshold)
        .collect();
    let (trimmed, remap) = g.induced_subgraph(&keep).expect("kept vertices are in range");
    let p = choose_p(cfg, PFormula::Ks { s: cfg.s, eps: cfg.eps }, d);

    let runs: Vec<(TrialRecord, Option<BranchModelJson>)> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|trial| ks_trial(g, &trimmed, &remap, cfg, p.p, trial))
        .collect();

    let eps_ok = cfg.eps_in_range();
    let flags = Flags {
        minor_valid: runs.iter().all(|(r, _)| r.minor_valid),
        multiplicity_within_bound: None,
        clique_complete: runs.iter().all(|(r, _)| r.clique_valid),
        trusted: forbidden.trusted() && eps_ok,
        forbidden_subgraph: forbidden,
        almost_regular: None,
        eps_in_range: Some(eps_ok),
        p_clamped: p.clamped,
    };
    PipelineReport::assemble(
        Assembled {
            pipeline: "ks",
            n: g.num_vertices(),
            m: g.num_edges(),
            degree,
            sampled_n: trimmed.num_vertices(),
            sampled_m: trimmed.num_edges(),
            p,
            seed: cfg.seed,
            flags,
        },
        runs,
    )
}

fn ks_trial(
    g: &Graph,
    trimmed: &Graph,
    remap: &[usize],
    cfg: &PipelineConfig,
    p: f64,
    trial: u64,
) -> (TrialRecord, Option<BranchModelJson>) {
    let sd = sample_star_decomposition(trimmed, p, cfg.seed, trial);
    let minor = build_random_minor(trimmed, &sd).expect("sampled decompositions are valid");
    let minor_valid = verify_minor_model(&minor).is_valid();
    // The simple minor's degrees are the distinct model neighbors per branch.
    let simple = minor.simplified();
    let clique = dense_to_clique(&simple, cfg.clique_budget);
    let branches = compose_branches(&minor, clique.branches(), remap);
    let (clique_valid, model) = match contract_partition(g, &branches) {
        Ok(m) => (
            m.is_clique_model() && verify_minor_model(&m).is_valid(),
            Some(m.to_json()),
        ),
        Err(_) => (false, None),
    };
    let record = TrialRecord {
        trial,
        red_count: sd.red_count(),
        activated_count: activated_paths(trimmed, &sd).len(),
        pruned_6cycles: 0,
        pruned_stars: 0,
        raw_histogram: minor.model().multiplicity_histogram(),
        parallel_histogram: minor.model().multiplicity_histogram(),
        minor_order: minor.order(),
        avg_degree_of_minor: avg_degree(simple.num_vertices(), simple.num_edges()),
        clique_minor_order: clique.order(),
        minor_valid,
        clique_valid,
    };
    (record, model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_blowup;

    fn cfg(trials: usize, seed: u64) -> PipelineConfig {
        PipelineConfig {
            s: 3,
            eps: 0.05,
            trials,
            seed,
            ..PipelineConfig::default()
        }
    }

    #[test]
    fn c5_blowup_gives_triangle_minor() {
        let g = gen_blowup(&Graph::cycle(5), 4).unwrap();
        let r = ks_pipeline(&g, &cfg(50, 1));
        assert!(r.flags.passed() && r.flags.trusted, "{:?}", r.flags);
        assert!(r.clique_minor_order >= 3);
        let model = r.clique_model.unwrap().into_model(&g).unwrap();
        assert!(verify_minor_model(&model).is_valid());
        assert!(model.is_clique_model());
    }

    #[test]
    fn k5_with_s3_is_untrusted() {
        let r = ks_pipeline(&Graph::complete(5), &cfg(3, 0));
        assert!(matches!(r.flags.forbidden_subgraph, crate::covers::FreenessCheck::Violated { .. }));
        assert!(!r.flags.trusted);
        assert!(r.flags.passed());
    }

    #[test]
    fn empty_graph_has_order_zero() {
        let r = ks_pipeline(&Graph::empty(0), &cfg(2, 0));
        assert_eq!(r.clique_minor_order, 0);
        assert!(r.flags.passed());
    }

    #[test]
    fn trimming_threshold() {
        assert_eq!(trim_threshold(2.0), 4.0);
        assert!((trim_threshold(100.0) - 200.0 * 100f64.ln().sqrt()).abs() < 1e-9);
    }
}
