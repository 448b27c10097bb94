use rayon::prelude::*;

use super::{avg_degree, choose_p, dense_to_clique, prune_activated_witnesses, Assembled, Flags, PFormula, PipelineConfig, PipelineReport, TrialRecord};
use crate::covers::{check_kst_free, half_degree_bipartite};
use crate::graph::Graph;
use crate::minor::{compose_branches, contract_partition, verify_minor_model, BranchModelJson};
use crate::random_minor::{build_random_minor, sample_star_decomposition};

/// Candidate `s`-sets beyond which the `K_{s,t}`-freeness check is skipped.
pub const KST_CHECK_MAX_SETS: u64 = 1_000_000;

/// Samples the star-contraction minor of a half-degree bipartite subgraph,
/// prunes activated 6-cycles and oversized stars, and contracts what is left.
///
/// The reported minor lives on the pruned host (star edges plus surviving
/// middle edges), so between any two branches it has at most `s - 1` parallel
/// edges. Its simplification is handed to [`dense_to_clique`].
pub fn kst_pipeline(g: &Graph, cfg: &PipelineConfig) -> PipelineReport {
    let degree = g.degree_stats();
    let gp = half_degree_bipartite(g).graph;
    let p = choose_p(cfg, PFormula::Kst { s: cfg.s, t: cfg.t }, degree.max as f64);
    let forbidden = check_kst_free(g, cfg.s, cfg.t, KST_CHECK_MAX_SETS);
    let almost_regular = degree.max <= 2 * degree.min;

    let runs: Vec<(TrialRecord, Option<BranchModelJson>)> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|trial| kst_trial(g, &gp, cfg, p.p, trial))
        .collect();

    let s_bound = cfg.s.saturating_sub(1);
    let flags = Flags {
        minor_valid: runs.iter().all(|(r, _)| r.minor_valid),
        multiplicity_within_bound: Some(runs.iter().all(|(r, _)| r.max_multiplicity() <= s_bound)),
        clique_complete: runs.iter().all(|(r, _)| r.clique_valid),
        trusted: forbidden.trusted() && almost_regular,
        forbidden_subgraph: forbidden,
        almost_regular: Some(almost_regular),
        eps_in_range: None,
        p_clamped: p.clamped,
    };
    PipelineReport::assemble(
        Assembled {
            pipeline: "kst",
            n: g.num_vertices(),
            m: g.num_edges(),
            degree,
            sampled_n: gp.num_vertices(),
            sampled_m: gp.num_edges(),
            p,
            seed: cfg.seed,
            flags,
        },
        runs,
    )
}

fn kst_trial(g: &Graph, gp: &Graph, cfg: &PipelineConfig, p: f64, trial: u64) -> (TrialRecord, Option<BranchModelJson>) {
    let n = gp.num_vertices();
    let sd = sample_star_decomposition(gp, p, cfg.seed, trial);
    let raw = build_random_minor(gp, &sd).expect("sampled decompositions are valid");
    let raw_valid = verify_minor_model(&raw).is_valid();

    let pr = prune_activated_witnesses(gp, &sd, cfg.s);
    let star_edges = (0..n).filter_map(|x| sd.choice(x).map(|v| (x, v)));
    let middle_edges = pr.kept.iter().map(|a| (a.x, a.y));
    let host = Graph::from_edges(n, star_edges.chain(middle_edges)).expect("pruned edges lie in the host");
    let minor = build_random_minor(&host, &sd).expect("pruning keeps every star edge");
    let minor_valid = raw_valid && verify_minor_model(&minor).is_valid();

    let simple = minor.simplified();
    let clique = dense_to_clique(&simple, cfg.clique_budget);
    let identity: Vec<usize> = (0..n).collect();
    let branches = compose_branches(&minor, clique.branches(), &identity);
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
        activated_count: pr.activated.len(),
        pruned_6cycles: pr.pruned_6cycles,
        pruned_stars: pr.pruned_stars,
        raw_histogram: pr.raw_histogram,
        parallel_histogram: minor.model().multiplicity_histogram(),
        minor_order: minor.order(),
        avg_degree_of_minor: avg_degree(simple.num_vertices(), simple.num_edges()),
        clique_minor_order: clique.order(),
        minor_valid,
        clique_valid,
    };
    (record, model)
}
