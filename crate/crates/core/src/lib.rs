//! Random star-contraction minors and the machinery around them: half-degree
//! bipartite subgraphs, Ramsey independent-set covers, anchored 3-path
//! families, activated-witness pruning, expansion decomposition and a
//! dense-to-clique heuristic, plus a Monte Carlo harness that checks the
//! finite-size activation and concentration bounds.

pub mod covers;
pub mod error;
pub mod generators;
pub mod graph;
pub mod minor;
pub mod paths;
pub mod pipelines;
pub mod random_minor;
pub mod rng;
pub mod verify;

pub use error::{BoundError, CoverError, DecompositionError, GenError, GraphError, PathError, VerifyError};
pub use graph::{parse_edge_list, write_edge_list, DegreeStats, Graph};
pub use minor::{contract_partition, simplify_multigraph, verify_minor_model, BranchModel, MultiGraph};
