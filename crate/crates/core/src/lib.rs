//! Exact-distance domination toolkit: graph primitives, the six domination
//! problem kinds with exact solvers, membership transforms through the
//! exact-distance-r graph, hardness gadget constructions with certificates,
//! and a verification campaign harness.

pub mod dimacs;
pub mod domination;
pub mod gadgets;
pub mod graph;
pub mod harness;
pub mod recognize;
mod setcover;
pub mod solve;

pub use dimacs::{read_dimacs, write_dimacs, DimacsError};
pub use domination::{
    verify, verify_with_oracle, ProblemKind, RomanLabeling, ShapeError, Solution, Verdict, Witness,
};
pub use gadgets::{
    build_roman_gadget, build_step_gadget, forward_certificate, parse_roles, pull_back_normalize,
    BoundMap, Claim, GadgetError, GadgetFamily, GadgetOutput, K5Which, OddWiring, RoleParseError,
    RoleTag, StepVariant,
};
pub use graph::{
    all_pairs_distances, exact_distance_graph, generate, splitmix64, DistanceOracle, Graph,
    GraphError, GraphFamilySpec,
};
pub use harness::{
    check_gadget_equality, check_transform_equivalence, derive_seed, expected_counts,
    run_campaign, structural_audit, CampaignConfig, CampaignReport, Caps, CheckKind,
    EquivalenceRecord, HarnessError, InstanceSpec, RecordVerdict, SideReport, Summary,
};
pub use recognize::{
    is_bipartite, is_chordal, verify_coloring, verify_hole, verify_odd_cycle, verify_peo,
    BipartiteCertificate, ChordalCertificate, Side,
};
pub use solve::{
    brute_force_reference, greedy_approx, solve_exact, GreedyOutcome, SolveError, SolveOutcome,
    SolveRecord,
    BRUTE_ROMAN_MAX_N, BRUTE_SET_MAX_N,
};
