//! Exact solvers for all six problem kinds (distance kinds via the
//! exact-distance-r transform), exhaustive reference oracles, and the greedy
//! approximation for the set kinds.

use crate::domination::{ProblemKind, RomanLabeling, Solution};
use crate::graph::{all_pairs_distances, exact_distance_graph, Graph};
use crate::setcover::{min_roman_cover, min_set_cover, RomanCoverOutcome, SetCoverOutcome};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Brute-force caps: 2^n scan for set kinds, 3^n scan for Roman kinds.
pub const BRUTE_SET_MAX_N: usize = 16;
pub const BRUTE_ROMAN_MAX_N: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveOutcome {
    Optimal(Solution),
    /// Only possible for RStep and TotalDomination (a vertex with an empty
    /// required neighborhood can never be satisfied).
    Infeasible,
    BudgetExceeded { budget: usize },
}

impl SolveOutcome {
    pub fn optimal_value(&self) -> Option<usize> {
        match self {
            SolveOutcome::Optimal(s) => Some(s.value),
            _ => None,
        }
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

/// The documented external record for a solve result:
/// `{problem, r, status, value, witness}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub problem: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    /// "optimal" | "feasible" | "infeasible" | "budget_exceeded"
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<crate::domination::Witness>,
}

impl SolveRecord {
    fn base(kind: ProblemKind, status: &str, sol: Option<&Solution>) -> Self {
        SolveRecord {
            problem: kind.code().to_string(),
            r: kind.r(),
            status: status.to_string(),
            value: sol.map(|s| s.value),
            witness: sol.map(|s| s.witness.clone()),
        }
    }

    pub fn from_outcome(kind: ProblemKind, outcome: &SolveOutcome) -> Self {
        match outcome {
            SolveOutcome::Optimal(s) => Self::base(kind, "optimal", Some(s)),
            SolveOutcome::Infeasible => Self::base(kind, "infeasible", None),
            SolveOutcome::BudgetExceeded { .. } => Self::base(kind, "budget_exceeded", None),
        }
    }

    pub fn from_greedy(kind: ProblemKind, outcome: &GreedyOutcome) -> Self {
        match outcome {
            GreedyOutcome::Feasible(s) => Self::base(kind, "feasible", Some(s)),
            GreedyOutcome::Infeasible => Self::base(kind, "infeasible", None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GreedyOutcome {
    /// Valid (verify-passing) but not necessarily minimum.
    Feasible(Solution),
    Infeasible,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has {n} vertices, above the brute-force cap {cap} for {kind:?}")]
    CapExceeded { n: usize, cap: usize, kind: ProblemKind },
    #[error("greedy approximation handles set kinds only, got {0:?}")]
    RomanKindRejected(ProblemKind),
}

/// Per-vertex coverage sets for the four set kinds: picking `v` satisfies
/// exactly `covered(v)`. Distance kinds go through D_r(g) first.
fn set_kind_coverage(g: &Graph, kind: ProblemKind) -> Vec<(usize, Vec<usize>)> {
    let (h, closed) = match kind {
        ProblemKind::Domination => (g.clone(), true),
        ProblemKind::TotalDomination => (g.clone(), false),
        ProblemKind::RHop { r } => (exact_distance_graph(g, r), true),
        ProblemKind::RStep { r } => (exact_distance_graph(g, r), false),
        _ => panic!("set_kind_coverage called with {kind:?}"),
    };
    (0..h.n())
        .map(|v| {
            let mut cov: Vec<usize> = h.neighbors(v).to_vec();
            if closed {
                cov.push(v);
                cov.sort_unstable();
            }
            (v, cov)
        })
        .collect()
}

/// Coverage sets for the Roman subset formula: a 2 at `u` satisfies `u` itself
/// plus every vertex whose required neighborhood contains `u`.
fn roman_coverage(g: &Graph, kind: ProblemKind) -> Vec<Vec<usize>> {
    match kind {
        ProblemKind::Roman => (0..g.n())
            .map(|u| {
                let mut cov = g.neighbors(u).to_vec();
                cov.push(u);
                cov.sort_unstable();
                cov
            })
            .collect(),
        ProblemKind::RHopRoman { r } => {
            let oracle = all_pairs_distances(g);
            (0..g.n())
                .map(|u| {
                    let mut cov = oracle.exact_r_neighborhood(u, r);
                    cov.push(u);
                    cov.sort_unstable();
                    cov
                })
                .collect()
        }
        _ => panic!("roman_coverage called with {kind:?}"),
    }
}

/// Exact optimum. Budget is a cardinality budget for set kinds and a weight
/// budget for Roman kinds.
pub fn solve_exact(g: &Graph, kind: ProblemKind, budget: Option<usize>) -> SolveOutcome {
    if kind.is_roman() {
        let coverage = roman_coverage(g, kind);
        match min_roman_cover(g.n(), &coverage, budget) {
            RomanCoverOutcome::Optimal(twos, ones) => {
                let mut labels = vec![0u8; g.n()];
                for v in twos {
                    labels[v] = 2;
                }
                for v in ones {
                    labels[v] = 1;
                }
                let labeling = RomanLabeling::new(labels).expect("labels in range");
                SolveOutcome::Optimal(Solution::from_labeling(labeling))
            }
            RomanCoverOutcome::BudgetExceeded { budget } => SolveOutcome::BudgetExceeded { budget },
        }
    } else {
        let universe: Vec<usize> = (0..g.n()).collect();
        let candidates = set_kind_coverage(g, kind);
        match min_set_cover(&universe, &candidates, budget) {
            SetCoverOutcome::Optimal(set) => SolveOutcome::Optimal(Solution::from_set(set)),
            SetCoverOutcome::Infeasible { .. } => SolveOutcome::Infeasible,
            SetCoverOutcome::BudgetExceeded { budget } => SolveOutcome::BudgetExceeded { budget },
        }
    }
}

/// Exhaustive reference oracle, definition-checked through [`verify`].
/// Independent of the coverage formulation used by [`solve_exact`].
///
/// [`verify`]: crate::domination::verify
pub fn brute_force_reference(g: &Graph, kind: ProblemKind) -> Result<SolveOutcome, SolveError> {
    let n = g.n();
    let oracle = all_pairs_distances(g);
    if kind.is_roman() {
        if n > BRUTE_ROMAN_MAX_N {
            return Err(SolveError::CapExceeded { n, cap: BRUTE_ROMAN_MAX_N, kind });
        }
        let mut best: Option<Solution> = None;
        let mut labels = vec![0u8; n];
        loop {
            let weight: usize = labels.iter().map(|&l| l as usize).sum();
            if best.as_ref().is_none_or(|b| weight < b.value) {
                let candidate =
                    Solution::from_labeling(RomanLabeling::new(labels.clone()).unwrap());
                let verdict = crate::domination::verify_with_oracle(g, kind, &candidate, Some(&oracle))
                    .expect("shape is consistent");
                if verdict.is_pass() {
                    best = Some(candidate);
                }
            }
            // Base-3 odometer.
            let mut pos = 0;
            while pos < n && labels[pos] == 2 {
                labels[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
            labels[pos] += 1;
        }
        Ok(SolveOutcome::Optimal(best.expect("all-zero or heavier labeling exists")))
    } else {
        if n > BRUTE_SET_MAX_N {
            return Err(SolveError::CapExceeded { n, cap: BRUTE_SET_MAX_N, kind });
        }
        // RStep / TotalDomination feasibility: every vertex needs a nonempty
        // required neighborhood.
        match kind {
            ProblemKind::TotalDomination => {
                if (0..n).any(|v| g.degree(v) == 0) {
                    return Ok(SolveOutcome::Infeasible);
                }
            }
            ProblemKind::RStep { r } => {
                if (0..n).any(|v| oracle.exact_r_neighborhood(v, r).is_empty()) {
                    return Ok(SolveOutcome::Infeasible);
                }
            }
            _ => {}
        }
        let mut best: Option<Solution> = None;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if best.as_ref().is_some_and(|b| size >= b.value) {
                continue;
            }
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let candidate = Solution::from_set(set);
            let verdict = crate::domination::verify_with_oracle(g, kind, &candidate, Some(&oracle))
                .expect("shape is consistent");
            if verdict.is_pass() {
                best = Some(candidate);
            }
        }
        Ok(SolveOutcome::Optimal(best.expect("feasibility pre-checked")))
    }
}

/// Plain greedy cover over the kind's coverage sets: repeatedly take the
/// candidate covering the most uncovered elements, ties by lowest vertex id.
pub fn greedy_approx(g: &Graph, kind: ProblemKind) -> Result<GreedyOutcome, SolveError> {
    if kind.is_roman() {
        return Err(SolveError::RomanKindRejected(kind));
    }
    let n = g.n();
    let candidates = set_kind_coverage(g, kind);
    let mut covered = vec![false; n];
    if let Some(v) = (0..n).find(|&v| candidates.iter().all(|(_, cov)| !cov.contains(&v))) {
        debug_assert!(matches!(kind, ProblemKind::TotalDomination | ProblemKind::RStep { .. }), "vertex {v} uncoverable");
        return Ok(GreedyOutcome::Infeasible);
    }
    let mut chosen = Vec::new();
    while covered.iter().any(|&c| !c) {
        let (best, _) = candidates
            .iter()
            .map(|(id, cov)| (*id, cov.iter().filter(|&&e| !covered[e]).count()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .unwrap();
        chosen.push(best);
        for &e in &candidates[best].1 {
            covered[e] = true;
        }
    }
    Ok(GreedyOutcome::Feasible(Solution::from_set(chosen)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::verify;
    use crate::graph::{generate, GraphFamilySpec};

    fn p4() -> Graph {
        generate(&GraphFamilySpec::Path { n: 4 }).unwrap()
    }

    #[test]
    fn p4_hop2_optimum_two() {
        let out = solve_exact(&p4(), ProblemKind::RHop { r: 2 }, None);
        assert_eq!(out.optimal_value(), Some(2));
        let brute = brute_force_reference(&p4(), ProblemKind::RHop { r: 2 }).unwrap();
        assert_eq!(brute.optimal_value(), Some(2));
    }

    #[test]
    fn p4_step2_optimum_four() {
        let out = solve_exact(&p4(), ProblemKind::RStep { r: 2 }, None);
        assert_eq!(out.optimal_value(), Some(4));
    }

    #[test]
    fn k3_step2_infeasible() {
        let k3 = generate(&GraphFamilySpec::Complete { n: 3 }).unwrap();
        assert_eq!(solve_exact(&k3, ProblemKind::RStep { r: 2 }, None), SolveOutcome::Infeasible);
        assert_eq!(
            brute_force_reference(&k3, ProblemKind::RStep { r: 2 }).unwrap(),
            SolveOutcome::Infeasible
        );
        assert_eq!(
            greedy_approx(&k3, ProblemKind::RStep { r: 2 }).unwrap(),
            GreedyOutcome::Infeasible
        );
    }

    #[test]
    fn c5_hop_roman_weight_four() {
        let c5 = generate(&GraphFamilySpec::Cycle { n: 5 }).unwrap();
        let out = solve_exact(&c5, ProblemKind::RHopRoman { r: 2 }, None);
        assert_eq!(out.optimal_value(), Some(4));
        let brute = brute_force_reference(&c5, ProblemKind::RHopRoman { r: 2 }).unwrap();
        assert_eq!(brute.optimal_value(), Some(4));
        // D_2(C5) is again a 5-cycle, so the plain Roman optimum matches.
        let roman = brute_force_reference(&c5, ProblemKind::Roman).unwrap();
        assert_eq!(roman.optimal_value(), Some(4));
    }

    #[test]
    fn star_hop2_center_forced() {
        let star = generate(&GraphFamilySpec::Star { n: 4 }).unwrap();
        let out = solve_exact(&star, ProblemKind::RHop { r: 2 }, None);
        assert_eq!(out.optimal_value(), Some(2));
        let set = out.solution().unwrap().vertex_set().unwrap();
        assert!(set.contains(&0), "center has empty N_2, must be in S: {set:?}");
    }

    #[test]
    fn k2_domination() {
        let k2 = generate(&GraphFamilySpec::Path { n: 2 }).unwrap();
        assert_eq!(
            brute_force_reference(&k2, ProblemKind::Domination).unwrap().optimal_value(),
            Some(1)
        );
        assert_eq!(solve_exact(&k2, ProblemKind::Domination, None).optimal_value(), Some(1));
    }

    #[test]
    fn budget_exceeded_propagates() {
        let out = solve_exact(&p4(), ProblemKind::RStep { r: 2 }, Some(3));
        assert_eq!(out, SolveOutcome::BudgetExceeded { budget: 3 });
    }

    #[test]
    fn greedy_valid_and_at_least_exact_on_seeded_instances() {
        for idx in 0..200u64 {
            let n = 4 + (idx as usize % 9);
            let g = generate(&GraphFamilySpec::Gnp { n, p: 0.35, seed: 0x6EEE ^ idx }).unwrap();
            for kind in [
                ProblemKind::Domination,
                ProblemKind::TotalDomination,
                ProblemKind::RHop { r: 2 },
                ProblemKind::RStep { r: 2 },
            ] {
                let exact = solve_exact(&g, kind, None);
                match greedy_approx(&g, kind).unwrap() {
                    GreedyOutcome::Feasible(sol) => {
                        assert!(verify(&g, kind, &sol).unwrap().is_pass());
                        let opt = exact.optimal_value().expect("greedy feasible implies exact feasible");
                        assert!(sol.value >= opt);
                    }
                    GreedyOutcome::Infeasible => assert_eq!(exact, SolveOutcome::Infeasible),
                }
            }
        }
    }

    #[test]
    fn roman_subset_formula_matches_labeling_scan_small() {
        // All labeled graphs on <= 4 vertices plus seeded instances.
        for mask in 0u32..64 {
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::new(4, edges).unwrap();
            for kind in [ProblemKind::Roman, ProblemKind::RHopRoman { r: 2 }, ProblemKind::RHopRoman { r: 3 }] {
                let fast = solve_exact(&g, kind, None).optimal_value().unwrap();
                let slow = brute_force_reference(&g, kind).unwrap().optimal_value().unwrap();
                assert_eq!(fast, slow, "mask {mask}, kind {kind:?}");
            }
        }
    }

    #[test]
    fn greedy_rejects_roman() {
        assert_eq!(
            greedy_approx(&p4(), ProblemKind::Roman),
            Err(SolveError::RomanKindRejected(ProblemKind::Roman))
        );
    }

    #[test]
    fn cap_enforced() {
        let g = Graph::edgeless(17);
        assert!(matches!(
            brute_force_reference(&g, ProblemKind::Domination),
            Err(SolveError::CapExceeded { .. })
        ));
        let g = Graph::edgeless(10);
        assert!(matches!(
            brute_force_reference(&g, ProblemKind::Roman),
            Err(SolveError::CapExceeded { .. })
        ));
    }
}
