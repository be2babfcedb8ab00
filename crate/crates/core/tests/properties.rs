//! Property tests for the library-wide invariants.

use hopdom::{
    all_pairs_distances, exact_distance_graph, parse_roles, read_dimacs, solve_exact, verify,
    verify_with_oracle, write_dimacs, Graph, OddWiring, ProblemKind, Solution, StepVariant,
};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |mask| {
            let edges = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn dimacs_round_trip(g in arb_graph(12)) {
        let text = write_dimacs(&g);
        let back = read_dimacs(&text).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn exact_distance_graph_matches_oracle(g in arb_graph(10), r in 1usize..5) {
        let dr = exact_distance_graph(&g, r);
        let oracle = all_pairs_distances(&g);
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                prop_assert_eq!(dr.has_edge(u, v), oracle.dist(u, v) == r);
            }
        }
    }

    #[test]
    fn d1_is_the_graph_itself(g in arb_graph(10)) {
        let d1 = exact_distance_graph(&g, 1);
        prop_assert_eq!(d1.edges(), g.edges());
    }

    #[test]
    fn superset_closure_step_and_hop(
        g in arb_graph(9),
        r in 2usize..4,
        extras in proptest::collection::vec(any::<usize>(), 0..6),
    ) {
        for kind in [ProblemKind::RStep { r }, ProblemKind::RHop { r }] {
            let outcome = solve_exact(&g, kind, None);
            if let Some(sol) = outcome.solution() {
                let oracle = all_pairs_distances(&g);
                prop_assert!(matches!(
                    verify_with_oracle(&g, kind, sol, Some(&oracle)),
                    Ok(v) if v.is_pass()
                ));
                let mut ext = sol.vertex_set().unwrap().to_vec();
                ext.extend(extras.iter().map(|x| x % g.n()));
                let ext_sol = Solution::from_set(ext);
                prop_assert!(matches!(
                    verify_with_oracle(&g, kind, &ext_sol, Some(&oracle)),
                    Ok(v) if v.is_pass()
                ));
            }
        }
    }

    #[test]
    fn optimal_witnesses_verify(g in arb_graph(8), r in 2usize..4) {
        for kind in [
            ProblemKind::Domination,
            ProblemKind::TotalDomination,
            ProblemKind::RStep { r },
            ProblemKind::RHop { r },
            ProblemKind::Roman,
            ProblemKind::RHopRoman { r },
        ] {
            if let Some(sol) = solve_exact(&g, kind, None).solution() {
                prop_assert!(matches!(verify(&g, kind, sol), Ok(v) if v.is_pass()));
            }
        }
    }

    #[test]
    fn gadget_roles_text_round_trips(g in arb_graph(5), r in 2usize..4) {
        prop_assume!(g.is_connected() && !g.has_isolated_vertex() && g.n() >= 2);
        let outputs = [
            hopdom::build_step_gadget(&g, r, StepVariant::Bipartite).unwrap(),
            hopdom::build_step_gadget(&g, r, StepVariant::Chordal).unwrap(),
            hopdom::build_roman_gadget(&g, r, OddWiring::Literal).unwrap(),
        ];
        for out in outputs {
            let text = out.roles_text();
            let parsed = parse_roles(&text).unwrap();
            prop_assert_eq!(parsed, out.roles.clone());
            // The gadget graph round-trips through DIMACS too.
            let back = read_dimacs(&write_dimacs(&out.graph)).unwrap();
            prop_assert_eq!(back.edges(), out.graph.edges());
        }
    }
}
