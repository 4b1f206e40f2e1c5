use proptest::prelude::*;

use map_core::cut_lp;
use map_core::dfs;
use map_core::graph::{self, EdgeVector, MultiGraph};
use map_core::oracle;
use map_core::pipeline::{self, SolveOptions};
use map_core::rational::{int, Rational};
use map_core::tap;
use map_core::toolkit::generators::gen_random_instance;
use map_core::toolkit::io;
use map_core::{Error, MapInstance};

fn multigraph() -> impl Strategy<Value = MultiGraph> {
    (2usize..=8).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n - 1), 0..3 * n).prop_map(move |pairs| {
            let edges = pairs.into_iter().map(|(u, v)| if v >= u { (u, v + 1) } else { (u, v) }).collect();
            MultiGraph::new(n, edges).unwrap()
        })
    })
}

/// A random spanning tree (vertex `i` hangs off some smaller vertex) plus
/// random extra edges, all heavy.
fn tree_plus_links() -> impl Strategy<Value = MapInstance> {
    (3usize..=9).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
        (parents, prop::collection::vec((0..n, 0..n - 1), 0..2 * n)).prop_map(move |(parents, extra)| {
            let mut triples: Vec<_> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1, 1)).collect();
            triples.extend(extra.into_iter().map(|(u, v)| if v >= u { (u, v + 1, 1) } else { (u, v, 1) }));
            MapInstance::from_triples(n, &triples).unwrap()
        })
    })
}

fn random_instance() -> impl Strategy<Value = MapInstance> {
    (4usize..=9, 0usize..10, 0.0f64..=1.0, any::<u64>())
        .prop_map(|(n, extra, f, seed)| gen_random_instance(n, extra, f, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn two_edge_connected_iff_every_cut_has_two_edges(g in multigraph()) {
        let ones = EdgeVector::ones(g.edge_count());
        let all_cuts_ok = oracle::all_cut_sides(g.vertex_count())
            .iter()
            .all(|side| graph::cut_weight(&g, side, &ones).unwrap() >= int(2));
        prop_assert_eq!(graph::is_two_edge_connected(&g), all_cuts_ok);
    }

    #[test]
    fn bridges_are_exactly_the_disconnecting_edges(g in multigraph()) {
        let base = graph::component_count(&g, None);
        let expected: Vec<_> = (0..g.edge_count())
            .filter(|&e| {
                let mut mask = vec![true; g.edge_count()];
                mask[e] = false;
                graph::component_count(&g, Some(&mask)) > base
            })
            .collect();
        let mut found = graph::bridges(&g, None);
        found.sort_unstable();
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn instance_json_round_trips(inst in random_instance()) {
        let text = io::to_json(&inst);
        let back = io::from_json(&text).unwrap();
        prop_assert_eq!(io::to_json(&back), text);
        prop_assert!(graph::validate_instance(&back).is_valid());
    }

    #[test]
    fn greedy_cover_matches_enumeration(inst in tree_plus_links()) {
        let tree = dfs::lexicographic_dfs(&inst, 0).unwrap();
        match tap::optimal_uplink_cover(&tree) {
            Ok(aug) => {
                prop_assert_eq!(aug.size, oracle::exact_uplink_cover(&tree).unwrap());
                prop_assert_eq!(tap::tap_fractional_optimum(&tree).unwrap(), Rational::from_integer(aug.size.into()));
            }
            Err(Error::UncoverableTreeEdge { .. }) => {
                prop_assert!(!graph::is_two_edge_connected(inst.graph()));
                let uncoverable = matches!(oracle::exact_uplink_cover(&tree), Err(Error::UncoverableTreeEdge { .. }));
                prop_assert!(uncoverable);
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lp_solution_is_feasible_and_bounded(inst in random_instance()) {
        let lp = cut_lp::solve_cut_lp(&inst).unwrap();
        for side in oracle::all_cut_sides(inst.vertex_count()) {
            prop_assert!(graph::cut_weight(inst.graph(), &side, &lp.x).unwrap() >= int(2));
        }
        let lower = Rational::from_integer((inst.vertex_count() - inst.matching_size()).into());
        prop_assert!(lp.objective >= lower);
        prop_assert_eq!(inst.fractional_cost(&lp.x), lp.objective.clone());
        prop_assert!(lp.basis_certificate.holds_at_equality(inst.graph(), &lp.x));
        prop_assert_eq!(lp.basis_certificate.rank(inst.graph()), inst.edge_count());
    }

    #[test]
    fn pipeline_invariants_hold(inst in random_instance()) {
        let opts = SolveOptions { diagnostics: true, oracle: true, ..Default::default() };
        let sol = pipeline::solve(&inst, &opts).unwrap();
        let failures = pipeline::check_invariants(&inst, &sol);
        prop_assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn solving_is_deterministic(inst in random_instance()) {
        let opts = SolveOptions { diagnostics: true, ..Default::default() };
        let a = pipeline::solve(&inst, &opts).unwrap();
        let b = pipeline::solve(&inst, &opts).unwrap();
        prop_assert_eq!(a.edges, b.edges);
        prop_assert_eq!(
            serde_json::to_string(&a.report).unwrap(),
            serde_json::to_string(&b.report).unwrap()
        );
    }
}
