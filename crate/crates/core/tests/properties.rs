use proptest::prelude::*;
use proptest::sample::subsequence;

use oddthick::coloring::{chromatic_number, odd_colorable, Decision};
use oddthick::discharging::{apply_rule, initial_charges};
use oddthick::format::{parse_dimacs, parse_edge_list, parse_graph6, to_dimacs, to_edge_list, to_graph6};
use oddthick::planarity::{is_planar, thickness};
use oddthick::sampling::{random_instance, run_instance, ExtensionOp};
use oddthick::{
    canonical_key, odd_chromatic_number, odd_verdict, planar_embed, Budget, Graph, Planarity, ThicknessOutcome,
    VertexColoring,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        subsequence(pairs, 0..=len).prop_map(move |edges| Graph::from_edges(n, edges).unwrap())
    })
}

fn graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x0dd7_41c4),
        ..ProptestConfig::default()
    })]

    #[test]
    fn canonical_key_ignores_labels((g, perm) in graph_with_perm(8)) {
        prop_assert_eq!(canonical_key(&g), canonical_key(&g.relabel(&perm)));
    }

    #[test]
    fn formats_round_trip(g in graph(12)) {
        prop_assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_dimacs(&to_dimacs(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap().0, g);
    }

    #[test]
    fn witness_is_odd_and_optimal(g in graph(7)) {
        let r = odd_chromatic_number(&g, Budget::UNLIMITED).unwrap();
        let k = r.exact().unwrap();
        let w = r.witness();
        prop_assert!(odd_verdict(&g, w).unwrap().is_odd());
        prop_assert!(w.palette_size() as usize <= k);
        if k > 1 {
            prop_assert_eq!(odd_colorable(&g, k - 1, Budget::UNLIMITED), Decision::No);
        }
        let (chi, c) = chromatic_number(&g).unwrap();
        prop_assert!(chi <= k);
        prop_assert!(odd_verdict(&g, &c).unwrap().is_proper);
    }

    #[test]
    fn odd_chromatic_number_is_label_invariant((g, perm) in graph_with_perm(7)) {
        let a = odd_chromatic_number(&g, Budget::UNLIMITED).unwrap().exact();
        let b = odd_chromatic_number(&g.relabel(&perm), Budget::UNLIMITED).unwrap().exact();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn verdict_ignores_color_names(
        (g, colors) in graph(9).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), proptest::collection::vec(1u32..=5, n))
        }),
        names in Just((1u32..=5).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let renamed: Vec<u32> = colors.iter().map(|&c| names[c as usize - 1]).collect();
        let a = odd_verdict(&g, &VertexColoring::new(colors).unwrap()).unwrap();
        let b = odd_verdict(&g, &VertexColoring::new(renamed).unwrap()).unwrap();
        prop_assert_eq!(a.is_proper, b.is_proper);
        prop_assert_eq!(a.failing_parity, b.failing_parity);
        for (x, y) in a.per_vertex.iter().zip(&b.per_vertex) {
            prop_assert_eq!(x.l_star.len(), y.l_star.len());
        }
    }

    #[test]
    fn planar_embeddings_satisfy_euler(g in graph(9)) {
        match planar_embed(&g) {
            Planarity::Planar(e) => prop_assert!(e.euler_holds(&g)),
            Planarity::NonPlanar(w) => {
                prop_assert!(!is_planar(&g));
                prop_assert!(w.edges.iter().all(|&(u, v)| g.has_edge(u, v)));
            }
        }
    }

    #[test]
    fn charge_is_conserved(g in graph(8)) {
        prop_assume!(g.m() > 0);
        // Refuting biplanarity of a dense 8-vertex graph is exhaustive; such
        // cases come back Unknown and are skipped.
        if let ThicknessOutcome::Exact { theta, certificate } = thickness(&g, 3, Budget::nodes(20_000)) {
            prop_assert!(certificate.validate(&g).is_ok());
            prop_assert_eq!(certificate.t(), theta);
            let layers: Vec<_> = certificate
                .layers(&g)
                .into_iter()
                .map(|h| {
                    let e = planar_embed(&h).embedding().unwrap().clone();
                    (h, e)
                })
                .collect();
            let ledger = initial_charges(&layers).unwrap();
            prop_assert_eq!(ledger.total(), -6 * theta as i64);
            let (after, _) = apply_rule(&g, &ledger, theta);
            prop_assert_eq!(after.total(), ledger.total());
        }
    }

    #[test]
    fn extensions_produce_odd_colorings(seed in any::<u64>(), op in prop_oneof![
        Just(ExtensionOp::VertexDeletion),
        Just(ExtensionOp::EdgePairDeletion),
        Just(ExtensionOp::NEasy),
    ]) {
        let inst = random_instance(op, &mut ChaCha8Rng::seed_from_u64(seed));
        // A stalled n-easy loop is reported as an error, never as a bad coloring.
        if let Ok(c) = run_instance(&inst) {
            prop_assert!(odd_verdict(&inst.graph, &c).unwrap().is_odd());
            prop_assert!((c.palette_size() as usize) < inst.k);
        }
    }
}
