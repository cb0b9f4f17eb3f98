use proptest::prelude::*;

use sfl_core::extremal::SplitGraphSpec;
use sfl_core::factors::{
    double_cover_matching_size, fractional_matching_number, has_k2_ck_factor, has_star_factor, max_deficiency,
    FactorOutcome,
};
use sfl_core::graph::{
    canonical_form, disjoint_union, join, parse_edge_list, read_graph6, write_edge_list, write_graph6,
};
use sfl_core::spectral::{check_subgraph_monotonicity, spectral_radius, spectral_radius_upper_bound, PowerOptions};
use sfl_core::{Graph, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let pairs = (0..n).flat_map(|v| (0..v).map(move |u| (u, v)));
            for ((u, v), on) in pairs.zip(bits) {
                if on {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn adjacency_is_symmetric_and_loopless(g in graph(20)) {
        prop_assert!(g.check_invariants());
        for (u, v) in g.edges() {
            prop_assert!(g.has_edge(v, u));
            prop_assert_ne!(u, v);
        }
        prop_assert_eq!(g.vertices().iter().map(|v| g.degree(v)).sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn graph6_and_edge_list_round_trip(g in graph(30)) {
        prop_assert_eq!(read_graph6(&write_graph6(&g).unwrap()).unwrap(), g.clone());
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn join_and_union_degrees(a in graph(10), b in graph(10)) {
        let j = join(&a, &b).unwrap();
        let u = disjoint_union(&a, &b).unwrap();
        prop_assert_eq!(j.edge_count(), a.edge_count() + b.edge_count() + a.n() * b.n());
        for v in 0..a.n() {
            prop_assert_eq!(j.degree(v), a.degree(v) + b.n());
            prop_assert_eq!(u.degree(v), a.degree(v));
        }
        for v in 0..b.n() {
            prop_assert_eq!(j.degree(a.n() + v), b.degree(v) + a.n());
        }
        prop_assert_eq!(u.components().len(), a.components().len() + b.components().len());
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in graph_and_perm(8)) {
        let h = g.permute(&perm).unwrap();
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn induced_delete_counts_isolated(g in graph(14), mask in any::<u64>()) {
        let removed = VertexSet(mask & VertexSet::full(g.n()).0);
        let del = g.induced_delete(&removed.to_vec()).unwrap();
        prop_assert_eq!(del.graph.n(), g.n() - removed.len());
        prop_assert_eq!(del.graph.isolated_count(), g.isolated_after_removal(removed));
    }

    #[test]
    fn spectral_radius_bounds((g, perm) in graph_and_perm(16)) {
        let r = spectral_radius(&g, PowerOptions::default()).unwrap().into_converged().unwrap();
        let avg = 2.0 * g.edge_count() as f64 / g.n() as f64;
        prop_assert!(r.rho >= avg - 1e-9);
        prop_assert!(r.rho <= spectral_radius_upper_bound(&g) + 1e-9);
        let p = spectral_radius(&g.permute(&perm).unwrap(), PowerOptions::default()).unwrap();
        prop_assert!((p.rho - r.rho).abs() < 1e-8);
    }

    #[test]
    fn adding_an_edge_never_lowers_rho(g in graph(14), pick in any::<prop::sample::Index>()) {
        let missing: Vec<(usize, usize)> = g.complement().edges().collect();
        prop_assume!(!missing.is_empty());
        let (u, v) = missing[pick.index(missing.len())];
        let mut sup = g.clone();
        sup.add_edge(u, v).unwrap();
        prop_assert!(check_subgraph_monotonicity(&g, &sup, PowerOptions::default()).unwrap());
    }

    #[test]
    fn fractional_matching_formulas_agree(g in graph(20)) {
        let f = fractional_matching_number(&g).unwrap().doubled;
        prop_assert_eq!(f, double_cover_matching_size(&g).unwrap());
        prop_assert!(f <= g.n() - g.isolated_count());
        // Each edge alone is a fractional matching of weight one.
        prop_assert!(g.edge_count() == 0 || f >= 2);
    }

    #[test]
    fn certificates_are_sound(g in graph(10), k in 2usize..5) {
        let star = has_star_factor(&g, k).unwrap();
        star.validate(&g).unwrap();
        prop_assert_eq!(star.exists, max_deficiency(&g, k).unwrap().value <= 0);

        let cyc = has_k2_ck_factor(&g, k + 1).unwrap();
        cyc.validate(&g).unwrap();
        prop_assert_eq!(cyc.exists, fractional_matching_number(&g).unwrap().is_perfect(g.n()));
        if let FactorOutcome::Refuted { witness, .. } = &cyc.outcome {
            prop_assert!(g.isolated_after_removal(*witness) > witness.len());
        }
    }

    #[test]
    fn split_graph_degrees(n in 3usize..40, s in 0usize..6, t in 1usize..10) {
        prop_assume!(s + t <= n);
        let spec = SplitGraphSpec::new(n, s, t).unwrap();
        let g = spec.realize();
        let a = n - s - t;
        for v in 0..n {
            let expected = if v < s { n - 1 } else if v < s + a { s + a - 1 } else { s };
            prop_assert_eq!(g.degree(v), expected);
        }
        prop_assert!(spec.is_realized_by(&g));
    }
}
