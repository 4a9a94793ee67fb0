use std::collections::BTreeMap;

use exact3::connectivity::all_pairs_connectivity;
use exact3::graph::families;
use exact3::io::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
use exact3::*;
use proptest::prelude::*;

/// Builds a graph from the dumbbell by applying expansions picked by `picks`
/// and gluing on a dumbbell whenever a pick asks for it.
fn grow(picks: &[(u8, u8, u16)]) -> Multigraph {
    let mut g = families::dumbbell();
    for &(v, size, perm) in picks {
        let vs: Vec<Vertex> = g.vertices().collect();
        let u = vs[v as usize % vs.len()];
        if size % 5 == 0 {
            g = block_glue(&g, u, &families::dumbbell(), Vertex(0)).unwrap();
            continue;
        }
        let dec = blocks(&g).unwrap();
        let home = &dec.blocks[dec.blocks_of(u)[0]];
        let mut darts: Vec<Vertex> = g.darts(u).into_iter().filter(|w| home.contains(w)).collect();
        let d = darts.len();
        let mut p = perm as usize;
        for i in (1..d).rev() {
            darts.swap(i, p % (i + 1));
            p /= i + 1;
        }
        let size = 2 + size as usize % (d - 1);
        let spec = CycleExpansionSpec::new(u, size, darts);
        g = exact3::ops::block_respecting_cycle_expand(&g, &spec, &[]).unwrap().graph;
    }
    g
}

fn random_multigraph() -> impl Strategy<Value = Multigraph> {
    (2usize..=7).prop_flat_map(|n| {
        prop::collection::vec(0u32..=3, n * (n - 1) / 2).prop_map(move |rs| {
            let mut g = Multigraph::with_order(n);
            let mut it = rs.into_iter();
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    let r = it.next().unwrap();
                    if r > 0 {
                        g.add_edge(Vertex(a), Vertex(b), r).unwrap();
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn synthesized_graphs_are_exact_and_roundtrip(picks in prop::collection::vec((any::<u8>(), any::<u8>(), any::<u16>()), 0..7)) {
        let g = grow(&picks);
        prop_assert!(is_exactly_k(&g, 3).unwrap().exact);
        let script = decompose(&g).unwrap();
        let back = replay(&script).unwrap();
        prop_assert!(is_isomorphic(&back, &g));
        prop_assert!(script.check_counting(&back).is_ok());
        let text = script.to_string();
        prop_assert_eq!(SynthesisScript::parse(&text).unwrap(), script);
    }

    #[test]
    fn canonical_code_ignores_labels(g in random_multigraph(), seed in any::<u64>()) {
        let mut ids: Vec<u32> = (0..g.order() as u32).collect();
        let mut s = seed;
        for i in (1..ids.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ids.swap(i, (s >> 33) as usize % (i + 1));
        }
        let map: BTreeMap<Vertex, Vertex> = g.vertices().zip(ids.into_iter().map(|i| Vertex(i + 10))).collect();
        prop_assert_eq!(canonical_code(&g), canonical_code(&g.relabel(&map)));
    }

    #[test]
    fn edge_list_roundtrip(g in random_multigraph()) {
        let back = parse_edge_list(&write_edge_list(&g)).unwrap();
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn graph6_roundtrip(g in random_multigraph()) {
        let mut simple = Multigraph::with_order(g.order());
        for (a, b, _) in g.edges() {
            simple.add_edge(a, b, 1).unwrap();
        }
        let back = parse_graph6(&write_graph6(&simple).unwrap()).unwrap();
        prop_assert!(is_isomorphic(&back, &simple));
    }

    #[test]
    fn parallel_flows_match_sequential(g in random_multigraph()) {
        prop_assert_eq!(
            all_pairs_connectivity(&g, Exec::Parallel),
            all_pairs_connectivity(&g, Exec::Sequential)
        );
    }

    #[test]
    fn exactness_matches_pairwise_flows(g in random_multigraph()) {
        let pairs = all_pairs_connectivity(&g, Exec::Sequential);
        let k = pairs.iter().map(|p| p.2).min().unwrap();
        let all_equal = pairs.iter().all(|p| p.2 == k);
        if k > 0 {
            prop_assert_eq!(is_exactly_k(&g, k).unwrap().exact, all_equal);
        }
    }
}
