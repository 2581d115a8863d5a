use std::collections::BTreeSet;

use proptest::prelude::*;

use fillin::branch::{reduce_with, FillInInstance};
use fillin::chordal::{
    elimination_game, find_chordless_cycle, is_chordal, is_minimal_triangulation,
    is_perfect_elimination_ordering, maximal_cliques_chordal, mcs_order,
    minimal_separators_chordal, minimal_triangulation, EliminationOrdering,
};
use fillin::dp::{mfi_root, reconstruct, DpTable};
use fillin::graph::{EdgePair, Graph, VertexSet};
use fillin::io::{parse_graph, write_dimacs, write_edge_list};
use fillin::kernel::{fillin_kernel, kernelize, KernelStatus, SandwichInstance};
use fillin::oracle::{mfi_by_orderings, oracle_mfi};
use fillin::pmc::{is_minimal_separator, verify_pmc, PmcCatalog};
use fillin::solver::solve;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs: Vec<EdgePair> = Graph::empty(n).non_edges().collect();
            let edges = pairs
                .into_iter()
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e);
            Graph::empty(n).with_edges(edges)
        })
    })
}

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_map(|g| {
        // chain the components together
        let comps = g.components(&VertexSet::new());
        let links: Vec<EdgePair> = comps
            .windows(2)
            .map(|w| EdgePair::new(w[0].first().unwrap(), w[1].first().unwrap()))
            .collect();
        g.with_edges(links)
    })
}

fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (1u64..1 << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn vertex_set_matches_btreeset(a in proptest::collection::btree_set(0usize..200, 0..30),
                                   b in proptest::collection::btree_set(0usize..200, 0..30)) {
        let sa: VertexSet = a.iter().copied().collect();
        let sb: VertexSet = b.iter().copied().collect();
        prop_assert_eq!(sa.to_vec(), a.iter().copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.union(&sb).to_vec(), a.union(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.intersection(&sb).to_vec(), a.intersection(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.difference(&sb).to_vec(), a.difference(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
        prop_assert_eq!(sa.cmp(&sb), a.iter().cmp(b.iter()));
        prop_assert_eq!(sa.intersection_len(&sb), a.intersection(&b).count());
    }

    #[test]
    fn chordality_tests_agree(g in graph(9)) {
        let chordal = is_chordal(&g);
        prop_assert_eq!(chordal, find_chordless_cycle(&g).is_none());
        let mut peo = mcs_order(&g);
        peo.reverse();
        prop_assert_eq!(chordal, is_perfect_elimination_ordering(&g, &peo));
        if let Some(c) = find_chordless_cycle(&g) {
            prop_assert!(c.len() >= 4);
            let set: VertexSet = c.iter().copied().collect();
            prop_assert_eq!(set.len(), c.len());
            for (i, &v) in c.iter().enumerate() {
                let next = c[(i + 1) % c.len()];
                prop_assert!(g.has_edge(v, next));
                prop_assert_eq!(g.neighbors(v).intersection_len(&set), 2);
            }
        }
    }

    #[test]
    fn mcs_m_is_a_minimal_triangulation(g in graph(9)) {
        let t = minimal_triangulation(&g);
        prop_assert!(is_chordal(&t.result));
        prop_assert!(t.fill.iter().all(|e| !g.has_edge(e.u, e.v)));
        prop_assert!(is_minimal_triangulation(&t));
        if is_chordal(&g) {
            prop_assert!(t.fill.is_empty());
        }
    }

    #[test]
    fn elimination_game_is_chordal(g in graph(9), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..g.n()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let t = elimination_game(&g, &EliminationOrdering::new(order).unwrap());
        prop_assert!(is_chordal(&t.result));
    }

    #[test]
    fn chordal_cliques_and_separators(g in graph(8)) {
        let h = minimal_triangulation(&g).result;
        let cliques = maximal_cliques_chordal(&h).unwrap();
        for c in &cliques {
            prop_assert!(h.is_clique(c));
            prop_assert!(verify_pmc(&h, c).is_some());
        }
        let seps: BTreeSet<VertexSet> = minimal_separators_chordal(&h).unwrap().into_iter().collect();
        let brute: BTreeSet<VertexSet> = std::iter::once(VertexSet::new())
            .chain(all_subsets(h.n()))
            .filter(|s| is_minimal_separator(&h, s))
            .collect();
        prop_assert_eq!(seps, brute);
    }

    #[test]
    fn pmc_recovered_from_any_member(g in graph(7)) {
        for omega in all_subsets(g.n()).filter(|s| verify_pmc(&g, s).is_some()) {
            for y in omega.iter() {
                let mut rest = omega.clone();
                rest.remove(y);
                let comp = g.component_of(y, &rest);
                let mut back = g.neighborhood(&comp);
                back.insert(y);
                prop_assert_eq!(&back, &omega);
            }
        }
    }

    #[test]
    fn io_round_trip(g in graph(12)) {
        prop_assert_eq!(parse_graph(&write_edge_list(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_graph(&write_dimacs(&g)).unwrap(), g);
    }

    #[test]
    fn catalog_round_trip(g in graph(7)) {
        let mut cat = PmcCatalog::new(&g, 21);
        for s in all_subsets(g.n()) {
            if let Some(p) = verify_pmc(&g, &s) {
                cat.insert(p);
            }
        }
        let back = PmcCatalog::from_text(&g, 21, &cat.to_text()).unwrap();
        prop_assert_eq!(back.omegas().collect::<Vec<_>>(), cat.omegas().collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn two_oracles_agree(g in graph(7)) {
        prop_assert_eq!(oracle_mfi(&g).unwrap(), mfi_by_orderings(&g).unwrap());
    }

    #[test]
    fn dp_over_all_pmcs_is_exact(g in connected(7)) {
        let mfi = oracle_mfi(&g).unwrap();
        let k = g.n() * g.n();
        let mut cat = PmcCatalog::new(&g, k);
        for s in all_subsets(g.n()) {
            if let Some(p) = verify_pmc(&g, &s) {
                cat.insert(p);
            }
        }
        let mut table = DpTable::new(k);
        prop_assert_eq!(mfi_root(&g, &cat, &mut table).unwrap(), mfi);
        let sol = reconstruct(&g, &cat, &mut table).unwrap().unwrap();
        prop_assert_eq!(sol.size(), mfi);
    }

    #[test]
    fn solve_is_minimum(g in graph(8), k in 0usize..6) {
        let mfi = oracle_mfi(&g).unwrap();
        match solve(&g, k).unwrap() {
            Some(s) => {
                prop_assert_eq!(s.size(), mfi);
                prop_assert!(is_chordal(&g.with_edges(s.fill.iter().copied())));
            }
            None => prop_assert!(mfi > k),
        }
    }

    #[test]
    fn branch_children_spend_budget(g in connected(8), k in 0usize..5) {
        let root = FillInInstance::new(g.clone(), k);
        for leaf in reduce_with(&root, &|_| true, false).leaves {
            prop_assert_eq!(leaf.k + leaf.forced.len(), k);
            prop_assert_eq!(g.with_edges(leaf.forced.iter().copied()), leaf.graph.clone());
            prop_assert!(leaf.forced.iter().all(|e| !g.has_edge(e.u, e.v)));
        }
    }

    #[test]
    fn kernel_bookkeeping(g in graph(9), k in 0usize..4, keep in any::<u64>()) {
        let allowed: BTreeSet<EdgePair> = g
            .non_edges()
            .enumerate()
            .filter(|(i, _)| keep >> (i % 64) & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        let inst = SandwichInstance::new(g.clone(), allowed.clone(), k).unwrap();
        let r = kernelize(&inst);
        prop_assert!(r.forced_fill.is_subset(&allowed));
        if let Some(ki) = &r.instance {
            prop_assert_eq!(ki.k + r.forced_fill.len(), k);
            let forced = g.with_edges(r.forced_fill.iter().copied());
            let (sub, map) = forced.induced(&r.vertex_map.iter().copied().collect());
            prop_assert_eq!(&map, &r.vertex_map);
            prop_assert_eq!(&sub, &ki.graph);
            for e in &ki.allowed {
                prop_assert!(allowed.contains(&EdgePair::new(map[e.u], map[e.v])));
            }
        }
        if is_chordal(&g) {
            prop_assert_eq!(fillin_kernel(&g, k).status, KernelStatus::TrivialYes);
        }
    }
}

fn near_valid_input() -> impl Strategy<Value = String> {
    let line = prop_oneof![
        "[0-9]{1,2} [0-9]{1,2}",
        "e [0-9]{1,2} [0-9]{1,2}",
        "p edge [0-9]{1,2} [0-9]{1,2}",
        "c [0-9] [0-9]",
        "left( [0-9]){0,4}",
        Just("---".to_string()),
        Just("# note".to_string()),
        "-?[0-9]{1,20}( -?[0-9]{1,20}){0,3}",
        ".{0,12}",
    ];
    proptest::collection::vec(line, 0..12).prop_map(|ls| ls.join("\n"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn parsers_never_panic(text in prop_oneof![near_valid_input(), ".{0,300}"]) {
        if let Ok(input) = fillin::io::parse_input(&text) {
            let g = &input.graph;
            prop_assert_eq!(parse_graph(&write_edge_list(g)).unwrap(), g.clone());
            let _ = input.allowed_pairs();
            let _ = input.coloring();
            let _ = input.bipartite();
        }
        let c4 = Graph::cycle(4);
        if let Ok(cat) = PmcCatalog::from_text(&c4, 1, &text) {
            prop_assert!(cat.omegas().all(|o| verify_pmc(&c4, o).is_some()));
        }
    }
}
