use proptest::prelude::*;
use sparsetri::graph::{target_edges, CountedOracle};
use sparsetri::{brute_force_triangle, gen_gnm, DegreeProfile, Graph, GraphGenSpec, QueryLedger};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
            .prop_map(move |e| Graph::from_edges(n, e).unwrap())
    })
}

/// Plain triple loop over an adjacency matrix.
fn triple_loop(g: &Graph) -> bool {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    (0..n).any(|a| (a + 1..n).any(|b| adj[a][b] && (b + 1..n).any(|c| adj[a][c] && adj[b][c])))
}

proptest! {
    #[test]
    fn degrees_sum_to_twice_m(g in arb_graph(24)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
    }

    #[test]
    fn edge_queries_are_symmetric_and_cost_one(g in arb_graph(16), u in 0usize..16, v in 0usize..16) {
        let (u, v) = (u % g.n(), v % g.n());
        prop_assume!(u != v);
        let mut ledger = QueryLedger::new();
        let mut oracle = CountedOracle::new(&g, &mut ledger);
        let a = oracle.edge_query(u, v).unwrap();
        let b = oracle.edge_query(v, u).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(a, g.has_edge(u, v));
        prop_assert_eq!(ledger.total(), 2.0);
    }

    #[test]
    fn brute_force_matches_triple_loop(g in arb_graph(14)) {
        let all: Vec<usize> = (0..g.n()).collect();
        let found = brute_force_triangle(&g, &all, &all);
        prop_assert_eq!(found.is_some(), triple_loop(&g));
        if let Some(t) = found {
            prop_assert!(t.is_in(&g));
        }
    }

    #[test]
    fn planted_triangle_is_always_found(n in 8usize..200, ell in 1.0f64..1.6, seed: u64, skew in 0.0f64..1.2) {
        let m = target_edges(n, ell).max(3);
        let spec = GraphGenSpec::uniform(n, m, seed)
            .with_planted([0, n / 2, n - 1])
            .with_profile(DegreeProfile::Skewed(skew));
        let g = gen_gnm(&spec).unwrap();
        prop_assert_eq!(g.m(), m);
        prop_assert!(g.has_edge(0, n / 2) && g.has_edge(0, n - 1) && g.has_edge(n / 2, n - 1));
        let all: Vec<usize> = (0..n).collect();
        prop_assert!(brute_force_triangle(&g, &all, &all).is_some());
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(20)) {
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let h = Graph::read_edge_list(buf.as_slice()).unwrap();
        prop_assert_eq!(h.n(), g.n());
        prop_assert_eq!(h.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }
}

#[test]
fn generation_is_deterministic() {
    let spec = GraphGenSpec::uniform(300, 2000, 11);
    let a = gen_gnm(&spec).unwrap();
    let b = gen_gnm(&spec).unwrap();
    assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
}

#[test]
fn too_many_edges_is_rejected() {
    assert!(gen_gnm(&GraphGenSpec::uniform(5, 11, 0)).is_err());
}
