use std::time::Instant;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sparsetri::bench::{lemma1_suite, Lemma1Settings};
use sparsetri::structural::{
    delta, delta_w, estimate_delta_size, is_k_good_exhaustive, is_k_good_sampled, sample_good_set,
};
use sparsetri::{Graph, QueryLedger};

fn arb_instance() -> impl Strategy<Value = (Graph, Vec<usize>, Vec<usize>, Vec<usize>)> {
    (4usize..=16).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let verts: Vec<usize> = (0..n).collect();
        (
            proptest::sample::subsequence(pairs.clone(), 0..=pairs.len()),
            proptest::sample::subsequence(verts.clone(), 0..=n),
            proptest::sample::subsequence(verts.clone(), 0..=n),
            proptest::sample::subsequence(verts, 0..=n),
        )
            .prop_map(move |(e, x, extra, y)| (Graph::from_edges(n, e).unwrap(), x, extra, y))
    })
}

proptest! {
    #[test]
    fn delta_shrinks_as_x_grows((g, x, extra, y) in arb_instance()) {
        let mut bigger = x.clone();
        bigger.extend(extra);
        let small = delta(&g, &x, &y);
        let large = delta(&g, &bigger, &y);
        for &(u, v) in &large.pairs {
            prop_assert!(small.contains(u, v));
        }
    }

    #[test]
    fn delta_w_is_inside_delta((g, x, _e, y) in arb_instance(), w in 0usize..16) {
        let w = w % g.n();
        let d = delta(&g, &x, &y);
        for (u, v) in delta_w(&g, &x, &y, w) {
            prop_assert!(d.contains(u, v));
            prop_assert!(g.has_edge(u, w) && g.has_edge(v, w));
        }
    }

    #[test]
    fn weighted_delta_two_ways((g, x, v1, y) in arb_instance()) {
        let by_w: usize = v1.iter().map(|&w| delta_w(&g, &x, &y, w).len()).sum();
        let by_pair: usize = delta(&g, &x, &y)
            .pairs
            .iter()
            .map(|&(u, v)| v1.iter().filter(|&&w| g.has_edge(u, w) && g.has_edge(v, w)).count())
            .sum();
        prop_assert_eq!(by_w, by_pair);
    }

    #[test]
    fn estimate_is_within_a_tenth((g, x, _e, y) in arb_instance(), w in 0usize..16, seed: u64) {
        let w = w % g.n();
        let exact = delta_w(&g, &x, &y, w).len() as f64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = estimate_delta_size(&g, &x, &y, w, 0.5, &mut QueryLedger::new(), &mut rng);
        prop_assert!((e.result as f64 - exact).abs() <= exact / 10.0);
    }

    #[test]
    fn sampled_violation_implies_exhaustive_violation((g, x, _e, _y) in arb_instance(), k in 0.0f64..1.0, seed: u64) {
        let v1: Vec<usize> = (0..g.n()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sampled = is_k_good_sampled(&g, &v1, &x, k, 50, &mut rng);
        let exact = is_k_good_exhaustive(&g, &v1, &x, k).unwrap();
        prop_assert!(sampled.holds || !exact);
    }
}

#[test]
fn full_vertex_set_is_always_good() {
    let g = Graph::complete(12);
    let all: Vec<usize> = (0..12).collect();
    assert!(is_k_good_exhaustive(&g, &all, &all, 1.0).unwrap());
    assert!(!is_k_good_exhaustive(&g, &all, &[], 0.9).unwrap());
}

#[test]
fn exhaustive_check_refuses_large_graphs() {
    let g = Graph::empty(21);
    assert!(is_k_good_exhaustive(&g, &[0], &[], 0.5).is_err());
}

#[test]
fn sample_size_follows_the_formula() {
    let g = Graph::complete(64);
    let v1: Vec<usize> = (0..32).collect();
    let s = sample_good_set(&g, &v1, 0.5, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    // ceil(3 * 32^0.5 * log2 64)
    assert_eq!(s.size(), (3.0 * 32f64.sqrt() * 6.0).ceil() as usize);
    assert!(s.draws.iter().all(|v| *v < 32));
}

#[test]
fn exhaustive_check_at_n_eight_is_fast() {
    let start = Instant::now();
    let s = Lemma1Settings {
        n: 8,
        trials: 200,
        seed: 2,
        ..Default::default()
    };
    let out = lemma1_suite(&s).unwrap();
    assert!(out.passed, "{out}");
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn empty_sampler_fails_the_rate_check() {
    let s = Lemma1Settings {
        n: 14,
        trials: 40,
        seed: 3,
        scale: 0.0,
        ks: vec![0.5],
        min_density: 0.8,
    };
    let out = lemma1_suite(&s).unwrap();
    assert!(!out.passed, "{out}");
}
