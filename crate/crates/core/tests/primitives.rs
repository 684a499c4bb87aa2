use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sparsetri::qcost::{self, PredicateSpec, WalkSpec};
use sparsetri::QueryLedger;

/// Smallest integer `c` with `c^2 * den >= num`, in integer arithmetic.
fn ceil_sqrt(num: u64, den: u64) -> f64 {
    let (num, den) = (num as u128, den as u128);
    let mut c = 0u128;
    while c * c * den < num {
        c += 1;
    }
    c as f64
}

fn marks(n: usize, bits: &[bool]) -> Vec<bool> {
    (0..n).map(|i| bits[i % bits.len()]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn grover_and_enumeration(n in 1usize..=512, bits in prop::collection::vec(prop::bool::weighted(0.1), 1..64), t in 1u32..5, seed: u64) {
        let mk = marks(n, &bits);
        let sols: Vec<usize> = (0..n).filter(|&i| mk[i]).collect();
        let m = sols.len().max(1) as u64;
        let t = t as f64;
        let eval = |i: usize| mk[i];
        let p = PredicateSpec::new(n, t, &eval);
        let mut ledger = QueryLedger::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = qcost::grover_find(&p, &mut ledger, &mut rng).unwrap();
        prop_assert_eq!(g.charged, ceil_sqrt(n as u64, m) * t);
        prop_assert_eq!(g.result.is_some(), !sols.is_empty());
        if let Some(i) = g.result { prop_assert!(mk[i]); }
        let e = qcost::quantum_enumerate(&p, &mut ledger).unwrap();
        prop_assert_eq!(e.charged, ceil_sqrt(n as u64 * m, 1) * t);
        prop_assert_eq!(&e.result, &sols);
        let d = qcost::grover_detect(n as f64, t, Some(()), &mut ledger);
        prop_assert_eq!(d.charged, ceil_sqrt(n as u64, 1) * t);
    }

    #[test]
    fn counting_stays_in_band(n in 1usize..=512, frac in 0.0f64..1.0, delta in 1u32..20, seed: u64) {
        let m = (n as f64 * frac) as usize;
        let mut ledger = QueryLedger::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = qcost::quantum_count(n, m, delta as f64, &mut ledger, &mut rng).unwrap();
        let dl = delta as f64;
        prop_assert_eq!(c.charged, ceil_sqrt(n as u64 * (m as u64).max(delta as u64), (delta * delta) as u64));
        prop_assert!((c.result - m as f64).abs() <= dl);
    }

    #[test]
    fn grover_is_monotone(n in 2usize..=512, m1 in 1usize..512, m2 in 1usize..512) {
        let (lo, hi) = (m1.min(m2).min(n), m1.max(m2).min(n));
        let g = |m: usize| sparsetri::qcost::formulas::grover(n as f64, m as f64, 1.0);
        let e = |m: usize| sparsetri::qcost::formulas::enumerate(n as f64, m as f64, 1.0);
        prop_assert!(g(hi) <= g(lo));
        prop_assert!(e(hi) >= e(lo));
    }

    #[test]
    fn amplification_and_variable_cost(inv in 1u32..1000, c in 0.5f64..10.0, costs in prop::collection::vec(0.0f64..50.0, 1..30), seed: u64) {
        let mut ledger = QueryLedger::new();
        let a = qcost::amp_amplify(1.0 / inv as f64, c, || 7, &mut ledger).unwrap();
        prop_assert!((a.charged - ceil_sqrt(inv as u64, 1) * c).abs() <= 1e-9 * a.charged.max(1.0));
        prop_assert_eq!(a.result, 7);
        let picks: Vec<usize> = (0..costs.len()).step_by(3).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = qcost::variable_cost_search(&costs, &picks, &mut ledger, &mut rng).unwrap();
        let expect = costs.iter().map(|q| q * q).sum::<f64>().sqrt();
        prop_assert!((v.charged - expect).abs() <= 1e-9 * expect.max(1.0));
        prop_assert!(picks.contains(&v.result.unwrap()));
        prop_assert!((ledger.total() - a.charged - v.charged).abs() <= 1e-9 * ledger.total().max(1.0));
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == r)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn walk_finds_a_subset_iff_one_is_marked(
        size in 1usize..=12,
        r_frac in 0.0f64..1.0,
        good in prop::collection::vec(0usize..12, 0..3),
        eps_inv in 1u32..100,
        s in 0.0f64..100.0, u in 0.0f64..10.0, c in 0.0f64..10.0,
    ) {
        let ground: Vec<usize> = (0..size).collect();
        let r = 1 + ((size - 1) as f64 * r_frac) as usize;
        // Marked: contains every vertex of `good` that lies in the ground set,
        // and at least one of them.
        let need: Vec<usize> = good.iter().copied().filter(|&g| g < size).collect();
        let marked = |b: &[usize]| !need.is_empty() && need.iter().all(|g| b.contains(g));
        let all = subsets(size, r);
        let witness = || all.iter().find(|b| marked(b)).cloned();
        let eps = 1.0 / eps_inv as f64;
        let spec = WalkSpec { ground_set: &ground, subset_size: r, setup: s, update: u, check: c, epsilon: eps, marked: &marked, witness_finder: &witness };
        let mut ledger = QueryLedger::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = qcost::run_johnson_walk(&spec, &mut ledger, &mut rng, 0).unwrap();
        let exists = all.iter().any(|b| marked(b));
        prop_assert_eq!(out.result.marked_subset.is_some(), exists);
        let expect = s + ((r as f64).sqrt() * u + c) / eps.sqrt();
        prop_assert!((out.charged - expect).abs() <= 1e-9 * expect.max(1.0));
    }
}

#[test]
fn invalid_walks_are_rejected() {
    let ground = [0usize, 1, 2];
    let marked = |_: &[usize]| false;
    let witness = || None;
    let mut spec = WalkSpec {
        ground_set: &ground,
        subset_size: 4,
        setup: 0.0,
        update: 0.0,
        check: 0.0,
        epsilon: 0.5,
        marked: &marked,
        witness_finder: &witness,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert!(qcost::run_johnson_walk(&spec, &mut QueryLedger::new(), &mut rng, 0).is_err());
    spec.subset_size = 2;
    spec.epsilon = 0.0;
    assert!(qcost::run_johnson_walk(&spec, &mut QueryLedger::new(), &mut rng, 0).is_err());
}
