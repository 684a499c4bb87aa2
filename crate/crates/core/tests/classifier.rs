use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sparsetri::classify::classify_charge;
use sparsetri::graph::target_edges;
use sparsetri::{classify, gen_gnm, DegreeProfile, GraphGenSpec, QueryLedger};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn partition_invariants(n in 8usize..=4096, ell in 1.0f64..1.8, skew in prop::option::of(0.2f64..1.2), d in 0.0f64..=1.0, seed: u64) {
        let mut spec = GraphGenSpec::uniform(n, target_edges(n, ell), seed);
        if let Some(e) = skew {
            spec = spec.with_profile(DegreeProfile::Skewed(e));
        }
        let g = gen_gnm(&spec).unwrap();
        let mut ledger = QueryLedger::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = classify(&g, d, &mut ledger, &mut rng);
        prop_assert!(p.satisfies_invariants(&g));
        let nd = (n as f64).powf(d);
        for &v in &p.high {
            prop_assert!(g.degree(v) as f64 >= 0.9 * nd - 1e-9);
        }
        for &v in &p.low {
            prop_assert!(g.degree(v) as f64 <= 1.1 * nd + 1e-9);
        }
        prop_assert_eq!(p.charge, classify_charge(n, d, p.high.len()));
        prop_assert_eq!(ledger.total(), p.charge);
        let again = classify(&g, d, &mut QueryLedger::new(), &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(again, p);
    }
}

#[test]
fn charge_formula() {
    // ceil(sqrt(256 / 16)) = 4 per vertex, ceil(sqrt(256 * 10)) = 51 rounds.
    assert_eq!(classify_charge(256, 0.5, 10), 51.0 * 4.0);
}
