//! Top-level dispatch: classify, then run the procedures of the combination
//! chosen for the graph's sparsity.

use std::collections::BTreeMap;

use rand::Rng;

use crate::classify::{classify, DegreePartition};
use crate::error::{Error, Result};
use crate::graph::{Graph, QueryLedger, Triangle};
use crate::pipeline::engine::Diagnostics;
use crate::pipeline::procedures::{
    buhrman_find, find_anyhigh, find_hhh, find_hhl, find_llh, find_lll, find_lll_singlewalk,
    ProcOutcome,
};
use crate::plan::{regime_plan, Combination, ParameterPlan, Prop, WalkTriple};

/// Label under which the edge-sampling baseline is charged.
pub const BUHRMAN_LABEL: &str = "buhrman";

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub triangle: Option<Triangle>,
    /// Charge per procedure label (`Q1`..`Q7` or `buhrman`).
    pub charges: BTreeMap<String, f64>,
    pub total: f64,
    pub plan: ParameterPlan<f64>,
    pub combination: Combination,
    pub ell: f64,
    pub high: usize,
    pub low: usize,
    pub diagnostics: Diagnostics,
}

impl RunReport {
    pub fn charge(&self, label: &str) -> f64 {
        self.charges.get(label).copied().unwrap_or(0.0)
    }

    /// The apex-search charge: `Q7`, or the baseline when it ran instead.
    pub fn apex_charge(&self) -> f64 {
        self.charge(Prop::Q7.label()) + self.charge(BUHRMAN_LABEL)
    }
}

/// `ln m / ln n`, or 0 when either is at most 1.
pub fn sparsity_exponent(n: usize, m: usize) -> f64 {
    if n <= 1 || m <= 1 {
        return 0.0;
    }
    (m as f64).ln() / (n as f64).ln()
}

/// Runs the procedure combination that the complexity curve prescribes for
/// the graph's `ell = log m / log n`.
pub fn find_triangle(g: &Graph, ledger: &mut QueryLedger, rng: &mut impl Rng) -> Result<RunReport> {
    let ell = sparsity_exponent(g.n(), g.m());
    let (c, plan) = regime_plan::<f64>(&ell)?;
    find_triangle_with_plan(g, c, &plan, ledger, rng)
}

fn need<'a, T>(x: &'a Option<T>, what: &str) -> Result<&'a T> {
    x.as_ref()
        .ok_or_else(|| Error::ParameterViolation(format!("plan has no {what}")))
}

/// Runs `combination` with explicit parameters.
pub fn find_triangle_with_plan(
    g: &Graph,
    combination: Combination,
    plan: &ParameterPlan<f64>,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> Result<RunReport> {
    if g.n() == 0 {
        return Err(Error::Precondition("empty graph".into()));
    }
    plan.validate()?;
    let ell = sparsity_exponent(g.n(), g.m());
    let mut charges = BTreeMap::new();
    let mut diagnostics = Diagnostics::default();
    let mut triangle = None;
    let mut record =
        |label: &str, sub: &QueryLedger, out: ProcOutcome, triangle: &mut Option<Triangle>| {
            ledger.absorb_as(label, sub);
            *charges.entry(label.to_string()).or_insert(0.0) += sub.total();
            diagnostics.merge(out.diagnostics);
            if triangle.is_none() {
                *triangle = out.triangle;
            }
        };

    let (high, low) = if combination == Combination::Buhrman {
        let mut sub = QueryLedger::new();
        let out = buhrman_find(g, &mut sub)?;
        record(BUHRMAN_LABEL, &sub, out, &mut triangle);
        (g.n(), 0)
    } else {
        let mut sub = QueryLedger::new();
        let part: DegreePartition = classify(g, plan.d, &mut sub, rng);
        record(
            Prop::Q1.label(),
            &sub,
            ProcOutcome::default(),
            &mut triangle,
        );
        for &p in combination.props() {
            let mut sub = QueryLedger::new();
            let out = match p {
                Prop::Q1 => continue,
                Prop::Q2 => find_lll(
                    g,
                    &part,
                    need::<WalkTriple<f64>>(&plan.lll, "a1, b1, k1")?,
                    &mut sub,
                    rng,
                )?,
                Prop::Q3 => find_llh(g, &part, need(&plan.llh, "a2, b2, k2")?, &mut sub, rng)?,
                Prop::Q4 => find_hhl(g, &part, need(&plan.hhl, "a3, b3, k3")?, &mut sub, rng)?,
                Prop::Q5 => find_hhh(g, &part, &mut sub, rng)?,
                Prop::Q6 => find_lll_singlewalk(g, &part, *need(&plan.b4, "b4")?, &mut sub, rng)?,
                Prop::Q7 => find_anyhigh(g, &part, &mut sub)?,
            };
            record(p.label(), &sub, out, &mut triangle);
        }
        (part.high.len(), part.low.len())
    };
    let total = charges.values().sum();
    Ok(RunReport {
        triangle,
        charges,
        total,
        plan: plan.clone(),
        combination,
        ell,
        high,
        low,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{brute_force_triangle, gen_gnm, GraphGenSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cycle_runs_the_baseline() {
        let g = Graph::cycle(50);
        let mut l = QueryLedger::new();
        let r = find_triangle(&g, &mut l, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(r.combination, Combination::Buhrman);
        assert!((r.total - 100.0).abs() < 1e-9);
        assert!((l.total() - r.total).abs() < 1e-9);
        assert!(r.triangle.is_none());
    }

    #[test]
    fn every_regime_matches_brute_force() {
        for (i, ell) in [1.0, 1.3, 1.45, 1.55, 1.8].into_iter().enumerate() {
            for seed in 0..6u64 {
                let n = 80;
                let m = crate::graph::target_edges(n, ell);
                let mut spec = GraphGenSpec::uniform(n, m, seed * 31 + i as u64);
                if seed % 2 == 0 {
                    spec = spec.with_planted([3, 17, 40]);
                }
                let g = gen_gnm(&spec).unwrap();
                let mut l = QueryLedger::new();
                let r = find_triangle(&g, &mut l, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
                let all: Vec<usize> = (0..n).collect();
                assert_eq!(
                    r.triangle.is_some(),
                    brute_force_triangle(&g, &all, &all).is_some()
                );
                if let Some(t) = r.triangle {
                    assert!(t.is_in(&g));
                }
                assert!((r.total - r.charges.values().sum::<f64>()).abs() < 1e-9);
                assert!((l.total() - r.total).abs() <= 1e-9 * r.total.max(1.0));
            }
        }
    }
}
