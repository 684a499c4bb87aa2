//! Emulated quantum primitives. Each one computes its answer exactly with
//! classical means and charges the idealized quantum cost to a ledger.

pub mod formulas;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::QueryLedger;

/// Search predicate over `0..domain_size`.
pub struct PredicateSpec<'a> {
    pub domain_size: usize,
    /// Queries charged per evaluation.
    pub eval_cost: f64,
    pub evaluator: &'a dyn Fn(usize) -> bool,
}

impl<'a> PredicateSpec<'a> {
    pub fn new(domain_size: usize, eval_cost: f64, evaluator: &'a dyn Fn(usize) -> bool) -> Self {
        PredicateSpec {
            domain_size,
            eval_cost,
            evaluator,
        }
    }

    fn solutions(&self, ledger: &mut QueryLedger) -> Result<Vec<usize>> {
        if self.domain_size == 0 {
            return Err(Error::Precondition("empty search domain".into()));
        }
        if !(self.eval_cost >= 0.0) {
            return Err(Error::Precondition(format!(
                "evaluation cost {}",
                self.eval_cost
            )));
        }
        ledger.probe(self.domain_size as u64);
        Ok((0..self.domain_size)
            .filter(|&i| (self.evaluator)(i))
            .collect())
    }
}

/// Result of a primitive together with what it cost.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeReceipt<R> {
    pub result: R,
    pub charged: f64,
    pub label: &'static str,
}

fn charge<R>(
    ledger: &mut QueryLedger,
    label: &'static str,
    charged: f64,
    result: R,
) -> ChargeReceipt<R> {
    ledger.charge(label, charged);
    ChargeReceipt {
        result,
        charged,
        label,
    }
}

/// Grover search: a uniformly random solution, or `None`.
pub fn grover_find(
    p: &PredicateSpec<'_>,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> Result<ChargeReceipt<Option<usize>>> {
    let sols = p.solutions(ledger)?;
    let cost = formulas::grover(p.domain_size as f64, sols.len() as f64, p.eval_cost);
    let pick = (!sols.is_empty()).then(|| sols[rng.gen_range(0..sols.len())]);
    Ok(charge(ledger, "grover", cost, pick))
}

/// Detection over a domain too large to enumerate; the caller supplies the
/// classically computed answer. Charges the worst case `ceil(sqrt(n)) * t`.
pub fn grover_detect<R>(
    domain_size: f64,
    eval_cost: f64,
    answer: Option<R>,
    ledger: &mut QueryLedger,
) -> ChargeReceipt<Option<R>> {
    let cost = formulas::grover_detect(domain_size, eval_cost);
    charge(ledger, "grover", cost, answer)
}

/// Quantum enumeration: every solution, in increasing order.
pub fn quantum_enumerate(
    p: &PredicateSpec<'_>,
    ledger: &mut QueryLedger,
) -> Result<ChargeReceipt<Vec<usize>>> {
    let sols = p.solutions(ledger)?;
    let cost = formulas::enumerate(p.domain_size as f64, sols.len() as f64, p.eval_cost);
    Ok(charge(ledger, "enumerate", cost, sols))
}

/// Quantum counting: `true_count` plus uniform noise in `[-delta, delta]`.
pub fn quantum_count(
    domain_size: usize,
    true_count: usize,
    delta: f64,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> Result<ChargeReceipt<f64>> {
    if !(delta > 0.0) {
        return Err(Error::Precondition(format!("additive error {delta}")));
    }
    let m = true_count as f64;
    let estimate = m + rng.gen_range(-delta..=delta);
    let cost = formulas::count(domain_size as f64, m, delta);
    Ok(charge(ledger, "count", cost, estimate))
}

/// Amplitude amplification: runs the attempt once (it is exact) and charges
/// `ceil(1/sqrt(p)) * c`.
pub fn amp_amplify<R>(
    success_prob: f64,
    attempt_cost: f64,
    attempt: impl FnOnce() -> R,
    ledger: &mut QueryLedger,
) -> Result<ChargeReceipt<R>> {
    if !(success_prob > 0.0 && success_prob <= 1.0) {
        return Err(Error::Precondition(format!(
            "success probability {success_prob}"
        )));
    }
    let cost = formulas::amplify(success_prob, attempt_cost);
    Ok(charge(ledger, "amplify", cost, attempt()))
}

/// Amplitude amplification with an explicit repetition count `reps`
/// (typically `sqrt(1/p)` left unrounded), charging `reps * c`.
pub fn amp_amplify_repetitions<R>(
    reps: f64,
    attempt_cost: f64,
    attempt: impl FnOnce() -> R,
    ledger: &mut QueryLedger,
) -> ChargeReceipt<R> {
    charge(ledger, "amplify", reps * attempt_cost, attempt())
}

/// Johnson-graph walk over `subset_size`-subsets of `ground_set`.
pub struct WalkSpec<'a> {
    pub ground_set: &'a [usize],
    pub subset_size: usize,
    pub setup: f64,
    pub update: f64,
    pub check: f64,
    /// Analytic lower bound on the marked fraction; used for charging.
    pub epsilon: f64,
    pub marked: &'a dyn Fn(&[usize]) -> bool,
    pub witness_finder: &'a dyn Fn() -> Option<Vec<usize>>,
}

impl WalkSpec<'_> {
    pub fn charge(&self) -> f64 {
        formulas::walk(
            self.setup,
            self.update,
            self.check,
            self.subset_size as f64,
            self.epsilon,
        )
    }

    fn validate(&self) -> Result<()> {
        if self.subset_size > self.ground_set.len() {
            return Err(Error::InvalidWalk(format!(
                "subset size {} exceeds ground set {}",
                self.subset_size,
                self.ground_set.len()
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::InvalidWalk(format!("epsilon {}", self.epsilon)));
        }
        for (name, v) in [
            ("setup", self.setup),
            ("update", self.update),
            ("check", self.check),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidWalk(format!("{name} cost {v}")));
            }
        }
        Ok(())
    }
}

/// Raised when sampling finds fewer marked states than the charged bound allows.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonViolation {
    pub empirical: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkOutcome {
    pub marked_subset: Option<Vec<usize>>,
    pub violation: Option<EpsilonViolation>,
}

/// Runs the walk. With `validation_samples > 0` and a marked subset present,
/// estimates the marked fraction from uniform subsets and reports an
/// [`EpsilonViolation`] when it falls below `epsilon / 64`.
pub fn run_johnson_walk(
    spec: &WalkSpec<'_>,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
    validation_samples: usize,
) -> Result<ChargeReceipt<WalkOutcome>> {
    spec.validate()?;
    let found = (spec.witness_finder)();
    if let Some(s) = &found {
        debug_assert!(
            (spec.marked)(s),
            "witness finder returned an unmarked subset"
        );
    }
    let mut violation = None;
    if found.is_some() && validation_samples > 0 {
        let frac = marked_fraction(spec, validation_samples, rng);
        if frac < spec.epsilon / 64.0 {
            violation = Some(EpsilonViolation {
                empirical: frac,
                epsilon: spec.epsilon,
            });
        }
    }
    let cost = spec.charge();
    Ok(charge(
        ledger,
        "walk",
        cost,
        WalkOutcome {
            marked_subset: found,
            violation,
        },
    ))
}

/// Fraction of `samples` uniform subsets that are marked.
pub fn marked_fraction(spec: &WalkSpec<'_>, samples: usize, rng: &mut impl Rng) -> f64 {
    let t = spec.ground_set;
    let mut buf = Vec::with_capacity(spec.subset_size);
    let hits = (0..samples)
        .filter(|_| {
            buf.clear();
            buf.extend(
                sample(rng, t.len(), spec.subset_size)
                    .into_iter()
                    .map(|i| t[i]),
            );
            (spec.marked)(&buf)
        })
        .count();
    hits as f64 / samples.max(1) as f64
}

/// Variable-cost search over items with check costs `costs`.
pub fn variable_cost_search(
    costs: &[f64],
    solutions: &[usize],
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> Result<ChargeReceipt<Option<usize>>> {
    if let Some(q) = costs.iter().find(|q| !(**q >= 0.0)) {
        return Err(Error::Precondition(format!("negative check cost {q}")));
    }
    if let Some(s) = solutions.iter().find(|&&s| s >= costs.len()) {
        return Err(Error::Precondition(format!(
            "solution index {s} out of range"
        )));
    }
    let cost = formulas::variable_cost(costs.iter().copied());
    let pick = (!solutions.is_empty()).then(|| solutions[rng.gen_range(0..solutions.len())]);
    Ok(charge(ledger, "variable_cost", cost, pick))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn grover_examples() {
        let mut l = QueryLedger::new();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = |i: usize| i.is_multiple_of(25);
        let r = grover_find(&PredicateSpec::new(100, 1.0, &f), &mut l, &mut rng).unwrap();
        assert_eq!(r.charged, 5.0);
        assert!(f(r.result.unwrap()));
        let none = |_: usize| false;
        let r = grover_find(&PredicateSpec::new(100, 1.0, &none), &mut l, &mut rng).unwrap();
        assert_eq!((r.result, r.charged), (None, 10.0));
        let one = |_: usize| true;
        let r = grover_find(&PredicateSpec::new(1, 3.0, &one), &mut l, &mut rng).unwrap();
        assert_eq!((r.result, r.charged), (Some(0), 3.0));
        assert_eq!(l.total(), 18.0);
        assert!(grover_find(&PredicateSpec::new(0, 1.0, &one), &mut l, &mut rng).is_err());
    }

    #[test]
    fn walk_examples() {
        let mut l = QueryLedger::new();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t: Vec<usize> = (0..20).collect();
        let marked = |s: &[usize]| s.contains(&3);
        let finder = || Some((0..16).collect::<Vec<_>>());
        let spec = WalkSpec {
            ground_set: &t,
            subset_size: 16,
            setup: 10.0,
            update: 2.0,
            check: 5.0,
            epsilon: 0.25,
            marked: &marked,
            witness_finder: &finder,
        };
        let r = run_johnson_walk(&spec, &mut l, &mut rng, 200).unwrap();
        assert_eq!(r.charged, 36.0);
        assert!(r.result.marked_subset.is_some());
        assert!(r.result.violation.is_none());
        let nothing = || None;
        let spec2 = WalkSpec {
            witness_finder: &nothing,
            ..spec
        };
        let r = run_johnson_walk(&spec2, &mut l, &mut rng, 0).unwrap();
        assert_eq!((r.result.marked_subset, r.charged), (None, 36.0));
    }

    #[test]
    fn walk_reports_epsilon_violation() {
        let mut l = QueryLedger::new();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t: Vec<usize> = (0..12).collect();
        let only = vec![0, 1, 2];
        let marked = |s: &[usize]| {
            let mut v = s.to_vec();
            v.sort_unstable();
            v == [0, 1, 2]
        };
        let finder = || Some(only.clone());
        let spec = WalkSpec {
            ground_set: &t,
            subset_size: 3,
            setup: 0.0,
            update: 0.0,
            check: 0.0,
            epsilon: 1.0,
            marked: &marked,
            witness_finder: &finder,
        };
        let r = run_johnson_walk(&spec, &mut l, &mut rng, 500).unwrap();
        assert!(r.result.violation.is_some());
        let bad = WalkSpec {
            epsilon: 0.0,
            ..spec
        };
        assert!(run_johnson_walk(&bad, &mut l, &mut rng, 0).is_err());
    }

    #[test]
    fn counting_and_amplification() {
        let mut l = QueryLedger::new();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let r = quantum_count(1024, 32, 4.0, &mut l, &mut rng).unwrap();
        assert_eq!(r.charged, 46.0);
        assert!((28.0..=36.0).contains(&r.result));
        assert!(quantum_count(10, 1, 0.0, &mut l, &mut rng).is_err());
        let r = quantum_count(8, 3, 100.0, &mut l, &mut rng).unwrap();
        assert!(r.charged <= 1.0);
        let r = amp_amplify(0.01, 2.0, || 5, &mut l).unwrap();
        assert_eq!((r.result, r.charged), (5, 20.0));
        assert!(amp_amplify(0.0, 2.0, || (), &mut l).is_err());
        let r = amp_amplify_repetitions(3f64.sqrt(), 3f64.sqrt(), || (), &mut l);
        assert!((r.charged - 3.0).abs() < 1e-12);
    }

    #[test]
    fn variable_cost_examples() {
        let mut l = QueryLedger::new();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = variable_cost_search(&[3.0, 4.0], &[1], &mut l, &mut rng).unwrap();
        assert_eq!((r.result, r.charged), (Some(1), 5.0));
        let r = variable_cost_search(&[1.0; 4], &[], &mut l, &mut rng).unwrap();
        assert_eq!((r.result, r.charged), (None, 2.0));
        let r = variable_cost_search(&[0.0; 5], &[], &mut l, &mut rng).unwrap();
        assert_eq!(r.charged, 0.0);
        assert!(variable_cost_search(&[-1.0], &[], &mut l, &mut rng).is_err());
    }
}
