//! Charge formulas of the emulated primitives, generic over [`CostScalar`].

use crate::scalar::CostScalar;

/// Grover search over `n` items with `m` solutions at `t` queries per
/// evaluation: `ceil(sqrt(n / max(m, 1))) * t`.
pub fn grover<S: CostScalar>(n: S, m: S, t: S) -> S {
    (n / m.at_least_one()).sqrt().ceil_count() * t
}

/// Detection-only search with unknown solution count: `ceil(sqrt(n)) * t`.
pub fn grover_detect<S: CostScalar>(n: S, t: S) -> S {
    n.sqrt().ceil_count() * t
}

/// Enumeration of all `m` solutions: `ceil(sqrt(n * max(m, 1))) * t`.
pub fn enumerate<S: CostScalar>(n: S, m: S, t: S) -> S {
    (n * m.at_least_one()).sqrt().ceil_count() * t
}

/// Counting to additive error `delta`: `ceil(sqrt(n * max(m, delta)) / delta)`.
pub fn count(n: f64, m: f64, delta: f64) -> f64 {
    crate::scalar::ceil_tolerant((n * m.max(delta)).sqrt() / delta)
}

/// Amplitude amplification of a success-probability-`p` attempt of cost `c`.
pub fn amplify<S: CostScalar>(p: S, c: S) -> S {
    (S::one() / p).sqrt().ceil_count() * c
}

/// Walk search: `S + (sqrt(r) * U + C) / sqrt(eps)`.
pub fn walk<S: CostScalar>(setup: S, update: S, check: S, r: S, eps: S) -> S {
    setup + (r.sqrt() * update + check) / eps.sqrt()
}

/// Variable-cost search: `sqrt(sum Q(w)^2)`.
pub fn variable_cost<S: CostScalar>(costs: impl IntoIterator<Item = S>) -> S {
    costs
        .into_iter()
        .fold(S::zero(), |acc, q| acc + q.clone() * q)
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        assert_eq!(grover(100.0, 4.0, 1.0), 5.0);
        assert_eq!(grover(100.0, 0.0, 1.0), 10.0);
        assert_eq!(grover(1.0, 1.0, 3.0), 3.0);
        assert_eq!(enumerate(100.0, 4.0, 1.0), 20.0);
        assert_eq!(enumerate(16.0, 0.0, 1.0), 4.0);
        assert_eq!(enumerate(9.0, 9.0, 2.0), 18.0);
        assert_eq!(count(1024.0, 32.0, 4.0), 46.0);
        assert_eq!(count(16.0, 0.0, 1.0), 4.0);
        assert_eq!(amplify(0.01, 2.0), 20.0);
        assert_eq!(amplify(1.0, 7.0), 7.0);
        assert_eq!(walk(10.0, 2.0, 5.0, 16.0, 0.25), 36.0);
        assert_eq!(walk(4.0, 0.0, 0.0, 3.0, 1.0), 4.0);
        assert_eq!(variable_cost([3.0, 4.0]), 5.0);
        assert_eq!(variable_cost([1.0; 4]), 2.0);
        assert_eq!(variable_cost([0.0; 3]), 0.0);
    }

    #[test]
    fn single_precision_agrees() {
        assert_eq!(grover(100f32, 4f32, 1f32), 5f32);
        assert_eq!(walk(10f32, 2f32, 5f32, 16f32, 0.25f32), 36f32);
    }
}
