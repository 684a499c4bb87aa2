//! Degree classification into d-high and d-low vertices.

use rand::Rng;

use crate::graph::{Graph, QueryLedger, Vertex};
use crate::qcost::formulas;
use crate::scalar::ceil_tolerant;

#[derive(Debug, Clone, PartialEq)]
pub struct DegreePartition {
    pub d: f64,
    pub high: Vec<Vertex>,
    pub low: Vec<Vertex>,
    pub charge: f64,
}

impl DegreePartition {
    /// Every vertex high, no classification charge (the `d = 0` shortcut).
    pub fn all_high(g: &Graph) -> Self {
        DegreePartition {
            d: 0.0,
            high: (0..g.n()).collect(),
            low: Vec::new(),
            charge: 0.0,
        }
    }

    /// Checks the containments `deg >= 0.9 n^d` on the high side,
    /// `deg <= 1.1 n^d` on the low side, and `|V_h| <= (20/9) m / n^d`.
    pub fn satisfies_invariants(&self, g: &Graph) -> bool {
        let nd = (g.n() as f64).powf(self.d);
        let slack = 1e-9 * nd.max(1.0);
        let disjoint_cover = self.high.len() + self.low.len() == g.n() && {
            let mut seen = vec![false; g.n()];
            self.high
                .iter()
                .chain(&self.low)
                .all(|&v| !std::mem::replace(&mut seen[v], true))
        };
        disjoint_cover
            && self
                .high
                .iter()
                .all(|&v| g.degree(v) as f64 >= 0.9 * nd - slack)
            && self
                .low
                .iter()
                .all(|&v| g.degree(v) as f64 <= 1.1 * nd + slack)
            && self.high.len() as f64 <= 20.0 / 9.0 * g.m() as f64 / nd + 1e-9
    }
}

/// Charge of classification: enumerating the high vertices with a counting
/// subroutine of cost `ceil(sqrt(n / n^d))` per vertex.
pub fn classify_charge(n: usize, d: f64, high: usize) -> f64 {
    let nf = n as f64;
    let per_vertex = ceil_tolerant((nf / nf.powf(d)).sqrt());
    formulas::enumerate(nf, high as f64, per_vertex)
}

/// Splits the vertices by a noisy degree estimate `a(v) = deg(v) + u`,
/// `u` uniform in `[-n^d/100, n^d/100]`; `v` is high iff `a(v) >= n^d`.
///
/// Degrees are integers, so when the noise band is narrower than one half
/// the estimate is rounded back to the exact count.
pub fn classify(
    g: &Graph,
    d: f64,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> DegreePartition {
    let nd = (g.n() as f64).powf(d);
    let band = nd / 100.0;
    let mut high = Vec::new();
    let mut low = Vec::new();
    for v in 0..g.n() {
        let deg = g.degree(v) as f64;
        let mut a = deg + rng.gen_range(-band..=band);
        if band < 0.5 {
            a = a.round();
        }
        if a >= nd {
            high.push(v);
        } else {
            low.push(v);
        }
    }
    ledger.probe(g.n() as u64);
    let charge = classify_charge(g.n(), d, high.len());
    ledger.charge("classify", charge);
    DegreePartition {
        d,
        high,
        low,
        charge,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn d_zero_with_positive_degrees_is_all_high() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut l = QueryLedger::new();
        let p = classify(&Graph::cycle(9), 0.0, &mut l, &mut rng);
        assert_eq!(p.high.len(), 9);
        assert!(p.satisfies_invariants(&Graph::cycle(9)));
    }

    #[test]
    fn star_has_only_its_centre_high() {
        let n = 200;
        let star = Graph::from_edges(n, (1..n).map(|v| (0, v))).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut l = QueryLedger::new();
        let p = classify(&star, 0.9, &mut l, &mut rng);
        assert_eq!(p.high, vec![0]);
        assert!(p.satisfies_invariants(&star));
        assert_eq!(p.charge, classify_charge(n, 0.9, 1));
        assert_eq!(l.get("classify"), p.charge);
    }

    #[test]
    fn regular_graph_above_threshold_is_all_high() {
        // 8-regular circulant on 16 vertices; threshold n^d = 4 at d = 1/2.
        let n = 16;
        let g = Graph::from_edges(
            n,
            (0..n).flat_map(|i| (1..=4).map(move |s| (i, (i + s) % n))),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = classify(&g, 0.5, &mut QueryLedger::new(), &mut rng);
        assert_eq!(p.high.len(), n);
    }
}
