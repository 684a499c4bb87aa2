use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Accumulated quantum-query charges, broken down by label.
///
/// The total is always recomputed from the breakdown, so the two can never
/// disagree. Classical probes are counted separately and never charged.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QueryLedger {
    breakdown: BTreeMap<String, f64>,
    classical_probes: u64,
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `amount` under `label`. Panics on negative or non-finite charges.
    pub fn charge(&mut self, label: &str, amount: f64) {
        assert!(
            amount.is_finite() && amount >= 0.0,
            "invalid charge {amount} for {label}"
        );
        match self.breakdown.get_mut(label) {
            Some(v) => *v += amount,
            None => {
                self.breakdown.insert(label.to_string(), amount);
            }
        }
    }

    pub fn total(&self) -> f64 {
        self.breakdown.values().sum()
    }

    pub fn breakdown(&self) -> &BTreeMap<String, f64> {
        &self.breakdown
    }

    pub fn get(&self, label: &str) -> f64 {
        self.breakdown.get(label).copied().unwrap_or(0.0)
    }

    pub fn probe(&mut self, count: u64) {
        self.classical_probes += count;
    }

    pub fn classical_probes(&self) -> u64 {
        self.classical_probes
    }

    /// Adds every entry of `other` into `self`.
    pub fn absorb(&mut self, other: &QueryLedger) {
        for (label, v) in &other.breakdown {
            self.charge(label, *v);
        }
        self.classical_probes += other.classical_probes;
    }

    /// Adds the whole of `other` as a single entry under `label`.
    pub fn absorb_as(&mut self, label: &str, other: &QueryLedger) {
        self.charge(label, other.total());
        self.classical_probes += other.classical_probes;
    }
}

/// Adjacency oracle that charges one query per membership test.
pub struct CountedOracle<'a> {
    graph: &'a Graph,
    ledger: &'a mut QueryLedger,
}

impl<'a> CountedOracle<'a> {
    pub fn new(graph: &'a Graph, ledger: &'a mut QueryLedger) -> Self {
        CountedOracle { graph, ledger }
    }

    pub fn edge_query(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        let n = self.graph.n();
        if u == v || u >= n || v >= n {
            return Err(Error::InvalidVertex(u, v));
        }
        self.ledger.charge("oracle", 1.0);
        Ok(self.graph.has_edge(u, v))
    }

    pub fn ledger(&self) -> &QueryLedger {
        self.ledger
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_charges_one_per_query() {
        let g = Graph::complete(3);
        let mut ledger = QueryLedger::new();
        let mut o = CountedOracle::new(&g, &mut ledger);
        assert!(o.edge_query(0, 1).unwrap());
        assert!(o.edge_query(1, 0).unwrap());
        assert!(o.edge_query(1, 1).is_err());
        assert!(o.edge_query(0, 3).is_err());
        assert_eq!(ledger.total(), 2.0);
        assert_eq!(ledger.get("oracle"), 2.0);
    }

    #[test]
    fn oracle_on_sparse_graphs() {
        let mut ledger = QueryLedger::new();
        let e = Graph::empty(4);
        assert!(!CountedOracle::new(&e, &mut ledger)
            .edge_query(0, 1)
            .unwrap());
        let p = Graph::path(3);
        assert!(!CountedOracle::new(&p, &mut ledger)
            .edge_query(0, 2)
            .unwrap());
        assert_eq!(ledger.total(), 2.0);
    }

    #[test]
    fn absorb_keeps_totals_consistent() {
        let mut a = QueryLedger::new();
        a.charge("x", 1.5);
        let mut b = QueryLedger::new();
        b.charge("x", 2.0);
        b.charge("y", 0.25);
        b.probe(7);
        a.absorb(&b);
        assert_eq!(a.get("x"), 3.5);
        assert_eq!(a.total(), 3.75);
        assert_eq!(a.classical_probes(), 7);
        let mut c = QueryLedger::new();
        c.absorb_as("Q1", &a);
        assert_eq!(c.get("Q1"), 3.75);
    }

    #[test]
    #[should_panic]
    fn negative_charge_panics() {
        QueryLedger::new().charge("x", -1.0);
    }
}
