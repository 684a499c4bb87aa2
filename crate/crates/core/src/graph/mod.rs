//! Immutable simple graphs, the counted adjacency oracle, generators and
//! brute-force reference searches.

mod generate;
mod ledger;
mod reference;

use std::collections::HashSet;
use std::io::{BufRead, Write};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use generate::{gen_c5_blowup, gen_gnm, target_edges, DegreeProfile, GraphGenSpec};
pub use ledger::{CountedOracle, QueryLedger};
pub use reference::{brute_force_triangle, has_triangle};

pub type Vertex = usize;

/// Undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<FixedBitSet>,
    nbrs: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ends.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        let mut nbrs = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidVertex(u, v));
            }
            if adj[u].contains(v) {
                return Err(Error::Infeasible(format!("duplicate edge {{{u}, {v}}}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
            nbrs[u].push(v);
            nbrs[v].push(u);
            m += 1;
        }
        for list in &mut nbrs {
            list.sort_unstable();
        }
        Ok(Graph { n, m, adj, nbrs })
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_edges(n, std::iter::empty()).expect("empty graph")
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.nbrs[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.nbrs.iter().map(Vec::len).collect()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.nbrs[v]
    }

    /// Neighbourhood of `v` as a bitset over `0..n`.
    pub fn adjacency(&self, v: Vertex) -> &FixedBitSet {
        &self.adj[v]
    }

    /// Classical, uncharged adjacency test used by the emulation layer.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.nbrs
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: &FixedBitSet) -> usize {
        let twice: usize = set
            .ones()
            .map(|v| self.adj[v].intersection(set).count())
            .sum();
        twice / 2
    }

    /// Induced subgraph on `vertices` (relabelled `0..len` in the given order).
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = vertices
            .iter()
            .enumerate()
            .flat_map(|(i, &v)| {
                let index = &index;
                self.nbrs[v].iter().filter_map(move |&u| {
                    (index[u] != usize::MAX && index[u] > i).then_some((i, index[u]))
                })
            })
            .collect();
        Graph::from_edges(vertices.len(), edges).expect("induced subgraph")
    }

    /// Parses the edge-list format: a header `n m` and then `m` lines `u v`.
    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
        let mut lines = reader
            .lines()
            .enumerate()
            .filter(|(_, l)| l.as_ref().map(|s| !s.trim().is_empty()).unwrap_or(true));
        let parse_err = |line: usize, msg: &str| Error::Parse {
            line: line + 1,
            msg: msg.to_string(),
        };
        let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let header = header?;
        let mut it = header.split_whitespace();
        let mut field = |what: &str| -> Result<usize> {
            it.next()
                .ok_or_else(|| parse_err(hline, &format!("missing {what}")))?
                .parse()
                .map_err(|_| parse_err(hline, &format!("bad {what}")))
        };
        let n = field("vertex count")?;
        let m = field("edge count")?;
        let mut seen = HashSet::with_capacity(m);
        let mut edges = Vec::with_capacity(m);
        for (i, line) in lines {
            let line = line?;
            let mut it = line.split_whitespace();
            let mut end = || -> Result<usize> {
                it.next()
                    .ok_or_else(|| parse_err(i, "expected two endpoints"))?
                    .parse()
                    .map_err(|_| parse_err(i, "bad endpoint"))
            };
            let (u, v) = (end()?, end()?);
            if u == v {
                return Err(parse_err(i, "self-loop"));
            }
            if u >= n || v >= n {
                return Err(parse_err(i, "endpoint out of range"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(parse_err(i, "duplicate edge"));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(parse_err(
                hline,
                &format!("header says {m} edges, found {}", edges.len()),
            ));
        }
        Graph::from_edges(n, edges)
    }

    pub fn write_edge_list<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {}", self.n, self.m)?;
        for (u, v) in self.edges() {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Bitset over `0..n` holding `vertices`.
pub fn vertex_bits(n: usize, vertices: &[Vertex]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for &v in vertices {
        b.insert(v);
    }
    b
}

/// A triangle `{v1, v2, v3}`; `v1` is the vertex drawn from the first side
/// of whatever search produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub v1: Vertex,
    pub v2: Vertex,
    pub v3: Vertex,
}

impl Triangle {
    pub fn new(v1: Vertex, v2: Vertex, v3: Vertex) -> Self {
        Triangle { v1, v2, v3 }
    }

    pub fn sorted(&self) -> [Vertex; 3] {
        let mut t = [self.v1, self.v2, self.v3];
        t.sort_unstable();
        t
    }

    pub fn is_in(&self, g: &Graph) -> bool {
        g.has_edge(self.v1, self.v2) && g.has_edge(self.v1, self.v3) && g.has_edge(self.v2, self.v3)
    }
}
