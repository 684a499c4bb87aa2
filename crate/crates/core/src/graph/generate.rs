use std::collections::HashSet;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// How edge endpoints are chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegreeProfile {
    Uniform,
    /// Endpoint `v` is drawn with weight `(v + 1)^(-exponent)`.
    Skewed(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphGenSpec {
    pub n: usize,
    pub m: usize,
    pub planted: Option<[Vertex; 3]>,
    pub profile: DegreeProfile,
    pub seed: u64,
}

impl GraphGenSpec {
    pub fn uniform(n: usize, m: usize, seed: u64) -> Self {
        GraphGenSpec {
            n,
            m,
            planted: None,
            profile: DegreeProfile::Uniform,
            seed,
        }
    }

    pub fn with_planted(mut self, t: [Vertex; 3]) -> Self {
        self.planted = Some(t);
        self
    }

    pub fn with_profile(mut self, p: DegreeProfile) -> Self {
        self.profile = p;
        self
    }

    fn validate(&self) -> Result<()> {
        let max = self.n * self.n.saturating_sub(1) / 2;
        if self.m > max {
            return Err(Error::Infeasible(format!(
                "m = {} exceeds n(n-1)/2 = {max}",
                self.m
            )));
        }
        if let Some([a, b, c]) = self.planted {
            if a == b || b == c || a == c || a >= self.n || b >= self.n || c >= self.n {
                return Err(Error::Infeasible(format!(
                    "bad planted triple {a}, {b}, {c}"
                )));
            }
            if self.m < 3 {
                return Err(Error::Infeasible("planted triangle needs m >= 3".into()));
            }
        }
        Ok(())
    }
}

/// Edge count used for the scaling family at sparsity `ell`: `round(n^ell)`,
/// capped at a quarter of all pairs so that `ell = 2` means `G(n, n^2/4)`.
pub fn target_edges(n: usize, ell: f64) -> usize {
    let cap = n * n.saturating_sub(1) / 4;
    ((n as f64).powf(ell).round() as usize).min(cap)
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

/// Random simple graph with exactly `spec.m` edges, containing the planted
/// triangle when one is requested.
pub fn gen_gnm(spec: &GraphGenSpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut chosen: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(spec.m);
    if let Some([a, b, c]) = spec.planted {
        chosen.extend([key(a, b), key(a, c), key(b, c)]);
    }
    let max = n * n.saturating_sub(1) / 2;
    match spec.profile {
        DegreeProfile::Uniform if spec.m * 2 > max => {
            // Dense: choose the pairs to leave out instead.
            let mut free: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|p| !chosen.contains(p))
                .collect();
            free.shuffle(&mut rng);
            let need = spec.m - chosen.len();
            chosen.extend(free.into_iter().take(need));
        }
        DegreeProfile::Uniform => fill_uniform(&mut chosen, n, spec.m, &mut rng),
        DegreeProfile::Skewed(exponent) => {
            let weights: Vec<f64> = (0..n).map(|v| ((v + 1) as f64).powf(-exponent)).collect();
            let dist = WeightedIndex::new(&weights)
                .map_err(|e| Error::Infeasible(format!("degree weights: {e}")))?;
            let mut budget = 50 * spec.m + 1000;
            while chosen.len() < spec.m && budget > 0 {
                budget -= 1;
                let (u, v) = (dist.sample(&mut rng), dist.sample(&mut rng));
                if u != v {
                    chosen.insert(key(u, v));
                }
            }
            fill_uniform(&mut chosen, n, spec.m, &mut rng);
        }
    }
    let mut edges: Vec<_> = chosen.into_iter().collect();
    edges.sort_unstable();
    Graph::from_edges(n, edges)
}

fn fill_uniform(chosen: &mut HashSet<(Vertex, Vertex)>, n: usize, m: usize, rng: &mut impl Rng) {
    while chosen.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            chosen.insert(key(u, v));
        }
    }
}

/// Triangle-free graph: vertices split into five classes arranged in a
/// cycle, with `m` random edges between consecutive classes only.
pub fn gen_c5_blowup(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let class = |v: Vertex| v % 5;
    let allowed: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| {
            let d = (class(u) + 5 - class(v)) % 5;
            d == 1 || d == 4
        })
        .collect();
    if m > allowed.len() {
        return Err(Error::Infeasible(format!(
            "m = {m} exceeds the {} pairs between adjacent classes",
            allowed.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<_> = allowed.choose_multiple(&mut rng, m).copied().collect();
    edges.sort_unstable();
    Graph::from_edges(n, edges)
}
