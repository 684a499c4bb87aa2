//! Uncovered-pair sets, k-good sample sets and the neighbour-cap bound.
//!
//! A pair `{u, v}` inside `Y` is *covered* by `X` when some `x ∈ X` is
//! adjacent to both ends. `Δ(X, Y)` is the set of uncovered pairs of `Y`, and
//! `Δ(X, Y, w)` keeps those whose ends are both adjacent to `w`.

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{vertex_bits, Graph, QueryLedger, Vertex};
use crate::qcost::ChargeReceipt;
use crate::scalar::ceil_tolerant;

pub(crate) fn log2n(n: usize) -> f64 {
    (n.max(1) as f64).log2()
}

/// True when `a ∩ b ∩ c` is nonempty.
pub(crate) fn meet3(a: &FixedBitSet, b: &FixedBitSet, c: &FixedBitSet) -> bool {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .zip(c.as_slice())
        .any(|((x, y), z)| x & y & z != 0)
}

/// Calls `f` on every element of `a ∩ b ∩ c`.
pub(crate) fn for_each_meet3(
    a: &FixedBitSet,
    b: &FixedBitSet,
    c: &FixedBitSet,
    mut f: impl FnMut(usize),
) {
    let bits = usize::BITS as usize;
    for (i, ((x, y), z)) in a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .zip(c.as_slice())
        .enumerate()
    {
        let mut word = x & y & z;
        while word != 0 {
            let t = word.trailing_zeros() as usize;
            f(i * bits + t);
            word &= word - 1;
        }
    }
}

pub(crate) fn count_meet3(a: &FixedBitSet, b: &FixedBitSet, c: &FixedBitSet) -> usize {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .zip(c.as_slice())
        .map(|((x, y), z)| (x & y & z).count_ones() as usize)
        .sum()
}

/// Is `{u, v}` covered by some vertex of `x`?
pub fn is_covered(g: &Graph, x: &FixedBitSet, u: Vertex, v: Vertex) -> bool {
    meet3(g.adjacency(u), g.adjacency(v), x)
}

/// `Δ(X, Y)` with the sets it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSet {
    /// Uncovered pairs `(u, v)` with `u < v`, sorted.
    pub pairs: Vec<(Vertex, Vertex)>,
    pub x: Vec<Vertex>,
    pub y: Vec<Vertex>,
}

impl DeltaSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.pairs.binary_search(&(u.min(v), u.max(v))).is_ok()
    }
}

fn sorted_unique(v: &[Vertex]) -> Vec<Vertex> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn delta(g: &Graph, x: &[Vertex], y: &[Vertex]) -> DeltaSet {
    let xb = vertex_bits(g.n(), x);
    let y = sorted_unique(y);
    let mut pairs = Vec::new();
    for (i, &u) in y.iter().enumerate() {
        for &v in &y[i + 1..] {
            if !is_covered(g, &xb, u, v) {
                pairs.push((u, v));
            }
        }
    }
    DeltaSet {
        pairs,
        x: sorted_unique(x),
        y,
    }
}

pub fn delta_w(g: &Graph, x: &[Vertex], y: &[Vertex], w: Vertex) -> Vec<(Vertex, Vertex)> {
    let xb = vertex_bits(g.n(), x);
    let nw = g.adjacency(w);
    let y: Vec<Vertex> = sorted_unique(y)
        .into_iter()
        .filter(|&u| nw.contains(u))
        .collect();
    let mut pairs = Vec::new();
    for (i, &u) in y.iter().enumerate() {
        for &v in &y[i + 1..] {
            if !is_covered(g, &xb, u, v) {
                pairs.push((u, v));
            }
        }
    }
    pairs
}

/// Weight of each uncovered pair: its number of common neighbours in `V1`.
/// `Σ_{w ∈ V1} |Δ(X, Y, w)|` is the total weight of the pairs inside `Y`.
fn pair_weights(g: &Graph, v1: &FixedBitSet, x: &FixedBitSet) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut c = vec![vec![0u32; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            if !is_covered(g, x, u, v) {
                let k = count_meet3(g.adjacency(u), g.adjacency(v), v1) as u32;
                c[u][v] = k;
                c[v][u] = k;
            }
        }
    }
    c
}

fn k_good_bound(y_len: usize, v1_len: usize, k: f64) -> f64 {
    (y_len * y_len) as f64 * (v1_len as f64).powf(1.0 - k)
}

pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Checks the k-good inequality for every `Y ⊆ V`.
pub fn is_k_good_exhaustive(g: &Graph, v1: &[Vertex], x: &[Vertex], k: f64) -> Result<bool> {
    let n = g.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::SizeLimit(format!(
            "exhaustive k-good check needs n <= {EXHAUSTIVE_LIMIT}, got {n}"
        )));
    }
    let v1b = vertex_bits(n, v1);
    let c = pair_weights(g, &v1b, &vertex_bits(n, x));
    let v1_len = v1b.count_ones(..);
    let mut f = vec![0u64; 1usize << n];
    for y in 1usize..(1 << n) {
        let low = y.trailing_zeros() as usize;
        let rest = y & (y - 1);
        let mut add = 0u64;
        let mut r = rest;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            add += c[low][v] as u64;
            r &= r - 1;
        }
        f[y] = f[rest] + add;
        let bound = k_good_bound(y.count_ones() as usize, v1_len, k);
        if f[y] as f64 > bound * (1.0 + 1e-12) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of a sampled k-good check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KGoodCheck {
    pub holds: bool,
    /// Largest observed `lhs / rhs`.
    pub worst_ratio: f64,
}

/// Checks the k-good inequality on `trials` random sets `Y`: the size is
/// uniform in `0..=n`, then the set is uniform of that size.
pub fn is_k_good_sampled(
    g: &Graph,
    v1: &[Vertex],
    x: &[Vertex],
    k: f64,
    trials: usize,
    rng: &mut impl Rng,
) -> KGoodCheck {
    let n = g.n();
    let v1b = vertex_bits(n, v1);
    let xb = vertex_bits(n, x);
    let v1_len = v1b.count_ones(..);
    let mut worst: f64 = 0.0;
    let mut holds = true;
    for _ in 0..trials {
        let size = rng.gen_range(0..=n);
        if size < 2 {
            continue;
        }
        let y = sample(rng, n, size).into_vec();
        let mut lhs = 0u64;
        for (i, &u) in y.iter().enumerate() {
            for &v in &y[i + 1..] {
                if !is_covered(g, &xb, u, v) {
                    lhs += count_meet3(g.adjacency(u), g.adjacency(v), &v1b) as u64;
                }
            }
        }
        let ratio = lhs as f64 / k_good_bound(size, v1_len, k);
        worst = worst.max(ratio);
        if ratio > 1.0 + 1e-12 {
            holds = false;
        }
    }
    KGoodCheck {
        holds,
        worst_ratio: worst,
    }
}

/// `ceil(3 * v1_len^k * log2 n)`.
pub fn good_set_size(v1_len: usize, k: f64, n: usize) -> usize {
    ceil_tolerant(3.0 * (v1_len as f64).powf(k) * log2n(n)) as usize
}

/// Multiset `X` drawn uniformly with replacement from `V1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GoodSetSample {
    pub draws: Vec<Vertex>,
    pub k: f64,
}

impl GoodSetSample {
    pub fn size(&self) -> usize {
        self.draws.len()
    }

    pub fn distinct(&self) -> Vec<Vertex> {
        sorted_unique(&self.draws)
    }

    pub fn bits(&self, n: usize) -> FixedBitSet {
        vertex_bits(n, &self.draws)
    }
}

pub fn sample_good_set(
    g: &Graph,
    v1: &[Vertex],
    k: f64,
    rng: &mut impl Rng,
) -> Result<GoodSetSample> {
    sample_good_set_scaled(g, v1, k, 1.0, rng)
}

/// As [`sample_good_set`] with the draw count multiplied by `scale`
/// (used to exercise undersized samples).
pub fn sample_good_set_scaled(
    g: &Graph,
    v1: &[Vertex],
    k: f64,
    scale: f64,
    rng: &mut impl Rng,
) -> Result<GoodSetSample> {
    if v1.is_empty() {
        return Err(Error::Precondition("cannot sample from an empty V1".into()));
    }
    let size = (good_set_size(v1.len(), k, g.n()) as f64 * scale).round() as usize;
    let draws = (0..size).map(|_| v1[rng.gen_range(0..v1.len())]).collect();
    Ok(GoodSetSample { draws, k })
}

/// `3.3 n^{d+k-1} log n + 2 log n`.
pub fn neighbor_cap(n: usize, d: f64, k: f64) -> f64 {
    let l = log2n(n);
    3.3 * (n as f64).powf(d + k - 1.0) * l + 2.0 * l
}

/// Does `|N(v) ∩ X| < neighbor_cap(n, d, k)` hold for every `v ∈ V_l`?
pub fn neighbor_cap_holds(g: &Graph, v_low: &[Vertex], x: &[Vertex], k: f64, d: f64) -> bool {
    let xb = vertex_bits(g.n(), x);
    let cap = neighbor_cap(g.n(), d, k);
    v_low
        .iter()
        .all(|&v| (g.adjacency(v).intersection(&xb).count() as f64) < cap)
}

/// Charge of one `δ(X, A, w)` estimate: `ceil(sqrt(n^k))`.
pub fn delta_estimate_charge(n: usize, k: f64) -> f64 {
    ceil_tolerant((n as f64).powf(k).sqrt())
}

/// Uniform integer within relative error 1/10 of `exact`.
pub fn draw_delta_estimate(exact: u64, rng: &mut impl Rng) -> u64 {
    let lo = (exact as f64 * 0.9).ceil() as u64;
    let hi = ((exact as f64 * 1.1).floor() as u64).max(lo);
    rng.gen_range(lo..=hi)
}

/// Estimates `|Δ(X, A, w)|` to relative error 1/10.
pub fn estimate_delta_size(
    g: &Graph,
    x: &[Vertex],
    a: &[Vertex],
    w: Vertex,
    k1: f64,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> ChargeReceipt<u64> {
    let exact = delta_w(g, x, a, w).len() as u64;
    let estimate = draw_delta_estimate(exact, rng);
    let charged = delta_estimate_charge(g.n(), k1);
    ledger.charge("count", charged);
    ChargeReceipt {
        result: estimate,
        charged,
        label: "count",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn delta_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(delta(&k3, &[], &[0, 1, 2]).len(), 3);
        assert_eq!(delta(&k3, &[0], &[0, 1, 2]).pairs, vec![(0, 1), (0, 2)]);
        assert!(delta(&k3, &[0], &[]).is_empty());
        assert!(delta_w(&k3, &[0], &[0, 1, 2], 0).is_empty());
        let k4 = Graph::complete(4);
        assert_eq!(delta_w(&k4, &[], &[0, 1, 2], 3).len(), 3);
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert!(delta_w(&g, &[], &[0, 1, 2], 3).is_empty());
    }

    #[test]
    fn k_good_trivial_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = crate::graph::gen_gnm(&crate::graph::GraphGenSpec::uniform(10, 25, 3)).unwrap();
        let all: Vec<_> = (0..10).collect();
        assert!(is_k_good_exhaustive(&g, &all, &all, 0.0).unwrap());
        assert!(is_k_good_exhaustive(&Graph::empty(8), &all[..8], &[], 0.7).unwrap());
        assert!(is_k_good_sampled(&g, &all, &all, 0.0, 200, &mut rng).holds);
        assert!(is_k_good_exhaustive(&Graph::empty(21), &[0], &[], 0.5).is_err());
    }

    #[test]
    fn sizes_and_caps() {
        assert_eq!(good_set_size(8, 0.0, 8), 9);
        assert_eq!(delta_estimate_charge(256, 0.5), 4.0);
        let g = Graph::complete(8);
        assert!(neighbor_cap_holds(&g, &[0, 1, 2], &[], 0.5, 0.5));
        assert!(neighbor_cap_holds(&g, &[0, 1, 2], &[5], 0.5, 0.5));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = sample_good_set(&g, &[1, 2], 1.0, &mut rng).unwrap();
        assert_eq!(s.size(), good_set_size(2, 1.0, 8));
        assert!(s.draws.iter().all(|v| [1, 2].contains(v)));
    }

    #[test]
    fn estimates_stay_in_band() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(draw_delta_estimate(0, &mut rng), 0);
        for e in [1u64, 5, 9, 15, 100, 12345] {
            for _ in 0..50 {
                let x = draw_delta_estimate(e, &mut rng) as f64;
                assert!((x - e as f64).abs() <= e as f64 / 10.0 + 1e-9);
            }
        }
    }
}
