//! The two-walk search for a triangle `{v1, v2, v3}` with `v1 ∈ V1` and
//! `v2, v3 ∈ V2`, shared by the dense procedure and its sparse variants.

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use rand::Rng;

use crate::error::Result;
use crate::graph::{brute_force_triangle, vertex_bits, Graph, QueryLedger, Triangle, Vertex};
use crate::pipeline::costs::{self, FirstStage, InnerShape, Setup, Sizes, Variant, WalkShape};
use crate::qcost::{self, formulas, EpsilonViolation, WalkSpec};
use crate::structural::{draw_delta_estimate, for_each_meet3, is_covered, log2n};

/// Non-fatal observations made during a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub epsilon_violations: Vec<EpsilonViolation>,
    /// Inner-walk states whose `|N(w) ∩ B|` exceeded `10 μ`.
    pub cap_exceeded: usize,
    /// Some `v ∈ V2` had at least `t` neighbours in `X`.
    pub neighbor_cap_violated: bool,
    pub fallbacks: Vec<String>,
}

impl Diagnostics {
    pub fn merge(&mut self, other: Diagnostics) {
        self.epsilon_violations.extend(other.epsilon_violations);
        self.cap_exceeded += other.cap_exceeded;
        self.neighbor_cap_violated |= other.neighbor_cap_violated;
        self.fallbacks.extend(other.fallbacks);
    }
}

/// One invocation of the two-walk search.
#[derive(Debug, Clone)]
pub struct TwoWalkInput<'a> {
    pub g: &'a Graph,
    pub v1: &'a [Vertex],
    pub v2: &'a [Vertex],
    pub variant: Variant,
    /// Number of draws forming `X`.
    pub x_draws: usize,
    /// Use `X = V1` and stop after the first stage.
    pub x_is_v1: bool,
    pub outer_raw: f64,
    pub inner_raw: f64,
    /// Charge of one `δ(X, A, w)` estimate.
    pub est_charge: f64,
    pub d: f64,
    /// Uniform samples used to validate the marked fraction of the outer
    /// walk; zero disables the check.
    pub validation_samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoWalkOutcome {
    pub triangle: Option<Triangle>,
    pub x: Vec<Vertex>,
    /// Representative state of the outer walk (empty if the walk did not run).
    pub a: Vec<Vertex>,
    pub diagnostics: Diagnostics,
}

/// Marked states of the outer walk: `Δ(X, A)` contains an edge `{u, v}`
/// whose ends have a common neighbour in `V1`.
pub fn outer_marked(g: &Graph, x: &FixedBitSet, v1: &FixedBitSet, a: &[Vertex]) -> bool {
    a.iter().enumerate().any(|(i, &u)| {
        a[i + 1..].iter().any(|&v| {
            g.has_edge(u, v)
                && !is_covered(g, x, u, v)
                && g.adjacency(u)
                    .intersection(g.adjacency(v))
                    .any(|w| v1.contains(w))
        })
    })
}

/// `|Δ(X, S, w)|` for every `w ∈ V1` at once, as a length-`n` table.
pub fn delta_counts(g: &Graph, x: &FixedBitSet, v1: &FixedBitSet, s: &[Vertex]) -> Vec<u64> {
    let mut counts = vec![0u64; g.n()];
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if !is_covered(g, x, u, v) {
                for_each_meet3(g.adjacency(u), g.adjacency(v), v1, |w| counts[w] += 1);
            }
        }
    }
    counts
}

/// `|Δ(X, S, w)|` for a single `w`.
pub fn delta_count_w(g: &Graph, x: &FixedBitSet, s: &[Vertex], w: Vertex) -> u64 {
    let nw = g.adjacency(w);
    let inside: Vec<Vertex> = s.iter().copied().filter(|&u| nw.contains(u)).collect();
    let mut c = 0;
    for (i, &u) in inside.iter().enumerate() {
        for &v in &inside[i + 1..] {
            if !is_covered(g, x, u, v) {
                c += 1;
            }
        }
    }
    c
}

/// The three conditions on an inner-walk state `B` for a fixed `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InnerConditions {
    /// (i) some pair of `Δ(X, B, w)` is an edge.
    pub triangle: bool,
    /// (ii) `|Δ(X, B, w)| <= 10 (|B|/|A|)^2 δ(X, A, w)`.
    pub small_delta: bool,
    /// (iii) `|N(w) ∩ B| <= 10 μ`.
    pub few_neighbors: bool,
}

impl InnerConditions {
    pub fn marked(&self, sparse: bool) -> bool {
        self.triangle && self.small_delta && (!sparse || self.few_neighbors)
    }
}

/// Context for evaluating inner-walk states of one `w`.
#[derive(Debug, Clone)]
pub struct InnerContext<'a> {
    pub g: &'a Graph,
    pub x: &'a FixedBitSet,
    pub w: Vertex,
    /// `(|B| / |A|)^2` as used in condition (ii).
    pub ratio_sq: f64,
    /// The estimate `δ(X, A, w)`.
    pub delta_estimate: f64,
    pub mu: f64,
}

impl InnerContext<'_> {
    pub fn conditions(&self, b: &[Vertex]) -> InnerConditions {
        let nw = self.g.adjacency(self.w);
        let inside: Vec<Vertex> = b.iter().copied().filter(|&u| nw.contains(u)).collect();
        let mut size = 0u64;
        let mut triangle = false;
        for (i, &u) in inside.iter().enumerate() {
            for &v in &inside[i + 1..] {
                if !is_covered(self.g, self.x, u, v) {
                    size += 1;
                    triangle |= self.g.has_edge(u, v);
                }
            }
        }
        InnerConditions {
            triangle,
            small_delta: size as f64 <= 10.0 * self.ratio_sq * self.delta_estimate + 1e-9,
            few_neighbors: inside.len() as f64 <= 10.0 * self.mu + 1e-9,
        }
    }
}

/// `r`-subset of `ground` containing `must`, filled uniformly at random.
pub fn subset_containing(
    ground: &[Vertex],
    must: &[Vertex],
    r: usize,
    rng: &mut impl Rng,
) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = must.to_vec();
    let rest: Vec<Vertex> = ground
        .iter()
        .copied()
        .filter(|v| !must.contains(v))
        .collect();
    let need = r.saturating_sub(out.len()).min(rest.len());
    out.extend(sample(rng, rest.len(), need).into_iter().map(|i| rest[i]));
    out.sort_unstable();
    out
}

pub fn random_subset(ground: &[Vertex], r: usize, rng: &mut impl Rng) -> Vec<Vertex> {
    subset_containing(ground, &[], r, rng)
}

/// Realized sizes of a run, in the form the cost formulas take.
pub fn runtime_sizes(inp: &TwoWalkInput<'_>, x_len: usize, v2_bits: &FixedBitSet) -> Sizes<f64> {
    let n = inp.g.n();
    let nv2 = inp.v2.len() as f64;
    Sizes {
        n: n as f64,
        nd: (n as f64).powf(inp.d),
        log_n: log2n(n),
        v1: inp.v1.len() as f64,
        v2: nv2,
        x: x_len as f64,
        pairs_v2: nv2 * (nv2 - 1.0) / 2.0,
        edges_v2: inp.g.edges_within(v2_bits) as f64,
        outer_raw: inp.outer_raw.min(nv2),
        inner_raw: inp.inner_raw.min(inp.outer_raw.min(nv2)),
        est: inp.est_charge,
    }
}

fn validate_input(inp: &TwoWalkInput<'_>) -> Result<()> {
    use crate::error::Error;
    if !(inp.outer_raw >= 1.0 && inp.inner_raw >= 1.0) {
        return Err(Error::ParameterViolation(format!(
            "walk subset sizes {} and {} must be at least 1",
            inp.outer_raw, inp.inner_raw
        )));
    }
    if inp.v1.iter().chain(inp.v2).any(|&v| v >= inp.g.n()) {
        return Err(Error::Precondition("vertex set outside the graph".into()));
    }
    Ok(())
}

pub fn run_two_walk(
    inp: &TwoWalkInput<'_>,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> Result<TwoWalkOutcome> {
    let g = inp.g;
    let mut diagnostics = Diagnostics::default();
    if inp.v1.is_empty() || inp.v2.len() < 2 {
        return Ok(TwoWalkOutcome {
            triangle: None,
            x: Vec::new(),
            a: Vec::new(),
            diagnostics,
        });
    }
    validate_input(inp)?;
    let x: Vec<Vertex> = if inp.x_is_v1 {
        inp.v1.to_vec()
    } else {
        (0..inp.x_draws)
            .map(|_| inp.v1[rng.gen_range(0..inp.v1.len())])
            .collect()
    };
    let xb = vertex_bits(g.n(), &x);
    let v1b = vertex_bits(g.n(), inp.v1);
    let v2b = vertex_bits(g.n(), inp.v2);
    let s = runtime_sizes(inp, x.len(), &v2b);

    // Stage 1: triangles with their V1 vertex in X, or whose V2 pair is
    // covered by X (the covering vertex then closes a triangle itself).
    let x_distinct: Vec<Vertex> = xb.ones().collect();
    let found1 = brute_force_triangle(g, &x_distinct, inp.v2);
    match inp.variant.first {
        FirstStage::Grover => {
            qcost::grover_detect(s.x * s.pairs_v2, 1.0, found1, ledger);
        }
        FirstStage::EdgeSampling => {
            let (reps, attempt) = costs::edge_sampling_parts(&s);
            qcost::amp_amplify_repetitions(reps, attempt, || found1, ledger);
        }
    }
    if inp.x_is_v1 {
        return Ok(TwoWalkOutcome {
            triangle: found1,
            x,
            a: Vec::new(),
            diagnostics,
        });
    }

    if inp.variant.outer == Setup::Sparse {
        let t = s.neighbor_cap();
        diagnostics.neighbor_cap_violated = inp
            .v2
            .iter()
            .any(|&v| g.adjacency(v).intersection(&xb).count() as f64 >= t);
    }

    // Stage 2: every remaining triangle has its V2 pair in Δ(X, V2).
    let answer = if found1.is_some() {
        None
    } else {
        brute_force_triangle(g, inp.v1, inp.v2)
    };
    let r = (s.outer_raw.ceil() as usize).clamp(2, inp.v2.len());
    let outer_frozen = r == inp.v2.len();
    if outer_frozen {
        diagnostics
            .fallbacks
            .push("outer walk state is all of V2".into());
    }
    let outer = costs::outer_walk(inp.variant.outer, &s, outer_frozen);
    let a = match &answer {
        Some(t) => subset_containing(inp.v2, &[t.v2, t.v3], r, rng),
        None => random_subset(inp.v2, r, rng),
    };

    let r_in = (s.inner_raw.ceil() as usize).clamp(2, r);
    let inner_frozen = r_in == r;
    let inner = costs::inner_walk(inp.variant.inner, &s, inner_frozen);
    let deltas = delta_counts(g, &xb, &v1b, &a);
    let mut scratch = QueryLedger::new();
    let mut q = Vec::with_capacity(inp.v1.len());
    let mut estimates = Vec::with_capacity(inp.v1.len());
    for &w in inp.v1 {
        let est = draw_delta_estimate(deltas[w], rng) as f64;
        scratch.charge("count", s.est);
        q.push(costs::check_cost_for(&inner, s.est, est));
        estimates.push(est);
    }
    let witness_idx = answer
        .as_ref()
        .and_then(|t| inp.v1.iter().position(|&w| w == t.v1));
    let check = formulas::variable_cost(q.iter().copied());
    qcost::variable_cost_search(
        &q,
        &witness_idx.into_iter().collect::<Vec<_>>(),
        &mut scratch,
        rng,
    )?;

    if let (Some(t), Some(i)) = (&answer, witness_idx) {
        let ctx = InnerContext {
            g,
            x: &xb,
            w: t.v1,
            ratio_sq: inner.check_scale * inner.check_scale,
            delta_estimate: estimates[i],
            mu: s.mu(),
        };
        let b = subset_containing(&a, &[t.v2, t.v3], r_in, rng);
        if inp.variant.inner == Setup::Sparse && !ctx.conditions(&b).few_neighbors {
            diagnostics.cap_exceeded += 1;
        }
    }

    let marked = |set: &[Vertex]| outer_marked(g, &xb, &v1b, set);
    let witness = || answer.map(|_| a.clone());
    let spec = WalkSpec {
        ground_set: inp.v2,
        subset_size: r,
        setup: outer.setup,
        update: outer.update,
        check,
        epsilon: outer.eps.clamp(f64::MIN_POSITIVE, 1.0),
        marked: &marked,
        witness_finder: &witness,
    };
    let receipt = qcost::run_johnson_walk(&spec, ledger, rng, inp.validation_samples)?;
    if let Some(v) = receipt.result.violation {
        diagnostics.epsilon_violations.push(v);
    }
    Ok(TwoWalkOutcome {
        triangle: found1.or(answer),
        x,
        a,
        diagnostics,
    })
}

/// Charge the formulas predict for a run with the given realized sizes and
/// `δ` estimates; used to cross-check the ledger.
pub fn predicted_charge(
    v: Variant,
    s: &Sizes<f64>,
    outer_frozen: bool,
    inner_frozen: bool,
    estimates: &[f64],
) -> f64 {
    let outer: WalkShape<f64> = costs::outer_walk(v.outer, s, outer_frozen);
    let inner: InnerShape<f64> = costs::inner_walk(v.inner, s, inner_frozen);
    let check = formulas::variable_cost(
        estimates
            .iter()
            .map(|&e| costs::check_cost_for(&inner, s.est, e)),
    );
    costs::stage1(v.first, s) + costs::walk_cost(&outer, check)
}
