//! Searches for each triangle type under a degree partition, the dense
//! procedure they build on, and the edge-sampling baseline.

use rand::Rng;

use crate::classify::DegreePartition;
use crate::error::{Error, Result};
use crate::graph::{brute_force_triangle, Graph, QueryLedger, Triangle, Vertex};
use crate::pipeline::costs::{self, Sizes, Variant};
use crate::pipeline::engine::{run_two_walk, Diagnostics, TwoWalkInput};
use crate::plan::WalkTriple;
use crate::qcost;
use crate::scalar::ceil_tolerant;
use crate::structural::{delta_estimate_charge, log2n};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProcOutcome {
    pub triangle: Option<Triangle>,
    pub diagnostics: Diagnostics,
}

impl ProcOutcome {
    fn none() -> Self {
        Self::default()
    }
}

/// `ceil(3 * base * log2 n)` draws, where `base` is `|V1|^k` or `n^k`.
pub fn sample_draws(base: f64, n: usize) -> usize {
    ceil_tolerant(3.0 * base * log2n(n)) as usize
}

fn check_triple(t: &WalkTriple<f64>, name: &str) -> Result<()> {
    if !(t.b > 0.0 && t.b < t.a && t.a <= 1.0 && t.k > 0.0 && t.k <= 1.0) {
        return Err(Error::ParameterViolation(format!(
            "{name}: need 0 < b < a <= 1 and 0 < k <= 1, got a={} b={} k={}",
            t.a, t.b, t.k
        )));
    }
    Ok(())
}

/// The dense two-walk algorithm on `(V1, V2)` with exponents `a, b, k`
/// relative to `|V2|` and `|V1|`.
pub fn dense_find(
    g: &Graph,
    v1: &[Vertex],
    v2: &[Vertex],
    p: &WalkTriple<f64>,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> Result<ProcOutcome> {
    check_triple(p, "dense")?;
    let nv1 = v1.len() as f64;
    let nv2 = v2.len() as f64;
    let inp = TwoWalkInput {
        g,
        v1,
        v2,
        variant: Variant::DENSE,
        x_draws: sample_draws(nv1.powf(p.k), g.n()),
        x_is_v1: false,
        outer_raw: nv2.powf(p.a),
        inner_raw: nv2.powf(p.b),
        est_charge: ceil_tolerant(nv1.powf(p.k).sqrt()),
        d: 0.0,
        validation_samples: 0,
    };
    let out = run_two_walk(&inp, ledger, rng)?;
    Ok(ProcOutcome {
        triangle: out.triangle,
        diagnostics: out.diagnostics,
    })
}

/// Three low vertices, two walks with sparse setups.
pub fn find_lll(
    g: &Graph,
    part: &DegreePartition,
    p: &WalkTriple<f64>,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> Result<ProcOutcome> {
    check_triple(p, "lll")?;
    let low = &part.low;
    let nl = low.len() as f64;
    let inp = TwoWalkInput {
        g,
        v1: low,
        v2: low,
        variant: Variant::LLL,
        x_draws: sample_draws(nl.powf(p.k), g.n()),
        x_is_v1: false,
        outer_raw: nl.powf(p.a),
        inner_raw: nl.powf(p.b),
        est_charge: delta_estimate_charge(g.n(), p.k),
        d: part.d,
        validation_samples: 0,
    };
    let out = run_two_walk(&inp, ledger, rng)?;
    Ok(ProcOutcome {
        triangle: out.triangle,
        diagnostics: out.diagnostics,
    })
}

/// One high vertex (in `V1`) and two low ones (in `V2`). When the sample of
/// `3 n^k log n` draws would already reach `|V_h|`, the sample is all of
/// `V_h` and the first stage decides.
pub fn find_llh(
    g: &Graph,
    part: &DegreePartition,
    p: &WalkTriple<f64>,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> Result<ProcOutcome> {
    if !(p.b > 0.0 && p.b < p.a && p.a < 1.0 && p.k > 0.0) {
        return Err(Error::ParameterViolation(
            "llh: need 0 < b2 < a2 < 1 and k2 > 0".into(),
        ));
    }
    let (high, low) = (&part.high, &part.low);
    let n = g.n() as f64;
    let nk = n.powf(p.k);
    let x_draws = sample_draws(nk, g.n());
    let x_is_v1 = x_draws >= high.len();
    let nl = low.len() as f64;
    let inp = TwoWalkInput {
        g,
        v1: high,
        v2: low,
        variant: Variant::LLH,
        x_draws,
        x_is_v1,
        outer_raw: nl.powf(p.a),
        inner_raw: nl.powf(p.b),
        est_charge: delta_estimate_charge(g.n(), p.k),
        d: part.d,
        validation_samples: 0,
    };
    let mut out = run_two_walk(&inp, ledger, rng)?;
    if x_is_v1 && !high.is_empty() {
        out.diagnostics
            .fallbacks
            .push("llh: sample is all of V_h".into());
    }
    Ok(ProcOutcome {
        triangle: out.triangle,
        diagnostics: out.diagnostics,
    })
}

/// One low vertex (in `V1`) and two high ones (in `V2`), with `|A| = n^{a3}`
/// and `|B| = n^{b3}`.
pub fn find_hhl(
    g: &Graph,
    part: &DegreePartition,
    p: &WalkTriple<f64>,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> Result<ProcOutcome> {
    if !(p.b > 0.0 && p.b < p.a && p.k > 0.0 && p.k < 1.0) {
        return Err(Error::ParameterViolation(
            "hhl: need 0 < b3 < a3 and 0 < k3 < 1".into(),
        ));
    }
    let (high, low) = (&part.high, &part.low);
    let n = g.n() as f64;
    let inp = TwoWalkInput {
        g,
        v1: low,
        v2: high,
        variant: Variant::HHL,
        x_draws: sample_draws((low.len() as f64).powf(p.k), g.n()),
        x_is_v1: false,
        outer_raw: n.powf(p.a),
        inner_raw: n.powf(p.b),
        est_charge: delta_estimate_charge(g.n(), p.k),
        d: part.d,
        validation_samples: 0,
    };
    let out = run_two_walk(&inp, ledger, rng)?;
    Ok(ProcOutcome {
        triangle: out.triangle,
        diagnostics: out.diagnostics,
    })
}

/// Exponents of the dense procedure used on the high subgraph.
pub const HHH_TRIPLE: WalkTriple<f64> = WalkTriple {
    a: 0.75,
    b: 0.5,
    k: 0.5,
};

/// Three high vertices: the dense procedure on the induced high subgraph.
pub fn find_hhh(
    g: &Graph,
    part: &DegreePartition,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> Result<ProcOutcome> {
    let high = &part.high;
    if high.len() < 3 {
        return Ok(ProcOutcome::none());
    }
    let sub = g.induced(high);
    let all: Vec<Vertex> = (0..sub.n()).collect();
    let out = dense_find(&sub, &all, &all, &HHH_TRIPLE, ledger, rng)?;
    Ok(ProcOutcome {
        triangle: out
            .triangle
            .map(|t| Triangle::new(high[t.v1], high[t.v2], high[t.v3])),
        diagnostics: out.diagnostics,
    })
}

/// Sizes of the single-walk procedure on the low set.
pub fn single_walk_sizes(g: &Graph, part: &DegreePartition, b4: f64) -> Sizes<f64> {
    let n = g.n();
    let nl = part.low.len() as f64;
    Sizes {
        n: n as f64,
        nd: (n as f64).powf(part.d),
        log_n: log2n(n),
        v1: nl,
        v2: nl,
        x: 0.0,
        pairs_v2: nl * (nl - 1.0) / 2.0,
        edges_v2: 0.0,
        outer_raw: nl,
        inner_raw: nl.powf(b4).min(nl),
        est: delta_estimate_charge(n, 0.0),
    }
}

/// Three low vertices with no sample and no outer walk: for every `w` a walk
/// over `ceil(|V_l|^{b4})`-subsets of `V_l` checking neighbour pairs of `w`.
pub fn find_lll_singlewalk(
    g: &Graph,
    part: &DegreePartition,
    b4: f64,
    ledger: &mut QueryLedger,
    rng: &mut impl Rng,
) -> Result<ProcOutcome> {
    if !(b4 > 0.0 && b4 < 1.0) {
        return Err(Error::ParameterViolation("need 0 < b4 < 1".into()));
    }
    let low = &part.low;
    if low.len() < 3 {
        return Ok(ProcOutcome::none());
    }
    let s = single_walk_sizes(g, part, b4);
    let q = costs::single_walk_check(&s);
    let answer = brute_force_triangle(g, low, low);
    let solutions: Vec<usize> = answer
        .iter()
        .filter_map(|t| low.iter().position(|&w| w == t.v1))
        .collect();
    qcost::variable_cost_search(&vec![q; low.len()], &solutions, ledger, rng)?;
    let mut diagnostics = Diagnostics::default();
    if let Some(t) = &answer {
        let r = (s.inner_raw.ceil() as usize).clamp(2, low.len());
        let b = crate::pipeline::engine::subset_containing(low, &[t.v2, t.v3], r, rng);
        let nb = b.iter().filter(|&&v| g.has_edge(v, t.v1)).count() as f64;
        if nb > 10.0 * s.mu() {
            diagnostics.cap_exceeded += 1;
        }
    }
    Ok(ProcOutcome {
        triangle: answer,
        diagnostics,
    })
}

/// Triangles with at least one high vertex: sample an edge, search its apex
/// among the high vertices.
pub fn find_anyhigh(
    g: &Graph,
    part: &DegreePartition,
    ledger: &mut QueryLedger,
) -> Result<ProcOutcome> {
    apex_procedure(g, &part.high, ledger)
}

fn apex_procedure(g: &Graph, apex: &[Vertex], ledger: &mut QueryLedger) -> Result<ProcOutcome> {
    if apex.is_empty() {
        return Ok(ProcOutcome::none());
    }
    let all: Vec<Vertex> = (0..g.n()).collect();
    let answer = brute_force_triangle(g, apex, &all);
    let m = (g.m() as f64).max(1.0);
    let n = g.n() as f64;
    let attempt = (n * n / m).sqrt() + (apex.len() as f64).sqrt();
    qcost::amp_amplify_repetitions(m.sqrt(), attempt, || (), ledger);
    Ok(ProcOutcome {
        triangle: answer,
        diagnostics: Diagnostics::default(),
    })
}

/// Edge sampling with the apex searched over all of `V`:
/// `n + sqrt(n m)` queries.
pub fn buhrman_find(g: &Graph, ledger: &mut QueryLedger) -> Result<ProcOutcome> {
    let all: Vec<Vertex> = (0..g.n()).collect();
    apex_procedure(g, &all, ledger)
}
