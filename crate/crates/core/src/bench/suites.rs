//! Randomized verification suites run by `verify`.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bench::experiments::{generate_graph, run_trial, Family};
use crate::classify::classify;
use crate::error::Result;
use crate::graph::{
    brute_force_triangle, gen_c5_blowup, gen_gnm, vertex_bits, DegreeProfile, Graph, GraphGenSpec,
    QueryLedger, Vertex,
};
use crate::pipeline::engine::{delta_count_w, outer_marked, subset_containing, InnerContext};
use crate::qcost::{self, PredicateSpec, WalkSpec};
use crate::structural::{
    draw_delta_estimate, is_k_good_exhaustive, neighbor_cap_holds, sample_good_set_scaled,
};

/// One suite's verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: String,
    pub passed: bool,
    /// Number of trials that entered the statistic.
    pub trials: usize,
    pub statistic: f64,
    pub threshold: f64,
    pub detail: String,
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {:.4} vs {:.4} over {} trials; {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.statistic,
            self.threshold,
            self.trials,
            self.detail
        )
    }
}

fn rng_for(seed: u64, i: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(crate::bench::experiments::instance_seed(i as usize, seed))
}

/// Settings of the k-good suite.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma1Settings {
    /// At most the exhaustive limit of 20.
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Multiplies the sample size; 0 leaves `X` empty.
    pub scale: f64,
    /// Values of `k`, cycled over the trials.
    pub ks: Vec<f64>,
    /// Smallest edge density of the random graphs.
    pub min_density: f64,
}

impl Default for Lemma1Settings {
    fn default() -> Self {
        Lemma1Settings {
            n: 14,
            trials: 200,
            seed: 1,
            scale: 1.0,
            ks: vec![0.25, 0.5, 0.75, 0.9],
            min_density: 0.0,
        }
    }
}

/// Fraction of sampled `X` that are k-good on random graphs, checked over
/// every `Y`.
pub fn lemma1_suite(s: &Lemma1Settings) -> Result<SuiteOutcome> {
    let n = s.n;
    let results = (0..s.trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(s.seed, i);
            let max = n * (n - 1) / 2;
            let lo = ((max as f64 * s.min_density).ceil() as usize).max(n.min(max));
            let m = rng.gen_range(lo..=max);
            let g = gen_gnm(&GraphGenSpec::uniform(n, m, rng.gen()))?;
            let v1: Vec<Vertex> = (0..n).collect();
            let k = s.ks[i as usize % s.ks.len()];
            let x = sample_good_set_scaled(&g, &v1, k, s.scale, &mut rng)?;
            is_k_good_exhaustive(&g, &v1, &x.draws, k)
        })
        .collect::<Result<Vec<bool>>>()?;
    let good = results.iter().filter(|&&b| b).count();
    let frac = good as f64 / s.trials.max(1) as f64;
    let threshold = 1.0 - 1.0 / n as f64 - 0.05;
    Ok(SuiteOutcome {
        name: "lemma1".into(),
        passed: frac >= threshold,
        trials: s.trials,
        statistic: frac,
        threshold,
        detail: format!("k-good fraction at n = {n}, sample scale {}", s.scale),
    })
}

/// Fraction of samples `X ⊆ V_l` for which some low vertex reaches the
/// neighbour cap, on skewed graphs.
pub fn lemma3_suite(
    n: usize,
    trials: usize,
    d: f64,
    k: f64,
    skew: f64,
    seed: u64,
) -> Result<SuiteOutcome> {
    const PER_GRAPH: usize = 50;
    let graphs = trials.div_ceil(PER_GRAPH);
    let per_graph = (0..graphs as u64)
        .into_par_iter()
        .map(|gi| {
            let mut rng = rng_for(seed, gi);
            let m = crate::graph::target_edges(n, 1.5);
            let spec =
                GraphGenSpec::uniform(n, m, rng.gen()).with_profile(DegreeProfile::Skewed(skew));
            let g = gen_gnm(&spec)?;
            let part = classify(&g, d, &mut QueryLedger::new(), &mut rng);
            let count = PER_GRAPH.min(trials - gi as usize * PER_GRAPH);
            let mut failures = 0;
            if part.low.is_empty() {
                return Ok((0, 0));
            }
            for _ in 0..count {
                let x = sample_good_set_scaled(&g, &part.low, k, 1.0, &mut rng)?;
                if !neighbor_cap_holds(&g, &part.low, &x.draws, k, d) {
                    failures += 1;
                }
            }
            Ok((failures, count))
        })
        .collect::<Result<Vec<(usize, usize)>>>()?;
    let (failures, used) = per_graph.iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let frac = failures as f64 / used.max(1) as f64;
    let threshold = 1.0 / n as f64 + 0.05;
    Ok(SuiteOutcome {
        name: "lemma3".into(),
        passed: used > 0 && frac <= threshold,
        trials: used,
        statistic: frac,
        threshold,
        detail: format!("cap failure fraction at n = {n}, d = {d}, k = {k}, skew {skew}"),
    })
}

/// Settings of the marked-fraction suite.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonSettings {
    pub n: usize,
    pub ell: f64,
    pub instances: usize,
    pub samples: usize,
    pub a: f64,
    pub b: f64,
    pub k: f64,
    pub seed: u64,
}

impl Default for EpsilonSettings {
    fn default() -> Self {
        EpsilonSettings {
            n: 128,
            ell: 1.4,
            instances: 200,
            samples: 2000,
            a: 0.75,
            b: 0.5,
            k: 0.25,
            seed: 1,
        }
    }
}

struct EpsilonInstance {
    outer: f64,
    inner: f64,
    slack: f64,
}

/// Triangle-free graph plus one planted triangle, so that a sample avoiding
/// the triangle leaves it for the walks.
fn planted_instance(s: &EpsilonSettings, rng: &mut ChaCha8Rng) -> Result<(Graph, [Vertex; 3])> {
    let n = s.n;
    let base = gen_c5_blowup(n, crate::graph::target_edges(n, s.ell) / 2, rng.gen())?;
    let t = sample(rng, n, 3).into_vec();
    let mut edges: Vec<_> = base.edges().collect();
    for (u, v) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
        if !base.has_edge(u, v) {
            edges.push((u, v));
        }
    }
    Ok((Graph::from_edges(n, edges)?, [t[0], t[1], t[2]]))
}

fn epsilon_instance(s: &EpsilonSettings, i: u64) -> Result<Option<EpsilonInstance>> {
    let mut rng = rng_for(s.seed, i);
    let (g, t) = planted_instance(s, &mut rng)?;
    let n = g.n();
    // Threshold well above every degree: all vertices are low.
    let max_deg = g.degrees().into_iter().max().unwrap_or(1).max(1) as f64;
    let d = ((2.0 * max_deg).ln() / (n as f64).ln()).min(1.0);
    let part = classify(&g, d, &mut QueryLedger::new(), &mut rng);
    let low = &part.low;
    if t.iter().any(|v| !low.contains(v)) {
        return Ok(None);
    }
    let x = sample_good_set_scaled(&g, low, s.k, 1.0, &mut rng)?;
    let xd = x.distinct();
    if brute_force_triangle(&g, &xd, &(0..n).collect::<Vec<_>>()).is_some() {
        return Ok(None);
    }
    let xb = vertex_bits(n, &xd);
    let v1b = vertex_bits(n, low);
    let nl = low.len() as f64;
    let r = (nl.powf(s.a).ceil() as usize).clamp(2, low.len());
    let r_in = (nl.powf(s.b).ceil() as usize).clamp(2, r);

    let outer_hits = (0..s.samples)
        .filter(|_| {
            let a: Vec<Vertex> = sample(&mut rng, low.len(), r)
                .into_iter()
                .map(|j| low[j])
                .collect();
            outer_marked(&g, &xb, &v1b, &a)
        })
        .count();

    let [w, v2, v3] = t;
    let a = subset_containing(low, &[v2, v3], r, &mut rng);
    let exact = delta_count_w(&g, &xb, &a, w);
    let ctx = InnerContext {
        g: &g,
        x: &xb,
        w,
        ratio_sq: (r_in as f64 / r as f64).powi(2),
        delta_estimate: draw_delta_estimate(exact, &mut rng) as f64,
        mu: (n as f64).powf(d) * nl.powf(s.b) / n as f64,
    };
    // Greedy state: the pair plus vertices away from w.
    let mut greedy = vec![v2, v3];
    greedy.extend(
        a.iter()
            .copied()
            .filter(|&u| u != v2 && u != v3 && !g.has_edge(u, w)),
    );
    let rest: Vec<Vertex> = a.iter().copied().filter(|u| !greedy.contains(u)).collect();
    greedy.extend(rest);
    greedy.truncate(r_in);
    if !ctx.conditions(&greedy).marked(true) {
        return Ok(None);
    }
    let inner_hits = (0..s.samples)
        .filter(|_| {
            let b: Vec<Vertex> = sample(&mut rng, a.len(), r_in)
                .into_iter()
                .map(|j| a[j])
                .collect();
            ctx.conditions(&b).marked(true)
        })
        .count();
    let slack_hits = (0..s.samples)
        .filter(|_| {
            let b = subset_containing(&a, &[v2, v3], r_in, &mut rng);
            ctx.conditions(&b).few_neighbors
        })
        .count();
    let k = s.samples as f64;
    Ok(Some(EpsilonInstance {
        outer: outer_hits as f64 / k,
        inner: inner_hits as f64 / k,
        slack: slack_hits as f64 / k,
    }))
}

/// Marked fractions of both walks and the slack of condition (iii), on
/// instances that keep a triangle for the walks.
pub fn epsilon_suite(s: &EpsilonSettings) -> Result<Vec<SuiteOutcome>> {
    let found = (0..s.instances as u64)
        .into_par_iter()
        .map(|i| epsilon_instance(s, i))
        .collect::<Result<Vec<_>>>()?;
    let used: Vec<EpsilonInstance> = found.into_iter().flatten().collect();
    let nf = s.n as f64;
    let min = |f: fn(&EpsilonInstance) -> f64| used.iter().map(f).fold(f64::INFINITY, f64::min);
    let eps_bound = nf.powf(2.0 * (s.a - 1.0)) / 64.0;
    let inner_bound = nf.powf(2.0 * (s.b - s.a)) / 64.0;
    let slack = used.iter().map(|e| e.slack).sum::<f64>() / used.len().max(1) as f64;
    let ok = !used.is_empty();
    let detail = format!(
        "{} of {} instances admit a marked state",
        used.len(),
        s.instances
    );
    Ok(vec![
        SuiteOutcome {
            name: "epsilon".into(),
            passed: ok && min(|e| e.outer) >= eps_bound,
            trials: used.len(),
            statistic: min(|e| e.outer),
            threshold: eps_bound,
            detail: format!("smallest outer marked fraction; {detail}"),
        },
        SuiteOutcome {
            name: "epsilon-inner".into(),
            passed: ok && min(|e| e.inner) >= inner_bound,
            trials: used.len(),
            statistic: min(|e| e.inner),
            threshold: inner_bound,
            detail: format!("smallest inner marked fraction; {detail}"),
        },
        SuiteOutcome {
            name: "neighbour-slack".into(),
            passed: ok && slack >= 0.5,
            trials: used.len(),
            statistic: slack,
            threshold: 0.5,
            detail: "mean Pr[|N(w) ∩ B| <= 10 mu] over states holding the pair".into(),
        },
    ])
}

/// Partition invariants on random graphs of assorted size, density, skew
/// and threshold.
pub fn classifier_suite(graphs: usize, max_n: usize, seed: u64) -> Result<SuiteOutcome> {
    let results = (0..graphs as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i);
            let n = log_uniform(&mut rng, 8, max_n);
            let ell = rng.gen_range(1.0..1.9);
            let mut spec = GraphGenSpec::uniform(n, crate::graph::target_edges(n, ell), rng.gen());
            if i % 2 == 1 {
                spec = spec.with_profile(DegreeProfile::Skewed(rng.gen_range(0.3..1.2)));
            }
            let g = gen_gnm(&spec)?;
            let d = rng.gen_range(0.0..=1.0);
            Ok(classify(&g, d, &mut QueryLedger::new(), &mut rng).satisfies_invariants(&g))
        })
        .collect::<Result<Vec<bool>>>()?;
    let bad = results.iter().filter(|&&ok| !ok).count();
    Ok(SuiteOutcome {
        name: "classifier".into(),
        passed: bad == 0,
        trials: graphs,
        statistic: bad as f64,
        threshold: 0.0,
        detail: "partitions violating a containment or the size bound".into(),
    })
}

fn log_uniform(rng: &mut impl Rng, lo: usize, hi: usize) -> usize {
    let x = rng.gen_range((lo as f64).ln()..=(hi as f64).ln());
    (x.exp().round() as usize).clamp(lo, hi)
}

/// Smallest integer `c` with `c^2 >= num / den`.
fn ceil_sqrt_ratio(num: u128, den: u128) -> u128 {
    let mut c = ((num as f64 / den as f64).sqrt() as u128).saturating_sub(2);
    while c * c * den < num {
        c += 1;
    }
    c
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * b.abs().max(1.0)
}

/// One randomized check of every primitive against integer arithmetic.
fn primitive_check(rng: &mut ChaCha8Rng) -> Result<bool> {
    let n = rng.gen_range(1..=512usize);
    let density = rng.gen_range(0.0..0.3);
    let marks: Vec<bool> = (0..n).map(|_| rng.gen_bool(density)).collect();
    let sols: Vec<usize> = (0..n).filter(|&i| marks[i]).collect();
    let m = sols.len() as u128;
    let t = rng.gen_range(1..=4u32) as f64;
    let eval = |i: usize| marks[i];
    let p = PredicateSpec::new(n, t, &eval);
    let mut ok = true;

    let mut l = QueryLedger::new();
    let g = qcost::grover_find(&p, &mut l, rng)?;
    ok &= close(g.charged, ceil_sqrt_ratio(n as u128, m.max(1)) as f64 * t);
    ok &= match g.result {
        Some(i) => marks[i],
        None => sols.is_empty(),
    };

    let e = qcost::quantum_enumerate(&p, &mut l)?;
    ok &= close(
        e.charged,
        ceil_sqrt_ratio(n as u128 * m.max(1), 1) as f64 * t,
    );
    ok &= e.result == sols;

    let delta = rng.gen_range(1..=8u32);
    let c = qcost::quantum_count(n, sols.len(), delta as f64, &mut l, rng)?;
    let num = n as u128 * m.max(delta as u128);
    ok &= close(
        c.charged,
        ceil_sqrt_ratio(num, (delta * delta) as u128) as f64,
    );
    ok &= (c.result - sols.len() as f64).abs() <= delta as f64;

    let inv = rng.gen_range(1..=400u32);
    let a = qcost::amp_amplify(1.0 / inv as f64, t, || sols.first().copied(), &mut l)?;
    ok &= close(a.charged, ceil_sqrt_ratio(inv as u128, 1) as f64 * t);
    ok &= a.result == sols.first().copied();

    let costs: Vec<f64> = (0..rng.gen_range(1..20))
        .map(|_| rng.gen_range(0..10) as f64)
        .collect();
    let picks: Vec<usize> = (0..costs.len()).filter(|_| rng.gen_bool(0.2)).collect();
    let v = qcost::variable_cost_search(&costs, &picks, &mut l, rng)?;
    let sq: f64 = costs.iter().map(|q| q * q).sum();
    ok &= close(v.charged, sq.sqrt());
    ok &= match v.result {
        Some(i) => picks.contains(&i),
        None => picks.is_empty(),
    };

    let ground: Vec<usize> = (0..rng.gen_range(2..=12usize)).collect();
    let r = rng.gen_range(1..=ground.len());
    let target = rng.gen_range(0..ground.len() + 3);
    let marked = |s: &[usize]| s.contains(&target);
    let witness = || {
        (target < ground.len())
            .then(|| subset_containing(&ground, &[target], r, &mut ChaCha8Rng::seed_from_u64(0)))
    };
    let (setup, update, check) = (
        rng.gen_range(0..50) as f64,
        rng.gen_range(0..5) as f64,
        rng.gen_range(0..20) as f64,
    );
    let eps = 1.0 / rng.gen_range(1..=16u32) as f64;
    let spec = WalkSpec {
        ground_set: &ground,
        subset_size: r,
        setup,
        update,
        check,
        epsilon: eps,
        marked: &marked,
        witness_finder: &witness,
    };
    let w = qcost::run_johnson_walk(&spec, &mut l, rng, 0)?;
    ok &= close(
        w.charged,
        setup + ((r as f64).sqrt() * update + check) / eps.sqrt(),
    );
    ok &= w.result.marked_subset.is_some() == (target < ground.len());
    ok &= close(
        l.total(),
        g.charged + e.charged + c.charged + a.charged + v.charged + w.charged,
    );
    Ok(ok)
}

/// Randomized charge and payload checks of the primitives.
pub fn primitives_suite(checks: usize, seed: u64) -> Result<SuiteOutcome> {
    let results = (0..checks as u64)
        .into_par_iter()
        .map(|i| primitive_check(&mut rng_for(seed, i)))
        .collect::<Result<Vec<bool>>>()?;
    let bad = results.iter().filter(|&&ok| !ok).count();
    Ok(SuiteOutcome {
        name: "primitives".into(),
        passed: bad == 0,
        trials: checks,
        statistic: bad as f64,
        threshold: 0.0,
        detail: "checks with a wrong charge or payload".into(),
    })
}

/// Found/not-found agreement of the full pipeline with brute force.
pub fn correctness_suite(graphs: usize, max_n: usize, seed: u64) -> Result<SuiteOutcome> {
    const ELLS: [f64; 6] = [1.0, 1.2, 1.45, 1.55, 1.8, 2.0];
    let results = (0..graphs as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i);
            let n = log_uniform(&mut rng, 8, max_n);
            let ell = ELLS[i as usize % ELLS.len()];
            let family = if (i / 2) % 2 == 0 {
                Family::Gnm
            } else {
                Family::Skewed(0.8)
            };
            let g = generate_graph(family, n, ell, rng.gen(), i % 2 == 0)?;
            let (report, row) = run_trial(&g, i, None)?;
            let sound = report.triangle.is_none_or(|t| t.is_in(&g));
            Ok(row.matches() && sound)
        })
        .collect::<Result<Vec<bool>>>()?;
    let bad = results.iter().filter(|&&ok| !ok).count();
    Ok(SuiteOutcome {
        name: "correctness".into(),
        passed: bad == 0,
        trials: graphs,
        statistic: bad as f64,
        threshold: 0.0,
        detail: "runs disagreeing with brute force".into(),
    })
}

/// Sizes of the default `verify` run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifySettings {
    pub seed: u64,
    pub lemma1: Lemma1Settings,
    pub lemma3_n: usize,
    pub lemma3_trials: usize,
    pub epsilon: EpsilonSettings,
    pub classifier_graphs: usize,
    pub primitive_checks: usize,
    pub correctness_graphs: usize,
    pub max_n: usize,
}

impl VerifySettings {
    pub fn new(seed: u64) -> Self {
        VerifySettings {
            seed,
            lemma1: Lemma1Settings {
                seed,
                ..Lemma1Settings::default()
            },
            lemma3_n: 256,
            lemma3_trials: 500,
            epsilon: EpsilonSettings {
                seed,
                ..EpsilonSettings::default()
            },
            classifier_graphs: 1000,
            primitive_checks: 10_000,
            correctness_graphs: 2000,
            max_n: 512,
        }
    }
}

pub fn run_all(s: &VerifySettings) -> Result<Vec<SuiteOutcome>> {
    let mut out = vec![
        lemma1_suite(&s.lemma1)?,
        lemma3_suite(s.lemma3_n, s.lemma3_trials, 0.5, 0.5, 0.8, s.seed)?,
    ];
    out.extend(epsilon_suite(&s.epsilon)?);
    out.push(classifier_suite(
        s.classifier_graphs,
        s.max_n.max(1024),
        s.seed,
    )?);
    out.push(primitives_suite(s.primitive_checks, s.seed)?);
    out.push(correctness_suite(s.correctness_graphs, s.max_n, s.seed)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_square_root_ceiling() {
        assert_eq!(ceil_sqrt_ratio(100, 4), 5);
        assert_eq!(ceil_sqrt_ratio(101, 4), 6);
        assert_eq!(ceil_sqrt_ratio(0, 1), 0);
        assert_eq!(ceil_sqrt_ratio(1024 * 32, 16), 46);
    }

    #[test]
    fn small_suites_pass() {
        assert!(
            lemma1_suite(&Lemma1Settings {
                n: 10,
                trials: 20,
                seed: 3,
                ..Default::default()
            })
            .unwrap()
            .passed
        );
        assert!(primitives_suite(200, 3).unwrap().passed);
        assert!(classifier_suite(50, 256, 3).unwrap().passed);
        assert!(correctness_suite(30, 128, 3).unwrap().passed);
    }

    #[test]
    fn empty_sample_is_not_good() {
        let s = Lemma1Settings {
            n: 12,
            trials: 20,
            seed: 4,
            scale: 0.0,
            ks: vec![0.5],
            min_density: 0.9,
        };
        let out = lemma1_suite(&s).unwrap();
        assert!(!out.passed, "{out}");
    }
}
