//! Graph families, single trials and scaling sweeps.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bench::fit::{fit_loglog, FitResult};
use crate::error::{Error, Result};

use crate::graph::{
    brute_force_triangle, gen_c5_blowup, gen_gnm, target_edges, DegreeProfile, Graph, GraphGenSpec,
    QueryLedger,
};
use crate::pipeline::{find_triangle, find_triangle_with_plan, RunReport};
use crate::plan::{Combination, ParameterPlan, Prop};

/// Random graph family used by the experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Gnm,
    Skewed(f64),
    /// Triangle-free blow-up of a 5-cycle.
    C5Blowup,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "gnm" => Ok(Family::Gnm),
            "c5-blowup" => Ok(Family::C5Blowup),
            _ => match s.strip_prefix("skewed:") {
                Some(e) => e
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite() && *x >= 0.0)
                    .map(Family::Skewed)
                    .ok_or_else(|| Error::Config(format!("bad skew exponent in {s:?}"))),
                None => Err(Error::Config(format!("unknown family {s:?}"))),
            },
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Gnm => f.write_str("gnm"),
            Family::Skewed(e) => write!(f, "skewed:{e}"),
            Family::C5Blowup => f.write_str("c5-blowup"),
        }
    }
}

/// Seed for the instance `(n, seed)`; distinct `n` get unrelated streams.
pub fn instance_seed(n: usize, seed: u64) -> u64 {
    let mut z = seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Builds the graph of one trial. A planted triangle sits on three vertices
/// chosen from the instance seed.
pub fn generate_graph(
    family: Family,
    n: usize,
    ell: f64,
    seed: u64,
    planted: bool,
) -> Result<Graph> {
    let s = instance_seed(n, seed);
    let m = target_edges(n, ell);
    match family {
        Family::C5Blowup => {
            let size = |i: usize| n / 5 + usize::from(i < n % 5);
            let allowed: usize = (0..5).map(|i| size(i) * size((i + 1) % 5)).sum();
            gen_c5_blowup(n, m.min(allowed), s)
        }
        Family::Gnm | Family::Skewed(_) => {
            let mut spec = GraphGenSpec::uniform(n, m.max(if planted { 3 } else { 0 }), s);
            if let Family::Skewed(e) = family {
                spec = spec.with_profile(DegreeProfile::Skewed(e));
            }
            if planted {
                let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x5EED);
                let t = sample(&mut rng, n, 3).into_vec();
                spec = spec.with_planted([t[0], t[1], t[2]]);
            }
            gen_gnm(&spec)
        }
    }
}

/// Optional explicit plan replacing the one chosen from `ell`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanOverride {
    pub combination: Combination,
    pub plan: ParameterPlan<f64>,
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRow {
    pub n: usize,
    pub m: usize,
    pub ell: f64,
    pub seed: u64,
    pub found: bool,
    pub expected: bool,
    /// `Q1`..`Q7`; the seventh column also carries the baseline charge.
    pub q: [f64; 7],
    pub total: f64,
}

pub const RUN_CSV_HEADER: &str = "n,m,ell,seed,found,q1,q2,q3,q4,q5,q6,q7,total";

impl RunRow {
    pub fn from_report(g: &Graph, seed: u64, r: &RunReport, expected: bool) -> RunRow {
        let mut q = [0.0; 7];
        for (i, p) in Prop::ALL.iter().enumerate().take(6) {
            q[i] = r.charge(p.label());
        }
        q[6] = r.apex_charge();
        RunRow {
            n: g.n(),
            m: g.m(),
            ell: r.ell,
            seed,
            found: r.triangle.is_some(),
            expected,
            q,
            total: r.total,
        }
    }

    pub fn matches(&self) -> bool {
        self.found == self.expected
    }

    pub fn csv(&self) -> String {
        let mut s = format!(
            "{},{},{:.6},{},{}",
            self.n, self.m, self.ell, self.seed, self.found as u8
        );
        for v in self.q.iter().chain([&self.total]) {
            s.push_str(&format!(",{v:.3}"));
        }
        s
    }
}

/// Runs the pipeline once on `g` and compares with the exhaustive answer.
pub fn run_trial(g: &Graph, seed: u64, plan: Option<&PlanOverride>) -> Result<(RunReport, RunRow)> {
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(g.n(), seed) ^ 0xA11CE);
    let mut ledger = QueryLedger::new();
    let report = match plan {
        Some(p) => find_triangle_with_plan(g, p.combination, &p.plan, &mut ledger, &mut rng)?,
        None => find_triangle(g, &mut ledger, &mut rng)?,
    };
    let all: Vec<_> = (0..g.n()).collect();
    let expected = brute_force_triangle(g, &all, &all).is_some();
    let row = RunRow::from_report(g, seed, &report, expected);
    Ok((report, row))
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: Family,
    pub ns: Vec<usize>,
    pub ell: f64,
    pub trials: usize,
    pub seed: u64,
    pub planted: bool,
    pub plan: Option<PlanOverride>,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    /// Rows sorted by `(n, seed)`.
    pub rows: Vec<RunRow>,
    /// `(n, mean total)`.
    pub means: Vec<(usize, f64)>,
    pub fit: Option<FitResult>,
}

impl SweepOutcome {
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| !r.matches()).count()
    }
}

/// Trials `seed, seed + 1, ...` at every `n`, in parallel, followed by a
/// log-log fit of the mean total charge.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    let jobs: Vec<(usize, u64)> = spec
        .ns
        .iter()
        .flat_map(|&n| (0..spec.trials as u64).map(move |t| (n, spec.seed.wrapping_add(t))))
        .collect();
    let mut rows = jobs
        .par_iter()
        .map(|&(n, seed)| {
            let g = generate_graph(spec.family, n, spec.ell, seed, spec.planted)?;
            run_trial(&g, seed, spec.plan.as_ref()).map(|(_, row)| row)
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.n, r.seed));
    let means: Vec<(usize, f64)> = spec
        .ns
        .iter()
        .map(|&n| {
            let at: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.total).collect();
            (n, at.iter().sum::<f64>() / at.len().max(1) as f64)
        })
        .collect();
    let fit = fit_loglog(&means, spec.ell);
    Ok(SweepOutcome { rows, means, fit })
}

pub fn write_rows<W: Write>(mut w: W, rows: &[RunRow]) -> Result<()> {
    writeln!(w, "{RUN_CSV_HEADER}")?;
    for r in rows {
        writeln!(w, "{}", r.csv())?;
    }
    Ok(())
}
