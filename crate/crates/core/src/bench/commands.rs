//! The five commands of the `sparsetri` binary. Human-readable output goes to
//! `report`; CSV goes to the configured output file, or to `report` after
//! the summary when none is set.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};

use crate::bench::config::ExperimentConfig;
use crate::bench::experiments::{
    generate_graph, run_sweep, run_trial, write_rows, RunRow, SweepSpec,
};
use crate::bench::suites::{run_all, SuiteOutcome, VerifySettings};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::optimizer::sweep::{sweep_curve, verify_closed_forms, write_curve_csv};
use crate::pipeline::symbolic::check_all;
use crate::plan::Regime;
use crate::scalar::Scalar;
use crate::Rational;

/// How a command ended when it did not error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Some run disagreed with brute force.
    Mismatch,
    /// Some verification check failed.
    CheckFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 2,
            Status::CheckFailed => 3,
        }
    }
}

/// Exit code for an error: 4 for configuration problems, 1 otherwise.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::EllOutOfRange(_) | Error::ParameterViolation(_) => 4,
        _ => 1,
    }
}

fn with_output(
    cfg: &ExperimentConfig,
    report: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match &cfg.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(report),
    }
}

fn load_graph(cfg: &ExperimentConfig) -> Result<Option<Graph>> {
    match &cfg.graph {
        Some(p) => {
            let f = File::open(p)
                .map_err(|e| Error::Config(format!("cannot open graph {}: {e}", p.display())))?;
            Ok(Some(Graph::read_edge_list(BufReader::new(f))?))
        }
        None => Ok(None),
    }
}

pub fn cmd_run(cfg: &ExperimentConfig, report: &mut dyn Write) -> Result<Status> {
    let given = load_graph(cfg)?;
    let mut rows: Vec<RunRow> = Vec::new();
    let mut instances: Vec<(Option<f64>, usize)> = Vec::new();
    match &given {
        Some(g) => instances.push((None, g.n())),
        None => {
            for &n in &cfg.ns {
                for &ell in &cfg.ells {
                    instances.push((Some(ell), n));
                }
            }
        }
    }
    for (ell, n) in instances {
        for t in 0..cfg.trials as u64 {
            let seed = cfg.seed.wrapping_add(t);
            let g = match (&given, ell) {
                (Some(g), _) => g.clone(),
                (None, Some(ell)) => generate_graph(cfg.family, n, ell, seed, cfg.planted)?,
                (None, None) => unreachable!(),
            };
            let (r, row) = run_trial(&g, seed, cfg.plan.as_ref())?;
            writeln!(
                report,
                "n={} m={} ell={:.4} seed={} combination={} d={:.4} high={} low={} found={} expected={} total={:.1}",
                row.n,
                row.m,
                r.ell,
                seed,
                r.combination,
                r.plan.d,
                r.high,
                r.low,
                row.found,
                row.expected,
                row.total
            )?;
            for (label, c) in &r.charges {
                writeln!(report, "  {label:>8} {c:.1}")?;
            }
            if let Some(t) = r.triangle {
                writeln!(report, "  triangle {:?}", t.sorted())?;
            }
            rows.push(row);
        }
    }
    with_output(cfg, report, |w| write_rows(w, &rows))?;
    Ok(if rows.iter().all(RunRow::matches) {
        Status::Ok
    } else {
        Status::Mismatch
    })
}

pub fn cmd_sweep(cfg: &ExperimentConfig, report: &mut dyn Write) -> Result<Status> {
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for &ell in &cfg.ells {
        let spec = SweepSpec {
            family: cfg.family,
            ns: cfg.ns.clone(),
            ell,
            trials: cfg.trials,
            seed: cfg.seed,
            planted: cfg.planted,
            plan: cfg.plan.clone(),
        };
        let out = run_sweep(&spec)?;
        let target = Regime::of(&ell)?.claimed_exponent(&ell);
        match &out.fit {
            Some(f) => writeln!(
                report,
                "ell={ell:.4} slope={:.4} intercept={:.4} r2={:.4} n={}..{} target={target:.4}",
                f.slope, f.intercept, f.r_squared, f.n_min, f.n_max
            )?,
            None => writeln!(
                report,
                "ell={ell:.4} slope=n/a (need two sizes) target={target:.4}"
            )?,
        }
        for (n, mean) in &out.means {
            writeln!(report, "  n={n:<6} mean_total={mean:.1}")?;
        }
        mismatches += out.mismatches();
        rows.extend(out.rows);
    }
    if mismatches > 0 {
        writeln!(report, "{mismatches} runs disagreed with brute force")?;
    }
    with_output(cfg, report, |w| write_rows(w, &rows))?;
    Ok(if mismatches == 0 {
        Status::Ok
    } else {
        Status::Mismatch
    })
}

/// Verification outcomes for `cfg`, with the symbolic cost check appended.
pub fn verify_outcomes(cfg: &ExperimentConfig) -> Result<Vec<SuiteOutcome>> {
    let mut s = VerifySettings::new(cfg.seed);
    s.lemma1.scale = cfg.sample_scale;
    let mut out = run_all(&s)?;
    let sym = check_all(12);
    let bad: Vec<String> = sym
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.prop.label().to_string())
        .collect();
    let worst = sym
        .iter()
        .map(|r| r.worst_gap)
        .fold(f64::NEG_INFINITY, f64::max);
    out.push(SuiteOutcome {
        name: "cost-structure".into(),
        passed: bad.is_empty(),
        trials: sym.len(),
        statistic: worst,
        threshold: 0.0,
        detail: if bad.is_empty() {
            "implemented exponents match the term catalog at the closed forms".into()
        } else {
            format!("mismatch in {}", bad.join(", "))
        },
    });
    Ok(out)
}

pub fn cmd_verify(cfg: &ExperimentConfig, report: &mut dyn Write) -> Result<Status> {
    let out = verify_outcomes(cfg)?;
    for o in &out {
        writeln!(report, "{o}")?;
    }
    Ok(if out.iter().all(|o| o.passed) {
        Status::Ok
    } else {
        Status::CheckFailed
    })
}

/// Per-regime summary of the closed-form checks.
#[derive(Debug, Clone)]
pub struct RegimeRow {
    pub regime: Regime,
    pub lo: Rational,
    pub hi: Rational,
    pub formula: &'static str,
    pub combination: String,
    /// Largest `|LP optimum - claimed|` over the checked points.
    pub max_lp_gap: f64,
    /// Largest `max term - claimed` at the closed-form parameters.
    pub max_term_excess: f64,
    pub passed: bool,
}

pub fn regime_table(points: usize) -> Result<Vec<RegimeRow>> {
    let checks = verify_closed_forms::<Rational>(points)?;
    Ok(Regime::ALL
        .into_iter()
        .map(|regime| {
            let mine: Vec<_> = checks.iter().filter(|c| c.regime == regime).collect();
            let (lo, hi) = regime.bounds::<Rational>();
            RegimeRow {
                regime,
                lo,
                hi,
                formula: regime.claimed_formula(),
                combination: regime.combination().to_string(),
                max_lp_gap: mine
                    .iter()
                    .map(|c| (c.lp_optimum.clone() - c.claimed.clone()).approx().abs())
                    .fold(0.0, f64::max),
                max_term_excess: mine
                    .iter()
                    .map(|c| (c.max_term.clone() - c.claimed.clone()).approx())
                    .fold(f64::NEG_INFINITY, f64::max),
                passed: mine.iter().all(|c| c.passed()),
            }
        })
        .collect())
}

/// The regime boundaries the curve is expected to kink at.
pub fn expected_breakpoints() -> Vec<Rational> {
    [(7, 6), (7, 5), (3, 2), (13, 8)]
        .into_iter()
        .map(|(p, q)| Rational::ratio(p, q))
        .collect()
}

pub fn cmd_optimize(cfg: &ExperimentConfig, report: &mut dyn Write) -> Result<Status> {
    let table = regime_table(50)?;
    writeln!(
        report,
        "{:<11} {:<12} {:<20} {:<16} {:>10} {:>10}  ok",
        "regime", "ell", "exponent", "procedures", "lp_gap", "term_gap"
    )?;
    for r in &table {
        writeln!(
            report,
            "{:<11} {:<12} {:<20} {:<16} {:>10.2e} {:>10.2e}  {}",
            format!("{:?}", r.regime),
            format!(
                "{}{}, {}]",
                if r.regime == Regime::VerySparse {
                    "["
                } else {
                    "("
                },
                r.lo,
                r.hi
            ),
            r.formula,
            r.combination,
            r.max_lp_gap,
            r.max_term_excess,
            if r.passed { "yes" } else { "no" }
        )?;
    }
    let curve = sweep_curve(cfg.grid_step)?;
    let found: Vec<Rational> = curve
        .regime_breakpoints()
        .iter()
        .map(|b| b.ell.clone())
        .collect();
    let list = |v: &[Rational]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    writeln!(report, "breakpoints: {}", list(&found))?;
    let others: Vec<Rational> = curve
        .breakpoints
        .iter()
        .filter(|b| !b.is_regime_boundary())
        .map(|b| b.ell.clone())
        .collect();
    if !others.is_empty() {
        writeln!(report, "other kinks: {}", list(&others))?;
    }
    with_output(cfg, report, |w| write_curve_csv(&curve.points, w))?;
    let ok = table.iter().all(|r| r.passed) && found == expected_breakpoints();
    Ok(if ok { Status::Ok } else { Status::CheckFailed })
}

pub fn cmd_generate(cfg: &ExperimentConfig, report: &mut dyn Write) -> Result<Status> {
    let g = generate_graph(cfg.family, cfg.ns[0], cfg.ells[0], cfg.seed, cfg.planted)?;
    with_output(cfg, report, |w| g.write_edge_list(w))?;
    Ok(Status::Ok)
}

pub fn run_command(cfg: &ExperimentConfig, report: &mut dyn Write) -> Result<Status> {
    use crate::bench::config::Mode;
    match cfg.mode {
        Mode::Run => cmd_run(cfg, report),
        Mode::Sweep => cmd_sweep(cfg, report),
        Mode::Verify => cmd_verify(cfg, report),
        Mode::Optimize => cmd_optimize(cfg, report),
        Mode::Generate => cmd_generate(cfg, report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::config::Mode;

    fn cfg(mode: Mode) -> ExperimentConfig {
        ExperimentConfig {
            mode,
            ns: vec![64],
            ells: vec![1.5],
            seed: 7,
            ..Default::default()
        }
    }

    #[test]
    fn run_is_deterministic() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        assert_eq!(cmd_run(&cfg(Mode::Run), &mut a).unwrap(), Status::Ok);
        cmd_run(&cfg(Mode::Run), &mut b).unwrap();
        assert_eq!(a, b);
        assert!(String::from_utf8(a)
            .unwrap()
            .contains(crate::bench::RUN_CSV_HEADER));
    }

    #[test]
    fn generated_graph_round_trips() {
        let mut buf = Vec::new();
        cmd_generate(&cfg(Mode::Generate), &mut buf).unwrap();
        let g = Graph::read_edge_list(buf.as_slice()).unwrap();
        assert_eq!(g.n(), 64);
        assert_eq!(g.m(), crate::graph::target_edges(64, 1.5));
    }
}
