//! Flat `key = value` experiment configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::bench::experiments::{Family, PlanOverride};
use crate::error::{Error, Result};
use crate::exponent::{Assignment, Var};
use crate::plan::{Combination, ParameterPlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Run,
    Sweep,
    Verify,
    Optimize,
    Generate,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "run" => Ok(Mode::Run),
            "sweep" => Ok(Mode::Sweep),
            "verify" => Ok(Mode::Verify),
            "optimize" => Ok(Mode::Optimize),
            "generate" => Ok(Mode::Generate),
            _ => Err(Error::Config(format!("unknown mode {s:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Run => "run",
            Mode::Sweep => "sweep",
            Mode::Verify => "verify",
            Mode::Optimize => "optimize",
            Mode::Generate => "generate",
        })
    }
}

/// Every key accepted in a config file.
pub const CONFIG_KEYS: [&str; 12] = [
    "mode",
    "n",
    "ell",
    "trials",
    "seed",
    "plan_file",
    "out",
    "grid_step",
    "family",
    "planted",
    "graph",
    "sample_scale",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub ns: Vec<usize>,
    pub ells: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub plan: Option<PlanOverride>,
    pub out: Option<PathBuf>,
    /// Step of the `ell` grid used by `optimize`.
    pub grid_step: f64,
    pub family: Family,
    pub planted: bool,
    /// Edge-list file used by `run` instead of a generated graph.
    pub graph: Option<PathBuf>,
    /// Sample-size multiplier in the k-good suite of `verify`.
    pub sample_scale: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            mode: Mode::Run,
            ns: vec![256],
            ells: vec![1.5],
            trials: 1,
            seed: 0,
            plan: None,
            out: None,
            grid_step: 1e-3,
            family: Family::Gnm,
            planted: false,
            graph: None,
            sample_scale: 1.0,
        }
    }
}

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// skipped; a repeated key keeps its last value.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn bad(key: &str, v: &str) -> Error {
    Error::Config(format!("bad value {v:?} for {key}"))
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| bad(key, v))
}

/// A decimal or a fraction `p/q`.
pub fn parse_real(key: &str, v: &str) -> Result<f64> {
    let x = match v.split_once('/') {
        Some((p, q)) => parse_num::<f64>(key, p.trim())? / parse_num::<f64>(key, q.trim())?,
        None => parse_num(key, v)?,
    };
    if x.is_finite() {
        Ok(x)
    } else {
        Err(bad(key, v))
    }
}

/// `256`, `64,128,256`, or a doubling range `64..2048`.
pub fn parse_sizes(v: &str) -> Result<Vec<usize>> {
    if let Some((lo, hi)) = v.split_once("..") {
        let (lo, hi): (usize, usize) = (parse_num("n", lo.trim())?, parse_num("n", hi.trim())?);
        if lo == 0 || lo > hi {
            return Err(bad("n", v));
        }
        let mut out = vec![];
        let mut x = lo;
        while x <= hi {
            out.push(x);
            x *= 2;
        }
        return Ok(out);
    }
    v.split(',').map(|s| parse_num("n", s.trim())).collect()
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(bad(key, v)),
    }
}

/// Reads a plan file: `combination = <name>` plus any of `d`, `a1`..`k3`,
/// `b4`.
pub fn read_plan_file(path: &Path) -> Result<PlanOverride> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read plan file {}: {e}", path.display())))?;
    parse_plan(&text)
}

pub fn parse_plan(text: &str) -> Result<PlanOverride> {
    let pairs = parse_pairs(text)?;
    let name = pairs
        .get("combination")
        .ok_or_else(|| Error::Config("plan needs a combination".into()))?;
    let combination = Combination::from_name(name)
        .ok_or_else(|| Error::Config(format!("unknown combination {name:?}")))?;
    let mut at = Assignment::new();
    for (k, v) in &pairs {
        if k == "combination" {
            continue;
        }
        let var = Var::PARAMS
            .into_iter()
            .find(|p| p.name() == k)
            .ok_or_else(|| Error::Config(format!("unknown plan key {k:?}")))?;
        at.insert(var, parse_real(k, v)?);
    }
    let plan = ParameterPlan::from_assignment(&at).map_err(|e| Error::Config(e.to_string()))?;
    plan.validate().map_err(|e| Error::Config(e.to_string()))?;
    Ok(PlanOverride { combination, plan })
}

impl ExperimentConfig {
    /// Applies `pairs` on top of `self`.
    pub fn apply(&mut self, pairs: &BTreeMap<String, String>) -> Result<()> {
        for (k, v) in pairs {
            match k.as_str() {
                "mode" => self.mode = v.parse()?,
                "n" => self.ns = parse_sizes(v)?,
                "ell" => {
                    self.ells = v
                        .split(',')
                        .map(|s| parse_real("ell", s.trim()))
                        .collect::<Result<_>>()?
                }
                "trials" => self.trials = parse_num(k, v)?,
                "seed" => self.seed = parse_num(k, v)?,
                "plan_file" => self.plan = Some(read_plan_file(Path::new(v))?),
                "out" => self.out = Some(PathBuf::from(v)),
                "grid_step" => self.grid_step = parse_real(k, v)?,
                "family" => self.family = v.parse()?,
                "planted" => self.planted = parse_bool(k, v)?,
                "graph" => self.graph = Some(PathBuf::from(v)),
                "sample_scale" => self.sample_scale = parse_real(k, v)?,
                _ => return Err(Error::Config(format!("unknown key {k:?}"))),
            }
        }
        Ok(())
    }

    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> Result<Self> {
        let mut c = ExperimentConfig::default();
        c.apply(pairs)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.trials < 1 {
            return fail("trials must be at least 1".into());
        }
        if self.ns.is_empty() || self.ns.iter().any(|&n| n < 4) {
            return fail("every n must be at least 4".into());
        }
        if self.ells.is_empty() || self.ells.iter().any(|l| !(0.0..=2.0).contains(l)) {
            return fail("ell must lie in [0, 2]".into());
        }
        if !(self.grid_step > 0.0 && self.grid_step <= 0.5) {
            return fail("grid_step must lie in (0, 0.5]".into());
        }
        if !(self.sample_scale >= 0.0) {
            return fail("sample_scale must be nonnegative".into());
        }
        Ok(())
    }
}
