//! Envelope sweeps over `ell`, breakpoint detection, closed-form checks and
//! CSV export of the curve.

use std::io::Write;

use num_rational::BigRational;
use num_traits::FromPrimitive;
use rayon::prelude::*;

use crate::error::Result;
use crate::exponent::{Assignment, Var};
use crate::optimizer::minmax::{solve_terms_at, LpSolution};
use crate::optimizer::terms::{combination_terms, regime_display_terms};
use crate::plan::{Combination, ParameterPlan, Regime};
use crate::scalar::Scalar;
use crate::Rational;

/// Lower envelope value at one `ell`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint<T> {
    pub ell: T,
    pub exponent: T,
    pub combination: Combination,
    /// Optimum of the winning combination (the baseline has no parameters
    /// besides `d = 0`).
    pub solution: LpSolution<T>,
    /// Optimum of every combination, in [`Combination::ALL`] order.
    pub per_combination: Vec<(Combination, T)>,
}

/// Optimum of one combination at `ell`.
pub fn combination_optimum<T: Scalar>(c: Combination, ell: &T) -> Result<LpSolution<T>> {
    let mut s = solve_terms_at(&combination_terms::<T>(c), ell)?;
    if c == Combination::Buhrman {
        s.parameters.insert(Var::D, T::zero());
    }
    Ok(s)
}

/// Envelope value at `ell`. Ties go to the earlier combination in
/// [`Combination::ALL`], i.e. to the sparser regime.
pub fn envelope_point<T: Scalar>(ell: &T) -> Result<CurvePoint<T>> {
    let mut best: Option<LpSolution<T>> = None;
    let mut best_c = Combination::Buhrman;
    let mut per = Vec::with_capacity(4);
    for c in Combination::ALL {
        let s = combination_optimum(c, ell)?;
        per.push((c, s.optimal_exponent.clone()));
        let better = match &best {
            None => true,
            Some(b) => b.optimal_exponent.definitely_gt(&s.optimal_exponent),
        };
        if better {
            best = Some(s);
            best_c = c;
        }
    }
    let solution = best.expect("at least one combination");
    Ok(CurvePoint {
        ell: ell.clone(),
        exponent: solution.optimal_exponent.clone(),
        combination: best_c,
        solution,
        per_combination: per,
    })
}

/// Envelope at every grid value, solved in parallel.
pub fn sweep<T: Scalar>(grid: &[T]) -> Result<Vec<CurvePoint<T>>> {
    grid.par_iter().map(envelope_point).collect()
}

/// `[lo, hi]` split into `intervals` equal steps, endpoints included.
pub fn linspace<T: Scalar>(lo: &T, hi: &T, intervals: usize) -> Vec<T> {
    let k = T::from_usize(intervals).expect("grid size");
    (0..=intervals)
        .map(|i| {
            lo.clone()
                + (hi.clone() - lo.clone()) * T::from_usize(i).expect("grid index") / k.clone()
        })
        .collect()
}

/// What happens at a breakpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakKind {
    /// The optimal combination changes.
    CombinationChange,
    /// Same combination on both sides, but its active terms change.
    ActiveSetChange,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Breakpoint<T> {
    pub ell: T,
    pub exponent: T,
    pub kind: BreakKind,
    pub left: Combination,
    pub right: Combination,
}

impl<T: Scalar> Breakpoint<T> {
    /// Kinks of the edge-sampling baseline's own `max(1, 1/2 + ell/2)`
    /// are not boundaries between algorithmic regimes.
    pub fn is_regime_boundary(&self) -> bool {
        !(self.left == Combination::Buhrman && self.right == Combination::Buhrman)
    }
}

fn slope<T: Scalar>(a: &CurvePoint<T>, b: &CurvePoint<T>) -> T {
    (b.exponent.clone() - a.exponent.clone()) / (b.ell.clone() - a.ell.clone())
}

/// Intersection of the line through `p0, p1` with the line through `q0, q1`.
fn intersect<T: Scalar>(
    p0: &CurvePoint<T>,
    p1: &CurvePoint<T>,
    q0: &CurvePoint<T>,
    q1: &CurvePoint<T>,
) -> Option<(T, T)> {
    let s1 = slope(p0, p1);
    let s2 = slope(q0, q1);
    let ds = s1.clone() - s2.clone();
    if ds.near_zero() {
        return None;
    }
    // p0.e + s1 (x - p0.l) = q0.e + s2 (x - q0.l)
    let x = (q0.exponent.clone() - p0.exponent.clone() + s1.clone() * p0.ell.clone()
        - s2 * q0.ell.clone())
        / ds;
    let y = p0.exponent.clone() + s1 * (x.clone() - p0.ell.clone());
    Some((x, y))
}

/// Groups of grid indices around which the envelope slope changes, as
/// `(first, last)` interior indices.
fn kink_groups<T: Scalar>(points: &[CurvePoint<T>], slope_tol: f64) -> Vec<(usize, usize)> {
    let tol = T::from_f64(slope_tol).expect("tolerance");
    let flagged: Vec<usize> = (1..points.len().saturating_sub(1))
        .filter(|&i| {
            let d = slope(&points[i - 1], &points[i]) - slope(&points[i], &points[i + 1]);
            d.abs() > tol
        })
        .collect();
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for i in flagged {
        match groups.last_mut() {
            Some((_, last)) if *last + 1 == i => *last = i,
            _ => groups.push((i, i)),
        }
    }
    groups
}

/// Locates the kinks of a sampled envelope. Each is placed at the
/// intersection of the straight pieces on either side of it, which is exact
/// when the envelope is piecewise linear and the grid resolves every piece.
pub fn detect_breakpoints<T: Scalar>(
    points: &[CurvePoint<T>],
    slope_tol: f64,
) -> Vec<Breakpoint<T>> {
    kink_groups(points, slope_tol)
        .into_iter()
        .filter_map(|(p, q)| {
            let (x, y) = intersect(&points[p - 1], &points[p], &points[q], &points[q + 1])?;
            let left = points[p - 1].combination;
            let right = points[q + 1].combination;
            let kind = if left == right {
                BreakKind::ActiveSetChange
            } else {
                BreakKind::CombinationChange
            };
            Some(Breakpoint {
                ell: x,
                exponent: y,
                kind,
                left,
                right,
            })
        })
        .collect()
}

/// Result of a full sweep over `[0, 2]`.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub points: Vec<CurvePoint<f64>>,
    /// Every kink, refined in exact arithmetic.
    pub breakpoints: Vec<Breakpoint<Rational>>,
}

impl SweepReport {
    pub fn regime_breakpoints(&self) -> Vec<&Breakpoint<Rational>> {
        self.breakpoints
            .iter()
            .filter(|b| b.is_regime_boundary())
            .collect()
    }
}

/// Sweeps `[0, 2]` in floating point with the given step, detects kinks, and
/// re-solves the four neighbouring grid points exactly to pin each kink down.
pub fn sweep_curve(step: f64) -> Result<SweepReport> {
    let intervals = ((2.0 / step).round() as usize).max(4);
    let exact_at = |i: usize| Rational::ratio(2 * i as i64, intervals as i64);
    let grid: Vec<f64> = (0..=intervals)
        .map(|i| 2.0 * i as f64 / intervals as f64)
        .collect();
    let points = sweep(&grid)?;
    let groups = kink_groups(&points, 1e-6);
    let mut breakpoints = groups
        .par_iter()
        .map(|&(p, q)| -> Result<Vec<Breakpoint<Rational>>> {
            let quad: Vec<CurvePoint<Rational>> = [p - 1, p, q, q + 1]
                .iter()
                .map(|&i| envelope_point(&exact_at(i)))
                .collect::<Result<_>>()?;
            if let Some(b) = verified_breakpoint(&quad)? {
                return Ok(vec![b]);
            }
            refine_bracket(exact_at(p - 1), exact_at(q + 1), REFINE_DEPTH)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    breakpoints.sort_by(|a, b| a.ell.cmp(&b.ell));
    breakpoints.dedup_by(|a, b| a.ell == b.ell);
    Ok(SweepReport {
        points,
        breakpoints,
    })
}

const REFINE_DEPTH: usize = 8;
const REFINE_SPLIT: i64 = 8;

/// The kink between `ex[1]` and `ex[2]`, if the straight pieces through
/// `ex[0], ex[1]` and `ex[2], ex[3]` meet inside that bracket on the exact
/// envelope. Fails when the bracket holds more than one kink.
fn verified_breakpoint(ex: &[CurvePoint<Rational>]) -> Result<Option<Breakpoint<Rational>>> {
    let Some((x, y)) = intersect(&ex[0], &ex[1], &ex[2], &ex[3]) else {
        return Ok(None);
    };
    if x < ex[1].ell || x > ex[2].ell || envelope_point(&x)?.exponent != y {
        return Ok(None);
    }
    let (left, right) = (ex[0].combination, ex[3].combination);
    let kind = if left == right {
        BreakKind::ActiveSetChange
    } else {
        BreakKind::CombinationChange
    };
    Ok(Some(Breakpoint {
        ell: x,
        exponent: y,
        kind,
        left,
        right,
    }))
}

/// Resamples `[lo, hi]` exactly (plus one step on each side, inside
/// `[0, 2]`) and searches each kink group again, splitting groups that hold
/// more than one kink into their grid intervals.
fn refine_bracket(lo: Rational, hi: Rational, depth: usize) -> Result<Vec<Breakpoint<Rational>>> {
    let step = (hi.clone() - lo.clone()) / Rational::from_integer(REFINE_SPLIT.into());
    let (zero, two) = (
        Rational::from_integer(0.into()),
        Rational::from_integer(2.into()),
    );
    let points: Vec<CurvePoint<Rational>> = (-1..=REFINE_SPLIT + 1)
        .map(|i| lo.clone() + step.clone() * Rational::from_integer(i.into()))
        .filter(|l| *l >= zero && *l <= two)
        .map(|l| envelope_point(&l))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (p, q) in kink_groups(&points, 1e-9) {
        let quad = [
            points[p - 1].clone(),
            points[p].clone(),
            points[q].clone(),
            points[q + 1].clone(),
        ];
        if let Some(b) = verified_breakpoint(&quad)? {
            if b.ell >= lo && b.ell <= hi {
                out.push(b);
            }
        } else if depth > 0 {
            for i in p - 1..=q {
                let (a, b) = (&points[i].ell, &points[i + 1].ell);
                if *b > lo && *a < hi {
                    out.extend(refine_bracket(a.clone(), b.clone(), depth - 1)?);
                }
            }
        }
    }
    Ok(out)
}

/// One closed-form check at one `ell`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormCheck<T> {
    pub regime: Regime,
    pub ell: T,
    pub claimed: T,
    /// Largest term of the regime's combination at the closed-form parameters.
    pub max_term: T,
    pub max_term_label: String,
    /// Largest term of the regime's reduced display list.
    pub max_display_term: T,
    /// Min-max optimum of the combination.
    pub lp_optimum: T,
    pub terms_ok: bool,
    pub lp_ok: bool,
}

impl<T: Scalar> ClosedFormCheck<T> {
    pub fn passed(&self) -> bool {
        self.terms_ok && self.lp_ok
    }
}

fn check_tolerance<T: Scalar>() -> T {
    T::ratio(1, 1_000_000_000)
}

/// Largest exponent among `terms` at `ell` and `plan`.
pub fn max_term_at<T: Scalar>(
    terms: &[crate::exponent::CostTerm<T>],
    ell: &T,
    plan: &ParameterPlan<T>,
) -> (T, String) {
    let mut at: Assignment<T> = plan.assignment();
    at.insert(Var::Ell, ell.clone());
    terms
        .iter()
        .map(|t| {
            let e = t
                .exponent(&at)
                .unwrap_or_else(|| panic!("term {} has an unassigned variable", t.label));
            (e, t.label.clone())
        })
        .fold(None, |best: Option<(T, String)>, (e, l)| match best {
            Some((be, bl)) if be >= e => Some((be, bl)),
            _ => Some((e, l)),
        })
        .expect("nonempty term list")
}

/// Plugs the regime's closed-form parameters into its terms at `ell`.
pub fn check_closed_form<T: Scalar>(regime: Regime, ell: &T) -> Result<ClosedFormCheck<T>> {
    let plan = regime.closed_form(ell);
    let claimed = regime.claimed_exponent(ell);
    let (max_term, max_term_label) =
        max_term_at(&combination_terms::<T>(regime.combination()), ell, &plan);
    let (max_display_term, _) = max_term_at(&regime_display_terms::<T>(regime), ell, &plan);
    let lp_optimum = combination_optimum(regime.combination(), ell)?.optimal_exponent;
    let tol = check_tolerance::<T>();
    let terms_ok = !(max_term.clone() - claimed.clone() > tol.clone())
        && !(max_display_term.clone() - claimed.clone() > tol.clone());
    let lp_ok = (lp_optimum.clone() - claimed.clone()).abs() <= tol;
    Ok(ClosedFormCheck {
        regime,
        ell: ell.clone(),
        claimed,
        max_term,
        max_term_label,
        max_display_term,
        lp_optimum,
        terms_ok,
        lp_ok,
    })
}

/// Closed-form checks at `points` evenly spaced values per regime.
pub fn verify_closed_forms<T: Scalar>(points: usize) -> Result<Vec<ClosedFormCheck<T>>> {
    let jobs: Vec<(Regime, T)> = Regime::ALL
        .into_iter()
        .flat_map(|r| {
            let (lo, hi) = r.bounds::<T>();
            linspace(&lo, &hi, points.max(2) - 1)
                .into_iter()
                .map(move |l| (r, l))
        })
        .collect();
    jobs.par_iter()
        .map(|(r, l)| check_closed_form(*r, l))
        .collect()
}

pub const CURVE_CSV_HEADER: &str = "ell,exponent,combination,d,a1,b1,k1,a2,b2,k2,a3,b3,k3,b4";

pub fn write_curve_csv<W: Write>(points: &[CurvePoint<f64>], mut w: W) -> Result<()> {
    writeln!(w, "{CURVE_CSV_HEADER}")?;
    for p in points {
        write!(w, "{},{},{}", p.ell, p.exponent, p.combination.name())?;
        for v in Var::PARAMS {
            match p.solution.parameters.get(&v) {
                Some(x) => write!(w, ",{x}")?,
                None => write!(w, ",")?,
            }
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Best rational approximation used when printing exact breakpoints.
pub fn approx_rational(x: f64, max_den: i64) -> Rational {
    let mut best = BigRational::from_f64(x.round()).expect("finite");
    let mut err = (x - x.round()).abs();
    for den in 1..=max_den {
        let num = (x * den as f64).round() as i64;
        let e = (x - num as f64 / den as f64).abs();
        if e + 1e-15 < err {
            err = e;
            best = Rational::ratio(num, den);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::ratio(p, d)
    }

    #[test]
    fn envelope_at_known_points() {
        let p = envelope_point(&q(2, 1)).unwrap();
        assert_eq!(p.exponent, q(5, 4));
        assert_eq!(p.combination, Combination::Full);
        let p = envelope_point(&q(1, 1)).unwrap();
        assert_eq!(p.exponent, q(1, 1));
        assert_eq!(p.combination, Combination::Buhrman);
        let p = envelope_point(&q(13, 8)).unwrap();
        assert_eq!(p.exponent, q(6, 5));
    }

    #[test]
    fn closed_form_at_regime_ends() {
        let c = check_closed_form(Regime::VeryDense, &q(2, 1)).unwrap();
        assert!(c.passed());
        assert_eq!(c.claimed, q(5, 4));
        let c = check_closed_form(Regime::Dense, &q(3, 2)).unwrap();
        assert_eq!(c.lp_optimum, q(7, 6));
    }

    #[test]
    fn breakpoints_on_a_coarse_grid() {
        let r = sweep_curve(0.01).unwrap();
        let got: Vec<Rational> = r
            .regime_breakpoints()
            .iter()
            .map(|b| b.ell.clone())
            .collect();
        assert_eq!(got, vec![q(7, 6), q(7, 5), q(3, 2), q(13, 8)]);
    }

    #[test]
    fn rational_approximation() {
        assert_eq!(approx_rational(1.1666666666, 100), q(7, 6));
        assert_eq!(approx_rational(2.0, 10), q(2, 1));
    }
}
