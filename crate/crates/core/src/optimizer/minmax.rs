use crate::error::{Error, Result};
use crate::exponent::{Assignment, CostTerm, Var};
use crate::optimizer::simplex::LinearProgram;
use crate::optimizer::terms::{parameter_constraints, term_vars, Constraint};
use crate::scalar::Scalar;

/// Upper end of the box imposed on every parameter.
pub const BOX_UPPER: i64 = 2;

/// Optimum of `min_x max_i term_i(x)` at one sparsity value.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<T> {
    pub ell: T,
    pub optimal_exponent: T,
    pub parameters: Assignment<T>,
    /// Labels of the terms attaining the maximum at `parameters`.
    pub active_terms: Vec<String>,
}

/// Minimizes the largest exponent among `terms` (which must not mention
/// `ell` any more) subject to `constraints` and `0 <= x <= 2`.
///
/// Internally maximizes `s` where `t = t0 - s` and `t0` exceeds every term at
/// the origin, so every right-hand side is nonnegative.
pub fn solve_minmax<T: Scalar>(
    terms: &[CostTerm<T>],
    constraints: &[Constraint<T>],
    ell: &T,
) -> Result<LpSolution<T>> {
    if terms.is_empty() {
        return Err(Error::Precondition("min-max over no terms".into()));
    }
    let vars = term_vars(terms);
    if let Some(t) = terms.iter().find(|t| !t.form.coeff(Var::Ell).is_zero()) {
        return Err(Error::Precondition(format!(
            "term {} still depends on ell",
            t.label
        )));
    }
    let nv = vars.len();
    let idx = |v: Var| vars.iter().position(|&u| u == v);
    let mut t0 = terms
        .iter()
        .map(|t| t.form.constant_term().clone())
        .fold(T::zero(), |a, b| if b > a { b } else { a });
    t0 = t0 + T::one();

    let mut rows = Vec::new();
    for t in terms {
        let mut a = vec![T::zero(); nv + 1];
        for (v, c) in t.form.coeffs() {
            a[idx(v).expect("term variable")] = c.clone();
        }
        a[nv] = T::one();
        rows.push((a, t0.clone() - t.form.constant_term().clone()));
    }
    for c in constraints {
        let mut a = vec![T::zero(); nv + 1];
        for (v, coef) in c.form.coeffs() {
            match idx(v) {
                Some(i) => a[i] = coef.clone(),
                None => {
                    return Err(Error::Precondition(format!(
                        "constraint {} uses unknown {v}",
                        c.label
                    )))
                }
            }
        }
        rows.push((a, -c.form.constant_term().clone()));
    }
    for i in 0..nv {
        let mut a = vec![T::zero(); nv + 1];
        a[i] = T::one();
        rows.push((a, T::ratio(BOX_UPPER, 1)));
    }
    let mut objective = vec![T::zero(); nv + 1];
    objective[nv] = T::one();
    let opt = LinearProgram {
        num_vars: nv + 1,
        objective,
        rows,
    }
    .solve()?;

    let parameters: Assignment<T> = vars.iter().copied().zip(opt.x.iter().cloned()).collect();
    let optimal_exponent = t0 - opt.value;
    let active_terms = terms
        .iter()
        .filter(|t| {
            let e = t.form.eval(&parameters).expect("all variables assigned");
            !optimal_exponent.definitely_gt(&e)
        })
        .map(|t| t.label.clone())
        .collect();
    Ok(LpSolution {
        ell: ell.clone(),
        optimal_exponent,
        parameters,
        active_terms,
    })
}

/// Substitutes `ell` into `terms` and solves with the standard parameter
/// constraints for the variables present.
pub fn solve_terms_at<T: Scalar>(terms: &[CostTerm<T>], ell: &T) -> Result<LpSolution<T>> {
    let subst: Vec<CostTerm<T>> = terms.iter().map(|t| t.substitute(Var::Ell, ell)).collect();
    let constraints = parameter_constraints(&term_vars(&subst), ell);
    solve_minmax(&subst, &constraints, ell)
}
