//! Min-max exponent optimization: each procedure's cost is a list of powers
//! `n^{affine form}`, and for every sparsity `ell` the parameters are chosen
//! to minimize the largest exponent.

pub mod minmax;
pub mod simplex;
pub mod sweep;
pub mod terms;

pub use minmax::{solve_minmax, solve_terms_at, LpSolution};
pub use simplex::{LinearProgram, LpOptimum};
pub use sweep::{
    check_closed_form, detect_breakpoints, envelope_point, linspace, sweep, sweep_curve,
    verify_closed_forms, write_curve_csv, BreakKind, Breakpoint, ClosedFormCheck, CurvePoint,
    SweepReport, CURVE_CSV_HEADER,
};
pub use terms::{
    buhrman_terms, build_terms, combination_terms, dense_terms, parameter_constraints,
    proposition_terms, regime_display_terms, Constraint,
};
