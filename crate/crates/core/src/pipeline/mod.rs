//! The triangle-finding pipeline: the dense two-walk procedure, its sparse
//! variants for each triangle type, and the top-level dispatcher.

pub mod costs;
pub mod engine;
pub mod procedures;
pub mod run;
pub mod symbolic;

pub use engine::{Diagnostics, InnerConditions, InnerContext, TwoWalkInput, TwoWalkOutcome};
pub use procedures::{
    buhrman_find, dense_find, find_anyhigh, find_hhh, find_hhl, find_llh, find_lll,
    find_lll_singlewalk, ProcOutcome,
};
pub use run::{
    find_triangle, find_triangle_with_plan, sparsity_exponent, RunReport, BUHRMAN_LABEL,
};
pub use symbolic::{check_all, check_prop, SymbolicReport};
