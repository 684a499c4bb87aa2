//! Query-ledgered emulation of quantum triangle finding on sparse graphs.
//!
//! Every quantum primitive is replaced by an exact classical computation that
//! charges the primitive's idealized query cost to a [`QueryLedger`]. The
//! [`optimizer`] module rebuilds the exponent curve of the algorithm by solving
//! a min-max linear program per sparsity exponent `ell` (where `m = n^ell`).

// `!(x >= 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bench;
pub mod classify;
pub mod error;
pub mod exponent;
pub mod graph;
pub mod optimizer;
pub mod pipeline;
pub mod plan;
pub mod qcost;
pub mod scalar;
pub mod structural;

pub use classify::{classify, DegreePartition};
pub use error::{Error, Result};
pub use exponent::{AffineForm, CostTerm, Posynomial, Var};
pub use graph::{
    brute_force_triangle, gen_gnm, CountedOracle, DegreeProfile, Graph, GraphGenSpec, QueryLedger,
    Triangle, Vertex,
};
pub use pipeline::{find_triangle, find_triangle_with_plan, RunReport};
pub use plan::{Combination, ParameterPlan, Regime, WalkTriple};
pub use scalar::{CostScalar, Scalar};

/// Arbitrary-precision rational used for exact exponent arithmetic.
pub type Rational = num_rational::BigRational;
/// Small exact rational used for symbolic exponents.
pub type Rational64 = num_rational::Rational64;

/// Parameter plan with floating-point entries, as consumed by the pipeline.
pub type FloatPlan = ParameterPlan<f64>;
/// Parameter plan with exact rational entries.
pub type ExactPlan = ParameterPlan<Rational>;
/// Min-max solution in floating point.
pub type FloatSolution = optimizer::LpSolution<f64>;
/// Min-max solution in exact rationals.
pub type ExactSolution = optimizer::LpSolution<Rational>;
/// Single-precision cost term, mostly useful for compact sweeps.
pub type CostTerm32 = CostTerm<f32>;
