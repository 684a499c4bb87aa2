//! Stage costs of the two-walk procedure, written once over [`CostScalar`].
//!
//! The runtime evaluates them on `f64` with the realized set sizes; the
//! symbolic checker evaluates them on [`crate::Posynomial`] with sizes given
//! as powers of `n`.

use crate::qcost::formulas;
use crate::scalar::CostScalar;

/// How the first stage looks for triangles through the sample `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FirstStage {
    /// One Grover search over `X × E(V2)`.
    Grover,
    /// Amplitude amplification over a random edge of `V2`, then a Grover
    /// search for its apex in `X`.
    EdgeSampling,
}

/// Setup strategy of a walk's data structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Setup {
    /// Query every relevant pair.
    Dense,
    /// Enumerate only the few neighbours a low-degree vertex can have.
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Variant {
    pub first: FirstStage,
    pub outer: Setup,
    pub inner: Setup,
}

impl Variant {
    pub const DENSE: Variant = Variant {
        first: FirstStage::Grover,
        outer: Setup::Dense,
        inner: Setup::Dense,
    };
    pub const LLL: Variant = Variant {
        first: FirstStage::EdgeSampling,
        outer: Setup::Sparse,
        inner: Setup::Sparse,
    };
    pub const LLH: Variant = Variant {
        first: FirstStage::EdgeSampling,
        outer: Setup::Sparse,
        inner: Setup::Dense,
    };
    pub const HHL: Variant = Variant {
        first: FirstStage::EdgeSampling,
        outer: Setup::Dense,
        inner: Setup::Sparse,
    };
}

/// Sizes entering the cost formulas.
#[derive(Debug, Clone)]
pub struct Sizes<S> {
    pub n: S,
    /// `n^d`.
    pub nd: S,
    /// `log2 n`; polylog factors other than this one are charged as 1.
    pub log_n: S,
    pub v1: S,
    pub v2: S,
    /// Number of draws in `X`.
    pub x: S,
    /// `|E(V2)|`, all unordered pairs inside `V2`.
    pub pairs_v2: S,
    /// `|E(V2) ∩ E|`.
    pub edges_v2: S,
    /// `|A|` before rounding.
    pub outer_raw: S,
    /// `|B|` before rounding.
    pub inner_raw: S,
    /// Charge of one `δ(X, A, w)` estimate.
    pub est: S,
}

impl<S: CostScalar> Sizes<S> {
    /// Cap on `|N(v) ∩ X|` for low `v`: `1.1 n^d |X| / |V1| + 2 log n`.
    pub fn neighbor_cap(&self) -> S {
        S::constant(1.1) * self.nd.clone() * self.x.clone() / self.v1.clone()
            + S::constant(2.0) * self.log_n.clone()
    }

    /// Expected `|N(w) ∩ B|`: `n^d |B| / n`.
    pub fn mu(&self) -> S {
        self.nd.clone() * self.inner_raw.clone() / self.n.clone()
    }
}

pub fn stage1<S: CostScalar>(first: FirstStage, s: &Sizes<S>) -> S {
    match first {
        FirstStage::Grover => formulas::grover_detect(s.x.clone() * s.pairs_v2.clone(), S::one()),
        // sqrt(e) (sqrt(|E(V2)| / e) + sqrt(|X|)), multiplied out.
        FirstStage::EdgeSampling => {
            s.pairs_v2.clone().sqrt() + (s.edges_v2.clone().at_least_one() * s.x.clone()).sqrt()
        }
    }
}

/// `(sqrt(e), sqrt(|E(V2)| / e) + sqrt(|X|))` with `e = max(|E(V2) ∩ E|, 1)`.
pub fn edge_sampling_parts<S: CostScalar>(s: &Sizes<S>) -> (S, S) {
    let e = s.edges_v2.clone().at_least_one();
    let attempt = (s.pairs_v2.clone() / e.clone()).sqrt() + s.x.clone().sqrt();
    (e.sqrt(), attempt)
}

/// Walk parameters other than the checking cost.
#[derive(Debug, Clone)]
pub struct WalkShape<S> {
    pub setup: S,
    pub update: S,
    pub r: S,
    pub eps: S,
}

/// Outer walk over `ceil(|V2|^a)`-subsets of `V2`. Enumerations never
/// assume more solutions than their domain has elements. A `frozen` walk has a
/// single state (`|A| = |V2|`) and no updates.
pub fn outer_walk<S: CostScalar>(setup: Setup, s: &Sizes<S>, frozen: bool) -> WalkShape<S> {
    let r = s.outer_raw.clone().ceil_count();
    let (per_vertex, update) = match setup {
        Setup::Dense => (s.x.clone(), S::constant(2.0) * s.x.clone()),
        Setup::Sparse => {
            let t = s.neighbor_cap().at_least_one().at_most(s.x.clone());
            let per = (s.x.clone() * t).sqrt().ceil_count();
            (per.clone(), per)
        }
    };
    if frozen {
        return WalkShape {
            setup: r.clone() * per_vertex,
            update: S::zero(),
            r,
            eps: S::one(),
        };
    }
    let ratio = s.outer_raw.clone() / s.v2.clone();
    WalkShape {
        setup: r.clone() * per_vertex,
        update,
        r,
        eps: ratio.clone() * ratio,
    }
}

/// Inner walk over `ceil(|V2|^b)`-subsets of `A`, with the factor multiplying
/// `sqrt(δ(X, A, w))` in its checking cost.
#[derive(Debug, Clone)]
pub struct InnerShape<S> {
    pub walk: WalkShape<S>,
    pub check_scale: S,
}

pub fn inner_walk<S: CostScalar>(setup: Setup, s: &Sizes<S>, frozen: bool) -> InnerShape<S> {
    let r = s.inner_raw.clone().ceil_count();
    let setup_cost = match setup {
        Setup::Dense => r.clone(),
        Setup::Sparse => (r.clone() * s.mu().at_least_one().at_most(r.clone()))
            .sqrt()
            .ceil_count(),
    };
    let scale = s.inner_raw.clone() / s.outer_raw.clone();
    let (update, eps) = if frozen {
        (S::zero(), S::one())
    } else {
        (S::constant(2.0), scale.clone() * scale.clone())
    };
    InnerShape {
        walk: WalkShape {
            setup: setup_cost,
            update,
            r,
            eps,
        },
        check_scale: scale,
    }
}

pub fn walk_cost<S: CostScalar>(w: &WalkShape<S>, check: S) -> S {
    formulas::walk(
        w.setup.clone(),
        w.update.clone(),
        check,
        w.r.clone(),
        w.eps.clone(),
    )
}

/// `Q(w)`: the estimate of `|Δ(X, A, w)|` followed by the inner walk.
pub fn check_cost_for<S: CostScalar>(inner: &InnerShape<S>, est: S, delta_estimate: S) -> S {
    est + walk_cost(
        &inner.walk,
        inner.check_scale.clone() * delta_estimate.sqrt(),
    )
}

/// Variable-cost aggregation of `count` equal checks `q`.
pub fn uniform_variable_cost<S: CostScalar>(count: S, q: S) -> S {
    (count * q.clone() * q).sqrt()
}

/// Symbolic-friendly total of the two-walk procedure with every `Q(w)` equal
/// to the value at the average `δ = |A|^2 |V1|^{1-k} / |V1|`.
pub fn two_walk_total<S: CostScalar>(v: Variant, s: &Sizes<S>, delta_avg: S) -> S {
    let outer = outer_walk(v.outer, s, false);
    let inner = inner_walk(v.inner, s, false);
    let q = check_cost_for(&inner, s.est.clone(), delta_avg);
    stage1(v.first, s) + walk_cost(&outer, uniform_variable_cost(s.v1.clone(), q))
}

/// Single-walk procedure: walk over `ceil(|V|^b)`-subsets of the low set with
/// a neighbour-pair check of cost `10 μ`, aggregated over every `w`.
pub fn single_walk_check<S: CostScalar>(s: &Sizes<S>) -> S {
    let r = s.inner_raw.clone().ceil_count();
    let mu = s.mu();
    let setup = (r.clone() * mu.clone().at_least_one().at_most(r.clone()))
        .sqrt()
        .ceil_count();
    let ratio = s.inner_raw.clone() / s.v1.clone();
    let shape = WalkShape {
        setup,
        update: S::constant(2.0),
        r,
        eps: ratio.clone() * ratio,
    };
    walk_cost(&shape, S::constant(10.0) * mu)
}

pub fn single_walk_total<S: CostScalar>(s: &Sizes<S>) -> S {
    uniform_variable_cost(s.v1.clone(), single_walk_check(s))
}

/// Edge sampling with an apex search in a set of size `apex`:
/// `sqrt(m) (sqrt(n^2 / m) + sqrt(apex)) = n + sqrt(m apex)`.
pub fn apex_search<S: CostScalar>(n: S, m: S, apex: S) -> S {
    n + (m.at_least_one() * apex).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes() -> Sizes<f64> {
        Sizes {
            n: 256.0,
            nd: 16.0,
            log_n: 8.0,
            v1: 200.0,
            v2: 200.0,
            x: 30.0,
            pairs_v2: 19900.0,
            edges_v2: 900.0,
            outer_raw: 50.0,
            inner_raw: 10.0,
            est: 4.0,
        }
    }

    #[test]
    fn stage_one_variants() {
        let s = sizes();
        assert_eq!(
            stage1(FirstStage::Grover, &s),
            (30.0f64 * 19900.0).sqrt().ceil()
        );
        let es = stage1(FirstStage::EdgeSampling, &s);
        assert!((es - 30.0 * ((19900.0f64 / 900.0).sqrt() + 30f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn walk_shapes() {
        let s = sizes();
        let o = outer_walk(Setup::Dense, &s, false);
        assert_eq!((o.setup, o.update, o.r), (1500.0, 60.0, 50.0));
        assert!((o.eps - 0.0625).abs() < 1e-12);
        let f = outer_walk(Setup::Dense, &s, true);
        assert_eq!((f.update, f.eps), (0.0, 1.0));
        let sp = outer_walk(Setup::Sparse, &s, false);
        let t: f64 = 1.1 * 16.0 * 30.0 / 200.0 + 16.0;
        assert_eq!(sp.update, (30.0 * t).sqrt().ceil());
        let i = inner_walk(Setup::Sparse, &s, false);
        assert_eq!(
            i.walk.setup,
            (10.0f64 * 1.0f64.max(16.0 * 10.0 / 256.0)).sqrt().ceil()
        );
        assert!((i.check_scale - 0.2).abs() < 1e-12);
    }

    #[test]
    fn apex_search_is_buhrman_on_all_vertices() {
        assert!((apex_search(3.0f64, 3.0, 3.0) - 6.0).abs() < 1e-12);
        assert!((apex_search(100.0f64, 400.0, 100.0) - 300.0).abs() < 1e-9);
        assert_eq!(apex_search(10.0, 0.0, 10.0), 10.0 + 10f64.sqrt());
    }
}
