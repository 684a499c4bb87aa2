//! Exponent term catalogs: each procedure's cost as a list of powers of `n`
//! with `m = n^ell` substituted, plus the linear constraints on parameters.

use crate::exponent::{AffineForm, CostTerm, Var};
use crate::plan::{Combination, Prop, Regime};
use crate::scalar::Scalar;

use Var::*;

type Spec = ((i64, i64), &'static [(Var, i64, i64)]);

fn build<T: Scalar>(prefix: &str, specs: &[Spec]) -> Vec<CostTerm<T>> {
    specs
        .iter()
        .enumerate()
        .map(|(i, (c, t))| {
            CostTerm::new(
                format!("{prefix}.{}", i + 1),
                AffineForm::from_ratios(*c, t),
            )
        })
        .collect()
}

const Q1: &[Spec] = &[((1, 1), &[(Ell, 1, 2), (D, -1, 1)])];

const Q2: &[Spec] = &[
    ((1, 1), &[]),
    ((0, 1), &[(K1, 1, 2), (Ell, 1, 2)]),
    ((-1, 2), &[(A1, 1, 1), (D, 1, 2), (K1, 1, 1)]),
    ((1, 2), &[(D, 1, 2), (K1, 1, 1), (A1, -1, 2)]),
    ((3, 2), &[(K1, 1, 2), (A1, -1, 1)]),
    ((1, 1), &[(B1, 1, 1), (D, 1, 2), (A1, -1, 1)]),
    ((3, 2), &[(B1, -1, 2)]),
    ((3, 2), &[(K1, -1, 2)]),
];

const Q3: &[Spec] = &[
    ((1, 1), &[]),
    ((0, 1), &[(K2, 1, 2), (Ell, 1, 2)]),
    ((0, 1), &[(A2, 1, 1), (D, 1, 1), (K2, 1, 1), (Ell, -1, 2)]),
    ((1, 1), &[(D, 1, 1), (K2, 1, 1), (A2, -1, 2), (Ell, -1, 2)]),
    ((1, 1), &[(K2, 1, 2), (A2, -1, 1), (D, -1, 2), (Ell, 1, 2)]),
    ((1, 1), &[(B2, 1, 1), (A2, -1, 1), (D, -1, 2), (Ell, 1, 2)]),
    ((1, 1), &[(B2, -1, 2), (D, -1, 2), (Ell, 1, 2)]),
    ((1, 1), &[(D, -1, 2), (K2, -1, 2), (Ell, 1, 2)]),
];

const Q4: &[Spec] = &[
    ((1, 1), &[]),
    ((0, 1), &[(K3, 1, 2), (Ell, 1, 2)]),
    ((0, 1), &[(A3, 1, 1), (K3, 1, 1)]),
    ((0, 1), &[(K3, 1, 1), (A3, -1, 2), (D, -1, 1), (Ell, 1, 1)]),
    ((1, 2), &[(K3, 1, 2), (A3, -1, 1), (D, -1, 1), (Ell, 1, 1)]),
    ((0, 1), &[(B3, 1, 1), (A3, -1, 1), (D, -1, 2), (Ell, 1, 1)]),
    ((1, 2), &[(B3, -1, 2), (D, -1, 1), (Ell, 1, 1)]),
    ((1, 2), &[(D, -1, 1), (K3, -1, 2), (Ell, 1, 1)]),
];

const Q5: &[Spec] = &[((0, 1), &[(Ell, 5, 4), (D, -5, 4)])];

const Q6: &[Spec] = &[
    ((0, 1), &[(B4, 1, 1), (D, 1, 2)]),
    ((3, 2), &[(B4, -1, 2)]),
    ((1, 2), &[(D, 1, 1)]),
];

const Q7: &[Spec] = &[((1, 1), &[]), ((0, 1), &[(Ell, 1, 1), (D, -1, 2)])];

/// Every additive term of one procedure's cost.
pub fn proposition_terms<T: Scalar>(p: Prop) -> Vec<CostTerm<T>> {
    let specs = match p {
        Prop::Q1 => Q1,
        Prop::Q2 => Q2,
        Prop::Q3 => Q3,
        Prop::Q4 => Q4,
        Prop::Q5 => Q5,
        Prop::Q6 => Q6,
        Prop::Q7 => Q7,
    };
    build(p.label(), specs)
}

/// Exponents of the edge-sampling baseline: `max(1, 1/2 + ell/2)`.
pub fn buhrman_terms<T: Scalar>() -> Vec<CostTerm<T>> {
    build("B", &[((1, 1), &[]), ((1, 2), &[(Ell, 1, 2)])])
}

/// All terms of all procedures in the combination.
pub fn combination_terms<T: Scalar>(c: Combination) -> Vec<CostTerm<T>> {
    if c == Combination::Buhrman {
        return buhrman_terms();
    }
    c.props()
        .iter()
        .flat_map(|&p| proposition_terms(p))
        .collect()
}

/// The reduced term list shown for each regime's closed-form analysis.
pub fn regime_display_terms<T: Scalar>(r: Regime) -> Vec<CostTerm<T>> {
    const SPARSE: &[Spec] = &[
        ((1, 1), &[(Ell, 1, 2), (D, -1, 1)]),
        ((3, 2), &[(B4, -1, 2)]),
        ((0, 1), &[(B4, 1, 1), (D, 1, 2)]),
    ];
    const MODERATE: &[Spec] = &[
        ((3, 2), &[(B4, -1, 2)]),
        ((1, 2), &[(D, 1, 1)]),
        ((0, 1), &[(Ell, 1, 1), (D, -1, 2)]),
    ];
    const DENSE: &[Spec] = &[
        ((3, 2), &[(B4, -1, 2)]),
        ((1, 2), &[(D, 1, 1)]),
        ((0, 1), &[(A2, 1, 1), (D, 1, 1), (K2, 1, 1), (Ell, -1, 2)]),
        ((1, 1), &[(B2, 1, 1), (Ell, 1, 2), (A2, -1, 1), (D, -1, 2)]),
        ((1, 1), &[(Ell, 1, 2), (B2, -1, 2), (D, -1, 2)]),
        ((1, 1), &[(Ell, 1, 2), (D, -1, 2), (K2, -1, 2)]),
        ((0, 1), &[(B3, 1, 1), (Ell, 1, 1), (A3, -1, 1), (D, -1, 2)]),
        ((1, 2), &[(Ell, 1, 1), (B3, -1, 2), (D, -1, 1)]),
        ((1, 2), &[(Ell, 1, 1), (D, -1, 1), (K3, -1, 2)]),
    ];
    const VERY_DENSE: &[Spec] = &[
        ((-1, 2), &[(A1, 1, 1), (D, 1, 2), (K1, 1, 1)]),
        ((1, 1), &[(B1, 1, 1), (D, 1, 2), (A1, -1, 1)]),
        ((3, 2), &[(B1, -1, 2)]),
        ((3, 2), &[(K1, -1, 2)]),
        ((0, 1), &[(A2, 1, 1), (D, 1, 1), (K2, 1, 1), (Ell, -1, 2)]),
        ((1, 1), &[(B2, 1, 1), (Ell, 1, 2), (A2, -1, 1), (D, -1, 2)]),
        ((1, 1), &[(Ell, 1, 2), (B2, -1, 2), (D, -1, 2)]),
        ((1, 1), &[(Ell, 1, 2), (D, -1, 2), (K2, -1, 2)]),
        ((0, 1), &[(B3, 1, 1), (Ell, 1, 1), (A3, -1, 1), (D, -1, 2)]),
        ((1, 2), &[(Ell, 1, 1), (B3, -1, 2), (D, -1, 1)]),
        ((1, 2), &[(Ell, 1, 1), (D, -1, 1), (K3, -1, 2)]),
    ];
    match r {
        Regime::VerySparse => buhrman_terms(),
        Regime::Sparse => build("R2", SPARSE),
        Regime::Moderate => build("R3", MODERATE),
        Regime::Dense => build("R4", DENSE),
        Regime::VeryDense => build("R5", VERY_DENSE),
    }
}

/// Terms for a combination, labelled as in [`regime_display_terms`] when the
/// combination is the one used by a regime; `ell` is substituted.
pub fn build_terms<T: Scalar>(c: Combination, ell: &T) -> Vec<CostTerm<T>> {
    combination_terms(c)
        .into_iter()
        .map(|t| t.substitute(Ell, ell))
        .collect()
}

/// Dense single-graph procedure with variables `a, b, k` (and `|V1| = |V2| = n`).
pub fn dense_terms<T: Scalar>() -> Vec<CostTerm<T>> {
    build(
        "dense",
        &[
            ((1, 1), &[(K, 1, 2)]),
            ((0, 1), &[(A, 1, 1), (K, 1, 1)]),
            ((1, 1), &[(A, -1, 2), (K, 1, 1)]),
            ((3, 2), &[(K, 1, 1), (A, -1, 1)]),
            ((3, 2), &[(B, 1, 1), (A, -1, 1)]),
            ((3, 2), &[(B, -1, 2)]),
            ((3, 2), &[(K, -1, 2)]),
        ],
    )
}

/// A linear constraint `form <= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T> {
    pub label: String,
    pub form: AffineForm<T>,
}

/// Parameter constraints that involve only variables in `vars`, with
/// `ell` substituted. The `[0, 2]` box is added by the solver.
pub fn parameter_constraints<T: Scalar>(vars: &[Var], ell: &T) -> Vec<Constraint<T>> {
    let specs: &[(&str, Spec)] = &[
        ("d <= 1", ((-1, 1), &[(D, 1, 1)])),
        ("a1 <= 1", ((-1, 1), &[(A1, 1, 1)])),
        ("k1 <= 1", ((-1, 1), &[(K1, 1, 1)])),
        ("b1 <= a1", ((0, 1), &[(B1, 1, 1), (A1, -1, 1)])),
        ("a2 <= 1", ((-1, 1), &[(A2, 1, 1)])),
        ("b2 <= a2", ((0, 1), &[(B2, 1, 1), (A2, -1, 1)])),
        (
            "k2 + d <= ell",
            ((0, 1), &[(K2, 1, 1), (D, 1, 1), (Ell, -1, 1)]),
        ),
        (
            "a3 + d <= ell",
            ((0, 1), &[(A3, 1, 1), (D, 1, 1), (Ell, -1, 1)]),
        ),
        ("k3 <= 1", ((-1, 1), &[(K3, 1, 1)])),
        ("b3 <= a3", ((0, 1), &[(B3, 1, 1), (A3, -1, 1)])),
        ("b4 <= 1", ((-1, 1), &[(B4, 1, 1)])),
        ("a <= 1", ((-1, 1), &[(A, 1, 1)])),
        ("k <= 1", ((-1, 1), &[(K, 1, 1)])),
        ("b <= a", ((0, 1), &[(B, 1, 1), (A, -1, 1)])),
    ];
    specs
        .iter()
        .filter(|(_, (_, t))| t.iter().all(|(v, _, _)| *v == Ell || vars.contains(v)))
        .map(|(label, (c, t))| Constraint {
            label: label.to_string(),
            form: AffineForm::from_ratios(*c, t).substitute(Ell, ell),
        })
        .collect()
}

/// Parameter variables appearing in `terms`, excluding `ell`.
pub fn term_vars<T: Scalar>(terms: &[CostTerm<T>]) -> Vec<Var> {
    let mut vars: Vec<Var> = terms
        .iter()
        .flat_map(|t| t.form.vars())
        .filter(|v| *v != Ell)
        .collect();
    vars.sort_unstable();
    vars.dedup();
    vars
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Assignment;
    use crate::Rational;

    #[test]
    fn term_counts() {
        assert_eq!(regime_display_terms::<Rational>(Regime::Sparse).len(), 3);
        assert_eq!(regime_display_terms::<Rational>(Regime::Dense).len(), 9);
        assert_eq!(
            regime_display_terms::<Rational>(Regime::VeryDense).len(),
            11
        );
        assert_eq!(
            combination_terms::<Rational>(Combination::SingleWalk).len(),
            6
        );
        assert_eq!(combination_terms::<Rational>(Combination::Full).len(), 26);
    }

    #[test]
    fn substituting_zero_is_well_formed() {
        for c in Combination::ALL {
            for t in build_terms(c, &Rational::ratio(0, 1)) {
                assert_eq!(t.form.coeff(Ell), Rational::ratio(0, 1));
            }
        }
    }

    #[test]
    fn display_terms_are_a_subset_of_full_terms() {
        for r in [
            Regime::Sparse,
            Regime::Moderate,
            Regime::Dense,
            Regime::VeryDense,
        ] {
            let full = combination_terms::<Rational>(r.combination());
            for t in regime_display_terms::<Rational>(r) {
                assert!(full.iter().any(|f| f.form == t.form), "{:?} {}", r, t.label);
            }
        }
    }

    #[test]
    fn dense_terms_at_the_classic_point() {
        let mut at = Assignment::new();
        at.insert(A, 0.75);
        at.insert(B, 0.5);
        at.insert(K, 0.5);
        let max = dense_terms::<f64>()
            .iter()
            .map(|t| t.exponent(&at).unwrap())
            .fold(0.0, f64::max);
        assert!((max - 1.25).abs() < 1e-12);
    }

    #[test]
    fn constraints_follow_variables() {
        let c = parameter_constraints::<f64>(&[D, B4], &1.3);
        let labels: Vec<_> = c.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["d <= 1", "b4 <= 1"]);
    }
}
