//! Exponent expressions: affine forms in the sparsity exponent and the
//! algorithm parameters, cost terms `n^{form}`, and posynomials (sums of
//! such powers) used for symbolic cost evaluation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul};

use num_rational::Rational64;

use crate::scalar::{CostScalar, Scalar};

/// Variables that may appear in an exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Ell,
    D,
    A,
    B,
    K,
    A1,
    B1,
    K1,
    A2,
    B2,
    K2,
    A3,
    B3,
    K3,
    B4,
}

impl Var {
    pub const PARAMS: [Var; 11] = [
        Var::D,
        Var::A1,
        Var::B1,
        Var::K1,
        Var::A2,
        Var::B2,
        Var::K2,
        Var::A3,
        Var::B3,
        Var::K3,
        Var::B4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Var::Ell => "ell",
            Var::D => "d",
            Var::A => "a",
            Var::B => "b",
            Var::K => "k",
            Var::A1 => "a1",
            Var::B1 => "b1",
            Var::K1 => "k1",
            Var::A2 => "a2",
            Var::B2 => "b2",
            Var::K2 => "k2",
            Var::A3 => "a3",
            Var::B3 => "b3",
            Var::K3 => "k3",
            Var::B4 => "b4",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        let all = [
            Var::Ell,
            Var::D,
            Var::A,
            Var::B,
            Var::K,
            Var::A1,
            Var::B1,
            Var::K1,
            Var::A2,
            Var::B2,
            Var::K2,
            Var::A3,
            Var::B3,
            Var::K3,
            Var::B4,
        ];
        all.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Values for some set of variables.
pub type Assignment<T> = BTreeMap<Var, T>;

/// `constant + Σ coeff·var`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineForm<T> {
    constant: T,
    coeffs: BTreeMap<Var, T>,
}

impl<T: Scalar> AffineForm<T> {
    pub fn constant(c: T) -> Self {
        AffineForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(T::zero())
    }

    pub fn var(v: Var) -> Self {
        Self::zero().with(v, T::one())
    }

    /// Adds `c·v` to the form.
    pub fn with(mut self, v: Var, c: T) -> Self {
        let entry = self.coeffs.entry(v).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&v);
        }
        self
    }

    /// Builds a form from a rational constant and rational coefficients.
    pub fn from_ratios(constant: (i64, i64), terms: &[(Var, i64, i64)]) -> Self {
        terms.iter().fold(
            Self::constant(T::ratio(constant.0, constant.1)),
            |f, &(v, p, q)| f.with(v, T::ratio(p, q)),
        )
    }

    pub fn constant_term(&self) -> &T {
        &self.constant
    }

    pub fn coeff(&self, v: Var) -> T {
        self.coeffs.get(&v).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (Var, &T)> {
        self.coeffs.iter().map(|(v, c)| (*v, c))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        AffineForm {
            constant: self.constant.clone() * s.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(v, c)| (*v, c.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant = out.constant + other.constant.clone();
        for (v, c) in &other.coeffs {
            out = out.with(*v, c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&-T::one()))
    }

    /// Replaces `v` by the constant `value`.
    pub fn substitute(&self, v: Var, value: &T) -> Self {
        match self.coeffs.get(&v) {
            None => self.clone(),
            Some(c) => {
                let mut out = self.clone();
                out.coeffs.remove(&v);
                out.constant = out.constant + c.clone() * value.clone();
                out
            }
        }
    }

    /// Evaluates the form; `None` when a variable is unassigned.
    pub fn eval(&self, at: &Assignment<T>) -> Option<T> {
        let mut acc = self.constant.clone();
        for (v, c) in &self.coeffs {
            acc = acc + c.clone() * at.get(v)?.clone();
        }
        Some(acc)
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> AffineForm<U> {
        AffineForm {
            constant: f(&self.constant),
            coeffs: self.coeffs.iter().map(|(v, c)| (*v, f(c))).collect(),
        }
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for AffineForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() || self.coeffs.is_empty() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (v, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{mag}*{v}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A labelled cost term `n^{form}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostTerm<T> {
    pub label: String,
    pub form: AffineForm<T>,
}

impl<T: Scalar> CostTerm<T> {
    pub fn new(label: impl Into<String>, form: AffineForm<T>) -> Self {
        CostTerm {
            label: label.into(),
            form,
        }
    }

    pub fn substitute(&self, v: Var, value: &T) -> Self {
        CostTerm {
            label: self.label.clone(),
            form: self.form.substitute(v, value),
        }
    }

    pub fn exponent(&self, at: &Assignment<T>) -> Option<T> {
        self.form.eval(at)
    }
}

/// One power `coef · n^{exp}` of a [`Posynomial`].
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coef: f64,
    pub exp: AffineForm<Rational64>,
}

/// Sum of powers of `n` with affine exponents.
///
/// Arithmetic follows soft-O calculus: products add exponents, square roots
/// halve them (the root of a sum is replaced by the sum of roots), ceilings are
/// dropped, `max(x, 1)` becomes `x + 1` and `min(x, y)` stays `x`. Division is defined only by a
/// single monomial.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Posynomial {
    terms: Vec<Monomial>,
}

impl Posynomial {
    /// `n^{exp}`.
    pub fn power(exp: AffineForm<Rational64>) -> Self {
        Posynomial {
            terms: vec![Monomial { coef: 1.0, exp }],
        }
    }

    /// `n^{c·v}` for a single variable.
    pub fn power_of(v: Var, c: Rational64) -> Self {
        Self::power(AffineForm::zero().with(v, c))
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, m: Monomial) {
        if m.coef == 0.0 {
            return;
        }
        if let Some(t) = self.terms.iter_mut().find(|t| t.exp == m.exp) {
            t.coef += m.coef;
        } else {
            self.terms.push(m);
        }
    }

    /// Distinct exponent forms.
    pub fn exponents(&self) -> Vec<AffineForm<Rational64>> {
        self.terms.iter().map(|t| t.exp.clone()).collect()
    }
}

impl Add for Posynomial {
    type Output = Posynomial;
    fn add(mut self, rhs: Posynomial) -> Posynomial {
        for m in rhs.terms {
            self.push(m);
        }
        self
    }
}

impl Mul for Posynomial {
    type Output = Posynomial;
    fn mul(self, rhs: Posynomial) -> Posynomial {
        let mut out = Posynomial::default();
        for a in &self.terms {
            for b in &rhs.terms {
                out.push(Monomial {
                    coef: a.coef * b.coef,
                    exp: a.exp.plus(&b.exp),
                });
            }
        }
        out
    }
}

impl Div for Posynomial {
    type Output = Posynomial;
    fn div(self, rhs: Posynomial) -> Posynomial {
        assert!(
            rhs.terms.len() == 1,
            "posynomial division is only defined for a single-monomial divisor"
        );
        let d = &rhs.terms[0];
        let mut out = Posynomial::default();
        for a in self.terms {
            out.push(Monomial {
                coef: a.coef / d.coef,
                exp: a.exp.minus(&d.exp),
            });
        }
        out
    }
}

impl CostScalar for Posynomial {
    fn constant(c: f64) -> Self {
        let mut p = Posynomial::default();
        p.push(Monomial {
            coef: c,
            exp: AffineForm::zero(),
        });
        p
    }

    fn sqrt(self) -> Self {
        let half = Rational64::new(1, 2);
        let mut out = Posynomial::default();
        for m in self.terms {
            out.push(Monomial {
                coef: m.coef.sqrt(),
                exp: m.exp.scale(&half),
            });
        }
        out
    }

    fn ceil_count(self) -> Self {
        self
    }

    fn at_least_one(self) -> Self {
        self + Posynomial::constant(1.0)
    }

    /// Kept as an upper bound: the bound never lowers a soft-O exponent
    /// below the one written for `self`.
    fn at_most(self, _bound: Self) -> Self {
        self
    }
}
