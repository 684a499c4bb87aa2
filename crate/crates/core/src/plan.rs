//! Sparsity regimes, procedure combinations and parameter plans.

use std::fmt;

use crate::error::{Error, Result};
use crate::exponent::{Assignment, Var};
use crate::scalar::Scalar;

/// The procedures whose costs are `Q1` .. `Q7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prop {
    Q1,
    Q2,
    Q3,
    Q4,
    Q5,
    Q6,
    Q7,
}

impl Prop {
    pub const ALL: [Prop; 7] = [
        Prop::Q1,
        Prop::Q2,
        Prop::Q3,
        Prop::Q4,
        Prop::Q5,
        Prop::Q6,
        Prop::Q7,
    ];

    pub fn label(self) -> &'static str {
        ["Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7"][self as usize]
    }
}

/// A set of procedures that together cover every triangle type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Combination {
    /// Edge sampling with every vertex high (`d = 0`).
    Buhrman,
    /// Q1 + Q6 + Q7.
    SingleWalk,
    /// Q1 + Q3 + Q4 + Q5 + Q6.
    Mixed,
    /// Q1 + Q2 + Q3 + Q4 + Q5.
    Full,
}

impl Combination {
    pub const ALL: [Combination; 4] = [
        Combination::Buhrman,
        Combination::SingleWalk,
        Combination::Mixed,
        Combination::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Combination::Buhrman => "buhrman",
            Combination::SingleWalk => "q1+q6+q7",
            Combination::Mixed => "q1+q3+q4+q5+q6",
            Combination::Full => "q1+q2+q3+q4+q5",
        }
    }

    pub fn from_name(s: &str) -> Option<Combination> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    pub fn props(self) -> &'static [Prop] {
        match self {
            Combination::Buhrman => &[Prop::Q7],
            Combination::SingleWalk => &[Prop::Q1, Prop::Q6, Prop::Q7],
            Combination::Mixed => &[Prop::Q1, Prop::Q3, Prop::Q4, Prop::Q5, Prop::Q6],
            Combination::Full => &[Prop::Q1, Prop::Q2, Prop::Q3, Prop::Q4, Prop::Q5],
        }
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponents `(a, b, k)` of one two-walk procedure.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkTriple<T> {
    pub a: T,
    pub b: T,
    pub k: T,
}

/// Parameters of a pipeline run. Procedures not used by a combination have
/// no entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterPlan<T> {
    pub d: T,
    /// `(a1, b1, k1)`: three low vertices, two walks.
    pub lll: Option<WalkTriple<T>>,
    /// `(a2, b2, k2)`: two low vertices and one high.
    pub llh: Option<WalkTriple<T>>,
    /// `(a3, b3, k3)`: two high vertices and one low.
    pub hhl: Option<WalkTriple<T>>,
    /// `b4`: three low vertices, single walk.
    pub b4: Option<T>,
}

const TRIPLE_VARS: [(Var, Var, Var); 3] = [
    (Var::A1, Var::B1, Var::K1),
    (Var::A2, Var::B2, Var::K2),
    (Var::A3, Var::B3, Var::K3),
];

impl<T: Scalar> ParameterPlan<T> {
    pub fn only_d(d: T) -> Self {
        ParameterPlan {
            d,
            lll: None,
            llh: None,
            hhl: None,
            b4: None,
        }
    }

    fn triples(&self) -> [&Option<WalkTriple<T>>; 3] {
        [&self.lll, &self.llh, &self.hhl]
    }

    pub fn assignment(&self) -> Assignment<T> {
        let mut out = Assignment::new();
        out.insert(Var::D, self.d.clone());
        for (t, (va, vb, vk)) in self.triples().into_iter().zip(TRIPLE_VARS) {
            if let Some(t) = t {
                out.insert(va, t.a.clone());
                out.insert(vb, t.b.clone());
                out.insert(vk, t.k.clone());
            }
        }
        if let Some(b4) = &self.b4 {
            out.insert(Var::B4, b4.clone());
        }
        out
    }

    /// Inverse of [`ParameterPlan::assignment`]; a triple is present only if
    /// all three of its variables are.
    pub fn from_assignment(at: &Assignment<T>) -> Result<Self> {
        let d = at
            .get(&Var::D)
            .cloned()
            .ok_or_else(|| Error::ParameterViolation("plan needs d".into()))?;
        let triple = |(va, vb, vk): (Var, Var, Var)| -> Result<Option<WalkTriple<T>>> {
            match (at.get(&va), at.get(&vb), at.get(&vk)) {
                (Some(a), Some(b), Some(k)) => Ok(Some(WalkTriple {
                    a: a.clone(),
                    b: b.clone(),
                    k: k.clone(),
                })),
                (None, None, None) => Ok(None),
                _ => Err(Error::ParameterViolation(format!(
                    "incomplete triple {va}/{vb}/{vk}"
                ))),
            }
        };
        Ok(ParameterPlan {
            d,
            lll: triple(TRIPLE_VARS[0])?,
            llh: triple(TRIPLE_VARS[1])?,
            hhl: triple(TRIPLE_VARS[2])?,
            b4: at.get(&Var::B4).cloned(),
        })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> ParameterPlan<U> {
        let tr = |t: &Option<WalkTriple<T>>| {
            t.as_ref().map(|t| WalkTriple {
                a: f(&t.a),
                b: f(&t.b),
                k: f(&t.k),
            })
        };
        ParameterPlan {
            d: f(&self.d),
            lll: tr(&self.lll),
            llh: tr(&self.llh),
            hhl: tr(&self.hhl),
            b4: self.b4.as_ref().map(&f),
        }
    }

    pub fn to_f64(&self) -> ParameterPlan<f64> {
        self.map(|x| x.approx())
    }

    /// Checks the static parameter constraints of every present procedure.
    pub fn validate(&self) -> Result<()> {
        let zero = T::zero();
        let one = T::one();
        let open = |x: &T| *x > zero && *x < one;
        let bad = |msg: &str| Err(Error::ParameterViolation(msg.to_string()));
        if self.d < zero || self.d > one {
            return bad("need 0 <= d <= 1");
        }
        if let Some(t) = &self.lll {
            if !(open(&t.a) && open(&t.k) && t.b > zero && t.b < t.a) {
                return bad("need 0 < b1 < a1 < 1 and 0 < k1 < 1");
            }
        }
        if let Some(t) = &self.llh {
            if !(open(&t.a) && t.b > zero && t.b < t.a && t.k > zero) {
                return bad("need 0 < b2 < a2 < 1 and k2 > 0");
            }
        }
        if let Some(t) = &self.hhl {
            if !(open(&t.k) && t.b > zero && t.b < t.a && t.a > zero) {
                return bad("need 0 < b3 < a3 and 0 < k3 < 1");
            }
        }
        if let Some(b4) = &self.b4 {
            if !open(b4) {
                return bad("need 0 < b4 < 1");
            }
        }
        Ok(())
    }
}

/// The five sparsity regimes of the complexity curve. Each boundary value of
/// `ell` belongs to the lower regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    /// `ell <= 7/6`.
    VerySparse,
    /// `7/6 < ell <= 7/5`.
    Sparse,
    /// `7/5 < ell <= 3/2`.
    Moderate,
    /// `3/2 < ell <= 13/8`.
    Dense,
    /// `13/8 < ell <= 2`.
    VeryDense,
}

impl Regime {
    pub const ALL: [Regime; 5] = [
        Regime::VerySparse,
        Regime::Sparse,
        Regime::Moderate,
        Regime::Dense,
        Regime::VeryDense,
    ];

    /// Closed interval `[lo, hi]` of the regime.
    pub fn bounds<T: Scalar>(self) -> (T, T) {
        let (a, b) = match self {
            Regime::VerySparse => ((0, 1), (7, 6)),
            Regime::Sparse => ((7, 6), (7, 5)),
            Regime::Moderate => ((7, 5), (3, 2)),
            Regime::Dense => ((3, 2), (13, 8)),
            Regime::VeryDense => ((13, 8), (2, 1)),
        };
        (T::ratio(a.0, a.1), T::ratio(b.0, b.1))
    }

    pub fn of<T: Scalar>(ell: &T) -> Result<Regime> {
        if *ell < T::zero() || *ell > T::ratio(2, 1) {
            return Err(Error::EllOutOfRange(ell.approx()));
        }
        Ok(Self::ALL
            .into_iter()
            .find(|r| *ell <= r.bounds::<T>().1)
            .unwrap_or(Regime::VeryDense))
    }

    pub fn combination(self) -> Combination {
        match self {
            Regime::VerySparse => Combination::Buhrman,
            Regime::Sparse | Regime::Moderate => Combination::SingleWalk,
            Regime::Dense => Combination::Mixed,
            Regime::VeryDense => Combination::Full,
        }
    }

    /// The exponent of `n` claimed for this regime.
    pub fn claimed_exponent<T: Scalar>(self, ell: &T) -> T {
        let r = T::ratio;
        let l = ell.clone();
        match self {
            Regime::VerySparse => {
                let e = r(1, 2) + l * r(1, 2);
                if e > T::one() {
                    e
                } else {
                    T::one()
                }
            }
            Regime::Sparse => T::one() + l * r(1, 14),
            Regime::Moderate => r(1, 6) + l * r(2, 3),
            Regime::Dense => r(23, 30) + l * r(4, 15),
            Regime::VeryDense => r(59, 60) + l * r(2, 15),
        }
    }

    pub fn claimed_formula(self) -> &'static str {
        match self {
            Regime::VerySparse => "max(1, 1/2 + ell/2)",
            Regime::Sparse => "1 + ell/14",
            Regime::Moderate => "1/6 + 2*ell/3",
            Regime::Dense => "23/30 + 4*ell/15",
            Regime::VeryDense => "59/60 + 2*ell/15",
        }
    }

    /// Closed-form parameters for this regime.
    pub fn closed_form<T: Scalar>(self, ell: &T) -> ParameterPlan<T> {
        let r = T::ratio;
        let l = || ell.clone();
        match self {
            Regime::VerySparse => ParameterPlan::only_d(T::zero()),
            Regime::Sparse => ParameterPlan {
                b4: Some(T::one() - l() * r(1, 7)),
                ..ParameterPlan::only_d(l() * r(3, 7))
            },
            Regime::Moderate => ParameterPlan {
                b4: Some(r(8, 3) - l() * r(4, 3)),
                ..ParameterPlan::only_d(l() * r(2, 3) - r(1, 3))
            },
            Regime::Dense => {
                let k2 = r(1, 5) + l() * r(1, 5);
                let k3 = l() * r(14, 15) - r(16, 15);
                ParameterPlan {
                    d: r(4, 15) + l() * r(4, 15),
                    lll: None,
                    llh: Some(WalkTriple {
                        a: r(3, 10) + l() * r(3, 10),
                        b: k2.clone(),
                        k: k2,
                    }),
                    hhl: Some(WalkTriple {
                        a: l() * r(23, 15) - r(59, 30),
                        b: k3.clone(),
                        k: k3,
                    }),
                    b4: Some(r(22, 15) - l() * r(8, 15)),
                }
            }
            Regime::VeryDense => {
                let k1 = r(31, 30) - l() * r(4, 15);
                let k2 = r(19, 30) - l() * r(1, 15);
                let k3 = r(7, 30) + l() * r(2, 15);
                ParameterPlan {
                    d: l() * r(4, 5) - r(3, 5),
                    lll: Some(WalkTriple {
                        a: r(3, 4),
                        b: k1.clone(),
                        k: k1,
                    }),
                    llh: Some(WalkTriple {
                        a: r(19, 20) - l() * r(1, 10),
                        b: k2.clone(),
                        k: k2,
                    }),
                    hhl: Some(WalkTriple {
                        a: l() * r(3, 5) - r(9, 20),
                        b: k3.clone(),
                        k: k3,
                    }),
                    b4: None,
                }
            }
        }
    }
}

/// Combination and closed-form parameters for sparsity `ell`.
pub fn regime_plan<T: Scalar>(ell: &T) -> Result<(Combination, ParameterPlan<T>)> {
    let regime = Regime::of(ell)?;
    Ok((regime.combination(), regime.closed_form(ell)))
}
