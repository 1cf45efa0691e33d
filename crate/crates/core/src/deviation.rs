//! Places where a closed form given for the special family disagrees with
//! direct computation. Operations return the computed value and attach a
//! [`Flag`] carrying both versions.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Deviation {
    /// `sqrt(a^2k b^2l - c^m)` has integer part `a^k b^l - 1`, not `a^k b^l`.
    Minus1CfIntegerPart,
    /// For `A^2 - 1` the stated `+1` solution is the square of the fundamental `(A, 1)`.
    Minus1UnitSquare,
    /// `(2 x1, 2 y1)` is not always the least solution of `x^2 - dy^2 = 4`.
    DoublingRuleFour,
    /// The `+1` chain is `L_n(2 x1, -1)/2`, not `L_n(x1, -1)/2`.
    LucasFirstArgument,
    /// For `d = a^2k + 2a^m` the fundamental x is `a^(2k-m) + 1`.
    PowerFormD2Constant,
    /// The reduced Pell forms of the two minus-sign families are swapped.
    ReductionMinusCaseSwap,
    /// The `-4` chain uses odd powers `z1^(2n-1) / 4^(n-1)`.
    Neg4ChainExponent,
    /// A negative equation declared unsolvable has a solution (or the reverse).
    NegativeEquationException,
    /// The cycles of the `i = 2` families differ from the stated forms.
    CycleD2Forms,
    /// Stated proper cycles misplace the sign flip.
    ProperCycleForms,
    /// `g^n (1, 0)^T` gives `(x_n, d y_n)`; the solution is the first row.
    AutomorphismOrientation,
}

impl Deviation {
    pub const ALL: [Deviation; 11] = [
        Deviation::Minus1CfIntegerPart,
        Deviation::Minus1UnitSquare,
        Deviation::DoublingRuleFour,
        Deviation::LucasFirstArgument,
        Deviation::PowerFormD2Constant,
        Deviation::ReductionMinusCaseSwap,
        Deviation::Neg4ChainExponent,
        Deviation::NegativeEquationException,
        Deviation::CycleD2Forms,
        Deviation::ProperCycleForms,
        Deviation::AutomorphismOrientation,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            Deviation::Minus1CfIntegerPart => "minus1-cf-integer-part",
            Deviation::Minus1UnitSquare => "minus1-unit-square",
            Deviation::DoublingRuleFour => "doubling-rule-four",
            Deviation::LucasFirstArgument => "lucas-first-argument",
            Deviation::PowerFormD2Constant => "power-form-d2-constant",
            Deviation::ReductionMinusCaseSwap => "reduction-minus-case-swap",
            Deviation::Neg4ChainExponent => "neg4-chain-exponent",
            Deviation::NegativeEquationException => "negative-equation-exception",
            Deviation::CycleD2Forms => "cycle-d2-forms",
            Deviation::ProperCycleForms => "proper-cycle-forms",
            Deviation::AutomorphismOrientation => "automorphism-orientation",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Deviation::Minus1CfIntegerPart => "integer part of sqrt(A^2 - C) is A - 1",
            Deviation::Minus1UnitSquare => "for A^2 - 1 the stated +1 solution is the square of (A, 1)",
            Deviation::DoublingRuleFour => "doubled +1 fundamental is not the least +4 solution",
            Deviation::LucasFirstArgument => "+1 chain needs L_n(2x1, -1)/2",
            Deviation::PowerFormD2Constant => "fundamental x for a^2k + 2a^m is a^(2k-m) + 1",
            Deviation::ReductionMinusCaseSwap => "reduced forms of the two minus families are swapped",
            Deviation::Neg4ChainExponent => "-4 chain uses the exponent 2n - 1",
            Deviation::NegativeEquationException => "negative equation is solvable at d = 2",
            Deviation::CycleD2Forms => "stated cycle forms for i = 2 differ from the computed cycle",
            Deviation::ProperCycleForms => "stated proper cycle misplaces the sign flip",
            Deviation::AutomorphismOrientation => "solutions are the first row of g^n",
        }
    }

    pub fn from_slug(s: &str) -> Option<Deviation> {
        Deviation::ALL.into_iter().find(|d| d.slug() == s)
    }
}

impl fmt::Display for Deviation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

/// One disagreement: the stated value next to the computed one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub deviation: Deviation,
    pub printed: String,
    pub computed: String,
}

impl Flag {
    pub fn new(deviation: Deviation, printed: impl fmt::Display, computed: impl fmt::Display) -> Self {
        Self {
            deviation,
            printed: printed.to_string(),
            computed: computed.to_string(),
        }
    }
}

/// A computed value plus the deviations met while producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotated<T> {
    pub value: T,
    pub flags: Vec<Flag>,
}

impl<T> Annotated<T> {
    pub fn clean(value: T) -> Self {
        Self {
            value,
            flags: Vec::new(),
        }
    }

    pub fn flagged(value: T, flag: Flag) -> Self {
        Self {
            value,
            flags: vec![flag],
        }
    }

    pub fn with_flag(mut self, flag: Option<Flag>) -> Self {
        self.flags.extend(flag);
        self
    }

    pub fn has(&self, d: Deviation) -> bool {
        self.flags.iter().any(|f| f.deviation == d)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Annotated<U> {
        Annotated {
            value: f(self.value),
            flags: self.flags,
        }
    }
}

/// A flag only when the two renderings differ.
pub(crate) fn compare<P: fmt::Display, C: fmt::Display>(d: Deviation, printed: P, computed: C) -> Option<Flag> {
    let (p, c) = (printed.to_string(), computed.to_string());
    (p != c).then_some(Flag {
        deviation: d,
        printed: p,
        computed: c,
    })
}
