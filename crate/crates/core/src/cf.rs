//! Periodic continued fractions of quadratic irrationals `(P0 + sqrt(d)) / Q0`
//! computed with the integer-only P/Q recurrence
//!
//! ```text
//! a_k     = floor((P_k + sqrt d) / Q_k)
//! P_{k+1} = a_k Q_k - P_k
//! Q_{k+1} = (d - P_{k+1}^2) / Q_k
//! ```
//!
//! No floating point is involved anywhere: floors against `sqrt d` are taken
//! through `isqrt(d)`, which is exact because `d` is never a square.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_square, isqrt, to_int};
use crate::error::{Error, Result};

/// Default cap on the number of P/Q states visited by [`cf_expand`].
pub const DEFAULT_MAX_PERIOD: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CfConfig {
    pub max_period: usize,
}

impl Default for CfConfig {
    fn default() -> Self {
        Self {
            max_period: DEFAULT_MAX_PERIOD,
        }
    }
}

/// `(p0 + sqrt(d)) / q0` with `q0 | d - p0^2` (normalized on construction).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadIrrational {
    d: BigUint,
    p0: BigInt,
    q0: BigInt,
}

impl QuadIrrational {
    /// `sqrt(d)` itself.
    pub fn sqrt(d: impl Into<BigUint>) -> Result<Self> {
        Self::new(BigInt::zero(), BigInt::one(), d)
    }

    /// Builds `(p0 + sqrt(d)) / q0`. When `q0` does not divide `d - p0^2` the
    /// triple is rescaled to `(p0|q0| + sqrt(d q0^2)) / (q0|q0|)`, which is the
    /// same real number.
    pub fn new(p0: impl Into<BigInt>, q0: impl Into<BigInt>, d: impl Into<BigUint>) -> Result<Self> {
        let (p0, q0, d) = (p0.into(), q0.into(), d.into());
        check_radicand(&d)?;
        if q0.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let di = to_int(&d);
        if ((&di - &p0 * &p0) % &q0).is_zero() {
            return Ok(Self { d, p0, q0 });
        }
        let scale = q0.abs();
        let dd = d * scale.magnitude() * scale.magnitude();
        Ok(Self {
            d: dd,
            p0: &p0 * &scale,
            q0: &q0 * &scale,
        })
    }

    pub fn radicand(&self) -> &BigUint {
        &self.d
    }

    pub fn numerator_shift(&self) -> &BigInt {
        &self.p0
    }

    pub fn denominator(&self) -> &BigInt {
        &self.q0
    }

    /// Iterator over the P/Q states and partial quotients, starting at index 0.
    pub fn pq_states(&self) -> PqIter {
        PqIter {
            d: to_int(&self.d),
            s: to_int(&isqrt(&self.d)),
            p: self.p0.clone(),
            q: self.q0.clone(),
        }
    }
}

pub(crate) fn check_radicand(d: &BigUint) -> Result<()> {
    if *d < BigUint::from(2u32) {
        if d.is_one() || d.is_zero() {
            return Err(Error::SquareRadicand(d.clone()));
        }
        return Err(Error::RadicandTooSmall(d.clone()));
    }
    if is_square(d) {
        return Err(Error::SquareRadicand(d.clone()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqState {
    pub p: BigInt,
    pub q: BigInt,
    pub a: BigInt,
}

/// Endless P/Q recurrence for one quadratic irrational.
#[derive(Debug, Clone)]
pub struct PqIter {
    d: BigInt,
    s: BigInt,
    p: BigInt,
    q: BigInt,
}

impl PqIter {
    fn floor_quotient(&self) -> BigInt {
        // sqrt(d) is irrational, so floor(P + sqrt d) = P + s and the
        // quotient by Q is never an integer.
        let num = &self.p + &self.s;
        if self.q.sign() == Sign::Plus {
            num.div_floor(&self.q)
        } else {
            let mag: BigInt = -&self.q;
            -(num.div_floor(&mag) + 1u32)
        }
    }

    /// `(P + sqrt d)/Q` is reduced (purely periodic) iff `Q > 0`, `P < sqrt d`
    /// and `P + Q > sqrt d`.
    fn is_reduced(&self) -> bool {
        self.q.is_positive() && self.p <= self.s && &self.p + &self.q > self.s
    }

    fn state(&self) -> (BigInt, BigInt) {
        (self.p.clone(), self.q.clone())
    }
}

impl Iterator for PqIter {
    type Item = PqState;

    fn next(&mut self) -> Option<PqState> {
        let a = self.floor_quotient();
        let out = PqState {
            p: self.p.clone(),
            q: self.q.clone(),
            a: a.clone(),
        };
        let p_next = &a * &self.q - &self.p;
        let q_next = (&self.d - &p_next * &p_next) / &self.q;
        self.p = p_next;
        self.q = q_next;
        Some(out)
    }
}

/// `[a0; pre..., overline(period...)]`. For `sqrt(d)` the pre-period is
/// empty and the period ends with `2 a0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfExpansion {
    pub a0: BigInt,
    pub preperiod: Vec<BigUint>,
    pub period: Vec<BigUint>,
}

impl CfExpansion {
    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// Shape every `sqrt(d)` expansion has: no pre-period, last period term
    /// `2 a0`, and the rest of the period a palindrome.
    pub fn has_sqrt_shape(&self) -> bool {
        let Some((last, body)) = self.period.split_last() else {
            return false;
        };
        self.preperiod.is_empty() && to_int(last) == &self.a0 * 2 && body.iter().eq(body.iter().rev())
    }

    /// Partial quotients `a_0, a_1, ...` without end.
    pub fn terms(&self) -> impl Iterator<Item = BigInt> + '_ {
        std::iter::once(self.a0.clone())
            .chain(self.preperiod.iter().map(to_int))
            .chain(self.period.iter().map(to_int).cycle())
    }

    /// Builds a canonical expansion from a possibly degenerate pattern:
    /// interior zero quotients are removed with `[.., x, 0, y, ..] = [.., x+y, ..]`
    /// and the period is shortened to its minimal repeating block.
    pub fn canonical(a0: BigInt, period: Vec<BigInt>) -> Result<Self> {
        let mut terms = period;
        while let Some(j) = terms.iter().position(|t| t.is_zero()) {
            if j == 0 || j + 1 == terms.len() || terms.len() < 3 {
                return Err(Error::PatternInapplicable(
                    "zero partial quotient at a period boundary".into(),
                ));
            }
            let merged = &terms[j - 1] + &terms[j + 1];
            terms.splice(j - 1..=j + 1, std::iter::once(merged));
        }
        if terms.is_empty() {
            return Err(Error::PatternInapplicable("empty period".into()));
        }
        if terms.iter().any(|t| t.is_negative()) {
            return Err(Error::PatternInapplicable("negative partial quotient".into()));
        }
        let period: Vec<BigUint> = terms.iter().map(crate::arith::to_nat).collect();
        Ok(Self {
            a0,
            preperiod: Vec::new(),
            period: minimal_block(period),
        })
    }
}

fn minimal_block(period: Vec<BigUint>) -> Vec<BigUint> {
    let n = period.len();
    for len in 1..n {
        if n.is_multiple_of(len) && (len..n).all(|j| period[j] == period[j % len]) {
            return period[..len].to_vec();
        }
    }
    period
}

impl std::fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[BigUint]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        write!(f, "[{}; ", self.a0)?;
        if !self.preperiod.is_empty() {
            write!(f, "{}, ", join(&self.preperiod))?;
        }
        write!(f, "overline({})]", join(&self.period))
    }
}

pub fn cf_expand(x: &QuadIrrational) -> Result<CfExpansion> {
    cf_expand_with(x, &CfConfig::default())
}

/// Expands `x`, detecting the period by the recurrence of a (P, Q) state.
/// The first reduced tail marks the start of the period, so only that one
/// state needs to be remembered.
pub fn cf_expand_with(x: &QuadIrrational, config: &CfConfig) -> Result<CfExpansion> {
    let mut it = x.pq_states();
    let first = it.next().expect("pq iterator is endless");
    let mut preperiod = Vec::new();
    let mut visited = 1usize;
    while !it.is_reduced() {
        let st = it.next().expect("pq iterator is endless");
        preperiod.push(crate::arith::to_nat(&st.a));
        visited += 1;
        if visited > config.max_period {
            return Err(Error::PeriodLimit {
                limit: config.max_period,
            });
        }
    }
    let anchor = it.state();
    let mut period = Vec::new();
    loop {
        let st = it.next().expect("pq iterator is endless");
        period.push(crate::arith::to_nat(&st.a));
        visited += 1;
        if it.state() == anchor {
            break;
        }
        if visited > config.max_period {
            return Err(Error::PeriodLimit {
                limit: config.max_period,
            });
        }
    }
    Ok(CfExpansion {
        a0: first.a,
        preperiod,
        period,
    })
}

pub fn period_length(x: &QuadIrrational) -> Result<usize> {
    Ok(cf_expand(x)?.period_len())
}

/// Expansion of `sqrt(d)` for a plain radicand.
pub fn sqrt_cf(d: &BigUint) -> Result<CfExpansion> {
    cf_expand(&QuadIrrational::sqrt(d.clone())?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigUint,
    pub index: usize,
}

/// The first `count` convergents `p_k / q_k`, `k = 0..count`.
pub fn convergents(cf: &CfExpansion, count: usize) -> Vec<Convergent> {
    ConvergentIter::new(cf).take(count).collect()
}

/// Lazily produces convergents from the seeds
/// `p_{-2}=0, p_{-1}=1, q_{-2}=1, q_{-1}=0`.
pub struct ConvergentIter<'a> {
    terms: Box<dyn Iterator<Item = BigInt> + 'a>,
    p: (BigInt, BigInt),
    q: (BigInt, BigInt),
    index: usize,
}

impl<'a> ConvergentIter<'a> {
    pub fn new(cf: &'a CfExpansion) -> Self {
        Self {
            terms: Box::new(cf.terms()),
            p: (BigInt::zero(), BigInt::one()),
            q: (BigInt::one(), BigInt::zero()),
            index: 0,
        }
    }
}

impl Iterator for ConvergentIter<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let a = self.terms.next()?;
        let p = &a * &self.p.1 + &self.p.0;
        let q = &a * &self.q.1 + &self.q.0;
        self.p = (std::mem::take(&mut self.p.1), p.clone());
        self.q = (std::mem::take(&mut self.q.1), q.clone());
        let out = Convergent {
            p,
            q: crate::arith::to_nat(&q),
            index: self.index,
        };
        self.index += 1;
        Some(out)
    }
}
