//! Generic solvers for `x^2 - dy^2 = N`, `N` in `{1, -1, 4, -4}`.
//!
//! The `±1` fundamentals come from the convergents of `sqrt(d)`: with period
//! length `l`, `(p_{l-1}, q_{l-1})` has norm `(-1)^l`, and `(p_{2l-1}, q_{2l-1})`
//! always has norm `+1`. The `±4` fundamentals reduce to the `±1` case when
//! `d` is not `1 mod 4`; otherwise they are read from the expansion of
//! `(1 + sqrt d)/2`, which can produce "half-integer" units that no doubling
//! rule reaches.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::to_nat;
use crate::cf::{cf_expand_with, check_radicand, convergents, CfConfig, ConvergentIter, QuadIrrational};
use crate::error::{Error, Result};

/// Right-hand side of the equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PellN {
    One,
    MinusOne,
    Four,
    MinusFour,
}

impl PellN {
    pub const ALL: [PellN; 4] = [PellN::One, PellN::MinusOne, PellN::Four, PellN::MinusFour];

    pub fn value(self) -> i32 {
        match self {
            PellN::One => 1,
            PellN::MinusOne => -1,
            PellN::Four => 4,
            PellN::MinusFour => -4,
        }
    }
}

impl TryFrom<i64> for PellN {
    type Error = Error;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(PellN::One),
            -1 => Ok(PellN::MinusOne),
            4 => Ok(PellN::Four),
            -4 => Ok(PellN::MinusFour),
            other => Err(Error::UnsupportedN(other)),
        }
    }
}

impl fmt::Display for PellN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A solution `(x, y)` of `x^2 - d y^2 = n_value`, at position `index` of its
/// chain (the trivial `(1, 0)` has index 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellSolution {
    pub x: BigUint,
    pub y: BigUint,
    pub d: BigUint,
    pub n_value: i32,
    pub index: usize,
}

impl PellSolution {
    pub fn new(
        x: impl Into<BigUint>,
        y: impl Into<BigUint>,
        d: impl Into<BigUint>,
        n_value: i32,
        index: usize,
    ) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
            d: d.into(),
            n_value,
            index,
        }
    }

    /// `x^2 - d y^2`, exactly.
    pub fn norm(&self) -> BigInt {
        BigInt::from(&self.x * &self.x) - BigInt::from(&self.d * &self.y * &self.y)
    }

    pub fn verify(&self) -> bool {
        self.norm() == BigInt::from(self.n_value)
    }

    pub fn pair(&self) -> (BigUint, BigUint) {
        (self.x.clone(), self.y.clone())
    }
}

impl fmt::Display for PellSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalPair {
    pub plus_one: PellSolution,
    pub minus_one: Option<PellSolution>,
    /// Period length of `sqrt(d)`.
    pub period_len: usize,
}

/// `(x1 + y1 sqrt d)(x2 + y2 sqrt d)`.
pub(crate) fn compose(d: &BigUint, a: (&BigUint, &BigUint), b: (&BigUint, &BigUint)) -> (BigUint, BigUint) {
    (a.0 * b.0 + d * a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn halve(v: BigUint) -> BigUint {
    debug_assert!(v.is_even(), "half-step produced an odd coordinate");
    v >> 1u32
}

/// Solver carrying the continued-fraction configuration.
#[derive(Debug, Clone, Copy, Default)]
pub struct PellSolver {
    pub cf: CfConfig,
}

impl PellSolver {
    pub fn new(cf: CfConfig) -> Self {
        Self { cf }
    }

    pub fn fundamental_pm1(&self, d: &BigUint) -> Result<FundamentalPair> {
        let cf = cf_expand_with(&QuadIrrational::sqrt(d.clone())?, &self.cf)?;
        let l = cf.period_len();
        let conv = convergents(&cf, 2 * l);
        let at = |k: usize, n: i32| {
            let c = &conv[k];
            PellSolution::new(to_nat(&c.p), c.q.clone(), d.clone(), n, 1)
        };
        let (plus_one, minus_one) = if l % 2 == 0 {
            (at(l - 1, 1), None)
        } else {
            (at(2 * l - 1, 1), Some(at(l - 1, -1)))
        };
        Ok(FundamentalPair {
            plus_one,
            minus_one,
            period_len: l,
        })
    }

    /// First `count` positive solutions for `N = ±1`.
    pub fn solutions(&self, d: &BigUint, n: PellN, count: usize) -> Result<Vec<PellSolution>> {
        check_radicand(d)?;
        let pair = self.fundamental_pm1(d)?;
        let (first, step) = match n {
            PellN::One => (pair.plus_one.clone(), pair.plus_one),
            PellN::MinusOne => {
                let m = pair
                    .minus_one
                    .ok_or_else(|| Error::NoSolution { d: d.clone(), n: -1 })?;
                (m, pair.plus_one)
            }
            _ => return self.solutions_4(d, n, count),
        };
        let mut out = Vec::with_capacity(count);
        let mut cur = first.pair();
        for index in 1..=count {
            if index > 1 {
                cur = compose(d, (&cur.0, &cur.1), (&step.x, &step.y));
            }
            out.push(PellSolution::new(
                cur.0.clone(),
                cur.1.clone(),
                d.clone(),
                n.value(),
                index,
            ));
        }
        Ok(out)
    }

    /// The two least units read from the expansion of `(1 + sqrt d)/2`,
    /// `d = 1 mod 4`, as `±4` solutions `(2p - q, q)`. Walks convergents
    /// until the P/Q denominator returns to 2.
    fn half_units(&self, d: &BigUint) -> Result<(PellSolution, Option<PellSolution>)> {
        let x = QuadIrrational::new(1, 2, d.clone())?;
        let cf = cf_expand_with(&x, &self.cf)?;
        let q0 = x.denominator().clone();
        let mut conv = ConvergentIter::new(&cf);
        let mut states = x.pq_states();
        states.next();
        let mut found: Vec<PellSolution> = Vec::new();
        // two returns are enough: the first has norm -4 or +4, the second +4
        let limit = 2 * (cf.preperiod.len() + cf.period_len()) + 2;
        for _ in 0..limit {
            let c = conv.next().expect("endless terms");
            let st = states.next().expect("endless states");
            if st.q == q0 {
                let xx = to_nat(&(&c.p * 2 - BigInt::from(c.q.clone())));
                let sol = PellSolution::new(xx, c.q.clone(), d.clone(), 0, 1);
                let norm = sol.norm();
                let n_value = if norm == BigInt::from(4) { 4 } else { -4 };
                debug_assert_eq!(norm.magnitude(), &BigUint::from(4u32));
                found.push(PellSolution { n_value, ..sol });
                if n_value == 4 {
                    break;
                }
            }
        }
        match found.as_slice() {
            [only] if only.n_value == 4 => Ok((only.clone(), None)),
            [neg, pos] if neg.n_value == -4 && pos.n_value == 4 => Ok((pos.clone(), Some(neg.clone()))),
            _ => unreachable!("expansion of (1 + sqrt d)/2 must return to Q = 2 within two periods"),
        }
    }

    pub fn fundamental_4(&self, d: &BigUint) -> Result<PellSolution> {
        check_radicand(d)?;
        let r = (d % 4u32).try_into().unwrap_or(0u32);
        Ok(match r {
            0 => {
                let quarter = d / 4u32;
                let f = self.fundamental_pm1(&quarter)?.plus_one;
                PellSolution::new(f.x * 2u32, f.y, d.clone(), 4, 1)
            }
            1 => self.half_units(d)?.0,
            _ => {
                let f = self.fundamental_pm1(d)?.plus_one;
                PellSolution::new(f.x * 2u32, f.y * 2u32, d.clone(), 4, 1)
            }
        })
    }

    pub fn fundamental_neg4(&self, d: &BigUint) -> Result<Option<PellSolution>> {
        check_radicand(d)?;
        let r: u32 = (d % 4u32).try_into().unwrap_or(0);
        Ok(match r {
            0 => {
                let quarter = d / 4u32;
                self.fundamental_pm1(&quarter)?
                    .minus_one
                    .map(|m| PellSolution::new(m.x * 2u32, m.y, d.clone(), -4, 1))
            }
            1 => self.half_units(d)?.1,
            _ => self
                .fundamental_pm1(d)?
                .minus_one
                .map(|m| PellSolution::new(m.x * 2u32, m.y * 2u32, d.clone(), -4, 1)),
        })
    }

    /// First `count` positive solutions for `N = ±4`, generated by the
    /// half-step `z -> z z1 / 2`. For `-4` only the odd powers of the
    /// fundamental are kept, i.e. `z1^(2n-1) / 4^(n-1)`.
    pub fn solutions_4(&self, d: &BigUint, n: PellN, count: usize) -> Result<Vec<PellSolution>> {
        let first = match n {
            PellN::Four => self.fundamental_4(d)?,
            PellN::MinusFour => self
                .fundamental_neg4(d)?
                .ok_or_else(|| Error::NoSolution { d: d.clone(), n: -4 })?,
            _ => return self.solutions(d, n, count),
        };
        let step = match n {
            PellN::Four => first.pair(),
            _ => {
                let (x, y) = compose(d, (&first.x, &first.y), (&first.x, &first.y));
                (halve(x), halve(y))
            }
        };
        let mut out = Vec::with_capacity(count);
        let mut cur = first.pair();
        for index in 1..=count {
            if index > 1 {
                let (x, y) = compose(d, (&cur.0, &cur.1), (&step.0, &step.1));
                cur = (halve(x), halve(y));
            }
            out.push(PellSolution::new(
                cur.0.clone(),
                cur.1.clone(),
                d.clone(),
                n.value(),
                index,
            ));
        }
        Ok(out)
    }

    pub fn solve(&self, d: &BigUint, n: PellN, count: usize) -> Result<Vec<PellSolution>> {
        check_radicand(d)?;
        if count == 0 {
            return Ok(Vec::new());
        }
        match n {
            PellN::One | PellN::MinusOne => self.solutions(d, n, count),
            PellN::Four | PellN::MinusFour => self.solutions_4(d, n, count),
        }
    }
}

pub fn fundamental_pm1(d: &BigUint) -> Result<FundamentalPair> {
    PellSolver::default().fundamental_pm1(d)
}

pub fn solutions(d: &BigUint, n: PellN, count: usize) -> Result<Vec<PellSolution>> {
    PellSolver::default().solutions(d, n, count)
}

pub fn fundamental_4(d: &BigUint) -> Result<PellSolution> {
    PellSolver::default().fundamental_4(d)
}

pub fn fundamental_neg4(d: &BigUint) -> Result<Option<PellSolution>> {
    PellSolver::default().fundamental_neg4(d)
}

pub fn solutions_4(d: &BigUint, n: PellN, count: usize) -> Result<Vec<PellSolution>> {
    PellSolver::default().solutions_4(d, n, count)
}

pub fn solve(d: &BigUint, n: PellN, count: usize) -> Result<Vec<PellSolution>> {
    PellSolver::default().solve(d, n, count)
}

/// The trivial solution `(1, 0)` of the `+1` equation.
pub fn identity_solution(d: &BigUint) -> PellSolution {
    PellSolution::new(BigUint::one(), BigUint::zero(), d.clone(), 1, 0)
}
