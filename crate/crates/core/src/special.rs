//! The family `d = A^2 ± i C` with `A = a^k b^l`, `C = c^m`, `c | ab`,
//! `k, l >= m`, `i` in `{1, 2}`, and `h = A / C`.
//!
//! Every closed form here is a prediction. The generic solvers are the
//! reference: where a stated formula disagrees with them the computed value
//! is returned and a [`Flag`] records the stated one.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::arith::{binomial, is_square, is_squarefree_bounded, to_int, to_nat};
use crate::cf::{convergents, CfExpansion};
use crate::deviation::{compare, Annotated, Deviation, Flag};
use crate::error::{Error, Result};
use crate::lucas::LucasParams;
use crate::matrix::Mat2;
use crate::pell::{compose, PellSolution, PellSolver};

pub const DEFAULT_SQUAREFREE_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(Error::InvalidParameter(format!("sign must be + or -, got {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    D1Plus,
    D1Minus,
    D2Plus,
    D2Minus,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::D1Plus => "d1+",
            Family::D1Minus => "d1-",
            Family::D2Plus => "d2+",
            Family::D2Minus => "d2-",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated parameter point. Derived values are computed once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpecialD {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub k: u32,
    pub l: u32,
    pub m: u32,
    pub i: u8,
    pub sign: Sign,
    big_a: BigUint,
    big_c: BigUint,
    h: BigUint,
    d: BigUint,
}

impl SpecialD {
    pub fn family(&self) -> Family {
        match (self.i, self.sign) {
            (1, Sign::Plus) => Family::D1Plus,
            (1, Sign::Minus) => Family::D1Minus,
            (_, Sign::Plus) => Family::D2Plus,
            (_, Sign::Minus) => Family::D2Minus,
        }
    }

    /// `a^k b^l`
    pub fn ab_power(&self) -> &BigUint {
        &self.big_a
    }

    /// `c^m`
    pub fn c_power(&self) -> &BigUint {
        &self.big_c
    }

    pub fn h(&self) -> &BigUint {
        &self.h
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn is_squarefree(&self, bound: u64) -> Option<bool> {
        is_squarefree_bounded(&self.d, bound)
    }

    pub fn params(&self) -> String {
        format!(
            "a={} b={} c={} k={} l={} m={} i={} sign={}",
            self.a,
            self.b,
            self.c,
            self.k,
            self.l,
            self.m,
            self.i,
            self.sign.symbol()
        )
    }
}

impl fmt::Display for SpecialD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, d={})", self.family(), self.params(), self.d)
    }
}

#[allow(clippy::too_many_arguments)]
pub fn build_special(a: u64, b: u64, c: u64, k: u32, l: u32, m: u32, i: u8, sign: Sign) -> Result<SpecialD> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::InvalidParameter("a, b and c must be at least 1".into()));
    }
    if i != 1 && i != 2 {
        return Err(Error::InvalidParameter(format!("i must be 1 or 2, got {i}")));
    }
    if m == 0 || k < m || l < m {
        return Err(Error::ExponentViolation { k, l, m });
    }
    if (u128::from(a) * u128::from(b)) % u128::from(c) != 0 {
        return Err(Error::DivisibilityViolation { a, b, c });
    }
    let big_a = BigUint::from(a).pow(k) * BigUint::from(b).pow(l);
    let big_c = BigUint::from(c).pow(m);
    let h = &big_a / &big_c;
    debug_assert!((&big_a % &big_c).is_zero());
    let sq = &big_a * &big_a;
    let shift = &big_c * u32::from(i);
    let d = match sign {
        Sign::Plus => sq + shift,
        Sign::Minus => {
            if sq <= shift {
                return Err(Error::NonpositiveD(to_int(&sq) - to_int(&shift)));
            }
            sq - shift
        }
    };
    if is_square(&d) {
        return Err(Error::SquareD(d));
    }
    Ok(SpecialD {
        a,
        b,
        c,
        k,
        l,
        m,
        i,
        sign,
        big_a,
        big_c,
        h,
        d,
    })
}

/// Every valid point with `a, b, c <= abc_max` and `k, l, m <= exp_max`.
pub fn grid(abc_max: u64, exp_max: u32) -> Vec<SpecialD> {
    let mut out = Vec::new();
    for a in 1..=abc_max {
        for b in 1..=abc_max {
            for c in 1..=abc_max {
                for k in 1..=exp_max {
                    for l in 1..=exp_max {
                        for m in 1..=exp_max {
                            for i in [1u8, 2] {
                                for sign in [Sign::Plus, Sign::Minus] {
                                    if let Ok(sd) = build_special(a, b, c, k, l, m, i, sign) {
                                        out.push(sd);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn int(v: &BigUint) -> BigInt {
    to_int(v)
}

/// The stated pattern for `sqrt(d)`, canonically collapsed.
pub fn predicted_cf(sd: &SpecialD) -> Result<Annotated<CfExpansion>> {
    let a = int(&sd.big_a);
    let h = int(&sd.h);
    let one = BigInt::one();
    let two = BigInt::from(2);
    Ok(match sd.family() {
        Family::D1Plus => Annotated::clean(CfExpansion::canonical(a.clone(), vec![&h * 2, &a * 2])?),
        Family::D2Plus => Annotated::clean(CfExpansion::canonical(a.clone(), vec![h, &a * 2])?),
        Family::D1Minus => {
            let period = vec![one.clone(), &h * 2 - &two, one, &a * 2 - &two];
            let cf = CfExpansion::canonical(&a - 1, period.clone())?;
            let printed = CfExpansion::canonical(a, period)?;
            Annotated::clean(cf.clone()).with_flag(compare(Deviation::Minus1CfIntegerPart, printed, cf))
        }
        Family::D2Minus => {
            if sd.h.is_one() {
                return Err(Error::PatternInapplicable(
                    "h = 1 gives a negative partial quotient".into(),
                ));
            }
            let period = vec![one.clone(), &h - &two, one, &a * 2 - &two];
            Annotated::clean(CfExpansion::canonical(&a - 1, period)?)
        }
    })
}

fn stated_unit(sd: &SpecialD) -> PellSolution {
    let y = if sd.i == 1 { &sd.h * 2u32 } else { sd.h.clone() };
    let ya = &y * &sd.big_a;
    let x = match sd.sign {
        Sign::Plus => ya + 1u32,
        Sign::Minus => ya - 1u32,
    };
    PellSolution::new(x, y, sd.d.clone(), 1, 1)
}

/// `d1-` with `C = 1` is `A^2 - 1`, whose period collapses to `[A - 1; 1, 2A - 2]`
/// and whose fundamental is `(A, 1)`.
fn unit(sd: &SpecialD) -> PellSolution {
    if sd.family() == Family::D1Minus && sd.big_c.is_one() {
        PellSolution::new(sd.big_a.clone(), 1u32, sd.d.clone(), 1, 1)
    } else {
        stated_unit(sd)
    }
}

/// Fundamental solution of `x^2 - dy^2 = 1`: `(2hA ± 1, 2h)` for `i = 1` and
/// `(hA ± 1, h)` for `i = 2`.
pub fn fundamental_special(sd: &SpecialD) -> Annotated<PellSolution> {
    let computed = unit(sd);
    let flag = compare(Deviation::Minus1UnitSquare, stated_unit(sd), &computed);
    Annotated::clean(computed).with_flag(flag)
}

/// Stated and computed answers for a negative equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeStatus {
    /// The witness given in closed form, if any.
    pub printed: Option<PellSolution>,
    /// The least solution found by the generic solver.
    pub fundamental: Option<PellSolution>,
    pub flags: Vec<Flag>,
}

fn render(s: &Option<PellSolution>) -> String {
    s.as_ref().map_or_else(|| "none".to_string(), ToString::to_string)
}

fn negative_status(printed: Option<PellSolution>, fundamental: Option<PellSolution>) -> NegativeStatus {
    let flags = if printed.is_some() != fundamental.is_some() {
        vec![Flag::new(
            Deviation::NegativeEquationException,
            render(&printed),
            render(&fundamental),
        )]
    } else {
        Vec::new()
    };
    NegativeStatus {
        printed,
        fundamental,
        flags,
    }
}

fn c_is_one(sd: &SpecialD) -> bool {
    sd.family() == Family::D1Plus && sd.big_c.is_one()
}

/// `x^2 - dy^2 = -1` is stated solvable only for `d1+` with `C = 1`,
/// with witness `(A, 1)`.
pub fn neg1_status(sd: &SpecialD, solver: &PellSolver) -> Result<NegativeStatus> {
    let printed = c_is_one(sd).then(|| PellSolution::new(sd.big_a.clone(), 1u32, sd.d.clone(), -1, 1));
    let fundamental = solver.fundamental_pm1(&sd.d)?.minus_one;
    Ok(negative_status(printed, fundamental))
}

/// `x^2 - dy^2 = -4` is stated solvable only for `d1+` with `C = 1`,
/// with witness `(2A, 2)`.
pub fn neg4_status(sd: &SpecialD, solver: &PellSolver) -> Result<NegativeStatus> {
    let printed = c_is_one(sd).then(|| PellSolution::new(&sd.big_a * 2u32, 2u32, sd.d.clone(), -4, 1));
    let fundamental = solver.fundamental_neg4(&sd.d)?;
    Ok(negative_status(printed, fundamental))
}

/// Least solution of `x^2 - dy^2 = 4`; the stated `(2 x1, 2 y1)` is flagged
/// when it is not the least one.
pub fn fundamental_4_special(sd: &SpecialD, solver: &PellSolver) -> Result<Annotated<PellSolution>> {
    let f = unit(sd);
    let printed = PellSolution::new(&f.x * 2u32, &f.y * 2u32, sd.d.clone(), 4, 1);
    let computed = solver.fundamental_4(&sd.d)?;
    let flag = compare(Deviation::DoublingRuleFour, &printed, &computed);
    Ok(Annotated::clean(computed).with_flag(flag))
}

fn check_plus_one(sd: &SpecialD, s: &PellSolution) -> Result<()> {
    if s.d == sd.d && s.n_value == 1 && s.verify() {
        Ok(())
    } else {
        Err(Error::NotASolution {
            x: s.x.clone(),
            y: s.y.clone(),
            d: sd.d.clone(),
            n: 1,
        })
    }
}

/// `(x1 x + y1 d y, y1 x + x1 y)`.
pub fn next_solution_linear(sd: &SpecialD, prev: &PellSolution) -> Result<PellSolution> {
    check_plus_one(sd, prev)?;
    let f = unit(sd);
    let (x, y) = compose(&sd.d, (&f.x, &f.y), (&prev.x, &prev.y));
    Ok(PellSolution::new(x, y, sd.d.clone(), 1, prev.index + 1))
}

/// `u_n = (2 x1 - 1)(u_{n-1} + u_{n-2}) - u_{n-3}` for both coordinates.
pub fn next_solution_order3(
    sd: &SpecialD,
    s1: &PellSolution,
    s2: &PellSolution,
    s3: &PellSolution,
) -> Result<PellSolution> {
    for s in [s1, s2, s3] {
        check_plus_one(sd, s)?;
    }
    let k = int(&unit(sd).x) * 2 - 1;
    let step = |u1: &BigUint, u2: &BigUint, u3: &BigUint| to_nat(&(&k * (int(u3) + int(u2)) - int(u1)));
    let x = step(&s1.x, &s2.x, &s3.x);
    let y = step(&s1.y, &s2.y, &s3.y);
    let out = PellSolution::new(x, y, sd.d.clone(), 1, s3.index + 1);
    check_plus_one(sd, &out)?;
    Ok(out)
}

/// Linear-recurrence chain starting from the trivial solution.
pub fn solutions_linear(sd: &SpecialD, count: usize) -> Result<Vec<PellSolution>> {
    let mut out = Vec::with_capacity(count);
    let mut cur = crate::pell::identity_solution(&sd.d);
    for _ in 0..count {
        cur = next_solution_linear(sd, &cur)?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Order-3 chain: seeded with `(1, 0)` and the first two linear terms.
pub fn solutions_order3(sd: &SpecialD, count: usize) -> Result<Vec<PellSolution>> {
    let seed = solutions_linear(sd, count.min(2))?;
    let mut window = vec![crate::pell::identity_solution(&sd.d)];
    window.extend(seed.iter().cloned());
    let mut out = seed;
    while out.len() < count {
        let n = window.len();
        let next = next_solution_order3(sd, &window[n - 3], &window[n - 2], &window[n - 1])?;
        window.push(next.clone());
        out.push(next);
    }
    Ok(out)
}

/// `x_n = L_n(2 x1, -1)/2`, `y_n = y1 f_n(2 x1, -1)`.
pub fn solutions_lucas_1(sd: &SpecialD, count: usize) -> Annotated<Vec<PellSolution>> {
    let f = unit(sd);
    let p = LucasParams::new(int(&f.x) * 2, -1).expect("2 x1 >= 2");
    let out: Vec<PellSolution> = p
        .lucas_iter()
        .zip(p.fib_iter())
        .skip(1)
        .take(count)
        .enumerate()
        .map(|(j, (l, fib))| PellSolution::new(to_nat(&(l / 2)), &f.y * to_nat(&fib), sd.d.clone(), 1, j + 1))
        .collect();
    if count == 0 {
        return Annotated::clean(out);
    }
    // stated form at n = 1: L_1(x1, -1)/2 = x1/2
    let printed = format!("({}/2, {})", f.x, f.y);
    let flag = Flag::new(Deviation::LucasFirstArgument, printed, &out[0]);
    Annotated::flagged(out, flag)
}

/// `+4` chain in Lucas form from the least `+4` solution `(X, Y)`:
/// `x_n = L_n(X, -1)`, `y_n = Y f_n(X, -1)`. Stated with `(X, Y) = (2 x1, 2 y1)`.
pub fn solutions_lucas_4(sd: &SpecialD, count: usize, solver: &PellSolver) -> Result<Annotated<Vec<PellSolution>>> {
    let first = fundamental_4_special(sd, solver)?;
    let (xx, yy) = (first.value.x.clone(), first.value.y.clone());
    let p = LucasParams::new(int(&xx), -1).expect("X >= 3");
    let out = p
        .lucas_iter()
        .zip(p.fib_iter())
        .skip(1)
        .take(count)
        .enumerate()
        .map(|(j, (l, fib))| PellSolution::new(to_nat(&l), &yy * to_nat(&fib), sd.d.clone(), 4, j + 1))
        .collect();
    Ok(Annotated {
        value: out,
        flags: first.flags,
    })
}

/// `(x1, y1 d; y1, x1)`.
pub fn pell_matrix(sd: &SpecialD) -> Mat2 {
    let f = unit(sd);
    Mat2::new(int(&f.x), int(&(&f.y * &sd.d)), int(&f.y), int(&f.x))
}

/// `M^n` of `(x, y d; y, x)` by binomial expansion of `(x + y sqrt d)^n`.
pub fn closed_power(x: &BigUint, y: &BigUint, d: &BigUint, n: u64) -> Mat2 {
    let (top_even, top_odd) = if n.is_multiple_of(2) {
        (n / 2, (n / 2).checked_sub(1))
    } else {
        ((n - 1) / 2, Some((n - 1) / 2))
    };
    let term = |j: u64, odd: bool| {
        let e = 2 * j + u64::from(odd);
        binomial(n, e) * x.pow((n - e) as u32) * y.pow(e as u32) * d.pow(j as u32)
    };
    let m11: BigUint = (0..=top_even).map(|j| term(j, false)).sum();
    let m21: BigUint = top_odd.map_or_else(BigUint::zero, |t| (0..=t).map(|j| term(j, true)).sum());
    let m12 = &m21 * d;
    Mat2::new(int(&m11), int(&m12), int(&m21), int(&m11))
}

pub fn matrix_power_closed(sd: &SpecialD, n: u64) -> Mat2 {
    let f = unit(sd);
    closed_power(&f.x, &f.y, &sd.d, n)
}

/// `(M^n_11, M^n_21)`, the first column of `M^n`.
pub fn nth_solution_via_matrix(sd: &SpecialD, n: u64) -> PellSolution {
    let m = matrix_power_closed(sd, n);
    PellSolution::new(to_nat(&m.m11), to_nat(&m.m21), sd.d.clone(), 1, n as usize)
}

/// `+1` solutions read off the convergents of the stated expansion: with
/// period `l`, the n-th solution is `p/q` at index `n l - 1` (`2 n l - 1` for
/// odd `l`). Falls back to the generic expansion where no pattern applies.
pub fn solutions_via_convergents(sd: &SpecialD, count: usize, solver: &PellSolver) -> Result<Vec<PellSolution>> {
    let cf = match predicted_cf(sd) {
        Ok(a) => a.value,
        Err(Error::PatternInapplicable(_)) => {
            crate::cf::cf_expand_with(&crate::cf::QuadIrrational::sqrt(sd.d.clone())?, &solver.cf)?
        }
        Err(e) => return Err(e),
    };
    let l = cf.period_len();
    let stride = if l % 2 == 0 { l } else { 2 * l };
    let conv = convergents(&cf, stride * count);
    Ok((1..=count)
        .map(|n| {
            let c = &conv[n * stride - 1];
            PellSolution::new(to_nat(&c.p), c.q.clone(), sd.d.clone(), 1, n)
        })
        .collect())
}

/// Sub-families with `b = 1` and `c = a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PowerVariant {
    /// `a^2k + a^m`
    D1Plus,
    /// `a^2k + 2 a^m`
    D2Plus,
    /// `a^2k - a^k`
    D3,
}

impl std::str::FromStr for PowerVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d1+" => Ok(PowerVariant::D1Plus),
            "d2+" => Ok(PowerVariant::D2Plus),
            "d3" => Ok(PowerVariant::D3),
            other => Err(Error::InvalidParameter(format!("unknown power-form variant {other:?}"))),
        }
    }
}

pub fn power_form_d(a: u64, k: u32, m: u32, variant: PowerVariant) -> Result<BigUint> {
    if a == 0 {
        return Err(Error::InvalidParameter("a must be at least 1".into()));
    }
    let ak = BigUint::from(a).pow(k);
    let d = match variant {
        PowerVariant::D1Plus | PowerVariant::D2Plus => {
            if m == 0 || k < m {
                return Err(Error::ExponentViolation { k, l: k, m });
            }
            let am = BigUint::from(a).pow(m);
            let i = if variant == PowerVariant::D1Plus { 1u32 } else { 2 };
            &ak * &ak + am * i
        }
        PowerVariant::D3 => {
            if ak < BigUint::from(2u32) {
                return Err(Error::PatternInapplicable("a^k must be at least 2".into()));
            }
            &ak * &ak - &ak
        }
    };
    if is_square(&d) {
        return Err(Error::SquareD(d));
    }
    Ok(d)
}

pub fn power_form_cf(a: u64, k: u32, m: u32, variant: PowerVariant) -> Result<CfExpansion> {
    power_form_d(a, k, m, variant)?;
    let ak = BigInt::from(a).pow(k);
    match variant {
        PowerVariant::D1Plus => {
            let w = BigInt::from(a).pow(k - m);
            CfExpansion::canonical(ak.clone(), vec![w * 2, ak * 2])
        }
        PowerVariant::D2Plus => {
            let w = BigInt::from(a).pow(k - m);
            CfExpansion::canonical(ak.clone(), vec![w, ak * 2])
        }
        PowerVariant::D3 => CfExpansion::canonical(&ak - 1, vec![BigInt::from(2), ak * 2 - 2]),
    }
}

/// Fundamental `+1` solution for the two plus-sign power forms. Both are
/// stated to have no `-1` solution; a contrary computation is flagged.
pub fn fundamental_power_form(
    a: u64,
    k: u32,
    m: u32,
    variant: PowerVariant,
    solver: &PellSolver,
) -> Result<Annotated<PellSolution>> {
    let d = power_form_d(a, k, m, variant)?;
    let big = |e: u32| BigUint::from(a).pow(e);
    let (x, y, printed) = match variant {
        PowerVariant::D1Plus => (big(2 * k - m) * 2u32 + 1u32, big(k - m) * 2u32, None),
        PowerVariant::D2Plus => {
            let printed = format!("({}, {})", big(2 * k - m), big(k - m));
            (big(2 * k - m) + 1u32, big(k - m), Some(printed))
        }
        PowerVariant::D3 => {
            return Err(Error::PatternInapplicable(
                "no closed-form fundamental for a^2k - a^k".into(),
            ));
        }
    };
    let sol = PellSolution::new(x, y, d.clone(), 1, 1);
    let mut out = Annotated::clean(sol.clone());
    if let Some(p) = printed {
        out = out.with_flag(compare(Deviation::PowerFormD2Constant, p, &sol));
    }
    if let Some(neg) = solver.fundamental_pm1(&d)?.minus_one {
        out = out.with_flag(Some(Flag::new(Deviation::NegativeEquationException, "none", neg)));
    }
    Ok(out)
}

/// `(x1 + y1 sqrt d)^2 / 4` with the stated `-4` divisor at `n = 2`, printed
/// as exact fractions.
pub fn stated_neg4_second(first: &PellSolution) -> String {
    let (x, y) = compose(&first.d, (&first.x, &first.y), (&first.x, &first.y));
    let frac = |v: BigUint| {
        let g = v.gcd(&BigUint::from(4u32));
        let (num, den) = (&v / &g, BigUint::from(4u32) / &g);
        if den.is_one() {
            num.to_string()
        } else {
            format!("{num}/{den}")
        }
    };
    format!("({}, {})", frac(x), frac(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[allow(clippy::too_many_arguments)]
    fn sd(a: u64, b: u64, c: u64, k: u32, l: u32, m: u32, i: u8, s: char) -> SpecialD {
        let sign = if s == '+' { Sign::Plus } else { Sign::Minus };
        build_special(a, b, c, k, l, m, i, sign).unwrap()
    }

    fn u(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn pair(s: &PellSolution) -> (u64, u64) {
        (s.x.clone().try_into().unwrap(), s.y.clone().try_into().unwrap())
    }

    #[test]
    fn build() {
        let s = sd(2, 1, 2, 1, 1, 1, 1, '+');
        assert_eq!((s.h(), s.d()), (&u(1), &u(6)));
        let s = sd(4, 1, 2, 1, 1, 1, 2, '-');
        assert_eq!((s.h(), s.d()), (&u(2), &u(12)));
        assert!(matches!(
            build_special(2, 1, 3, 1, 1, 1, 1, Sign::Plus),
            Err(Error::DivisibilityViolation { .. })
        ));
        assert!(matches!(
            build_special(2, 1, 2, 1, 1, 2, 1, Sign::Plus),
            Err(Error::ExponentViolation { .. })
        ));
        assert!(matches!(
            build_special(1, 1, 1, 1, 1, 1, 1, Sign::Minus),
            Err(Error::NonpositiveD(_))
        ));
    }

    #[test]
    fn family_never_yields_a_square() {
        // A^2 ± iC lies strictly between (A-1)^2 and (A+1)^2 once C <= A
        for p in grid(5, 3) {
            assert!(!is_square(p.d()));
        }
    }

    #[test]
    fn predicted_expansions() {
        assert_eq!(
            predicted_cf(&sd(3, 1, 3, 1, 1, 1, 1, '+')).unwrap().value.to_string(),
            "[3; overline(2, 6)]"
        );
        assert_eq!(
            predicted_cf(&sd(2, 1, 2, 1, 1, 1, 2, '+')).unwrap().value.to_string(),
            "[2; overline(1, 4)]"
        );
        let p = predicted_cf(&sd(4, 1, 2, 1, 1, 1, 2, '-')).unwrap();
        assert_eq!(p.value.to_string(), "[3; overline(2, 6)]");
        assert!(p.flags.is_empty());
        assert_eq!(
            predicted_cf(&sd(2, 1, 1, 1, 1, 1, 1, '+')).unwrap().value.to_string(),
            "[2; overline(4)]"
        );
        let m = predicted_cf(&sd(3, 1, 1, 1, 1, 1, 1, '-')).unwrap();
        assert_eq!(m.value.to_string(), "[2; overline(1, 4)]");
        assert!(m.has(Deviation::Minus1CfIntegerPart));
        assert!(matches!(
            predicted_cf(&sd(3, 1, 3, 1, 1, 1, 2, '-')),
            Err(Error::PatternInapplicable(_))
        ));
    }

    #[test]
    fn fundamentals() {
        let f = |p: SpecialD| pair(&fundamental_special(&p).value);
        assert_eq!(f(sd(2, 1, 2, 1, 1, 1, 1, '+')), (5, 2));
        assert_eq!(f(sd(4, 1, 2, 1, 1, 1, 2, '-')), (7, 2));
        assert_eq!(f(sd(2, 1, 2, 1, 1, 1, 2, '+')), (3, 1));
        let d3 = fundamental_special(&sd(2, 1, 1, 1, 1, 1, 1, '-'));
        assert_eq!(pair(&d3.value), (2, 1));
        assert_eq!(d3.flags[0].printed, "(7, 4)");
    }

    #[test]
    fn negative_statuses() {
        let solver = PellSolver::default();
        let s5 = neg1_status(&sd(2, 1, 1, 1, 1, 1, 1, '+'), &solver).unwrap();
        assert_eq!(pair(s5.printed.as_ref().unwrap()), (2, 1));
        assert_eq!(pair(s5.fundamental.as_ref().unwrap()), (2, 1));
        assert!(s5.flags.is_empty());
        for p in [sd(2, 1, 2, 1, 1, 1, 1, '+'), sd(2, 1, 2, 1, 1, 1, 2, '+')] {
            let s = neg1_status(&p, &solver).unwrap();
            assert!(s.printed.is_none() && s.fundamental.is_none());
        }
        let n5 = neg4_status(&sd(2, 1, 1, 1, 1, 1, 1, '+'), &solver).unwrap();
        assert_eq!(pair(n5.printed.as_ref().unwrap()), (4, 2));
        assert_eq!(pair(n5.fundamental.as_ref().unwrap()), (1, 1));
        assert!(neg4_status(&sd(2, 1, 2, 1, 1, 1, 1, '+'), &solver)
            .unwrap()
            .fundamental
            .is_none());
        assert!(neg4_status(&sd(4, 1, 2, 1, 1, 1, 2, '-'), &solver)
            .unwrap()
            .fundamental
            .is_none());
        // d = 2 arises with a negative sign and is a counterexample
        let d2 = neg1_status(&sd(2, 1, 2, 1, 1, 1, 1, '-'), &solver).unwrap();
        assert_eq!(d2.flags[0].deviation, Deviation::NegativeEquationException);
        assert_eq!(pair(d2.fundamental.as_ref().unwrap()), (1, 1));
    }

    #[test]
    fn plus_four() {
        let solver = PellSolver::default();
        let f = fundamental_4_special(&sd(2, 1, 2, 1, 1, 1, 1, '+'), &solver).unwrap();
        assert_eq!(pair(&f.value), (10, 4));
        assert!(f.flags.is_empty());
        let f = fundamental_4_special(&sd(2, 1, 1, 1, 1, 1, 1, '+'), &solver).unwrap();
        assert_eq!(pair(&f.value), (3, 1));
        assert_eq!(f.flags[0].printed, "(18, 8)");
        let f = fundamental_4_special(&sd(4, 1, 2, 1, 1, 1, 2, '-'), &solver).unwrap();
        assert_eq!(pair(&f.value), (4, 1));
        assert_eq!(f.flags[0].printed, "(14, 4)");
    }

    #[test]
    fn recurrences() {
        let d6 = sd(2, 1, 2, 1, 1, 1, 1, '+');
        let d8 = sd(2, 1, 2, 1, 1, 1, 2, '+');
        let s = |x: u64, y: u64, d: u64, i: usize| PellSolution::new(x, y, d, 1, i);
        assert_eq!(pair(&next_solution_linear(&d6, &s(5, 2, 6, 1)).unwrap()), (49, 20));
        assert_eq!(pair(&next_solution_linear(&d8, &s(3, 1, 8, 1)).unwrap()), (17, 6));
        assert_eq!(pair(&next_solution_linear(&d6, &s(1, 0, 6, 0)).unwrap()), (5, 2));
        assert!(matches!(
            next_solution_linear(&d6, &s(5, 3, 6, 1)),
            Err(Error::NotASolution { .. })
        ));
        let n = next_solution_order3(&d6, &s(5, 2, 6, 1), &s(49, 20, 6, 2), &s(485, 198, 6, 3)).unwrap();
        assert_eq!(pair(&n), (4801, 1960));
        let n = next_solution_order3(&d8, &s(3, 1, 8, 1), &s(17, 6, 8, 2), &s(99, 35, 8, 3)).unwrap();
        assert_eq!(pair(&n), (577, 204));
        assert_eq!(solutions_order3(&d6, 20).unwrap(), solutions_linear(&d6, 20).unwrap());
    }

    #[test]
    fn lucas_forms() {
        let d6 = sd(2, 1, 2, 1, 1, 1, 1, '+');
        let d8 = sd(2, 1, 2, 1, 1, 1, 2, '+');
        let l = solutions_lucas_1(&d6, 2);
        assert_eq!(l.value.iter().map(pair).collect::<Vec<_>>(), vec![(5, 2), (49, 20)]);
        assert!(l.has(Deviation::LucasFirstArgument));
        assert_eq!(pair(&solutions_lucas_1(&d8, 3).value[2]), (99, 35));
        let solver = PellSolver::default();
        let f = solutions_lucas_4(&d6, 2, &solver).unwrap();
        assert_eq!(f.value.iter().map(pair).collect::<Vec<_>>(), vec![(10, 4), (98, 40)]);
        // d = 12: the least +4 solution is (4, 1), so the chain is finer than
        // the one generated from (14, 4)
        let d12 = sd(4, 1, 2, 1, 1, 1, 2, '-');
        let f = solutions_lucas_4(&d12, 4, &solver).unwrap();
        assert_eq!(
            f.value.iter().map(pair).collect::<Vec<_>>(),
            vec![(4, 1), (14, 4), (52, 15), (194, 56)]
        );
        assert!(f.has(Deviation::DoublingRuleFour));
    }

    #[test]
    fn matrices() {
        let d6 = sd(2, 1, 2, 1, 1, 1, 1, '+');
        let d8 = sd(2, 1, 2, 1, 1, 1, 2, '+');
        let d12 = sd(4, 1, 2, 1, 1, 1, 2, '-');
        assert_eq!(pell_matrix(&d6), Mat2::new(5, 12, 2, 5));
        assert_eq!(pell_matrix(&d8), Mat2::new(3, 8, 1, 3));
        assert_eq!(pell_matrix(&d12), Mat2::new(7, 24, 2, 7));
        assert_eq!(matrix_power_closed(&d6, 0), Mat2::identity());
        assert_eq!(matrix_power_closed(&d6, 2), Mat2::new(49, 120, 20, 49));
        assert_eq!(matrix_power_closed(&d8, 3), Mat2::new(99, 280, 35, 99));
        assert_eq!(pair(&nth_solution_via_matrix(&d6, 2)), (49, 20));
        assert_eq!(pair(&nth_solution_via_matrix(&d6, 1)), (5, 2));
        assert_eq!(pair(&nth_solution_via_matrix(&d8, 3)), (99, 35));
        for n in 0..=12 {
            assert_eq!(matrix_power_closed(&d12, n), pell_matrix(&d12).pow(n));
        }
    }

    #[test]
    fn convergent_chain() {
        let solver = PellSolver::default();
        for p in [
            sd(2, 1, 2, 1, 1, 1, 1, '+'),
            sd(2, 1, 1, 1, 1, 1, 1, '+'),
            sd(4, 1, 2, 1, 1, 1, 2, '-'),
        ] {
            assert_eq!(
                solutions_via_convergents(&p, 5, &solver).unwrap(),
                solutions_linear(&p, 5).unwrap()
            );
        }
    }

    #[test]
    fn power_forms() {
        assert_eq!(
            power_form_cf(2, 2, 2, PowerVariant::D1Plus).unwrap().to_string(),
            "[4; overline(2, 8)]"
        );
        assert_eq!(
            power_form_cf(2, 2, 1, PowerVariant::D2Plus).unwrap().to_string(),
            "[4; overline(2, 8)]"
        );
        assert_eq!(
            power_form_cf(2, 2, 0, PowerVariant::D3).unwrap().to_string(),
            "[3; overline(2, 6)]"
        );
        let solver = PellSolver::default();
        let f = fundamental_power_form(2, 2, 1, PowerVariant::D2Plus, &solver).unwrap();
        assert_eq!(pair(&f.value), (9, 2));
        assert_eq!(f.flags[0].printed, "(8, 2)");
        let f = fundamental_power_form(2, 2, 2, PowerVariant::D1Plus, &solver).unwrap();
        assert_eq!(pair(&f.value), (9, 2));
        assert!(f.flags.is_empty());
        assert_eq!(
            pair(
                &fundamental_power_form(3, 1, 1, PowerVariant::D1Plus, &solver)
                    .unwrap()
                    .value
            ),
            (7, 2)
        );
        let f = fundamental_power_form(1, 1, 1, PowerVariant::D1Plus, &solver).unwrap();
        assert!(f.has(Deviation::NegativeEquationException));
    }

    #[test]
    fn stated_neg4() {
        let first = PellSolution::new(1u32, 1u32, 5u32, -4, 1);
        assert_eq!(stated_neg4_second(&first), "(3/2, 1/2)");
    }

    #[test]
    fn grid_size() {
        assert!(grid(5, 3).len() >= 200);
    }
}
