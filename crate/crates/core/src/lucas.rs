//! Generalized Fibonacci `f_n(w, z)` and Lucas `L_n(w, z)` numbers:
//! `u_n = w u_{n-1} + z u_{n-2}` with `f_0 = 0, f_1 = 1` and `L_0 = 2, L_1 = w`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasParams {
    w: BigInt,
    z: BigInt,
}

impl LucasParams {
    pub fn new(w: impl Into<BigInt>, z: impl Into<BigInt>) -> Result<Self> {
        let (w, z) = (w.into(), z.into());
        if w.is_zero() {
            return Err(Error::InvalidParameter("w must be nonzero".into()));
        }
        if z.is_zero() {
            return Err(Error::InvalidParameter("z must be nonzero".into()));
        }
        if &w * &w + &z * 4 < BigInt::zero() {
            return Err(Error::InvalidParameter("w^2 + 4z must be nonnegative".into()));
        }
        Ok(Self { w, z })
    }

    pub fn w(&self) -> &BigInt {
        &self.w
    }

    pub fn z(&self) -> &BigInt {
        &self.z
    }

    /// `w^2 + 4z`.
    pub fn discriminant(&self) -> BigInt {
        &self.w * &self.w + &self.z * 4
    }

    fn run(&self, u0: BigInt, u1: BigInt) -> LucasIter<'_> {
        LucasIter {
            p: self,
            cur: u0,
            next: u1,
        }
    }

    /// `f_0, f_1, ...`
    pub fn fib_iter(&self) -> LucasIter<'_> {
        self.run(BigInt::zero(), BigInt::one())
    }

    /// `L_0, L_1, ...`
    pub fn lucas_iter(&self) -> LucasIter<'_> {
        self.run(BigInt::from(2), self.w.clone())
    }
}

pub struct LucasIter<'a> {
    p: &'a LucasParams,
    cur: BigInt,
    next: BigInt,
}

impl Iterator for LucasIter<'_> {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let after = &self.p.w * &self.next + &self.p.z * &self.cur;
        let out = std::mem::replace(&mut self.cur, std::mem::replace(&mut self.next, after));
        Some(out)
    }
}

pub fn fib_gen(p: &LucasParams, n: usize) -> BigInt {
    p.fib_iter().nth(n).expect("endless sequence")
}

pub fn lucas_gen(p: &LucasParams, n: usize) -> BigInt {
    p.lucas_iter().nth(n).expect("endless sequence")
}

/// `L_n^2 - (w^2 + 4z) f_n^2 = 4 (-z)^n`.
pub fn binet_identity_check(p: &LucasParams, n: usize) -> bool {
    let (f, l) = (fib_gen(p, n), lucas_gen(p, n));
    let rhs = BigInt::from(4) * num_traits::pow(-p.z.clone(), n);
    &l * &l - p.discriminant() * &f * &f == rhs
}

/// `L_{2n} = L_n^2 - 2 (-z)^n`.
pub fn doubling_identity_check(p: &LucasParams, n: usize) -> bool {
    let ln = lucas_gen(p, n);
    lucas_gen(p, 2 * n) == &ln * &ln - BigInt::from(2) * num_traits::pow(-p.z.clone(), n)
}
