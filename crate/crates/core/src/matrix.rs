//! 2x2 integer matrices acting on solution vectors and forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub m11: BigInt,
    pub m12: BigInt,
    pub m21: BigInt,
    pub m22: BigInt,
}

impl Mat2 {
    pub fn new(m11: impl Into<BigInt>, m12: impl Into<BigInt>, m21: impl Into<BigInt>, m22: impl Into<BigInt>) -> Self {
        Self {
            m11: m11.into(),
            m12: m12.into(),
            m21: m21.into(),
            m22: m22.into(),
        }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            m11: &self.m11 * &o.m11 + &self.m12 * &o.m21,
            m12: &self.m11 * &o.m12 + &self.m12 * &o.m22,
            m21: &self.m21 * &o.m11 + &self.m22 * &o.m21,
            m22: &self.m21 * &o.m12 + &self.m22 * &o.m22,
        }
    }

    /// Square-and-multiply.
    pub fn pow(&self, mut n: u64) -> Mat2 {
        let mut base = self.clone();
        let mut acc = Mat2::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `M (x, y)^T`.
    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.m11 * x + &self.m12 * y, &self.m21 * x + &self.m22 * y)
    }

    /// `(x, y) M`.
    pub fn apply_row(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (x * &self.m11 + y * &self.m21, x * &self.m12 + y * &self.m22)
    }

    pub fn is_unimodular(&self) -> bool {
        let d = self.det();
        d.is_one() || d == -BigInt::one()
    }

    pub fn is_identity(&self) -> bool {
        self.m11.is_one() && self.m22.is_one() && self.m12.is_zero() && self.m21.is_zero()
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.m11, self.m12, self.m21, self.m22)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers() {
        let m = Mat2::new(5, 12, 2, 5);
        assert_eq!(m.pow(0), Mat2::identity());
        assert_eq!(m.pow(2), Mat2::new(49, 120, 20, 49));
        assert_eq!(Mat2::new(3, 8, 1, 3).pow(3), Mat2::new(99, 280, 35, 99));
        assert_eq!(m.det(), BigInt::one());
    }

    #[test]
    fn actions() {
        let m = Mat2::new(5, 12, 2, 5);
        let one = BigInt::one();
        let zero = BigInt::zero();
        assert_eq!(m.apply(&one, &zero), (BigInt::from(5), BigInt::from(2)));
        assert_eq!(m.apply_row(&one, &zero), (BigInt::from(5), BigInt::from(12)));
    }

    proptest::proptest! {
        #[test]
        fn pow_matches_iterated(a in -5i64..5, b in -5i64..5, c in -5i64..5, d in -5i64..5, n in 0u64..12) {
            let m = Mat2::new(a, b, c, d);
            let mut it = Mat2::identity();
            for _ in 0..n {
                it = it.mul(&m);
            }
            proptest::prop_assert_eq!(m.pow(n), it);
        }
    }
}
