//! Small exact-integer helpers shared by the other modules.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

/// Floor of the square root: the unique `r` with `r^2 <= n < (r+1)^2`.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// `Some(r)` when `n = r^2`, else `None`.
pub fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = isqrt(n);
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_square(n: &BigUint) -> bool {
    exact_sqrt(n).is_some()
}

/// Signed variant; negative inputs are never squares.
pub fn is_square_int(n: &BigInt) -> bool {
    match n.to_biguint() {
        Some(u) => is_square(&u),
        None => false,
    }
}

/// Floor of `sqrt(n)` for a nonnegative signed integer.
pub fn isqrt_int(n: &BigInt) -> BigInt {
    assert!(n.sign() != Sign::Minus, "isqrt of a negative integer");
    BigInt::from(isqrt(n.magnitude()))
}

pub fn to_int(n: &BigUint) -> BigInt {
    BigInt::from(n.clone())
}

/// Converts a value already known to be nonnegative.
pub(crate) fn to_nat(n: &BigInt) -> BigUint {
    n.to_biguint().expect("value is nonnegative by construction")
}

/// Binomial coefficient by the multiplicative formula; every partial
/// product is an exact binomial so the division never truncates.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// `C(n, 2j) = C(n-2, 2j) + C(n-2, 2j-2) + 2 C(n-2, 2j-1)`, valid for `n >= 2`, `j >= 1`.
pub fn binomial_step_identity(n: u64, j: u64) -> bool {
    let k = 2 * j;
    binomial(n, k) == binomial(n - 2, k) + binomial(n - 2, k - 2) + binomial(n - 2, k - 1) * 2u32
}

/// Trial-division square-freeness up to `bound`. Returns `None` when the
/// cofactor left after trial division exceeds `bound^2` and could still hide
/// a square factor.
pub fn is_squarefree_bounded(n: &BigUint, bound: u64) -> Option<bool> {
    let mut rest = n.clone();
    let mut p: u64 = 2;
    while p <= bound {
        let pp = BigUint::from(p);
        if (&pp * &pp) > rest {
            return Some(true);
        }
        if (&rest % &pp).is_zero() {
            rest /= &pp;
            if (&rest % &pp).is_zero() {
                return Some(false);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let b = BigUint::from(bound);
    if rest <= &b * &b {
        Some(true)
    } else if is_square(&rest) {
        Some(false)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&BigUint::zero()), BigUint::zero());
        assert_eq!(isqrt(&BigUint::from(24u32)), BigUint::from(4u32));
        let big = BigUint::from(10u32).pow(40);
        assert_eq!(isqrt(&big), BigUint::from(10u32).pow(20));
        assert_eq!(isqrt(&(big - 1u32)), BigUint::from(10u32).pow(20) - 1u32);
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(64, 32), BigUint::from(1_832_624_140_942_590_534u64));
        assert_eq!(binomial(3, 4), BigUint::zero());
    }

    #[test]
    fn step_identity() {
        assert!(binomial_step_identity(6, 2));
        assert!((2..=20).all(|n| (1..=(n - 2) / 2).all(|j| binomial_step_identity(n, j))));
    }

    #[test]
    fn squarefree() {
        assert_eq!(is_squarefree_bounded(&BigUint::from(30u32), 100), Some(true));
        assert_eq!(is_squarefree_bounded(&BigUint::from(12u32), 100), Some(false));
        assert_eq!(is_squarefree_bounded(&BigUint::from(49u32 * 3), 5), Some(false));
        assert_eq!(is_squarefree_bounded(&BigUint::from(2u32), 1_000_000), Some(true));
    }

    proptest::proptest! {
        #[test]
        fn isqrt_brackets(n in proptest::num::u128::ANY) {
            let n = BigUint::from(n);
            let r = isqrt(&n);
            proptest::prop_assert!(&r * &r <= n);
            let r1 = &r + 1u32;
            proptest::prop_assert!(&r1 * &r1 > n);
        }
    }
}
