//! Independent checks for Pell solutions.
//!
//! Nothing here touches the continued-fraction engine or the solvers. Two
//! tools are provided:
//!
//! * an exhaustive scan over `y` (desk-scale only), and
//! * an exact minimality certificate: the positive solutions of
//!   `x^2 - dy^2 = ±s^2` (`s = 1` or `2`) are the elements `(x + y sqrt d)/s`
//!   of a cyclic unit group, so a claimed solution is the least one exactly
//!   when it is not a `p`-th power of a smaller group element for any prime
//!   `p`. Roots are located by integer `p`-th roots and confirmed by exact
//!   exponentiation.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::pell::PellSolution;

pub fn verify_solution(d: &BigUint, n_value: i64, x: &BigUint, y: &BigUint) -> bool {
    BigInt::from(x * x) - BigInt::from(d * y * y) == BigInt::from(n_value)
}

fn isqrt_u128(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Square root of `n_value + d y^2` when that is a perfect square.
fn x_for(d: &BigUint, n_value: i64, y: u64, fast_d: Option<u128>) -> Option<BigUint> {
    if let Some(dd) = fast_d {
        let t = dd.checked_mul((y as u128) * (y as u128))?;
        let t = if n_value >= 0 {
            t.checked_add(n_value as u128)?
        } else {
            t.checked_sub(n_value.unsigned_abs() as u128)?
        };
        let r = isqrt_u128(t);
        return (r * r == t).then(|| BigUint::from(r));
    }
    let t = BigInt::from(d * y * y) + n_value;
    let t = t.to_biguint()?;
    let r = t.sqrt();
    (&r * &r == t).then_some(r)
}

fn scan<'a>(
    d: &'a BigUint,
    n_value: i64,
    y_range: impl Iterator<Item = u64> + 'a,
) -> impl Iterator<Item = (BigUint, u64)> + 'a {
    // d * y^2 stays below 2^127 for d < 2^60 and y < 2^32.
    let fast_d = d.to_u128().filter(|&v| v < (1u128 << 60));
    y_range.filter_map(move |y| {
        let fd = if y < (1u64 << 32) { fast_d } else { None };
        x_for(d, n_value, y, fd).map(|x| (x, y))
    })
}

/// Every `(x, y)` with `0 <= y <= y_max`, `x >= 0` and `x^2 - dy^2 = n_value`,
/// ascending in `y`.
pub fn brute_pell(d: &BigUint, n_value: i64, y_max: u64) -> Vec<PellSolution> {
    scan(d, n_value, 0..=y_max)
        .enumerate()
        .map(|(i, (x, y))| PellSolution {
            x,
            y: BigUint::from(y),
            d: d.clone(),
            n_value: n_value as i32,
            index: i,
        })
        .collect()
}

/// Least solution with `x, y >= 1` among `y <= y_max`.
pub fn brute_fundamental(d: &BigUint, n_value: i64, y_max: u64) -> Option<PellSolution> {
    scan(d, n_value, 1..=y_max)
        .find(|(x, _)| !x.is_zero())
        .map(|(x, y)| PellSolution {
            x,
            y: BigUint::from(y),
            d: d.clone(),
            n_value: n_value as i32,
            index: 1,
        })
}

/// `(u + v sqrt d) / s` kept as integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Elem {
    u: BigUint,
    v: BigUint,
}

fn mul(d: &BigUint, s: u32, a: &Elem, b: &Elem) -> Elem {
    let u = (&a.u * &b.u + d * &a.v * &b.v) / s;
    let v = (&a.u * &b.v + &a.v * &b.u) / s;
    Elem { u, v }
}

fn pow(d: &BigUint, s: u32, base: &Elem, mut e: u64) -> Elem {
    let mut acc = Elem {
        u: BigUint::from(s),
        v: BigUint::zero(),
    };
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(d, s, &acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = mul(d, s, &b, &b);
        }
    }
    acc
}

fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if sieve[p] {
            out.push(p as u64);
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
    }
    out
}

/// Group elements `zeta = (u + v sqrt d)/s > 1` of norm `norm_sign` with
/// `zeta^p = target`.
fn pth_root(d: &BigUint, s: u32, target: &Elem, p: u64, norm_sign: i64) -> Option<Elem> {
    // target + conj = 2u/s and |conj| < 1, so target lies within 1 of t.
    let t = (&target.u * 2u32) / s + 1u32;
    let r = t.nth_root(p as u32);
    // zeta is within 1 of r, hence u = s (zeta + conj_zeta)/2 is within s
    // of s*r/2.
    let centre = &r * s / 2u32;
    let lo = if centre > BigUint::from(2 * s) {
        &centre - 2 * s
    } else {
        BigUint::zero()
    };
    let hi = &centre + 2 * s;
    let s2 = BigInt::from(s * s);
    let mut u = lo;
    while u <= hi {
        let rhs = BigInt::from(&u * &u) - &s2 * norm_sign;
        if let Some(rhs) = rhs.to_biguint() {
            if (&rhs % d).is_zero() {
                let v2 = &rhs / d;
                let v = v2.sqrt();
                if &v * &v == v2 && !v.is_zero() {
                    let z = Elem { u: u.clone(), v };
                    if pow(d, s, &z, p) == *target {
                        return Some(z);
                    }
                }
            }
        }
        u += 1u32;
    }
    None
}

/// Group scale and the norm sign of `x^2 - dy^2 = n_value`.
fn group_of(n_value: i64) -> Option<(u32, i64)> {
    match n_value {
        1 => Some((1, 1)),
        -1 => Some((1, -1)),
        4 => Some((2, 1)),
        -4 => Some((2, -1)),
        _ => None,
    }
}

/// Certifies that `(x, y)` is the least positive solution of
/// `x^2 - dy^2 = n_value` for `n_value` in `{1, -1, 4, -4}`.
pub fn certify_fundamental(d: &BigUint, n_value: i64, x: &BigUint, y: &BigUint) -> bool {
    let Some((s, sign)) = group_of(n_value) else {
        return false;
    };
    if x.is_zero() || y.is_zero() || !verify_solution(d, n_value, x, y) {
        return false;
    }
    let target = Elem {
        u: x.clone(),
        v: y.clone(),
    };
    // Every group element above 1 is at least the golden ratio, so a p-th
    // root can only exist for p <= log(target) / log(1.618..).
    let bits = ((x * 2u32) / s + 1u32).bits();
    let p_max = bits * 3 / 2 + 2;
    for p in primes_up_to(p_max) {
        // A square root of a norm -1 element does not exist; a square root
        // of a norm +1 element with norm -1 does not make the target
        // non-fundamental for its own norm class.
        if pth_root(d, s, &target, p, sign).is_some() {
            return false;
        }
    }
    true
}

/// Given the certified least solution of `+1` (or `+4`), decides whether
/// `-1` (or `-4`) is solvable: exactly when that least solution is the square
/// of a norm-`-1` group element. Returns the root when it exists.
pub fn negative_from_positive(d: &BigUint, n_positive: i64, x: &BigUint, y: &BigUint) -> Option<PellSolution> {
    let (s, _) = group_of(n_positive)?;
    let target = Elem {
        u: x.clone(),
        v: y.clone(),
    };
    pth_root(d, s, &target, 2, -1).map(|z| PellSolution {
        x: z.u,
        y: z.v,
        d: d.clone(),
        n_value: -(n_positive as i32),
        index: 1,
    })
}
