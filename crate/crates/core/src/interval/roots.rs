use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use super::{Bound, IntInterval, IntervalUnion, OpCounters};

/// `⌊v^(1/n)⌋`. For even `n`, `v` must be non-negative.
pub fn floor_root(v: &BigInt, n: u32) -> BigInt {
    assert!(n >= 1);
    if v.is_negative() {
        assert!(n % 2 == 1, "even root of a negative number");
        return -ceil_root(&-v, n);
    }
    let mut r = v.nth_root(n);
    // nth_root is exact for BigInt; the checks keep that an invariant here
    while ipow(&r, n) > *v {
        r -= 1;
    }
    while ipow(&(&r + BigInt::one()), n) <= *v {
        r += 1;
    }
    r
}

fn ipow(v: &BigInt, n: u32) -> BigInt {
    Pow::pow(v, n)
}

/// `⌈v^(1/n)⌉`. For even `n`, `v` must be non-negative.
pub fn ceil_root(v: &BigInt, n: u32) -> BigInt {
    if v.is_negative() {
        assert!(n % 2 == 1, "even root of a negative number");
        return -floor_root(&-v, n);
    }
    let r = floor_root(v, n);
    if ipow(&r, n) == *v {
        r
    } else {
        r + 1
    }
}

/// `{x | x^n ∈ X}` as one interval, or two for an even `n`.
pub fn root(x: &IntInterval, n: u32, ops: &mut OpCounters) -> IntervalUnion {
    assert!(n >= 1, "root degree must be positive");
    ops.root += 1;
    let (a, b) = match x.bounds() {
        Some(p) => p,
        None => return IntervalUnion::empty(),
    };
    if n == 1 {
        return IntervalUnion::from(x.clone());
    }
    if n % 2 == 1 {
        let lo = match a {
            Bound::Finite(a) => Bound::Finite(ceil_root(a, n)),
            other => other.clone(),
        };
        let hi = match b {
            Bound::Finite(b) => Bound::Finite(floor_root(b, n)),
            other => other.clone(),
        };
        return IntervalUnion::from(IntInterval::from_bounds(lo, hi));
    }
    if b.signum() < 0 {
        return IntervalUnion::empty();
    }
    let outer = match b {
        Bound::Finite(b) => Bound::Finite(floor_root(b, n)),
        _ => Bound::PosInf,
    };
    let inner = match a {
        Bound::Finite(a) if a.is_positive() => ceil_root(a, n),
        _ => BigInt::zero(),
    };
    if Bound::Finite(inner.clone()) > outer {
        return IntervalUnion::empty();
    }
    if inner.is_zero() {
        return IntervalUnion::from(IntInterval::from_bounds(outer.negate(), outer));
    }
    let neg_part = IntInterval::from_bounds(outer.negate(), Bound::Finite(-inner.clone()));
    let pos_part = IntInterval::from_bounds(Bound::Finite(inner), outer);
    debug_assert!(BigInt::one() <= *pos_part.min().unwrap());
    IntervalUnion::from_parts([neg_part, pos_part])
}
