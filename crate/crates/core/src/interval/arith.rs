use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};

use super::{Bound, IntInterval, OpCounters};

fn bound_add(a: &Bound, b: &Bound) -> Bound {
    match (a, b) {
        (Bound::Finite(x), Bound::Finite(y)) => Bound::Finite(x + y),
        (Bound::Finite(_), inf) | (inf, _) => inf.clone(),
    }
}

/// Extended multiplication with `0 * inf = 0`, which is the right convention
/// for hulls: a zero factor annihilates every member of the other operand.
pub(crate) fn bound_mul(a: &Bound, b: &Bound) -> Bound {
    match (a, b) {
        (Bound::Finite(x), Bound::Finite(y)) => Bound::Finite(x * y),
        _ => match a.signum() * b.signum() {
            0 => Bound::Finite(BigInt::zero()),
            s if s > 0 => Bound::PosInf,
            _ => Bound::NegInf,
        },
    }
}

fn bound_pow(b: &Bound, n: u32) -> Bound {
    match b {
        Bound::Finite(v) => Bound::Finite(Pow::pow(v, n)),
        Bound::PosInf => Bound::PosInf,
        Bound::NegInf if n % 2 == 1 => Bound::NegInf,
        Bound::NegInf => Bound::PosInf,
    }
}

/// `-X`
pub fn neg(x: &IntInterval) -> IntInterval {
    match x.bounds() {
        None => IntInterval::empty(),
        Some((lo, hi)) => IntInterval::from_bounds(hi.negate(), lo.negate()),
    }
}

/// `X + Y = [a+c .. b+d]`
pub fn add(x: &IntInterval, y: &IntInterval, ops: &mut OpCounters) -> IntInterval {
    ops.sum += 1;
    match (x.bounds(), y.bounds()) {
        (Some((a, b)), Some((c, d))) => IntInterval::from_bounds(bound_add(a, c), bound_add(b, d)),
        _ => IntInterval::empty(),
    }
}

/// `X - Y = [a-d .. b-c]`
pub fn sub(x: &IntInterval, y: &IntInterval, ops: &mut OpCounters) -> IntInterval {
    ops.sum += 1;
    match (x.bounds(), y.bounds()) {
        (Some((a, b)), Some((c, d))) => {
            IntInterval::from_bounds(bound_add(a, &d.negate()), bound_add(b, &c.negate()))
        }
        _ => IntInterval::empty(),
    }
}

/// `int(X · Y)`: the hull of the four corner products.
pub fn mul_hull(x: &IntInterval, y: &IntInterval, ops: &mut OpCounters) -> IntInterval {
    ops.mult_i += 1;
    let ((a, b), (c, d)) = match (x.bounds(), y.bounds()) {
        (Some(p), Some(q)) => (p, q),
        _ => return IntInterval::empty(),
    };
    let corners = [
        bound_mul(a, c),
        bound_mul(a, d),
        bound_mul(b, c),
        bound_mul(b, d),
    ];
    let lo = corners.iter().min().unwrap().clone();
    let hi = corners.iter().max().unwrap().clone();
    IntInterval::from_bounds(lo, hi)
}

/// `{a·x | x ∈ X}`, which is always an interval hull-wise.
pub fn scale(x: &IntInterval, a: &BigInt, ops: &mut OpCounters) -> IntInterval {
    ops.mult_f += 1;
    let (lo, hi) = match x.bounds() {
        Some(p) => p,
        None => return IntInterval::empty(),
    };
    let f = Bound::Finite(a.clone());
    if a.is_zero() {
        IntInterval::singleton(BigInt::zero())
    } else if a.is_positive() {
        IntInterval::from_bounds(bound_mul(lo, &f), bound_mul(hi, &f))
    } else {
        IntInterval::from_bounds(bound_mul(hi, &f), bound_mul(lo, &f))
    }
}

/// `int(X^n)` for `n >= 1`.
pub fn pow_hull(x: &IntInterval, n: u32, ops: &mut OpCounters) -> IntInterval {
    assert!(n >= 1, "exponent must be positive");
    ops.exp += 1;
    let (a, b) = match x.bounds() {
        Some(p) => p,
        None => return IntInterval::empty(),
    };
    if n % 2 == 1 || a.signum() >= 0 {
        IntInterval::from_bounds(bound_pow(a, n), bound_pow(b, n))
    } else if b.signum() <= 0 {
        IntInterval::from_bounds(bound_pow(b, n), bound_pow(a, n))
    } else {
        let hi = bound_pow(a, n).max(bound_pow(b, n));
        IntInterval::from_bounds(Bound::Finite(BigInt::zero()), hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: i64, b: i64) -> IntInterval {
        IntInterval::new(a, b)
    }

    #[test]
    fn add_sub_examples() {
        let mut ops = OpCounters::new();
        assert_eq!(add(&iv(2, 4), &iv(3, 8), &mut ops), iv(5, 12));
        assert_eq!(sub(&iv(3, 7), &iv(1, 8), &mut ops), iv(-5, 6));
        assert!(add(&IntInterval::empty(), &iv(1, 2), &mut ops).is_empty());
        assert_eq!(
            add(&IntInterval::at_least(3), &iv(1, 2), &mut ops),
            IntInterval::at_least(4)
        );
        assert_eq!(ops.sum, 4);
    }

    #[test]
    fn mul_examples() {
        let mut ops = OpCounters::new();
        assert_eq!(mul_hull(&iv(3, 3), &iv(1, 2), &mut ops), iv(3, 6));
        assert_eq!(mul_hull(&iv(-1, 2), &iv(-3, 4), &mut ops), iv(-6, 8));
        assert_eq!(mul_hull(&iv(0, 0), &iv(-5, 9), &mut ops), iv(0, 0));
        assert_eq!(
            mul_hull(&IntInterval::at_least(1), &iv(2, 3), &mut ops),
            IntInterval::at_least(2)
        );
        assert_eq!(
            mul_hull(&iv(0, 0), &IntInterval::integers(), &mut ops),
            iv(0, 0)
        );
        assert_eq!(ops.mult_i, 5);
    }

    #[test]
    fn scale_examples() {
        let mut ops = OpCounters::new();
        assert_eq!(scale(&iv(1, 3), &BigInt::from(-2), &mut ops), iv(-6, -2));
        assert_eq!(scale(&iv(-4, 7), &BigInt::from(0), &mut ops), iv(0, 0));
        assert!(scale(&IntInterval::integers(), &BigInt::from(3), &mut ops).is_integers());
        assert_eq!(ops.mult_f, 3);
    }

    #[test]
    fn pow_examples() {
        let mut ops = OpCounters::new();
        assert_eq!(pow_hull(&iv(1, 2), 2, &mut ops), iv(1, 4));
        assert_eq!(pow_hull(&iv(-2, 1), 2, &mut ops), iv(0, 4));
        assert_eq!(pow_hull(&iv(-3, 2), 3, &mut ops), iv(-27, 8));
        assert_eq!(pow_hull(&iv(-5, -2), 2, &mut ops), iv(4, 25));
        assert_eq!(
            pow_hull(&IntInterval::at_most(-2), 2, &mut ops),
            IntInterval::at_least(4)
        );
        assert_eq!(ops.exp, 5);
    }
}
