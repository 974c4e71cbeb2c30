//! Interval division `X/Y = {u | ∃x∈X ∃y∈Y: u·y = x}` and its hull.
//!
//! When `0 ∈ X` and `0 ∈ Y` the quotient set is all of `Z`. When neither
//! operand contains zero, the bounds of `Y` are first moved inwards to the
//! nearest values that actually divide some member of `X`; after that the
//! corner quotients, rounded inwards, are attained.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::arith::{neg, scale};
use super::{Bound, HalfLine, IntInterval, OpCounters};

pub(crate) fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

pub(crate) fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn is_minus_one(y: &IntInterval) -> bool {
    matches!(y.singleton_value(), Some(v) if *v == BigInt::from(-1))
}

/// `int(X/Y)`.
///
/// Division by `[-1..-1]` is carried out as a scaling and counted as such.
pub fn div_hull(x: &IntInterval, y: &IntInterval, ops: &mut OpCounters) -> IntInterval {
    if is_minus_one(y) {
        return scale(x, &BigInt::from(-1), ops);
    }
    ops.div += 1;
    quotient_hull(x, y)
}

/// `≥Q ∩ ≤Q` where `Q = N/Y` and `N` is the half-line. The result may be
/// unbounded on one side.
pub fn div_halfline(n: &HalfLine, y: &IntInterval, ops: &mut OpCounters) -> IntInterval {
    let x = n.to_interval();
    if is_minus_one(y) {
        return scale(&x, &BigInt::from(-1), ops);
    }
    ops.div += 1;
    quotient_hull(&x, y)
}

/// Hull of the quotient set; an unbounded quotient set yields the matching
/// half-line (or `Z`).
pub(crate) fn quotient_hull(x: &IntInterval, y: &IntInterval) -> IntInterval {
    let ((a, b), (c, d)) = match (x.bounds(), y.bounds()) {
        (Some(p), Some(q)) => (p, q),
        _ => return IntInterval::empty(),
    };
    let zero_in_x = x.contains_zero();
    if !y.contains_zero() {
        return nonzero_divisor(x, y);
    }
    if zero_in_x {
        return IntInterval::integers();
    }
    match (c.signum(), d.signum()) {
        (0, 0) => IntInterval::empty(),
        (-1, 1) => match (a, b) {
            (Bound::Finite(a), Bound::Finite(b)) => {
                let e = a.abs().max(b.abs());
                IntInterval::new(-e.clone(), e)
            }
            _ => IntInterval::integers(),
        },
        (0, _) => nonzero_divisor(
            x,
            &IntInterval::from_bounds(Bound::Finite(BigInt::one()), d.clone()),
        ),
        _ => nonzero_divisor(
            x,
            &IntInterval::from_bounds(c.clone(), Bound::Finite(-BigInt::one())),
        ),
    }
}

/// `0 ∉ Y`, both non-empty.
fn nonzero_divisor(x: &IntInterval, y: &IntInterval) -> IntInterval {
    let (_, d) = y.bounds().unwrap();
    if d.signum() < 0 {
        return nonzero_divisor(&neg(x), &neg(y));
    }
    let c = y.min().expect("positive divisor has a finite lower bound");
    let (a, b) = x.bounds().unwrap();
    if x.contains_zero() {
        // every divisor divides 0; the extreme quotients use the smallest divisor
        let lo = match a {
            Bound::Finite(a) => Bound::Finite(ceil_div(a, c)),
            other => other.clone(),
        };
        let hi = match b {
            Bound::Finite(b) => Bound::Finite(floor_div(b, c)),
            other => other.clone(),
        };
        return IntInterval::from_bounds(lo, hi);
    }
    if b.signum() < 0 {
        return neg(&positive_quotient(&neg(x), y));
    }
    positive_quotient(x, y)
}

/// Both operands strictly positive.
fn positive_quotient(x: &IntInterval, y: &IntInterval) -> IntInterval {
    let a = x
        .min()
        .expect("positive numerator has a finite lower bound");
    let c = y.min().expect("positive divisor has a finite lower bound");
    let one = BigInt::one();
    let b = match x.hi().unwrap() {
        Bound::Finite(b) => b,
        _ => {
            // every divisor divides some member of an unbounded numerator
            let lo = match y.hi().unwrap() {
                Bound::Finite(d) => ceil_div(a, d).max(one),
                _ => one,
            };
            return IntInterval::from_bounds(Bound::Finite(lo), Bound::PosInf);
        }
    };
    // a divisor of a positive x never exceeds x
    let d = match y.hi().unwrap() {
        Bound::Finite(d) => d.min(b).clone(),
        _ => b.clone(),
    };
    if *c > d {
        return IntInterval::empty();
    }
    let (lo_div, hi_div) = match (least_divisor(a, b, c, &d), greatest_divisor(a, b, c, &d)) {
        (Some(l), Some(h)) => (l, h),
        _ => return IntInterval::empty(),
    };
    IntInterval::new(ceil_div(a, &hi_div), floor_div(b, &lo_div))
}

/// Least `y ∈ [c..d]` with a multiple in `[a..b]`; `1 <= a`, `1 <= c`.
///
/// `y` qualifies iff `y·⌊b/y⌋ >= a`. Candidates sharing the same `⌊b/y⌋` are
/// handled as one block, so the scan visits each distinct quotient once.
pub(crate) fn least_divisor(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Option<BigInt> {
    let width = b - a + BigInt::one();
    let mut y = c.clone();
    loop {
        if y > *d {
            return None;
        }
        if y <= width {
            return Some(y);
        }
        let q = b / &y;
        if q.is_zero() {
            return None;
        }
        let block_end = b / &q;
        let cand = y.clone().max(ceil_div(a, &q));
        if cand <= block_end {
            return if cand <= *d { Some(cand) } else { None };
        }
        y = block_end + BigInt::one();
    }
}

/// Greatest `y ∈ [c..d]` with a multiple in `[a..b]`; `1 <= a`, `1 <= c`.
///
/// `y` qualifies iff `y·⌈a/y⌉ <= b`; blocks share the same `⌈a/y⌉`.
pub(crate) fn greatest_divisor(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Option<BigInt> {
    let width = b - a + BigInt::one();
    let mut y = d.clone();
    loop {
        if y < *c {
            return None;
        }
        if y <= width {
            return Some(y);
        }
        let q = ceil_div(a, &y);
        // smallest y' with ⌈a/y'⌉ = q
        let block_start = ceil_div(a, &q);
        let cand = y.clone().min(b / &q);
        if cand >= block_start {
            return if cand >= *c { Some(cand) } else { None };
        }
        y = block_start - BigInt::one();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: i64, b: i64) -> IntInterval {
        IntInterval::new(a, b)
    }

    fn div(x: IntInterval, y: IntInterval) -> IntInterval {
        div_hull(&x, &y, &mut OpCounters::new())
    }

    #[test]
    fn worked_examples() {
        assert_eq!(div(iv(3, 5), iv(-1, 2)), iv(-5, 5));
        assert!(div(iv(-3, 5), iv(-1, 2)).is_integers());
        assert!(div(iv(-1, 100), iv(-2, 8)).is_integers());
        assert!(div(iv(10, 100), iv(0, 0)).is_empty());
        assert_eq!(div(iv(-100, -10), iv(-2, 5)), iv(-100, 100));
        assert_eq!(div(iv(155, 161), iv(9, 11)), iv(16, 16));
        assert_eq!(div(iv(1, 100), iv(-7, 0)), div(iv(1, 100), iv(-7, -1)));
    }

    #[test]
    fn no_divisor_gives_empty() {
        assert!(div(iv(5, 5), iv(6, 7)).is_empty());
        assert!(div(iv(7, 7), iv(2, 6)).is_empty());
        assert!(div(iv(5, 5), iv(6, 9)).is_empty());
    }

    #[test]
    fn unbounded_operands() {
        assert_eq!(
            div(IntInterval::at_least(4), iv(2, 2)),
            IntInterval::at_least(2)
        );
        assert_eq!(div(iv(10, 12), IntInterval::at_least(1)), iv(1, 12));
        assert_eq!(
            div(IntInterval::at_most(-3), iv(1, 3)),
            IntInterval::at_most(-1)
        );
    }

    #[test]
    fn minus_one_is_a_scaling() {
        let mut ops = OpCounters::new();
        assert_eq!(div_hull(&iv(2, 5), &iv(-1, -1), &mut ops), iv(-5, -2));
        assert_eq!((ops.div, ops.mult_f), (0, 1));
    }

    #[test]
    fn halfline_examples() {
        let mut ops = OpCounters::new();
        let n = HalfLine::at_most(iv(40, 40));
        assert_eq!(
            div_halfline(&n, &iv(1, 1), &mut ops),
            IntInterval::at_most(40)
        );
        let n = HalfLine::at_most(iv(10, 10));
        assert_eq!(
            div_halfline(&n, &iv(-2, -1), &mut ops),
            IntInterval::at_least(-10)
        );
        let n = HalfLine::at_most(iv(41, 140));
        assert_eq!(
            div_halfline(&n, &iv(1, 100), &mut ops),
            IntInterval::at_most(140)
        );
        let n = HalfLine::at_most(iv(41, 43));
        assert_eq!(
            div_halfline(&n, &iv(1, 27), &mut ops),
            IntInterval::at_most(43)
        );
        let n = HalfLine::at_least(iv(-3, 9));
        assert_eq!(
            div_halfline(&n, &iv(2, 4), &mut ops),
            IntInterval::at_least(-1)
        );
        assert_eq!(ops.div, 5);
    }

    #[test]
    fn divisor_scans_skip_blocks() {
        let a = BigInt::from(1_000_003i64);
        let c = BigInt::from(2);
        assert_eq!(least_divisor(&a, &a, &c, &a), Some(a.clone()));
        assert_eq!(greatest_divisor(&a, &a, &c, &a), Some(a.clone()));
        let x = BigInt::from(1_000_000i64);
        assert_eq!(
            least_divisor(&x, &x, &BigInt::from(3), &x),
            Some(BigInt::from(4))
        );
        assert_eq!(
            greatest_divisor(&x, &x, &BigInt::from(3), &BigInt::from(999_999)),
            Some(BigInt::from(500_000))
        );
    }
}
