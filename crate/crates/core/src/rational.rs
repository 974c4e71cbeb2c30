//! Real intervals with exact rational bounds.
//!
//! Only the fraction-simplifying rules use these: they add up quotients of
//! integer intervals without rounding and round inwards to integers at the
//! very end.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::interval::{Bound, IntInterval, OpCounters};

pub type Rational = BigRational;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Empty,
    /// `None` stands for the infinite end on that side.
    Range {
        lo: Option<Rational>,
        hi: Option<Rational>,
    },
}

/// A closed real interval with rational (or infinite) bounds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatInterval(Repr);

impl RatInterval {
    pub fn empty() -> Self {
        RatInterval(Repr::Empty)
    }

    pub fn reals() -> Self {
        RatInterval(Repr::Range { lo: None, hi: None })
    }

    /// `[lo..hi]` with `None` meaning unbounded; empty when `lo > hi`.
    pub fn new(lo: Option<Rational>, hi: Option<Rational>) -> Self {
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                return Self::empty();
            }
        }
        RatInterval(Repr::Range { lo, hi })
    }

    pub fn point(v: Rational) -> Self {
        RatInterval(Repr::Range {
            lo: Some(v.clone()),
            hi: Some(v),
        })
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.0, Repr::Empty)
    }

    pub fn bounds(&self) -> Option<(Option<&Rational>, Option<&Rational>)> {
        match &self.0 {
            Repr::Empty => None,
            Repr::Range { lo, hi } => Some((lo.as_ref(), hi.as_ref())),
        }
    }

    pub fn contains(&self, v: &Rational) -> bool {
        match self.bounds() {
            None => false,
            Some((lo, hi)) => lo.is_none_or(|l| l <= v) && hi.is_none_or(|h| v <= h),
        }
    }

    fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    /// Lifts an integer interval.
    pub fn from_int(x: &IntInterval) -> Self {
        match x.bounds() {
            None => Self::empty(),
            Some((lo, hi)) => {
                let conv = |b: &Bound| b.finite().map(|v| Rational::from_integer(v.clone()));
                RatInterval(Repr::Range {
                    lo: conv(lo),
                    hi: conv(hi),
                })
            }
        }
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Empty => write!(f, "empty"),
            Repr::Range { lo, hi } => {
                match lo {
                    Some(l) => write!(f, "[{l}")?,
                    None => write!(f, "(-inf")?,
                }
                write!(f, "..")?;
                match hi {
                    Some(h) => write!(f, "{h}]"),
                    None => write!(f, "+inf)"),
                }
            }
        }
    }
}

impl fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Endpoint-wise sum.
pub fn rat_add(x: &RatInterval, y: &RatInterval, ops: &mut OpCounters) -> RatInterval {
    ops.sum_q += 1;
    match (x.bounds(), y.bounds()) {
        (Some((a, b)), Some((c, d))) => {
            let add = |p: Option<&Rational>, q: Option<&Rational>| match (p, q) {
                (Some(p), Some(q)) => Some(p + q),
                _ => None,
            };
            RatInterval::new(add(a, c), add(b, d))
        }
        _ => RatInterval::empty(),
    }
}

/// A rational extended with both infinities.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Ext {
    NegInf,
    Val(Rational),
    PosInf,
}

impl Ext {
    fn signum(&self) -> i8 {
        match self {
            Ext::NegInf => -1,
            Ext::PosInf => 1,
            Ext::Val(v) if v.is_zero() => 0,
            Ext::Val(v) if v.is_positive() => 1,
            Ext::Val(_) => -1,
        }
    }

    /// `p / q` for a non-zero `q`; a finite value over an infinity is 0.
    fn div(p: &Ext, q: &Ext) -> Ext {
        match (p, q) {
            (Ext::Val(a), Ext::Val(b)) => Ext::Val(a / b),
            (Ext::Val(_), _) => Ext::Val(Rational::zero()),
            (inf, q) => {
                if inf.signum() * q.signum() > 0 {
                    Ext::PosInf
                } else {
                    Ext::NegInf
                }
            }
        }
    }
}

/// Smallest real interval containing `{u | ∃x∈X ∃y∈Y: u·y = x}`.
///
/// When the quotient set is two disjoint rays it is hulled to the whole line.
pub fn rat_div(x: &RatInterval, y: &RatInterval, ops: &mut OpCounters) -> RatInterval {
    ops.div_q += 1;
    let ((a, b), (c, d)) = match (x.bounds(), y.bounds()) {
        (Some(p), Some(q)) => (p, q),
        _ => return RatInterval::empty(),
    };
    let lo_ext = |v: Option<&Rational>| v.map_or(Ext::NegInf, |v| Ext::Val(v.clone()));
    let hi_ext = |v: Option<&Rational>| v.map_or(Ext::PosInf, |v| Ext::Val(v.clone()));
    let (a, b, c, d) = (lo_ext(a), hi_ext(b), lo_ext(c), hi_ext(d));

    if y.contains_zero() {
        if x.contains_zero() {
            return RatInterval::reals();
        }
        let (cs, ds) = (c.signum(), d.signum());
        if cs == 0 && ds == 0 {
            return RatInterval::empty();
        }
        if cs < 0 && ds > 0 {
            return RatInterval::reals();
        }
        // zero is an endpoint of Y: the quotient is a single ray
        let positive_x = a.signum() > 0;
        let (lo, hi) = if cs == 0 {
            if positive_x {
                (Ext::div(&a, &d), Ext::PosInf)
            } else {
                (Ext::NegInf, Ext::div(&b, &d))
            }
        } else if positive_x {
            (Ext::NegInf, Ext::div(&a, &c))
        } else {
            (Ext::div(&b, &c), Ext::PosInf)
        };
        return from_ext(lo, hi);
    }

    let corners = [
        Ext::div(&a, &c),
        Ext::div(&a, &d),
        Ext::div(&b, &c),
        Ext::div(&b, &d),
    ];
    let lo = corners.iter().min().unwrap().clone();
    let hi = corners.iter().max().unwrap().clone();
    from_ext(lo, hi)
}

fn from_ext(lo: Ext, hi: Ext) -> RatInterval {
    let lo = match lo {
        Ext::Val(v) => Some(v),
        Ext::NegInf => None,
        Ext::PosInf => return RatInterval::empty(),
    };
    let hi = match hi {
        Ext::Val(v) => Some(v),
        Ext::PosInf => None,
        Ext::NegInf => return RatInterval::empty(),
    };
    RatInterval::new(lo, hi)
}

/// Integers of a real interval: `[⌈lo⌉..⌊hi⌋]`.
pub fn rat_to_int_inward(x: &RatInterval) -> IntInterval {
    match x.bounds() {
        None => IntInterval::empty(),
        Some((lo, hi)) => {
            let lo = lo.map_or(Bound::NegInf, |l| Bound::Finite(l.ceil().to_integer()));
            let hi = hi.map_or(Bound::PosInf, |h| Bound::Finite(h.floor().to_integer()));
            IntInterval::from_bounds(lo, hi)
        }
    }
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(a: (i64, i64), b: (i64, i64)) -> RatInterval {
        RatInterval::new(Some(ratio(a.0, a.1)), Some(ratio(b.0, b.1)))
    }

    #[test]
    fn addition() {
        let mut ops = OpCounters::new();
        assert_eq!(
            rat_add(&ri((1, 3), (1, 2)), &ri((1, 6), (1, 6)), &mut ops),
            ri((1, 2), (2, 3))
        );
        let x = ri((-2, 7), (5, 3));
        assert_eq!(rat_add(&ri((0, 1), (0, 1)), &x, &mut ops), x);
        let half_line = RatInterval::new(None, Some(ratio(1, 2)));
        assert_eq!(
            rat_add(&half_line, &ri((1, 1), (2, 1)), &mut ops),
            RatInterval::new(None, Some(ratio(5, 2)))
        );
        assert_eq!(ops.sum_q, 3);
    }

    #[test]
    fn division() {
        let mut ops = OpCounters::new();
        assert_eq!(
            rat_div(&ri((1, 1), (2, 1)), &ri((2, 1), (4, 1)), &mut ops),
            ri((1, 4), (1, 1))
        );
        assert_eq!(
            rat_div(&ri((40, 1), (40, 1)), &ri((1, 1), (1, 1)), &mut ops),
            ri((40, 1), (40, 1))
        );
        assert_eq!(
            rat_div(&ri((2, 1), (3, 1)), &ri((-1, 1), (4, 1)), &mut ops),
            RatInterval::reals()
        );
        assert_eq!(
            rat_div(&ri((2, 1), (3, 1)), &ri((0, 1), (4, 1)), &mut ops),
            RatInterval::new(Some(ratio(1, 2)), None)
        );
        assert!(rat_div(&ri((2, 1), (3, 1)), &ri((0, 1), (0, 1)), &mut ops).is_empty());
        assert_eq!(ops.div_q, 5);
    }

    #[test]
    fn inward_rounding() {
        assert_eq!(
            rat_to_int_inward(&ri((7, 2), (43, 1))),
            IntInterval::new(4, 43)
        );
        assert_eq!(
            rat_to_int_inward(&RatInterval::new(None, Some(ratio(4101, 100)))),
            IntInterval::at_most(41)
        );
        assert!(rat_to_int_inward(&ri((1, 3), (2, 3))).is_empty());
        assert_eq!(
            rat_to_int_inward(&ri((-7, 2), (-1, 2))),
            IntInterval::new(-3, -1)
        );
    }

    #[test]
    fn bounds_stay_normalized() {
        let mut ops = OpCounters::new();
        let s = rat_add(&ri((2, 4), (6, 8)), &ri((1, 4), (1, 4)), &mut ops);
        let (lo, hi) = s.bounds().unwrap();
        assert_eq!(lo.unwrap().denom(), &BigInt::from(4));
        assert_eq!(hi.unwrap().numer(), &BigInt::from(1));
    }
}
