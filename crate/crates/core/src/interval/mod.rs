//! Integer interval arithmetic with arbitrary precision bounds.
//!
//! An [`IntInterval`] is either empty, or a pair of bounds `lo <= hi` where the
//! lower bound may be `-inf` and the upper bound may be `+inf`. The interval
//! `(-inf..+inf)` stands for the whole set of integers.
//!
//! Every arithmetic operation that corresponds to a set operation on integers
//! lives in [`arith`], [`division`] or [`roots`] and takes an [`OpCounters`]
//! sink so that callers can account for the work done.

mod arith;
mod counters;
mod division;
mod roots;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use arith::{add, mul_hull, neg, pow_hull, scale, sub};
pub use counters::OpCounters;
pub use division::{div_halfline, div_hull};
pub use roots::{ceil_root, floor_root, root};

/// One end of an interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    Finite(BigInt),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Bound::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub(crate) fn negate(&self) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::PosInf => Bound::NegInf,
            Bound::Finite(v) => Bound::Finite(-v),
        }
    }

    /// Sign of the bound viewed as an extended integer.
    pub(crate) fn signum(&self) -> i8 {
        match self {
            Bound::NegInf => -1,
            Bound::PosInf => 1,
            Bound::Finite(v) => {
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

impl From<BigInt> for Bound {
    fn from(v: BigInt) -> Self {
        Bound::Finite(v)
    }
}

impl From<i64> for Bound {
    fn from(v: i64) -> Self {
        Bound::Finite(BigInt::from(v))
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        use Bound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::PosInf => write!(f, "+inf"),
            Bound::Finite(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Empty,
    Range { lo: Bound, hi: Bound },
}

/// A set of consecutive integers, possibly unbounded on either side.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntInterval(Repr);

impl IntInterval {
    pub fn empty() -> Self {
        IntInterval(Repr::Empty)
    }

    /// The set of all integers.
    pub fn integers() -> Self {
        IntInterval(Repr::Range {
            lo: Bound::NegInf,
            hi: Bound::PosInf,
        })
    }

    /// `[lo..hi]`; empty when `lo > hi`.
    pub fn new(lo: impl Into<BigInt>, hi: impl Into<BigInt>) -> Self {
        Self::from_bounds(Bound::Finite(lo.into()), Bound::Finite(hi.into()))
    }

    pub fn singleton(v: impl Into<BigInt>) -> Self {
        let v = v.into();
        IntInterval(Repr::Range {
            lo: Bound::Finite(v.clone()),
            hi: Bound::Finite(v),
        })
    }

    /// `(-inf..hi]`
    pub fn at_most(hi: impl Into<BigInt>) -> Self {
        Self::from_bounds(Bound::NegInf, Bound::Finite(hi.into()))
    }

    /// `[lo..+inf)`
    pub fn at_least(lo: impl Into<BigInt>) -> Self {
        Self::from_bounds(Bound::Finite(lo.into()), Bound::PosInf)
    }

    /// Builds an interval from two bounds. A `+inf` lower bound, a `-inf`
    /// upper bound, or crossed bounds all give the empty interval.
    pub fn from_bounds(lo: Bound, hi: Bound) -> Self {
        if lo == Bound::PosInf || hi == Bound::NegInf || lo > hi {
            IntInterval(Repr::Empty)
        } else {
            IntInterval(Repr::Range { lo, hi })
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.0, Repr::Empty)
    }

    pub fn lo(&self) -> Option<&Bound> {
        match &self.0 {
            Repr::Empty => None,
            Repr::Range { lo, .. } => Some(lo),
        }
    }

    pub fn hi(&self) -> Option<&Bound> {
        match &self.0 {
            Repr::Empty => None,
            Repr::Range { hi, .. } => Some(hi),
        }
    }

    pub fn bounds(&self) -> Option<(&Bound, &Bound)> {
        match &self.0 {
            Repr::Empty => None,
            Repr::Range { lo, hi } => Some((lo, hi)),
        }
    }

    /// Finite lower bound, if any.
    pub fn min(&self) -> Option<&BigInt> {
        self.lo().and_then(Bound::finite)
    }

    /// Finite upper bound, if any.
    pub fn max(&self) -> Option<&BigInt> {
        self.hi().and_then(Bound::finite)
    }

    /// Both bounds, when the interval is non-empty and bounded.
    pub fn finite_bounds(&self) -> Option<(&BigInt, &BigInt)> {
        match &self.0 {
            Repr::Range {
                lo: Bound::Finite(a),
                hi: Bound::Finite(b),
            } => Some((a, b)),
            _ => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.is_empty() || self.finite_bounds().is_some()
    }

    pub fn is_integers(&self) -> bool {
        matches!(
            self.0,
            Repr::Range {
                lo: Bound::NegInf,
                hi: Bound::PosInf
            }
        )
    }

    pub fn singleton_value(&self) -> Option<&BigInt> {
        match self.finite_bounds() {
            Some((a, b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn is_singleton(&self) -> bool {
        self.singleton_value().is_some()
    }

    pub fn contains(&self, v: &BigInt) -> bool {
        match &self.0 {
            Repr::Empty => false,
            Repr::Range { lo, hi } => {
                let above = match lo {
                    Bound::NegInf => true,
                    Bound::Finite(a) => a <= v,
                    Bound::PosInf => false,
                };
                above
                    && match hi {
                        Bound::PosInf => true,
                        Bound::Finite(b) => v <= b,
                        Bound::NegInf => false,
                    }
            }
        }
    }

    pub fn contains_zero(&self) -> bool {
        match &self.0 {
            Repr::Empty => false,
            Repr::Range { lo, hi } => lo.signum() <= 0 && hi.signum() >= 0,
        }
    }

    /// Number of members, `None` when unbounded.
    pub fn size(&self) -> Option<BigInt> {
        match &self.0 {
            Repr::Empty => Some(BigInt::zero()),
            _ => self.finite_bounds().map(|(a, b)| b - a + BigInt::one()),
        }
    }

    /// `self ⊆ other`
    pub fn is_subset(&self, other: &IntInterval) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((a, b)), Some((c, d))) => c <= a && b <= d,
        }
    }

    /// `[max(a,c)..min(b,d)]`
    pub fn intersect(&self, other: &IntInterval) -> IntInterval {
        match (self.bounds(), other.bounds()) {
            (Some((a, b)), Some((c, d))) => Self::from_bounds(a.max(c).clone(), b.min(d).clone()),
            _ => IntInterval::empty(),
        }
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &IntInterval) -> IntInterval {
        match (self.bounds(), other.bounds()) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some((a, b)), Some((c, d))) => Self::from_bounds(a.min(c).clone(), b.max(d).clone()),
        }
    }

    /// Iterates the members of a bounded interval.
    pub fn iter(&self) -> impl Iterator<Item = BigInt> + '_ {
        let (start, end) = match self.finite_bounds() {
            Some((a, b)) => (a.clone(), b.clone()),
            None => {
                assert!(self.is_empty(), "cannot iterate an unbounded interval");
                (BigInt::one(), BigInt::zero())
            }
        };
        num_iter_inclusive(start, end)
    }
}

fn num_iter_inclusive(start: BigInt, end: BigInt) -> impl Iterator<Item = BigInt> {
    let mut cur = start;
    std::iter::from_fn(move || {
        if cur > end {
            None
        } else {
            let v = cur.clone();
            cur += 1;
            Some(v)
        }
    })
}

impl fmt::Display for IntInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Empty => write!(f, "empty"),
            Repr::Range {
                lo: Bound::NegInf,
                hi: Bound::PosInf,
            } => write!(f, "Z"),
            Repr::Range { lo, hi } => {
                let open = if lo.is_finite() { '[' } else { '(' };
                let close = if hi.is_finite() { ']' } else { ')' };
                write!(f, "{open}{lo}..{hi}{close}")
            }
        }
    }
}

impl fmt::Debug for IntInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A union of at most two disjoint, non-adjacent, non-empty intervals in
/// ascending order. This is the shape of an even root of an interval.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntervalUnion {
    parts: Vec<IntInterval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    /// Normalizes arbitrary parts: drops empty ones, sorts, and merges
    /// overlapping or adjacent ones.
    pub fn from_parts(parts: impl IntoIterator<Item = IntInterval>) -> Self {
        let mut parts: Vec<IntInterval> = parts.into_iter().filter(|p| !p.is_empty()).collect();
        parts.sort_by(|x, y| x.lo().cmp(&y.lo()));
        let mut merged: Vec<IntInterval> = Vec::with_capacity(parts.len());
        for p in parts {
            if let Some(last) = merged.last_mut() {
                let touches = match (last.hi().unwrap(), p.lo().unwrap()) {
                    (Bound::PosInf, _) | (_, Bound::NegInf) => true,
                    (Bound::Finite(h), Bound::Finite(l)) => *l <= h + BigInt::one(),
                    _ => false,
                };
                if touches {
                    *last = last.hull(&p);
                    continue;
                }
            }
            merged.push(p);
        }
        debug_assert!(merged.len() <= 2 || cfg!(test));
        IntervalUnion { parts: merged }
    }

    pub fn parts(&self) -> &[IntInterval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, v: &BigInt) -> bool {
        self.parts.iter().any(|p| p.contains(v))
    }

    /// Smallest interval enclosing the union.
    pub fn hull(&self) -> IntInterval {
        self.parts
            .iter()
            .fold(IntInterval::empty(), |acc, p| acc.hull(p))
    }

    /// Piecewise intersection with an interval.
    pub fn intersect(&self, x: &IntInterval) -> IntervalUnion {
        IntervalUnion::from_parts(self.parts.iter().map(|p| p.intersect(x)))
    }
}

impl From<IntInterval> for IntervalUnion {
    fn from(x: IntInterval) -> Self {
        IntervalUnion::from_parts([x])
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "empty");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// `hull(U)`
pub fn hull_of_union(u: &IntervalUnion) -> IntInterval {
    u.hull()
}

/// `X ∩ U`, kept as a union.
pub fn intersect_union(x: &IntInterval, u: &IntervalUnion) -> IntervalUnion {
    u.intersect(x)
}

/// `int(X ∩ U)`
pub fn hull_intersect_union(x: &IntInterval, u: &IntervalUnion) -> IntInterval {
    u.parts
        .iter()
        .fold(IntInterval::empty(), |acc, p| acc.hull(&p.intersect(x)))
}

/// Direction of a half-line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HalfLineKind {
    /// All integers at most some member of the origin.
    AtMost,
    /// All integers at least some member of the origin.
    AtLeast,
}

/// The set of integers below (or above) some member of `origin`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfLine {
    pub kind: HalfLineKind,
    pub origin: IntInterval,
}

impl HalfLine {
    pub fn at_most(origin: IntInterval) -> Self {
        HalfLine {
            kind: HalfLineKind::AtMost,
            origin,
        }
    }

    pub fn at_least(origin: IntInterval) -> Self {
        HalfLine {
            kind: HalfLineKind::AtLeast,
            origin,
        }
    }

    /// The half-line as an (unbounded) interval.
    pub fn to_interval(&self) -> IntInterval {
        match (self.kind, self.origin.bounds()) {
            (_, None) => IntInterval::empty(),
            (HalfLineKind::AtMost, Some((_, hi))) => {
                IntInterval::from_bounds(Bound::NegInf, hi.clone())
            }
            (HalfLineKind::AtLeast, Some((lo, _))) => {
                IntInterval::from_bounds(lo.clone(), Bound::PosInf)
            }
        }
    }
}
