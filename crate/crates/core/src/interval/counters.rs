use std::ops::AddAssign;

use serde::Serialize;

/// Counts of interval operations, one field per operation kind.
///
/// `div_q` and `sum_q` count the rational-bounded (real interval) division and
/// addition used by the fraction-simplifying rules.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpCounters {
    pub root: u64,
    pub exp: u64,
    pub div: u64,
    pub mult_i: u64,
    pub mult_f: u64,
    pub sum: u64,
    pub div_q: u64,
    pub sum_q: u64,
}

impl OpCounters {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn total(&self) -> u64 {
        self.root
            + self.exp
            + self.div
            + self.mult_i
            + self.mult_f
            + self.sum
            + self.div_q
            + self.sum_q
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.root += rhs.root;
        self.exp += rhs.exp;
        self.div += rhs.div;
        self.mult_i += rhs.mult_i;
        self.mult_f += rhs.mult_f;
        self.sum += rhs.sum;
        self.div_q += rhs.div_q;
        self.sum_q += rhs.sum_q;
    }
}
