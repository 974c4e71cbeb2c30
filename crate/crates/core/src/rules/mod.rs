//! Domain reduction functions (DRFs).
//!
//! A [`Drf`] is one rule instance: it reads the domains of the variables of a
//! single constraint and returns a new, smaller domain for one target
//! variable. Rules never write the store themselves; the engine does.

mod atomic;
mod poly;

use std::fmt;
use std::ops::{Index, IndexMut};
use std::sync::Arc;

use crate::expr::{PolyConstraint, VarId};
use crate::interval::{IntInterval, OpCounters};

pub use atomic::{
    disequality_step, exponentiation_step, mult1_step, mult2_step, mult3_step, root_extraction_step,
};
pub(crate) use poly::eval_product;
pub use poly::{
    linear_equality_step, linear_inequality_step, poly_equality_step, poly_inequality_step,
    poly_optimized_step, simplify_fraction, OptimizedPlan,
};

/// One domain per variable, indexed by [`VarId`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DomainStore {
    doms: Vec<IntInterval>,
}

impl DomainStore {
    pub fn new(doms: Vec<IntInterval>) -> Self {
        DomainStore { doms }
    }

    pub fn len(&self) -> usize {
        self.doms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doms.is_empty()
    }

    pub fn get(&self, v: VarId) -> &IntInterval {
        &self.doms[v.0]
    }

    pub fn set(&mut self, v: VarId, d: IntInterval) {
        self.doms[v.0] = d;
    }

    pub fn domains(&self) -> &[IntInterval] {
        &self.doms
    }

    pub fn has_empty(&self) -> bool {
        self.doms.iter().any(IntInterval::is_empty)
    }

    /// Pointwise inclusion.
    pub fn is_subset(&self, other: &DomainStore) -> bool {
        self.doms.len() == other.doms.len()
            && self
                .doms
                .iter()
                .zip(&other.doms)
                .all(|(a, b)| a.is_subset(b))
    }
}

impl Index<VarId> for DomainStore {
    type Output = IntInterval;
    fn index(&self, v: VarId) -> &IntInterval {
        &self.doms[v.0]
    }
}

impl IndexMut<VarId> for DomainStore {
    fn index_mut(&mut self, v: VarId) -> &mut IntInterval {
        &mut self.doms[v.0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    LinearEquality,
    LinearInequality,
    PolyEquality,
    PolyInequality,
    PolyEqualityOptimized,
    PolyInequalityOptimized,
    Mult1,
    Mult2,
    Mult3,
    Exponentiation,
    RootExtraction,
    Disequality,
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleKind::LinearEquality => "LINEAR EQUALITY",
            RuleKind::LinearInequality => "LINEAR INEQUALITY",
            RuleKind::PolyEquality => "POLYNOMIAL EQUALITY",
            RuleKind::PolyInequality => "POLYNOMIAL INEQUALITY",
            RuleKind::PolyEqualityOptimized => "POLYNOMIAL EQUALITY (simplified fractions)",
            RuleKind::PolyInequalityOptimized => "POLYNOMIAL INEQUALITY (simplified fractions)",
            RuleKind::Mult1 => "MULTIPLICATION 1",
            RuleKind::Mult2 => "MULTIPLICATION 2",
            RuleKind::Mult3 => "MULTIPLICATION 3",
            RuleKind::Exponentiation => "EXPONENTIATION",
            RuleKind::RootExtraction => "ROOT EXTRACTION",
            RuleKind::Disequality => "DISEQUALITY",
        };
        f.write_str(s)
    }
}

/// Position of a DRF in a forward/backward schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// Part of a constraint given by the user.
    User,
    /// Computes an auxiliary variable from its definition.
    Forward,
    /// Pushes a change of an auxiliary variable back to its operands.
    Backward,
}

#[derive(Clone, Debug)]
pub enum DrfBody {
    /// Monomial `l`, factor `p` of a polynomial `=` or `<=` constraint.
    Poly {
        c: Arc<PolyConstraint>,
        l: usize,
        p: usize,
    },
    Optimized {
        c: Arc<PolyConstraint>,
        plan: Arc<OptimizedPlan>,
    },
    /// `x · y = z`
    Mult {
        x: VarId,
        y: VarId,
        z: VarId,
    },
    /// `x = y^n`
    Power {
        x: VarId,
        y: VarId,
        n: u32,
    },
    Disequality {
        c: Arc<PolyConstraint>,
    },
}

#[derive(Clone, Debug)]
pub struct Drf {
    pub kind: RuleKind,
    pub target: VarId,
    /// Every variable of the constraint, the target included.
    pub depends_on: Vec<VarId>,
    pub role: Role,
    pub body: DrfBody,
}

impl Drf {
    /// The reduced domain of the target; a subset of its current domain.
    pub fn apply(&self, store: &DomainStore, ops: &mut OpCounters) -> IntInterval {
        match (&self.body, self.kind) {
            (DrfBody::Poly { c, l, p }, _) => poly::poly_step(store, c, *l, *p, ops),
            (DrfBody::Optimized { c, plan }, _) => poly_optimized_step(store, c, plan, ops),
            (DrfBody::Mult { x, y, z }, RuleKind::Mult1) => mult1_step(store, *x, *y, *z, ops),
            (DrfBody::Mult { x, y, z }, RuleKind::Mult2) => mult2_step(store, *x, *y, *z, ops),
            (DrfBody::Mult { x, y, z }, _) => mult3_step(store, *x, *y, *z, ops),
            (DrfBody::Power { x, y, n }, RuleKind::Exponentiation) => {
                exponentiation_step(store, *x, *y, *n, ops)
            }
            (DrfBody::Power { x, y, n }, _) => root_extraction_step(store, *x, *y, *n, ops),
            (DrfBody::Disequality { c }, _) => disequality_step(store, c, self.target),
        }
    }

    pub fn mult(kind: RuleKind, x: VarId, y: VarId, z: VarId, role: Role) -> Drf {
        let target = match kind {
            RuleKind::Mult1 => z,
            RuleKind::Mult2 => x,
            RuleKind::Mult3 => y,
            other => panic!("{other} is not a multiplication rule"),
        };
        let mut depends_on = vec![x, y, z];
        depends_on.dedup();
        Drf {
            kind,
            target,
            depends_on,
            role,
            body: DrfBody::Mult { x, y, z },
        }
    }

    pub fn power(kind: RuleKind, x: VarId, y: VarId, n: u32, role: Role) -> Drf {
        let target = match kind {
            RuleKind::Exponentiation => x,
            RuleKind::RootExtraction => y,
            other => panic!("{other} is not a power rule"),
        };
        Drf {
            kind,
            target,
            depends_on: vec![x, y],
            role,
            body: DrfBody::Power { x, y, n },
        }
    }

    /// Plain rule for the `p`-th factor of monomial `l`.
    pub fn poly(c: Arc<PolyConstraint>, l: usize, p: usize, role: Role) -> Drf {
        let linear = c.is_linear();
        let kind = match (c.op, linear) {
            (crate::expr::RelOp::Eq, true) => RuleKind::LinearEquality,
            (crate::expr::RelOp::Eq, false) => RuleKind::PolyEquality,
            (crate::expr::RelOp::Le, true) => RuleKind::LinearInequality,
            (crate::expr::RelOp::Le, false) => RuleKind::PolyInequality,
            (op, _) => panic!("no polynomial rule for `{}`", op.symbol()),
        };
        Drf {
            kind,
            target: c.monomials[l].powers[p].0,
            depends_on: c.vars(),
            role,
            body: DrfBody::Poly { c, l, p },
        }
    }

    pub fn optimized(c: Arc<PolyConstraint>, plan: OptimizedPlan, role: Role) -> Drf {
        let kind = match c.op {
            crate::expr::RelOp::Eq => RuleKind::PolyEqualityOptimized,
            _ => RuleKind::PolyInequalityOptimized,
        };
        Drf {
            kind,
            target: plan.target(),
            depends_on: c.vars(),
            role,
            body: DrfBody::Optimized {
                c,
                plan: Arc::new(plan),
            },
        }
    }

    pub fn disequality(c: Arc<PolyConstraint>, target: VarId, role: Role) -> Drf {
        Drf {
            kind: RuleKind::Disequality,
            target,
            depends_on: c.vars(),
            role,
            body: DrfBody::Disequality { c },
        }
    }
}
