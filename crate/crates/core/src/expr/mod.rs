//! Arithmetic expressions, polynomial constraints and CSP models.
//!
//! User input is parsed into [`ArithExpr`] trees and immediately normalized
//! into [`PolyConstraint`]s: everything moved to the left, like power products
//! merged, constants folded into the right-hand side.

mod normalize;
mod parser;
mod print;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Pow;

use crate::interval::IntInterval;

pub use normalize::{expand, factor_orders, normalize, FactorOrders, Polynomial};
pub use parser::{parse_model, ParseError, ParseErrorKind};
pub use print::Named;

/// Index of a variable in declaration order; the order of indices is the
/// variable ordering used for monomials and for branching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ArithExpr {
    Const(BigInt),
    Var(VarId),
    Neg(Box<ArithExpr>),
    Add(Box<ArithExpr>, Box<ArithExpr>),
    Sub(Box<ArithExpr>, Box<ArithExpr>),
    Mul(Box<ArithExpr>, Box<ArithExpr>),
    Pow(Box<ArithExpr>, u32),
}

impl ArithExpr {
    pub fn constant(v: impl Into<BigInt>) -> Self {
        ArithExpr::Const(v.into())
    }

    pub fn var(v: VarId) -> Self {
        ArithExpr::Var(v)
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        match self {
            ArithExpr::Const(c) => c.clone(),
            ArithExpr::Var(v) => point[v.0].clone(),
            ArithExpr::Neg(e) => -e.eval(point),
            ArithExpr::Add(a, b) => a.eval(point) + b.eval(point),
            ArithExpr::Sub(a, b) => a.eval(point) - b.eval(point),
            ArithExpr::Mul(a, b) => a.eval(point) * b.eval(point),
            ArithExpr::Pow(e, n) => Pow::pow(e.eval(point), *n),
        }
    }

    pub fn vars(&self, out: &mut Vec<VarId>) {
        match self {
            ArithExpr::Const(_) => {}
            ArithExpr::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            ArithExpr::Neg(e) | ArithExpr::Pow(e, _) => e.vars(out),
            ArithExpr::Add(a, b) | ArithExpr::Sub(a, b) | ArithExpr::Mul(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }
}

impl std::ops::Add for ArithExpr {
    type Output = ArithExpr;
    fn add(self, rhs: Self) -> Self {
        ArithExpr::Add(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Sub for ArithExpr {
    type Output = ArithExpr;
    fn sub(self, rhs: Self) -> Self {
        ArithExpr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Mul for ArithExpr {
    type Output = ArithExpr;
    fn mul(self, rhs: Self) -> Self {
        ArithExpr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Neg for ArithExpr {
    type Output = ArithExpr;
    fn neg(self) -> Self {
        ArithExpr::Neg(Box::new(self))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelOp {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl RelOp {
    pub fn holds(self, lhs: &BigInt, rhs: &BigInt) -> bool {
        match self {
            RelOp::Lt => lhs < rhs,
            RelOp::Le => lhs <= rhs,
            RelOp::Eq => lhs == rhs,
            RelOp::Ne => lhs != rhs,
            RelOp::Ge => lhs >= rhs,
            RelOp::Gt => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Eq => "=",
            RelOp::Ne => "!=",
            RelOp::Ge => ">=",
            RelOp::Gt => ">",
        }
    }
}

/// `lhs op rhs` as written by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithConstraint {
    pub lhs: ArithExpr,
    pub op: RelOp,
    pub rhs: ArithExpr,
}

impl ArithConstraint {
    pub fn new(lhs: ArithExpr, op: RelOp, rhs: ArithExpr) -> Self {
        ArithConstraint { lhs, op, rhs }
    }

    pub fn holds(&self, point: &[BigInt]) -> bool {
        self.op.holds(&self.lhs.eval(point), &self.rhs.eval(point))
    }
}

/// `coeff · x₁^n₁ · … · x_k^n_k` with the variables strictly ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigInt,
    pub powers: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn new(coeff: impl Into<BigInt>, mut powers: Vec<(VarId, u32)>) -> Self {
        powers.sort_by_key(|p| p.0);
        debug_assert!(powers.windows(2).all(|w| w[0].0 != w[1].0));
        debug_assert!(powers.iter().all(|p| p.1 >= 1));
        Monomial {
            coeff: coeff.into(),
            powers,
        }
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().map(|p| p.1).sum()
    }

    pub fn is_linear(&self) -> bool {
        self.degree() == 1
    }

    pub fn exponent_of(&self, v: VarId) -> u32 {
        self.powers.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let mut acc = self.coeff.clone();
        for &(v, n) in &self.powers {
            acc *= Pow::pow(&point[v.0], n);
        }
        acc
    }
}

/// Lexicographic order on exponent vectors: the monomial with the larger
/// exponent on the first variable where they differ comes first, so
/// `2x^5y^2z^4 - 4x^4y^6z^2 + 3xy^3z^5` is already sorted.
pub fn monomial_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.powers.get(i), b.powers.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (Some(&(va, ea)), Some(&(vb, eb))) => {
                if va != vb {
                    return va.cmp(&vb);
                }
                if ea != eb {
                    return eb.cmp(&ea);
                }
                i += 1;
                j += 1;
            }
        }
    }
}

/// `Σ monomials op rhs`. After normalization `op` is one of `<=`, `=`, `!=`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyConstraint {
    pub monomials: Vec<Monomial>,
    pub op: RelOp,
    pub rhs: BigInt,
}

impl PolyConstraint {
    pub fn lhs_value(&self, point: &[BigInt]) -> BigInt {
        self.monomials.iter().map(|m| m.eval(point)).sum()
    }

    pub fn holds(&self, point: &[BigInt]) -> bool {
        self.op.holds(&self.lhs_value(point), &self.rhs)
    }

    /// True for a constraint without variables.
    pub fn is_ground(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_linear(&self) -> bool {
        self.monomials.iter().all(Monomial::is_linear)
    }

    /// Distinct variables in order of first occurrence.
    pub fn vars(&self) -> Vec<VarId> {
        let mut out = Vec::new();
        for m in &self.monomials {
            for &(v, _) in &m.powers {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Variables occurring in more than one monomial, ascending.
    pub fn duplicate_occurrences(&self) -> Vec<VarId> {
        let mut seen: Vec<VarId> = Vec::new();
        let mut dups: Vec<VarId> = Vec::new();
        for m in &self.monomials {
            for &(v, _) in &m.powers {
                if seen.contains(&v) {
                    if !dups.contains(&v) {
                        dups.push(v);
                    }
                } else {
                    seen.push(v);
                }
            }
        }
        dups.sort();
        dups
    }

    /// Each variable occurs at most once; a power `x^n` is one occurrence.
    pub fn is_simple(&self) -> bool {
        self.duplicate_occurrences().is_empty()
    }
}

pub fn is_simple(p: &PolyConstraint) -> bool {
    p.is_simple()
}

pub fn duplicate_occurrence_report(p: &PolyConstraint) -> Vec<VarId> {
    p.duplicate_occurrences()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub domain: IntInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objective {
    pub sense: Sense,
    pub expr: ArithExpr,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CspModel {
    pub vars: Vec<VarDecl>,
    pub constraints: Vec<PolyConstraint>,
    /// The constraints as written, where known; parallel to `constraints`.
    pub sources: Vec<Option<ArithConstraint>>,
    pub objective: Option<Objective>,
}

impl CspModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, name: impl Into<String>, domain: IntInterval) -> VarId {
        let name = name.into();
        assert!(self.var_id(&name).is_none(), "duplicate variable {name}");
        self.vars.push(VarDecl { name, domain });
        VarId(self.vars.len() - 1)
    }

    /// Normalizes and appends an arithmetic constraint.
    pub fn add_constraint(&mut self, c: &ArithConstraint) {
        self.constraints.push(normalize(c));
        self.sources.push(Some(c.clone()));
    }

    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.vars.iter().position(|d| d.name == name).map(VarId)
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.vars[v.0].name
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn domains(&self) -> Vec<IntInterval> {
        self.vars.iter().map(|d| d.domain.clone()).collect()
    }

    /// Exact check of every constraint and domain at a full assignment.
    pub fn satisfied_by(&self, point: &[BigInt]) -> bool {
        point.len() == self.vars.len()
            && self
                .vars
                .iter()
                .zip(point)
                .all(|(d, v)| d.domain.contains(v))
            && self.constraints.iter().all(|c| c.holds(point))
    }

    pub fn objective_value(&self, point: &[BigInt]) -> Option<BigInt> {
        self.objective.as_ref().map(|o| o.expr.eval(point))
    }
}

impl fmt::Display for CspModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_model(self, f)
    }
}
