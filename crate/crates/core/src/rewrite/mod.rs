//! Compilation of a model into DRFs for one of the seven approaches.
//!
//! * `1a` polynomial rules on the normalized constraints, `1b` the same with
//!   simplified fractions wherever the cofactor domains exclude zero;
//! * `2a` an auxiliary variable for every non-linear monomial, `2b` only
//!   until no constraint has a duplicate variable occurrence;
//! * `3a`/`3b`/`3c` lowering to linear constraints plus atomic `x·y = z`
//!   (and `x = y^2`, resp. `x = y^n`) definitions.
//!
//! Auxiliary variables are appended after the user variables (and after the
//! objective variable, if any), so branching visits them last.

mod lower;
mod schedule;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::expr::{
    factor_orders, monomial_order, normalize, ArithConstraint, ArithExpr, CspModel, FactorOrders,
    Monomial, PolyConstraint, RelOp, VarDecl, VarId,
};
use crate::interval::{mul_hull, pow_hull, IntInterval, OpCounters};
use crate::rules::{DomainStore, Drf, OptimizedPlan, Role, RuleKind};

pub use schedule::hierarchical_schedule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Approach {
    A1a,
    A1b,
    A2a,
    A2b,
    A3a,
    A3b,
    A3c,
}

impl Approach {
    pub const ALL: [Approach; 7] = [
        Approach::A1a,
        Approach::A1b,
        Approach::A2a,
        Approach::A2b,
        Approach::A3a,
        Approach::A3b,
        Approach::A3c,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Approach::A1a => "1a",
            Approach::A1b => "1b",
            Approach::A2a => "2a",
            Approach::A2b => "2b",
            Approach::A3a => "3a",
            Approach::A3b => "3b",
            Approach::A3c => "3c",
        }
    }

    pub fn uses_aux(self) -> bool {
        !matches!(self, Approach::A1a | Approach::A1b)
    }
}

impl fmt::Display for Approach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown approach `{0}` (expected one of 1a 1b 2a 2b 3a 3b 3c)")]
pub struct UnknownApproach(pub String);

impl FromStr for Approach {
    type Err = UnknownApproach;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Approach::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownApproach(s.to_string()))
    }
}

/// Definition of an auxiliary variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuxDef {
    /// `aux = Π x^n`, propagated as the polynomial constraint `Π x^n − aux = 0`.
    Monomial {
        aux: VarId,
        powers: Vec<(VarId, u32)>,
    },
    /// `aux = x · y` (possibly `x = y`).
    Product { aux: VarId, x: VarId, y: VarId },
    /// `aux = base^n`
    Power { aux: VarId, base: VarId, n: u32 },
}

impl AuxDef {
    pub fn aux(&self) -> VarId {
        match self {
            AuxDef::Monomial { aux, .. }
            | AuxDef::Product { aux, .. }
            | AuxDef::Power { aux, .. } => *aux,
        }
    }

    pub fn operands(&self) -> Vec<VarId> {
        match self {
            AuxDef::Monomial { powers, .. } => powers.iter().map(|p| p.0).collect(),
            AuxDef::Product { x, y, .. } if x == y => vec![*x],
            AuxDef::Product { x, y, .. } => vec![*x, *y],
            AuxDef::Power { base, .. } => vec![*base],
        }
    }
}

/// Hull evaluation of the defining expression.
pub fn aux_domain(def: &AuxDef, store: &DomainStore) -> IntInterval {
    let mut ops = OpCounters::new();
    match def {
        AuxDef::Monomial { powers, .. } => {
            crate::rules::eval_product(&BigInt::from(1), powers, store, &mut ops)
        }
        AuxDef::Product { x, y, .. } => mul_hull(store.get(*x), store.get(*y), &mut ops),
        AuxDef::Power { base, n, .. } => pow_hull(store.get(*base), *n, &mut ops),
    }
}

/// A model ready for propagation and search.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub approach: Approach,
    /// User variables, then the objective variable, then auxiliaries.
    pub vars: Vec<VarDecl>,
    pub num_user: usize,
    pub objective: Option<VarId>,
    pub aux: Vec<AuxDef>,
    /// User constraints after rewriting (objective definition included).
    pub constraints: Vec<Arc<PolyConstraint>>,
    pub drfs: Vec<Drf>,
    /// Hierarchical schedule; only present when there are auxiliaries.
    pub schedule: Option<Vec<usize>>,
    /// Some constraint normalized to a false ground statement such as `0 = 1`.
    pub trivially_false: bool,
    /// For every variable, the DRFs that read it.
    pub dependents: Vec<Vec<usize>>,
}

impl Compiled {
    pub fn nvar(&self) -> usize {
        self.vars.len()
    }

    pub fn ndrf(&self) -> usize {
        self.drfs.len()
    }

    pub fn initial_store(&self) -> DomainStore {
        DomainStore::new(self.vars.iter().map(|d| d.domain.clone()).collect())
    }

    pub fn is_aux(&self, v: VarId) -> bool {
        v.0 >= self.num_user + usize::from(self.objective.is_some())
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.vars[v.0].name
    }
}

struct Builder {
    approach: Approach,
    vars: Vec<VarDecl>,
    aux: Vec<AuxDef>,
    pool: HashMap<Vec<(VarId, u32)>, VarId>,
    /// Factor order of power products in the constraints as written.
    orders: FactorOrders,
}

impl Builder {
    fn store(&self) -> DomainStore {
        DomainStore::new(self.vars.iter().map(|d| d.domain.clone()).collect())
    }

    fn pp_name(&self, powers: &[(VarId, u32)]) -> String {
        let parts: Vec<String> = powers
            .iter()
            .map(|&(v, n)| {
                let name = &self.vars[v.0].name;
                if n == 1 {
                    name.clone()
                } else {
                    format!("{name}^{n}")
                }
            })
            .collect();
        format!("[{}]", parts.join("*"))
    }

    fn push_aux(&mut self, name: String, def: impl FnOnce(VarId) -> AuxDef) -> VarId {
        let id = VarId(self.vars.len());
        let def = def(id);
        self.vars.push(VarDecl {
            name,
            domain: IntInterval::integers(),
        });
        let domain = aux_domain(&def, &self.store());
        self.vars[id.0].domain = domain;
        self.aux.push(def);
        id
    }

    /// Aux variable standing for a whole power product (approach 2).
    fn monomial_aux(&mut self, powers: &[(VarId, u32)]) -> VarId {
        if let Some(&v) = self.pool.get(powers) {
            return v;
        }
        let name = self.pp_name(powers);
        let pp = powers.to_vec();
        let v = self.push_aux(name, |aux| AuxDef::Monomial { aux, powers: pp });
        self.pool.insert(powers.to_vec(), v);
        v
    }
}

fn replace_monomials(
    c: &PolyConstraint,
    mut pick: impl FnMut(&Monomial) -> Option<VarId>,
) -> PolyConstraint {
    let mut monomials: Vec<Monomial> = c
        .monomials
        .iter()
        .map(|m| match pick(m) {
            Some(aux) => Monomial {
                coeff: m.coeff.clone(),
                powers: vec![(aux, 1)],
            },
            None => m.clone(),
        })
        .collect();
    monomials.sort_by(monomial_order);
    PolyConstraint {
        monomials,
        op: c.op,
        rhs: c.rhs.clone(),
    }
}

/// The non-linear monomial to replace next under approach 2b, if any: among
/// the constraints that are not simple, the monomial containing the most
/// duplicated variables, ties broken by the smallest power product.
fn next_2b_candidate(constraints: &[PolyConstraint]) -> Option<Vec<(VarId, u32)>> {
    let mut best: Option<(usize, Vec<(VarId, u32)>)> = None;
    for c in constraints {
        let dups = c.duplicate_occurrences();
        if dups.is_empty() {
            continue;
        }
        for m in &c.monomials {
            if m.is_linear() {
                continue;
            }
            let score = m.powers.iter().filter(|p| dups.contains(&p.0)).count();
            if score == 0 {
                continue;
            }
            let better = match &best {
                None => true,
                Some((s, pp)) => score > *s || (score == *s && m.powers < *pp),
            };
            if better {
                best = Some((score, m.powers.clone()));
            }
        }
    }
    best.map(|b| b.1)
}

fn objective_name(model: &CspModel) -> String {
    let mut name = "obj".to_string();
    let mut k = 1;
    while model.var_id(&name).is_some() {
        name = format!("obj{k}");
        k += 1;
    }
    name
}

/// DRFs of one constraint under the polynomial rules.
fn constraint_drfs(
    c: &Arc<PolyConstraint>,
    role_of: impl Fn(VarId) -> Role,
    optimize_with: Option<&DomainStore>,
    out: &mut Vec<Drf>,
) {
    if c.op == RelOp::Ne {
        for v in c.vars() {
            out.push(Drf::disequality(c.clone(), v, role_of(v)));
        }
        return;
    }
    for (l, m) in c.monomials.iter().enumerate() {
        for (p, &(v, _)) in m.powers.iter().enumerate() {
            let plan = match optimize_with {
                Some(store) if !c.is_linear() => OptimizedPlan::build(c, l, p, store),
                _ => None,
            };
            out.push(match plan {
                Some(plan) => Drf::optimized(c.clone(), plan, role_of(v)),
                None => Drf::poly(c.clone(), l, p, role_of(v)),
            });
        }
    }
}

pub fn compile(model: &CspModel, approach: Approach) -> Compiled {
    let num_user = model.vars.len();
    let mut vars = model.vars.clone();
    let mut user: Vec<PolyConstraint> = model.constraints.clone();
    let objective = model.objective.as_ref().map(|o| {
        let obj = VarId(vars.len());
        vars.push(VarDecl {
            name: objective_name(model),
            domain: IntInterval::integers(),
        });
        user.push(normalize(&ArithConstraint::new(
            o.expr.clone() - ArithExpr::Var(obj),
            RelOp::Eq,
            ArithExpr::constant(0),
        )));
        obj
    });

    let mut trivially_false = false;
    user.retain(|c| {
        if c.is_ground() {
            trivially_false |= !c.op.holds(&BigInt::from(0), &c.rhs);
            false
        } else {
            true
        }
    });

    let mut orders = HashMap::new();
    let written = model
        .sources
        .iter()
        .flatten()
        .flat_map(|c| [&c.lhs, &c.rhs]);
    for e in written.chain(model.objective.as_ref().map(|o| &o.expr)) {
        for (k, v) in factor_orders(e) {
            orders.entry(k).or_insert(v);
        }
    }
    let mut b = Builder {
        approach,
        vars,
        aux: Vec::new(),
        pool: HashMap::new(),
        orders,
    };

    match approach {
        Approach::A1a | Approach::A1b => {}
        Approach::A2a => {
            user = user
                .iter()
                .map(|c| {
                    replace_monomials(c, |m| (!m.is_linear()).then(|| b.monomial_aux(&m.powers)))
                })
                .collect();
        }
        Approach::A2b => {
            while let Some(pp) = next_2b_candidate(&user) {
                let aux = b.monomial_aux(&pp);
                user = user
                    .iter()
                    .map(|c| replace_monomials(c, |m| (m.powers == pp).then_some(aux)))
                    .collect();
            }
        }
        Approach::A3a | Approach::A3b | Approach::A3c => {
            user = user
                .iter()
                .map(|c| {
                    replace_monomials(c, |m| {
                        (!m.is_linear()).then(|| {
                            let ordered = b.orders.get(&m.powers).cloned();
                            b.lower(ordered.as_deref().unwrap_or(&m.powers))
                        })
                    })
                })
                .collect();
        }
    }

    let user: Vec<Arc<PolyConstraint>> = user.into_iter().map(Arc::new).collect();
    let mut drfs = Vec::new();
    let initial = b.store();
    let optimize_with = (approach == Approach::A1b).then_some(&initial);
    for c in &user {
        constraint_drfs(c, |_| Role::User, optimize_with, &mut drfs);
    }
    for def in &b.aux {
        let aux = def.aux();
        let role = |v: VarId| {
            if v == aux {
                Role::Forward
            } else {
                Role::Backward
            }
        };
        match def {
            AuxDef::Monomial { powers, .. } => {
                let mut monomials = vec![
                    Monomial {
                        coeff: BigInt::from(1),
                        powers: powers.clone(),
                    },
                    Monomial {
                        coeff: BigInt::from(-1),
                        powers: vec![(aux, 1)],
                    },
                ];
                monomials.sort_by(monomial_order);
                let c = Arc::new(PolyConstraint {
                    monomials,
                    op: RelOp::Eq,
                    rhs: BigInt::from(0),
                });
                constraint_drfs(&c, role, None, &mut drfs);
            }
            AuxDef::Product { aux, x, y } => {
                drfs.push(Drf::mult(RuleKind::Mult1, *x, *y, *aux, Role::Forward));
                drfs.push(Drf::mult(RuleKind::Mult2, *x, *y, *aux, Role::Backward));
                if x != y {
                    drfs.push(Drf::mult(RuleKind::Mult3, *x, *y, *aux, Role::Backward));
                }
            }
            AuxDef::Power { aux, base, n } => {
                drfs.push(Drf::power(
                    RuleKind::Exponentiation,
                    *aux,
                    *base,
                    *n,
                    Role::Forward,
                ));
                drfs.push(Drf::power(
                    RuleKind::RootExtraction,
                    *aux,
                    *base,
                    *n,
                    Role::Backward,
                ));
            }
        }
    }

    let mut dependents = vec![Vec::new(); b.vars.len()];
    for (i, d) in drfs.iter().enumerate() {
        for v in &d.depends_on {
            dependents[v.0].push(i);
        }
    }
    let schedule = (!b.aux.is_empty()).then(|| hierarchical_schedule(&drfs, &b.aux));

    Compiled {
        approach,
        vars: b.vars,
        num_user,
        objective,
        aux: b.aux,
        constraints: user,
        drfs,
        schedule,
        trivially_false,
        dependents,
    }
}
