use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{monomial_order, ArithConstraint, ArithExpr, Monomial, PolyConstraint, RelOp, VarId};

/// Sparse polynomial keyed by power product; the empty key is the constant.
pub type Polynomial = BTreeMap<Vec<(VarId, u32)>, BigInt>;

fn add_term(p: &mut Polynomial, pp: Vec<(VarId, u32)>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let cancelled = {
        let entry = p.entry(pp.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        entry.is_zero()
    };
    if cancelled {
        p.remove(&pp);
    }
}

fn merge_pp(a: &[(VarId, u32)], b: &[(VarId, u32)]) -> Vec<(VarId, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut out = Polynomial::new();
    for (pa, ca) in a {
        for (pb, cb) in b {
            add_term(&mut out, merge_pp(pa, pb), ca * cb);
        }
    }
    out
}

fn poly_scale(p: Polynomial, k: &BigInt) -> Polynomial {
    p.into_iter().map(|(pp, c)| (pp, c * k)).collect()
}

fn poly_add(mut a: Polynomial, b: Polynomial) -> Polynomial {
    for (pp, c) in b {
        add_term(&mut a, pp, c);
    }
    a
}

/// Fully expanded polynomial of an expression.
pub fn expand(e: &ArithExpr) -> Polynomial {
    match e {
        ArithExpr::Const(c) => {
            let mut p = Polynomial::new();
            add_term(&mut p, Vec::new(), c.clone());
            p
        }
        ArithExpr::Var(v) => {
            let mut p = Polynomial::new();
            p.insert(vec![(*v, 1)], BigInt::one());
            p
        }
        ArithExpr::Neg(a) => poly_scale(expand(a), &BigInt::from(-1)),
        ArithExpr::Add(a, b) => poly_add(expand(a), expand(b)),
        ArithExpr::Sub(a, b) => poly_add(expand(a), poly_scale(expand(b), &BigInt::from(-1))),
        ArithExpr::Mul(a, b) => poly_mul(&expand(a), &expand(b)),
        ArithExpr::Pow(a, n) => {
            let base = expand(a);
            let mut acc = Polynomial::new();
            acc.insert(Vec::new(), BigInt::one());
            for _ in 0..*n {
                acc = poly_mul(&acc, &base);
            }
            acc
        }
    }
}

/// Product of two power products keeping factors in first-occurrence order.
fn concat_pp(a: &[(VarId, u32)], b: &[(VarId, u32)]) -> Vec<(VarId, u32)> {
    let mut out = a.to_vec();
    for &(v, n) in b {
        match out.iter_mut().find(|f| f.0 == v) {
            Some(f) => f.1 += n,
            None => out.push((v, n)),
        }
    }
    out
}

fn ordered_terms(e: &ArithExpr) -> Vec<Vec<(VarId, u32)>> {
    fn mul(a: &[Vec<(VarId, u32)>], b: &[Vec<(VarId, u32)>]) -> Vec<Vec<(VarId, u32)>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for ta in a {
            for tb in b {
                let t = concat_pp(ta, tb);
                if seen.insert(t.clone()) {
                    out.push(t);
                }
            }
        }
        out
    }
    match e {
        ArithExpr::Const(_) => vec![Vec::new()],
        ArithExpr::Var(v) => vec![vec![(*v, 1)]],
        ArithExpr::Neg(a) => ordered_terms(a),
        ArithExpr::Add(a, b) | ArithExpr::Sub(a, b) => {
            let mut t = ordered_terms(a);
            t.extend(ordered_terms(b));
            t
        }
        ArithExpr::Mul(a, b) => mul(&ordered_terms(a), &ordered_terms(b)),
        ArithExpr::Pow(a, n) => {
            let base = ordered_terms(a);
            (0..*n).fold(vec![Vec::new()], |acc, _| mul(&acc, &base))
        }
    }
}

/// Power product keyed by its sorted form, mapped to its factors in source order.
pub type FactorOrders = HashMap<Vec<(VarId, u32)>, Vec<(VarId, u32)>>;

/// Factor order of every power product in the expansion of `e`, as it arises
/// from multiplying out left to right. Keyed by the sorted power product; the
/// first occurrence wins.
pub fn factor_orders(e: &ArithExpr) -> FactorOrders {
    let mut out = HashMap::new();
    for t in ordered_terms(e) {
        let mut key = t.clone();
        key.sort();
        out.entry(key).or_insert(t);
    }
    out
}

/// Polynomial normal form of an arithmetic constraint.
///
/// Strict inequalities become weak ones over the integers and `>=` is negated,
/// so the result uses only `<=`, `=` and `!=`.
pub fn normalize(c: &ArithConstraint) -> PolyConstraint {
    let mut p = poly_add(
        expand(&c.lhs),
        poly_scale(expand(&c.rhs), &BigInt::from(-1)),
    );
    let constant = p.remove(&Vec::new()).unwrap_or_else(BigInt::zero);
    let mut rhs = -constant;
    let mut monomials: Vec<Monomial> = p
        .into_iter()
        .map(|(powers, coeff)| Monomial { coeff, powers })
        .collect();
    monomials.sort_by(monomial_order);

    let mut negate = false;
    let op = match c.op {
        RelOp::Le | RelOp::Eq | RelOp::Ne => c.op,
        RelOp::Lt => {
            rhs -= 1;
            RelOp::Le
        }
        RelOp::Ge => {
            negate = true;
            RelOp::Le
        }
        RelOp::Gt => {
            rhs += 1;
            negate = true;
            RelOp::Le
        }
    };
    if negate {
        rhs = -rhs;
        for m in &mut monomials {
            m.coeff = -m.coeff.clone();
        }
    }
    PolyConstraint { monomials, op, rhs }
}

impl Monomial {
    pub fn to_expr(&self) -> ArithExpr {
        let mut factors = self.powers.iter().map(|&(v, n)| {
            if n == 1 {
                ArithExpr::Var(v)
            } else {
                ArithExpr::Pow(Box::new(ArithExpr::Var(v)), n)
            }
        });
        let first = factors.next();
        let product = factors.fold(first, |acc, f| match acc {
            None => Some(f),
            Some(a) => Some(a * f),
        });
        match product {
            None => ArithExpr::Const(self.coeff.clone()),
            Some(p) if self.coeff.is_one() => p,
            Some(p) => ArithExpr::Const(self.coeff.clone()) * p,
        }
    }
}

impl PolyConstraint {
    /// The constraint as an expression tree, `Σ monomials op rhs`.
    pub fn to_arith(&self) -> ArithConstraint {
        let lhs = self
            .monomials
            .iter()
            .map(Monomial::to_expr)
            .reduce(|a, b| a + b)
            .unwrap_or_else(|| ArithExpr::constant(0));
        ArithConstraint::new(lhs, self.op, ArithExpr::Const(self.rhs.clone()))
    }
}
