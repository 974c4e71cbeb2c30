//! LINEAR and POLYNOMIAL EQUALITY/INEQUALITY, plain and with simplified
//! fractions.
//!
//! For monomial `m_l = a · y_1^n_1 ⋯ y_k^n_k` and its factor `y_p = x_j` the
//! rules isolate `x_j^n_p · s = b − Σ_{i≠l} m_i` with `s = m_l / y_p^n_p` and
//! evaluate the right-hand side bottom-up in interval arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::DomainStore;
use crate::expr::{Monomial, PolyConstraint, RelOp, VarId};
use crate::interval::{
    add, div_halfline, div_hull, hull_intersect_union, mul_hull, pow_hull, root, scale, sub,
    HalfLine, IntInterval, IntervalUnion, OpCounters,
};
use crate::rational::{rat_add, rat_div, rat_to_int_inward, RatInterval};

/// `int(coeff · Π x^n)`. A unit coefficient costs no scaling.
pub(crate) fn eval_product(
    coeff: &BigInt,
    powers: &[(VarId, u32)],
    store: &DomainStore,
    ops: &mut OpCounters,
) -> IntInterval {
    let mut acc: Option<IntInterval> = None;
    for &(v, n) in powers {
        let d = store.get(v);
        let f = if n > 1 {
            pow_hull(d, n, ops)
        } else {
            d.clone()
        };
        acc = Some(match acc {
            None => f,
            Some(a) => mul_hull(&a, &f, ops),
        });
    }
    match acc {
        None => IntInterval::singleton(coeff.clone()),
        Some(a) if coeff.is_one() => a,
        Some(a) => scale(&a, coeff, ops),
    }
}

pub(crate) fn eval_monomial(
    m: &Monomial,
    store: &DomainStore,
    ops: &mut OpCounters,
) -> IntInterval {
    eval_product(&m.coeff, &m.powers, store, ops)
}

/// `int(b − Σ_{i≠l} m_i)`
fn residual(
    c: &PolyConstraint,
    l: usize,
    store: &DomainStore,
    ops: &mut OpCounters,
) -> IntInterval {
    let mut acc = IntInterval::singleton(c.rhs.clone());
    for (i, m) in c.monomials.iter().enumerate() {
        if i != l {
            acc = sub(&acc, &eval_monomial(m, store, ops), ops);
        }
    }
    acc
}

fn without_factor(m: &Monomial, p: usize) -> Vec<(VarId, u32)> {
    let mut powers = m.powers.clone();
    powers.remove(p);
    powers
}

/// `D_j ∩ ⁿ√Q`, keeping both halves of an even root before the hull.
fn finish(d: &IntInterval, q: &IntInterval, n: u32, ops: &mut OpCounters) -> IntInterval {
    if n == 1 {
        d.intersect(q)
    } else {
        hull_intersect_union(d, &root(q, n, ops))
    }
}

pub(crate) fn poly_step(
    store: &DomainStore,
    c: &PolyConstraint,
    l: usize,
    p: usize,
    ops: &mut OpCounters,
) -> IntInterval {
    let m = &c.monomials[l];
    let (xj, np) = m.powers[p];
    let rest = residual(c, l, store, ops);
    let s_powers = without_factor(m, p);
    let unit = s_powers.is_empty() && m.coeff.is_one();
    let q = match c.op {
        RelOp::Eq if unit => rest,
        RelOp::Eq => div_hull(&rest, &eval_product(&m.coeff, &s_powers, store, ops), ops),
        RelOp::Le if unit => HalfLine::at_most(rest).to_interval(),
        RelOp::Le => div_halfline(
            &HalfLine::at_most(rest),
            &eval_product(&m.coeff, &s_powers, store, ops),
            ops,
        ),
        op => panic!("no polynomial rule for `{}`", op.symbol()),
    };
    finish(store.get(xj), &q, np, ops)
}

fn locate(c: &PolyConstraint, j: VarId) -> (usize, usize) {
    for (l, m) in c.monomials.iter().enumerate() {
        if let Some(p) = m.powers.iter().position(|&(v, _)| v == j) {
            return (l, p);
        }
    }
    panic!("variable {j:?} does not occur in the constraint");
}

/// `D_j ∩ (b − Σ_{i≠j} int(a_i·D_i)) / a_j`
pub fn linear_equality_step(
    store: &DomainStore,
    c: &PolyConstraint,
    j: VarId,
    ops: &mut OpCounters,
) -> IntInterval {
    assert!(c.is_linear() && c.op == RelOp::Eq);
    let (l, p) = locate(c, j);
    poly_step(store, c, l, p, ops)
}

/// `D_j ∩ (≤int(b − Σ_{i≠j} a_i·x_i)) / a_j`
pub fn linear_inequality_step(
    store: &DomainStore,
    c: &PolyConstraint,
    j: VarId,
    ops: &mut OpCounters,
) -> IntInterval {
    assert!(c.is_linear() && c.op == RelOp::Le);
    let (l, p) = locate(c, j);
    poly_step(store, c, l, p, ops)
}

pub fn poly_equality_step(
    store: &DomainStore,
    c: &PolyConstraint,
    l: usize,
    p: usize,
    ops: &mut OpCounters,
) -> IntInterval {
    assert_eq!(c.op, RelOp::Eq);
    poly_step(store, c, l, p, ops)
}

pub fn poly_inequality_step(
    store: &DomainStore,
    c: &PolyConstraint,
    l: usize,
    p: usize,
    ops: &mut OpCounters,
) -> IntInterval {
    assert_eq!(c.op, RelOp::Le);
    poly_step(store, c, l, p, ops)
}

/// `[s/t]`: common variable powers and the gcd of the coefficients divided
/// out, with the sign carried by the numerator.
pub fn simplify_fraction(s: &Monomial, t: &Monomial) -> (Monomial, Monomial) {
    let mut num = Vec::new();
    let mut den = Vec::new();
    let (mut i, mut k) = (0, 0);
    while i < s.powers.len() || k < t.powers.len() {
        match (s.powers.get(i), t.powers.get(k)) {
            (Some(&(a, ea)), Some(&(b, eb))) if a == b => {
                if ea > eb {
                    num.push((a, ea - eb));
                } else if eb > ea {
                    den.push((a, eb - ea));
                }
                i += 1;
                k += 1;
            }
            (Some(&(a, ea)), Some(&(b, _))) if a < b => {
                num.push((a, ea));
                i += 1;
            }
            (Some(&(a, ea)), None) => {
                num.push((a, ea));
                i += 1;
            }
            (_, Some(&(b, eb))) => {
                den.push((b, eb));
                k += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    let g = s.coeff.gcd(&t.coeff);
    let (mut nc, mut dc) = if g.is_zero() {
        (s.coeff.clone(), t.coeff.clone())
    } else {
        (&s.coeff / &g, &t.coeff / &g)
    };
    if dc.is_negative() {
        nc = -nc;
        dc = -dc;
    }
    (
        Monomial {
            coeff: nc,
            powers: num,
        },
        Monomial {
            coeff: dc,
            powers: den,
        },
    )
}

/// Precomputed fractions for one (monomial, factor) pair of the optimized
/// rule: the terms `[b/s]` and `−[m_i/s]` grouped by denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimizedPlan {
    target: VarId,
    exponent: u32,
    s: Monomial,
    groups: Vec<(Monomial, Vec<Monomial>)>,
}

impl OptimizedPlan {
    /// `None` when a variable of `s` may be zero under `store`, in which
    /// case the plain rule has to be used.
    pub fn build(c: &PolyConstraint, l: usize, p: usize, store: &DomainStore) -> Option<Self> {
        let m = &c.monomials[l];
        let (target, exponent) = m.powers[p];
        let s = Monomial {
            coeff: m.coeff.clone(),
            powers: without_factor(m, p),
        };
        if s.powers
            .iter()
            .any(|&(v, _)| store.get(v).is_empty() || store.get(v).contains_zero())
        {
            return None;
        }
        let mut groups: Vec<(Monomial, Vec<Monomial>)> = Vec::new();
        let mut push = |num: Monomial, den: Monomial| match groups.iter_mut().find(|g| g.0 == den) {
            Some(g) => g.1.push(num),
            None => groups.push((den, vec![num])),
        };
        if !c.rhs.is_zero() {
            let b = Monomial {
                coeff: c.rhs.clone(),
                powers: Vec::new(),
            };
            let (n, d) = simplify_fraction(&b, &s);
            push(n, d);
        }
        for (i, mi) in c.monomials.iter().enumerate() {
            if i != l {
                let neg = Monomial {
                    coeff: -mi.coeff.clone(),
                    powers: mi.powers.clone(),
                };
                let (n, d) = simplify_fraction(&neg, &s);
                push(n, d);
            }
        }
        Some(OptimizedPlan {
            target,
            exponent,
            s,
            groups,
        })
    }

    pub fn target(&self) -> VarId {
        self.target
    }

    /// Number of distinct denominators.
    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Sign of `s` under `store`; its variables are known to be zero-free.
    fn s_positive(&self, store: &DomainStore) -> bool {
        let mut positive = self.s.coeff.is_positive();
        for &(v, n) in &self.s.powers {
            let d = store.get(v);
            let negative_var = d.max().is_some_and(|hi| hi.is_negative());
            if negative_var && n % 2 == 1 {
                positive = !positive;
            }
        }
        positive
    }
}

fn is_unit(m: &Monomial) -> bool {
    m.powers.is_empty() && m.coeff.is_one()
}

/// The optimized rule: `Σ_t p_t/t` in rational interval arithmetic, rounded
/// inwards (both sides for `=`, one side by `sign(s)` for `<=`), then root
/// and intersection as in the plain rule.
pub fn poly_optimized_step(
    store: &DomainStore,
    c: &PolyConstraint,
    plan: &OptimizedPlan,
    ops: &mut OpCounters,
) -> IntInterval {
    let mut total: Option<RatInterval> = None;
    for (den, nums) in &plan.groups {
        let mut pt: Option<IntInterval> = None;
        for num in nums {
            let v = eval_monomial(num, store, ops);
            pt = Some(match pt {
                None => v,
                Some(acc) => add(&acc, &v, ops),
            });
        }
        let pt = RatInterval::from_int(&pt.expect("groups are never empty"));
        let q = if is_unit(den) {
            pt
        } else {
            rat_div(
                &pt,
                &RatInterval::from_int(&eval_monomial(den, store, ops)),
                ops,
            )
        };
        total = Some(match total {
            None => q,
            Some(acc) => rat_add(&acc, &q, ops),
        });
    }
    let total = total.unwrap_or_else(|| RatInterval::point(Zero::zero()));
    let q = match (c.op, total.bounds()) {
        (_, None) => IntInterval::empty(),
        (RelOp::Eq, _) => rat_to_int_inward(&total),
        (RelOp::Le, Some((lo, hi))) => {
            if plan.s_positive(store) {
                rat_to_int_inward(&RatInterval::new(None, hi.cloned()))
            } else {
                rat_to_int_inward(&RatInterval::new(lo.cloned(), None))
            }
        }
        (op, _) => panic!("no polynomial rule for `{}`", op.symbol()),
    };
    let d = store.get(plan.target);
    if plan.exponent == 1 {
        d.intersect(&q)
    } else {
        let r: IntervalUnion = root(&q, plan.exponent, ops);
        hull_intersect_union(d, &r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_model;

    fn setup(text: &str) -> (DomainStore, PolyConstraint) {
        let m = parse_model(text).unwrap();
        (DomainStore::new(m.domains()), m.constraints[0].clone())
    }

    fn mono(coeff: i64, powers: &[(usize, u32)]) -> Monomial {
        Monomial::new(coeff, powers.iter().map(|&(v, n)| (VarId(v), n)).collect())
    }

    #[test]
    fn fraction_simplification() {
        let (x, y) = (0, 1);
        assert_eq!(
            simplify_fraction(&mono(2, &[(x, 3), (y, 1)]), &mono(4, &[(x, 2)])),
            (mono(1, &[(x, 1), (y, 1)]), mono(2, &[]))
        );
        assert_eq!(
            simplify_fraction(&mono(4, &[(x, 3), (y, 1)]), &mono(2, &[(y, 2)])),
            (mono(2, &[(x, 3)]), mono(1, &[(y, 1)]))
        );
        assert_eq!(
            simplify_fraction(&mono(1, &[(x, 1)]), &mono(1, &[(x, 1)])),
            (mono(1, &[]), mono(1, &[]))
        );
        assert_eq!(
            simplify_fraction(&mono(3, &[(x, 1)]), &mono(-6, &[(y, 1)])),
            (mono(-1, &[(x, 1)]), mono(2, &[(y, 1)]))
        );
    }

    #[test]
    fn linear_examples() {
        let mut ops = OpCounters::new();
        let (st, c) = setup("var x in [0..10]; 2*x = 4;");
        assert_eq!(
            linear_equality_step(&st, &c, VarId(0), &mut ops),
            IntInterval::new(2, 2)
        );
        let (st, c) = setup("var x in [0..10]; 3*x = 4;");
        assert!(linear_equality_step(&st, &c, VarId(0), &mut ops).is_empty());
        let (st, c) = setup("var x in [0..10]; 2*x <= 5;");
        assert_eq!(
            linear_inequality_step(&st, &c, VarId(0), &mut ops),
            IntInterval::new(0, 2)
        );
        let (st, c) = setup("var x in [0..3]; -x <= -5;");
        assert!(linear_inequality_step(&st, &c, VarId(0), &mut ops).is_empty());
        let (st, c) = setup("var x1 in [1..1000]; var x2 in [1..1000]; x1 <= x2 - 1;");
        assert_eq!(
            linear_inequality_step(&st, &c, VarId(0), &mut ops),
            IntInterval::new(1, 999)
        );
    }

    #[test]
    fn even_root_keeps_both_halves() {
        let mut ops = OpCounters::new();
        let (st, c) = setup("var x in [0..10]; var y in [25..100]; x^2 - y = 0;");
        assert_eq!(
            poly_equality_step(&st, &c, 0, 0, &mut ops),
            IntInterval::new(5, 10)
        );
    }

    #[test]
    fn product_equality() {
        let mut ops = OpCounters::new();
        let (st, c) = setup("var x in [16..16]; var y in [9..11]; x*y = 160;");
        assert_eq!(
            poly_equality_step(&st, &c, 0, 1, &mut ops),
            IntInterval::new(10, 10)
        );
    }

    #[test]
    fn cubic_inequality_passes() {
        let mut ops = OpCounters::new();
        let (mut st, c) = setup("var x in [1..100]; var y in [1..100]; x^3*y - x <= 40;");
        assert_eq!(c.monomials[0].powers[0].0, VarId(0));
        let x1 = poly_inequality_step(&st, &c, 0, 0, &mut ops);
        assert_eq!(x1, IntInterval::new(1, 5));
        st.set(VarId(0), x1);
        let x2 = poly_inequality_step(&st, &c, 0, 0, &mut ops);
        assert_eq!(x2, IntInterval::new(1, 3));
        st.set(VarId(0), x2);
        assert_eq!(
            poly_inequality_step(&st, &c, 0, 1, &mut ops),
            IntInterval::new(1, 43)
        );
    }

    #[test]
    fn optimized_inequality_for_y() {
        let mut ops = OpCounters::new();
        let (mut st, c) = setup("var x in [1..100]; var y in [1..100]; x^3*y - x <= 40;");
        st.set(VarId(0), IntInterval::new(1, 3));
        let plan = OptimizedPlan::build(&c, 0, 1, &st).unwrap();
        assert_eq!(plan.group_count(), 2);
        assert_eq!(
            poly_optimized_step(&st, &c, &plan, &mut ops),
            IntInterval::new(1, 41)
        );
        assert!(ops.div_q > 0 && ops.sum_q > 0);
    }

    #[test]
    fn optimized_equality_for_x() {
        let mut ops = OpCounters::new();
        let (st, c) =
            setup("var x in [1..9]; var y in [1..9]; var z in [1..9]; 100*x*y - 10*y*z = 212;");
        assert_eq!(
            poly_equality_step(&st, &c, 0, 0, &mut ops),
            IntInterval::new(1, 9)
        );
        let plan = OptimizedPlan::build(&c, 0, 0, &st).unwrap();
        assert_eq!(
            poly_optimized_step(&st, &c, &plan, &mut ops),
            IntInterval::new(1, 3)
        );
    }

    #[test]
    fn optimized_needs_zero_free_cofactors() {
        let (st, c) = setup("var x in [-1..3]; var y in [1..100]; x^3*y - x <= 40;");
        assert!(OptimizedPlan::build(&c, 0, 1, &st).is_none());
        assert!(OptimizedPlan::build(&c, 0, 0, &st).is_some());
    }

    #[test]
    fn negative_cofactor_flips_the_half_line() {
        // -2*x*y <= -6 with y in [1..3]: x >= 3/y, so x >= 1
        let mut ops = OpCounters::new();
        let (st, c) = setup("var x in [-5..5]; var y in [1..3]; -2*x*y <= -6;");
        let plan = OptimizedPlan::build(&c, 0, 0, &st).unwrap();
        assert_eq!(
            poly_optimized_step(&st, &c, &plan, &mut ops),
            IntInterval::new(1, 5)
        );
        assert_eq!(
            poly_inequality_step(&st, &c, 0, 0, &mut ops),
            IntInterval::new(1, 5)
        );
    }
}
