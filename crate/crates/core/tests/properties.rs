use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use intprop::engine::{Engine, PropagationStats, ScheduleMode, Status};
use intprop::expr::{
    normalize, ArithConstraint, ArithExpr, CspModel, PolyConstraint, RelOp, VarId,
};
use intprop::interval::{ceil_root, div_hull, floor_root, IntInterval, OpCounters};
use intprop::rewrite::{compile, Approach};
use intprop::rules::{DomainStore, Drf, Role, RuleKind};
use intprop::search::{solve_compiled, SearchConfig};

const NVARS: usize = 3;

fn expr() -> impl Strategy<Value = ArithExpr> {
    let leaf = prop_oneof![
        3 => (0..NVARS).prop_map(|v| ArithExpr::Var(VarId(v))),
        1 => (-4i64..=4).prop_map(ArithExpr::constant),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            inner.clone().prop_map(|a| -a),
            (inner, 2u32..=3).prop_map(|(a, n)| ArithExpr::Pow(Box::new(a), n)),
        ]
    })
}

fn relop() -> impl Strategy<Value = RelOp> {
    prop_oneof![
        Just(RelOp::Lt),
        Just(RelOp::Le),
        Just(RelOp::Eq),
        Just(RelOp::Ne),
        Just(RelOp::Ge),
        Just(RelOp::Gt),
    ]
}

fn constraint() -> impl Strategy<Value = ArithConstraint> {
    (expr(), relop(), expr()).prop_map(|(l, op, r)| ArithConstraint::new(l, op, r))
}

fn interval(lo: i64, hi: i64) -> impl Strategy<Value = IntInterval> {
    (lo..=hi, lo..=hi).prop_map(|(a, b)| IntInterval::new(a.min(b), a.max(b)))
}

fn points(doms: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(a, b) in doms {
        out = out
            .into_iter()
            .flat_map(|p| {
                (a..=b).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn big_point(p: &[i64]) -> Vec<BigInt> {
    p.iter().map(|&v| BigInt::from(v)).collect()
}

fn bounds(d: &IntInterval) -> (i64, i64) {
    let (a, b) = d.finite_bounds().expect("bounded");
    (a.to_i64().unwrap(), b.to_i64().unwrap())
}

/// Plain rule instances of a normalized constraint.
fn plain_drfs(c: &PolyConstraint) -> Vec<Drf> {
    let c = Arc::new(c.clone());
    if c.op == RelOp::Ne {
        return c
            .vars()
            .into_iter()
            .map(|v| Drf::disequality(c.clone(), v, Role::User))
            .collect();
    }
    let mut out = Vec::new();
    for (l, m) in c.monomials.iter().enumerate() {
        for p in 0..m.powers.len() {
            out.push(Drf::poly(c.clone(), l, p, Role::User));
        }
    }
    out
}

fn model(doms: &[IntInterval], cs: &[ArithConstraint]) -> CspModel {
    let mut m = CspModel::new();
    for (i, d) in doms.iter().enumerate() {
        m.add_var(format!("v{i}"), d.clone());
    }
    for c in cs {
        m.add_constraint(c);
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalization_is_idempotent_and_equivalent(c in constraint()) {
        let p = normalize(&c);
        prop_assert!(matches!(p.op, RelOp::Le | RelOp::Eq | RelOp::Ne));
        prop_assert_eq!(normalize(&p.to_arith()), p.clone());
        for pt in points(&[(-2, 2); NVARS]) {
            let pt = big_point(&pt);
            prop_assert_eq!(c.holds(&pt), p.holds(&pt));
        }
    }

    #[test]
    fn rules_contract_and_are_monotone(
        c in constraint(),
        outer in proptest::collection::vec(interval(-5, 5), NVARS),
        shrink in proptest::collection::vec((0i64..3, 0i64..3), NVARS),
    ) {
        let p = normalize(&c);
        let inner: Vec<IntInterval> = outer
            .iter()
            .zip(&shrink)
            .map(|(d, &(l, r))| {
                let (a, b) = bounds(d);
                IntInterval::new(a + l, b - r)
            })
            .collect();
        prop_assume!(inner.iter().all(|d| !d.is_empty()));
        let (big_store, small_store) = (DomainStore::new(outer.clone()), DomainStore::new(inner.clone()));
        let mut ops = OpCounters::default();
        for drf in plain_drfs(&p) {
            let wide = drf.apply(&big_store, &mut ops);
            let narrow = drf.apply(&small_store, &mut ops);
            prop_assert!(wide.is_subset(big_store.get(drf.target)), "{} widened", drf.kind);
            prop_assert!(narrow.is_subset(&wide), "{} not monotone: {} vs {}", drf.kind, narrow, wide);
        }
    }

    #[test]
    fn atomic_rules_are_monotone(
        outer in proptest::collection::vec(interval(-9, 9), 3),
        shrink in proptest::collection::vec((0i64..4, 0i64..4), 3),
        n in 2u32..=4,
    ) {
        let inner: Vec<IntInterval> = outer
            .iter()
            .zip(&shrink)
            .map(|(d, &(l, r))| {
                let (a, b) = bounds(d);
                IntInterval::new(a + l, b - r)
            })
            .collect();
        prop_assume!(inner.iter().all(|d| !d.is_empty()));
        let (wide_s, narrow_s) = (DomainStore::new(outer), DomainStore::new(inner));
        let (x, y, z) = (VarId(0), VarId(1), VarId(2));
        let mut drfs: Vec<Drf> = [RuleKind::Mult1, RuleKind::Mult2, RuleKind::Mult3]
            .into_iter()
            .map(|k| Drf::mult(k, x, y, z, Role::User))
            .collect();
        drfs.push(Drf::power(RuleKind::Exponentiation, x, y, n, Role::User));
        drfs.push(Drf::power(RuleKind::RootExtraction, x, y, n, Role::User));
        let mut ops = OpCounters::default();
        for drf in drfs {
            let wide = drf.apply(&wide_s, &mut ops);
            let narrow = drf.apply(&narrow_s, &mut ops);
            prop_assert!(wide.is_subset(wide_s.get(drf.target)));
            prop_assert!(narrow.is_subset(&wide), "{}: {} vs {}", drf.kind, narrow, wide);
        }
    }

    #[test]
    fn division_hull_is_tight(x in interval(-40, 40), y in interval(-12, 12)) {
        prop_assume!(!y.contains_zero());
        let (a, b) = bounds(&x);
        let (c, d) = bounds(&y);
        let quotients: Vec<i64> = (a..=b)
            .flat_map(|u| (c..=d).filter(move |v| u % v == 0).map(move |v| u / v))
            .collect();
        let expected = match (quotients.iter().min(), quotients.iter().max()) {
            (Some(&lo), Some(&hi)) => IntInterval::new(lo, hi),
            _ => IntInterval::empty(),
        };
        prop_assert_eq!(div_hull(&x, &y, &mut OpCounters::default()), expected);
    }

    #[test]
    fn integer_roots_bracket_large_values(digits in "[1-9][0-9]{0,60}", n in 1u32..=7, negative: bool) {
        let mut v: BigInt = digits.parse().unwrap();
        if negative && n % 2 == 1 {
            v = -v;
        }
        let f = floor_root(&v, n);
        let c = ceil_root(&v, n);
        prop_assert!(num_traits::pow(f.clone(), n as usize) <= v);
        prop_assert!(num_traits::pow(f.clone() + 1, n as usize) > v);
        prop_assert!(num_traits::pow(c.clone(), n as usize) >= v);
        prop_assert!(num_traits::pow(c - 1, n as usize) < v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    /// Search under every approach and both schedules finds exactly the
    /// brute-force solution set, and the root fixpoint keeps every solution.
    #[test]
    fn search_matches_brute_force(
        doms in proptest::collection::vec(interval(-3, 3), NVARS),
        cs in proptest::collection::vec(constraint(), 1..=2),
    ) {
        let m = model(&doms, &cs);
        let ranges: Vec<(i64, i64)> = doms.iter().map(bounds).collect();
        let expected: BTreeSet<Vec<i64>> = points(&ranges)
            .into_iter()
            .filter(|p| cs.iter().all(|c| c.holds(&big_point(p))))
            .collect();
        for a in Approach::ALL {
            let compiled = compile(&m, a);
            let mut roots = Vec::new();
            for schedule in [ScheduleMode::Cycling, ScheduleMode::Hierarchical] {
                let cfg = SearchConfig { schedule, ..SearchConfig::default() };
                let out = solve_compiled(&m, &compiled, &cfg).unwrap();
                let got: BTreeSet<Vec<i64>> = out
                    .solutions
                    .iter()
                    .map(|s| s.iter().map(|v| v.to_i64().unwrap()).collect())
                    .collect();
                prop_assert_eq!(&got, &expected, "{} {}", a, schedule);

                let mut store = compiled.initial_store();
                let st = Engine::new(&compiled, schedule).propagate_all(&mut store, &mut PropagationStats::default());
                if st == Status::Fixpoint {
                    for p in &expected {
                        for (i, v) in p.iter().enumerate() {
                            prop_assert!(store.get(VarId(i)).contains(&BigInt::from(*v)));
                        }
                    }
                    roots.push(Some(store));
                } else {
                    prop_assert!(expected.is_empty());
                    roots.push(None);
                }
            }
            prop_assert_eq!(&roots[0], &roots[1], "{}", a);
        }
    }
}
