//! Rules for atomic constraints `x · y = z` and `x = y^n`, and the
//! disequality rule.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::DomainStore;
use crate::expr::{PolyConstraint, VarId};
use crate::interval::{
    div_hull, hull_intersect_union, mul_hull, pow_hull, root, Bound, IntInterval, OpCounters,
};

/// MULTIPLICATION 1: `z ∈ D_z ∩ int(D_x · D_y)`
pub fn mult1_step(
    s: &DomainStore,
    x: VarId,
    y: VarId,
    z: VarId,
    ops: &mut OpCounters,
) -> IntInterval {
    s.get(z).intersect(&mul_hull(s.get(x), s.get(y), ops))
}

/// MULTIPLICATION 2: `x ∈ D_x ∩ int(D_z / D_y)`
pub fn mult2_step(
    s: &DomainStore,
    x: VarId,
    y: VarId,
    z: VarId,
    ops: &mut OpCounters,
) -> IntInterval {
    s.get(x).intersect(&div_hull(s.get(z), s.get(y), ops))
}

/// MULTIPLICATION 3: `y ∈ D_y ∩ int(D_z / D_x)`
pub fn mult3_step(
    s: &DomainStore,
    x: VarId,
    y: VarId,
    z: VarId,
    ops: &mut OpCounters,
) -> IntInterval {
    s.get(y).intersect(&div_hull(s.get(z), s.get(x), ops))
}

/// EXPONENTIATION for `x = y^n`: `x ∈ D_x ∩ int(D_y^n)`
pub fn exponentiation_step(
    s: &DomainStore,
    x: VarId,
    y: VarId,
    n: u32,
    ops: &mut OpCounters,
) -> IntInterval {
    s.get(x).intersect(&pow_hull(s.get(y), n, ops))
}

/// ROOT EXTRACTION for `x = y^n`: `y ∈ int(D_y ∩ ⁿ√D_x)`
pub fn root_extraction_step(
    s: &DomainStore,
    x: VarId,
    y: VarId,
    n: u32,
    ops: &mut OpCounters,
) -> IntInterval {
    hull_intersect_union(s.get(y), &root(s.get(x), n, ops))
}

/// Disequality `Σ m_i != b` for target `x_j`.
///
/// Only acts once every other variable is fixed. The constraint then reads
/// `g(x_j) != 0` for a univariate polynomial `g`, and domain endpoints that
/// are roots of `g` are removed one at a time. A non-constant `g` has finitely
/// many roots, so this terminates; a constant zero `g` empties the domain.
pub fn disequality_step(s: &DomainStore, c: &PolyConstraint, j: VarId) -> IntInterval {
    let d = s.get(j);
    if d.is_empty() {
        return d.clone();
    }
    // coefficient of x_j^e after substitution, with the constant at e = 0
    let mut g: BTreeMap<u32, BigInt> = BTreeMap::new();
    *g.entry(0).or_insert_with(BigInt::zero) -= &c.rhs;
    for m in &c.monomials {
        let mut coeff = m.coeff.clone();
        let mut e = 0;
        for &(v, n) in &m.powers {
            if v == j {
                e = n;
                continue;
            }
            match s.get(v).singleton_value() {
                Some(val) => coeff *= Pow::pow(val, n),
                None => return d.clone(),
            }
        }
        *g.entry(e).or_insert_with(BigInt::zero) += coeff;
    }
    let eval =
        |x: &BigInt| -> BigInt { g.iter().map(|(e, k)| k * Pow::pow(x, *e)).sum::<BigInt>() };
    if g.iter().all(|(e, k)| *e == 0 || k.is_zero()) {
        return if g[&0].is_zero() {
            IntInterval::empty()
        } else {
            d.clone()
        };
    }
    let mut cur = d.clone();
    loop {
        let (lo, hi) = match cur.bounds() {
            None => return cur,
            Some((lo, hi)) => (lo.clone(), hi.clone()),
        };
        if let Bound::Finite(a) = &lo {
            if eval(a).is_zero() {
                cur = IntInterval::from_bounds(Bound::Finite(a + 1), hi);
                continue;
            }
        }
        if let Bound::Finite(b) = &hi {
            if eval(b).is_zero() {
                cur = IntInterval::from_bounds(lo, Bound::Finite(b - 1));
                continue;
            }
        }
        return cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_model;

    fn store(ds: &[(i64, i64)]) -> DomainStore {
        DomainStore::new(ds.iter().map(|&(a, b)| IntInterval::new(a, b)).collect())
    }

    const X: VarId = VarId(0);
    const Y: VarId = VarId(1);
    const Z: VarId = VarId(2);

    #[test]
    fn multiplication_chain() {
        let mut ops = OpCounters::new();
        let mut s = store(&[(1, 20), (9, 11), (155, 161)]);
        let x = mult2_step(&s, X, Y, Z, &mut ops);
        assert_eq!(x, IntInterval::new(16, 16));
        s.set(X, x);
        let y = mult3_step(&s, X, Y, Z, &mut ops);
        assert_eq!(y, IntInterval::new(10, 10));
        s.set(Y, y);
        assert_eq!(
            mult1_step(&s, X, Y, Z, &mut ops),
            IntInterval::new(160, 160)
        );
    }

    #[test]
    fn zero_divisor_keeps_x() {
        let mut ops = OpCounters::new();
        let s = store(&[(-2, 1), (0, 0), (-8, 10)]);
        assert_eq!(mult2_step(&s, X, Y, Z, &mut ops), IntInterval::new(-2, 1));
    }

    #[test]
    fn powers() {
        let mut ops = OpCounters::new();
        let s = store(&[(25, 100), (0, 10)]);
        assert_eq!(
            root_extraction_step(&s, X, Y, 2, &mut ops),
            IntInterval::new(5, 10)
        );
        let s = DomainStore::new(vec![IntInterval::integers(), IntInterval::new(-3, 4)]);
        assert_eq!(
            exponentiation_step(&s, X, Y, 3, &mut ops),
            IntInterval::new(-27, 64)
        );
        let s = store(&[(-9, -1), (-5, 5)]);
        assert!(root_extraction_step(&s, X, Y, 2, &mut ops).is_empty());
    }

    #[test]
    fn disequality_examples() {
        let m = parse_model("var x in Z; var y in Z; x != y;").unwrap();
        let c = &m.constraints[0];
        assert_eq!(
            disequality_step(&store(&[(3, 3), (3, 7)]), c, Y),
            IntInterval::new(4, 7)
        );
        assert_eq!(
            disequality_step(&store(&[(3, 3), (2, 7)]), c, Y),
            IntInterval::new(2, 7)
        );
        assert!(disequality_step(&store(&[(3, 3), (3, 3)]), c, Y).is_empty());
        assert_eq!(
            disequality_step(&store(&[(3, 4), (3, 7)]), c, Y),
            IntInterval::new(3, 7)
        );
    }

    #[test]
    fn disequality_with_products() {
        let m = parse_model("var x in Z; var y in Z; x*y != 6;").unwrap();
        let c = &m.constraints[0];
        // y = 2 forbids x = 3, the lower end
        assert_eq!(
            disequality_step(&store(&[(3, 9), (2, 2)]), c, X),
            IntInterval::new(4, 9)
        );
        // y = 0: 0 != 6 always holds
        assert_eq!(
            disequality_step(&store(&[(3, 9), (0, 0)]), c, X),
            IntInterval::new(3, 9)
        );
        let m = parse_model("var x in Z; var y in Z; x*y != 0;").unwrap();
        assert!(disequality_step(&store(&[(3, 9), (0, 0)]), &m.constraints[0], X).is_empty());
        let m = parse_model("var x in Z; x^2 != 4;").unwrap();
        let s = DomainStore::new(vec![IntInterval::new(-2, 2)]);
        assert_eq!(
            disequality_step(&s, &m.constraints[0], X),
            IntInterval::new(-1, 1)
        );
    }
}
