use std::fmt;

use num_traits::{One, Signed};

use super::{ArithExpr, CspModel, Monomial, PolyConstraint};
use crate::interval::Bound;

fn write_bound(b: &Bound, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match b {
        Bound::NegInf => write!(f, "-inf"),
        Bound::PosInf => write!(f, "+inf"),
        Bound::Finite(v) => write!(f, "{v}"),
    }
}

fn write_powers(m: &Monomial, names: &[&str], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (k, &(v, n)) in m.powers.iter().enumerate() {
        if k > 0 {
            write!(f, "*")?;
        }
        write!(f, "{}", names[v.0])?;
        if n > 1 {
            write!(f, "^{n}")?;
        }
    }
    Ok(())
}

pub(crate) fn write_constraint(
    c: &PolyConstraint,
    names: &[&str],
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if c.monomials.is_empty() {
        write!(f, "0")?;
    }
    for (k, m) in c.monomials.iter().enumerate() {
        let magnitude = m.coeff.abs();
        match (k, m.coeff.is_negative()) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if !magnitude.is_one() {
            write!(f, "{magnitude}*")?;
        }
        write_powers(m, names, f)?;
    }
    write!(f, " {} {}", c.op.symbol(), c.rhs)
}

/// Fully parenthesized, so that parsing it back gives the same tree.
pub(crate) fn write_expr(e: &ArithExpr, names: &[&str], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        ArithExpr::Const(c) if c.is_negative() => write!(f, "({c})"),
        ArithExpr::Const(c) => write!(f, "{c}"),
        ArithExpr::Var(v) => write!(f, "{}", names[v.0]),
        ArithExpr::Neg(a) => {
            write!(f, "(-(")?;
            write_expr(a, names, f)?;
            write!(f, "))")
        }
        ArithExpr::Add(a, b) | ArithExpr::Sub(a, b) | ArithExpr::Mul(a, b) => {
            let op = match e {
                ArithExpr::Add(..) => "+",
                ArithExpr::Sub(..) => "-",
                _ => "*",
            };
            write!(f, "(")?;
            write_expr(a, names, f)?;
            write!(f, " {op} ")?;
            write_expr(b, names, f)?;
            write!(f, ")")
        }
        ArithExpr::Pow(a, n) => {
            write_expr(a, names, f)?;
            write!(f, "^{n}")
        }
    }
}

pub(crate) fn write_model(m: &CspModel, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let names: Vec<&str> = m.vars.iter().map(|d| d.name.as_str()).collect();
    for d in &m.vars {
        write!(f, "var {} in ", d.name)?;
        match d.domain.bounds() {
            None => writeln!(f, "[1..0];")?,
            Some(_) if d.domain.is_integers() => writeln!(f, "Z;")?,
            Some((lo, hi)) => {
                write!(f, "[")?;
                write_bound(lo, f)?;
                write!(f, "..")?;
                write_bound(hi, f)?;
                writeln!(f, "];")?;
            }
        }
    }
    for c in &m.constraints {
        write_constraint(c, &names, f)?;
        writeln!(f, ";")?;
    }
    if let Some(o) = &m.objective {
        write!(f, "maximize ")?;
        write_expr(&o.expr, &names, f)?;
        writeln!(f, ";")?;
    }
    Ok(())
}

/// Displays a constraint with variable names.
pub struct Named<'a> {
    pub constraint: &'a PolyConstraint,
    pub names: &'a [&'a str],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_constraint(self.constraint, self.names, f)
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse_model;

    #[test]
    fn prints_and_reparses() {
        let text = "var x in [1..100];\nvar y in Z;\nvar z in [-inf..4];\nvar e in [3..1];\n\
                    x^3*y - x <= 40;\n-2*x + y != -7;\nx - y - 3 < 0;\nx*y - y*x = 0;\n\
                    maximize -(2*x*y) - (-5)^3 + -4*z;\n";
        let m = parse_model(text).unwrap();
        let printed = m.to_string();
        assert!(printed.contains("x^3*y - x <= 40;"), "{printed}");
        assert!(printed.contains("0 = 0;"), "{printed}");
        let back = parse_model(&printed).unwrap();
        assert_eq!(back.vars, m.vars);
        assert_eq!(back.constraints, m.constraints);
        assert_eq!(back.objective, m.objective);
    }
}
