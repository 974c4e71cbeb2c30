//! Model text format.
//!
//! ```text
//! var x in [1..100];
//! var n in Z;
//! x^3*y - x <= 40;
//! maximize 2*x*y - z;
//! ```
//!
//! Range bounds may also be written `-inf` / `+inf`. `#` and `//` start a
//! comment that runs to the end of the line.

use num_bigint::BigInt;
use thiserror::Error;

use super::{ArithConstraint, ArithExpr, CspModel, Objective, RelOp, Sense};
use crate::interval::{Bound, IntInterval};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 17] = [
    "..", "<=", ">=", "!=", "[", "]", "(", ")", ";", "+", "-", "*", "^", "<", ">", "=", ",",
];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start_col = col;
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[s..i].iter().collect();
            col += i - s;
            out.push(Token {
                tok: Tok::Int(digits.parse().expect("digits")),
                line,
                col: start_col,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - s;
            out.push(Token {
                tok: Tok::Ident(chars[s..i].iter().collect()),
                line,
                col: start_col,
            });
            continue;
        }
        let sym = SYMBOLS.iter().find(|s| {
            s.chars()
                .enumerate()
                .all(|(k, sc)| chars.get(i + k) == Some(&sc))
        });
        match sym {
            Some(s) => {
                i += s.len();
                col += s.len();
                out.push(Token {
                    tok: Tok::Sym(s),
                    line,
                    col: start_col,
                });
            }
            None => {
                return Err(ParseError {
                    line,
                    col,
                    kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
                })
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    model: CspModel,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn err_at(t: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: t.line,
            col: t.col,
            kind,
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        Self::err_at(self.peek(), ParseErrorKind::Syntax(msg.into()))
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    fn at_ident(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == s)
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.at_sym(s) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{s}`")))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Token), ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(name) => Ok((name.clone(), t.clone())),
            _ => Err(Self::err_at(
                &t,
                ParseErrorKind::Syntax("expected an identifier".into()),
            )),
        }
    }

    fn model(mut self) -> Result<CspModel, ParseError> {
        while self.peek().tok != Tok::Eof {
            if self.at_ident("var") {
                self.bump();
                self.declaration()?;
            } else if self.at_ident("maximize") {
                self.bump();
                let expr = self.expr()?;
                self.model.objective = Some(Objective {
                    sense: Sense::Maximize,
                    expr,
                });
            } else {
                let lhs = self.expr()?;
                let op = self.relop()?;
                let rhs = self.expr()?;
                self.model
                    .add_constraint(&ArithConstraint::new(lhs, op, rhs));
            }
            self.expect_sym(";")?;
        }
        Ok(self.model)
    }

    fn declaration(&mut self) -> Result<(), ParseError> {
        let (name, tok) = self.expect_ident()?;
        if self.model.var_id(&name).is_some() {
            return Err(Self::err_at(&tok, ParseErrorKind::DuplicateVariable(name)));
        }
        if !self.at_ident("in") {
            return Err(self.syntax("expected `in`"));
        }
        self.bump();
        let domain = if self.at_ident("Z") {
            self.bump();
            IntInterval::integers()
        } else {
            self.expect_sym("[")?;
            let lo = self.bound()?;
            self.expect_sym("..")?;
            let hi = self.bound()?;
            self.expect_sym("]")?;
            IntInterval::from_bounds(lo, hi)
        };
        self.model.add_var(name, domain);
        Ok(())
    }

    fn bound(&mut self) -> Result<Bound, ParseError> {
        let negative = if self.at_sym("-") {
            self.bump();
            true
        } else {
            if self.at_sym("+") {
                self.bump();
            }
            false
        };
        let t = self.bump();
        match t.tok {
            Tok::Int(v) => Ok(Bound::Finite(if negative { -v } else { v })),
            Tok::Ident(ref s) if s == "inf" => Ok(if negative {
                Bound::NegInf
            } else {
                Bound::PosInf
            }),
            _ => Err(Self::err_at(
                &t,
                ParseErrorKind::Syntax("expected an integer bound".into()),
            )),
        }
    }

    fn relop(&mut self) -> Result<RelOp, ParseError> {
        let op = match &self.peek().tok {
            Tok::Sym("<") => RelOp::Lt,
            Tok::Sym("<=") => RelOp::Le,
            Tok::Sym("=") => RelOp::Eq,
            Tok::Sym("!=") => RelOp::Ne,
            Tok::Sym(">=") => RelOp::Ge,
            Tok::Sym(">") => RelOp::Gt,
            _ => return Err(self.syntax("expected a comparison operator")),
        };
        self.bump();
        Ok(op)
    }

    fn expr(&mut self) -> Result<ArithExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.at_sym("+") {
                self.bump();
                acc = acc + self.term()?;
            } else if self.at_sym("-") {
                self.bump();
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ArithExpr, ParseError> {
        let mut acc = self.unary()?;
        while self.at_sym("*") {
            self.bump();
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ArithExpr, ParseError> {
        if self.at_sym("-") {
            self.bump();
            // a literal `-5` is a negative constant unless it is a power base
            if let Tok::Int(v) = &self.peek().tok {
                let is_base = matches!(self.toks[self.pos + 1].tok, Tok::Sym("^"));
                if !is_base {
                    let v = -v.clone();
                    self.bump();
                    return Ok(ArithExpr::Const(v));
                }
            }
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<ArithExpr, ParseError> {
        let base = self.atom()?;
        if !self.at_sym("^") {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let n = match &t.tok {
            Tok::Int(v) => u32::try_from(v).ok().filter(|n| *n >= 1),
            _ => None,
        };
        match n {
            Some(n) => Ok(ArithExpr::Pow(Box::new(base), n)),
            None => Err(Self::err_at(
                &t,
                ParseErrorKind::Syntax("exponent must be a positive integer literal".into()),
            )),
        }
    }

    fn atom(&mut self) -> Result<ArithExpr, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Int(ref v) => Ok(ArithExpr::Const(v.clone())),
            Tok::Ident(ref name) => match self.model.var_id(name) {
                Some(id) => Ok(ArithExpr::Var(id)),
                None => Err(Self::err_at(
                    &t,
                    ParseErrorKind::UnknownIdentifier(name.clone()),
                )),
            },
            Tok::Sym("(") => {
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => Err(Self::err_at(
                &t,
                ParseErrorKind::Syntax("expected an expression".into()),
            )),
        }
    }
}

/// Parses a model; variables are numbered in declaration order and every
/// constraint is normalized.
pub fn parse_model(text: &str) -> Result<CspModel, ParseError> {
    let parser = Parser {
        toks: lex(text)?,
        pos: 0,
        model: CspModel::new(),
    };
    parser.model()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::VarId;

    #[test]
    fn opening_example() {
        let m = parse_model("var x in [1..100]; var y in [1..100]; x^3*y - x <= 40;").unwrap();
        assert_eq!(m.vars.len(), 2);
        assert_eq!(m.constraints.len(), 1);
        let c = &m.constraints[0];
        assert_eq!(c.op, RelOp::Le);
        assert_eq!(c.monomials[0].powers, vec![(VarId(0), 3), (VarId(1), 1)]);
        assert_eq!(c.monomials[1].coeff, BigInt::from(-1));
    }

    #[test]
    fn empty_range_is_legal() {
        let m = parse_model("var x in [5..3];").unwrap();
        assert!(m.vars[0].domain.is_empty());
    }

    #[test]
    fn unbounded_domains() {
        let m = parse_model("var n in Z;\nvar m in [-inf..7];").unwrap();
        assert!(m.vars[0].domain.is_integers());
        assert_eq!(m.vars[1].domain, IntInterval::at_most(7));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_model("var x in [1..3];\nx + y = 2;").unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier("y".into()));

        let e = parse_model("var x in [1..3]\nx = 2;").unwrap_err();
        assert_eq!(e.line, 2);

        let e = parse_model("var x in [1..3]; var x in Z;").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateVariable("x".into()));

        let e = parse_model("var x in Z; x ^ y = 1;").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));

        let e = parse_model("var x in Z; x @ 1;").unwrap_err();
        assert_eq!((e.line, e.col), (1, 15));
    }

    #[test]
    fn comments_and_objective() {
        let text = "# opt\nvar x in [1..9]; // first\nvar y in [1..9];\nmaximize 2*x*y - x;\n";
        let m = parse_model(text).unwrap();
        let o = m.objective.unwrap();
        let p = [BigInt::from(3), BigInt::from(4)];
        assert_eq!(o.expr.eval(&p), BigInt::from(21));
    }
}
