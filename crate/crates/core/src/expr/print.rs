//! Canonical text form; reparsing it gives back the same tree.

use super::{Ast, BinOp};
use crate::series::Exponent;
use std::fmt;

fn prec(a: &Ast) -> u8 {
    match a {
        Ast::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
        Ast::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
        Ast::Neg(_) => 3,
        Ast::Pow(..) => 4,
        Ast::Monomial(m) => match m.unit {
            0 if m.qexp == Exponent::ONE => 5,
            0 => 4,
            1 if m.qexp.is_zero() => 5,
            2 | 3 => 3,
            _ => 2,
        },
        Ast::Int(_) | Ast::Call { .. } => 5,
    }
}

fn exponent(e: Exponent) -> String {
    if e.is_integer() && !e.is_negative() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

struct Wrapped<'a>(&'a Ast, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Int(n) => write!(f, "{n}"),
            Ast::Monomial(m) => {
                let q = if m.qexp == Exponent::ONE { "q".to_string() } else { format!("q^{}", exponent(m.qexp)) };
                match m.unit {
                    0 => f.write_str(&q),
                    1 if m.qexp.is_zero() => f.write_str("i"),
                    1 => write!(f, "i*{q}"),
                    2 => write!(f, "-{q}"),
                    _ => write!(f, "-i*{q}"),
                }
            }
            Ast::Call { name, bracket, args } => {
                let (open, close) = if *bracket { ('[', ']') } else { ('(', ')') };
                write!(f, "{name}{open}")?;
                for (gi, group) in args.iter().enumerate() {
                    if gi > 0 {
                        f.write_str("; ")?;
                    }
                    for (ai, a) in group.iter().enumerate() {
                        if ai > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                }
                write!(f, "{close}")
            }
            Ast::Binary(op, l, r) => {
                let p = prec(self);
                write!(f, "{} {} {}", Wrapped(l, prec(l) < p), op.symbol(), Wrapped(r, prec(r) <= p))
            }
            Ast::Neg(x) => write!(f, "-{}", Wrapped(x, prec(x) < 3)),
            Ast::Pow(b, e) => {
                let wrap = prec(b) < 5 || matches!(**b, Ast::Monomial(_));
                write!(f, "{}^{}", Wrapped(b, wrap), exponent(*e))
            }
        }
    }
}
