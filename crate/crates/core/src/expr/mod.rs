//! A small expression language over q-series.
//!
//! ```text
//! f(1,3,1; q, q; 1) - J[1,2]*Jbar[3,8]
//! eta(1)^(-2) * eta(1/2)
//! m(q, q^2, -1)
//! ```
//!
//! The grammar is LL(1); see `docs/grammar.md`. Rational exponents of `q`
//! are parenthesised (`q^(1/2)`) so `^` never competes with `/`.

mod eval;
mod lexer;
mod parser;
mod print;

pub use eval::{evaluate, to_lazy};
pub use parser::parse;

use crate::series::{Exponent, Monomial};
use thiserror::Error;

/// Binary operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

/// Surface syntax tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ast {
    /// Nonnegative integer literal.
    Int(i64),
    /// `q`, `q^e` or `i`.
    Monomial(Monomial),
    /// A call; `args` holds the `;`-separated groups of `,`-separated arguments.
    Call { name: String, bracket: bool, args: Vec<Vec<Ast>> },
    Binary(BinOp, Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    /// Power with a literal exponent; only monomial bases take non-integers.
    Pow(Box<Ast>, Exponent),
}

/// Parse and arity errors carry the byte offset into the input.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("at byte {position}: expected {expected}, found {found}")]
    Syntax { position: usize, expected: String, found: String },
    #[error("at byte {position}: unknown function `{name}`")]
    UnknownFunction { position: usize, name: String },
    #[error("at byte {position}: `{name}` takes {expected}, got {found} argument(s)")]
    Arity { position: usize, name: String, expected: &'static str, found: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. }
            | ParseError::UnknownFunction { position, .. }
            | ParseError::Arity { position, .. } => *position,
        }
    }
}

/// Argument kinds in the signature table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// An integer constant such as `3` or `-1`.
    Int,
    /// A rational constant such as `1/2`.
    Rational,
    /// A unit times a power of `q`, such as `-q^(1/3)` or `i*q`.
    Monomial,
    /// A modulus `q^r` with `r > 0`.
    Modulus,
}

/// One entry of the signature table.
#[derive(Clone, Copy, Debug)]
pub struct Signature {
    pub name: &'static str,
    /// Accepted argument lists (by kind); several for overloaded names.
    pub forms: &'static [&'static [Kind]],
    pub usage: &'static str,
    pub meaning: &'static str,
}

use Kind::{Int as I, Modulus as Q, Monomial as M, Rational as R};

/// Every callable name with its arguments.
pub const SIGNATURES: &[Signature] = &[
    Signature { name: "j", forms: &[&[M, Q]], usage: "j(x; q^r)", meaning: "theta function j(x; q^r)" },
    Signature { name: "jbar", forms: &[&[M, Q]], usage: "jbar(x; q^r)", meaning: "j(-x; q^r)" },
    Signature { name: "J", forms: &[&[R, R], &[R]], usage: "J[a,m] or J[m]", meaning: "j(q^a; q^m), or (q^m; q^m)_inf" },
    Signature { name: "Jbar", forms: &[&[R, R]], usage: "Jbar[a,m]", meaning: "j(-q^a; q^m)" },
    Signature { name: "Jm", forms: &[&[R]], usage: "Jm[m]", meaning: "(q^m; q^m)_inf" },
    Signature { name: "eta", forms: &[&[R]], usage: "eta(r)", meaning: "Dedekind eta(r tau) = q^(r/24) (q^r; q^r)_inf" },
    Signature { name: "m", forms: &[&[M, Q, M]], usage: "m(x, q^r, z)", meaning: "Appell-Lerch sum m(x, q^r, z)" },
    Signature {
        name: "f",
        forms: &[&[I, I, I, M, M, R]],
        usage: "f(a,b,c; x,y; r)",
        meaning: "Hecke-type double sum f_{a,b,c}(x, y, q^r)",
    },
    Signature {
        name: "g",
        forms: &[&[I, M, M, R, M, M]],
        usage: "g(b; x,y; r; z1,z0)",
        meaning: "g_{1,b,1}(x, y, q^r, z1, z0)",
    },
    Signature {
        name: "h",
        forms: &[&[I, M, M, R, M, M]],
        usage: "h(n; x,y; r; z1,z0)",
        meaning: "h_{n,n,1}(x, y, q^r, z1, z0)",
    },
    Signature { name: "C", forms: &[&[I, I, I]], usage: "C(N, l, m)", meaning: "string function C^N_{m,l}" },
    Signature { name: "calC", forms: &[&[I, I, I]], usage: "calC(N, l, m)", meaning: "q^(-s) C^N_{m,l}" },
    Signature {
        name: "theta_side",
        forms: &[&[I, I, I]],
        usage: "theta_side(N, l, m)",
        meaning: "tabulated theta quotient equal to q^(-(m^2-l^2)/(4N)) J_1^3 calC(N, l, m)",
    },
];

pub fn signature(name: &str) -> Option<&'static Signature> {
    SIGNATURES.iter().find(|s| s.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_has_a_form() {
        for s in SIGNATURES {
            assert!(!s.forms.is_empty(), "{}", s.name);
        }
        assert!(signature("theta").is_none());
    }
}
