use super::{Ast, BinOp};
use crate::error::{Error, Result};
use crate::hecke::{g_1b1, h_nn1, HeckeArgs};
use crate::lazy::Lazy;
use crate::series::{Coefficient, Exponent, Monomial, QSeries};
use crate::strings::{c_full_expr, calc_hecke_expr, level_theta_side, StringLabel};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Evaluates `ast` exactly below `q^order`.
pub fn evaluate(ast: &Ast, order: Exponent) -> Result<QSeries> {
    to_lazy(ast)?.eval(order)
}

/// The precision-tracking expression tree for `ast`. Errors, including
/// those raised later during evaluation, name the failing subexpression.
pub fn to_lazy(ast: &Ast) -> Result<Lazy> {
    build(ast, "root")
}

fn here(path: &str, ast: &Ast) -> String {
    format!("{path} `{ast}`")
}

fn fail<T>(path: &str, ast: &Ast, e: Error) -> Result<T> {
    Err(match e {
        Error::At { .. } => e,
        e => Error::At { path: here(path, ast), source: Box::new(e) },
    })
}

fn rational(ast: &Ast) -> Option<BigRational> {
    match ast {
        Ast::Int(n) => Some(BigRational::from_integer(BigInt::from(*n))),
        Ast::Neg(x) => rational(x).map(|r| -r),
        Ast::Binary(op, l, r) => {
            let (a, b) = (rational(l)?, rational(r)?);
            match op {
                BinOp::Add => Some(a + b),
                BinOp::Sub => Some(a - b),
                BinOp::Mul => Some(a * b),
                BinOp::Div => (!b.is_zero()).then(|| a / b),
            }
        }
        Ast::Pow(b, e) if e.is_integer() && e.numer().abs() <= 64 => {
            let b = rational(b)?;
            let k = e.numer() as i32;
            if k < 0 && b.is_zero() {
                return None;
            }
            Some(num_traits::pow::Pow::pow(&b, k))
        }
        _ => None,
    }
}

fn exponent_of(r: &BigRational) -> Option<Exponent> {
    Some(Exponent::new(r.numer().to_i64()?, r.denom().to_i64()?))
}

fn monomial(ast: &Ast) -> Option<Monomial> {
    match ast {
        Ast::Int(1) => Some(Monomial::ONE),
        Ast::Monomial(m) => Some(*m),
        Ast::Neg(x) => monomial(x).map(|m| -m),
        Ast::Binary(BinOp::Mul, l, r) => Some(monomial(l)? * monomial(r)?),
        Ast::Binary(BinOp::Div, l, r) => Some(monomial(l)? * monomial(r)?.inv()),
        Ast::Pow(b, e) => {
            let m = monomial(b)?;
            if e.is_integer() {
                Some(m.pow(e.numer()))
            } else if m.unit == 0 {
                Some(Monomial::q(m.qexp * *e))
            } else {
                None
            }
        }
        _ => None,
    }
}

struct Args<'a> {
    name: &'a str,
    path: &'a str,
    flat: Vec<&'a Ast>,
}

impl<'a> Args<'a> {
    fn arg_path(&self, k: usize) -> String {
        format!("{}/{}", self.path, k)
    }

    fn bad<T>(&self, k: usize, what: &str) -> Result<T> {
        fail(
            &self.arg_path(k),
            self.flat[k],
            Error::InvalidArgument(format!("argument {} of `{}` must be {what}", k + 1, self.name)),
        )
    }

    fn rational(&self, k: usize) -> Result<Exponent> {
        match rational(self.flat[k]).as_ref().and_then(exponent_of) {
            Some(e) => Ok(e),
            None => self.bad(k, "a rational constant"),
        }
    }

    fn int(&self, k: usize) -> Result<i64> {
        let e = self.rational(k)?;
        if e.is_integer() {
            Ok(e.numer())
        } else {
            self.bad(k, "an integer constant")
        }
    }

    fn monomial(&self, k: usize) -> Result<Monomial> {
        match monomial(self.flat[k]) {
            Some(m) => Ok(m),
            None => self.bad(k, "a monomial such as -q^(1/2) or i*q"),
        }
    }

    fn modulus(&self, k: usize) -> Result<Exponent> {
        match monomial(self.flat[k]) {
            Some(m) if m.unit == 0 && m.qexp.is_positive() => Ok(m.qexp),
            _ => self.bad(k, "a modulus q^r with r > 0"),
        }
    }

    fn label(&self) -> Result<StringLabel> {
        StringLabel::new(self.int(0)?, self.int(1)?, self.int(2)?)
    }
}

fn call(name: &str, args: &Args) -> Result<Lazy> {
    let n = args.flat.len();
    Ok(match name {
        "j" => Lazy::j(args.monomial(0)?, args.modulus(1)?),
        "jbar" => Lazy::j(-args.monomial(0)?, args.modulus(1)?),
        "J" if n == 1 => Lazy::jm(args.rational(0)?),
        "J" => Lazy::jam(args.rational(0)?, args.rational(1)?),
        "Jbar" => Lazy::jbar(args.rational(0)?, args.rational(1)?),
        "Jm" => Lazy::jm(args.rational(0)?),
        "eta" => Lazy::eta(args.rational(0)?),
        "m" => Lazy::appell(args.monomial(0)?, args.modulus(1)?, args.monomial(2)?)?,
        "f" => Lazy::hecke(HeckeArgs::new(
            args.int(0)?,
            args.int(1)?,
            args.int(2)?,
            args.monomial(3)?,
            args.monomial(4)?,
            args.rational(5)?,
        )?),
        "g" => g_1b1(args.monomial(1)?, args.monomial(2)?, args.rational(3)?, args.int(0)?, args.monomial(4)?, args.monomial(5)?)?,
        "h" => h_nn1(args.monomial(1)?, args.monomial(2)?, args.rational(3)?, args.int(0)?, args.monomial(4)?, args.monomial(5)?)?,
        "C" => c_full_expr(&args.label()?),
        "calC" => calc_hecke_expr(&args.label()?),
        "theta_side" => level_theta_side(&args.label()?)?,
        _ => return Err(Error::InvalidArgument(format!("unknown function `{name}`"))),
    })
}

fn build(ast: &Ast, path: &str) -> Result<Lazy> {
    let child = |k: usize| format!("{path}/{k}");
    let lazy = match ast {
        Ast::Int(n) => Lazy::int(*n),
        Ast::Monomial(m) => Lazy::monomial(*m),
        Ast::Neg(x) => -build(x, &child(0))?,
        Ast::Binary(op, l, r) => {
            if let Some(c) = rational(ast) {
                return Ok(Lazy::coeff(Coefficient::from_rationals(&c, &BigRational::zero())));
            }
            let (a, b) = (build(l, &child(0))?, build(r, &child(1))?);
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => (a / b).tagged(here(path, ast)),
            }
        }
        Ast::Pow(b, e) => {
            if e.is_integer() {
                build(b, &child(0))?.pow(e.numer()).tagged(here(path, ast))
            } else if let Some(m) = monomial(ast) {
                Lazy::monomial(m)
            } else {
                return fail(path, ast, Error::InvalidArgument(format!("non-integer power {e} of a series")));
            }
        }
        Ast::Call { name, args, .. } => {
            let a = Args { name, path, flat: args.iter().flatten().collect() };
            match call(name, &a) {
                Ok(l) => l.tagged(here(path, ast)),
                Err(e) => return fail(path, ast, e),
            }
        }
    };
    Ok(lazy)
}
