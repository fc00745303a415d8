//! Lazily evaluated series expressions.
//!
//! A [`Lazy`] is a tree of series constructors and arithmetic. Evaluating it
//! to a target order propagates precision requirements down the tree: each
//! factor of a product is expanded only as far as the other factors' leading
//! exponents require, and divisors are expanded far enough for their inverse
//! to be exact. Every result is exact below the requested order.

use crate::appell::{appell_lower_bound, appell_m, AppellArgs};
use crate::error::{Error, Result};
use crate::hecke::{hecke_f, hecke_lower_bound, HeckeArgs};
use crate::series::{Coefficient, Exponent, Monomial, QSeries};
use crate::theta;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// What is known about the least exponent of a series before expanding it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leading {
    /// Identically zero.
    Zero,
    /// The least exponent with a nonzero coefficient.
    Exact(Exponent),
    /// Every exponent is at least this.
    AtLeast(Exponent),
}

impl Leading {
    pub fn lower(self) -> Option<Exponent> {
        match self {
            Leading::Zero => None,
            Leading::Exact(e) | Leading::AtLeast(e) => Some(e),
        }
    }
}

/// A primitive series constructor.
pub trait Source: Send + Sync + fmt::Debug {
    fn leading(&self) -> Result<Leading>;
    /// Expansion exact below `order`.
    fn eval(&self, order: Exponent) -> Result<QSeries>;
}

/// Theta-type leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaLeaf {
    /// `j(x; q^base)` through the canonical path.
    Theta { x: Monomial, base: Exponent },
    /// `j(x; q^base)` through its bilateral sum.
    ThetaSum { x: Monomial, base: Exponent },
    /// `j(x; q^base)` through the triple product (strip arguments only).
    ThetaProd { x: Monomial, base: Exponent },
    /// `(x; q^base)_n`, infinite when `n` is `None`.
    Poch { x: Monomial, base: Exponent, n: Option<u64> },
    /// `eta(scale tau)`.
    Eta { scale: Exponent },
}

impl Source for ThetaLeaf {
    fn leading(&self) -> Result<Leading> {
        Ok(match *self {
            ThetaLeaf::Theta { x, base } | ThetaLeaf::ThetaSum { x, base } | ThetaLeaf::ThetaProd { x, base } => {
                match theta::jtheta_leading(x, base)? {
                    Some(e) => Leading::Exact(e),
                    None => Leading::Zero,
                }
            }
            ThetaLeaf::Poch { x, base, n } => {
                if n == Some(0) {
                    return Ok(Leading::Exact(Exponent::ZERO));
                }
                if x.unit == 0 && x.qexp.is_zero() {
                    return Ok(Leading::Zero);
                }
                let count = n.unwrap_or(0) as i64;
                let mut lead = Exponent::ZERO;
                for i in 0..count {
                    let e = base * i + x.qexp;
                    if e.is_negative() {
                        lead += e;
                    } else if e.is_zero() && x.unit == 0 {
                        return Ok(Leading::Zero);
                    } else {
                        break;
                    }
                }
                Leading::Exact(lead)
            }
            ThetaLeaf::Eta { scale } => Leading::Exact(scale / 24),
        })
    }

    fn eval(&self, order: Exponent) -> Result<QSeries> {
        match *self {
            ThetaLeaf::Theta { x, base } => theta::jtheta(x, base, order),
            ThetaLeaf::ThetaSum { x, base } => theta::jtheta_sum(x, base, order),
            ThetaLeaf::ThetaProd { x, base } => theta::jtheta_prod(x, base, order),
            ThetaLeaf::Poch { x, base, n } => theta::pochhammer(x, base, n, order),
            ThetaLeaf::Eta { scale } => theta::eta(scale, order),
        }
    }
}

impl Source for AppellArgs {
    fn leading(&self) -> Result<Leading> {
        Ok(Leading::AtLeast(appell_lower_bound(self)?))
    }

    fn eval(&self, order: Exponent) -> Result<QSeries> {
        appell_m(self, order)
    }
}

impl Source for HeckeArgs {
    fn leading(&self) -> Result<Leading> {
        Ok(Leading::AtLeast(hecke_lower_bound(self)))
    }

    fn eval(&self, order: Exponent) -> Result<QSeries> {
        Ok(hecke_f(self, order))
    }
}

#[derive(Debug)]
pub enum Node {
    Const(QSeries),
    Leaf(Arc<dyn Source>),
    Sum(Vec<Lazy>),
    Product(Vec<Lazy>),
    Quotient(Lazy, Lazy),
    Pow(Lazy, i64),
    Scale(Lazy, Coefficient),
    Shift(Lazy, Monomial),
    SubstPow(Lazy, Exponent),
    SubstNeg(Lazy),
    /// Errors below are reported under this location.
    Tagged(String, Lazy),
}

struct Inner {
    node: Node,
    leading: OnceLock<Result<Leading>>,
    exact: OnceLock<Result<Option<Exponent>>>,
}

/// A shareable, lazily evaluated series expression.
#[derive(Clone)]
pub struct Lazy(Arc<Inner>);

impl fmt::Debug for Lazy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.node.fmt(f)
    }
}

/// Evaluation settings and a per-evaluation cache of leaf expansions.
pub struct EvalCtx {
    margin: Exponent,
    cache: Mutex<HashMap<String, QSeries>>,
}

impl Default for EvalCtx {
    fn default() -> Self {
        EvalCtx::new(Exponent::ONE)
    }
}

impl EvalCtx {
    /// `margin` is added to the order of every leaf expansion.
    pub fn new(margin: Exponent) -> Self {
        EvalCtx { margin, cache: Mutex::new(HashMap::new()) }
    }

    pub fn margin(&self) -> Exponent {
        self.margin
    }

    fn leaf(&self, src: &Arc<dyn Source>, order: Exponent) -> Result<QSeries> {
        let key = format!("{src:?}");
        if let Some(s) = self.cache.lock().expect("cache lock").get(&key) {
            if s.trunc().is_none_or(|t| t >= order) {
                return Ok(s.truncate(order));
            }
        }
        let s = src.eval(order)?;
        self.cache.lock().expect("cache lock").insert(key, s.clone());
        Ok(s)
    }
}

/// How far past a lower bound to look for the true leading term.
const LEADING_SEARCH: [i64; 4] = [2, 8, 32, 128];

impl Lazy {
    pub fn new(node: Node) -> Self {
        Lazy(Arc::new(Inner { node, leading: OnceLock::new(), exact: OnceLock::new() }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn constant(s: QSeries) -> Self {
        Lazy::new(Node::Const(s))
    }

    pub fn zero() -> Self {
        Lazy::constant(QSeries::zero())
    }

    pub fn one() -> Self {
        Lazy::constant(QSeries::one())
    }

    pub fn int(n: i64) -> Self {
        Lazy::constant(QSeries::constant(Coefficient::from_int(n)))
    }

    pub fn coeff(c: Coefficient) -> Self {
        Lazy::constant(QSeries::constant(c))
    }

    pub fn monomial(m: Monomial) -> Self {
        Lazy::constant(QSeries::monomial(m))
    }

    pub fn source(s: impl Source + 'static) -> Self {
        Lazy::new(Node::Leaf(Arc::new(s)))
    }

    /// `j(x; q^base)`.
    pub fn j(x: Monomial, base: impl Into<Exponent>) -> Self {
        Lazy::source(ThetaLeaf::Theta { x, base: base.into() })
    }

    pub fn j_sum(x: Monomial, base: impl Into<Exponent>) -> Self {
        Lazy::source(ThetaLeaf::ThetaSum { x, base: base.into() })
    }

    pub fn j_prod(x: Monomial, base: impl Into<Exponent>) -> Self {
        Lazy::source(ThetaLeaf::ThetaProd { x, base: base.into() })
    }

    /// `J_{a,m} = j(q^a; q^m)`.
    pub fn jam(a: impl Into<Exponent>, m: impl Into<Exponent>) -> Self {
        Lazy::j(Monomial::q(a.into()), m)
    }

    /// `Jbar_{a,m} = j(-q^a; q^m)`.
    pub fn jbar(a: impl Into<Exponent>, m: impl Into<Exponent>) -> Self {
        Lazy::j(Monomial::neg_q(a.into()), m)
    }

    /// `J_m = (q^m; q^m)_inf`.
    pub fn jm(m: impl Into<Exponent>) -> Self {
        let m = m.into();
        Lazy::j(Monomial::q(m), m * 3)
    }

    pub fn poch(x: Monomial, base: impl Into<Exponent>, n: Option<u64>) -> Self {
        Lazy::source(ThetaLeaf::Poch { x, base: base.into(), n })
    }

    pub fn eta(scale: impl Into<Exponent>) -> Self {
        Lazy::source(ThetaLeaf::Eta { scale: scale.into() })
    }

    /// `m(x, q^base, z)`.
    pub fn appell(x: Monomial, base: impl Into<Exponent>, z: Monomial) -> Result<Self> {
        Ok(Lazy::source(AppellArgs::new(x, base.into(), z)?))
    }

    pub fn hecke(h: HeckeArgs) -> Self {
        Lazy::source(h)
    }

    pub fn sum(items: impl IntoIterator<Item = Lazy>) -> Self {
        let mut v = Vec::new();
        for it in items {
            match it.node() {
                Node::Sum(inner) => v.extend(inner.iter().cloned()),
                _ => v.push(it),
            }
        }
        match v.len() {
            0 => Lazy::zero(),
            1 => v.pop().unwrap(),
            _ => Lazy::new(Node::Sum(v)),
        }
    }

    pub fn product(items: impl IntoIterator<Item = Lazy>) -> Self {
        let mut v = Vec::new();
        for it in items {
            match it.node() {
                Node::Product(inner) => v.extend(inner.iter().cloned()),
                _ => v.push(it),
            }
        }
        match v.len() {
            0 => Lazy::one(),
            1 => v.pop().unwrap(),
            _ => Lazy::new(Node::Product(v)),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        Lazy::new(Node::Pow(self.clone(), n))
    }

    pub fn scale(&self, c: Coefficient) -> Self {
        Lazy::new(Node::Scale(self.clone(), c))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(Coefficient::from_int(n))
    }

    pub fn shift(&self, m: Monomial) -> Self {
        Lazy::new(Node::Shift(self.clone(), m))
    }

    /// Multiply by `q^e`.
    pub fn shift_q(&self, e: impl Into<Exponent>) -> Self {
        self.shift(Monomial::q(e.into()))
    }

    pub fn subst_q_pow(&self, r: impl Into<Exponent>) -> Self {
        Lazy::new(Node::SubstPow(self.clone(), r.into()))
    }

    pub fn subst_q_neg(&self) -> Self {
        Lazy::new(Node::SubstNeg(self.clone()))
    }

    pub fn tagged(&self, path: impl Into<String>) -> Self {
        Lazy::new(Node::Tagged(path.into(), self.clone()))
    }

    /// What is known about the leading exponent; may expand divisors.
    pub fn leading(&self) -> Result<Leading> {
        self.0.leading.get_or_init(|| self.compute_leading()).clone()
    }

    fn compute_leading(&self) -> Result<Leading> {
        Ok(match self.node() {
            Node::Const(s) => {
                if s.is_exact_zero() {
                    Leading::Zero
                } else {
                    match s.leading() {
                        Some((e, _)) => Leading::Exact(e),
                        None => Leading::AtLeast(s.trunc().expect("truncated")),
                    }
                }
            }
            Node::Leaf(src) => src.leading()?,
            Node::Sum(items) => {
                let mut lows = Vec::new();
                for it in items {
                    match it.leading()? {
                        Leading::Zero => {}
                        l => lows.push(l),
                    }
                }
                let Some(min) = lows.iter().filter_map(|l| l.lower()).min() else {
                    return Ok(Leading::Zero);
                };
                let at_min: Vec<_> = lows.iter().filter(|l| l.lower() == Some(min)).collect();
                if at_min.len() == 1 && matches!(at_min[0], Leading::Exact(_)) {
                    Leading::Exact(min)
                } else {
                    Leading::AtLeast(min)
                }
            }
            Node::Product(items) => {
                let mut total = Exponent::ZERO;
                let mut exact = true;
                for it in items {
                    match it.leading()? {
                        Leading::Zero => return Ok(Leading::Zero),
                        Leading::Exact(e) => total += e,
                        Leading::AtLeast(e) => {
                            total += e;
                            exact = false;
                        }
                    }
                }
                if exact {
                    Leading::Exact(total)
                } else {
                    Leading::AtLeast(total)
                }
            }
            Node::Quotient(n, d) => {
                let ed = d.exact_leading()?.ok_or(Error::ZeroLeadingTerm)?;
                match n.leading()? {
                    Leading::Zero => Leading::Zero,
                    Leading::Exact(e) => Leading::Exact(e - ed),
                    Leading::AtLeast(e) => Leading::AtLeast(e - ed),
                }
            }
            Node::Pow(b, k) => {
                if *k == 0 {
                    Leading::Exact(Exponent::ZERO)
                } else if *k > 0 {
                    match b.leading()? {
                        Leading::Zero => Leading::Zero,
                        Leading::Exact(e) => Leading::Exact(e * *k),
                        Leading::AtLeast(e) => Leading::AtLeast(e * *k),
                    }
                } else {
                    let e = b.exact_leading()?.ok_or(Error::ZeroLeadingTerm)?;
                    Leading::Exact(e * *k)
                }
            }
            Node::Scale(b, c) => {
                if c.is_zero() {
                    Leading::Zero
                } else {
                    b.leading()?
                }
            }
            Node::Shift(b, m) => match b.leading()? {
                Leading::Zero => Leading::Zero,
                Leading::Exact(e) => Leading::Exact(e + m.qexp),
                Leading::AtLeast(e) => Leading::AtLeast(e + m.qexp),
            },
            Node::SubstPow(b, r) => match b.leading()? {
                Leading::Zero => Leading::Zero,
                Leading::Exact(e) => Leading::Exact(e * *r),
                Leading::AtLeast(e) => Leading::AtLeast(e * *r),
            },
            Node::SubstNeg(b) => b.leading()?,
            Node::Tagged(path, b) => b.leading().map_err(|e| wrap(path, e))?,
        })
    }

    /// The exact leading exponent, expanding the series if only a bound is
    /// known; `None` for the identically zero series.
    pub fn exact_leading(&self) -> Result<Option<Exponent>> {
        self.0.exact.get_or_init(|| self.search_leading()).clone()
    }

    fn search_leading(&self) -> Result<Option<Exponent>> {
        let low = match self.leading()? {
            Leading::Zero => return Ok(None),
            Leading::Exact(e) => return Ok(Some(e)),
            Leading::AtLeast(e) => e,
        };
        let ctx = EvalCtx::default();
        for step in LEADING_SEARCH {
            let s = self.eval_with(low + Exponent::int(step), &ctx)?;
            if let Some((e, _)) = s.leading() {
                return Ok(Some(e));
            }
            if s.is_exact_zero() {
                return Ok(None);
            }
        }
        Err(Error::ZeroLeadingTerm)
    }

    /// Expansion exact below `order`, truncated there.
    pub fn eval(&self, order: impl Into<Exponent>) -> Result<QSeries> {
        let order = order.into();
        self.eval_with(order, &EvalCtx::default())
    }

    pub fn eval_with(&self, order: Exponent, ctx: &EvalCtx) -> Result<QSeries> {
        let s = self.expand(order, ctx)?;
        Ok(if s.is_exact() { s } else { s.truncate(order) })
    }

    /// Expansion with order at least `order` (possibly more, possibly exact).
    fn expand(&self, order: Exponent, ctx: &EvalCtx) -> Result<QSeries> {
        match self.node() {
            Node::Const(s) => match s.trunc() {
                Some(t) if t < order => Err(Error::InsufficientOrder { needed: order, have: t }),
                _ => Ok(s.clone()),
            },
            Node::Leaf(src) => ctx.leaf(src, order + ctx.margin),
            Node::Sum(items) => {
                let mut acc = QSeries::zero();
                for it in items {
                    acc = &acc + &it.expand(order, ctx)?;
                }
                Ok(acc)
            }
            Node::Product(items) => {
                let mut lows = Vec::with_capacity(items.len());
                for it in items {
                    match it.leading()?.lower() {
                        None => return Ok(QSeries::zero()),
                        Some(e) => lows.push(e),
                    }
                }
                let total = lows.iter().fold(Exponent::ZERO, |a, &b| a + b);
                let mut acc = QSeries::one();
                for (it, low) in items.iter().zip(&lows) {
                    let part = it.expand(order - (total - *low), ctx)?;
                    acc = &acc * &part;
                }
                Ok(acc)
            }
            Node::Quotient(n, d) => {
                let Some(ln) = n.leading()?.lower() else {
                    return Ok(QSeries::zero());
                };
                let ed = d.exact_leading()?.ok_or(Error::ZeroLeadingTerm)?;
                if order <= ln - ed {
                    return Ok(QSeries::big_o(order));
                }
                let td = order + ed * 2 - ln;
                let inv = invertible(d.expand(td, ctx)?, td).invert()?;
                let num = n.expand(order + ed, ctx)?;
                Ok(&num * &inv)
            }
            Node::Pow(b, k) => {
                let k = *k;
                if k == 0 {
                    return Ok(QSeries::one());
                }
                if k > 0 {
                    let Some(l) = b.leading()?.lower() else {
                        return Ok(QSeries::zero());
                    };
                    return b.expand(order - l * (k - 1), ctx)?.pow(k);
                }
                let e = b.exact_leading()?.ok_or(Error::ZeroLeadingTerm)?;
                if order <= e * k {
                    return Ok(QSeries::big_o(order));
                }
                let tb = order + e * (1 - k);
                invertible(b.expand(tb, ctx)?, tb).invert()?.pow(-k)
            }
            Node::Scale(b, c) => {
                if c.is_zero() {
                    return Ok(QSeries::zero());
                }
                Ok(b.expand(order, ctx)?.scale(c))
            }
            Node::Shift(b, m) => Ok(b.expand(order - m.qexp, ctx)?.shift(*m)),
            Node::SubstPow(b, r) => {
                if !r.is_positive() {
                    return Err(Error::NonPositiveRatio(*r));
                }
                b.expand(order / *r, ctx)?.subst_q_pow(*r)
            }
            Node::SubstNeg(b) => b.expand(Exponent::int(order.ceil()), ctx)?.subst_q_neg(),
            Node::Tagged(path, b) => b.expand(order, ctx).map_err(|e| wrap(path, e)),
        }
    }
}

/// Exact polynomials with several terms have no exact inverse; cut them first.
fn invertible(s: QSeries, order: Exponent) -> QSeries {
    if s.is_exact() && s.len() > 1 {
        s.truncate(order)
    } else {
        s
    }
}

fn wrap(path: &str, e: Error) -> Error {
    match e {
        Error::At { .. } => e,
        e => Error::At { path: path.to_string(), source: Box::new(e) },
    }
}

impl From<QSeries> for Lazy {
    fn from(s: QSeries) -> Self {
        Lazy::constant(s)
    }
}

impl From<Monomial> for Lazy {
    fn from(m: Monomial) -> Self {
        Lazy::monomial(m)
    }
}

impl<'a> Add<&'a Lazy> for &'a Lazy {
    type Output = Lazy;
    fn add(self, o: &Lazy) -> Lazy {
        Lazy::sum([self.clone(), o.clone()])
    }
}

impl<'a> Sub<&'a Lazy> for &'a Lazy {
    type Output = Lazy;
    fn sub(self, o: &Lazy) -> Lazy {
        Lazy::sum([self.clone(), -o])
    }
}

impl<'a> Mul<&'a Lazy> for &'a Lazy {
    type Output = Lazy;
    fn mul(self, o: &Lazy) -> Lazy {
        Lazy::product([self.clone(), o.clone()])
    }
}

impl<'a> Div<&'a Lazy> for &'a Lazy {
    type Output = Lazy;
    fn div(self, o: &Lazy) -> Lazy {
        Lazy::new(Node::Quotient(self.clone(), o.clone()))
    }
}

impl Neg for &Lazy {
    type Output = Lazy;
    fn neg(self) -> Lazy {
        self.scale_int(-1)
    }
}

impl Neg for Lazy {
    type Output = Lazy;
    fn neg(self) -> Lazy {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Lazy {
            type Output = Lazy;
            fn $m(self, o: Lazy) -> Lazy {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Lazy> for Lazy {
            type Output = Lazy;
            fn $m(self, o: &Lazy) -> Lazy {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Lazy> for &'a Lazy {
            type Output = Lazy;
            fn $m(self, o: Lazy) -> Lazy {
                self.$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);
