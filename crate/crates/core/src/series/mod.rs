//! Truncated Laurent series in rational powers of q with Gaussian-rational
//! coefficients.
//!
//! A [`QSeries`] is exact below its truncation order and says nothing at or
//! above it. Terms are stored sparsely on the coarsest lattice `Z/den` that
//! holds every exponent and the order. The exactly-zero series (and any exact
//! polynomial) carries no order at all.

mod coefficient;
mod exponent;
mod json;
mod monomial;
mod render;

pub use coefficient::Coefficient;
pub use exponent::{Exponent, ParseExponentError};
pub use json::{JsonSeries, JsonTerm};
pub use monomial::Monomial;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use num_integer::Integer;
use std::ops::{Add, Mul, Neg, Sub};

/// Products touching fewer coefficient pairs than this stay on one thread.
const PARALLEL_WORK: usize = 1 << 14;
/// Output spans wider than this are accumulated sparsely.
const DENSE_SPAN: i64 = 1 << 18;

#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    den: i64,
    terms: Vec<(i64, Coefficient)>,
    trunc: Option<i64>,
}

/// Outcome of comparing two series below a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Comparison {
    Equal,
    FirstMismatch { exponent: Exponent, lhs: Coefficient, rhs: Coefficient },
}

fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl QSeries {
    /// The exactly-zero series.
    pub fn zero() -> Self {
        QSeries { den: 1, terms: Vec::new(), trunc: None }
    }

    pub fn one() -> Self {
        Self::constant(Coefficient::one())
    }

    pub fn constant(c: Coefficient) -> Self {
        Self::term(c, Exponent::ZERO)
    }

    pub fn term(c: Coefficient, e: Exponent) -> Self {
        Self::from_terms([(e, c)], None)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m.coefficient(), m.qexp)
    }

    /// `O(q^order)`: zero below `order`, unknown from there on.
    pub fn big_o(order: Exponent) -> Self {
        Self::from_terms(std::iter::empty(), Some(order))
    }

    /// Build from `(exponent, coefficient)` pairs. Duplicates are summed,
    /// zeros and terms at or above `trunc` dropped.
    pub fn from_terms<I>(terms: I, trunc: Option<Exponent>) -> Self
    where
        I: IntoIterator<Item = (Exponent, Coefficient)>,
    {
        let terms: Vec<(Exponent, Coefficient)> = terms.into_iter().collect();
        let mut den = trunc.map_or(1, |t| t.denom());
        for (e, _) in &terms {
            den = lcm(den, e.denom());
        }
        let keyed = terms.into_iter().map(|(e, c)| (e.to_lattice(den), c)).collect();
        Self::from_keyed(den, keyed, trunc.map(|t| t.to_lattice(den)))
    }

    /// Build from lattice keys (exponent `k/den`), in any order.
    pub(crate) fn from_keyed(den: i64, mut terms: Vec<(i64, Coefficient)>, trunc: Option<i64>) -> Self {
        if !terms.windows(2).all(|w| w[0].0 < w[1].0) {
            terms.sort_by_key(|t| t.0);
            let mut merged: Vec<(i64, Coefficient)> = Vec::with_capacity(terms.len());
            for (k, c) in terms {
                match merged.last_mut() {
                    Some((lk, lc)) if *lk == k => *lc += &c,
                    _ => merged.push((k, c)),
                }
            }
            terms = merged;
        }
        terms.retain(|(k, c)| !c.is_zero() && trunc.is_none_or(|t| *k < t));
        let mut s = QSeries { den, terms, trunc };
        s.normalize_lattice();
        s
    }

    fn normalize_lattice(&mut self) {
        let mut g = self.den;
        if let Some(t) = self.trunc {
            g = g.gcd(&t);
        }
        for (k, _) in &self.terms {
            if g == 1 {
                break;
            }
            g = g.gcd(k);
        }
        if g > 1 {
            self.den /= g;
            if let Some(t) = self.trunc.as_mut() {
                *t /= g;
            }
            for (k, _) in &mut self.terms {
                *k /= g;
            }
        }
    }

    /// Denominator of the coarsest lattice holding every exponent and the order.
    pub fn lattice_den(&self) -> i64 {
        self.den
    }

    /// Truncation order; `None` means the series is exact.
    pub fn trunc(&self) -> Option<Exponent> {
        self.trunc.map(|t| Exponent::new(t, self.den))
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.trunc.is_none() && self.terms.is_empty()
    }

    /// No nonzero term below the order (or exact zero).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Exponent, &Coefficient)> + '_ {
        self.terms.iter().map(move |(k, c)| (Exponent::new(*k, self.den), c))
    }

    /// Coefficient at `e` (zero when absent).
    pub fn coeff(&self, e: Exponent) -> Coefficient {
        if !(self.den % e.denom() == 0) {
            return Coefficient::zero();
        }
        let k = e.to_lattice(self.den);
        match self.terms.binary_search_by_key(&k, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Coefficient::zero(),
        }
    }

    pub fn leading(&self) -> Option<(Exponent, &Coefficient)> {
        self.terms().next()
    }

    /// Least stored exponent, or the order if nothing is stored below it.
    /// `None` only for the exact zero series.
    pub fn ord(&self) -> Option<Exponent> {
        match self.terms.first() {
            Some((k, _)) => Some(Exponent::new(*k, self.den)),
            None => self.trunc(),
        }
    }

    fn ord_key(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0).or(self.trunc)
    }

    /// Keys and order rescaled to the lattice `Z/den` (a multiple of `self.den`).
    fn rescaled(&self, den: i64) -> (i64, Option<i64>) {
        let s = den / self.den;
        (s, self.trunc.map(|t| t * s))
    }

    /// Drop everything at or above `order`; the order becomes `min(trunc, order)`.
    pub fn truncate(&self, order: Exponent) -> Self {
        let den = lcm(self.den, order.denom());
        let (s, t) = self.rescaled(den);
        let cut = min_opt(t, Some(order.to_lattice(den)));
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| cut.is_none_or(|c| k * s < c))
            .map(|(k, c)| (k * s, c.clone()))
            .collect();
        Self::from_keyed(den, terms, cut)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return match self.trunc {
                None => QSeries::zero(),
                Some(_) => Self::from_keyed(self.den, Vec::new(), self.trunc),
            };
        }
        let terms = self.terms.iter().map(|(k, x)| (*k, x * c)).collect();
        Self::from_keyed(self.den, terms, self.trunc)
    }

    /// Multiply by the monomial `mn`, shifting exponents and the order.
    pub fn shift(&self, mn: Monomial) -> Self {
        let den = lcm(self.den, mn.qexp.denom());
        let (s, t) = self.rescaled(den);
        let d = mn.qexp.to_lattice(den);
        let terms = self.terms.iter().map(|(k, c)| (k * s + d, c.mul_unit(mn.unit))).collect();
        Self::from_keyed(den, terms, t.map(|t| t + d))
    }

    /// `q -> q^r` for `r > 0`.
    pub fn subst_q_pow(&self, r: Exponent) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonPositiveRatio(r));
        }
        let terms: Vec<_> = self.terms().map(|(e, c)| (e * r, c.clone())).collect();
        Ok(Self::from_terms(terms, self.trunc().map(|t| t * r)))
    }

    /// `q -> -q`, defined only on the integer lattice.
    pub fn subst_q_neg(&self) -> Result<Self> {
        if self.den != 1 {
            let bad = self
                .terms()
                .map(|(e, _)| e)
                .find(|e| !e.is_integer())
                .or(self.trunc())
                .unwrap_or(Exponent::new(1, self.den));
            return Err(Error::FractionalExponent(bad));
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (*k, if k.rem_euclid(2) == 1 { -c } else { c.clone() }))
            .collect();
        Ok(Self::from_keyed(1, terms, self.trunc))
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let den = lcm(self.den, other.den);
        let (sa, ta) = self.rescaled(den);
        let (sb, tb) = other.rescaled(den);
        let t = min_opt(ta, tb);
        let below = |k: i64| t.is_none_or(|t| k < t);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        loop {
            let ka = a.get(i).map(|x| x.0 * sa);
            let kb = b.get(j).map(|x| x.0 * sb);
            let (k, c) = match (ka, kb) {
                (None, None) => break,
                (Some(x), Some(y)) if x == y => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    i += 1;
                    j += 1;
                    (x, c)
                }
                (Some(x), y) if y.is_none_or(|y| x < y) => {
                    i += 1;
                    (x, a[i - 1].1.clone())
                }
                (_, Some(y)) => {
                    j += 1;
                    (y, if negate { -&b[j - 1].1 } else { b[j - 1].1.clone() })
                }
                _ => unreachable!(),
            };
            if !below(k) {
                if ka.is_none_or(|x| !below(x)) && kb.is_none_or(|y| !below(y)) {
                    break;
                }
                continue;
            }
            if !c.is_zero() {
                out.push((k, c));
            }
        }
        let mut s = QSeries { den, terms: out, trunc: t };
        s.normalize_lattice();
        s
    }

    /// Cauchy product with explicit scheduling.
    pub fn mul_with(&self, other: &Self, exec: Execution) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return QSeries::zero();
        }
        let den = lcm(self.den, other.den);
        let (sa, ta) = self.rescaled(den);
        let (sb, tb) = other.rescaled(den);
        let oa = self.ord_key().expect("nonzero") * sa;
        let ob = other.ord_key().expect("nonzero") * sb;
        let t = min_opt(ta.map(|t| t + ob), tb.map(|t| t + oa));
        let a: Vec<(i64, &Coefficient)> = self.terms.iter().map(|(k, c)| (k * sa, c)).collect();
        let b: Vec<(i64, &Coefficient)> = other.terms.iter().map(|(k, c)| (k * sb, c)).collect();
        if a.is_empty() || b.is_empty() {
            return Self::from_keyed(den, Vec::new(), t);
        }
        let lo = a[0].0 + b[0].0;
        let hi = match t {
            Some(t) => t.min(a[a.len() - 1].0 + b[b.len() - 1].0 + 1),
            None => a[a.len() - 1].0 + b[b.len() - 1].0 + 1,
        };
        if hi <= lo {
            return Self::from_keyed(den, Vec::new(), t);
        }
        let work: usize = a
            .iter()
            .map(|(ka, _)| b.partition_point(|(kb, _)| ka + kb < hi))
            .sum();
        let bands = if exec.is_parallel() && work >= PARALLEL_WORK {
            let n = (4 * par::threads()) as i64;
            n.min((hi - lo + 255) / 256).max(1)
        } else {
            1
        };
        let width = (hi - lo + bands - 1) / bands;
        let ranges: Vec<(i64, i64)> =
            (0..bands).map(|i| (lo + i * width, (lo + (i + 1) * width).min(hi))).filter(|r| r.0 < r.1).collect();
        let parts = par::map(exec, &ranges, |&(l, h)| band_product(&a, &b, l, h));
        let terms: Vec<(i64, Coefficient)> = parts.into_iter().flatten().collect();
        let mut s = QSeries { den, terms, trunc: t };
        s.normalize_lattice();
        s
    }

    /// Multiplicative inverse. An exact series must be a single term; a
    /// truncated one loses `2*ord` of precision.
    pub fn invert(&self) -> Result<Self> {
        let Some(&(k0, ref c0)) = self.terms.first() else {
            return Err(Error::ZeroLeadingTerm);
        };
        let c0inv = c0.inv().expect("stored coefficients are nonzero");
        let Some(t) = self.trunc else {
            if self.terms.len() == 1 {
                return Ok(Self::from_keyed(self.den, vec![(-k0, c0inv)], None));
            }
            return Err(Error::InvalidArgument(
                "inverse of an exact polynomial needs a truncation order".into(),
            ));
        };
        let span = t - k0;
        let mut g = span;
        for (k, _) in &self.terms[1..] {
            g = g.gcd(&(k - k0));
        }
        let n = (span + g - 1) / g;
        let unit_lead = c0.is_one();
        let u: Vec<(usize, Coefficient)> = self.terms[1..]
            .iter()
            .map(|(k, c)| (((k - k0) / g) as usize, if unit_lead { c.clone() } else { c * &c0inv }))
            .collect();
        let mut b: Vec<Coefficient> = Vec::with_capacity(n as usize);
        b.push(Coefficient::one());
        for i in 1..n as usize {
            let mut acc = Coefficient::zero();
            for (k, uk) in &u {
                if *k > i {
                    break;
                }
                if !b[i - k].is_zero() {
                    acc.add_mul(uk, &b[i - k]);
                }
            }
            b.push(-acc);
        }
        let terms = b
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 * g - k0, if unit_lead { c } else { &c * &c0inv }))
            .collect();
        Ok(Self::from_keyed(self.den, terms, Some(t - 2 * k0)))
    }

    /// Integer power; negative powers go through [`QSeries::invert`].
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.invert()?.pow(-n);
        }
        let mut base = self.clone();
        let mut acc = QSeries::one();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Compare coefficients strictly below `upto`.
    pub fn compare(&self, other: &Self, upto: Exponent) -> Result<Comparison> {
        for s in [self, other] {
            if let Some(t) = s.trunc() {
                if t < upto {
                    return Err(Error::InsufficientOrder { needed: upto, have: t });
                }
            }
        }
        let diff = (self - other).truncate(upto);
        Ok(match diff.leading() {
            None => Comparison::Equal,
            Some((e, _)) => Comparison::FirstMismatch { exponent: e, lhs: self.coeff(e), rhs: other.coeff(e) },
        })
    }

    /// `self == other` on every exponent below `upto`.
    pub fn equal_to(&self, other: &Self, upto: Exponent) -> Result<bool> {
        Ok(self.compare(other, upto)? == Comparison::Equal)
    }
}

/// Coefficients of `a*b` with exponents in `[lo, hi)`.
fn band_product(a: &[(i64, &Coefficient)], b: &[(i64, &Coefficient)], lo: i64, hi: i64) -> Vec<(i64, Coefficient)> {
    let span = hi - lo;
    if span <= DENSE_SPAN {
        let mut acc = vec![Coefficient::zero(); span as usize];
        for &(ka, ca) in a {
            let start = b.partition_point(|(kb, _)| ka + kb < lo);
            for &(kb, cb) in &b[start..] {
                let k = ka + kb;
                if k >= hi {
                    break;
                }
                acc[(k - lo) as usize].add_mul(ca, cb);
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i64, c))
            .collect()
    } else {
        let mut acc = std::collections::BTreeMap::<i64, Coefficient>::new();
        for &(ka, ca) in a {
            let start = b.partition_point(|(kb, _)| ka + kb < lo);
            for &(kb, cb) in &b[start..] {
                let k = ka + kb;
                if k >= hi {
                    break;
                }
                acc.entry(k).or_default().add_mul(ca, cb);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

impl Default for QSeries {
    fn default() -> Self {
        QSeries::zero()
    }
}

impl From<Coefficient> for QSeries {
    fn from(c: Coefficient) -> Self {
        QSeries::constant(c)
    }
}

impl From<Monomial> for QSeries {
    fn from(m: Monomial) -> Self {
        QSeries::monomial(m)
    }
}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        self.combine(o, false)
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        self.combine(o, true)
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        self.mul_with(o, Execution::default())
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            den: self.den,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
            trunc: self.trunc,
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, o: QSeries) -> QSeries {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, o: &QSeries) -> QSeries {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[(i64, i64)], trunc: Option<i64>) -> QSeries {
        QSeries::from_terms(
            cs.iter().map(|&(e, c)| (Exponent::int(e), Coefficient::from_int(c))),
            trunc.map(Exponent::int),
        )
    }

    #[test]
    fn add_cancels_and_takes_min_order() {
        let a = poly(&[(0, 1), (1, -1)], Some(10));
        let b = poly(&[(1, 1)], Some(10));
        assert_eq!(&a + &b, poly(&[(0, 1)], Some(10)));
        let c = poly(&[(0, 1)], Some(5)) + poly(&[(0, 1)], Some(3));
        assert_eq!(c, poly(&[(0, 2)], Some(3)));
        assert_eq!(&a + &QSeries::zero(), a);
    }

    #[test]
    fn mul_basics() {
        let a = poly(&[(0, 1), (1, -1)], None);
        let b = poly(&[(0, 1), (1, 1)], None);
        assert_eq!(&a * &b, poly(&[(0, 1), (2, -1)], None));
        let l = poly(&[(-1, 1)], None) * poly(&[(1, 1)], None);
        assert_eq!(l, QSeries::one());
        assert!((QSeries::zero() * poly(&[], Some(4))).is_exact_zero());
    }

    #[test]
    fn mul_order_rule() {
        // (q + O(q^5)) * (q^2 + O(q^4)) is known below min(5+2, 4+1) = 5
        let a = poly(&[(1, 1)], Some(5));
        let b = poly(&[(2, 1)], Some(4));
        assert_eq!((&a * &b).trunc(), Some(Exponent::int(5)));
    }

    #[test]
    fn invert_geometric_and_monomial() {
        let a = poly(&[(0, 1), (1, -1)], Some(6));
        let inv = a.invert().unwrap();
        assert_eq!(inv, poly(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)], Some(6)));
        assert_eq!(poly(&[(1, 1)], None).invert().unwrap(), poly(&[(-1, 1)], None));
        assert_eq!(poly(&[], Some(3)).invert(), Err(Error::ZeroLeadingTerm));
        let shifted = poly(&[(2, 2), (3, 1)], Some(8)).invert().unwrap();
        assert_eq!(shifted.trunc(), Some(Exponent::int(4)));
        assert_eq!(shifted.leading().unwrap().0, Exponent::int(-2));
    }

    #[test]
    fn substitutions() {
        let a = poly(&[(0, 1), (1, 1)], None);
        let h = a.subst_q_pow(Exponent::new(1, 2)).unwrap();
        assert_eq!(h.coeff(Exponent::new(1, 2)), Coefficient::one());
        assert_eq!(h.lattice_den(), 2);
        assert!(a.subst_q_pow(Exponent::ZERO).is_err());
        let n = poly(&[(0, 1), (1, 1), (2, 1)], None).subst_q_neg().unwrap();
        assert_eq!(n, poly(&[(0, 1), (1, -1), (2, 1)], None));
        assert!(matches!(h.subst_q_neg(), Err(Error::FractionalExponent(_))));
    }

    #[test]
    fn shift_and_back() {
        let a = poly(&[(0, 1), (1, 1)], Some(7));
        let m = Monomial::new(1, Exponent::new(1, 2));
        let s = a.shift(m);
        assert_eq!(s.trunc(), Some(Exponent::new(15, 2)));
        assert_eq!(s.shift(m.inv()), a);
    }

    #[test]
    fn compare_reports_first_mismatch() {
        let a = QSeries::one().truncate(Exponent::int(10));
        let b = poly(&[(0, 1), (5, 1)], Some(10));
        assert_eq!(a.compare(&a, Exponent::int(10)).unwrap(), Comparison::Equal);
        assert_eq!(
            a.compare(&b, Exponent::int(10)).unwrap(),
            Comparison::FirstMismatch {
                exponent: Exponent::int(5),
                lhs: Coefficient::zero(),
                rhs: Coefficient::one()
            }
        );
        assert!(matches!(a.compare(&b, Exponent::int(11)), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn lattice_is_minimal() {
        let s = QSeries::from_terms([(Exponent::new(2, 4), Coefficient::one())], Some(Exponent::new(6, 4)));
        assert_eq!(s.lattice_den(), 2);
        let t = QSeries::from_terms([(Exponent::new(1, 1), Coefficient::one())], Some(Exponent::int(4)));
        assert_eq!(t.lattice_den(), 1);
    }

    #[test]
    fn parallel_and_sequential_products_agree() {
        let a = QSeries::from_terms((0..400).map(|k| (Exponent::int(k), Coefficient::from_int(k % 7 - 3))), Some(Exponent::int(400)));
        let b = QSeries::from_terms((0..400).map(|k| (Exponent::int(k), Coefficient::from_int(k % 5 - 2))), Some(Exponent::int(400)));
        assert_eq!(a.mul_with(&b, Execution::Sequential), a.mul_with(&b, Execution::Parallel));
    }
}
