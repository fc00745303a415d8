//! Jacobi theta functions and q-Pochhammer products.
//!
//! `j(x; q^b) = sum_n (-1)^n q^(b*C(n,2)) x^n = (x)_inf (q^b/x)_inf (q^b)_inf`
//! with `(x)_inf = (x; q^b)_inf`. Arguments are monomials `i^u q^a`.

use crate::error::{Error, Result};
use crate::lattice::{binom2, minimum, sublevel, vertex};
use crate::series::{Coefficient, Exponent, Monomial, QSeries};
use num_integer::Integer;

fn check_base(base: Exponent) -> Result<()> {
    if base.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveBase(base))
    }
}

/// Least common denominator of a set of exponents.
pub(crate) fn common_den(es: &[Exponent]) -> i64 {
    es.iter().fold(1i64, |d, e| d.lcm(&e.denom()))
}

/// Collapse `(key, i^unit)` contributions into a series on `Z/den`.
pub(crate) fn unit_series(den: i64, mut keys: Vec<(i64, u8)>, trunc: Option<i64>) -> QSeries {
    keys.sort_unstable_by_key(|t| t.0);
    let mut terms = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let k = keys[i].0;
        let mut counts = [0i64; 4];
        while i < keys.len() && keys[i].0 == k {
            counts[(keys[i].1 % 4) as usize] += 1;
            i += 1;
        }
        let c = Coefficient::from_unit_counts(counts);
        if !c.is_zero() {
            terms.push((k, c));
        }
    }
    QSeries::from_keyed(den, terms, trunc)
}

/// Dense product of `(1 - i^u q^(e/den))` over factors with `0 <= e`, below `q^(span/den)`.
fn binomial_product(den: i64, span: i64, factors: impl IntoIterator<Item = (i64, u8)>) -> QSeries {
    if span <= 0 {
        return QSeries::from_keyed(den, Vec::new(), Some(span));
    }
    let n = span as usize;
    let mut acc = vec![Coefficient::zero(); n];
    acc[0] = Coefficient::one();
    let mut constant = Coefficient::one();
    for (e, u) in factors {
        debug_assert!(e >= 0);
        if e == 0 {
            let f = &Coefficient::one() - &Coefficient::unit(u);
            constant = &constant * &f;
            continue;
        }
        let e = e as usize;
        if e >= n {
            continue;
        }
        let neg = (u + 2) % 4;
        for k in (e..n).rev() {
            let (lo, hi) = acc.split_at_mut(k);
            if !lo[k - e].is_zero() {
                hi[0].add_unit_mul(neg, &lo[k - e]);
            }
        }
    }
    if constant.is_zero() {
        return QSeries::zero();
    }
    let unit_const = constant.is_one();
    let terms = acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as i64, if unit_const { c } else { &c * &constant }))
        .collect();
    QSeries::from_keyed(den, terms, Some(span))
}

/// `(x; q^base)_n`, or the infinite product when `n` is `None`, below `q^order`.
pub fn pochhammer(x: Monomial, base: Exponent, n: Option<u64>, order: Exponent) -> Result<QSeries> {
    check_base(base)?;
    if n == Some(0) {
        return Ok(QSeries::one());
    }
    if n.is_none() && x.qexp.is_negative() {
        return Err(Error::DivergentProduct(x.qexp));
    }
    if x.unit == 0 && x.qexp.is_zero() {
        return Ok(QSeries::zero());
    }
    if x.qexp.is_negative() {
        let mut acc = QSeries::one();
        for i in 0..n.unwrap_or(0) {
            let e = base * i as i64 + x.qexp;
            let f = QSeries::from_terms(
                [(Exponent::ZERO, Coefficient::one()), (e, -Coefficient::unit(x.unit))],
                None,
            );
            acc = &acc * &f;
            if acc.is_exact_zero() {
                return Ok(acc);
            }
        }
        return Ok(acc.truncate(order));
    }
    let den = common_den(&[base, x.qexp, order]);
    let b = base.to_lattice(den);
    let a = x.qexp.to_lattice(den);
    let span = order.to_lattice(den).max(0);
    let needed = if span <= a { i64::from(a == 0) } else { (span - a + b - 1) / b };
    let count = n.map_or(needed, |n| needed.min(n.min(i64::MAX as u64) as i64));
    let out = binomial_product(den, span, (0..count).map(|i| (a + i * b, x.unit)));
    Ok(if out.is_exact_zero() { out } else { out.truncate(order) })
}

/// `j(x; q^base)` from its bilateral sum, every term below `q^order`.
pub fn jtheta_sum(x: Monomial, base: Exponent, order: Exponent) -> Result<QSeries> {
    check_base(base)?;
    let den = common_den(&[base, x.qexp, order]);
    let b = base.to_lattice(den) as i128;
    let a = x.qexp.to_lattice(den) as i128;
    let t = order.to_lattice(den);
    let f = |n: i64| b * binom2(n) + a * n as i128;
    let mut keys = Vec::new();
    if let Some((lo, hi, _)) = sublevel(f, vertex(b, 2 * a - b), None, None, t as i128) {
        for n in lo..=hi {
            let unit = ((n as i128 * (2 + x.unit as i128)).rem_euclid(4)) as u8;
            keys.push((f(n) as i64, unit));
        }
    }
    Ok(unit_series(den, keys, Some(t)))
}

/// `j(x; q^base)` as a triple product; requires `0 <= x.qexp < base`.
pub fn jtheta_prod(x: Monomial, base: Exponent, order: Exponent) -> Result<QSeries> {
    check_base(base)?;
    if x.qexp.is_negative() || x.qexp >= base {
        return Err(Error::OutOfStrip { qexp: x.qexp, base });
    }
    if x.unit == 0 && x.qexp.is_zero() {
        return Ok(QSeries::zero());
    }
    let den = common_den(&[base, x.qexp, order]);
    let b = base.to_lattice(den);
    let a = x.qexp.to_lattice(den);
    let span = order.to_lattice(den).max(0);
    let inv = (4 - x.unit) % 4;
    let upto = |start: i64| {
        let c = if span <= start { 0 } else { (span - start + b - 1) / b };
        (0..c).map(move |k| start + k * b)
    };
    let factors = upto(a)
        .map(|e| (e, x.unit))
        .chain(upto(b - a).map(|e| (e, inv)))
        .chain(upto(b).map(|e| (e, 0)));
    Ok(binomial_product(den, span, factors.collect::<Vec<_>>()))
}

/// Prefactor `p` and strip argument `x0` with `j(x; q^base) = p * j(x0; q^base)`.
fn strip_reduce(x: Monomial, base: Exponent) -> (Monomial, Monomial) {
    let n = (x.qexp / base).floor();
    let alpha = x.qexp - base * n;
    let x0 = Monomial::new(x.unit, alpha);
    let unit = (2 * n - n * x.unit as i64).rem_euclid(4) as u8;
    let shift = -(base * binom2(n) as i64) - alpha * n;
    (Monomial::new(unit, shift), x0)
}

/// `j(x; q^base)` below `q^order`: exact zero at integral powers of the
/// modulus, the sum form for units `+-i`, otherwise the triple product after
/// moving `x` into the strip with the elliptic transformation.
pub fn jtheta(x: Monomial, base: Exponent, order: Exponent) -> Result<QSeries> {
    check_base(base)?;
    if x.is_integral_power_of(base) {
        return Ok(QSeries::zero());
    }
    if x.unit % 2 == 1 {
        return jtheta_sum(x, base, order);
    }
    let (pref, x0) = strip_reduce(x, base);
    Ok(jtheta_prod(x0, base, order - pref.qexp)?.shift(pref))
}

/// Exponent of the leading term of `j(x; q^base)`; `None` when it vanishes identically.
pub fn jtheta_leading(x: Monomial, base: Exponent) -> Result<Option<Exponent>> {
    check_base(base)?;
    if x.is_integral_power_of(base) {
        return Ok(None);
    }
    let den = common_den(&[base, x.qexp]);
    let b = base.to_lattice(den) as i128;
    let a = x.qexp.to_lattice(den) as i128;
    let f = |n: i64| b * binom2(n) + a * n as i128;
    let (_, m) = minimum(f, vertex(b, 2 * a - b), None, None);
    Ok(Some(Exponent::new(m as i64, den)))
}

/// `J_{a,m} = j(q^a; q^m)`, `Jbar_{a,m} = j(-q^a; q^m)`, and with `a` absent
/// `J_m = J_{m,3m} = (q^m; q^m)_inf` (barred: `j(-q^m; q^(3m))`).
pub fn j_shorthand(a: Option<Exponent>, m: Exponent, barred: bool, order: Exponent) -> Result<QSeries> {
    check_base(m)?;
    let (a, modulus) = match a {
        Some(a) => (a, m),
        None => (m, m * 3),
    };
    let x = if barred { Monomial::neg_q(a) } else { Monomial::q(a) };
    jtheta(x, modulus, order)
}

/// `eta(scale * tau) = q^(scale/24) (q^scale; q^scale)_inf`.
pub fn eta(scale: Exponent, order: Exponent) -> Result<QSeries> {
    check_base(scale)?;
    let pre = scale / 24;
    Ok(pochhammer(Monomial::q(scale), scale, None, order - pre)?.shift(Monomial::q(pre)))
}

/// One summand `prefactor * j(arg; q^base)` of a dissection of a theta function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitComponent {
    pub prefactor: Monomial,
    pub arg: Monomial,
    pub base: Exponent,
}

/// The `mm` summands of
/// `j(z; q) = sum_{k<mm} (-1)^k q^C(k,2) z^k j((-1)^(mm+1) q^(C(mm,2)+mm k) z^mm; q^(mm^2))`,
/// with `q` standing for `q^base`.
pub fn j_split_components(z: Monomial, base: Exponent, mm: u32) -> Vec<SplitComponent> {
    let m = mm as i64;
    (0..m)
        .map(|k| {
            let prefactor = Monomial::new((2 * k).rem_euclid(4) as u8, base * binom2(k) as i64) * z.pow(k);
            let sign = Monomial::new((2 * (m + 1)).rem_euclid(4) as u8, base * (binom2(m) as i64 + m * k));
            SplitComponent { prefactor, arg: sign * z.pow(m), base: base * (m * m) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: i64) -> Exponent {
        Exponent::int(n)
    }

    fn ints(s: &QSeries) -> Vec<(i64, i64)> {
        s.terms()
            .map(|(e, c)| (e.numer(), c.re().numer().try_into().unwrap()))
            .collect()
    }

    #[test]
    fn euler_pentagonal() {
        let p = pochhammer(Monomial::q(1), e(1), None, e(13)).unwrap();
        assert_eq!(ints(&p), vec![(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)]);
        assert_eq!(p.trunc(), Some(e(13)));
        assert_eq!(pochhammer(Monomial::q(3), e(1), Some(0), e(5)).unwrap(), QSeries::one());
    }

    #[test]
    fn pochhammer_rejects_divergent() {
        assert!(matches!(
            pochhammer(Monomial::q(-1), e(1), None, e(5)),
            Err(Error::DivergentProduct(_))
        ));
        assert!(pochhammer(Monomial::q(0), e(1), None, e(5)).unwrap().is_exact_zero());
        let two = pochhammer(Monomial::minus_one(), e(1), Some(1), e(5)).unwrap();
        assert_eq!(ints(&two), vec![(0, 2)]);
    }

    #[test]
    fn finite_pochhammer_with_negative_start() {
        // (q^-1; q)_2 = (1 - q^-1)(1 - 1) = 0
        assert!(pochhammer(Monomial::q(-1), e(1), Some(2), e(5)).unwrap().is_exact_zero());
        // (q^-1; q)_1 = 1 - q^-1
        let s = pochhammer(Monomial::q(-1), e(1), Some(1), e(5)).unwrap();
        assert_eq!(ints(&s), vec![(-1, -1), (0, 1)]);
    }

    #[test]
    fn theta_zeros_are_exact() {
        for n in -3..4 {
            assert!(jtheta(Monomial::q(n), e(1), e(10)).unwrap().is_exact_zero());
        }
        assert!(jtheta_sum(Monomial::q(1), e(1), e(10)).unwrap().is_empty());
        assert_eq!(jtheta_leading(Monomial::q(2), e(1)).unwrap(), None);
    }

    #[test]
    fn theta_at_minus_one() {
        let s = jtheta(Monomial::minus_one(), e(1), e(7)).unwrap();
        assert_eq!(ints(&s), vec![(0, 2), (1, 2), (3, 2), (6, 2)]);
        assert_eq!(s, jtheta_sum(Monomial::minus_one(), e(1), e(7)).unwrap());
    }

    #[test]
    fn theta_leading_terms() {
        let s = jtheta(Monomial::q(2), e(5), e(4)).unwrap();
        assert_eq!(ints(&s), vec![(0, 1), (2, -1), (3, -1)]);
        assert_eq!(jtheta_leading(Monomial::q(4), e(3)).unwrap(), Some(e(-1)));
        let r = jtheta(Monomial::q(4), e(3), e(6)).unwrap();
        assert_eq!(r.leading().unwrap().0, e(-1));
    }

    #[test]
    fn reduction_matches_sum() {
        for (u, a) in [(0, 4), (2, -5), (0, -7), (2, 11)] {
            let x = Monomial::new(u, e(a));
            assert_eq!(
                jtheta(x, e(3), e(20)).unwrap(),
                jtheta_sum(x, e(3), e(20)).unwrap(),
                "x = {x}"
            );
        }
        let x = Monomial::new(1, e(1));
        assert_eq!(jtheta(x, e(4), e(15)).unwrap(), jtheta_sum(x, e(4), e(15)).unwrap());
    }

    #[test]
    fn product_needs_strip() {
        assert!(matches!(jtheta_prod(Monomial::q(3), e(3), e(5)), Err(Error::OutOfStrip { .. })));
        let half = Monomial::q(Exponent::new(1, 2));
        assert_eq!(jtheta_prod(half, e(1), e(20)).unwrap(), jtheta_sum(half, e(1), e(20)).unwrap());
    }

    #[test]
    fn shorthand_and_eta() {
        let j1 = j_shorthand(None, e(1), false, e(13)).unwrap();
        assert_eq!(j1, pochhammer(Monomial::q(1), e(1), None, e(13)).unwrap());
        let eta12 = eta(e(12), e(40)).unwrap().shift(Monomial::q(Exponent::new(-1, 2)));
        assert_eq!(eta12, pochhammer(Monomial::q(12), e(12), None, Exponent::new(79, 2)).unwrap());
    }

    #[test]
    fn split_single_component_is_identity() {
        let z = Monomial::q(Exponent::new(1, 3));
        let c = j_split_components(z, e(1), 1);
        assert_eq!(c, vec![SplitComponent { prefactor: Monomial::ONE, arg: z, base: e(1) }]);
    }

    #[test]
    fn split_sums_back() {
        let z = Monomial::neg_q(Exponent::new(1, 2));
        for mm in [2, 3] {
            let mut total = QSeries::zero();
            for c in j_split_components(z, e(1), mm) {
                let part = jtheta(c.arg, c.base, e(20) - c.prefactor.qexp).unwrap().shift(c.prefactor);
                total = &total + &part;
            }
            let direct = jtheta(z, e(1), e(20)).unwrap();
            assert!(total.equal_to(&direct, e(20)).unwrap());
        }
    }
}
