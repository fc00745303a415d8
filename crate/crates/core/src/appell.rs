//! The Appell-Lerch sum
//! `m(x, q, z) = 1/j(z; q) * sum_r (-1)^r q^C(r,2) z^r / (1 - q^(r-1) x z)`,
//! with `q` standing for the modulus `q^base`.

use crate::error::{Error, Result};
use crate::lattice::{binom2, minimum, sublevel, vertex};
use crate::series::{Coefficient, Exponent, Monomial, QSeries};
use crate::theta::{common_den, jtheta, jtheta_leading, unit_series};

/// Arguments of `m(x, q^base, z)`, checked for definedness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AppellArgs {
    pub x: Monomial,
    pub base: Exponent,
    pub z: Monomial,
}

impl AppellArgs {
    /// Rejects `z` or `x z` an integral power of the modulus.
    pub fn new(x: Monomial, base: Exponent, z: Monomial) -> Result<Self> {
        if !base.is_positive() {
            return Err(Error::NonPositiveBase(base));
        }
        if z.is_integral_power_of(base) {
            return Err(Error::ThetaZeroDenominator);
        }
        if (x * z).is_integral_power_of(base) {
            return Err(Error::PoleAtXZ);
        }
        Ok(AppellArgs { x, base, z })
    }
}

/// Lattice data for the numerator sum. Term `r` starts at
/// `p_r = B C(r,2) + r Z` and its geometric ratio has exponent
/// `d_r = B (r-1) + X + Z`; its least exponent is `p_r + max(0, -d_r)`,
/// a convex function of `r`.
struct Numerator {
    den: i64,
    b: i128,
    xz: i128,
    zq: i128,
    z_unit: u8,
    rho: u8,
}

impl Numerator {
    fn new(a: &AppellArgs, extra: Exponent) -> Self {
        let den = common_den(&[a.base, a.x.qexp, a.z.qexp, extra]);
        let b = a.base.to_lattice(den) as i128;
        let zq = a.z.qexp.to_lattice(den) as i128;
        Numerator {
            den,
            b,
            xz: a.x.qexp.to_lattice(den) as i128 + zq,
            zq,
            z_unit: a.z.unit,
            rho: (a.x.unit + a.z.unit) % 4,
        }
    }

    fn start(&self, r: i64) -> i128 {
        self.b * binom2(r) + self.zq * r as i128
    }

    fn ratio(&self, r: i64) -> i128 {
        self.b * (r as i128 - 1) + self.xz
    }

    fn least(&self, r: i64) -> i128 {
        self.start(r) + (-self.ratio(r)).max(0)
    }

    fn guess(&self) -> i64 {
        vertex(self.b, 2 * self.zq - self.b)
    }

    fn floor(&self) -> i128 {
        minimum(|r| self.least(r), self.guess(), None, None).1
    }

    fn range(&self, bound: i128) -> Option<(i64, i64, i128)> {
        sublevel(|r| self.least(r), self.guess(), None, None, bound)
    }

    /// The sum truncated below `q^(t/den)`.
    fn series(&self, t: i64) -> QSeries {
        let mut units = Vec::new();
        let mut rational = Vec::new();
        if let Some((lo, hi, _)) = self.range(t as i128) {
            for r in lo..=hi {
                let p = self.start(r);
                let d = self.ratio(r);
                let u = ((2 + self.z_unit as i128) * r as i128).rem_euclid(4) as u8;
                if d > 0 {
                    let mut k = 0i64;
                    while p + k as i128 * d < t as i128 {
                        let ku = (u as i64 + k * self.rho as i64).rem_euclid(4) as u8;
                        units.push(((p + k as i128 * d) as i64, ku));
                        k += 1;
                    }
                } else if d < 0 {
                    let mut k = 1i64;
                    while p - (k as i128) * d < t as i128 {
                        let ku = (u as i64 + 2 - k * self.rho as i64).rem_euclid(4) as u8;
                        units.push(((p - k as i128 * d) as i64, ku));
                        k += 1;
                    }
                } else if p < t as i128 {
                    let c = (&Coefficient::one() - &Coefficient::unit(self.rho)).inv().expect("rho != 1");
                    rational.push((p as i64, c.mul_unit(u)));
                }
            }
        }
        let s = unit_series(self.den, units, Some(t));
        if rational.is_empty() {
            s
        } else {
            &s + &QSeries::from_keyed(self.den, rational, Some(t))
        }
    }
}

/// Least exponent the numerator sum can reach, minus the leading exponent
/// of `j(z)`: a lower bound for the order of `m(x, q, z)`.
pub fn appell_lower_bound(args: &AppellArgs) -> Result<Exponent> {
    let ord_j = jtheta_leading(args.z, args.base)?.ok_or(Error::ThetaZeroDenominator)?;
    let n = Numerator::new(args, Exponent::ZERO);
    Ok(Exponent::new(n.floor() as i64, n.den) - ord_j)
}

/// `m(x, q^base, z)` with every coefficient below `q^order` exact.
///
/// The numerator is summed over exactly those `r` whose expansion reaches
/// below `order + ord j(z)`; `j(z)` is expanded far enough that its inverse
/// times the numerator is exact below `order`.
pub fn appell_m(args: &AppellArgs, order: Exponent) -> Result<QSeries> {
    let args = AppellArgs::new(args.x, args.base, args.z)?;
    let ord_j = jtheta_leading(args.z, args.base)?.ok_or(Error::ThetaZeroDenominator)?;
    let t_s = order + ord_j;
    let n = Numerator::new(&args, t_s);
    let least = Exponent::new(n.floor() as i64, n.den);
    let sum = n.series(t_s.to_lattice(n.den));
    let t_j = order + ord_j * 2 - least.min(t_s);
    let theta = jtheta(args.z, args.base, t_j)?;
    Ok((&sum * &theta.invert()?).truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: i64) -> Exponent {
        Exponent::int(n)
    }

    #[test]
    fn half_and_zero_evaluations() {
        let a = AppellArgs::new(Monomial::q(1), e(2), Monomial::minus_one()).unwrap();
        let half = appell_m(&a, e(40)).unwrap();
        assert_eq!(half, QSeries::constant(Coefficient::from_ratio(1, 2)).truncate(e(40)));
        let b = AppellArgs::new(Monomial::minus_one(), e(2), Monomial::q(1)).unwrap();
        let zero = appell_m(&b, e(40)).unwrap();
        assert!(zero.is_empty());
        assert_eq!(zero.trunc(), Some(e(40)));
    }

    #[test]
    fn definedness() {
        assert_eq!(AppellArgs::new(Monomial::q(1), e(1), Monomial::q(2)), Err(Error::ThetaZeroDenominator));
        assert_eq!(AppellArgs::new(Monomial::q(1), e(1), Monomial::neg_q(-1)).unwrap().z, Monomial::neg_q(-1));
        assert_eq!(AppellArgs::new(Monomial::neg_q(2), e(1), Monomial::neg_q(-1)), Err(Error::PoleAtXZ));
    }

    #[test]
    fn extra_order_changes_nothing_below() {
        let a = AppellArgs::new(Monomial::neg_q(Exponent::new(1, 3)), e(1), Monomial::q(Exponent::new(2, 5))).unwrap();
        let lo = appell_m(&a, e(15)).unwrap();
        let hi = appell_m(&a, e(25)).unwrap().truncate(e(15));
        assert_eq!(lo, hi);
        assert!(appell_lower_bound(&a).unwrap() <= lo.ord().unwrap());
    }
}
