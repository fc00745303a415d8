//! Hecke-type double sums
//! `f_{a,b,c}(x, y, q) = (sum_{r,s >= 0} - sum_{r,s < 0}) (-1)^(r+s) x^r y^s q^(a C(r,2) + b r s + c C(s,2))`
//! and the closed forms they are compared against.

mod rhs;

pub use rhs::*;

use crate::error::{Error, Result};
use crate::lattice::{binom2, minimum, sublevel, vertex};
use crate::series::{Exponent, Monomial, QSeries};
use crate::theta::{common_den, unit_series};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeckeArgs {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub x: Monomial,
    pub y: Monomial,
    pub base: Exponent,
}

impl HeckeArgs {
    pub fn new(a: i64, b: i64, c: i64, x: Monomial, y: Monomial, base: Exponent) -> Result<Self> {
        if a < 1 || b < 1 || c < 1 {
            return Err(Error::InvalidArgument(format!("f_{{a,b,c}} needs a, b, c >= 1, got ({a}, {b}, {c})")));
        }
        if !base.is_positive() {
            return Err(Error::NonPositiveBase(base));
        }
        Ok(HeckeArgs { a, b, c, x, y, base })
    }

    /// Same coefficients and modulus, new arguments.
    pub fn with_args(self, x: Monomial, y: Monomial) -> Self {
        HeckeArgs { x, y, ..self }
    }
}

/// Quadratic form of the exponent on the lattice `Z/den`.
struct Form {
    den: i64,
    qa: i128,
    qb: i128,
    qc: i128,
    xq: i128,
    yq: i128,
}

impl Form {
    fn new(h: &HeckeArgs, extra: Exponent) -> Self {
        let den = common_den(&[h.base, h.x.qexp, h.y.qexp, extra]);
        let base = h.base.to_lattice(den) as i128;
        Form {
            den,
            qa: base * h.a as i128,
            qb: base * h.b as i128,
            qc: base * h.c as i128,
            xq: h.x.qexp.to_lattice(den) as i128,
            yq: h.y.qexp.to_lattice(den) as i128,
        }
    }

    fn row(&self, r: i64) -> i128 {
        self.qa * binom2(r) + self.xq * r as i128
    }

    fn col(&self, s: i64) -> i128 {
        self.qc * binom2(s) + self.yq * s as i128
    }

    fn exp(&self, r: i64, s: i64) -> i128 {
        self.row(r) + self.col(s) + self.qb * r as i128 * s as i128
    }

    /// `(lo, hi)` bounds of the quadrant: nonnegative or negative indices.
    fn quadrant(positive: bool) -> (Option<i64>, Option<i64>) {
        if positive {
            (Some(0), None)
        } else {
            (None, Some(-1))
        }
    }

    /// Minimum of `row + col` over the quadrant, a lower bound for the exponent there.
    fn quadrant_floor(&self, positive: bool) -> i128 {
        let (lo, hi) = Self::quadrant(positive);
        let rmin = minimum(|r| self.row(r), vertex(self.qa, 2 * self.xq - self.qa), lo, hi).1;
        let smin = minimum(|s| self.col(s), vertex(self.qc, 2 * self.yq - self.qc), lo, hi).1;
        rmin + smin
    }
}

/// Lower bound on the exponent of every term of `f_{a,b,c}`.
pub fn hecke_lower_bound(h: &HeckeArgs) -> Exponent {
    let f = Form::new(h, Exponent::ZERO);
    let m = f.quadrant_floor(true).min(f.quadrant_floor(false));
    Exponent::new(m as i64, f.den)
}

/// `f_{a,b,c}(x, y, q^base)` with every term below `q^order`.
///
/// On either quadrant `b r s >= 0`, so the exponent is at least
/// `row(r) + min col`; rows are taken from that convex sublevel set and
/// within a row the exact convex sublevel set in `s` is summed.
pub fn hecke_f(h: &HeckeArgs, order: Exponent) -> QSeries {
    let f = Form::new(h, order);
    let t = order.to_lattice(f.den);
    let mut keys = Vec::new();
    for positive in [true, false] {
        let (lo, hi) = Form::quadrant(positive);
        let cmin = minimum(|s| f.col(s), vertex(f.qc, 2 * f.yq - f.qc), lo, hi).1;
        let rows = sublevel(|r| f.row(r) + cmin, vertex(f.qa, 2 * f.xq - f.qa), lo, hi, t as i128);
        let Some((r0, r1, _)) = rows else { continue };
        let sign = if positive { 0 } else { 2 };
        for r in r0..=r1 {
            let lin = 2 * (f.qb * r as i128 + f.yq) - f.qc;
            let Some((s0, s1, _)) = sublevel(|s| f.exp(r, s), vertex(f.qc, lin), lo, hi, t as i128) else {
                continue;
            };
            for s in s0..=s1 {
                let u = (sign + 2 * (r + s) + h.x.unit as i64 * r + h.y.unit as i64 * s).rem_euclid(4) as u8;
                keys.push((f.exp(r, s) as i64, u));
            }
        }
    }
    unit_series(f.den, keys, Some(t))
}
