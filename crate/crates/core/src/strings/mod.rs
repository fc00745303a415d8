//! String functions of the affine Lie algebra A1(1) at integer level.
//!
//! With `s(m, l, N) = -1/8 + (l+1)^2/(4(N+2)) - m^2/(4N)` the string function
//! is `C^N_{m,l}(q) = q^s(m,l,N) * CC^N_{m,l}(q)`, and
//! `CC^N_{m,l}(q) = f_{1,1+N,1}(q^(1+(m+l)/2), q^(1-(m-l)/2), q) / J_1^3`.

mod closed;

pub use closed::*;

use crate::error::{Error, Result};
use crate::hecke::HeckeArgs;
use crate::lattice::{minimum, sublevel, vertex};
use crate::lazy::{Lazy, Leading, Source};
use crate::series::{Exponent, Monomial, QSeries};
use crate::theta::unit_series;
use std::fmt;

/// A level `N >= 1`, a highest weight `0 <= l <= N` and a weight `m = l (mod 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringLabel {
    pub level: i64,
    pub ell: i64,
    pub m: i64,
}

impl StringLabel {
    pub fn new(level: i64, ell: i64, m: i64) -> Result<Self> {
        let bad = |reason| Err(Error::InvalidLabel { level, ell, m, reason });
        if level < 1 {
            return bad("level must be at least 1");
        }
        if !(0..=level).contains(&ell) {
            return bad("l must lie in 0..=N");
        }
        if (m - ell).rem_euclid(2) != 0 {
            return bad("m and l must have the same parity");
        }
        Ok(StringLabel { level, ell, m })
    }

    /// Every label with `0 <= m < 2N`.
    pub fn all(level: i64) -> Vec<StringLabel> {
        let mut out = Vec::new();
        for ell in 0..=level {
            for m in (0..2 * level).filter(|m| (m - ell) % 2 == 0) {
                out.push(StringLabel { level, ell, m });
            }
        }
        out
    }
}

impl fmt::Display for StringLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C^{}_{{{},{}}}", self.level, self.m, self.ell)
    }
}

/// `s(m, l, N)`.
pub fn s_exponent(lbl: &StringLabel) -> Exponent {
    let (n, l, m) = (lbl.level, lbl.ell, lbl.m);
    Exponent::new(-1, 8) + Exponent::new((l + 1) * (l + 1), 4 * (n + 2)) - Exponent::new(m * m, 4 * n)
}

/// `(m^2 - l^2) / (4N)`, the exponent removed by the normalisation
/// `q^(-(m^2-l^2)/(4N)) CC^N_{m,l}`.
pub fn normalizer(lbl: &StringLabel) -> Exponent {
    Exponent::new(lbl.m * lbl.m - lbl.ell * lbl.ell, 4 * lbl.level)
}

/// Arguments of the double sum `f_{1,1+N,1}(q^(1+(m+l)/2), q^(1-(m-l)/2), q)`.
pub fn hecke_args(lbl: &StringLabel) -> HeckeArgs {
    let x = Monomial::q(1 + (lbl.m + lbl.ell) / 2);
    let y = Monomial::q(1 - (lbl.m - lbl.ell) / 2);
    HeckeArgs::new(1, 1 + lbl.level, 1, x, y, Exponent::ONE).expect("valid coefficients")
}

/// `J_1^3 CC^N_{m,l}` as a double sum over `i, j` in `Z`:
/// `sum (-1)^i sg(j) q^(i(i+m)/2 + j((N+2)j+l+1) + sg(j)|i|(2(N+2)j+l+1)/2)`.
///
/// This is the definition-side oracle; it shares no code with the Hecke route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StringSum(pub StringLabel);

impl StringSum {
    /// Twice the exponent of the `(i, j)` term.
    fn exponent2(&self, i: i64, j: i64) -> i128 {
        let lbl = self.0;
        let (n, l, m) = (lbl.level as i128, lbl.ell as i128, lbl.m as i128);
        let (i, j) = (i as i128, j as i128);
        let a = 2 * (n + 2) * j + l + 1;
        let sg = if j >= 0 { 1 } else { -1 };
        i * (i + m) + 2 * j * ((n + 2) * j + l + 1) + sg * i.abs() * a
    }

    /// Least value of `i(i+m)` over the integers.
    fn inner_floor(&self) -> i128 {
        let m = self.0.m as i128;
        minimum(|i| i as i128 * (i as i128 + m), vertex(1, m), None, None).1
    }

    /// Lower bound for twice the exponent along row `j`.
    fn row_floor(&self, j: i64) -> i128 {
        let lbl = self.0;
        let j = j as i128;
        2 * j * ((lbl.level as i128 + 2) * j + lbl.ell as i128 + 1) + self.inner_floor()
    }

    fn row_guess(&self) -> i64 {
        let lbl = self.0;
        vertex(2 * (lbl.level as i128 + 2), 2 * (lbl.ell as i128 + 1))
    }

    fn floor(&self) -> i128 {
        minimum(|j| self.row_floor(j), self.row_guess(), None, None).1
    }

    /// Double sum truncated below `q^order`.
    pub fn series(&self, order: Exponent) -> QSeries {
        let t = (order * 2).ceil() as i128;
        let mut units = Vec::new();
        if let Some((jlo, jhi, _)) = sublevel(|j| self.row_floor(j), self.row_guess(), None, None, t) {
            for j in jlo..=jhi {
                let row = |i: i64| self.exponent2(i, j);
                let Some((ilo, ihi, _)) = sublevel(row, vertex(1, self.0.m as i128), None, None, t) else {
                    continue;
                };
                for i in ilo..=ihi {
                    let sign = (i.rem_euclid(2) == 1) != (j < 0);
                    units.push((row(i) as i64, if sign { 2 } else { 0 }));
                }
            }
        }
        unit_series(2, units, Some((order * 2).ceil())).truncate(order)
    }
}

impl Source for StringSum {
    fn leading(&self) -> Result<Leading> {
        Ok(Leading::AtLeast(Exponent::new(self.floor() as i64, 2)))
    }

    fn eval(&self, order: Exponent) -> Result<QSeries> {
        Ok(self.series(order))
    }
}

fn j1_cubed() -> Lazy {
    Lazy::jm(1).pow(3)
}

/// `CC^N_{m,l}` from the definition-side double sum.
pub fn calc_oracle_expr(lbl: &StringLabel) -> Lazy {
    Lazy::source(StringSum(*lbl)) / j1_cubed()
}

/// `CC^N_{m,l}` through `f_{1,1+N,1}`.
pub fn calc_hecke_expr(lbl: &StringLabel) -> Lazy {
    Lazy::hecke(hecke_args(lbl)) / j1_cubed()
}

/// `C^N_{m,l} = q^s CC^N_{m,l}`.
pub fn c_full_expr(lbl: &StringLabel) -> Lazy {
    calc_hecke_expr(lbl).shift(Monomial::q(s_exponent(lbl)))
}

/// `q^(-(m^2-l^2)/(4N)) J_1^3 CC^N_{m,l}`, a theta quotient at levels 1 to 4.
pub fn normalized_expr(lbl: &StringLabel) -> Lazy {
    Lazy::hecke(hecke_args(lbl)).shift(Monomial::q(-normalizer(lbl)))
}

pub fn calc_oracle(lbl: &StringLabel, order: Exponent) -> Result<QSeries> {
    calc_oracle_expr(lbl).eval(order)
}

pub fn calc_hecke(lbl: &StringLabel, order: Exponent) -> Result<QSeries> {
    calc_hecke_expr(lbl).eval(order)
}

pub fn c_full(lbl: &StringLabel, order: Exponent) -> Result<QSeries> {
    c_full_expr(lbl).eval(order)
}

/// Canonical representative under `m -> -m`, `m -> 2N - m` and
/// `(m, l) -> (N - m, N - l)`.
///
/// `m` is first reduced into `0..=N`; of the two labels related by the last
/// map the one with lexicographically least `(l, m)` is returned. The
/// normalised series `q^(-(m^2-l^2)/(4N)) CC^N_{m,l}` is constant on classes.
pub fn symmetry_reduce(lbl: &StringLabel) -> Result<StringLabel> {
    let lbl = StringLabel::new(lbl.level, lbl.ell, lbl.m)?;
    let n = lbl.level;
    let fold = |m: i64| {
        let r = m.rem_euclid(2 * n);
        if r > n {
            2 * n - r
        } else {
            r
        }
    };
    let a = StringLabel { level: n, ell: lbl.ell, m: fold(lbl.m) };
    let b = StringLabel { level: n, ell: n - lbl.ell, m: fold(n - lbl.m) };
    Ok(if (b.ell, b.m) < (a.ell, a.m) { b } else { a })
}
