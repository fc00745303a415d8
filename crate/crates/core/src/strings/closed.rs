//! Closed forms: theta sides of the level 1 to 4 evaluations, the splitting
//! identities for even level, and the eta-quotient examples.

use super::{c_full_expr, s_exponent, StringLabel};
use crate::error::{Error, Result};
use crate::hecke::HeckeArgs;
use crate::lazy::Lazy;
use crate::series::{Coefficient, Exponent, Monomial};
use std::fmt;
use std::str::FromStr;

fn q(n: i64, d: i64) -> Monomial {
    Monomial::q(Exponent::new(n, d))
}

fn half() -> Coefficient {
    Coefficient::from_ratio(1, 2)
}

/// The `i`-th theta quotient tabulated at `level`.
pub fn level_theta(level: i64, i: usize) -> Result<Lazy> {
    let j1 = Lazy::jm(1);
    let t = match (level, i) {
        (1, 0) => j1.pow(2),
        (2, 0) => Lazy::jam(1, 2) * Lazy::jbar(3, 8),
        (2, 1) => (Lazy::jam(1, 2) * Lazy::jbar(1, 8)).shift(q(1, 2)),
        (2, 2) => j1 * Lazy::jm(2),
        (3, 0) => j1 * (Lazy::jam(8, 15) - Lazy::jam(2, 15).shift_q(1)),
        (3, 1) => j1 * Lazy::jam(6, 15),
        (3, 2) => (j1 * (Lazy::jam(11, 15) + Lazy::jam(1, 15).shift_q(1))).shift(q(1, 3)),
        (3, 3) => (j1 * Lazy::jam(3, 15)).shift(q(2, 3)),
        (4, 0) => (&j1 * &Lazy::jbar(3, 6) + &j1 * &Lazy::jam(1, 2)).scale(half()),
        (4, 1) => (&j1 * &Lazy::jbar(3, 6) - &j1 * &Lazy::jam(1, 2)).scale(half()),
        (4, 2) => (j1 * Lazy::jbar(6, 24)).shift(q(3, 4)),
        (4, 3) => j1 * Lazy::jbar(3, 8),
        (4, 4) => (j1 * Lazy::jbar(1, 8)).shift(q(1, 2)),
        (4, 5) => (j1 * Lazy::jbar(1, 6)).shift(q(1, 4)),
        (4, 6) => Lazy::jam(1, 4) * Lazy::jam(6, 12),
        (1..=4, _) => return Err(Error::InvalidArgument(format!("no theta {i} at level {level}"))),
        _ => return Err(Error::UnsupportedLevel(level)),
    };
    Ok(t)
}

/// Index into [`level_theta`] for a label with `0 <= m < 2N`.
pub fn level_theta_index(lbl: &StringLabel) -> Result<usize> {
    let (n, l, m) = (lbl.level, lbl.ell, lbl.m);
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedLevel(n));
    }
    let lbl = StringLabel::new(n, l, m)?;
    if !(0..2 * n).contains(&lbl.m) {
        return Err(Error::InvalidLabel { level: n, ell: l, m, reason: "m must lie in 0..2N" });
    }
    Ok(match (n, l, m) {
        (1, _, _) => 0,
        (2, 0, 0) | (2, 2, 2) => 0,
        (2, 0, 2) | (2, 2, 0) => 1,
        (2, 1, _) => 2,
        (3, 0, 0) | (3, 3, 3) => 0,
        (3, 0, _) | (3, 3, _) => 3,
        (3, 1, 3) | (3, 2, 0) => 2,
        (3, 1, _) | (3, 2, _) => 1,
        (4, 0, 0) | (4, 4, 4) => 0,
        (4, 0, 4) | (4, 4, 0) => 1,
        (4, 0, _) | (4, 4, _) => 2,
        (4, 1, 1) | (4, 1, 7) | (4, 3, 3) | (4, 3, 5) => 3,
        (4, 1, _) | (4, 3, _) => 4,
        (4, 2, 0) | (4, 2, 4) => 5,
        (4, 2, _) => 6,
        _ => unreachable!("label checked above"),
    })
}

/// The closed form of `q^(-(m^2-l^2)/(4N)) J_1^3 CC^N_{m,l}` for `N <= 4`, `0 <= m < 2N`.
pub fn level_theta_side(lbl: &StringLabel) -> Result<Lazy> {
    level_theta(lbl.level, level_theta_index(lbl)?)
}

/// The three string function identities at even level `2K` obtained from
/// `f_{K+1,K+1,1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitRelation {
    /// `C^{2K}_{m,l} +- C^{2K}_{2K-m,l}`.
    Split { k: i64, m: i64, ell: i64, plus: bool },
    /// `C^{2K}_{m,K}`.
    MiddleL { k: i64, m: i64 },
    /// `C^{2K}_{K,l}` for `K = l (mod 2)`.
    MiddleM { k: i64, ell: i64 },
}

fn fkk1(k: i64, x: Monomial, y: Monomial) -> Lazy {
    Lazy::hecke(HeckeArgs::new(k + 1, k + 1, 1, x, y, Exponent::ONE).expect("positive coefficients"))
}

fn label(level: i64, ell: i64, m: i64) -> Result<StringLabel> {
    if (m - ell).rem_euclid(2) != 0 {
        return Err(Error::InvalidParity(format!("m = {m} and l = {ell} differ in parity")));
    }
    StringLabel::new(level, ell, m)
}

impl SplitRelation {
    fn check(&self) -> Result<()> {
        let k = match *self {
            SplitRelation::Split { k, .. } | SplitRelation::MiddleL { k, .. } | SplitRelation::MiddleM { k, .. } => k,
        };
        if k < 1 {
            return Err(Error::InvalidArgument(format!("K must be positive, got {k}")));
        }
        match *self {
            SplitRelation::Split { k, m, ell, .. } => label(2 * k, ell, m).map(|_| ()),
            SplitRelation::MiddleL { k, m } => label(2 * k, k, m).map(|_| ()),
            SplitRelation::MiddleM { k, ell } => {
                if (k - ell).rem_euclid(2) != 0 {
                    return Err(Error::InvalidParity(format!("K = {k} and l = {ell} differ in parity")));
                }
                label(2 * k, ell, k).map(|_| ())
            }
        }
    }

    /// The string function side, built from [`c_full_expr`].
    pub fn lhs(&self) -> Result<Lazy> {
        self.check()?;
        Ok(match *self {
            SplitRelation::Split { k, m, ell, plus } => {
                let a = c_full_expr(&StringLabel::new(2 * k, ell, m)?);
                let b = c_full_expr(&StringLabel::new(2 * k, ell, 2 * k - m)?);
                if plus {
                    a + b
                } else {
                    a - b
                }
            }
            SplitRelation::MiddleL { k, m } => c_full_expr(&StringLabel::new(2 * k, k, m)?),
            SplitRelation::MiddleM { k, ell } => c_full_expr(&StringLabel::new(2 * k, ell, k)?),
        })
    }

    /// The double-sum side.
    pub fn rhs(&self) -> Result<Lazy> {
        self.check()?;
        let cube = Lazy::jm(1).pow(3);
        let (s, body) = match *self {
            SplitRelation::Split { k, m, ell, plus } => {
                let sign = if plus { Monomial::ONE } else { Monomial::minus_one() };
                let first = fkk1(k, sign * q(2 + k + ell, 2), q(2 + m + ell, 2));
                let second = fkk1(k, sign * q(2 + 3 * k - ell, 2), q(2 + 2 * k + m - ell, 2)).shift(sign * q(k - ell, 2));
                (s_exponent(&StringLabel::new(2 * k, ell, m)?), first + second)
            }
            SplitRelation::MiddleL { k, m } => {
                (s_exponent(&StringLabel::new(2 * k, k, m)?), fkk1(k, Monomial::q(k + 1), q(2 + m + k, 2)))
            }
            SplitRelation::MiddleM { k, ell } => {
                (s_exponent(&StringLabel::new(2 * k, ell, k)?), fkk1(k, q(2 + k + ell, 2), q(2 - k + ell, 2)))
            }
        };
        Ok((body / cube).shift(Monomial::q(s)))
    }
}

/// Eta-quotient string function identities at levels 2, 3 and 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EtaIdentity {
    /// `C^2_{0,0} - C^2_{2,0} = eta(tau)^-2 eta(tau/2)`.
    Level2,
    /// `C^3_{2,0} = eta(tau)^-2 q^(27/40) prod_{n != +-2 (5)} (1 - q^(3n))`.
    Level3Single,
    /// `C^3_{0,0} - C^3_{2,0} = eta(tau)^-2 q^(1/120) prod_{n != +-1 (5)} (1 - q^(n/3))`.
    Level3Even,
    /// `C^3_{1,1} - C^3_{3,1} = eta(tau)^-2 q^(3/40) prod_{n != +-2 (5)} (1 - q^(n/3))`.
    Level3Odd,
    /// `C^4_{0,0} - 2C^4_{2,0} + C^4_{4,0} + 2C^4_{0,2} - 2C^4_{2,2} = eta(tau)^-2 eta(tau/6)^-1 eta(tau/12)^2`.
    Level4,
}

impl EtaIdentity {
    pub const ALL: [EtaIdentity; 5] = [EtaIdentity::Level2, EtaIdentity::Level3Single, EtaIdentity::Level3Even, EtaIdentity::Level3Odd, EtaIdentity::Level4];

    /// `prod_{n >= 1, n mod 5 in residues} (1 - q^(step n))`.
    fn restricted(step: Exponent, residues: [i64; 3]) -> Lazy {
        Lazy::product(residues.map(|r| Lazy::poch(Monomial::q(step * r), step * 5, None)))
    }

    pub fn eta_side(self) -> Lazy {
        let lead = Lazy::eta(1).pow(-2);
        let third = Exponent::new(1, 3);
        match self {
            EtaIdentity::Level2 => lead * Lazy::eta(Exponent::new(1, 2)),
            EtaIdentity::Level3Single => (lead * Self::restricted(Exponent::int(3), [1, 4, 5])).shift(q(27, 40)),
            EtaIdentity::Level3Even => (lead * Self::restricted(third, [2, 3, 5])).shift(q(1, 120)),
            EtaIdentity::Level3Odd => (lead * Self::restricted(third, [1, 4, 5])).shift(q(3, 40)),
            EtaIdentity::Level4 => {
                lead * Lazy::eta(Exponent::new(1, 6)).pow(-1) * Lazy::eta(Exponent::new(1, 12)).pow(2)
            }
        }
    }

    /// The combination of string functions on the left.
    pub fn string_side(self) -> Lazy {
        let c = |n, l, m| c_full_expr(&StringLabel::new(n, l, m).expect("valid label"));
        match self {
            EtaIdentity::Level2 => c(2, 0, 0) - c(2, 0, 2),
            EtaIdentity::Level3Single => c(3, 0, 2),
            EtaIdentity::Level3Even => c(3, 0, 0) - c(3, 0, 2),
            EtaIdentity::Level3Odd => c(3, 1, 1) - c(3, 1, 3),
            EtaIdentity::Level4 => Lazy::sum([
                c(4, 0, 0),
                c(4, 0, 2).scale_int(-2),
                c(4, 0, 4),
                c(4, 2, 0).scale_int(2),
                c(4, 2, 2).scale_int(-2),
            ]),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EtaIdentity::Level2 => "N=2/C00-C20",
            EtaIdentity::Level3Single => "N=3/C20",
            EtaIdentity::Level3Even => "N=3/C00-C20",
            EtaIdentity::Level3Odd => "N=3/C11-C31",
            EtaIdentity::Level4 => "N=4/C00-2C20+C40+2C02-2C22",
        }
    }
}

impl fmt::Display for EtaIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EtaIdentity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        EtaIdentity::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown eta identity {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::super::normalized_expr;
    use super::*;

    fn same(a: &Lazy, b: &Lazy, order: i64) -> bool {
        let x = a.eval(order).unwrap();
        let y = b.eval(order).unwrap();
        x.equal_to(&y, Exponent::int(order)).unwrap()
    }

    #[test]
    fn level_tables() {
        for n in 1..=4 {
            for l in StringLabel::all(n) {
                assert!(same(&normalized_expr(&l), &level_theta_side(&l).unwrap(), 10), "{l}");
            }
        }
        assert_eq!(level_theta_index(&StringLabel::new(5, 0, 0).unwrap()), Err(Error::UnsupportedLevel(5)));
    }

    #[test]
    fn splitting_identities() {
        for v in [
            SplitRelation::Split { k: 2, m: 0, ell: 0, plus: false },
            SplitRelation::Split { k: 2, m: 1, ell: 1, plus: true },
            SplitRelation::Split { k: 1, m: 0, ell: 2, plus: true },
            SplitRelation::MiddleL { k: 2, m: 0 },
            SplitRelation::MiddleM { k: 2, ell: 2 },
        ] {
            assert!(same(&v.lhs().unwrap(), &v.rhs().unwrap(), 8), "{v:?}");
        }
        assert!(matches!(SplitRelation::MiddleM { k: 2, ell: 1 }.rhs(), Err(Error::InvalidParity(_))));
    }

    #[test]
    fn eta_examples() {
        for id in EtaIdentity::ALL {
            assert!(same(&id.string_side(), &id.eta_side(), 6), "{id}");
        }
    }
}
