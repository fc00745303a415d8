use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An exact rational power of q.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent(Ratio<i64>);

impl Exponent {
    pub const ZERO: Exponent = Exponent(Ratio::new_raw(0, 1));
    pub const ONE: Exponent = Exponent(Ratio::new_raw(1, 1));

    /// `num/den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Exponent(Ratio::new(num, den))
    }

    pub fn int(n: i64) -> Self {
        Exponent(Ratio::from_integer(n))
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(self) -> bool {
        self.denom() == 1
    }

    pub fn is_zero(self) -> bool {
        self.numer() == 0
    }

    pub fn is_positive(self) -> bool {
        self.numer() > 0
    }

    pub fn is_negative(self) -> bool {
        self.numer() < 0
    }

    pub fn floor(self) -> i64 {
        Integer::div_floor(&self.numer(), &self.denom())
    }

    pub fn ceil(self) -> i64 {
        -Integer::div_floor(&-self.numer(), &self.denom())
    }

    pub fn abs(self) -> Self {
        Exponent(self.0.abs())
    }

    pub fn recip(self) -> Self {
        Exponent(self.0.recip())
    }

    /// Whether `self` is an integer multiple of `step` (which must be nonzero).
    pub fn is_multiple_of(self, step: Exponent) -> bool {
        (self / step).is_integer()
    }

    /// `self * k` exactly, as a count of lattice steps `1/den`.
    /// Panics if `den` is not a multiple of the denominator.
    pub fn to_lattice(self, den: i64) -> i64 {
        debug_assert_eq!(den % self.denom(), 0);
        self.numer() * (den / self.denom())
    }

    pub fn from_lattice(k: i64, den: i64) -> Self {
        Exponent::new(k, den)
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::int(n)
    }
}

impl From<Ratio<i64>> for Exponent {
    fn from(r: Ratio<i64>) -> Self {
        Exponent(r)
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, o: Exponent) -> Exponent {
        Exponent(self.0 + o.0)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, o: Exponent) -> Exponent {
        Exponent(self.0 - o.0)
    }
}

impl Mul for Exponent {
    type Output = Exponent;
    fn mul(self, o: Exponent) -> Exponent {
        Exponent(self.0 * o.0)
    }
}

impl Mul<i64> for Exponent {
    type Output = Exponent;
    fn mul(self, k: i64) -> Exponent {
        Exponent(self.0 * k)
    }
}

impl Div for Exponent {
    type Output = Exponent;
    fn div(self, o: Exponent) -> Exponent {
        Exponent(self.0 / o.0)
    }
}

impl Div<i64> for Exponent {
    type Output = Exponent;
    fn div(self, k: i64) -> Exponent {
        Exponent(self.0 / k)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl AddAssign for Exponent {
    fn add_assign(&mut self, o: Exponent) {
        self.0 += o.0;
    }
}

impl SubAssign for Exponent {
    fn sub_assign(&mut self, o: Exponent) {
        self.0 -= o.0;
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational number: {0:?}")]
pub struct ParseExponentError(pub String);

impl FromStr for Exponent {
    type Err = ParseExponentError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseExponentError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| err())?;
                let d: i64 = d.trim().parse().map_err(|_| err())?;
                if d == 0 {
                    return Err(err());
                }
                Ok(Exponent::new(n, d))
            }
            None => s.parse().map(Exponent::int).map_err(|_| err()),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_ceil() {
        assert_eq!(Exponent::new(-7, 2).floor(), -4);
        assert_eq!(Exponent::new(-7, 2).ceil(), -3);
        assert_eq!(Exponent::new(7, 2).floor(), 3);
        assert_eq!(Exponent::int(3).ceil(), 3);
    }

    #[test]
    fn parse_and_display() {
        let e: Exponent = "-6/4".parse().unwrap();
        assert_eq!(e, Exponent::new(-3, 2));
        assert_eq!(e.to_string(), "-3/2");
        assert!("1/0".parse::<Exponent>().is_err());
        assert!("x".parse::<Exponent>().is_err());
    }

    #[test]
    fn lattice_roundtrip() {
        let e = Exponent::new(5, 12);
        assert_eq!(e.to_lattice(24), 10);
        assert_eq!(Exponent::from_lattice(10, 24), e);
    }
}
