use super::{Coefficient, Exponent};
use std::fmt;
use std::ops::{Mul, Neg};

/// `i^unit * q^qexp`, the form every substitution argument takes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub unit: u8,
    pub qexp: Exponent,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { unit: 0, qexp: Exponent::ZERO };

    pub fn new(unit: u8, qexp: Exponent) -> Self {
        Monomial { unit: unit % 4, qexp }
    }

    /// `q^e`.
    pub fn q(e: impl Into<Exponent>) -> Self {
        Monomial::new(0, e.into())
    }

    /// `-q^e`.
    pub fn neg_q(e: impl Into<Exponent>) -> Self {
        Monomial::new(2, e.into())
    }

    /// `i^k` with no q-power.
    pub fn unit(k: u8) -> Self {
        Monomial::new(k, Exponent::ZERO)
    }

    pub fn minus_one() -> Self {
        Monomial::unit(2)
    }

    pub fn inv(self) -> Self {
        Monomial::new((4 - self.unit) % 4, -self.qexp)
    }

    pub fn pow(self, n: i64) -> Self {
        let u = (self.unit as i64 * n).rem_euclid(4) as u8;
        Monomial::new(u, self.qexp * n)
    }

    /// Multiply the q-exponent by `r` (the effect of `q -> q^r`).
    pub fn scale_q(self, r: Exponent) -> Self {
        Monomial::new(self.unit, self.qexp * r)
    }

    pub fn coefficient(self) -> Coefficient {
        Coefficient::unit(self.unit)
    }

    /// Whether this is exactly `q^{k*base}` for an integer `k` (a zero of `j(.; q^base)`).
    pub fn is_integral_power_of(self, base: Exponent) -> bool {
        self.unit == 0 && self.qexp.is_multiple_of(base)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, o: Monomial) -> Monomial {
        Monomial::new(self.unit + o.unit, self.qexp + o.qexp)
    }
}

impl Neg for Monomial {
    type Output = Monomial;
    fn neg(self) -> Monomial {
        Monomial::new(self.unit + 2, self.qexp)
    }
}

impl From<Exponent> for Monomial {
    fn from(e: Exponent) -> Self {
        Monomial::q(e)
    }
}

/// Renders in expression-language syntax, e.g. `-q^(1/2)`, `i*q^3`, `-1`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.unit {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        if self.qexp.is_zero() {
            return match self.unit {
                0 => write!(f, "1"),
                2 => write!(f, "-1"),
                _ => write!(f, "{sign}"),
            };
        }
        let star = if self.unit % 2 == 1 { "*" } else { "" };
        write!(f, "{sign}{star}q")?;
        if self.qexp == Exponent::ONE {
            Ok(())
        } else if self.qexp.is_integer() && self.qexp.is_positive() {
            write!(f, "^{}", self.qexp)
        } else {
            write!(f, "^({})", self.qexp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let m = Monomial::new(1, Exponent::new(2, 3));
        assert_eq!(m * m.inv(), Monomial::ONE);
        assert_eq!(m.pow(4), Monomial::q(Exponent::new(8, 3)));
        assert_eq!(m.pow(-1), m.inv());
        assert_eq!(-m, Monomial::new(3, Exponent::new(2, 3)));
    }

    #[test]
    fn rendering() {
        assert_eq!(Monomial::q(1).to_string(), "q");
        assert_eq!(Monomial::neg_q(Exponent::new(1, 2)).to_string(), "-q^(1/2)");
        assert_eq!(Monomial::new(1, Exponent::int(3)).to_string(), "i*q^3");
        assert_eq!(Monomial::new(3, Exponent::int(-3)).to_string(), "-i*q^(-3)");
        assert_eq!(Monomial::minus_one().to_string(), "-1");
    }

    #[test]
    fn theta_zero_detection() {
        assert!(Monomial::q(6).is_integral_power_of(Exponent::int(3)));
        assert!(!Monomial::neg_q(6).is_integral_power_of(Exponent::int(3)));
        assert!(!Monomial::q(Exponent::new(1, 2)).is_integral_power_of(Exponent::ONE));
    }
}
