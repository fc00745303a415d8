use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// An element `(re + im*i) / den` of the Gaussian rationals.
///
/// Stored over a common positive denominator with `gcd(re, im, den) = 1`,
/// so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coefficient {
    re: BigInt,
    im: BigInt,
    den: BigInt,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient { re: BigInt::zero(), im: BigInt::zero(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient { re: BigInt::from(n), im: BigInt::zero(), den: BigInt::one() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Coefficient { re: n, im: BigInt::zero(), den: BigInt::one() }
    }

    /// `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigInt::from(num), BigInt::zero(), BigInt::from(den))
    }

    /// `i^k`.
    pub fn unit(k: u8) -> Self {
        match k % 4 {
            0 => Self::from_int(1),
            1 => Self::from_parts(0, 1),
            2 => Self::from_int(-1),
            _ => Self::from_parts(0, -1),
        }
    }

    pub fn from_parts(re: i64, im: i64) -> Self {
        Coefficient { re: BigInt::from(re), im: BigInt::from(im), den: BigInt::one() }
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational) -> Self {
        let den = re.denom().lcm(im.denom());
        let r = re.numer() * (&den / re.denom());
        let i = im.numer() * (&den / im.denom());
        Self::new(r, i, den)
    }

    /// `(re + im*i)/den`, normalized. Panics if `den == 0`.
    pub fn new(re: BigInt, im: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut c = Coefficient { re, im, den };
        if c.den.is_negative() {
            c.re = -c.re;
            c.im = -c.im;
            c.den = -c.den;
        }
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.re.is_zero() && self.im.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = self.re.gcd(&self.im).gcd(&self.den);
        if !g.is_one() {
            self.re /= &g;
            self.im /= &g;
            self.den /= &g;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.den.is_one() && self.re.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn re(&self) -> BigRational {
        BigRational::new(self.re.clone(), self.den.clone())
    }

    pub fn im(&self) -> BigRational {
        BigRational::new(self.im.clone(), self.den.clone())
    }

    /// Raw `(re, im, den)` numerators over the common denominator.
    pub fn raw(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.re, &self.im, &self.den)
    }

    /// Multiply by `i^k`.
    pub fn mul_unit(&self, k: u8) -> Self {
        let (re, im) = match k % 4 {
            0 => return self.clone(),
            1 => (-&self.im, self.re.clone()),
            2 => (-&self.re, -&self.im),
            _ => (self.im.clone(), -&self.re),
        };
        Coefficient { re, im, den: self.den.clone() }
    }

    pub fn conj(&self) -> Self {
        Coefficient { re: self.re.clone(), im: -&self.im, den: self.den.clone() }
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re * &self.den, -&self.im * &self.den, norm))
    }

    /// `self += a * b`, avoiding temporaries in the integer real case.
    pub fn add_mul(&mut self, a: &Coefficient, b: &Coefficient) {
        if self.den.is_one() && a.den.is_one() && b.den.is_one() && a.im.is_zero() && b.im.is_zero() {
            self.re += &a.re * &b.re;
            if self.re.is_zero() && self.im.is_zero() {
                self.den = BigInt::one();
            }
            return;
        }
        let p = a * b;
        *self += &p;
    }

    /// `self += i^k * o`.
    pub fn add_unit_mul(&mut self, k: u8, o: &Coefficient) {
        if self.den.is_one() && o.den.is_one() {
            match k % 4 {
                0 => {
                    self.re += &o.re;
                    self.im += &o.im;
                }
                1 => {
                    self.re -= &o.im;
                    self.im += &o.re;
                }
                2 => {
                    self.re -= &o.re;
                    self.im -= &o.im;
                }
                _ => {
                    self.re += &o.im;
                    self.im -= &o.re;
                }
            }
            return;
        }
        *self += &o.mul_unit(k);
    }

    /// Gaussian integer `(c[0] - c[2]) + (c[1] - c[3]) i` from counts of each unit.
    pub fn from_unit_counts(c: [i64; 4]) -> Self {
        Self::from_parts(c[0] - c[2], c[1] - c[3])
    }

    /// `self += i^k`, the hot path of lacunary sum enumerations.
    pub fn add_unit(&mut self, k: u8) {
        let (dr, di): (i32, i32) = match k % 4 {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        if self.den.is_one() {
            self.re += dr;
            self.im += di;
        } else {
            self.re += &self.den * dr;
            self.im += &self.den * di;
            self.normalize();
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Coefficient::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Default for Coefficient {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for Coefficient {
    fn from(r: BigRational) -> Self {
        Self::new(r.numer().clone(), BigInt::zero(), r.denom().clone())
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, o: &Coefficient) -> Coefficient {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, o: &Coefficient) {
        if self.den == o.den {
            self.re += &o.re;
            self.im += &o.im;
        } else {
            self.re = &self.re * &o.den + &o.re * &self.den;
            self.im = &self.im * &o.den + &o.im * &self.den;
            self.den *= &o.den;
        }
        self.normalize();
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, o: &Coefficient) {
        *self += &(-o);
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, o: &Coefficient) -> Coefficient {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, o: &Coefficient) -> Coefficient {
        if self.im.is_zero() && o.im.is_zero() {
            return Coefficient::new(&self.re * &o.re, BigInt::zero(), &self.den * &o.den);
        }
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Coefficient::new(re, im, &self.den * &o.den)
    }
}

impl<'a> Div<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Coefficient) -> Coefficient {
        self * &o.inv().expect("division by zero coefficient")
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { re: -&self.re, im: -&self.im, den: self.den.clone() }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { re: -self.re, im: -self.im, den: self.den }
    }
}

fn fmt_rational(f: &mut fmt::Formatter<'_>, n: &BigInt, d: &BigInt) -> fmt::Result {
    let g = n.gcd(d);
    let (n, d) = (n / &g, d / &g);
    if d.is_one() {
        write!(f, "{n}")
    } else {
        write!(f, "{n}/{d}")
    }
}

/// Real coefficients print as `a` or `a/b`; others as `(a + b*i)`.
impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(f, &self.re, &self.den);
        }
        if self.re.is_zero() {
            fmt_rational(f, &self.im, &self.den)?;
            return write!(f, "*i");
        }
        write!(f, "(")?;
        fmt_rational(f, &self.re, &self.den)?;
        if self.im.is_negative() {
            write!(f, " - ")?;
            fmt_rational(f, &-&self.im, &self.den)?;
        } else {
            write!(f, " + ")?;
            fmt_rational(f, &self.im, &self.den)?;
        }
        write!(f, "*i)")
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
