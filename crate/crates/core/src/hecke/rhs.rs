//! Theta and Appell-Lerch expressions equal to Hecke-type double sums.
//!
//! Every builder takes the modulus `q^base`: the formulas are written in a
//! variable `q` and evaluated at `q -> q^base`, while the arguments `x`, `y`
//! are monomials in the true `q`. Results are [`Lazy`] expressions, so the
//! precision of nested theta quotients is tracked automatically.

use super::HeckeArgs;
use crate::error::{Error, Result};
use crate::lattice::binom2;
use crate::lazy::Lazy;
use crate::series::{Exponent, Monomial};

/// The variable `q` of a formula, standing for `q^base`.
#[derive(Clone, Copy, Debug)]
struct Var(Exponent);

impl Var {
    fn q(self, k: impl Into<Exponent>) -> Monomial {
        Monomial::q(self.0 * k.into())
    }

    /// `j(arg; q^k)`.
    fn j(self, arg: Monomial, k: i64) -> Lazy {
        Lazy::j(arg, self.0 * k)
    }

    /// `j(arg; q^k)` destined for a denominator.
    fn jden(self, arg: Monomial, k: i64) -> Result<Lazy> {
        if arg.is_integral_power_of(self.0 * k) {
            return Err(Error::ThetaZeroDenominator);
        }
        Ok(self.j(arg, k))
    }

    fn jam(self, a: i64, m: i64) -> Lazy {
        self.j(self.q(a), m)
    }

    fn jbar(self, a: i64, m: i64) -> Lazy {
        self.j(-self.q(a), m)
    }

    fn jm(self, m: i64) -> Lazy {
        Lazy::jm(self.0 * m)
    }

    /// `m(x, q^k, z)`.
    fn m(self, x: Monomial, k: i64, z: Monomial) -> Result<Lazy> {
        Lazy::appell(x, self.0 * k, z)
    }

    /// `c * m(x, q^k, z)`, identically zero when the theta coefficient
    /// `j(c_arg; q^c_mod)` vanishes, whether or not `m` is defined there.
    fn theta_times_m(self, c_arg: Monomial, c_mod: i64, x: Monomial, k: i64, z: Monomial) -> Result<Lazy> {
        if c_arg.is_integral_power_of(self.0 * c_mod) {
            return Ok(Lazy::zero());
        }
        Ok(self.j(c_arg, c_mod) * self.m(x, k, z)?)
    }
}

fn mono(m: Monomial) -> Lazy {
    Lazy::monomial(m)
}

/// Sum of a nonempty list of fallible terms.
fn total(items: Vec<Result<Lazy>>) -> Result<Lazy> {
    Ok(Lazy::sum(items.into_iter().collect::<Result<Vec<_>>>()?))
}

/// Right side of the index shift
/// `f(x, y) = (-x)^R (-y)^S q^(a C(R,2) + b R S + c C(S,2)) f(q^(aR+bS) x, q^(bR+cS) y)
///  + sum_{m<R} (-x)^m q^(a C(m,2)) j(q^(mb) y; q^c) + sum_{m<S} (-y)^m q^(c C(m,2)) j(q^(mb) x; q^a)`.
///
/// For negative `R` the sum `sum_{m=0}^{R-1}` means `-sum_{m=R}^{-1}`, and likewise for `S`.
pub fn f_shift_rhs(h: &HeckeArgs, r: i64, s: i64) -> Lazy {
    let v = Var(h.base);
    let (a, b, c) = (h.a, h.b, h.c);
    let (x, y) = (h.x, h.y);
    let pre = (-x).pow(r) * (-y).pow(s) * v.q(a * binom2(r) as i64 + b * r * s + c * binom2(s) as i64);
    let shifted = h.with_args(v.q(a * r + b * s) * x, v.q(b * r + c * s) * y);
    let mut terms = vec![Lazy::hecke(shifted).shift(pre)];
    let range = |n: i64| if n >= 0 { (0..n, 1) } else { (n..0, -1) };
    let (rr, rsign) = range(r);
    for m in rr {
        let k = (-x).pow(m) * v.q(a * binom2(m) as i64);
        terms.push(v.j(v.q(m * b) * y, c).shift(k).scale_int(rsign));
    }
    let (ss, ssign) = range(s);
    for m in ss {
        let k = (-y).pow(m) * v.q(c * binom2(m) as i64);
        terms.push(v.j(v.q(m * b) * x, a).shift(k).scale_int(ssign));
    }
    Lazy::sum(terms)
}

/// Right side of `f(x, y) = -q^(a+b+c)/(x y) f(q^(2a+b)/x, q^(2c+b)/y)`.
pub fn f_flip_rhs(h: &HeckeArgs) -> Lazy {
    let v = Var(h.base);
    let flipped = h.with_args(v.q(2 * h.a + h.b) * h.x.inv(), v.q(2 * h.c + h.b) * h.y.inv());
    let pre = -(v.q(h.a + h.b + h.c) * (h.x * h.y).inv());
    Lazy::hecke(flipped).shift(pre)
}

/// `g_{1,b,1}(x, y, q, z1, z0) = j(y; q) m(q^(C(b+1,2)-1) x (-y)^(-b), q^(b^2-1), z1)
///  + j(x; q) m(q^(C(b+1,2)-1) y (-x)^(-b), q^(b^2-1), z0)`.
pub fn g_1b1(x: Monomial, y: Monomial, base: Exponent, b: i64, z1: Monomial, z0: Monomial) -> Result<Lazy> {
    if b < 2 {
        return Err(Error::InvalidArgument(format!("g_{{1,b,1}} needs b >= 2, got {b}")));
    }
    let v = Var(base);
    let k = binom2(b + 1) as i64 - 1;
    let modulus = b * b - 1;
    total(vec![
        v.theta_times_m(y, 1, v.q(k) * x * (-y).pow(-b), modulus, z1),
        v.theta_times_m(x, 1, v.q(k) * y * (-x).pow(-b), modulus, z0),
    ])
}

/// `h_{n,n,1}(x, y, q, z1, z0) = j(x; q^n) m(-q^(n-1) y/x, q^(n-1), z1)
///  + j(y; q) m(q^C(n,2) x (-y)^(-n), q^(n^2-n), z0)`.
pub fn h_nn1(x: Monomial, y: Monomial, base: Exponent, n: i64, z1: Monomial, z0: Monomial) -> Result<Lazy> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("h_{{n,n,1}} needs n >= 2, got {n}")));
    }
    let v = Var(base);
    total(vec![
        v.theta_times_m(x, n, -(v.q(n - 1) * y * x.inv()), n - 1, z1),
        v.theta_times_m(y, 1, v.q(binom2(n) as i64) * x * (-y).pow(-n), n * n - n, z0),
    ])
}

/// The theta correction `theta_p(x, y, q)` accompanying `g_{1,p+1,1}(x, y, q, -1, -1)`.
pub fn theta_p(p: i64, x: Monomial, y: Monomial, base: Exponent) -> Result<Lazy> {
    let v = Var(base);
    let big = p * p * (2 + p);
    let mut terms = Vec::new();
    for r in 0..p {
        for s in 0..p {
            let pre = v.q(binom2(r) as i64 + (1 + p) * r * (s + 1) + binom2(s + 1) as i64)
                * (-x).pow(r)
                * (-y).pow(s + 1);
            let num = Lazy::product([
                v.jm(big).pow(3),
                v.j(-(v.q(p * (s - r)) * x * y.inv()), p * p),
                v.j(v.q(p * (2 + p) * (r + s) + p * (1 + p)) * x.pow(p) * y.pow(p), big),
            ]);
            let den = v.jden(v.q(p * (2 + p) * r + p * (1 + p) / 2) * (-y).pow(1 + p) * (-x).inv(), big)?
                * v.jden(v.q(p * (2 + p) * s + p * (1 + p) / 2) * (-x).pow(1 + p) * (-y).inv(), big)?;
            terms.push((num / den).shift(pre));
        }
    }
    Ok(Lazy::sum(terms))
}

/// `g_{1,p+1,1}(x, y, q, -1, -1) + theta_p(x, y, q) / Jbar_{0, p(2+p)}`, equal to `f_{1,p+1,1}(x, y, q)`.
pub fn g_expansion_rhs(p: i64, x: Monomial, y: Monomial, base: Exponent) -> Result<Lazy> {
    if p < 1 {
        return Err(Error::InvalidArgument(format!("p must be positive, got {p}")));
    }
    let v = Var(base);
    let g = g_1b1(x, y, base, p + 1, Monomial::minus_one(), Monomial::minus_one())?;
    Ok(g + theta_p(p, x, y, base)? / v.jbar(0, p * (2 + p)))
}

/// The theta correction `theta_n(x, y, q)` accompanying `h_{n,n,1}(x, y, q, -1, -1)`.
pub fn theta_n(n: i64, x: Monomial, y: Monomial, base: Exponent) -> Result<Lazy> {
    let v = Var(base);
    let nn = n * (n - 1);
    let mut terms = Vec::new();
    for d in 0..n {
        let e = (n - 1) * (d + 1);
        let num = Lazy::product([
            v.j(v.q(e) * y, n),
            v.j(-(v.q(nn - e) * x * y.inv()), nn),
            v.jm(nn).pow(3),
            v.j(v.q(binom2(n) as i64 + e) * (-y).pow(1 - n), nn),
        ]);
        let den = v.jden(-(v.q(binom2(n) as i64) * x * (-y).pow(-n)), nn)? * v.jden(v.q(e) * x.inv() * y, nn)?;
        terms.push((num / den).shift(v.q((n - 1) * binom2(d + 1) as i64)));
    }
    Ok(Lazy::sum(terms))
}

/// `h_{n,n,1}(x, y, q, -1, -1) - theta_n(x, y, q) / (Jbar_{0,n-1} Jbar_{0,n^2-n})`, equal to `f_{n,n,1}(x, y, q)`.
pub fn h_expansion_rhs(n: i64, x: Monomial, y: Monomial, base: Exponent) -> Result<Lazy> {
    let v = Var(base);
    let h = h_nn1(x, y, base, n, Monomial::minus_one(), Monomial::minus_one())?;
    let den = v.jbar(0, n - 1) * v.jbar(0, n * n - n);
    Ok(h - theta_n(n, x, y, base)? / den)
}

/// `m(X, q^k, z1) - m(X, q^k, z0)` as a theta quotient.
fn m_difference(v: Var, xx: Monomial, k: i64, z1: Monomial, z0: Monomial) -> Result<Lazy> {
    let num = Lazy::product([
        mono(z0),
        v.jm(k).pow(3),
        v.j(z1 * z0.inv(), k),
        v.j(xx * z0 * z1, k),
    ]);
    let den = Lazy::product([v.jden(z0, k)?, v.jden(z1, k)?, v.jden(xx * z0, k)?, v.jden(xx * z1, k)?]);
    Ok(num / den)
}

/// The theta part `Theta_{1,p}` in `f_{1,p+1,1} = g_{1,p+1,1}(x, y, q, y/x, x/y) - Theta_{1,p}`.
///
/// For `p = 1` it is obtained from the `z = -1` form by moving the Appell-Lerch
/// parameters from `-1` to `y/x` and `x/y`.
pub fn big_theta(p: i64, x: Monomial, y: Monomial, base: Exponent) -> Result<Lazy> {
    let v = Var(base);
    let (xy, yx) = (x * y, y * x.inv());
    match p {
        1 => {
            let k = 3;
            let mut parts = Vec::new();
            if !y.is_integral_power_of(base) {
                let d = m_difference(v, v.q(2) * x * y.pow(-2), k, yx, Monomial::minus_one())?;
                parts.push(v.j(y, 1) * d);
            }
            if !x.is_integral_power_of(base) {
                let d = m_difference(v, v.q(2) * y * x.pow(-2), k, yx.inv(), Monomial::minus_one())?;
                parts.push(v.j(x, 1) * d);
            }
            parts.push(-(theta_p(1, x, y, base)? / v.jbar(0, 3)));
            Ok(Lazy::sum(parts))
        }
        2 => {
            let num = Lazy::product([
                mono(v.q(1) * xy),
                v.jam(2, 4),
                v.jam(8, 16),
                v.j(v.q(3) * xy, 8),
                v.j(v.q(2) * xy.pow(-2), 16),
            ]);
            let den = v.jden(-(v.q(3) * x.pow(2)), 8)? * v.jden(-(v.q(3) * y.pow(2)), 8)?;
            Ok(num / den)
        }
        3 => {
            let pre = Lazy::product([
                mono(v.q(1) * xy),
                v.jm(3),
                v.jm(15),
                v.j(v.q(2) * x, 5),
                v.j(v.q(2) * y, 5),
            ]);
            let den = Lazy::product([
                v.jm(5).pow(2),
                v.jden(v.q(6) * x.pow(3), 15)?,
                v.jden(v.q(6) * y.pow(3), 15)?,
            ]);
            let x2y = x.pow(2) * y;
            let xy2 = x * y.pow(2);
            let brace = v.j(v.q(11) * x2y, 15) * v.j(v.q(11) * xy2, 15)
                - (v.j(v.q(16) * x2y, 15) * v.j(v.q(16) * xy2, 15)).shift(v.q(4) * xy);
            Ok(pre * brace / den)
        }
        4 => {
            let x2y2 = xy.pow(2);
            let s1_head = Lazy::product([
                v.j(v.q(22) * x2y2, 24),
                v.j(-(v.q(12) * yx), 24),
                v.j(v.q(5) * xy, 12),
            ]) / (v.jm(12).pow(3) * v.jm(48));
            let s1_brace = Lazy::product([v.j(-(v.q(10) * x2y2), 24), v.j(v.q(12) * yx.pow(2), 24), v.jm(24).pow(2)])
                + (Lazy::product([
                    v.j(-(v.q(22) * x2y2), 24),
                    (v.j(v.q(12) * yx, 24) * v.j(-yx, 24)).pow(2),
                ]) / v.jm(24))
                .shift(v.q(5) * x.pow(2));
            let s1 = s1_head * s1_brace;
            let s2_head = Lazy::product([v.j(v.q(10) * x2y2, 24), v.j(-yx, 24), v.j(v.q(11) * xy, 12)]) / v.jm(12).pow(2);
            let s2_brace = (Lazy::product([v.j(-(v.q(10) * x2y2), 24), v.j(v.q(12) * yx.pow(2), 24), v.jm(48)])
                / v.jm(24))
            .shift(v.q(2) * y.inv())
                + (v.j(-(v.q(22) * x2y2), 24) * v.j(v.q(24) * yx.pow(2), 48).pow(2) / v.jm(48)).shift(v.q(1) * x);
            let s2 = s2_head * s2_brace;
            let den = v.jden(-(v.q(10) * x.pow(4)), 24)? * v.jden(-(v.q(10) * y.pow(4)), 24)?;
            let brace = v.jam(4, 16) * s1 - (v.jam(8, 16) * s2).shift(v.q(1));
            Ok((brace / den).shift(v.q(1) * xy))
        }
        _ => Err(Error::InvalidArgument(format!("Theta_{{1,p}} is defined for p in 1..=4, got {p}"))),
    }
}

/// `g_{1,p+1,1}(x, y, q, y/x, x/y) - Theta_{1,p}(x, y, q)`, equal to `f_{1,p+1,1}(x, y, q)`.
pub fn big_theta_expansion_rhs(p: i64, x: Monomial, y: Monomial, base: Exponent) -> Result<Lazy> {
    shifted_expansion_rhs(p, 0, x, y, base)
}

/// `g_{1,1+p,1}(x, y, q, q^(l p) y/x, q^(-l p) x/y) - (-x)^l q^C(l,2) Theta_{1,p}(q^l x, q^(l(1+p)) y, q)`,
/// equal to `f_{1,1+p,1}(x, y, q)`.
pub fn shifted_expansion_rhs(p: i64, l: i64, x: Monomial, y: Monomial, base: Exponent) -> Result<Lazy> {
    if !(1..=4).contains(&p) {
        return Err(Error::InvalidArgument(format!("p must lie in 1..=4, got {p}")));
    }
    let v = Var(base);
    let z1 = v.q(l * p) * y * x.inv();
    let g = g_1b1(x, y, base, 1 + p, z1, z1.inv())?;
    let th = big_theta(p, v.q(l) * x, v.q(l * (1 + p)) * y, base)?;
    Ok(g - th.shift((-x).pow(l) * v.q(binom2(l) as i64)))
}
