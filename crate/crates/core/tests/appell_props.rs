mod common;

use common::{assert_agree, assert_series, generic, rng};
use qseries::appell::{appell_m, AppellArgs};
use qseries::lazy::Lazy;
use qseries::theta::jtheta;
use qseries::{Coefficient, Exponent, Monomial, QSeries};
use rand::Rng;

const ORDER: i64 = 25;

/// A valid `(x, z)` pair for `m(x, q, z)`; `z` lies in the strip `0 <= qexp < 1`.
fn sample(r: &mut rand_chacha::ChaCha8Rng) -> (Monomial, Monomial) {
    loop {
        let x = generic(r, &[2, 3, 4, 5], 1, Exponent::ONE);
        let den = [2, 3, 4, 5][r.random_range(0..4)];
        let z = Monomial::new(r.random_range(0..4), Exponent::new(r.random_range(0..den), den));
        if AppellArgs::new(x, Exponent::ONE, z).is_ok() {
            return (x, z);
        }
    }
}

/// `m(x, q, z)` from the Lerch sum, every geometric series expanded by hand.
fn lerch_sum(x: Monomial, z: Monomial, order: Exponent) -> QSeries {
    let mut terms = Vec::new();
    for r in -80i64..80 {
        let p = Exponent::int(r * (r - 1) / 2) + z.qexp * r;
        let lead = Coefficient::unit((2 * r + z.unit as i64 * r).rem_euclid(4) as u8);
        let w = Monomial::q(r - 1) * x * z;
        let d = w.qexp;
        if d.is_zero() {
            let one_minus_w = &Coefficient::one() - &Coefficient::unit(w.unit);
            terms.push((p, &lead / &one_minus_w));
        } else if d.is_positive() {
            for k in 0i64.. {
                let e = p + d * k;
                if e >= order {
                    break;
                }
                terms.push((e, lead.mul_unit((w.unit as i64 * k).rem_euclid(4) as u8)));
            }
        } else {
            for k in 1i64.. {
                let e = p - d * k;
                if e >= order {
                    break;
                }
                terms.push((e, -lead.mul_unit((-(w.unit as i64) * k).rem_euclid(4) as u8)));
            }
        }
    }
    let num = QSeries::from_terms(terms, Some(order));
    &num * &jtheta(z, Exponent::ONE, order).unwrap().invert().unwrap()
}

#[test]
fn matches_the_lerch_sum() {
    let mut r = rng(11);
    for _ in 0..15 {
        let (x, z) = sample(&mut r);
        let order = Exponent::int(ORDER);
        let got = appell_m(&AppellArgs::new(x, Exponent::ONE, z).unwrap(), order).unwrap();
        let want = lerch_sum(x, z, order + Exponent::int(15));
        assert_series(&got, &want, order, &format!("m({x}, q, {z})"));
    }
}

#[test]
fn functional_equations() {
    let mut r = rng(12);
    let j = |x: Monomial| Lazy::j(x, 1);
    for _ in 0..10 {
        let (x, z) = sample(&mut r);
        let (_, z0) = sample(&mut r);
        let m = |x: Monomial, z: Monomial| Lazy::appell(x, 1, z).unwrap();
        let at = format!("x={x}, z={z}");
        assert_agree(&m(x, z), &m(x, Monomial::q(1) * z), ORDER, &format!("z-periodicity {at}"));
        assert_agree(&m(x, z), &m(x.inv(), z.inv()).shift(x.inv()), ORDER, &format!("inversion {at}"));
        assert_agree(&m(Monomial::q(1) * x, z), &(Lazy::one() - m(x, z).shift(x)), ORDER, &format!("x-shift {at}"));
        if AppellArgs::new(x, Exponent::ONE, z0).is_err() {
            continue;
        }
        let num = Lazy::jm(1).pow(3) * j(z * z0.inv()) * j(x * z0 * z);
        let den = Lazy::product([j(z0), j(z), j(x * z0), j(x * z)]);
        assert_agree(&(m(x, z) - m(x, z0)), &(num / den).shift(z0), ORDER, &format!("changing z {at}, z0={z0}"));
    }
}

#[test]
fn truncation_is_termwise() {
    let mut r = rng(13);
    for _ in 0..15 {
        let (x, z) = sample(&mut r);
        let args = AppellArgs::new(x, Exponent::ONE, z).unwrap();
        let order = Exponent::int(ORDER);
        let long = appell_m(&args, order + Exponent::int(10)).unwrap().truncate(order);
        assert_eq!(long, appell_m(&args, order).unwrap(), "m({x}, q, {z})");
    }
}

#[test]
fn poles_are_rejected() {
    assert!(AppellArgs::new(Monomial::q(1), Exponent::ONE, Monomial::q(2)).is_err());
    assert!(AppellArgs::new(Monomial::q(Exponent::new(1, 2)), Exponent::ONE, Monomial::q(Exponent::new(1, 2))).is_err());
    assert!(AppellArgs::new(Monomial::minus_one(), Exponent::ONE, Monomial::minus_one()).is_err());
}
