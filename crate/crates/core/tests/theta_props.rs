mod common;

use common::{assert_agree, assert_series, generic, monomial, rng};
use qseries::lazy::Lazy;
use qseries::theta::{j_split_components, jtheta, jtheta_prod, jtheta_sum, pochhammer};
use qseries::{Coefficient, Execution, Exponent, Monomial, QSeries};
use rand::Rng;

const DENS: &[i64] = &[1, 2, 3, 4, 5, 6];

/// `sum_n (-1)^n q^(base C(n,2)) x^n`, summed term by term over a wide window.
fn bilateral(x: Monomial, base: Exponent, order: Exponent) -> QSeries {
    let terms = (-200i64..200).filter_map(|n| {
        let e = base * (n * (n - 1) / 2) + x.qexp * n;
        let unit = (2 * n + x.unit as i64 * n).rem_euclid(4) as u8;
        (e < order).then(|| (e, Coefficient::unit(unit)))
    });
    QSeries::from_terms(terms, Some(order))
}

fn random_base(r: &mut rand_chacha::ChaCha8Rng) -> Exponent {
    [Exponent::ONE, Exponent::int(2), Exponent::new(1, 2), Exponent::new(3, 2)][r.random_range(0..4)]
}

#[test]
fn theta_matches_its_defining_sum() {
    let mut r = rng(1);
    let order = Exponent::int(25);
    for _ in 0..25 {
        let base = random_base(&mut r);
        let x = monomial(&mut r, DENS, 3);
        let got = jtheta(x, base, order).unwrap();
        assert_series(&got, &bilateral(x, base, order), order, &format!("j({x}; q^{base})"));
    }
}

#[test]
fn triple_product_on_random_points() {
    let mut r = rng(2);
    let order = Exponent::int(25);
    for _ in 0..25 {
        let base = random_base(&mut r);
        let den = DENS[r.random_range(0..DENS.len())];
        // inside the strip 0 <= qexp < base
        let k = r.random_range(0..(base * den).ceil());
        let x = Monomial::new(r.random_range(0..4), Exponent::new(k, den));
        if x.qexp >= base {
            continue;
        }
        let s = jtheta_sum(x, base, order).unwrap();
        let p = jtheta_prod(x, base, order).unwrap();
        assert_series(&s, &p, order, &format!("triple product at x={x}, base={base}"));
    }
}

#[test]
fn euler_pentagonal_oracle() {
    let order = Exponent::int(200);
    let p = pochhammer(Monomial::q(1), Exponent::ONE, None, order).unwrap();
    let pent = (-20i64..=20).map(|k| (Exponent::int(k * (3 * k - 1) / 2), Coefficient::from_int(if k % 2 == 0 { 1 } else { -1 })));
    assert_series(&p, &QSeries::from_terms(pent, Some(order)), order, "(q;q)_inf");
}

#[test]
fn elliptic_transformation() {
    let mut r = rng(3);
    for _ in 0..10 {
        let x = monomial(&mut r, DENS, 2);
        for n in [-2i64, -1, 1, 2] {
            let sign = Monomial::new(if n % 2 == 0 { 0 } else { 2 }, Exponent::int(-n * (n - 1) / 2));
            assert_agree(
                &Lazy::j(Monomial::q(n) * x, 1),
                &Lazy::j(x, 1).shift(sign * x.pow(-n)),
                20,
                &format!("elliptic n={n}, x={x}"),
            );
        }
    }
}

#[test]
fn reflection_and_inversion() {
    let mut r = rng(4);
    for _ in 0..15 {
        let x = monomial(&mut r, DENS, 2);
        assert_agree(&Lazy::j(x, 1), &Lazy::j(Monomial::q(1) * x.inv(), 1), 20, &format!("j(x)=j(q/x), x={x}"));
        assert_agree(
            &Lazy::j(x.inv(), 1),
            &Lazy::j(x, 1).shift(-x.inv()),
            20,
            &format!("j(1/x) = -j(x)/x, x={x}"),
        );
    }
}

#[test]
fn dissection_components_sum_to_theta() {
    let mut r = rng(5);
    for _ in 0..10 {
        let z = monomial(&mut r, DENS, 2);
        for mm in 1..=4 {
            let parts = j_split_components(z, Exponent::ONE, mm);
            let sum = Lazy::sum(parts.iter().map(|c| Lazy::j(c.arg, c.base).shift(c.prefactor)));
            assert_agree(&Lazy::j(z, 1), &sum, 20, &format!("{mm}-dissection at z={z}"));
        }
    }
}

#[test]
fn weierstrass_three_term_relation() {
    let mut r = rng(6);
    let j = |x: Monomial| Lazy::j(x, 1);
    for i in 0..10 {
        let mut pick = || generic(&mut r, &[2, 3, 4, 6], 1, Exponent::ONE);
        let (a, b, c) = (pick(), pick(), pick());
        let d = if i == 0 { Monomial::new(3, Exponent::ZERO) } else { pick() };
        let lhs = Lazy::product([j(a * c), j(a * c.inv()), j(b * d), j(b * d.inv())]);
        let first = Lazy::product([j(a * d), j(a * d.inv()), j(b * c), j(b * c.inv())]);
        let second = Lazy::product([j(a * b), j(a * b.inv()), j(c * d), j(c * d.inv())]);
        assert_agree(&lhs, &(first + second.shift(b * c.inv())), 12, &format!("a={a}, b={b}, c={c}, d={d}"));
    }
}

#[test]
fn large_products_agree_across_execution_modes() {
    let order = Exponent::int(3000);
    let a = jtheta(Monomial::q(Exponent::new(1, 3)), Exponent::ONE, order).unwrap();
    let b = pochhammer(Monomial::neg_q(1), Exponent::new(1, 2), None, order).unwrap();
    assert_eq!(a.mul_with(&b, Execution::Sequential), a.mul_with(&b, Execution::Parallel));
}
