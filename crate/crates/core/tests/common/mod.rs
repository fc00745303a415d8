#![allow(dead_code)]

use qseries::lazy::Lazy;
use qseries::{Comparison, Exponent, Monomial, QSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `unit * q^(k/den)` with `|k/den| < span`.
pub fn monomial(rng: &mut ChaCha8Rng, dens: &[i64], span: i64) -> Monomial {
    let den = dens[rng.random_range(0..dens.len())];
    let k = rng.random_range(-(span * den) + 1..span * den);
    Monomial::new(rng.random_range(0..4), Exponent::new(k, den))
}

/// A monomial that is not `+-1` or `+-i` times an integral power of `q^base`.
pub fn generic(rng: &mut ChaCha8Rng, dens: &[i64], span: i64, base: Exponent) -> Monomial {
    loop {
        let m = monomial(rng, dens, span);
        if !(m.qexp / base).is_integer() {
            return m;
        }
    }
}

pub fn assert_agree(lhs: &Lazy, rhs: &Lazy, order: impl Into<Exponent>, what: &str) {
    let order = order.into();
    let l = lhs.eval(order).unwrap_or_else(|e| panic!("{what}: lhs: {e}"));
    let r = rhs.eval(order).unwrap_or_else(|e| panic!("{what}: rhs: {e}"));
    assert_series(&l, &r, order, what);
}

pub fn assert_series(l: &QSeries, r: &QSeries, order: Exponent, what: &str) {
    match l.compare(r, order).unwrap_or_else(|e| panic!("{what}: {e}")) {
        Comparison::Equal => {}
        Comparison::FirstMismatch { exponent, lhs, rhs } => {
            panic!("{what}: first mismatch at q^{exponent}: {lhs} vs {rhs}")
        }
    }
}
