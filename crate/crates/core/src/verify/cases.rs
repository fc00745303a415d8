//! The registered identities. Generic-variable identities appear once per
//! sample point, with the point in the id.

use super::{IdentityCase, Suite};
use crate::error::Result;
use crate::hecke::{
    h_expansion_rhs, f_flip_rhs, f_shift_rhs, big_theta_expansion_rhs, g_expansion_rhs, shifted_expansion_rhs, HeckeArgs,
};
use crate::lazy::Lazy;
use crate::series::{Coefficient, Exponent, Monomial};
use crate::strings::{
    c_full_expr, calc_hecke_expr, calc_oracle_expr, level_theta_side, normalized_expr, normalizer, s_exponent,
    EtaIdentity, SplitRelation, StringLabel,
};
use crate::theta::j_split_components;
use num_integer::Integer;
use std::sync::Arc;

/// Orders in full powers of `q`.
const ORDER: i64 = 30;
const ORDER_FINE: i64 = 10;
const ORDER_APPELL: i64 = 25;
const ORDER_APPELL_EVAL: i64 = 40;
const ORDER_GENERIC: i64 = 20;
const ORDER_ORACLE: i64 = 25;
/// Dissections into modulus q^45 need a long expansion to see every component.
const ORDER_DISSECTION: i64 = 90;

/// Lattices at least this fine use [`ORDER_FINE`].
const FINE_DEN: i64 = 12;

fn q(n: i64, d: i64) -> Monomial {
    Monomial::q(Exponent::new(n, d))
}

fn mq(n: i64, d: i64) -> Monomial {
    Monomial::neg_q(Exponent::new(n, d))
}

fn iq(n: i64, d: i64) -> Monomial {
    Monomial::new(1, Exponent::new(n, d))
}

fn j(x: Monomial, base: i64) -> Lazy {
    Lazy::j(x, base)
}

fn jm(m: i64) -> Lazy {
    Lazy::jm(m)
}

fn jam(a: i64, m: i64) -> Lazy {
    Lazy::jam(a, m)
}

fn jbar(a: i64, m: i64) -> Lazy {
    Lazy::jbar(a, m)
}

fn hecke(a: i64, b: i64, c: i64, x: Monomial, y: Monomial, base: i64) -> Result<Lazy> {
    Ok(Lazy::hecke(HeckeArgs::new(a, b, c, x, y, Exponent::int(base))?))
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// `(-1)^n`.
fn sign(n: i64) -> Monomial {
    Monomial::unit((2 * n).rem_euclid(4) as u8)
}

fn den_of(ms: &[Monomial]) -> i64 {
    ms.iter().fold(1, |a, m| a.lcm(&m.qexp.denom()))
}

fn order_for(den: i64) -> i64 {
    if den >= FINE_DEN {
        ORDER_FINE
    } else {
        ORDER
    }
}

fn point(names: &str, ms: &[Monomial]) -> String {
    names.split(',').zip(ms).map(|(n, m)| format!("{n}={m}")).collect::<Vec<_>>().join(",")
}

struct Registry(Vec<IdentityCase>);

impl Registry {
    #[allow(clippy::too_many_arguments)]
    fn add<L, R>(&mut self, suite: Suite, id: String, den: i64, order: i64, reference: impl Into<String>, lhs: L, rhs: R)
    where
        L: Fn() -> Result<Lazy> + Send + Sync + 'static,
        R: Fn() -> Result<Lazy> + Send + Sync + 'static,
    {
        self.0.push(IdentityCase {
            id: format!("{suite}/{id}"),
            suite,
            lhs: Arc::new(lhs),
            rhs: Arc::new(rhs),
            lattice_den: den,
            default_order: Exponent::int(order),
            reference: reference.into(),
        });
    }
}

pub(super) fn build() -> Vec<IdentityCase> {
    let mut r = Registry(Vec::new());
    notation(&mut r);
    theta(&mut r);
    appell(&mut r);
    hecke_structure(&mut r);
    hecke_evaluations(&mut r);
    string_levels(&mut r);
    string_symmetries(&mut r);
    split_relations(&mut r);
    eta_identities(&mut r);
    r.0
}

fn notation(r: &mut Registry) {
    use Suite::Notation as S;
    for n in [-1, 0, 2] {
        r.add(S, format!("j-zero/x={}", Monomial::q(n)), 1, ORDER, "j(q^n; q) = 0", move || Ok(j(Monomial::q(n), 1)), || {
            Ok(Lazy::zero())
        });
    }
    for m in 1..=3 {
        r.add(
            S,
            format!("Jm/m={m}"),
            1,
            ORDER,
            "J_m = j(q^m; q^(3m)) = (q^m; q^m)_inf",
            move || Ok(jm(m)),
            move || Ok(Lazy::poch(Monomial::q(m), m, None)),
        );
    }
    for (n, d) in [(1, 1), (1, 2)] {
        let rr = Exponent::new(n, d);
        let den = (rr / 24).denom();
        r.add(
            S,
            format!("eta/r={rr}"),
            den,
            order_for(den),
            "eta(r tau) = q^(r/24) J_r",
            move || Ok(Lazy::eta(rr)),
            move || Ok(Lazy::jm(rr).shift_q(rr / 24)),
        );
    }
    for (x, y) in [(q(1, 3), mq(1, 2)), (mq(1, 4), q(2, 3))] {
        let den = den_of(&[x, y]);
        r.add(
            S,
            format!("f-swap/{}", point("x,y", &[x, y])),
            den,
            ORDER_GENERIC,
            "f_{a,b,c}(x, y, q) = f_{c,b,a}(y, x, q)",
            move || hecke(2, 2, 1, x, y, 1),
            move || hecke(1, 2, 2, y, x, 1),
        );
    }
}

fn theta(r: &mut Registry) {
    use Suite::Theta as S;
    for (x, base) in [(q(1, 3), 1), (mq(2, 5), 1), (iq(1, 2), 1), (q(3, 2), 2)] {
        let den = den_of(&[x]);
        r.add(
            S,
            format!("triple-product/x={x},base=q^{base}"),
            den,
            order_for(den),
            "sum_n (-1)^n q^C(n,2) x^n = (x)_inf (q/x)_inf (q)_inf",
            move || Ok(Lazy::j_sum(x, base)),
            move || Ok(Lazy::j_prod(x, base)),
        );
    }
    for x in [q(1, 3), mq(2, 5)] {
        for n in [2, -3] {
            let den = den_of(&[x]);
            r.add(
                S,
                format!("j-elliptic/n={n},x={x}"),
                den,
                order_for(den),
                "j(q^n x; q) = (-1)^n q^(-C(n,2)) x^(-n) j(x; q)",
                move || Ok(j(Monomial::q(n) * x, 1)),
                move || Ok(j(x, 1).shift(sign(n) * Monomial::q(-binom2(n)) * x.pow(-n))),
            );
        }
    }
    for x in [q(1, 3), mq(2, 5), iq(3, 4)] {
        let den = den_of(&[x]);
        r.add(
            S,
            format!("j-reflection/x={x}"),
            den,
            order_for(den),
            "j(x; q) = j(q/x; q)",
            move || Ok(j(x, 1)),
            move || Ok(j(Monomial::q(1) * x.inv(), 1)),
        );
    }
    for n in [2, 3] {
        for x in [q(1, 3), mq(1, 2)] {
            let den = den_of(&[x]);
            r.add(
                S,
                format!("j-modulus-split/n={n},x={x}"),
                den,
                order_for(den),
                "j(x; q) = J_1 j(x; q^n) j(qx; q^n) ... j(q^(n-1) x; q^n) / J_n^n",
                move || Ok(j(x, 1)),
                move || Ok(jm(1) * Lazy::product((0..n).map(|k| j(Monomial::q(k) * x, n))) / jm(n).pow(n)),
            );
        }
    }
    for n in [2, 4] {
        for x in [q(1, 3), mq(1, 5)] {
            let den = den_of(&[x]);
            let zeta = Monomial::unit((4 / n) as u8);
            r.add(
                S,
                format!("j-power/n={n},x={x}"),
                den,
                order_for(den),
                "j(x^n; q^n) = J_n j(x; q) j(zeta x; q) ... j(zeta^(n-1) x; q) / J_1^n, zeta a primitive n-th root of unity",
                move || Ok(j(x.pow(n), n)),
                move || Ok(jm(n) * Lazy::product((0..n).map(|k| j(zeta.pow(k) * x, 1))) / jm(1).pow(n)),
            );
        }
    }
    for [a, b, c, d] in [
        [q(1, 2), mq(1, 3), q(1, 6), iq(2, 3)],
        [mq(1, 3), q(1, 2), iq(1, 6), q(5, 6)],
        [q(3, 4), mq(1, 4), iq(1, 2), mq(1, 8)],
        [q(1, 3), mq(1, 2), q(1, 6), Monomial::new(3, Exponent::ZERO)],
    ] {
        let den = den_of(&[a, b, c, d]);
        r.add(
            S,
            format!("weierstrass/{}", point("a,b,c,d", &[a, b, c, d])),
            den,
            order_for(den),
            "j(ac)j(a/c)j(bd)j(b/d) = j(ad)j(a/d)j(bc)j(b/c) + (b/c) j(ab)j(a/b)j(cd)j(c/d)",
            move || Ok(Lazy::product([j(a * c, 1), j(a * c.inv(), 1), j(b * d, 1), j(b * d.inv(), 1)])),
            move || {
                let first = Lazy::product([j(a * d, 1), j(a * d.inv(), 1), j(b * c, 1), j(b * c.inv(), 1)]);
                let second = Lazy::product([j(a * b, 1), j(a * b.inv(), 1), j(c * d, 1), j(c * d.inv(), 1)]);
                Ok(first + second.shift(b * c.inv()))
            },
        );
    }
    let pairs = [(q(1, 3), mq(1, 2)), (mq(1, 4), q(2, 3)), (iq(1, 2), q(1, 6))];
    for (x, y) in pairs {
        let den = den_of(&[x, y]);
        let at = point("x,y", &[x, y]);
        let m1 = Monomial::minus_one();
        r.add(
            S,
            format!("two-theta-product/{at}"),
            den,
            order_for(den),
            "j(x)j(y) = j(-xy; q^2) j(-qy/x; q^2) - x j(-qxy; q^2) j(-y/x; q^2)",
            move || Ok(j(x, 1) * j(y, 1)),
            move || {
                let a = j(m1 * x * y, 2) * j(m1 * Monomial::q(1) * y * x.inv(), 2);
                let b = j(m1 * Monomial::q(1) * x * y, 2) * j(m1 * y * x.inv(), 2);
                Ok(a - b.shift(x))
            },
        );
        r.add(
            S,
            format!("two-theta-difference/{at}"),
            den,
            order_for(den),
            "j(-x)j(y) - j(x)j(-y) = 2x j(y/x; q^2) j(qxy; q^2)",
            move || Ok(j(-x, 1) * j(y, 1) - j(x, 1) * j(-y, 1)),
            move || Ok((j(y * x.inv(), 2) * j(Monomial::q(1) * x * y, 2)).shift(x).scale_int(2)),
        );
        r.add(
            S,
            format!("two-theta-sum/{at}"),
            den,
            order_for(den),
            "j(-x)j(y) + j(x)j(-y) = 2 j(xy; q^2) j(qy/x; q^2)",
            move || Ok(j(-x, 1) * j(y, 1) + j(x, 1) * j(-y, 1)),
            move || Ok((j(x * y, 2) * j(Monomial::q(1) * y * x.inv(), 2)).scale_int(2)),
        );
    }
    for n in [1, 2] {
        for (x, y) in [pairs[0], pairs[1]] {
            let den = den_of(&[x, y]);
            r.add(
                S,
                format!("theta-product-expansion/n={n},{}", point("x,y", &[x, y])),
                den,
                order_for(den),
                "j(x; q) j(y; q^n) = sum_{k=0}^n (-1)^k q^C(k,2) x^k j((-1)^n q^(C(n,2)+kn) x^n y; q^(n(n+1))) j(-q^(1-k) y/x; q^(n+1))",
                move || Ok(j(x, 1) * j(y, n)),
                move || {
                    Ok(Lazy::sum((0..=n).map(|k| {
                        let a = j(sign(n) * Monomial::q(binom2(n) + k * n) * x.pow(n) * y, n * (n + 1));
                        let b = j(-Monomial::q(1 - k) * y * x.inv(), n + 1);
                        (a * b).shift(sign(k) * Monomial::q(binom2(k)) * x.pow(k))
                    })))
                },
            );
        }
    }
    for m in [2u32, 3, 12] {
        for z in [q(1, 3), mq(2, 5)] {
            let den = den_of(&[z]);
            r.add(
                S,
                format!("j-split/m={m},z={z}"),
                den,
                order_for(den),
                "j(z; q) = sum_{k<m} (-1)^k q^C(k,2) z^k j((-1)^(m+1) q^(C(m,2)+mk) z^m; q^(m^2))",
                move || Ok(j(z, 1)),
                move || {
                    Ok(Lazy::sum(
                        j_split_components(z, Exponent::ONE, m)
                            .into_iter()
                            .map(|c| Lazy::j(c.arg, c.base).shift(c.prefactor)),
                    ))
                },
            );
        }
    }
    r.add(
        S,
        "level-four-theta-evaluation".into(),
        1,
        ORDER,
        "2 Jbar_{1,6} Jbar_{1,3} + 2 Jbar_{3,6} Jbar_{3,12} = Jbar_{0,1} Jbar_{0,2}",
        || Ok((jbar(1, 6) * jbar(1, 3) + jbar(3, 6) * jbar(3, 12)).scale_int(2)),
        || Ok(jbar(0, 1) * jbar(0, 2)),
    );
    r.add(
        S,
        "level-four-j-split".into(),
        12,
        ORDER_FINE,
        "j(q^(1/12); q^(1/6)) = Jbar_{12,24} + q^3 Jbar_{0,24} - 2q^(3/4) Jbar_{6,24} + 2q^(1/3) Jbar_{8,24} \
         + 2q^(4/3) Jbar_{20,24} - 2q^(1/12) Jbar_{10,24} - 2q^(25/12) Jbar_{22,24}",
        || Ok(Lazy::j(q(1, 12), Exponent::new(1, 6))),
        || {
            let t = |a: i64, c: i64, n: i64, d: i64| jbar(a, 24).shift(q(n, d)).scale_int(c);
            Ok(Lazy::sum([
                t(12, 1, 0, 1),
                t(0, 1, 3, 1),
                t(6, -2, 3, 4),
                t(8, 2, 1, 3),
                t(20, 2, 4, 3),
                t(10, -2, 1, 12),
                t(22, -2, 25, 12),
            ]))
        },
    );
    type Pair = (&'static str, fn() -> Lazy, fn() -> Lazy);
    let rearrangements: [Pair; 8] = [
        ("Jbar[0,1]=2Jbar[1,4]", || jbar(0, 1), || jbar(1, 4).scale_int(2)),
        ("Jbar[1,4]=J2^2/J1", || jbar(1, 4), || jm(2).pow(2) / jm(1)),
        ("Jbar[1,2]=J2^5/(J1^2J4^2)", || jbar(1, 2), || jm(2).pow(5) / (jm(1).pow(2) * jm(4).pow(2))),
        ("J[1,2]=J1^2/J2", || jam(1, 2), || jm(1).pow(2) / jm(2)),
        ("Jbar[1,3]=J2J3^2/(J1J6)", || jbar(1, 3), || jm(2) * jm(3).pow(2) / (jm(1) * jm(6))),
        ("J[1,4]=J1J4/J2", || jam(1, 4), || jm(1) * jm(4) / jm(2)),
        ("J[1,6]=J1J6^2/(J2J3)", || jam(1, 6), || jm(1) * jm(6).pow(2) / (jm(2) * jm(3))),
        (
            "Jbar[1,6]=J2^2J3J12/(J1J4J6)",
            || jbar(1, 6),
            || jm(2).pow(2) * jm(3) * jm(12) / (jm(1) * jm(4) * jm(6)),
        ),
    ];
    for (name, l, rr) in rearrangements {
        r.add(S, format!("product/{name}"), 1, ORDER, name, move || Ok(l()), move || Ok(rr()));
    }
    let jt = |a: i64, m: i64, n: i64, d: i64, c: i64| jam(a, m).shift(q(n, d)).scale_int(c);
    r.add(
        S,
        "quintic-split/J[2,5]".into(),
        1,
        ORDER_DISSECTION,
        "J_{2,5} = J_{21,45} - q^2 J_{36,45} - q^3 J_{6,45}",
        || Ok(jam(2, 5)),
        move || Ok(Lazy::sum([jt(21, 45, 0, 1, 1), jt(36, 45, 2, 1, -1), jt(6, 45, 3, 1, -1)])),
    );
    r.add(
        S,
        "quintic-split/J[1,5]".into(),
        1,
        ORDER_DISSECTION,
        "J_{1,5} = J_{18,45} - q J_{33,45} - q^4 J_{3,45}",
        || Ok(jam(1, 5)),
        move || Ok(Lazy::sum([jt(18, 45, 0, 1, 1), jt(33, 45, 1, 1, -1), jt(3, 45, 4, 1, -1)])),
    );
    r.add(
        S,
        "quintic-split/j(q^(2/3);q^(5/3))".into(),
        3,
        ORDER,
        "j(q^(2/3); q^(5/3)) = J_{7,15} - q^(2/3) J_{12,15} - q J_{2,15}",
        || Ok(Lazy::j(q(2, 3), Exponent::new(5, 3))),
        move || Ok(Lazy::sum([jt(7, 15, 0, 1, 1), jt(12, 15, 2, 3, -1), jt(2, 15, 1, 1, -1)])),
    );
    r.add(
        S,
        "quintic-split/j(q^(1/3);q^(5/3))".into(),
        3,
        ORDER,
        "j(q^(1/3); q^(5/3)) = J_{6,15} - q^(1/3) J_{11,15} - q^(4/3) J_{1,15}",
        || Ok(Lazy::j(q(1, 3), Exponent::new(5, 3))),
        move || Ok(Lazy::sum([jt(6, 15, 0, 1, 1), jt(11, 15, 1, 3, -1), jt(1, 15, 4, 3, -1)])),
    );
    r.add(
        S,
        "quintic-split/J[11,15]+qJ[1,15]".into(),
        1,
        ORDER,
        "J_{11,15} + q J_{1,15} = J_{4,15} + q J_{14,15}",
        move || Ok(jam(11, 15) + jt(1, 15, 1, 1, 1)),
        move || Ok(jam(4, 15) + jt(14, 15, 1, 1, 1)),
    );
}

fn appell(r: &mut Registry) {
    use Suite::Appell as S;
    let samples = [
        (q(1, 3), 1, mq(1, 2), q(1, 4)),
        (mq(2, 5), 1, q(1, 5), Monomial::minus_one()),
        (iq(1, 2), 1, Monomial::minus_one(), q(1, 3)),
        (q(3, 4), 2, mq(1, 4), q(1, 2)),
        (mq(-1, 3), 1, q(2, 3), mq(1, 6)),
    ];
    for (x, b, z, z0) in samples {
        let qb = Monomial::q(b);
        let den = den_of(&[x, z, z0]);
        let at = format!("{},base=q^{b}", point("x,z", &[x, z]));
        r.add(
            S,
            format!("z-periodicity/{at}"),
            den,
            ORDER_APPELL,
            "m(x, q, z) = m(x, q, qz)",
            move || Lazy::appell(x, b, z),
            move || Lazy::appell(x, b, qb * z),
        );
        r.add(
            S,
            format!("inversion/{at}"),
            den,
            ORDER_APPELL,
            "m(x, q, z) = x^(-1) m(x^(-1), q, z^(-1))",
            move || Lazy::appell(x, b, z),
            move || Ok(Lazy::appell(x.inv(), b, z.inv())?.shift(x.inv())),
        );
        r.add(
            S,
            format!("x-shift/{at}"),
            den,
            ORDER_APPELL,
            "m(qx, q, z) = 1 - x m(x, q, z)",
            move || Lazy::appell(qb * x, b, z),
            move || Ok(Lazy::one() - Lazy::appell(x, b, z)?.shift(x)),
        );
        r.add(
            S,
            format!("changing-z/{},z0={z0}", at),
            den,
            ORDER_APPELL,
            "m(x, q, z1) - m(x, q, z0) = z0 J_1^3 j(z1/z0) j(x z0 z1) / (j(z0) j(z1) j(x z0) j(x z1))",
            move || Ok(Lazy::appell(x, b, z)? - Lazy::appell(x, b, z0)?),
            move || {
                let num = jm(b).pow(3) * j(z * z0.inv(), b) * j(x * z0 * z, b);
                let den = Lazy::product([j(z0, b), j(z, b), j(x * z0, b), j(x * z, b)]);
                Ok((num / den).shift(z0))
            },
        );
    }
    r.add(
        S,
        "evaluation/m(q,q^2,-1)".into(),
        1,
        ORDER_APPELL_EVAL,
        "m(q, q^2, -1) = 1/2",
        || Lazy::appell(q(1, 1), 2, Monomial::minus_one()),
        || Ok(Lazy::coeff(Coefficient::from_ratio(1, 2))),
    );
    r.add(
        S,
        "evaluation/m(-1,q^2,q)".into(),
        1,
        ORDER_APPELL_EVAL,
        "m(-1, q^2, q) = 0",
        || Lazy::appell(Monomial::minus_one(), 2, q(1, 1)),
        || Ok(Lazy::zero()),
    );
}

/// Generic points for the double-sum expansions.
const GENERIC: [(i64, i64, bool, i64, i64, bool); 3] =
    [(1, 3, false, 2, 5, false), (1, 3, true, 2, 7, false), (1, 2, false, 1, 5, true)];

fn generic_points() -> impl Iterator<Item = (Monomial, Monomial)> {
    GENERIC.into_iter().map(|(a, b, na, c, d, nc)| {
        let x = if na { mq(a, b) } else { q(a, b) };
        let y = if nc { mq(c, d) } else { q(c, d) };
        (x, y)
    })
}

fn hecke_structure(r: &mut Registry) {
    use Suite::Hecke as S;
    for (a, b, c, x, y, rr, ss) in
        [(1, 2, 1, q(1, 3), mq(2, 5), 1, 2), (2, 3, 1, mq(1, 2), q(1, 3), 2, -1), (1, 3, 1, q(1, 4), mq(1, 2), -1, 1)]
    {
        let den = den_of(&[x, y]);
        r.add(
            S,
            format!("shift/abc=({a},{b},{c}),{},R={rr},S={ss}", point("x,y", &[x, y])),
            den,
            ORDER_GENERIC,
            "f_{a,b,c}(x,y,q) = (-x)^R (-y)^S q^(a C(R,2) + bRS + c C(S,2)) f_{a,b,c}(q^(aR+bS) x, q^(bR+cS) y, q) \
             + sum_{m<R} (-x)^m q^(a C(m,2)) j(q^(mb) y; q^c) + sum_{m<S} (-y)^m q^(c C(m,2)) j(q^(mb) x; q^a)",
            move || hecke(a, b, c, x, y, 1),
            move || Ok(f_shift_rhs(&HeckeArgs::new(a, b, c, x, y, Exponent::ONE)?, rr, ss)),
        );
    }
    for (a, b, c, x, y) in [(1, 2, 1, q(1, 3), mq(2, 5)), (2, 3, 1, mq(1, 2), q(1, 3)), (1, 4, 2, q(1, 4), q(2, 3))] {
        let den = den_of(&[x, y]);
        r.add(
            S,
            format!("flip/abc=({a},{b},{c}),{}", point("x,y", &[x, y])),
            den,
            ORDER_GENERIC,
            "f_{a,b,c}(x,y,q) = -q^(a+b+c)/(xy) f_{a,b,c}(q^(2a+b)/x, q^(2c+b)/y, q)",
            move || hecke(a, b, c, x, y, 1),
            move || Ok(f_flip_rhs(&HeckeArgs::new(a, b, c, x, y, Exponent::ONE)?)),
        );
    }
    let one = Exponent::ONE;
    for p in 1..=3 {
        for (x, y) in generic_points() {
            let den = den_of(&[x, y]);
            r.add(
                S,
                format!("expansion-g/p={p},{}", point("x,y", &[x, y])),
                den,
                ORDER_GENERIC,
                "f_{1,p+1,1}(x,y,q) = g_{1,p+1,1}(x,y,q,-1,-1) + theta_p(x,y,q) / Jbar_{0,p(2+p)}",
                move || hecke(1, p + 1, 1, x, y, 1),
                move || g_expansion_rhs(p, x, y, one),
            );
        }
    }
    let (x, y) = (q(1, 3), q(2, 5));
    r.add(
        S,
        format!("expansion-f121/{}", point("x,y", &[x, y])),
        15,
        ORDER_GENERIC,
        "f_{1,2,1}(x,y,q) = j(y)m(q^2x/y^2, q^3, -1) + j(x)m(q^2y/x^2, q^3, -1) \
         - y J_3^3 j(-x/y; q) j(q^2xy; q^3) / (Jbar_{0,3} j(-qy^2/x; q^3) j(-qx^2/y; q^3))",
        move || hecke(1, 2, 1, x, y, 1),
        move || {
            let m1 = Monomial::minus_one();
            let q2 = Monomial::q(2);
            let a = j(y, 1) * Lazy::appell(q2 * x * y.pow(-2), 3, m1)?;
            let b = j(x, 1) * Lazy::appell(q2 * y * x.pow(-2), 3, m1)?;
            let num = jm(3).pow(3) * j(m1 * x * y.inv(), 1) * j(q2 * x * y, 3);
            let den = Lazy::product([
                jbar(0, 3),
                j(m1 * Monomial::q(1) * y.pow(2) * x.inv(), 3),
                j(m1 * Monomial::q(1) * x.pow(2) * y.inv(), 3),
            ]);
            Ok(a + b - (num / den).shift(y))
        },
    );
    for n in [2, 3] {
        for (x, y) in generic_points() {
            let den = den_of(&[x, y]);
            r.add(
                S,
                format!("expansion-h/n={n},{}", point("x,y", &[x, y])),
                den,
                ORDER_GENERIC,
                "f_{n,n,1}(x,y,q) = h_{n,n,1}(x,y,q,-1,-1) - theta_n(x,y,q) / (Jbar_{0,n-1} Jbar_{0,n^2-n})",
                move || hecke(n, n, 1, x, y, 1),
                move || h_expansion_rhs(n, x, y, one),
            );
        }
    }
    for p in 2..=4 {
        for (x, y) in generic_points() {
            let den = den_of(&[x, y]);
            r.add(
                S,
                format!("expansion-big-theta/p={p},{}", point("x,y", &[x, y])),
                den,
                ORDER_GENERIC,
                "f_{1,p+1,1}(x,y,q) = g_{1,p+1,1}(x,y,q,y/x,x/y) - Theta_{1,p}(x,y,q)",
                move || hecke(1, p + 1, 1, x, y, 1),
                move || big_theta_expansion_rhs(p, x, y, one),
            );
        }
    }
    for p in [2, 3] {
        for l in 0..=2 {
            for (x, y) in generic_points() {
                let den = den_of(&[x, y]);
                r.add(
                    S,
                    format!("expansion-shifted/p={p},l={l},{}", point("x,y", &[x, y])),
                    den,
                    ORDER_GENERIC,
                    "f_{1,1+p,1}(x,y,q) = g_{1,1+p,1}(x,y,q,q^(lp) y/x, q^(-lp) x/y) - (-x)^l q^C(l,2) Theta_{1,p}(q^l x, q^(l(1+p)) y, q)",
                    move || hecke(1, p + 1, 1, x, y, 1),
                    move || shifted_expansion_rhs(p, l, x, y, one),
                );
            }
        }
    }
}

fn hecke_evaluations(r: &mut Registry) {
    use Suite::Hecke as S;
    r.add(S, "f121/x=q,y=q".into(), 1, ORDER, "f_{1,2,1}(q,q,q) = J_1^2", || hecke(1, 2, 1, q(1, 1), q(1, 1), 1), || {
        Ok(jm(1).pow(2))
    });
    type Eval = (i64, i64, &'static str, fn() -> Lazy);
    let f131: [Eval; 3] = [
        (1, 1, "J_{1,2} Jbar_{3,8}", || jam(1, 2) * jbar(3, 8)),
        (2, 1, "J_1 J_2", || jm(1) * jm(2)),
        (2, 2, "J_{1,2} Jbar_{1,8}", || jam(1, 2) * jbar(1, 8)),
    ];
    for (a, b, text, rhs) in f131 {
        r.add(
            S,
            format!("f131/{}", point("x,y", &[Monomial::q(a), Monomial::q(b)])),
            1,
            ORDER,
            format!("f_{{1,3,1}}({},{},q) = {text}", Monomial::q(a), Monomial::q(b)),
            move || hecke(1, 3, 1, Monomial::q(a), Monomial::q(b), 1),
            move || Ok(rhs()),
        );
    }
    let f141: [Eval; 4] = [
        (1, 1, "J_1 (J_{8,15} - q J_{2,15})", || jm(1) * (jam(8, 15) - jam(2, 15).shift_q(1))),
        (2, 1, "J_1 J_{6,15}", || jm(1) * jam(6, 15)),
        (2, 2, "J_1 (J_{11,15} + q J_{1,15})", || jm(1) * (jam(11, 15) + jam(1, 15).shift_q(1))),
        (3, 2, "J_1 J_{3,15}", || jm(1) * jam(3, 15)),
    ];
    for (a, b, text, rhs) in f141 {
        r.add(
            S,
            format!("f141/{}", point("x,y", &[Monomial::q(a), Monomial::q(b)])),
            1,
            ORDER,
            format!("f_{{1,4,1}}({},{},q) = {text}", Monomial::q(a), Monomial::q(b)),
            move || hecke(1, 4, 1, Monomial::q(a), Monomial::q(b), 1),
            move || Ok(rhs()),
        );
    }
    type Combo = (&'static str, &'static str, fn() -> Result<Lazy>, fn() -> Lazy);
    let level_four: [Combo; 7] = [
        (
            "f331(-q^2,q)-qf331(-q^4,q^3)",
            "f_{3,3,1}(-q^2,q,q) - q f_{3,3,1}(-q^4,q^3,q) = J_1 J_{1,2}",
            || Ok(hecke(3, 3, 1, mq(2, 1), q(1, 1), 1)? - hecke(3, 3, 1, mq(4, 1), q(3, 1), 1)?.shift_q(1)),
            || jm(1) * jam(1, 2),
        ),
        (
            "f331(q^2,q)+qf331(q^4,q^3)",
            "f_{3,3,1}(q^2,q,q) + q f_{3,3,1}(q^4,q^3,q) = J_1 Jbar_{3,6}",
            || Ok(hecke(3, 3, 1, q(2, 1), q(1, 1), 1)? + hecke(3, 3, 1, q(4, 1), q(3, 1), 1)?.shift_q(1)),
            || jm(1) * jbar(3, 6),
        ),
        (
            "f151(q^2,q^2)",
            "f_{1,5,1}(q^2,q^2,q) = J_1 Jbar_{1,6}",
            || hecke(1, 5, 1, q(2, 1), q(2, 1), 1),
            || jm(1) * jbar(1, 6),
        ),
        (
            "f331(q^3,q)",
            "f_{3,3,1}(q^3,q,q) = J_{1,4} J_{6,12}",
            || hecke(3, 3, 1, q(3, 1), q(1, 1), 1),
            || jam(1, 4) * jam(6, 12),
        ),
        (
            "f151(q^2,1)",
            "f_{1,5,1}(q^2,1,q) = q J_1 Jbar_{6,24}",
            || hecke(1, 5, 1, q(2, 1), Monomial::ONE, 1),
            || (jm(1) * jbar(6, 24)).shift_q(1),
        ),
        (
            "f331(q^5,q^4;q^2)+qf331(q^7,q^6;q^2)",
            "f_{3,3,1}(q^5,q^4,q^2) + q f_{3,3,1}(q^7,q^6,q^2) = J_2 Jbar_{1,4}",
            || Ok(hecke(3, 3, 1, q(5, 1), q(4, 1), 2)? + hecke(3, 3, 1, q(7, 1), q(6, 1), 2)?.shift_q(1)),
            || jm(2) * jbar(1, 4),
        ),
        (
            "f331(-q^5,q^4;q^2)-qf331(-q^7,q^6;q^2)",
            "f_{3,3,1}(-q^5,q^4,q^2) - q f_{3,3,1}(-q^7,q^6,q^2) = J_2 J_{1,4}",
            || Ok(hecke(3, 3, 1, mq(5, 1), q(4, 1), 2)? - hecke(3, 3, 1, mq(7, 1), q(6, 1), 2)?.shift_q(1)),
            || jm(2) * jam(1, 4),
        ),
    ];
    for (name, text, lhs, rhs) in level_four {
        r.add(S, format!("level-four-sum/{name}"), 1, ORDER, text, lhs, move || Ok(rhs()));
    }
}

fn label(n: i64, l: i64, m: i64) -> StringLabel {
    StringLabel::new(n, l, m).expect("registered labels are valid")
}

fn string_levels(r: &mut Registry) {
    use Suite::StringsLevels as S;
    for n in 1..=4 {
        for lbl in StringLabel::all(n) {
            let den = normalizer(&lbl).denom();
            r.add(
                S,
                format!("theta-side/N={n},l={},m={}", lbl.ell, lbl.m),
                den,
                order_for(den),
                format!("q^(-(m^2-l^2)/(4N)) J_1^3 CC^{n}_{{{},{}}} equals its tabulated theta quotient", lbl.m, lbl.ell),
                move || Ok(normalized_expr(&lbl)),
                move || level_theta_side(&lbl),
            );
        }
    }
    for n in 1..=4 {
        for lbl in StringLabel::all(n) {
            r.add(
                S,
                format!("oracle/N={n},l={},m={}", lbl.ell, lbl.m),
                1,
                ORDER_ORACLE,
                "CC^N_{m,l} from f_{1,1+N,1} equals the bilateral double sum over (i, j)",
                move || Ok(calc_hecke_expr(&lbl)),
                move || Ok(calc_oracle_expr(&lbl)),
            );
        }
    }
    type Eval = (i64, i64, &'static str, fn() -> Lazy);
    let level_four: [Eval; 7] = [
        (0, 0, "(J_1 Jbar_{3,6} + J_1 J_{1,2}) / 2", || {
            (jm(1) * jbar(3, 6) + jm(1) * jam(1, 2)).scale(Coefficient::from_ratio(1, 2))
        }),
        (0, 4, "q (J_1 Jbar_{3,6} - J_1 J_{1,2}) / 2", || {
            (jm(1) * jbar(3, 6) - jm(1) * jam(1, 2)).scale(Coefficient::from_ratio(1, 2)).shift_q(1)
        }),
        (0, 2, "q J_1 Jbar_{6,24}", || (jm(1) * jbar(6, 24)).shift_q(1)),
        (1, 1, "J_1 Jbar_{3,8}", || jm(1) * jbar(3, 8)),
        (1, 3, "q J_1 Jbar_{1,8}", || (jm(1) * jbar(1, 8)).shift_q(1)),
        (2, 0, "J_1 Jbar_{1,6}", || jm(1) * jbar(1, 6)),
        (2, 2, "J_{1,4} J_{6,12}", || jam(1, 4) * jam(6, 12)),
    ];
    for (l, m, text, rhs) in level_four {
        let lbl = label(4, l, m);
        r.add(
            S,
            format!("level-four/l={l},m={m}"),
            1,
            ORDER,
            format!("J_1^3 CC^4_{{{m},{l}}} = {text}"),
            move || Ok(calc_hecke_expr(&lbl) * jm(1).pow(3)),
            move || Ok(rhs()),
        );
    }
}

fn string_symmetries(r: &mut Registry) {
    use Suite::StringsSymmetries as S;
    let samples = [(2, 1, 1), (3, 0, 2), (3, 1, 1), (4, 1, 3), (4, 2, 2)];
    for (n, l, m) in samples {
        let lbl = label(n, l, m);
        let images = [
            ("m->-m", label(n, l, -m)),
            ("m->2N-m", label(n, l, 2 * n - m)),
            ("(m,l)->(N-m,N-l)", label(n, n - l, n - m)),
        ];
        for (name, other) in images {
            let den = s_exponent(&lbl).denom().lcm(&s_exponent(&other).denom());
            r.add(
                S,
                format!("{name}/N={n},l={l},m={m}"),
                den,
                order_for(den),
                format!("C^{n}_{{{m},{l}}} = C^{n}_{{{},{}}}", other.m, other.ell),
                move || Ok(c_full_expr(&lbl)),
                move || Ok(c_full_expr(&other)),
            );
        }
    }
    for (n, l, m) in [(3, 1, 1), (4, 1, 3), (4, 0, 2)] {
        let lbl = label(n, l, m);
        let other = label(n, n - l, n - m);
        let den = normalizer(&lbl).denom().lcm(&normalizer(&other).denom());
        r.add(
            S,
            format!("normalized/N={n},l={l},m={m}"),
            den,
            order_for(den),
            "q^(-(m^2-l^2)/(4N)) CC^N_{m,l} is invariant under (m,l) -> (N-m,N-l)",
            move || Ok(normalized_expr(&lbl)),
            move || Ok(normalized_expr(&other)),
        );
    }
}

fn split_relations(r: &mut Registry) {
    use Suite::Mps as S;
    let variants = [
        SplitRelation::Split { k: 1, m: 0, ell: 0, plus: true },
        SplitRelation::Split { k: 1, m: 0, ell: 0, plus: false },
        SplitRelation::Split { k: 1, m: 1, ell: 1, plus: true },
        SplitRelation::Split { k: 2, m: 0, ell: 0, plus: true },
        SplitRelation::Split { k: 2, m: 0, ell: 0, plus: false },
        SplitRelation::Split { k: 2, m: 1, ell: 1, plus: true },
        SplitRelation::Split { k: 2, m: 1, ell: 1, plus: false },
        SplitRelation::Split { k: 3, m: 1, ell: 1, plus: true },
        SplitRelation::MiddleL { k: 1, m: 1 },
        SplitRelation::MiddleL { k: 2, m: 0 },
        SplitRelation::MiddleL { k: 2, m: 2 },
        SplitRelation::MiddleM { k: 1, ell: 1 },
        SplitRelation::MiddleM { k: 2, ell: 0 },
        SplitRelation::MiddleM { k: 2, ell: 2 },
    ];
    for v in variants {
        let (id, text, s) = match v {
            SplitRelation::Split { k, m, ell, plus } => {
                let pm = if plus { '+' } else { '-' };
                (
                    format!("split/K={k},l={ell},m={m},{}", if plus { "plus" } else { "minus" }),
                    format!("C^{}_{{{m},{ell}}} {pm} C^{}_{{{},{ell}}} as f_{{{},{},1}}", 2 * k, 2 * k, 2 * k - m, k + 1, k + 1),
                    s_exponent(&label(2 * k, ell, m)),
                )
            }
            SplitRelation::MiddleL { k, m } => (
                format!("middle-l/K={k},m={m}"),
                format!("C^{}_{{{m},{k}}} as f_{{{},{},1}}", 2 * k, k + 1, k + 1),
                s_exponent(&label(2 * k, k, m)),
            ),
            SplitRelation::MiddleM { k, ell } => (
                format!("middle-m/K={k},l={ell}"),
                format!("C^{}_{{{k},{ell}}} as f_{{{},{},1}}", 2 * k, k + 1, k + 1),
                s_exponent(&label(2 * k, ell, k)),
            ),
        };
        let den = s.denom();
        r.add(S, id, den, order_for(den), text, move || v.lhs(), move || v.rhs());
    }
}

fn eta_identities(r: &mut Registry) {
    use Suite::KpExamples as S;
    for k in EtaIdentity::ALL {
        let den = match k {
            EtaIdentity::Level2 => 16,
            EtaIdentity::Level4 => 12,
            _ => 120,
        };
        let text = match k {
            EtaIdentity::Level2 => "C^2_{0,0} - C^2_{2,0} = eta(tau)^-2 eta(tau/2)",
            EtaIdentity::Level3Single => "C^3_{2,0} = eta(tau)^-2 q^(27/40) prod_{n != +-2 (5)} (1 - q^(3n))",
            EtaIdentity::Level3Even => "C^3_{0,0} - C^3_{2,0} = eta(tau)^-2 q^(1/120) prod_{n != +-1 (5)} (1 - q^(n/3))",
            EtaIdentity::Level3Odd => "C^3_{1,1} - C^3_{3,1} = eta(tau)^-2 q^(3/40) prod_{n != +-2 (5)} (1 - q^(n/3))",
            EtaIdentity::Level4 => {
                "C^4_{0,0} - 2C^4_{2,0} + C^4_{4,0} + 2C^4_{0,2} - 2C^4_{2,2} = eta(tau)^-2 eta(tau/6)^-1 eta(tau/12)^2"
            }
        };
        r.add(S, k.name().to_string(), den, ORDER_FINE, text, move || Ok(k.string_side()), move || Ok(k.eta_side()));
    }
}
