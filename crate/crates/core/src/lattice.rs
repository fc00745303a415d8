//! Exact enumeration helpers for convex quadratic exponents on the integers.

/// Integers `n` in `[lo, hi]` with `f(n) < bound`, where `f` is convex there.
///
/// Starts at `start` (ideally near the vertex), walks downhill to a
/// minimiser, then widens while the bound holds. Returns `(first, last,
/// min f)`, or `None` if even the minimum reaches `bound`.
pub(crate) fn sublevel<F>(f: F, start: i64, lo: Option<i64>, hi: Option<i64>, bound: i128) -> Option<(i64, i64, i128)>
where
    F: Fn(i64) -> i128,
{
    if let (Some(l), Some(h)) = (lo, hi) {
        if l > h {
            return None;
        }
    }
    let (n, fn_) = minimum(&f, start, lo, hi);
    let ok_lo = |m: i64| lo.is_none_or(|l| m >= l);
    let ok_hi = |m: i64| hi.is_none_or(|h| m <= h);
    if fn_ >= bound {
        return None;
    }
    let (mut a, mut b) = (n, n);
    while ok_lo(a - 1) && f(a - 1) < bound {
        a -= 1;
    }
    while ok_hi(b + 1) && f(b + 1) < bound {
        b += 1;
    }
    Some((a, b, fn_))
}

/// A minimiser of the convex `f` on `[lo, hi]` (assumed nonempty) and its value.
pub(crate) fn minimum<F>(f: F, start: i64, lo: Option<i64>, hi: Option<i64>) -> (i64, i128)
where
    F: Fn(i64) -> i128,
{
    let mut n = start;
    if let Some(l) = lo {
        n = n.max(l);
    }
    if let Some(h) = hi {
        n = n.min(h);
    }
    let ok_lo = |m: i64| lo.is_none_or(|l| m >= l);
    let ok_hi = |m: i64| hi.is_none_or(|h| m <= h);
    let mut fn_ = f(n);
    while ok_lo(n - 1) && f(n - 1) < fn_ {
        n -= 1;
        fn_ = f(n);
    }
    while ok_hi(n + 1) && f(n + 1) < fn_ {
        n += 1;
        fn_ = f(n);
    }
    (n, fn_)
}

/// Nearest integer to the vertex `-lin/(2*quad)` of `quad*n^2 + lin*n`.
pub(crate) fn vertex(quad: i128, lin: i128) -> i64 {
    if quad <= 0 {
        return 0;
    }
    let v = -(lin as f64) / (2.0 * quad as f64);
    v.round().clamp(-1e15, 1e15) as i64
}

/// `k * (k - 1) / 2`.
pub(crate) fn binom2(k: i64) -> i128 {
    let k = k as i128;
    k * (k - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_exact_interval() {
        let f = |n: i64| (n as i128 - 3) * (n as i128 - 3);
        assert_eq!(sublevel(f, 100, None, None, 5), Some((1, 5, 0)));
        assert_eq!(sublevel(f, 0, Some(4), None, 5), Some((4, 5, 1)));
        assert_eq!(sublevel(f, 0, None, Some(-1), 5), None);
        assert_eq!(sublevel(f, 3, None, None, 0), None);
    }

    #[test]
    fn minimum_respects_bounds() {
        let f = |n: i64| (n as i128 + 10) * (n as i128 + 10);
        assert_eq!(minimum(f, 5, Some(0), None), (0, 100));
        assert_eq!(minimum(f, 5, None, None), (-10, 0));
    }

    #[test]
    fn plateau_minimum() {
        let f = |n: i64| (n as i128) * (n as i128 - 1);
        assert_eq!(sublevel(f, -50, None, None, 1), Some((0, 1, 0)));
    }
}
