use super::{Coefficient, Exponent, QSeries};
use num_traits::Signed;
use std::fmt;

pub(crate) fn q_power(e: Exponent) -> String {
    if e == Exponent::ONE {
        "q".into()
    } else if e.is_integer() && e.is_positive() {
        format!("q^{e}")
    } else {
        format!("q^({e})")
    }
}

fn is_negative_real(c: &Coefficient) -> bool {
    c.is_real() && c.raw().0.is_negative()
}

/// Sign-free body of a term, e.g. `3*q^2`, `q^(1/2)`, `(1 + i)*q`.
fn term_body(c: &Coefficient, e: Exponent) -> String {
    if e.is_zero() {
        return c.to_string();
    }
    if c.is_one() {
        q_power(e)
    } else {
        format!("{c}*{}", q_power(e))
    }
}

/// Ascending terms `c*q^e` joined by ` + ` / ` - `, ending in `O(q^T)` when
/// the series is truncated.
impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = is_negative_real(c);
            let body = if neg { term_body(&-c, e) } else { term_body(c, e) };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(t) = self.trunc() {
            write!(f, " + O({})", q_power(t))?;
        }
        Ok(())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
