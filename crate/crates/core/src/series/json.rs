use super::{Coefficient, Exponent, QSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

/// One term of the JSON form: `(re_num/re_den + i*im_num/im_den) q^(num/den_exp)`.
///
/// Coefficient parts are decimal strings because they are unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub num: i64,
    pub den_exp: i64,
    pub re_num: String,
    pub re_den: String,
    pub im_num: String,
    pub im_den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonOrder {
    pub num: i64,
    pub den: i64,
}

/// Serializable form of a [`QSeries`]; `order` is `null` for exact series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonSeries {
    pub terms: Vec<JsonTerm>,
    pub order: Option<JsonOrder>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed series JSON: {0}")]
pub struct JsonSeriesError(pub String);

fn parse_int(s: &str) -> Result<BigInt, JsonSeriesError> {
    s.parse().map_err(|_| JsonSeriesError(format!("not an integer: {s:?}")))
}

fn parse_ratio(n: &str, d: &str) -> Result<BigRational, JsonSeriesError> {
    let d = parse_int(d)?;
    if d == BigInt::from(0) {
        return Err(JsonSeriesError("zero denominator".into()));
    }
    Ok(BigRational::new(parse_int(n)?, d))
}

impl From<&QSeries> for JsonSeries {
    fn from(s: &QSeries) -> Self {
        let terms = s
            .terms()
            .map(|(e, c)| {
                let (re, im) = (c.re(), c.im());
                JsonTerm {
                    num: e.numer(),
                    den_exp: e.denom(),
                    re_num: re.numer().to_string(),
                    re_den: re.denom().to_string(),
                    im_num: im.numer().to_string(),
                    im_den: im.denom().to_string(),
                }
            })
            .collect();
        let order = s.trunc().map(|t| JsonOrder { num: t.numer(), den: t.denom() });
        JsonSeries { terms, order }
    }
}

impl TryFrom<&JsonSeries> for QSeries {
    type Error = JsonSeriesError;
    fn try_from(j: &JsonSeries) -> Result<Self, Self::Error> {
        let exp = |n: i64, d: i64| {
            if d == 0 {
                Err(JsonSeriesError("zero exponent denominator".into()))
            } else {
                Ok(Exponent::new(n, d))
            }
        };
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            let re = parse_ratio(&t.re_num, &t.re_den)?;
            let im = parse_ratio(&t.im_num, &t.im_den)?;
            terms.push((exp(t.num, t.den_exp)?, Coefficient::from_rationals(&re, &im)));
        }
        let order = j.order.as_ref().map(|o| exp(o.num, o.den)).transpose()?;
        Ok(QSeries::from_terms(terms, order))
    }
}

impl QSeries {
    pub fn to_json(&self) -> JsonSeries {
        JsonSeries::from(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let s = QSeries::from_terms(
            [
                (Exponent::new(-1, 3), Coefficient::from_ratio(-7, 2)),
                (Exponent::int(2), Coefficient::from_parts(0, 1)),
            ],
            Some(Exponent::new(9, 2)),
        );
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let back: JsonSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(QSeries::try_from(&back).unwrap(), s);
        let exact = QSeries::zero().to_json();
        assert!(exact.order.is_none());
    }
}
