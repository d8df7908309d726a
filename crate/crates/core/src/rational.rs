//! Exact rationals. Every grading, correction term and genus value in the
//! crate is a reduced `Ratio<i64>`; there is no floating point anywhere.

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{input, Result};

pub type Q = Ratio<i64>;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(num, den)
}

pub fn int(n: i64) -> Q {
    Q::from_integer(n)
}

/// Formats as a reduced `num/den`, integers included (`0/1`, `-2/1`).
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| crate::Error::Input(format!("bad rational `{s}`")))?;
    let d: i64 = d.parse().map_err(|_| crate::Error::Input(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return input(format!("zero denominator in `{s}`"));
    }
    Ok(Q::new(n, d))
}

/// Numerator of `x` when it is an integer.
pub fn as_integer(x: &Q) -> Option<i64> {
    x.is_integer().then(|| *x.numer())
}

pub fn is_even_integer(x: &Q) -> bool {
    as_integer(x).is_some_and(|n| n % 2 == 0)
}

/// Serde adapter storing a rational as its `num/den` string.
pub mod serde_q {
    use super::{fmt_q, parse_q, Q};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(D::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.serialize_some(&fmt_q(x)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| parse_q(&s).map_err(D::Error::custom))
                .transpose()
        }
    }
}
