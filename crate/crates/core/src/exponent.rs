//! Lebesgue exponents `r ∈ [1, ∞]`, with `∞` kept as its own variant.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Accepts any `r ≥ 1`; `f64::INFINITY` maps to [`Exponent::Infinity`].
    pub fn new(r: f64) -> Result<Self> {
        if r == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if r.is_finite() && r >= 1.0 {
            Ok(Exponent::Finite(r))
        } else {
            Err(Error::domain(format!("Lebesgue exponent must lie in [1, inf], got {r}")))
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// `r` as a float (`f64::INFINITY` for the infinite exponent).
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(r) => r,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// `1/r`, equal to zero for `r = ∞`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(r) => 1.0 / r,
            Exponent::Infinity => 0.0,
        }
    }

    /// Hölder conjugate `r' = r/(r-1)`.
    pub fn conjugate(self) -> Self {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(1.0) => Exponent::Infinity,
            Exponent::Finite(r) => Exponent::Finite(r / (r - 1.0)),
        }
    }

    /// Weighted power mean `(Σ w |v|^r)^{1/r}`; for `r = ∞` the max of `|v|` over
    /// entries with positive weight.
    pub fn weighted_norm<I>(self, terms: I) -> f64
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        match self {
            Exponent::Infinity => terms
                .into_iter()
                .filter(|&(w, _)| w > 0.0)
                .fold(0.0, |acc, (_, v)| acc.max(v.abs())),
            Exponent::Finite(r) => {
                let sum: f64 = terms.into_iter().map(|(w, v)| w * v.abs().powf(r)).sum();
                sum.powf(1.0 / r)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(r) => write!(f, "{r}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Exponent::Infinity);
        }
        let r = if let Some((a, b)) = t.split_once('/') {
            let a: f64 = a.trim().parse().map_err(|_| Error::Config(format!("bad exponent {s:?}")))?;
            let b: f64 = b.trim().parse().map_err(|_| Error::Config(format!("bad exponent {s:?}")))?;
            a / b
        } else {
            t.parse().map_err(|_| Error::Config(format!("bad exponent {s:?}")))?
        };
        Exponent::new(r).map_err(|e| Error::Config(e.to_string()))
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(r) => serializer.serialize_f64(*r),
            Exponent::Infinity => serializer.serialize_str("inf"),
        }
    }
}
