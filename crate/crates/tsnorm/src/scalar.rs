//! Scalar coefficients in two precision modes.
//!
//! The Tsirelson norm closes over the rationals (its only factor is 1/2),
//! so `T` supports exact arithmetic.  The `S`, `Y` and `X_k` norms involve
//! irrational factors and run in binary float.  A [`Scalar`] carries its
//! mode; mixed-mode arithmetic is rejected rather than silently coerced.

use std::fmt;

use num::{BigInt, BigRational};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("float scalars must be finite, got {0}")]
    NonFinite(f64),
    #[error("mixed exact/float arithmetic is rejected; convert explicitly")]
    MixedMode,
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarMode {
    Exact,
    Float,
}

/// A coefficient: exact rational (lowest terms) or finite `f64`.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self, ScalarError> {
        if den == 0 {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(Scalar::Exact(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn float(v: f64) -> Result<Self, ScalarError> {
        if !v.is_finite() {
            return Err(ScalarError::NonFinite(v));
        }
        Ok(Scalar::Float(v))
    }

    pub fn exact(r: BigRational) -> Self {
        Scalar::Exact(r)
    }

    pub fn zero(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Exact => Scalar::int(0),
            ScalarMode::Float => Scalar::Float(0.0),
        }
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Exact(_) => ScalarMode::Exact,
            Scalar::Float(_) => ScalarMode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(v) => Scalar::Float(v.abs()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r.clone()),
            Scalar::Float(v) => Scalar::Float(-v),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a + b)),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::float(a + b),
            _ => Err(ScalarError::MixedMode),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a * b)),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::float(a * b),
            _ => Err(ScalarError::MixedMode),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(v) => *v,
        }
    }

    /// Lossy conversion to float mode (identity on float scalars).
    pub fn to_float_mode(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Parses either `"p/q"`, an integer, or a decimal float.
    pub fn parse(text: &str) -> Result<Scalar, ScalarError> {
        let t = text.trim();
        if let Some((num, den)) = t.split_once('/') {
            let n: i64 = num
                .trim()
                .parse()
                .map_err(|_| ScalarError::Parse(text.into()))?;
            let d: i64 = den
                .trim()
                .parse()
                .map_err(|_| ScalarError::Parse(text.into()))?;
            return Scalar::ratio(n, d);
        }
        if let Ok(n) = t.parse::<i64>() {
            return Ok(Scalar::int(n));
        }
        let v: f64 = t.parse().map_err(|_| ScalarError::Parse(text.into()))?;
        Scalar::float(v)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.partial_cmp(b),
            (Scalar::Float(a), Scalar::Float(b)) => a.partial_cmp(b),
            _ => None,
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(_) => serializer.serialize_str(&self.to_string()),
            Scalar::Float(v) => serializer.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let value = serde_json::Value::deserialize(deserializer)?;
        match value {
            serde_json::Value::String(s) => Scalar::parse(&s).map_err(D::Error::custom),
            serde_json::Value::Number(n) => {
                let v = n.as_f64().ok_or_else(|| D::Error::custom("bad number"))?;
                if n.is_i64() || n.is_u64() {
                    Ok(Scalar::int(v as i64))
                } else {
                    Scalar::float(v).map_err(D::Error::custom)
                }
            }
            other => Err(D::Error::custom(format!("bad scalar {other}"))),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float(v) => write!(f, "{}", format_float(*v)),
        }
    }
}

/// Formats a float with 12 significant digits (round-half-even, like all
/// Rust float formatting) and no trailing zeros.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let s = if (-4..15).contains(&exp) {
        let prec = (11 - exp).max(0) as usize;
        format!("{:.*}", prec, v)
    } else {
        return format!("{:.*e}", 11, v);
    };
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_is_reduced() {
        let s = Scalar::ratio(2, 4).unwrap();
        assert_eq!(s.to_string(), "1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(Scalar::ratio(1, 0), Err(ScalarError::ZeroDenominator));
    }

    #[test]
    fn non_finite_rejected() {
        assert!(Scalar::float(f64::NAN).is_err());
        assert!(Scalar::float(f64::INFINITY).is_err());
    }

    #[test]
    fn mixed_mode_rejected() {
        let a = Scalar::int(1);
        let b = Scalar::Float(1.0);
        assert_eq!(a.try_add(&b), Err(ScalarError::MixedMode));
        assert_eq!(a.try_mul(&b), Err(ScalarError::MixedMode));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Scalar::parse("3/4").unwrap(), Scalar::ratio(3, 4).unwrap());
        assert_eq!(Scalar::parse("-2").unwrap(), Scalar::int(-2));
        assert_eq!(Scalar::parse("0.5").unwrap(), Scalar::Float(0.5));
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(2.0f64.sqrt()), "1.41421356237");
    }
}
