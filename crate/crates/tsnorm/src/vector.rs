//! Finitely supported vectors, coordinate intervals and the grid vectors
//! of the `X_k` spaces.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{Scalar, ScalarError, ScalarMode};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VectorError {
    #[error("coordinate indices start at 1")]
    IndexZero,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("interval requires 1 <= lo <= hi, got [{lo}, {hi}]")]
    BadInterval { lo: u64, hi: u64 },
    #[error("l_p norm requires p >= 1, got {0}")]
    BadExponent(f64),
    #[error("grid entry ({row}, {col}) outside the upper-triangular grid with k = {k}")]
    OffGrid { row: usize, col: u64, k: usize },
    #[error("invalid vector json: {0}")]
    Json(String),
}

/// A closed interval `[lo, hi]` of coordinate indices, `1 <= lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    lo: u64,
    hi: u64,
}

impl Interval {
    pub fn new(lo: u64, hi: u64) -> Result<Self, VectorError> {
        if lo == 0 || lo > hi {
            return Err(VectorError::BadInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn contains(&self, i: u64) -> bool {
        self.lo <= i && i <= self.hi
    }

    /// `E < F` in the successive-sets sense: `max E < min F`.
    pub fn precedes(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Exponent for [`SparseVector::lp_norm`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lp {
    Finite(f64),
    Infinity,
}

impl Lp {
    pub fn parse(text: &str) -> Result<Lp, VectorError> {
        match text.trim() {
            "inf" | "infinity" | "oo" => Ok(Lp::Infinity),
            t => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| VectorError::BadExponent(f64::NAN))?;
                Ok(Lp::Finite(p))
            }
        }
    }
}

/// A finitely supported sequence: strictly increasing coordinate indices
/// (starting at 1) mapped to nonzero scalars of a single precision mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    mode: ScalarMode,
    entries: BTreeMap<u64, Scalar>,
}

impl SparseVector {
    pub fn zero(mode: ScalarMode) -> Self {
        SparseVector {
            mode,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a vector from `(index, coefficient)` pairs.  Repeated indices
    /// accumulate; zero results are dropped.
    pub fn from_entries<I>(mode: ScalarMode, pairs: I) -> Result<Self, VectorError>
    where
        I: IntoIterator<Item = (u64, Scalar)>,
    {
        let mut entries: BTreeMap<u64, Scalar> = BTreeMap::new();
        for (idx, s) in pairs {
            if idx == 0 {
                return Err(VectorError::IndexZero);
            }
            if s.mode() != mode {
                return Err(ScalarError::MixedMode.into());
            }
            if let Scalar::Float(v) = &s {
                if !v.is_finite() {
                    return Err(ScalarError::NonFinite(*v).into());
                }
            }
            match entries.remove(&idx) {
                Some(prev) => {
                    let sum = prev.try_add(&s)?;
                    if !sum.is_zero() {
                        entries.insert(idx, sum);
                    }
                }
                None => {
                    if !s.is_zero() {
                        entries.insert(idx, s);
                    }
                }
            }
        }
        Ok(SparseVector { mode, entries })
    }

    /// The exact-mode unit vector `e_i`.
    pub fn unit(i: u64) -> Self {
        SparseVector::from_entries(ScalarMode::Exact, [(i, Scalar::int(1))])
            .expect("unit vector")
    }

    pub fn unit_float(i: u64) -> Self {
        SparseVector::from_entries(ScalarMode::Float, [(i, Scalar::Float(1.0))])
            .expect("unit vector")
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Iterates `(index, coefficient)` in strictly increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &Scalar)> {
        self.entries.iter().map(|(i, s)| (*i, s))
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    pub fn min_support(&self) -> Option<u64> {
        self.entries.keys().next().copied()
    }

    pub fn max_support(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    pub fn coeff(&self, i: u64) -> Scalar {
        self.entries
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.mode))
    }

    /// Zeroes every coordinate outside `interval` (the projection `Ex`).
    pub fn restrict(&self, interval: Interval) -> SparseVector {
        let entries = self
            .entries
            .range(interval.lo()..=interval.hi())
            .map(|(i, s)| (*i, s.clone()))
            .collect();
        SparseVector {
            mode: self.mode,
            entries,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<SparseVector, VectorError> {
        if c.is_zero() {
            return Ok(SparseVector::zero(self.mode));
        }
        let mut entries = BTreeMap::new();
        for (i, s) in &self.entries {
            let prod = s.try_mul(c)?;
            if !prod.is_zero() {
                entries.insert(*i, prod);
            }
        }
        Ok(SparseVector {
            mode: self.mode,
            entries,
        })
    }

    pub fn try_add(&self, other: &SparseVector) -> Result<SparseVector, VectorError> {
        if self.mode != other.mode {
            return Err(ScalarError::MixedMode.into());
        }
        SparseVector::from_entries(
            self.mode,
            self.iter()
                .map(|(i, s)| (i, s.clone()))
                .chain(other.iter().map(|(i, s)| (i, s.clone()))),
        )
    }

    pub fn disjoint_from(&self, other: &SparseVector) -> bool {
        // supports are sorted; a merge walk would be faster but supports are small
        self.support().all(|i| !other.entries.contains_key(&i))
    }

    pub fn to_float_mode(&self) -> SparseVector {
        SparseVector {
            mode: ScalarMode::Float,
            entries: self
                .entries
                .iter()
                .map(|(i, s)| (*i, s.to_float_mode()))
                .collect(),
        }
    }

    /// Standard `ℓ_p` norm of the coefficient sequence.  Exact for
    /// `p ∈ {1, ∞}` on exact vectors, float otherwise.
    pub fn lp_norm(&self, p: Lp) -> Result<Scalar, VectorError> {
        match p {
            Lp::Infinity => {
                let mut best = Scalar::zero(self.mode);
                for (_, s) in self.iter() {
                    let a = s.abs();
                    if best.partial_cmp(&a) == Some(std::cmp::Ordering::Less) {
                        best = a;
                    }
                }
                Ok(best)
            }
            Lp::Finite(p) if p == 1.0 => {
                let mut sum = Scalar::zero(self.mode);
                for (_, s) in self.iter() {
                    sum = sum.try_add(&s.abs())?;
                }
                Ok(sum)
            }
            Lp::Finite(p) if p >= 1.0 => {
                let total: f64 = self
                    .iter()
                    .map(|(_, s)| s.to_f64().abs().powf(p))
                    .sum();
                Ok(Scalar::Float(total.powf(1.0 / p)))
            }
            Lp::Finite(p) => Err(VectorError::BadExponent(p)),
        }
    }

    /// Serializes to the `{"entries": [[index, coeff], ...]}` JSON format,
    /// exact coefficients as `"num/den"` strings, float as JSON numbers.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .iter()
            .map(|(i, s)| {
                let coeff = match s {
                    Scalar::Exact(_) => serde_json::Value::String(s.to_string()),
                    Scalar::Float(v) => serde_json::json!(v),
                };
                serde_json::json!([i, coeff])
            })
            .collect();
        serde_json::json!({ "entries": entries })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<SparseVector, VectorError> {
        let entries = value
            .get("entries")
            .and_then(|e| e.as_array())
            .ok_or_else(|| VectorError::Json("missing \"entries\" array".into()))?;
        let mut pairs = Vec::with_capacity(entries.len());
        let mut mode = None;
        for entry in entries {
            let pair = entry
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| VectorError::Json(format!("bad entry {entry}")))?;
            let idx = pair[0]
                .as_u64()
                .ok_or_else(|| VectorError::Json(format!("bad index {}", pair[0])))?;
            let coeff = match &pair[1] {
                serde_json::Value::String(s) => {
                    Scalar::parse(s).map_err(|e| VectorError::Json(e.to_string()))?
                }
                serde_json::Value::Number(n) => {
                    let v = n
                        .as_f64()
                        .ok_or_else(|| VectorError::Json(format!("bad coeff {n}")))?;
                    if n.is_i64() || n.is_u64() {
                        Scalar::int(n.as_i64().unwrap_or(v as i64))
                    } else {
                        Scalar::float(v).map_err(|e| VectorError::Json(e.to_string()))?
                    }
                }
                other => return Err(VectorError::Json(format!("bad coeff {other}"))),
            };
            let m = coeff.mode();
            match mode {
                None => mode = Some(m),
                Some(prev) if prev != m => {
                    return Err(VectorError::Json(
                        "mixed exact and float coefficients".into(),
                    ))
                }
                _ => {}
            }
            pairs.push((idx, coeff));
        }
        SparseVector::from_entries(mode.unwrap_or(ScalarMode::Exact), pairs)
    }

    /// Absolute coefficients and their coordinates, for the norm engines.
    pub(crate) fn abs_f64(&self) -> (Vec<u64>, Vec<f64>) {
        let coords: Vec<u64> = self.support().collect();
        let coefs: Vec<f64> = self.iter().map(|(_, s)| s.to_f64().abs()).collect();
        (coords, coefs)
    }

    pub(crate) fn abs_exact(&self) -> (Vec<u64>, Vec<num::BigRational>) {
        let coords: Vec<u64> = self.support().collect();
        let coefs: Vec<num::BigRational> = self
            .iter()
            .map(|(_, s)| match s {
                Scalar::Exact(r) => r.abs(),
                Scalar::Float(v) => num::BigRational::from_float(*v).expect("finite"),
            })
            .collect();
        (coords, coefs)
    }
}

impl Serialize for SparseVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SparseVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        SparseVector::from_json(&value).map_err(D::Error::custom)
    }
}

/// A finitely supported vector on the upper-triangular grid
/// `{(i, j) : 1 <= i <= k, j >= i}` of `X_k`.  Coefficients are float;
/// the `X_k` engine has no exact mode.
#[derive(Debug, Clone, PartialEq)]
pub struct GridVector {
    k: usize,
    entries: BTreeMap<(usize, u64), f64>,
}

impl GridVector {
    pub fn new<I>(k: usize, cells: I) -> Result<Self, VectorError>
    where
        I: IntoIterator<Item = (usize, u64, f64)>,
    {
        if k == 0 {
            return Err(VectorError::OffGrid { row: 0, col: 0, k });
        }
        let mut entries = BTreeMap::new();
        for (row, col, coeff) in cells {
            if row == 0 || row > k || col < row as u64 {
                return Err(VectorError::OffGrid { row, col, k });
            }
            if !coeff.is_finite() {
                return Err(ScalarError::NonFinite(coeff).into());
            }
            if coeff != 0.0 {
                *entries.entry((row, col)).or_insert(0.0) += coeff;
            }
        }
        entries.retain(|_, v| *v != 0.0);
        Ok(GridVector { k, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn cell_count(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u64, f64)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    pub fn max_column(&self) -> Option<u64> {
        self.entries.keys().map(|&(_, c)| c).max()
    }

    /// Cells sorted by column, then row.
    pub fn cells_by_column(&self) -> Vec<(usize, u64, f64)> {
        let mut cells: Vec<(usize, u64, f64)> = self.iter().collect();
        cells.sort_by_key(|&(r, c, _)| (c, r));
        cells
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .iter()
            .map(|(r, c, v)| serde_json::json!([r, c, v]))
            .collect();
        serde_json::json!({ "k": self.k, "entries": entries })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<GridVector, VectorError> {
        let k = value
            .get("k")
            .and_then(|k| k.as_u64())
            .ok_or_else(|| VectorError::Json("missing \"k\"".into()))? as usize;
        let entries = value
            .get("entries")
            .and_then(|e| e.as_array())
            .ok_or_else(|| VectorError::Json("missing \"entries\" array".into()))?;
        let mut cells = Vec::with_capacity(entries.len());
        for entry in entries {
            let triple = entry
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| VectorError::Json(format!("bad grid entry {entry}")))?;
            let row = triple[0]
                .as_u64()
                .ok_or_else(|| VectorError::Json(format!("bad row {}", triple[0])))?;
            let col = triple[1]
                .as_u64()
                .ok_or_else(|| VectorError::Json(format!("bad column {}", triple[1])))?;
            let coeff = triple[2]
                .as_f64()
                .ok_or_else(|| VectorError::Json(format!("bad coeff {}", triple[2])))?;
            cells.push((row as usize, col, coeff));
        }
        GridVector::new(k, cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u64) -> SparseVector {
        SparseVector::unit(i)
    }

    #[test]
    fn restrict_projects() {
        let x = e(1).try_add(&e(2)).unwrap();
        let r = x.restrict(Interval::new(2, 5).unwrap());
        assert_eq!(r, e(2));
    }

    #[test]
    fn restrict_disjoint_is_zero() {
        let x = e(3);
        let r = x.restrict(Interval::new(10, 20).unwrap());
        assert!(r.is_zero());
    }

    #[test]
    fn zero_coefficients_dropped() {
        let x = SparseVector::from_entries(
            ScalarMode::Exact,
            [(1, Scalar::int(1)), (1, Scalar::int(-1)), (2, Scalar::int(0))],
        )
        .unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn index_zero_rejected() {
        let r = SparseVector::from_entries(ScalarMode::Exact, [(0, Scalar::int(1))]);
        assert!(matches!(r, Err(VectorError::IndexZero)));
    }

    #[test]
    fn mixed_modes_rejected() {
        let a = e(1);
        let b = SparseVector::unit_float(2);
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn lp_norm_examples() {
        let x = e(3);
        assert_eq!(x.lp_norm(Lp::Infinity).unwrap(), Scalar::int(1));
        let y = e(1).try_add(&e(2)).unwrap();
        let two = y.lp_norm(Lp::Finite(2.0)).unwrap().to_f64();
        assert!((two - 2f64.sqrt()).abs() < 1e-12);
        assert!(y.lp_norm(Lp::Finite(0.5)).is_err());
    }

    #[test]
    fn interval_invariants() {
        assert!(Interval::new(0, 3).is_err());
        assert!(Interval::new(5, 3).is_err());
        let a = Interval::new(1, 3).unwrap();
        let b = Interval::new(4, 4).unwrap();
        assert!(a.precedes(&b));
    }

    #[test]
    fn json_round_trip() {
        let x = SparseVector::from_entries(
            ScalarMode::Exact,
            [(1, Scalar::int(1)), (2, Scalar::ratio(1, 4).unwrap())],
        )
        .unwrap();
        let j = x.to_json();
        assert_eq!(SparseVector::from_json(&j).unwrap(), x);
    }

    #[test]
    fn grid_rejects_lower_triangle() {
        assert!(GridVector::new(3, [(2, 1, 1.0)]).is_err());
        assert!(GridVector::new(3, [(4, 5, 1.0)]).is_err());
        assert!(GridVector::new(3, [(2, 2, 1.0)]).is_ok());
    }
}
