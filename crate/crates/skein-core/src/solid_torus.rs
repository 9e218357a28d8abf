//! The skein module of the solid torus under the boundary-torus algebra
//! action, in both theories.
//!
//! The module is free on `S_j(alpha)`, `j >= 0`, where `alpha` is the core
//! curve. On basis classes the action is
//!
//! ```text
//! (p,q)_T S_{j-1} = t^{-pq} [ t^{2jq} S_{j-p-1} + t^{-2jq} S_{j+p-1} ]   (RT)
//! ```
//!
//! with an extra factor `(-1)^q` for the Kauffman bracket; negative indices
//! are normalized away through `S_{-1} = 0`, `S_{-n-2} = -S_n`.

use crate::chebyshev::{s_normalize, SNormal};
use crate::error::SkeinError;
use crate::laurent::LaurentPoly;
use crate::theory::Theory;
use crate::torus::{CurveClass, TorusElement};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse element of the solid-torus skein module over the `S` basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolidTorusElement {
    terms: BTreeMap<i64, LaurentPoly>,
}

impl SolidTorusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty skein `S_0 = 1`.
    pub fn empty() -> Self {
        Self::basis(0)
    }

    /// The basis element `S_j(alpha)` for arbitrary integer `j`, normalized.
    pub fn basis(j: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(j, LaurentPoly::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> {
        self.terms.iter().map(|(&j, c)| (j, c))
    }

    pub fn coeff(&self, j: i64) -> LaurentPoly {
        self.terms.get(&j).cloned().unwrap_or_default()
    }

    /// Add `coeff * S_j` with index normalization.
    pub fn add_term(&mut self, j: i64, coeff: LaurentPoly) {
        let (index, coeff) = match s_normalize(j) {
            SNormal::Zero => return,
            SNormal::Term { negate: false, index } => (index, coeff),
            SNormal::Term { negate: true, index } => (index, -&coeff),
        };
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(index).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&j, c) in &other.terms {
            out.add_term(j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&j, c) in &other.terms {
            out.add_term(j, -c);
        }
        out
    }

    pub fn scaled(&self, coeff: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (&j, c) in &self.terms {
            out.add_term(j, c * coeff);
        }
        out
    }

    /// JSON form: `[[j, coeff], ...]` ascending in `j`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&j, c)| serde_json::json!([j, c.to_json()]))
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, SkeinError> {
        let arr = value
            .as_array()
            .ok_or_else(|| SkeinError::Parse("solid torus element: expected array".into()))?;
        let mut out = Self::zero();
        for item in arr {
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| SkeinError::Parse("solid torus element: expected [j, coeff]".into()))?;
            let j = pair[0]
                .as_i64()
                .ok_or_else(|| SkeinError::Parse("solid torus element: bad index".into()))?;
            out.add_term(j, LaurentPoly::from_json(&pair[1])?);
        }
        Ok(out)
    }
}

impl fmt::Display for SolidTorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&j, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*S_{j}")?;
        }
        Ok(())
    }
}

impl Serialize for SolidTorusElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SolidTorusElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        Self::from_json(&value).map_err(serde::de::Error::custom)
    }
}

/// Bilinear extension of the boundary action displayed above.
pub fn act_solid_torus(theory: Theory, a: &TorusElement, w: &SolidTorusElement) -> SolidTorusElement {
    let mut out = SolidTorusElement::zero();
    for (class, ca) in a.terms() {
        match class {
            CurveClass::Empty => {
                for (j, cw) in w.terms() {
                    out.add_term(j, ca * cw);
                }
            }
            CurveClass::Curve { p, q } => {
                for (k, cw) in w.terms() {
                    let j = k + 1;
                    let mut base = (ca * cw).shifted(-p * q);
                    if theory == Theory::Kauffman && q.rem_euclid(2) == 1 {
                        base = -base;
                    }
                    out.add_term(j - p - 1, base.shifted(2 * j * q));
                    out.add_term(j + p - 1, base.shifted(-2 * j * q));
                }
            }
        }
    }
    out
}
