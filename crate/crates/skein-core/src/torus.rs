//! The skein algebra of the cylinder over the torus, with basis `(p,q)_T`
//! and the product-to-sum multiplication
//!
//! ```text
//! (p,q)_T (r,s)_T = t^{ps-qr} (p+r,q+s)_T + t^{-(ps-qr)} (p-r,q-s)_T
//! ```
//!
//! which is the same for both theories, plus the embedding into the quantum
//! torus defined on basis classes by `(p,q)_T -> e(p,q) + e(-p,-q)` with
//! balanced monomials `e(p,q) = t^{-pq} l^p m^q`.

use crate::error::SkeinError;
use crate::laurent::LaurentPoly;
use crate::qt::QTElement;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

/// A basis class of the torus skein algebra. `Curve { p, q }` is the
/// Chebyshev class `(p,q)_T` of the slope-`q/p` curve, normalized so that
/// `p > 0`, or `p = 0 && q >= 0` (the pair `(p,q)` and `(-p,-q)` name the
/// same unoriented class). `Empty` is the empty skein, the unit of the
/// algebra; `(0,0)_T` equals twice the unit and is only transient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveClass {
    Empty,
    Curve { p: i64, q: i64 },
}

impl CurveClass {
    /// Normalized representative of the curve class `(p,q)`. No sign is
    /// introduced: the Chebyshev class is orientation-independent.
    pub fn normalize(p: i64, q: i64) -> Self {
        if p < 0 || (p == 0 && q < 0) {
            CurveClass::Curve { p: -p, q: -q }
        } else {
            CurveClass::Curve { p, q }
        }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveClass::Empty => write!(f, "1"),
            CurveClass::Curve { p, q } => write!(f, "({p},{q})_T"),
        }
    }
}

/// A sparse linear combination of normalized torus basis classes with
/// Laurent coefficients. `(0,0)_T` is rewritten to `2 * Empty` on insertion,
/// so stored keys are always honest basis elements and equality is exact.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorusElement {
    terms: BTreeMap<CurveClass, LaurentPoly>,
}

impl TorusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit of the algebra: the empty skein with coefficient 1.
    pub fn identity() -> Self {
        let mut out = Self::zero();
        out.add_term_class(CurveClass::Empty, LaurentPoly::one());
        out
    }

    /// The basis element `(p,q)_T` (so `(0,0)` yields `2 * identity`).
    pub fn class(p: i64, q: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(p, q, LaurentPoly::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (CurveClass, &LaurentPoly)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, class: CurveClass) -> LaurentPoly {
        self.terms.get(&class).cloned().unwrap_or_default()
    }

    /// Add `coeff * (p,q)_T`, normalizing the class (and `(0,0) -> 2 * unit`).
    pub fn add_term(&mut self, p: i64, q: i64, coeff: LaurentPoly) {
        if (p, q) == (0, 0) {
            self.add_term_class(CurveClass::Empty, coeff.scaled(&BigInt::from(2), 0));
        } else {
            self.add_term_class(CurveClass::normalize(p, q), coeff);
        }
    }

    fn add_term_class(&mut self, class: CurveClass, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(class).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&class);
        }
    }

    pub fn scaled(&self, coeff: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (&k, c) in &self.terms {
            out.add_term_class(k, c * coeff);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term_class(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term_class(k, -c);
        }
        out
    }

    /// Product-to-sum multiplication, extended bilinearly.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &other.terms {
                let c = ca * cb;
                match (ka, kb) {
                    (CurveClass::Empty, CurveClass::Empty) => {
                        out.add_term_class(CurveClass::Empty, c);
                    }
                    (CurveClass::Empty, k) | (k, CurveClass::Empty) => {
                        out.add_term_class(k, c);
                    }
                    (CurveClass::Curve { p, q }, CurveClass::Curve { p: r, q: s }) => {
                        let e = p * s - q * r;
                        out.add_term(p + r, q + s, c.shifted(e));
                        out.add_term(p - r, q - s, c.shifted(-e));
                    }
                }
            }
        }
        out
    }

    /// The algebra map into the quantum torus sending `(p,q)_T` to
    /// `e(p,q) + e(-p,-q)` with `e(p,q) = t^{-pq} l^p m^q`. The exponent
    /// sign in the balanced unit is the unique choice under which this is
    /// a homomorphism for the product-to-sum multiplication; it sends
    /// `(1,0)_T` to `l + l^{-1}` and `(0,1)_T` to `m + m^{-1}`.
    pub fn embed_quantum_torus(&self) -> QTElement {
        let mut out = QTElement::zero();
        for (&k, c) in &self.terms {
            match k {
                CurveClass::Empty => out.add_term(0, 0, c.clone()),
                CurveClass::Curve { p, q } => {
                    out.add_term(p, q, c.shifted(-p * q));
                    out.add_term(-p, -q, c.shifted(-p * q));
                }
            }
        }
        out
    }

    /// JSON form: list of `{"p": int, "q": int, "coeff": laurent}`. The pair
    /// `p = q = 0` denotes the empty-skein unit (the class `(0,0)_T` itself
    /// never survives normalization; to feed it in, use the unit with
    /// coefficient 2).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&k, c)| {
                    let (p, q) = match k {
                        CurveClass::Empty => (0, 0),
                        CurveClass::Curve { p, q } => (p, q),
                    };
                    serde_json::json!({"p": p, "q": q, "coeff": c.to_json()})
                })
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, SkeinError> {
        let arr = value
            .as_array()
            .ok_or_else(|| SkeinError::Parse("torus element: expected array".into()))?;
        let mut out = Self::zero();
        for item in arr {
            let p = item
                .get("p")
                .and_then(|v| v.as_i64())
                .ok_or_else(|| SkeinError::Parse("torus element: missing integer p".into()))?;
            let q = item
                .get("q")
                .and_then(|v| v.as_i64())
                .ok_or_else(|| SkeinError::Parse("torus element: missing integer q".into()))?;
            let coeff = LaurentPoly::from_json(
                item.get("coeff")
                    .ok_or_else(|| SkeinError::Parse("torus element: missing coeff".into()))?,
            )?;
            if (p, q) == (0, 0) {
                out.add_term_class(CurveClass::Empty, coeff);
            } else {
                out.add_term(p, q, coeff);
            }
        }
        Ok(out)
    }
}

impl Mul for &TorusElement {
    type Output = TorusElement;
    fn mul(self, rhs: &TorusElement) -> TorusElement {
        self.multiply(rhs)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*{k}")?;
        }
        Ok(())
    }
}

impl Serialize for TorusElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TorusElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        Self::from_json(&value).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_cases() {
        assert_eq!(CurveClass::normalize(-1, 3), CurveClass::Curve { p: 1, q: -3 });
        assert_eq!(CurveClass::normalize(0, -2), CurveClass::Curve { p: 0, q: 2 });
        assert_eq!(CurveClass::normalize(2, 5), CurveClass::Curve { p: 2, q: 5 });
    }

    #[test]
    fn longitude_times_meridian() {
        let prod = TorusElement::class(1, 0).multiply(&TorusElement::class(0, 1));
        let mut expect = TorusElement::zero();
        expect.add_term(1, 1, p("t"));
        expect.add_term(1, -1, p("t^-1"));
        assert_eq!(prod, expect);
    }

    #[test]
    fn exponent_minus_two() {
        let prod = TorusElement::class(1, 1).multiply(&TorusElement::class(1, -1));
        let mut expect = TorusElement::zero();
        expect.add_term(2, 0, p("t^-2"));
        expect.add_term(0, 2, p("t^2"));
        assert_eq!(prod, expect);
    }

    #[test]
    fn self_product_gives_double_unit() {
        let a = TorusElement::class(1, 2);
        let prod = a.multiply(&a);
        let mut expect = TorusElement::class(2, 4);
        expect.add_term_class(CurveClass::Empty, p("2"));
        assert_eq!(prod, expect);
    }

    #[test]
    fn unit_law() {
        let mut a = TorusElement::class(3, -2).scaled(&p("t^5 - 1"));
        a.add_term(0, 4, p("-t^-1"));
        assert_eq!(TorusElement::identity().multiply(&a), a);
        assert_eq!(a.multiply(&TorusElement::identity()), a);
    }

    #[test]
    fn embed_generators() {
        let l = TorusElement::class(1, 0).embed_quantum_torus();
        assert_eq!(l, {
            let mut e = QTElement::zero();
            e.add_term(1, 0, LaurentPoly::one());
            e.add_term(-1, 0, LaurentPoly::one());
            e
        });
        let m = TorusElement::class(0, 1).embed_quantum_torus();
        assert_eq!(m, {
            let mut e = QTElement::zero();
            e.add_term(0, 1, LaurentPoly::one());
            e.add_term(0, -1, LaurentPoly::one());
            e
        });
        // image of T_0 of any curve is twice the identity
        let two = TorusElement::class(0, 0).embed_quantum_torus();
        assert_eq!(two, {
            let mut e = QTElement::zero();
            e.add_term(0, 0, p("2"));
            e
        });
    }

    #[test]
    fn json_round_trip() {
        let mut a = TorusElement::class(2, -3).scaled(&p("t^2 - t^-2"));
        a.add_term_class(CurveClass::Empty, p("5"));
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<TorusElement>(&j).unwrap(), a);
    }

    #[test]
    fn product_symmetry_is_bar_on_structure_constants() {
        for (p1, q1, r, s) in [(1i64, 0i64, 0i64, 1i64), (2, 3, 1, -1), (3, -2, 2, 5)] {
            let ab = TorusElement::class(p1, q1).multiply(&TorusElement::class(r, s));
            let ba = TorusElement::class(r, s).multiply(&TorusElement::class(p1, q1));
            let ab_bar: Vec<_> = ab.terms().map(|(k, c)| (k, c.bar())).collect();
            let ba_terms: Vec<_> = ba.terms().map(|(k, c)| (k, c.clone())).collect();
            assert_eq!(ab_bar, ba_terms);
        }
    }
}
