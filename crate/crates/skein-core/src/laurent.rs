//! Exact arithmetic in the ring of Laurent polynomials in one variable `t`
//! over arbitrary-precision integers.
//!
//! Values are kept in canonical form at all times: the term map never stores
//! a zero coefficient, so two polynomials are equal iff their maps are equal.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::SkeinError;

/// A Laurent polynomial in `t` with `BigInt` coefficients, stored sparsely
/// by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The monomial `coeff * t^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// The unit `sign * t^exponent`, with `sign` restricted to `+1`/`-1`.
    pub fn unit_monomial(sign: i32, exponent: i64) -> Self {
        assert!(sign == 1 || sign == -1, "unit sign must be +1 or -1");
        Self::monomial(sign, exponent)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, impl Into<BigInt>)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// True if the polynomial is `±t^k`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().magnitude().is_one()
    }

    /// Coefficient of `t^exp` (zero if absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: impl Into<BigInt>) {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self * c * t^exp` without building an intermediate polynomial.
    pub fn scaled(&self, coeff: &BigInt, exp: i64) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + exp, c * coeff))
                .collect(),
        }
    }

    /// `self * t^exp`.
    pub fn shifted(&self, exp: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + exp, c.clone())).collect(),
        }
    }

    /// The involution `t -> t^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// `self += other * coeff * t^exp`.
    pub(crate) fn add_assign_scaled(&mut self, other: &Self, coeff: &BigInt, exp: i64) {
        if coeff.is_zero() {
            return;
        }
        for (&e, c) in &other.terms {
            self.add_term(e + exp, c * coeff);
        }
    }

    /// JSON form: array of `[exponent, coefficient-as-decimal-string]`,
    /// ascending by exponent.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&e, c)| serde_json::json!([e, c.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, SkeinError> {
        let arr = value
            .as_array()
            .ok_or_else(|| SkeinError::Parse("laurent: expected array".into()))?;
        let mut out = Self::zero();
        for pair in arr {
            let pair = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| SkeinError::Parse("laurent: expected [exp, coeff] pair".into()))?;
            let exp = pair[0]
                .as_i64()
                .ok_or_else(|| SkeinError::Parse("laurent: exponent must be an integer".into()))?;
            let coeff = match &pair[1] {
                serde_json::Value::String(s) => BigInt::from_str(s)
                    .map_err(|e| SkeinError::Parse(format!("laurent: bad coefficient: {e}")))?,
                serde_json::Value::Number(n) => {
                    let Some(i) = n.as_i64() else {
                        return Err(SkeinError::Parse("laurent: bad numeric coefficient".into()));
                    };
                    BigInt::from(i)
                }
                _ => return Err(SkeinError::Parse("laurent: coefficient must be a string".into())),
            };
            out.add_term(exp, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    /// Text form with ascending exponents, e.g. `-t^-2 - t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.magnitude();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = SkeinError;

    /// Parses the text form: signed integer coefficients with `t^k` powers,
    /// e.g. `-t^2 - t^-2`, `3*t^-1 + 2`, `t`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(SkeinError::Parse("laurent: empty input".into()));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let bytes = compact.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut coeff = if start == i {
                BigInt::one()
            } else {
                BigInt::from_str(&compact[start..i])
                    .map_err(|e| SkeinError::Parse(format!("laurent: {e}")))?
            };
            if sign < 0 {
                coeff = -coeff;
            }
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
            let exp = if i < bytes.len() && bytes[i] == b't' {
                i += 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let estart = i;
                    if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    compact[estart..i]
                        .parse::<i64>()
                        .map_err(|e| SkeinError::Parse(format!("laurent: exponent: {e}")))?
                } else {
                    1
                }
            } else {
                if start == i {
                    return Err(SkeinError::Parse(format!(
                        "laurent: expected term at byte {i} of {compact:?}"
                    )));
                }
                0
            };
            out.add_term(exp, coeff);
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        Self::from_json(&value).map_err(D::Error::custom)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $trait::$method(&self, rhs)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_disjoint_supports() {
        assert_eq!(p("t") + p("t^-1"), p("t^-1 + t"));
    }

    #[test]
    fn add_cancellation() {
        assert_eq!(p("t^2 + 1") + p("-t^2"), LaurentPoly::one());
    }

    #[test]
    fn add_identity() {
        let x = p("3*t^5 - 2*t^-3");
        assert_eq!(LaurentPoly::zero() + x.clone(), x);
    }

    #[test]
    fn mul_difference_of_squares() {
        assert_eq!(p("t + t^-1") * p("t - t^-1"), p("t^2 - t^-2"));
    }

    #[test]
    fn mul_loop_value_squared() {
        assert_eq!(p("-t^2 - t^-2") * p("-t^2 - t^-2"), p("t^-4 + 2 + t^4"));
    }

    #[test]
    fn mul_monomial_shift() {
        assert_eq!(p("t^3") * p("1 + t^-1"), p("t^3 + t^2"));
    }

    #[test]
    fn unit_monomials() {
        assert_eq!(LaurentPoly::unit_monomial(1, 0), LaurentPoly::one());
        assert_eq!(LaurentPoly::unit_monomial(-1, 2), p("-t^2"));
        assert_eq!(LaurentPoly::unit_monomial(1, -6), p("t^-6"));
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "-t^2 - t^-2", "2 + t", "-3*t^-7 + t^2 - 1"] {
            let x = p(s);
            assert_eq!(p(&x.to_string()), x);
        }
        assert_eq!(p("-t^2 - t^-2").to_string(), "-t^-2 - t^2");
    }

    #[test]
    fn json_round_trip() {
        let x = p("-3*t^-7 + t^2 - 1");
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<LaurentPoly>(&j).unwrap(), x);
        assert_eq!(j, r#"[[-7,"-3"],[0,"-1"],[2,"1"]]"#);
    }

    #[test]
    fn bar_involution() {
        let x = p("t^3 - 2*t^-1");
        assert_eq!(x.bar(), p("t^-3 - 2*t"));
        assert_eq!(x.bar().bar(), x);
    }
}
