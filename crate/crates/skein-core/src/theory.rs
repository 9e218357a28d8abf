//! Selector for the two skein-relation systems.

use crate::laurent::LaurentPoly;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which skein theory a computation runs in. The two theories share the
/// same boundary algebra but differ in loop values, module action signs,
/// and the constant in the `Y`/`Z` change of basis. A single computation
/// never mixes theories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Kauffman,
    RT,
}

impl Theory {
    /// Value of a trivial loop: `-t^2 - t^-2` (Kauffman) or `t^2 + t^-2` (RT).
    pub fn loop_value(self) -> LaurentPoly {
        match self {
            Theory::Kauffman => LaurentPoly::from_terms([(2, -1), (-2, -1)]),
            Theory::RT => LaurentPoly::from_terms([(2, 1), (-2, 1)]),
        }
    }

    /// The constant `s` in `Y = t^2 y + s`, `Z = t^-2 z + s`.
    pub fn yz_shift(self) -> i64 {
        match self {
            Theory::Kauffman => 1,
            Theory::RT => -1,
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theory::Kauffman => write!(f, "kauffman"),
            Theory::RT => write!(f, "rt"),
        }
    }
}

impl std::str::FromStr for Theory {
    type Err = crate::error::SkeinError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "kauffman" | "k" => Ok(Theory::Kauffman),
            "rt" => Ok(Theory::RT),
            other => Err(crate::error::SkeinError::Parse(format!(
                "unknown theory {other:?} (expected kauffman or rt)"
            ))),
        }
    }
}
