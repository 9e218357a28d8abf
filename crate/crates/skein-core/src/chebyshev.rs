//! The normalized Chebyshev families `T_n` and `S_n` as integer polynomial
//! expansions, plus index normalization for negative indices and the change
//! of basis between powers and the `S` family.
//!
//! Both families satisfy `P_{n+1} = x P_n - P_{n-1}`; the seeds are
//! `T_0 = 2, T_1 = x` and `S_0 = 1, S_1 = x`. For all integer indices the
//! trigonometric definitions force `T_{-n} = T_n`, `S_{-1} = 0` and
//! `S_{-n-2} = -S_n`; those identities are applied eagerly so that sparse
//! supports stay canonical.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::sync::{LazyLock, Mutex};

/// Which Chebyshev family an expansion belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChebKind {
    T,
    S,
}

/// Power-basis expansion of `T_n` or `S_n` for `n >= 0`. All degrees share
/// the parity of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebyshevExpansion {
    pub kind: ChebKind,
    pub index: i64,
    pub coeffs: BTreeMap<i64, BigInt>,
}

/// Normalization of `S_index` for arbitrary integer index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SNormal {
    /// `S_{-1} = 0`.
    Zero,
    /// `S_index = sign * S_m` with `m >= 0`.
    Term { negate: bool, index: i64 },
}

/// `S_{-1} = 0`, `S_{-n-2} = -S_n`, identity for `index >= 0`.
pub fn s_normalize(index: i64) -> SNormal {
    if index >= 0 {
        SNormal::Term { negate: false, index }
    } else if index == -1 {
        SNormal::Zero
    } else {
        SNormal::Term { negate: true, index: -index - 2 }
    }
}

/// `T_{-n} = T_n`.
pub fn t_normalize(index: i64) -> i64 {
    index.abs()
}

type Cache = Mutex<HashMap<(ChebKind, i64), Vec<(i64, BigInt)>>>;
static EXPANSION_CACHE: LazyLock<Cache> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Power-basis expansion of `T_index` or `S_index`, `index >= 0`, by the
/// three-term recursion. Cabling expands the same indices repeatedly, so
/// results are cached; the cache fill is idempotent.
pub fn expand(kind: ChebKind, index: i64) -> ChebyshevExpansion {
    assert!(index >= 0, "expand requires a nonnegative index");
    let coeffs = expand_coeffs(kind, index);
    ChebyshevExpansion {
        kind,
        index,
        coeffs: coeffs.into_iter().collect(),
    }
}

fn expand_coeffs(kind: ChebKind, index: i64) -> Vec<(i64, BigInt)> {
    if let Some(hit) = EXPANSION_CACHE.lock().unwrap().get(&(kind, index)) {
        return hit.clone();
    }
    let result: Vec<(i64, BigInt)> = match index {
        0 => match kind {
            ChebKind::T => vec![(0, BigInt::from(2))],
            ChebKind::S => vec![(0, BigInt::from(1))],
        },
        1 => vec![(1, BigInt::from(1))],
        _ => {
            let prev1 = expand_coeffs(kind, index - 1);
            let prev2 = expand_coeffs(kind, index - 2);
            let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
            for (d, c) in &prev1 {
                *acc.entry(d + 1).or_default() += c;
            }
            for (d, c) in &prev2 {
                let slot = acc.entry(*d).or_default();
                *slot -= c;
                if slot.is_zero() {
                    acc.remove(d);
                }
            }
            acc.into_iter().collect()
        }
    };
    EXPANSION_CACHE
        .lock()
        .unwrap()
        .insert((kind, index), result.clone());
    result
}

/// Inverse change of basis: `x^power = sum_j c_j S_j` with all `c_j >= 0`.
/// Built by repeated use of `x S_j = S_{j+1} + S_{j-1}` (and `S_{-1} = 0`),
/// so it round-trips exactly with `expand`.
pub fn power_to_s_basis(power: i64) -> BTreeMap<i64, BigInt> {
    assert!(power >= 0, "power_to_s_basis requires a nonnegative power");
    let mut cur: BTreeMap<i64, BigInt> = BTreeMap::new();
    cur.insert(0, BigInt::from(1));
    for _ in 0..power {
        let mut next: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&j, c) in &cur {
            *next.entry(j + 1).or_default() += c;
            if j >= 1 {
                *next.entry(j - 1).or_default() += c;
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    cur
}
