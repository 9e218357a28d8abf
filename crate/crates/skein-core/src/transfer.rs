//! Moving skein identities between the two theories: every relation
//! `sum c_k L_k = 0` holding in one theory holds in the other after each
//! term is multiplied by `(-1)^{n(L_k) + tr(L_k)}`, where `n` counts link
//! components and `tr` is the trace of the self-pairing matrix of the
//! components. Neither quantity is computed from topology here: each formal
//! generator carries a two-bit [`ParityTag`] and parities of a product add
//! componentwise mod 2. An overall sign of a relation is immaterial, so
//! relation comparisons are always up to one global sign.

use crate::error::SkeinError;
use crate::laurent::LaurentPoly;
use crate::theory::Theory;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Component-count and trace parities of a formal generator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParityTag {
    pub components: bool,
    pub trace: bool,
}

impl ParityTag {
    pub fn new(components: bool, trace: bool) -> Self {
        Self { components, trace }
    }

    /// Parity of `mult` copies of this generator.
    pub fn times(self, mult: u64) -> Self {
        if mult % 2 == 0 {
            Self::default()
        } else {
            self
        }
    }

    /// Componentwise addition mod 2.
    pub fn xor(self, other: Self) -> Self {
        Self {
            components: self.components ^ other.components,
            trace: self.trace ^ other.trace,
        }
    }

    /// `(-1)^{components + trace}`.
    pub fn sign(self) -> i64 {
        if self.components ^ self.trace {
            -1
        } else {
            1
        }
    }
}

/// Formal product of named generators with multiplicities (exponent 0
/// entries are never stored).
pub type Monomial = BTreeMap<String, u64>;

/// Build a monomial from `(name, multiplicity)` pairs.
pub fn monomial<'a>(factors: impl IntoIterator<Item = (&'a str, u64)>) -> Monomial {
    factors
        .into_iter()
        .filter(|&(_, m)| m > 0)
        .map(|(n, m)| (n.to_string(), m))
        .collect()
}

/// A formal relation `sum coeff * monomial = 0` whose generators carry
/// parity tags.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TaggedRelation {
    terms: BTreeMap<Monomial, LaurentPoly>,
    tags: BTreeMap<String, ParityTag>,
}

impl TaggedRelation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, m: Monomial, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            let key: Vec<_> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn tag(&mut self, name: &str, tag: ParityTag) {
        self.tags.insert(name.to_string(), tag);
    }

    pub fn tags(&self) -> &BTreeMap<String, ParityTag> {
        &self.tags
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total parity of a monomial under this relation's tags.
    pub fn monomial_parity(&self, m: &Monomial) -> Result<ParityTag, SkeinError> {
        let mut acc = ParityTag::default();
        for (name, &mult) in m {
            let tag = self
                .tags
                .get(name)
                .ok_or_else(|| SkeinError::UntaggedGenerator(name.clone()))?;
            acc = acc.xor(tag.times(mult));
        }
        Ok(acc)
    }

    /// Multiply every term by `(-1)^{n + tr}` of its monomial; generators
    /// and tags are unchanged. An involution.
    pub fn transfer(&self) -> Result<TaggedRelation, SkeinError> {
        let mut out = TaggedRelation {
            terms: BTreeMap::new(),
            tags: self.tags.clone(),
        };
        for (m, c) in &self.terms {
            let parity = self.monomial_parity(m)?;
            let c = if parity.sign() < 0 { -c } else { c.clone() };
            out.terms.insert(m.clone(), c);
        }
        Ok(out)
    }

    pub fn negated(&self) -> TaggedRelation {
        TaggedRelation {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            tags: self.tags.clone(),
        }
    }

    /// Term-level equality up to one overall sign (tags ignored).
    pub fn equal_up_to_sign(&self, other: &TaggedRelation) -> bool {
        self.terms == other.terms || self.negated().terms == other.terms
    }

    /// Normalize the global sign so the coefficient of `lhs` has a positive
    /// leading term; used when comparing a transferred relation against a
    /// displayed one whose left-hand side is monic.
    pub fn normalized_at(&self, lhs: &Monomial) -> TaggedRelation {
        let c = self.coeff(lhs);
        if let Some(e) = c.min_exp() {
            if c.coeff(e) < num_bigint::BigInt::ZERO {
                return self.negated();
            }
        }
        self.clone()
    }
}

impl fmt::Display for TaggedRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 = 0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if m.is_empty() {
                write!(f, "*1")?;
            }
            for (name, mult) in m {
                write!(f, "*{name}")?;
                if *mult > 1 {
                    write!(f, "^{mult}")?;
                }
            }
        }
        write!(f, " = 0")
    }
}

/// Context a torus curve class is tagged in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TagContext {
    /// Curves in the cylinder over the torus: with `n = gcd(p,q)`,
    /// `p = n p'`, `q = n q'`, each component self-pairs to `p'q'`, so the
    /// tag is `(n, n p'q')` mod 2.
    CylinderOverTorus,
    /// Curves on the boundary of a knot complement, pushed inside. Each
    /// component self-pairs to `q'(1 + p')`; the composite exponent
    /// `n(1 + q' + p'q')` then reduces to `p` mod 2, which is the
    /// "substitute `(p,q)_T` by `(-1)^p (p,q)_T`" rule for peripheral
    /// ideals. On the q-odd elements that actually arise for knots the two
    /// contexts differ only by a global sign.
    Peripheral,
}

/// Parity tag of the class `(p,q)_T`, `(p,q) != (0,0)`.
pub fn torus_curve_tag(p: i64, q: i64, context: TagContext) -> ParityTag {
    assert!((p, q) != (0, 0), "tag of (0,0) is undefined");
    let n = gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
    let pp = p.abs() / n;
    let qq = q.abs() / n;
    let components = n % 2 == 1;
    let trace = match context {
        TagContext::CylinderOverTorus => (n * pp * qq) % 2 == 1,
        TagContext::Peripheral => (n * qq * (1 + pp)) % 2 == 1,
    };
    ParityTag { components, trace }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All assignments of tags to the `unknowns` under which every
/// `(source, target)` instance satisfies
/// `transfer(source) = ±target` (one global sign per instance).
pub fn search_parity_assignment(
    instances: &[(TaggedRelation, TaggedRelation)],
    unknowns: &[&str],
) -> Vec<BTreeMap<String, ParityTag>> {
    let mut found = Vec::new();
    let combos = 1usize << (2 * unknowns.len());
    for bits in 0..combos {
        let assignment: BTreeMap<String, ParityTag> = unknowns
            .iter()
            .enumerate()
            .map(|(i, name)| {
                (
                    name.to_string(),
                    ParityTag::new(bits >> (2 * i) & 1 == 1, bits >> (2 * i + 1) & 1 == 1),
                )
            })
            .collect();
        let ok = instances.iter().all(|(source, target)| {
            let mut tagged = source.clone();
            for (name, &tag) in &assignment {
                tagged.tag(name, tag);
            }
            match tagged.transfer() {
                Ok(transferred) => transferred.equal_up_to_sign(target),
                Err(_) => false,
            }
        });
        if ok {
            found.push(assignment);
        }
    }
    found
}

/// JSON report of a parity-assignment search. When the assignment list is
/// empty, `residual` holds the termwise mismatch of the first failing
/// instance under the all-zero assignment.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub unknowns: Vec<String>,
    pub instances: usize,
    pub assignments: Vec<BTreeMap<String, ParityTag>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Vec<ResidualTerm>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualTerm {
    pub monomial: String,
    pub transferred: String,
    pub target: String,
}

/// Run a search and package the result.
pub fn search_report(
    instances: &[(TaggedRelation, TaggedRelation)],
    unknowns: &[&str],
) -> SearchReport {
    let assignments = search_parity_assignment(instances, unknowns);
    let residual = if assignments.is_empty() {
        instances.iter().find_map(|(source, target)| {
            let mut tagged = source.clone();
            for name in unknowns {
                tagged.tag(name, ParityTag::default());
            }
            let transferred = tagged.transfer().ok()?;
            if transferred.equal_up_to_sign(target) {
                return None;
            }
            let normalized = transferred.normalized_at(&Monomial::new());
            let mut diffs = Vec::new();
            for (m, c) in normalized.terms() {
                let tc = target.coeff(m);
                if *c != tc {
                    diffs.push(ResidualTerm {
                        monomial: format_monomial(m),
                        transferred: c.to_string(),
                        target: tc.to_string(),
                    });
                }
            }
            if diffs.is_empty() {
                None
            } else {
                Some(diffs)
            }
        })
    } else {
        None
    };
    SearchReport {
        unknowns: unknowns.iter().map(|s| s.to_string()).collect(),
        instances: instances.len(),
        assignments,
        residual,
    }
}

fn format_monomial(m: &Monomial) -> String {
    if m.is_empty() {
        return "1".to_string();
    }
    m.iter()
        .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// Builders for the concrete relation families exercised by the
/// verification scenarios.
pub mod relations {
    use super::*;
    use crate::chebyshev::{s_normalize, SNormal};
    use crate::fig8::{generator_row_yz, yz_to_storage, BoundaryGen, Fig8Gen, ZRowReading};

    /// The solid-torus action of `(p,q)_T` on `S_{j-1}` as a tagged
    /// relation: the left-hand monomial is `op * S_{j-1}`, the right-hand
    /// terms are the (normalized) `S` classes it expands into. Tags: `op`
    /// gets the cylinder tag of `(p,q)`, `S_k` gets `(k mod 2, 0)`.
    pub fn solid_torus_action(theory: Theory, p: i64, q: i64, j: i64) -> TaggedRelation {
        let mut rel = TaggedRelation::new();
        let lhs = monomial([("op", 1), (&format!("S{}", j - 1), 1)]);
        rel.add_term(lhs, LaurentPoly::one());
        let sign = if theory == Theory::Kauffman && q.rem_euclid(2) == 1 {
            -1
        } else {
            1
        };
        for (idx, e) in [(j - p - 1, 2 * j * q), (j + p - 1, -2 * j * q)] {
            let (neg, index) = match s_normalize(idx) {
                SNormal::Zero => continue,
                SNormal::Term { negate, index } => (negate, index),
            };
            let unit = LaurentPoly::unit_monomial(if neg { sign } else { -sign }, -p * q + e);
            rel.add_term(monomial([(format!("S{index}").as_str(), 1)]), unit);
        }
        rel.tag("op", torus_curve_tag(p, q, TagContext::CylinderOverTorus));
        for k in [j - 1, (j - p - 1).abs(), j + p - 1] {
            for k in [k, k.max(0)] {
                if k >= 0 {
                    rel.tag(
                        &format!("S{k}"),
                        ParityTag::new(k % 2 == 1, false),
                    );
                }
            }
        }
        // tag every S index that can appear after normalization
        let extra: Vec<String> = rel
            .terms()
            .flat_map(|(m, _)| m.keys().cloned().collect::<Vec<_>>())
            .filter(|name| name.starts_with('S'))
            .collect();
        for name in extra {
            let k: i64 = name[1..].parse().unwrap();
            rel.tag(&name, ParityTag::new(k % 2 == 1, false));
        }
        rel
    }

    /// A figure-eight table row as a relation over the link-level
    /// generators `x`, `y`, `z`: the left-hand side expands the boundary
    /// generator through the theory's `Y`/`Z` substitution, the right-hand
    /// side is the storage-basis row. Tags: `op` cylinder-tagged, the
    /// curves component parity 1 with trace 0.
    pub fn fig8_row(theory: Theory, q: i64, g: BoundaryGen) -> TaggedRelation {
        let mut rel = TaggedRelation::new();
        let s = theory.yz_shift();
        match g {
            BoundaryGen::Empty => {
                rel.add_term(monomial([("op", 1)]), LaurentPoly::one());
            }
            BoundaryGen::Y => {
                rel.add_term(monomial([("op", 1), ("y", 1)]), LaurentPoly::monomial(1, 2));
                rel.add_term(monomial([("op", 1)]), LaurentPoly::monomial(s, 0));
            }
            BoundaryGen::Z => {
                rel.add_term(monomial([("op", 1), ("z", 1)]), LaurentPoly::monomial(1, -2));
                rel.add_term(monomial([("op", 1)]), LaurentPoly::monomial(s, 0));
            }
        }
        let row = yz_to_storage(theory, &generator_row_yz(theory, q, g, ZRowReading::default()));
        for ((n, gen), c) in row.terms() {
            let m = match gen {
                Fig8Gen::One => monomial([("x", n as u64)]),
                Fig8Gen::YGen => monomial([("x", n as u64), ("y", 1)]),
                Fig8Gen::ZGen => monomial([("x", n as u64), ("z", 1)]),
            };
            rel.add_term(m, -c);
        }
        rel.tag("op", torus_curve_tag(1, q, TagContext::CylinderOverTorus));
        for curve in ["x", "y", "z"] {
            rel.tag(curve, ParityTag::new(true, false));
        }
        rel
    }

    /// The torus-knot power-reduction identity relating `S` classes of the
    /// two basis curves of a `(2p+1,2)` torus-knot complement, as displayed
    /// for each theory (the Kauffman version carries `(-1)^i` on the
    /// right-hand group, the RT version does not). Generators `x`, `y` are
    /// left untagged; the parity search supplies candidate tags.
    pub fn torus_knot_reduction(theory: Theory, p: i64, i: i64) -> TaggedRelation {
        assert!(p >= 1 && (0..p).contains(&i));
        let mut rel = TaggedRelation::new();
        let mut add_s_y = |rel: &mut TaggedRelation, k: i64, extra_x: i64, coeff: LaurentPoly| {
            let (neg, index) = match s_normalize(k) {
                SNormal::Zero => return,
                SNormal::Term { negate, index } => (negate, index),
            };
            let m = monomial([("y", index as u64), ("x", extra_x as u64)]);
            rel.add_term(m, if neg { -coeff } else { coeff });
        };
        add_s_y(&mut rel, p + i, 0, LaurentPoly::monomial(1, -2 * i - 1));
        add_s_y(&mut rel, p - i - 1, 0, LaurentPoly::monomial(1, 2 * i + 1));
        let rhs_sign = if theory == Theory::Kauffman && i % 2 == 1 {
            1
        } else {
            -1
        };
        add_s_y(&mut rel, p, 2 * i, LaurentPoly::monomial(rhs_sign, -1));
        add_s_y(&mut rel, p - 1, 2 * i, LaurentPoly::monomial(rhs_sign, 1));
        rel
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn single_knot_relation_flips() {
        // K - <K> empty = 0 with K one odd component, trace 0, transfers to
        // -K - <K> empty = 0.
        let mut rel = TaggedRelation::new();
        rel.add_term(monomial([("K", 1)]), LaurentPoly::one());
        rel.add_term(Monomial::new(), p("t^10 + t^-10"));
        rel.tag("K", ParityTag::new(true, false));
        let out = rel.transfer().unwrap();
        assert_eq!(out.coeff(&monomial([("K", 1)])), p("-1"));
        assert_eq!(out.coeff(&Monomial::new()), p("t^10 + t^-10"));
    }

    #[test]
    fn empty_term_unchanged() {
        let mut rel = TaggedRelation::new();
        rel.add_term(Monomial::new(), p("t - 1"));
        let out = rel.transfer().unwrap();
        assert_eq!(out.coeff(&Monomial::new()), p("t - 1"));
    }

    #[test]
    fn transfer_is_involution() {
        let mut rel = TaggedRelation::new();
        rel.add_term(monomial([("a", 3), ("b", 2)]), p("t^4"));
        rel.add_term(monomial([("b", 1)]), p("-t + 1"));
        rel.tag("a", ParityTag::new(true, true));
        rel.tag("b", ParityTag::new(false, true));
        let twice = rel.transfer().unwrap().transfer().unwrap();
        assert_eq!(twice, rel);
    }

    #[test]
    fn untagged_generator_rejected() {
        let mut rel = TaggedRelation::new();
        rel.add_term(monomial([("mystery", 1)]), LaurentPoly::one());
        assert!(matches!(
            rel.transfer(),
            Err(SkeinError::UntaggedGenerator(name)) if name == "mystery"
        ));
    }

    #[test]
    fn parity_additivity() {
        let mut rel = TaggedRelation::new();
        rel.tag("a", ParityTag::new(true, false));
        rel.tag("b", ParityTag::new(true, true));
        let ma = monomial([("a", 1)]);
        let mb = monomial([("b", 3)]);
        let mab = monomial([("a", 1), ("b", 3)]);
        assert_eq!(
            rel.monomial_parity(&mab).unwrap(),
            rel.monomial_parity(&ma)
                .unwrap()
                .xor(rel.monomial_parity(&mb).unwrap())
        );
    }

    #[test]
    fn cylinder_tags() {
        assert_eq!(
            torus_curve_tag(1, 5, TagContext::CylinderOverTorus),
            ParityTag::new(true, true)
        );
        assert_eq!(
            torus_curve_tag(1, 4, TagContext::CylinderOverTorus),
            ParityTag::new(true, false)
        );
        assert_eq!(
            torus_curve_tag(2, 4, TagContext::CylinderOverTorus),
            ParityTag::new(false, false)
        );
    }

    #[test]
    fn peripheral_tag_reduces_to_length_parity() {
        for p in -20..=20i64 {
            for q in -20..=20i64 {
                if (p, q) == (0, 0) {
                    continue;
                }
                let tag = torus_curve_tag(p, q, TagContext::Peripheral);
                assert_eq!(
                    tag.sign(),
                    if p.rem_euclid(2) == 1 { -1 } else { 1 },
                    "composite parity mismatch at ({p},{q})"
                );
            }
        }
    }

    #[test]
    fn search_finds_fig8_curve_tags() {
        use crate::fig8::BoundaryGen;
        let instances: Vec<_> = (-3..=3)
            .flat_map(|q| {
                [BoundaryGen::Empty, BoundaryGen::Y, BoundaryGen::Z]
                    .into_iter()
                    .map(move |g| {
                        let mut source = relations::fig8_row(Theory::Kauffman, q, g);
                        // drop the curve tags: they are the search unknowns
                        source.tags.remove("x");
                        source.tags.remove("y");
                        source.tags.remove("z");
                        (source, relations::fig8_row(Theory::RT, q, g))
                    })
            })
            .collect();
        let found = search_parity_assignment(&instances, &["x", "y", "z"]);
        let expected: BTreeMap<String, ParityTag> = ["x", "y", "z"]
            .into_iter()
            .map(|n| (n.to_string(), ParityTag::new(true, false)))
            .collect();
        assert!(found.contains(&expected), "found {found:?}");
    }

    #[test]
    fn torus_knot_search_is_empty() {
        let mut instances = Vec::new();
        for p in 1..=4 {
            for i in 0..p {
                instances.push((
                    relations::torus_knot_reduction(Theory::Kauffman, p, i),
                    relations::torus_knot_reduction(Theory::RT, p, i),
                ));
            }
        }
        let report = search_report(&instances, &["x", "y"]);
        assert!(report.assignments.is_empty());
        assert!(report.residual.is_some());
    }
}
