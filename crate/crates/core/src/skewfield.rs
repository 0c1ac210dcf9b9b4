//! The trace-preserving endomorphisms of the translation group as a
//! skew-field.
//!
//! Every nonzero trace-preserving endomorphism `α` comes from a unique
//! dilation `δ` fixing a chosen point `P`, with `α(σ) = δ ∘ σ ∘ δ⁻¹`. The
//! dilation is read off pointwise as `δ(Q) = α(σ_PQ)(P)`, where `σ_PQ` is the
//! translation taking `P` to `Q`. Conjugating the other way round,
//! `σ ↦ δ⁻¹ ∘ σ ∘ δ`, then gives the multiplicative inverse of `α`.
//!
//! The set itself is generated from the dilations fixing a base point and
//! can be cross-checked against [`brute_force_tp_endos`], which extends
//! every assignment of generator images through the Cayley table.

use std::collections::{HashMap, HashSet};

use serde_json::{json, Value};
use thiserror::Error;

use crate::collineation::{
    classify_dilation, dilations_fixing, non_parallel_pair, Dilation, PointBijection, BASE_POINT,
};
use crate::endo::{
    check_trace_preserving_endo, endo_add, endo_alpha_delta, endo_compose, endo_negate, endo_one,
    endo_zero, from_generator_images, is_trace_preserving, minimal_generating_set, EndoError,
    TrEndo,
};
use crate::incidence::{AffinePlane, PointId};
use crate::report::{Check, VerificationReport};
use crate::trgroup::{TIndex, TranslationGroup};

/// Upper bound on candidate generator assignments the oracle will try.
pub const ORACLE_MAX_CANDIDATES: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewFieldError {
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error("base point {0} is not a point of the plane")]
    InvalidBasePoint(PointId),
    #[error("the zero endomorphism has no multiplicative inverse")]
    ZeroHasNoInverse,
    #[error("the zero endomorphism corresponds to no dilation")]
    ZeroEndomorphism,
    #[error("no translation takes {from} to {to}; the group is not transitive")]
    NotTransitive { from: PointId, to: PointId },
    #[error("recovered map sends {first} and {second} to the same point")]
    NotBijective { first: PointId, second: PointId },
    #[error("recovered map is not a dilation: line {p}{q} is not parallel to its image")]
    NotADilation { p: PointId, q: PointId },
    #[error("recovered dilation moves the base point {0}")]
    BasePointMoved(PointId),
    #[error("recovered dilation does not conjugate translation {0} onto its image")]
    ConjugationMismatch(TIndex),
    #[error("set is not closed under {op}: elements {a} and {b}")]
    NotClosed { op: &'static str, a: usize, b: usize },
    #[error("computed inverse does not compose to one")]
    InverseCheckFailed,
    #[error("oracle would need {0} candidate maps, above the budget")]
    OracleTooLarge(u64),
}

/// Operation table over set indices: `t[a][b]`.
pub type Table = Vec<Vec<usize>>;

/// Where an element of a [`TPEndoSet`] came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Zero,
    /// `α = α_δ` for a dilation δ fixing the base point.
    Dilation(Dilation),
}

#[derive(Debug, Clone)]
pub struct TPEndoSet {
    base_point: PointId,
    elements: Vec<TrEndo>,
    provenance: Vec<Provenance>,
    index: HashMap<TrEndo, usize>,
}

impl TPEndoSet {
    pub const ZERO: usize = 0;
    pub const ONE: usize = 1;

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn base_point(&self) -> PointId {
        self.base_point
    }

    pub fn elements(&self) -> &[TrEndo] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &TrEndo {
        &self.elements[i]
    }

    pub fn provenance(&self, i: usize) -> &Provenance {
        &self.provenance[i]
    }

    pub fn index_of(&self, alpha: &TrEndo) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    /// Addition and multiplication as index matrices, `None` if the set is
    /// not closed.
    pub fn tables(&self, group: &TranslationGroup) -> Option<(Table, Table)> {
        let table = |op: &dyn Fn(&TrEndo, &TrEndo) -> TrEndo| -> Option<Vec<Vec<usize>>> {
            self.elements
                .iter()
                .map(|a| self.elements.iter().map(|b| self.index_of(&op(a, b))).collect())
                .collect()
        };
        let add = table(&|a, b| endo_add(group, a, b))?;
        let mul = table(&|a, b| endo_compose(a, b))?;
        Some((add, mul))
    }
}

/// `{0} ∪ {α_δ : δ a dilation fixing base}`, ordered zero, one, then by table.
/// Closure under addition, negation and composition is checked.
pub fn generate_tp_endos(
    plane: &AffinePlane,
    group: &TranslationGroup,
    base: PointId,
) -> Result<TPEndoSet, SkewFieldError> {
    if base.idx() >= plane.num_points() {
        return Err(SkewFieldError::InvalidBasePoint(base));
    }
    let zero = endo_zero(group);
    let one = endo_one(group);
    let mut found: Vec<(TrEndo, Dilation)> = Vec::new();
    let mut seen = HashSet::new();
    for d in dilations_fixing(plane, base) {
        let alpha = endo_alpha_delta(group, &d)?;
        if seen.insert(alpha.clone()) {
            found.push((alpha, d));
        }
    }
    found.sort_by(|a, b| {
        let rank = |e: &TrEndo| if *e == one { 0 } else { 1 };
        (rank(&a.0), &a.0).cmp(&(rank(&b.0), &b.0))
    });

    let mut elements = vec![zero];
    let mut provenance = vec![Provenance::Zero];
    for (alpha, d) in found {
        elements.push(alpha);
        provenance.push(Provenance::Dilation(d));
    }
    let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let set = TPEndoSet { base_point: base, elements, provenance, index };

    for (a, x) in set.elements.iter().enumerate() {
        if set.index_of(&endo_negate(group, x)).is_none() {
            return Err(SkewFieldError::NotClosed { op: "negation", a, b: a });
        }
        for (b, y) in set.elements.iter().enumerate() {
            if set.index_of(&endo_add(group, x, y)).is_none() {
                return Err(SkewFieldError::NotClosed { op: "addition", a, b });
            }
            if set.index_of(&endo_compose(x, y)).is_none() {
                return Err(SkewFieldError::NotClosed { op: "composition", a, b });
            }
        }
    }
    Ok(set)
}

/// Every trace-preserving endomorphism of `group`, found by trying all
/// images of a minimal generating set. Sorted by table.
pub fn brute_force_tp_endos(group: &TranslationGroup) -> Result<Vec<TrEndo>, SkewFieldError> {
    let gens = minimal_generating_set(group);
    let n = group.order() as u64;
    let candidates = n
        .checked_pow(gens.len() as u32)
        .filter(|&c| c <= ORACLE_MAX_CANDIDATES)
        .ok_or(SkewFieldError::OracleTooLarge(n.saturating_pow(gens.len() as u32)))?;
    let mut out = Vec::new();
    let mut images = vec![TIndex::IDENTITY; gens.len()];
    for code in 0..candidates {
        let mut c = code;
        for slot in images.iter_mut() {
            *slot = TIndex((c % n) as u32);
            c /= n;
        }
        if let Some(alpha) = from_generator_images(group, &gens, &images) {
            if is_trace_preserving(group, &alpha) {
                out.push(alpha);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The unique dilation δ fixing `p` with `α(σ) = δ ∘ σ ∘ δ⁻¹` for all σ,
/// given pointwise by `δ(Q) = α(σ_PQ)(P)`. All defining properties are
/// checked before returning.
pub fn recover_dilation(
    plane: &AffinePlane,
    group: &TranslationGroup,
    alpha: &TrEndo,
    p: PointId,
) -> Result<Dilation, SkewFieldError> {
    if p.idx() >= plane.num_points() {
        return Err(SkewFieldError::InvalidBasePoint(p));
    }
    if alpha.is_zero() {
        return Err(SkewFieldError::ZeroEndomorphism);
    }
    check_trace_preserving_endo(group, alpha)?;

    let mut image = Vec::with_capacity(plane.num_points());
    let mut owner: Vec<Option<PointId>> = vec![None; plane.num_points()];
    for q in plane.points() {
        let sigma = group
            .translation_taking(p, q)
            .ok_or(SkewFieldError::NotTransitive { from: p, to: q })?;
        let dq = group.element(alpha.apply(sigma)).apply(p);
        if let Some(first) = owner[dq.idx()].replace(q) {
            return Err(SkewFieldError::NotBijective { first, second: q });
        }
        image.push(dq);
    }
    let map = PointBijection::new(image).expect("injective self-map of a finite set");

    // traces: the image of every joining line is parallel to it
    if let Some((a, b)) = non_parallel_pair(plane, &map) {
        return Err(SkewFieldError::NotADilation { p: a, q: b });
    }
    let delta = classify_dilation(plane, &map).ok_or(SkewFieldError::NotADilation { p, q: p })?;
    if delta.apply(p) != p {
        return Err(SkewFieldError::BasePointMoved(p));
    }
    let delta_inv = delta.map().inverse();
    for s in group.indices() {
        let conj = delta.map().compose(group.element(s).map()).compose(&delta_inv);
        if group.index_of(&conj) != Some(alpha.apply(s)) {
            return Err(SkewFieldError::ConjugationMismatch(s));
        }
    }
    Ok(delta)
}

/// `α⁻¹ = α_δ` where δ is the dilation recovered from `α` at the base point.
pub fn invert(
    plane: &AffinePlane,
    group: &TranslationGroup,
    alpha: &TrEndo,
) -> Result<TrEndo, SkewFieldError> {
    invert_at(plane, group, alpha, BASE_POINT)
}

pub fn invert_at(
    plane: &AffinePlane,
    group: &TranslationGroup,
    alpha: &TrEndo,
    base: PointId,
) -> Result<TrEndo, SkewFieldError> {
    if alpha.is_zero() {
        return Err(SkewFieldError::ZeroHasNoInverse);
    }
    let delta = recover_dilation(plane, group, alpha, base)?;
    let beta = endo_alpha_delta(group, &delta)?;
    let one = endo_one(group);
    if endo_compose(alpha, &beta) != one || endo_compose(&beta, alpha) != one {
        return Err(SkewFieldError::InverseCheckFailed);
    }
    Ok(beta)
}

/// First pair `(i, j)` of set indices whose products differ in the two orders.
pub fn commutativity_witness(set: &TPEndoSet) -> Option<(usize, usize)> {
    let n = set.len();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| {
        endo_compose(&set.elements[i], &set.elements[j])
            != endo_compose(&set.elements[j], &set.elements[i])
    })
}

pub fn check_multiplicative_commutativity(set: &TPEndoSet) -> (bool, Option<(usize, usize)>) {
    let w = commutativity_witness(set);
    (w.is_none(), w)
}

/// Compares the generated set with the brute-force oracle.
pub fn oracle_check(group: &TranslationGroup, set: &TPEndoSet) -> Check {
    match brute_force_tp_endos(group) {
        Err(e) => Check::fail("oracle_equivalence", json!({ "error": e.to_string() })),
        Ok(oracle) => {
            let generated: HashSet<&TrEndo> = set.elements().iter().collect();
            let brute: HashSet<&TrEndo> = oracle.iter().collect();
            if generated == brute {
                Check::pass("oracle_equivalence")
            } else {
                let only_oracle: Vec<Value> =
                    brute.difference(&generated).map(|e| e.to_json()).collect();
                let only_generated: Vec<Value> =
                    generated.difference(&brute).map(|e| e.to_json()).collect();
                Check::fail(
                    "oracle_equivalence",
                    json!({
                        "generated": set.len(),
                        "oracle": oracle.len(),
                        "only_in_oracle": only_oracle,
                        "only_in_generated": only_generated,
                    }),
                )
            }
        }
    }
}

/// Full ring and skew-field verification of a generated set.
pub fn verify_skew_field(
    plane: &AffinePlane,
    group: &TranslationGroup,
    set: &TPEndoSet,
) -> VerificationReport {
    let els = set.elements();
    let n = els.len();
    let zero = endo_zero(group);
    let one = endo_one(group);
    let add = |a: &TrEndo, b: &TrEndo| endo_add(group, a, b);
    let mul = |a: &TrEndo, b: &TrEndo| endo_compose(a, b);
    let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
    let triples = || pairs().flat_map(move |(i, j)| (0..n).map(move |k| (i, j, k)));
    let mut r = VerificationReport::new();

    r.push(Check::from_witness(
        "members_are_trace_preserving_endomorphisms",
        els.iter().enumerate().find_map(|(i, e)| {
            check_trace_preserving_endo(group, e)
                .err()
                .map(|err| json!({ "element": i, "error": err.to_string() }))
        }),
    ));

    // additive group
    r.push(Check::from_witness(
        "additive_closure",
        pairs()
            .find(|&(i, j)| set.index_of(&add(&els[i], &els[j])).is_none())
            .map(|(i, j)| json!({ "pair": [i, j] })),
    ));
    r.push(Check::from_witness(
        "additive_associative",
        triples()
            .find(|&(i, j, k)| {
                add(&add(&els[i], &els[j]), &els[k]) != add(&els[i], &add(&els[j], &els[k]))
            })
            .map(|(i, j, k)| json!({ "triple": [i, j, k] })),
    ));
    r.push(Check::from_witness(
        "additive_commutative",
        pairs()
            .find(|&(i, j)| add(&els[i], &els[j]) != add(&els[j], &els[i]))
            .map(|(i, j)| json!({ "pair": [i, j] })),
    ));
    r.push(Check::from_witness(
        "additive_identity",
        (0..n)
            .find(|&i| add(&els[i], &zero) != els[i] || add(&zero, &els[i]) != els[i])
            .map(|i| json!({ "element": i })),
    ));
    r.push(Check::from_witness(
        "additive_inverse",
        (0..n)
            .find(|&i| {
                let neg = endo_negate(group, &els[i]);
                set.index_of(&neg).is_none()
                    || add(&els[i], &neg) != zero
                    || add(&neg, &els[i]) != zero
            })
            .map(|i| json!({ "element": i })),
    ));

    // multiplicative monoid and distributivity
    r.push(Check::from_witness(
        "multiplicative_closure",
        pairs()
            .find(|&(i, j)| set.index_of(&mul(&els[i], &els[j])).is_none())
            .map(|(i, j)| json!({ "pair": [i, j] })),
    ));
    r.push(Check::from_witness(
        "multiplicative_associative",
        triples()
            .find(|&(i, j, k)| {
                mul(&mul(&els[i], &els[j]), &els[k]) != mul(&els[i], &mul(&els[j], &els[k]))
            })
            .map(|(i, j, k)| json!({ "triple": [i, j, k] })),
    ));
    r.push(Check::from_witness(
        "multiplicative_identity",
        (0..n)
            .find(|&i| mul(&els[i], &one) != els[i] || mul(&one, &els[i]) != els[i])
            .map(|i| json!({ "element": i })),
    ));
    r.push(Check::from_witness(
        "left_distributive",
        triples()
            .find(|&(i, j, k)| {
                mul(&els[i], &add(&els[j], &els[k]))
                    != add(&mul(&els[i], &els[j]), &mul(&els[i], &els[k]))
            })
            .map(|(i, j, k)| json!({ "triple": [i, j, k] })),
    ));
    r.push(Check::from_witness(
        "right_distributive",
        triples()
            .find(|&(i, j, k)| {
                mul(&add(&els[j], &els[k]), &els[i])
                    != add(&mul(&els[j], &els[i]), &mul(&els[k], &els[i]))
            })
            .map(|(i, j, k)| json!({ "triple": [i, j, k] })),
    ));

    // skew-field
    r.push(if zero != one {
        Check::pass("one_ne_zero")
    } else {
        Check::fail("one_ne_zero", json!({ "group_order": group.order() }))
    });
    let nonzero: Vec<usize> = (0..n).filter(|&i| !els[i].is_zero()).collect();
    r.push(Check::from_witness(
        "no_zero_divisors",
        nonzero
            .iter()
            .flat_map(|&i| nonzero.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| mul(&els[i], &els[j]).is_zero())
            .map(|(i, j)| json!({ "pair": [i, j] })),
    ));

    let mut recovered: HashMap<PointBijection, usize> = HashMap::new();
    let mut recovery_witness = None;
    let mut inverse_witness = None;
    let mut inverse_of: Vec<Option<usize>> = vec![None; n];
    for &i in &nonzero {
        match recover_dilation(plane, group, &els[i], set.base_point()) {
            Err(e) => {
                recovery_witness.get_or_insert(json!({ "element": i, "error": e.to_string() }));
            }
            Ok(d) => {
                if let Some(prev) = recovered.insert(d.map().clone(), i) {
                    recovery_witness.get_or_insert(
                        json!({ "elements": [prev, i], "error": "same dilation recovered twice" }),
                    );
                }
            }
        }
        match invert_at(plane, group, &els[i], set.base_point()) {
            Err(e) => {
                inverse_witness.get_or_insert(json!({ "element": i, "error": e.to_string() }));
            }
            Ok(inv) => match set.index_of(&inv) {
                Some(j) => inverse_of[i] = Some(j),
                None => {
                    inverse_witness.get_or_insert(
                        json!({ "element": i, "error": "inverse lies outside the set" }),
                    );
                }
            },
        }
    }
    r.push(Check::from_witness("dilation_recovery", recovery_witness));
    r.push(Check::from_witness("multiplicative_inverses", inverse_witness));

    // nonzero elements: closed, contain one, all invertible inside
    let group_witness = if set.index_of(&one).is_none_or(|i| els[i].is_zero()) {
        Some(json!({ "reason": "one is missing from the nonzero elements" }))
    } else {
        nonzero
            .iter()
            .flat_map(|&i| nonzero.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| {
                let p = mul(&els[i], &els[j]);
                p.is_zero() || set.index_of(&p).is_none()
            })
            .map(
                |(i, j)| json!({ "pair": [i, j], "reason": "product leaves the nonzero elements" }),
            )
            .or_else(|| {
                nonzero
                    .iter()
                    .find(|&&i| inverse_of[i].is_none())
                    .map(|&i| json!({ "element": i, "reason": "no inverse in the set" }))
            })
    };
    r.push(Check::from_witness("nonzero_multiplicative_group", group_witness));
    r
}
