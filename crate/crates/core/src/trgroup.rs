//! The translation group as an explicit Cayley table, plus the checks that
//! it is abelian, normal in the dilation group, and respects directions.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::collineation::{Dilation, PointBijection, Translation};
use crate::incidence::{AffinePlane, DirectionId, PointId};
use crate::report::{Check, VerificationReport};

/// Index of an element of a [`TranslationGroup`]; 0 is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TIndex(pub u32);

impl TIndex {
    pub const IDENTITY: TIndex = TIndex(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_idx(i: usize) -> Self {
        TIndex(i as u32)
    }
}

impl fmt::Display for TIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Tables up to this order get an exhaustive associativity sweep.
pub const EXHAUSTIVE_ASSOCIATIVITY_MAX_ORDER: usize = 64;
pub const ASSOCIATIVITY_SAMPLES: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("no translations supplied")]
    Empty,
    #[error("the identity is not among the translations")]
    MissingIdentity,
    #[error("composite of elements {0} and {1} is not in the list")]
    NotClosed(TIndex, TIndex),
    #[error("inverse of element {0} is not in the list")]
    MissingInverse(TIndex),
    #[error("elements {first} and {second} both map point {from} to {to}")]
    AmbiguousTaking { from: PointId, to: PointId, first: TIndex, second: TIndex },
}

impl GroupError {
    pub fn witness(&self) -> Value {
        match self {
            GroupError::Empty | GroupError::MissingIdentity => {
                json!({ "reason": self.to_string() })
            }
            GroupError::NotClosed(a, b) => json!({ "pair": [a, b], "reason": "composite missing" }),
            GroupError::MissingInverse(a) => json!({ "element": a, "reason": "inverse missing" }),
            GroupError::AmbiguousTaking { from, to, first, second } => {
                json!({ "from": from, "to": to, "elements": [first, second] })
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct TranslationGroup {
    num_points: usize,
    elements: Vec<Translation>,
    index: HashMap<PointBijection, TIndex>,
    cayley: Vec<TIndex>,
    inverse_of: Vec<TIndex>,
    taking: Vec<Option<TIndex>>,
}

/// Packs enumerated translations into a group table. Elements are ordered
/// by image table, which puts the identity at index 0.
pub fn build_group(
    plane: &AffinePlane,
    translations: Vec<Translation>,
) -> Result<TranslationGroup, GroupError> {
    if translations.is_empty() {
        return Err(GroupError::Empty);
    }
    let mut elements = translations;
    elements.sort_by(|a, b| a.map().cmp(b.map()));
    elements.dedup_by(|a, b| a.map() == b.map());
    if !elements[0].is_identity() {
        return Err(GroupError::MissingIdentity);
    }
    let n = elements.len();
    let index: HashMap<PointBijection, TIndex> =
        elements.iter().enumerate().map(|(i, t)| (t.map().clone(), TIndex::from_idx(i))).collect();

    let mut cayley = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let prod = elements[i].map().compose(elements[j].map());
            let k = index
                .get(&prod)
                .ok_or(GroupError::NotClosed(TIndex::from_idx(i), TIndex::from_idx(j)))?;
            cayley.push(*k);
        }
    }
    let inverse_of = (0..n)
        .map(|i| {
            (0..n)
                .map(TIndex::from_idx)
                .find(|j| cayley[i * n + j.idx()] == TIndex::IDENTITY)
                .ok_or(GroupError::MissingInverse(TIndex::from_idx(i)))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let np = plane.num_points();
    let mut taking = vec![None; np * np];
    for (i, t) in elements.iter().enumerate() {
        for r in plane.points() {
            let slot = &mut taking[r.idx() * np + t.apply(r).idx()];
            if let Some(first) = *slot {
                return Err(GroupError::AmbiguousTaking {
                    from: r,
                    to: t.apply(r),
                    first,
                    second: TIndex::from_idx(i),
                });
            }
            *slot = Some(TIndex::from_idx(i));
        }
    }
    Ok(TranslationGroup { num_points: np, elements, index, cayley, inverse_of, taking })
}

impl TranslationGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn indices(&self) -> impl Iterator<Item = TIndex> {
        (0..self.elements.len()).map(TIndex::from_idx)
    }

    pub fn elements(&self) -> &[Translation] {
        &self.elements
    }

    pub fn element(&self, i: TIndex) -> &Translation {
        &self.elements[i.idx()]
    }

    /// Index of `elements[a] ∘ elements[b]`.
    #[inline]
    pub fn mul(&self, a: TIndex, b: TIndex) -> TIndex {
        self.cayley[a.idx() * self.elements.len() + b.idx()]
    }

    #[inline]
    pub fn inv(&self, a: TIndex) -> TIndex {
        self.inverse_of[a.idx()]
    }

    #[inline]
    pub fn direction(&self, a: TIndex) -> Option<DirectionId> {
        self.elements[a.idx()].direction()
    }

    pub fn index_of(&self, map: &PointBijection) -> Option<TIndex> {
        self.index.get(map).copied()
    }

    /// The element taking `r` to `q`, if any.
    pub fn translation_taking(&self, r: PointId, q: PointId) -> Option<TIndex> {
        self.taking[r.idx() * self.num_points + q.idx()]
    }

    pub fn is_transitive(&self) -> bool {
        self.taking.iter().all(Option::is_some)
    }

    pub fn element_order(&self, a: TIndex) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != TIndex::IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.indices().map(|a| self.element_order(a)).fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    /// Index of `δ⁻¹ ∘ σ ∘ δ`, if it lies in the group.
    pub fn conjugate_by(&self, dilation: &Dilation, sigma: TIndex) -> Option<TIndex> {
        let d = dilation.map();
        let conj = d.inverse().compose(self.element(sigma).map()).compose(d);
        self.index_of(&conj)
    }
}

fn commutativity_witness(group: &TranslationGroup) -> Option<Value> {
    let n = group.order();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (TIndex::from_idx(i), TIndex::from_idx(j))))
        .find(|&(a, b)| group.mul(a, b) != group.mul(b, a))
        .map(|(a, b)| json!({ "pair": [a, b], "ab": group.mul(a, b), "ba": group.mul(b, a) }))
}

/// Passes iff the Cayley table is symmetric.
pub fn verify_abelian(group: &TranslationGroup) -> VerificationReport {
    VerificationReport {
        checks: vec![Check::from_witness("abelian", commutativity_witness(group))],
    }
}

/// Exhaustive up to [`EXHAUSTIVE_ASSOCIATIVITY_MAX_ORDER`], otherwise
/// [`ASSOCIATIVITY_SAMPLES`] triples from a fixed-seed generator.
pub fn verify_associative(group: &TranslationGroup) -> VerificationReport {
    let n = group.order();
    let assoc_fails = |a: TIndex, b: TIndex, c: TIndex| {
        group.mul(group.mul(a, b), c) != group.mul(a, group.mul(b, c))
    };
    let witness = if n <= EXHAUSTIVE_ASSOCIATIVITY_MAX_ORDER {
        group
            .indices()
            .flat_map(|a| {
                group.indices().flat_map(move |b| group.indices().map(move |c| (a, b, c)))
            })
            .find(|&(a, b, c)| assoc_fails(a, b, c))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        (0..ASSOCIATIVITY_SAMPLES)
            .map(|_| {
                let mut pick = || TIndex::from_idx(rng.gen_range(0..n));
                (pick(), pick(), pick())
            })
            .find(|&(a, b, c)| assoc_fails(a, b, c))
    };
    VerificationReport {
        checks: vec![Check::from_witness(
            "associative",
            witness.map(|(a, b, c)| json!({ "triple": [a, b, c] })),
        )],
    }
}

/// Passes iff every ordered point pair is connected by a translation.
pub fn verify_transitive(plane: &AffinePlane, group: &TranslationGroup) -> VerificationReport {
    let missing = plane
        .points()
        .flat_map(|r| plane.points().map(move |q| (r, q)))
        .find(|&(r, q)| group.translation_taking(r, q).is_none());
    VerificationReport {
        checks: vec![Check::from_witness(
            "point_transitive",
            missing.map(|(r, q)| json!({ "from": r, "to": q, "reason": "no translation" })),
        )],
    }
}

/// `δ⁻¹ ∘ σ ∘ δ` lies in the group for every dilation δ and translation σ.
pub fn verify_normal_in_dilations(
    group: &TranslationGroup,
    dilations: &[Dilation],
) -> VerificationReport {
    let witness = dilations.iter().enumerate().find_map(|(di, d)| {
        group.indices().find(|&s| group.conjugate_by(d, s).is_none()).map(
            |s| json!({ "dilation": di, "dilation_image": d.map().to_json(), "translation": s }),
        )
    });
    VerificationReport { checks: vec![Check::from_witness("normal_in_dilations", witness)] }
}

/// Conjugating a non-identity translation by a dilation keeps its direction.
pub fn verify_conjugation_direction(
    group: &TranslationGroup,
    dilations: &[Dilation],
) -> VerificationReport {
    let witness = dilations.iter().enumerate().find_map(|(di, d)| {
        group.indices().skip(1).find_map(|s| {
            let conj = group.conjugate_by(d, s);
            let same = conj.is_some_and(|c| group.direction(c) == group.direction(s));
            (!same).then(|| {
                json!({
                    "dilation": di,
                    "translation": s,
                    "conjugate": conj,
                    "direction": group.direction(s),
                    "conjugate_direction": conj.and_then(|c| group.direction(c)),
                })
            })
        })
    });
    VerificationReport {
        checks: vec![Check::from_witness("conjugation_preserves_direction", witness)],
    }
}

/// For translations sharing a direction, the composite is the identity or
/// has that direction; inverses keep the direction too, so each direction
/// plus the identity is a subgroup.
pub fn verify_direction_closure(group: &TranslationGroup) -> VerificationReport {
    let nonid: Vec<TIndex> = group.indices().skip(1).collect();
    let closure = nonid.iter().find_map(|&a| {
        nonid
            .iter()
            .filter(|&&b| group.direction(a) == group.direction(b))
            .find(|&&b| {
                let c = group.mul(b, a);
                c != TIndex::IDENTITY && group.direction(c) != group.direction(a)
            })
            .map(|&b| json!({ "pair": [a, b], "composite": group.mul(b, a) }))
    });
    let inverses = nonid
        .iter()
        .find(|&&a| group.direction(group.inv(a)) != group.direction(a))
        .map(|&a| json!({ "element": a, "inverse": group.inv(a) }));
    VerificationReport {
        checks: vec![
            Check::from_witness("direction_closure", closure),
            Check::from_witness("direction_inverse", inverses),
        ],
    }
}

/// Every group-level check in one report.
pub fn verify_group(
    plane: &AffinePlane,
    group: &TranslationGroup,
    dilations: &[Dilation],
) -> VerificationReport {
    let mut r = VerificationReport::new();
    r.push(Check::pass("cayley_closed"));
    r.extend(verify_associative(group));
    r.extend(verify_abelian(group));
    r.extend(verify_transitive(plane, group));
    r.extend(verify_normal_in_dilations(group, dilations));
    r.extend(verify_conjugation_direction(group, dilations));
    r.extend(verify_direction_closure(group));
    r
}
