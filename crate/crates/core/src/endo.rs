//! Self-maps of the translation group stored as index tables, and the
//! algebra on them: pointwise addition, composition, zero, one, negation,
//! inversion `σ ↦ σ⁻¹`, and conjugation by a dilation.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::collineation::Dilation;
use crate::trgroup::{TIndex, TranslationGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EndoError {
    #[error("table has {got} entries but the group has order {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("entry {at} maps to {value}, outside the group")]
    OutOfRange { at: usize, value: u32 },
    #[error("the identity must map to the identity, found {0}")]
    IdentityNotFixed(TIndex),
    #[error("conjugate of translation {0} is not in the group")]
    ConjugateNotInGroup(TIndex),
    #[error("homomorphism law fails at ({0}, {1})")]
    NotAnEndomorphism(TIndex, TIndex),
    #[error("direction of translation {0} is not preserved")]
    NotTracePreserving(TIndex),
}

/// A map of the translation group onto itself with `α(id) = id`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrEndo {
    image: Vec<TIndex>,
}

impl TrEndo {
    pub fn new(group_order: usize, image: Vec<TIndex>) -> Result<Self, EndoError> {
        if image.len() != group_order {
            return Err(EndoError::WrongLength { expected: group_order, got: image.len() });
        }
        if let Some((at, v)) = image.iter().enumerate().find(|(_, v)| v.idx() >= group_order) {
            return Err(EndoError::OutOfRange { at, value: v.0 });
        }
        if image[0] != TIndex::IDENTITY {
            return Err(EndoError::IdentityNotFixed(image[0]));
        }
        Ok(TrEndo { image })
    }

    #[inline]
    pub fn apply(&self, s: TIndex) -> TIndex {
        self.image[s.idx()]
    }

    pub fn image(&self) -> &[TIndex] {
        &self.image
    }

    pub fn is_zero(&self) -> bool {
        self.image.iter().all(|&t| t == TIndex::IDENTITY)
    }

    pub fn to_file(&self) -> EndoFile {
        EndoFile { group_order: self.image.len(), image: self.image.iter().map(|t| t.0).collect() }
    }

    pub fn to_json(&self) -> Value {
        json!(self.image)
    }
}

/// On-disk form: `{"group_order": n, "image": [i0, i1, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoFile {
    pub group_order: usize,
    pub image: Vec<u32>,
}

impl EndoFile {
    /// Validates the table against `group`.
    pub fn into_endo(self, group: &TranslationGroup) -> Result<TrEndo, EndoError> {
        if self.group_order != group.order() {
            return Err(EndoError::WrongLength { expected: group.order(), got: self.group_order });
        }
        TrEndo::new(group.order(), self.image.into_iter().map(TIndex).collect())
    }
}

/// First pair where `α(a ∘ b) ≠ α(a) ∘ α(b)`.
pub fn endomorphism_violation(
    group: &TranslationGroup,
    alpha: &TrEndo,
) -> Option<(TIndex, TIndex)> {
    group
        .indices()
        .flat_map(|a| group.indices().map(move |b| (a, b)))
        .find(|&(a, b)| alpha.apply(group.mul(a, b)) != group.mul(alpha.apply(a), alpha.apply(b)))
}

pub fn is_group_endomorphism(group: &TranslationGroup, alpha: &TrEndo) -> bool {
    endomorphism_violation(group, alpha).is_none()
}

/// First non-identity σ with `α(σ) ≠ id` and a different direction.
/// Images equal to the identity are accepted, so the zero map qualifies.
pub fn trace_violation(group: &TranslationGroup, alpha: &TrEndo) -> Option<TIndex> {
    group.indices().skip(1).find(|&s| {
        let img = alpha.apply(s);
        img != TIndex::IDENTITY && group.direction(img) != group.direction(s)
    })
}

pub fn is_trace_preserving(group: &TranslationGroup, alpha: &TrEndo) -> bool {
    trace_violation(group, alpha).is_none()
}

/// Both predicates at once, as an error naming the first violation.
pub fn check_trace_preserving_endo(
    group: &TranslationGroup,
    alpha: &TrEndo,
) -> Result<(), EndoError> {
    if let Some((a, b)) = endomorphism_violation(group, alpha) {
        return Err(EndoError::NotAnEndomorphism(a, b));
    }
    match trace_violation(group, alpha) {
        Some(s) => Err(EndoError::NotTracePreserving(s)),
        None => Ok(()),
    }
}

/// `(α + β)(σ) = α(σ) ∘ β(σ)`.
pub fn endo_add(group: &TranslationGroup, alpha: &TrEndo, beta: &TrEndo) -> TrEndo {
    TrEndo { image: group.indices().map(|s| group.mul(alpha.apply(s), beta.apply(s))).collect() }
}

/// `(α ∘ β)(σ) = α(β(σ))`.
pub fn endo_compose(alpha: &TrEndo, beta: &TrEndo) -> TrEndo {
    TrEndo { image: beta.image.iter().map(|&s| alpha.apply(s)).collect() }
}

pub fn endo_zero(group: &TranslationGroup) -> TrEndo {
    TrEndo { image: vec![TIndex::IDENTITY; group.order()] }
}

pub fn endo_one(group: &TranslationGroup) -> TrEndo {
    TrEndo { image: group.indices().collect() }
}

/// `(−α)(σ) = α(σ)⁻¹`.
pub fn endo_negate(group: &TranslationGroup, alpha: &TrEndo) -> TrEndo {
    TrEndo { image: alpha.image.iter().map(|&t| group.inv(t)).collect() }
}

/// `φ(σ) = σ⁻¹`, checked to be a trace-preserving endomorphism.
pub fn endo_phi(group: &TranslationGroup) -> Result<TrEndo, EndoError> {
    let phi = TrEndo { image: group.indices().map(|s| group.inv(s)).collect() };
    check_trace_preserving_endo(group, &phi)?;
    Ok(phi)
}

/// `α_δ(σ) = δ⁻¹ ∘ σ ∘ δ`, checked to be trace-preserving.
pub fn endo_alpha_delta(group: &TranslationGroup, delta: &Dilation) -> Result<TrEndo, EndoError> {
    let image = group
        .indices()
        .map(|s| group.conjugate_by(delta, s).ok_or(EndoError::ConjugateNotInGroup(s)))
        .collect::<Result<Vec<_>, _>>()?;
    let alpha = TrEndo::new(group.order(), image)?;
    check_trace_preserving_endo(group, &alpha)?;
    Ok(alpha)
}

/// `σ ↦ δ ∘ σ ∘ δ⁻¹`, the opposite orientation; equals `α_{δ⁻¹}`.
pub fn endo_conjugate(group: &TranslationGroup, delta: &Dilation) -> Result<TrEndo, EndoError> {
    endo_alpha_delta(group, &delta.inverse())
}

/// Greedy generating set: repeatedly adds the smallest index outside the
/// subgroup generated so far.
pub fn minimal_generating_set(group: &TranslationGroup) -> Vec<TIndex> {
    let n = group.order();
    let mut gens = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    while let Some(next) = (0..n).find(|&i| !inside[i]) {
        gens.push(TIndex::from_idx(next));
        // subgroup generated by gens: closure of the current set under multiplication
        let mut members: Vec<TIndex> =
            (0..n).filter(|&i| inside[i]).map(TIndex::from_idx).collect();
        let mut k = 0;
        while k < members.len() {
            for &g in &gens {
                let m = group.mul(members[k], g);
                if !inside[m.idx()] {
                    inside[m.idx()] = true;
                    members.push(m);
                }
            }
            k += 1;
        }
    }
    gens
}

/// The unique homomorphism sending `gens[i]` to `images[i]`, if the
/// assignment is consistent. Every Cayley-graph edge `x → x·g` is checked.
pub fn from_generator_images(
    group: &TranslationGroup,
    gens: &[TIndex],
    images: &[TIndex],
) -> Option<TrEndo> {
    assert_eq!(gens.len(), images.len());
    let n = group.order();
    let mut map: Vec<Option<TIndex>> = vec![None; n];
    map[0] = Some(TIndex::IDENTITY);
    let mut queue = vec![TIndex::IDENTITY];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[x.idx()].unwrap();
        for (&g, &fg) in gens.iter().zip(images) {
            let y = group.mul(x, g);
            let fy = group.mul(fx, fg);
            match map[y.idx()] {
                Some(prev) if prev != fy => return None,
                Some(_) => {}
                None => {
                    map[y.idx()] = Some(fy);
                    queue.push(y);
                }
            }
        }
    }
    let image = map.into_iter().collect::<Option<Vec<_>>>()?;
    Some(TrEndo { image })
}
