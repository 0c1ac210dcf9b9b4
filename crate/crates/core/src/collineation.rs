//! Point bijections, dilations and translations of a verified affine plane.
//!
//! Dilations and translations are never found by searching permutations.
//! They are built from the images of one or two points by intersecting
//! parallels, then validated against their definitions on every point pair.

use std::collections::HashSet;

use serde_json::{json, Value};
use thiserror::Error;

use crate::incidence::{AffinePlane, DirectionId, LineId, PointId};

/// Base point used wherever a construction needs one.
pub const BASE_POINT: PointId = PointId(0);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("image table is not a permutation of 0..{len}")]
pub struct NotAPermutation {
    pub len: usize,
}

/// A permutation of the points, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointBijection {
    image: Vec<PointId>,
}

impl PointBijection {
    pub fn new(image: Vec<PointId>) -> Result<Self, NotAPermutation> {
        let n = image.len();
        let mut seen = vec![false; n];
        for p in &image {
            if p.idx() >= n || std::mem::replace(&mut seen[p.idx()], true) {
                return Err(NotAPermutation { len: n });
            }
        }
        Ok(PointBijection { image })
    }

    pub fn identity(n: usize) -> Self {
        PointBijection { image: (0..n).map(PointId::from_idx).collect() }
    }

    #[inline]
    pub fn apply(&self, p: PointId) -> PointId {
        self.image[p.idx()]
    }

    pub fn image(&self) -> &[PointId] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, p)| p.idx() == i)
    }

    pub fn fixed_points(&self) -> Vec<PointId> {
        self.image.iter().enumerate().filter(|&(i, p)| p.idx() == i).map(|(_, &p)| p).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PointBijection) -> PointBijection {
        assert_eq!(self.len(), other.len(), "bijections of different planes");
        PointBijection { image: other.image.iter().map(|&p| self.image[p.idx()]).collect() }
    }

    pub fn inverse(&self) -> PointBijection {
        let mut inv = vec![PointId(0); self.len()];
        for (i, p) in self.image.iter().enumerate() {
            inv[p.idx()] = PointId::from_idx(i);
        }
        PointBijection { image: inv }
    }

    pub fn to_json(&self) -> Value {
        json!(self.image)
    }
}

/// `f ∘ g`.
pub fn compose(f: &PointBijection, g: &PointBijection) -> PointBijection {
    f.compose(g)
}

pub fn inverse(f: &PointBijection) -> PointBijection {
    f.inverse()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dilation {
    map: PointBijection,
    fixed_points: Vec<PointId>,
}

impl Dilation {
    fn new_unchecked(map: PointBijection) -> Self {
        let fixed_points = map.fixed_points();
        Dilation { map, fixed_points }
    }

    pub fn map(&self) -> &PointBijection {
        &self.map
    }

    pub fn fixed_points(&self) -> &[PointId] {
        &self.fixed_points
    }

    #[inline]
    pub fn apply(&self, p: PointId) -> PointId {
        self.map.apply(p)
    }

    pub fn is_identity(&self) -> bool {
        self.fixed_points.len() == self.map.len()
    }

    pub fn inverse(&self) -> Dilation {
        Dilation { map: self.map.inverse(), fixed_points: self.fixed_points.clone() }
    }

    pub fn into_map(self) -> PointBijection {
        self.map
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Translation {
    dilation: Dilation,
    direction: Option<DirectionId>,
}

impl Translation {
    pub fn identity(plane: &AffinePlane) -> Self {
        Translation {
            dilation: Dilation::new_unchecked(PointBijection::identity(plane.num_points())),
            direction: None,
        }
    }

    pub fn dilation(&self) -> &Dilation {
        &self.dilation
    }

    pub fn map(&self) -> &PointBijection {
        &self.dilation.map
    }

    /// `None` exactly for the identity.
    pub fn direction(&self) -> Option<DirectionId> {
        self.direction
    }

    #[inline]
    pub fn apply(&self, p: PointId) -> PointId {
        self.dilation.apply(p)
    }

    pub fn is_identity(&self) -> bool {
        self.direction.is_none()
    }
}

/// Why a constructive extension produced no map.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionFailure {
    #[error("the constructed lines for point {point} do not meet in exactly one point")]
    NoIntersection { point: PointId },
    #[error("points {first} and {second} receive the same image")]
    NotInjective { first: PointId, second: PointId },
    #[error("the constructed map sends line {line} to a non-line")]
    NotACollineation { line: LineId },
    #[error("the image of the line through {p} and {q} is not parallel to it")]
    NotADilation { p: PointId, q: PointId },
    #[error("the constructed dilation fixes point {point}")]
    HasFixedPoint { point: PointId },
    #[error("invalid construction input: {0}")]
    InvalidInput(String),
}

impl ExtensionFailure {
    pub fn witness(&self) -> Value {
        match self {
            ExtensionFailure::NoIntersection { point } => json!({ "no_intersection_at": point }),
            ExtensionFailure::NotInjective { first, second } => {
                json!({ "same_image": [first, second] })
            }
            ExtensionFailure::NotACollineation { line } => {
                json!({ "line_not_mapped_to_line": line })
            }
            ExtensionFailure::NotADilation { p, q } => json!({ "non_parallel_pair": [p, q] }),
            ExtensionFailure::HasFixedPoint { point } => json!({ "fixed_point": point }),
            ExtensionFailure::InvalidInput(msg) => json!({ "invalid_input": msg }),
        }
    }
}

/// `true` iff every line is mapped onto a line.
pub fn is_collineation(plane: &AffinePlane, f: &PointBijection) -> bool {
    non_collinear_line(plane, f).is_none()
}

fn non_collinear_line(plane: &AffinePlane, f: &PointBijection) -> Option<LineId> {
    let mut buf = Vec::new();
    plane.line_ids().find(|&l| {
        buf.clear();
        buf.extend(plane.line(l).iter().map(|&p| f.apply(p)));
        plane.find_line(&buf).is_none()
    })
}

/// First pair `P < Q` whose image line is not parallel to `PQ`.
pub fn non_parallel_pair(plane: &AffinePlane, f: &PointBijection) -> Option<(PointId, PointId)> {
    let n = plane.num_points();
    (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .map(|(p, q)| (PointId::from_idx(p), PointId::from_idx(q)))
        .find(|&(p, q)| {
            let (fp, fq) = (f.apply(p), f.apply(q));
            fp == fq || plane.class(plane.join(p, q)) != plane.class(plane.join(fp, fq))
        })
}

fn validate_dilation(plane: &AffinePlane, f: PointBijection) -> Result<Dilation, ExtensionFailure> {
    if let Some(line) = non_collinear_line(plane, &f) {
        return Err(ExtensionFailure::NotACollineation { line });
    }
    if let Some((p, q)) = non_parallel_pair(plane, &f) {
        return Err(ExtensionFailure::NotADilation { p, q });
    }
    Ok(Dilation::new_unchecked(f))
}

/// A dilation iff `f` is a collineation and `f(P)f(Q) ∥ PQ` for all `P ≠ Q`.
pub fn classify_dilation(plane: &AffinePlane, f: &PointBijection) -> Option<Dilation> {
    validate_dilation(plane, f.clone()).ok()
}

fn validate_translation(plane: &AffinePlane, d: Dilation) -> Result<Translation, ExtensionFailure> {
    if d.is_identity() {
        return Ok(Translation { dilation: d, direction: None });
    }
    if let Some(&point) = d.fixed_points.first() {
        return Err(ExtensionFailure::HasFixedPoint { point });
    }
    let trace = |p: PointId| plane.class(plane.join(p, d.apply(p)));
    let direction = trace(PointId(0));
    if let Some(p) = plane.points().find(|&p| trace(p) != direction) {
        // two traces in different classes: the pair (0, p) witnesses it
        return Err(ExtensionFailure::NotADilation { p: PointId(0), q: p });
    }
    Ok(Translation { dilation: d, direction: Some(direction) })
}

/// A translation iff `d` is the identity or fixes no point.
pub fn classify_translation(plane: &AffinePlane, d: &Dilation) -> Option<Translation> {
    validate_translation(plane, d.clone()).ok()
}

/// The line through `p` and `d(p)`; `None` when `p` is fixed.
pub fn trace_line(plane: &AffinePlane, d: &Dilation, p: PointId) -> Option<LineId> {
    let image = d.apply(p);
    (image != p).then(|| plane.join(p, image))
}

fn collect_bijection(img: Vec<Option<PointId>>) -> Result<PointBijection, ExtensionFailure> {
    let n = img.len();
    let mut owner: Vec<Option<PointId>> = vec![None; n];
    let mut image = Vec::with_capacity(n);
    for (i, slot) in img.into_iter().enumerate() {
        let target = slot.expect("every point assigned");
        if let Some(first) = owner[target.idx()] {
            return Err(ExtensionFailure::NotInjective { first, second: PointId::from_idx(i) });
        }
        owner[target.idx()] = Some(PointId::from_idx(i));
        image.push(target);
    }
    Ok(PointBijection { image })
}

fn meet_or_fail(
    plane: &AffinePlane,
    a: LineId,
    b: LineId,
    point: PointId,
) -> Result<PointId, ExtensionFailure> {
    plane.meet(a, b).ok_or(ExtensionFailure::NoIntersection { point })
}

/// The unique translation taking `p` to `q`, built by parallel-line
/// extension and validated on all point pairs.
pub fn extend_translation(
    plane: &AffinePlane,
    p: PointId,
    q: PointId,
) -> Result<Translation, ExtensionFailure> {
    let n = plane.num_points();
    if p.idx() >= n || q.idx() >= n {
        return Err(ExtensionFailure::InvalidInput(format!("point out of range: {p} or {q}")));
    }
    if p == q {
        return Ok(Translation::identity(plane));
    }
    let pq = plane.join(p, q);
    let mut img: Vec<Option<PointId>> = vec![None; n];
    img[p.idx()] = Some(q);
    let mut anchor = None;
    for r in plane.points().filter(|&r| !plane.contains(pq, r)) {
        // trace of r runs parallel to pq; q·σ(r) runs parallel to p·r
        let trace = plane.parallel_at(pq, r);
        let side = plane.parallel_at(plane.join(p, r), q);
        img[r.idx()] = Some(meet_or_fail(plane, trace, side, r)?);
        anchor.get_or_insert(r);
    }
    let anchor = anchor.expect("an affine plane has a point off every line");
    let anchor_image = img[anchor.idx()].unwrap();
    for &r in plane.line(pq) {
        if r == p {
            continue;
        }
        let side = plane.parallel_at(plane.join(anchor, r), anchor_image);
        img[r.idx()] = Some(meet_or_fail(plane, pq, side, r)?);
    }
    let map = collect_bijection(img)?;
    let dilation = validate_dilation(plane, map)?;
    validate_translation(plane, dilation)
}

/// The unique dilation fixing `p` and sending `q` to `q2`, where `q2` lies
/// on the line `pq`.
pub fn extend_dilation_fixing(
    plane: &AffinePlane,
    p: PointId,
    q: PointId,
    q2: PointId,
) -> Result<Dilation, ExtensionFailure> {
    let n = plane.num_points();
    if [p, q, q2].iter().any(|x| x.idx() >= n) {
        return Err(ExtensionFailure::InvalidInput("point out of range".into()));
    }
    if p == q {
        return Err(ExtensionFailure::InvalidInput("fixed point and moved point coincide".into()));
    }
    let pq = plane.join(p, q);
    if !plane.contains(pq, q2) {
        return Err(ExtensionFailure::InvalidInput(format!(
            "{q2} is not on the line through {p} and {q}"
        )));
    }
    if q2 == p {
        return Err(ExtensionFailure::NotInjective { first: p, second: q });
    }
    if q2 == q {
        return Ok(Dilation::new_unchecked(PointBijection::identity(n)));
    }
    let mut img: Vec<Option<PointId>> = vec![None; n];
    img[p.idx()] = Some(p);
    img[q.idx()] = Some(q2);
    let mut anchor = None;
    for r in plane.points().filter(|&r| !plane.contains(pq, r)) {
        // traces pass through the fixed point; q2·δ(r) runs parallel to q·r
        let trace = plane.join(p, r);
        let side = plane.parallel_at(plane.join(q, r), q2);
        img[r.idx()] = Some(meet_or_fail(plane, trace, side, r)?);
        anchor.get_or_insert(r);
    }
    let anchor = anchor.expect("an affine plane has a point off every line");
    let anchor_image = img[anchor.idx()].unwrap();
    for &r in plane.line(pq) {
        if r == p || r == q {
            continue;
        }
        let side = plane.parallel_at(plane.join(anchor, r), anchor_image);
        img[r.idx()] = Some(meet_or_fail(plane, pq, side, r)?);
    }
    let map = collect_bijection(img)?;
    validate_dilation(plane, map)
}

/// Every dilation fixing `p`, sorted by image table (identity included).
pub fn dilations_fixing(plane: &AffinePlane, p: PointId) -> Vec<Dilation> {
    let q = plane.points().find(|&x| x != p).expect("plane has at least two points");
    let line = plane.join(p, q);
    let mut out: Vec<Dilation> = plane
        .line(line)
        .iter()
        .filter(|&&q2| q2 != p)
        .filter_map(|&q2| extend_dilation_fixing(plane, p, q, q2).ok())
        .collect();
    out.sort_by(|a, b| a.map.cmp(&b.map));
    out
}

/// All translations, obtained as the extensions `base → Q` for every point `Q`.
/// Sorted by image table, so the identity comes first.
pub fn enumerate_translations_from(plane: &AffinePlane, base: PointId) -> Vec<Translation> {
    let mut seen = HashSet::new();
    let mut out: Vec<Translation> = plane
        .points()
        .filter_map(|q| extend_translation(plane, base, q).ok())
        .filter(|t| seen.insert(t.map().clone()))
        .collect();
    out.sort_by(|a, b| a.map().cmp(b.map()));
    out
}

pub fn enumerate_translations(plane: &AffinePlane) -> Vec<Translation> {
    enumerate_translations_from(plane, BASE_POINT)
}

/// All dilations: translations composed with the dilations fixing `base`,
/// closed under composition. Sorted by image table.
pub fn enumerate_dilations_from(plane: &AffinePlane, base: PointId) -> Vec<Dilation> {
    let translations = enumerate_translations_from(plane, base);
    let fixing = dilations_fixing(plane, base);
    let mut seen: HashSet<PointBijection> = HashSet::new();
    let mut elems: Vec<PointBijection> = Vec::new();
    for t in &translations {
        for d in &fixing {
            let m = t.map().compose(&d.map);
            if seen.insert(m.clone()) {
                elems.push(m);
            }
        }
    }
    // close under composition
    let mut frontier = 0;
    while frontier < elems.len() {
        let end = elems.len();
        for i in 0..end {
            for j in frontier..end {
                for m in [elems[i].compose(&elems[j]), elems[j].compose(&elems[i])] {
                    if seen.insert(m.clone()) {
                        elems.push(m);
                    }
                }
            }
        }
        frontier = end;
    }
    let mut out: Vec<Dilation> = elems
        .into_iter()
        .map(|m| validate_dilation(plane, m).expect("products of dilations are dilations"))
        .collect();
    out.sort_by(|a, b| a.map.cmp(&b.map));
    out
}

pub fn enumerate_dilations(plane: &AffinePlane) -> Vec<Dilation> {
    enumerate_dilations_from(plane, BASE_POINT)
}

/// `a ∘ b`, re-validated as a dilation.
pub fn compose_dilations(plane: &AffinePlane, a: &Dilation, b: &Dilation) -> Option<Dilation> {
    classify_dilation(plane, &a.map.compose(&b.map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{ag2, point_of};
    use crate::field::{FieldElement as F, FiniteField};

    fn plane(q: usize) -> AffinePlane {
        ag2(&FiniteField::of_order(q, None).unwrap())
    }

    fn affine_map(q: usize, f: impl Fn(u32, u32) -> (u32, u32)) -> PointBijection {
        let image = (0..q * q)
            .map(|i| {
                let (x, y) = f((i / q) as u32, (i % q) as u32);
                point_of(q, F(x), F(y))
            })
            .collect();
        PointBijection::new(image).unwrap()
    }

    fn pt(q: usize, x: u32, y: u32) -> PointId {
        point_of(q, F(x), F(y))
    }

    #[test]
    fn bijection_validation() {
        assert!(PointBijection::new(vec![PointId(0), PointId(0)]).is_err());
        assert!(PointBijection::new(vec![PointId(2), PointId(0)]).is_err());
        let f = PointBijection::new(vec![PointId(1), PointId(2), PointId(0)]).unwrap();
        assert!(f.compose(&f.inverse()).is_identity());
        assert!(f.fixed_points().is_empty());
    }

    #[test]
    fn collineation_examples() {
        let p2 = plane(2);
        assert!(is_collineation(&p2, &PointBijection::identity(4)));
        let p3 = plane(3);
        assert!(is_collineation(&p3, &affine_map(3, |x, y| ((x + 1) % 3, y))));
        let mut swap: Vec<PointId> = (0..9).map(PointId).collect();
        swap.swap(0, 1);
        assert!(!is_collineation(&p3, &PointBijection::new(swap).unwrap()));
    }

    #[test]
    fn dilation_examples() {
        let p3 = plane(3);
        let id = classify_dilation(&p3, &PointBijection::identity(9)).unwrap();
        assert_eq!(id.fixed_points().len(), 9);
        let homothety =
            classify_dilation(&p3, &affine_map(3, |x, y| (2 * x % 3, 2 * y % 3))).unwrap();
        assert_eq!(homothety.fixed_points(), &[PointId(0)]);
        let reflection = affine_map(3, |x, y| (y, x));
        assert!(is_collineation(&p3, &reflection));
        assert!(classify_dilation(&p3, &reflection).is_none());
        assert!(non_parallel_pair(&p3, &reflection).is_some());
    }

    #[test]
    fn translation_examples() {
        let p3 = plane(3);
        let id = classify_dilation(&p3, &PointBijection::identity(9)).unwrap();
        assert_eq!(classify_translation(&p3, &id).unwrap().direction(), None);
        let shift = classify_dilation(&p3, &affine_map(3, |x, y| ((x + 1) % 3, y))).unwrap();
        let t = classify_translation(&p3, &shift).unwrap();
        let x_axis = p3.line_through(pt(3, 0, 0), pt(3, 1, 0)).unwrap();
        assert_eq!(t.direction(), Some(p3.direction_of(x_axis).unwrap()));
        let homothety =
            classify_dilation(&p3, &affine_map(3, |x, y| (2 * x % 3, 2 * y % 3))).unwrap();
        assert!(classify_translation(&p3, &homothety).is_none());
    }

    #[test]
    fn trace_examples() {
        let p2 = plane(2);
        let id = classify_dilation(&p2, &PointBijection::identity(4)).unwrap();
        assert_eq!(trace_line(&p2, &id, PointId(2)), None);
        let shift = classify_dilation(&p2, &affine_map(2, |x, y| ((x + 1) % 2, y))).unwrap();
        let tr = trace_line(&p2, &shift, pt(2, 0, 0)).unwrap();
        assert_eq!(p2.line(tr), &[pt(2, 0, 0), pt(2, 1, 0)]);

        let p3 = plane(3);
        let h = classify_dilation(&p3, &affine_map(3, |x, y| (2 * x % 3, 2 * y % 3))).unwrap();
        let tr = trace_line(&p3, &h, pt(3, 1, 0)).unwrap();
        assert_eq!(p3.line(tr), &[pt(3, 0, 0), pt(3, 1, 0), pt(3, 2, 0)]);
    }

    #[test]
    fn extension_examples() {
        let p3 = plane(3);
        assert!(extend_translation(&p3, PointId(4), PointId(4)).unwrap().is_identity());
        let t = extend_translation(&p3, pt(3, 0, 0), pt(3, 1, 2)).unwrap();
        assert_eq!(t.map(), &affine_map(3, |x, y| ((x + 1) % 3, (y + 2) % 3)));

        let id = extend_dilation_fixing(&p3, pt(3, 0, 0), pt(3, 1, 0), pt(3, 1, 0)).unwrap();
        assert!(id.is_identity());
        let h = extend_dilation_fixing(&p3, pt(3, 0, 0), pt(3, 1, 0), pt(3, 2, 0)).unwrap();
        assert_eq!(h.map(), &affine_map(3, |x, y| (2 * x % 3, 2 * y % 3)));
        assert!(matches!(
            extend_dilation_fixing(&p3, pt(3, 0, 0), pt(3, 1, 0), pt(3, 1, 1)),
            Err(ExtensionFailure::InvalidInput(_))
        ));
        assert!(matches!(
            extend_dilation_fixing(&p3, pt(3, 0, 0), pt(3, 1, 0), pt(3, 0, 0)),
            Err(ExtensionFailure::NotInjective { .. })
        ));

        let p2 = plane(2);
        let only = dilations_fixing(&p2, pt(2, 0, 0));
        assert_eq!(only.len(), 1);
        assert!(only[0].is_identity());
    }

    #[test]
    fn enumeration_counts() {
        for (q, t, d) in [(2, 4, 4), (3, 9, 18), (4, 16, 48), (5, 25, 100)] {
            let p = plane(q);
            let ts = enumerate_translations(&p);
            assert_eq!(ts.len(), t);
            assert!(ts[0].is_identity());
            assert_eq!(enumerate_dilations(&p).len(), d);
        }
    }

    #[test]
    fn composition_examples() {
        let p3 = plane(3);
        let a = affine_map(3, |x, y| ((x + 1) % 3, y));
        let b = affine_map(3, |x, y| (x, (y + 1) % 3));
        assert_eq!(compose(&a, &b), affine_map(3, |x, y| ((x + 1) % 3, (y + 1) % 3)));
        assert_eq!(compose(&a, &b), compose(&b, &a));
        assert!(compose(&a, &inverse(&a)).is_identity());
        let da = classify_dilation(&p3, &a).unwrap();
        let db = classify_dilation(&p3, &b).unwrap();
        assert!(compose_dilations(&p3, &da, &db).is_some());
    }
}
