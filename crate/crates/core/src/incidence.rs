//! Finite incidence structures and the affine-plane axiom checker.
//!
//! A plane is loaded structurally first ([`AffinePlane::load`]) and only
//! becomes usable for geometric queries after [`AffinePlane::check_axioms`]
//! reports a full pass. At that point the joining-line table and the
//! parallel classes are materialized and the plane is never mutated again.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::report::{Check, VerificationReport};

macro_rules! index_newtype {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn idx(self) -> usize {
                self.0 as usize
            }

            #[inline]
            pub fn from_idx(i: usize) -> Self {
                $name(i as u32)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt(f)
            }
        }
    };
}

index_newtype!(
    /// A point of a plane, dense in `0..num_points`.
    PointId
);
index_newtype!(
    /// A line of a plane, dense in `0..num_lines`.
    LineId
);
index_newtype!(
    /// A parallel class of lines. The identity translation has no direction;
    /// that is modelled as `Option<DirectionId>::None`, never as a class.
    DirectionId
);

const NO_LINE: LineId = LineId(u32::MAX);

#[derive(Debug, Error)]
pub enum PlaneError {
    #[error("line {line}: point {point} is out of range (num_points = {num_points})")]
    PointOutOfRange { line: usize, point: u32, num_points: usize },
    #[error("line {line}: point {point} appears more than once")]
    DuplicatePoint { line: usize, point: u32 },
    #[error("line {line} has {len} point(s); at least 2 are required")]
    DegenerateLine { line: usize, len: usize },
    #[error("lines {first} and {second} have the same point set")]
    DuplicateLine { first: usize, second: usize },
    #[error("no line is determined by a single point {0}")]
    SamePoint(PointId),
    #[error("point {0} is out of range")]
    InvalidPoint(PointId),
    #[error("line {0} is out of range")]
    InvalidLine(LineId),
    #[error("the plane has not passed the affine axiom check")]
    NotVerified,
    #[error("malformed plane JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// The on-disk incidence description: `{"num_points": N, "lines": [[i, j, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneFile {
    pub num_points: usize,
    pub lines: Vec<Vec<u32>>,
}

#[derive(Debug, Clone)]
struct Geometry {
    join: Vec<LineId>,
    parallel_class_of: Vec<DirectionId>,
    classes: Vec<Vec<LineId>>,
    // class-major: class_line_at[d * n + p] is the line of class d through p
    class_line_at: Vec<LineId>,
}

#[derive(Debug, Clone)]
pub struct AffinePlane {
    num_points: usize,
    lines: Vec<Vec<PointId>>,
    point_to_lines: Vec<Vec<LineId>>,
    line_index: HashMap<Vec<PointId>, LineId>,
    geometry: Option<Geometry>,
}

impl AffinePlane {
    /// Structural load. Points inside each line are sorted; line order is kept.
    /// The affine axioms are not checked here.
    pub fn load(raw: &PlaneFile) -> Result<Self, PlaneError> {
        let n = raw.num_points;
        let mut lines = Vec::with_capacity(raw.lines.len());
        let mut line_index = HashMap::with_capacity(raw.lines.len());
        for (li, pts) in raw.lines.iter().enumerate() {
            if let Some(&bad) = pts.iter().find(|&&p| p as usize >= n) {
                return Err(PlaneError::PointOutOfRange { line: li, point: bad, num_points: n });
            }
            let mut sorted: Vec<PointId> = pts.iter().map(|&p| PointId(p)).collect();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(PlaneError::DuplicatePoint { line: li, point: w[0].0 });
            }
            if sorted.len() < 2 {
                return Err(PlaneError::DegenerateLine { line: li, len: sorted.len() });
            }
            if let Some(&first) = line_index.get(&sorted) {
                let first: LineId = first;
                return Err(PlaneError::DuplicateLine { first: first.idx(), second: li });
            }
            line_index.insert(sorted.clone(), LineId::from_idx(li));
            lines.push(sorted);
        }
        let mut point_to_lines = vec![Vec::new(); n];
        for (li, pts) in lines.iter().enumerate() {
            for p in pts {
                point_to_lines[p.idx()].push(LineId::from_idx(li));
            }
        }
        Ok(AffinePlane { num_points: n, lines, point_to_lines, line_index, geometry: None })
    }

    pub fn from_json_str(s: &str) -> Result<Self, PlaneError> {
        let raw: PlaneFile = serde_json::from_str(s)?;
        Self::load(&raw)
    }

    /// Canonical form: each line sorted, lines in lexicographic order.
    pub fn to_file(&self) -> PlaneFile {
        let mut lines: Vec<Vec<u32>> =
            self.lines.iter().map(|l| l.iter().map(|p| p.0).collect()).collect();
        lines.sort();
        PlaneFile { num_points: self.num_points, lines }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("plane file serializes")
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> + '_ {
        (0..self.num_points).map(PointId::from_idx)
    }

    pub fn line_ids(&self) -> impl Iterator<Item = LineId> + '_ {
        (0..self.lines.len()).map(LineId::from_idx)
    }

    pub fn line(&self, l: LineId) -> &[PointId] {
        &self.lines[l.idx()]
    }

    pub fn lines_through(&self, p: PointId) -> &[LineId] {
        &self.point_to_lines[p.idx()]
    }

    pub fn contains(&self, l: LineId, p: PointId) -> bool {
        self.lines[l.idx()].binary_search(&p).is_ok()
    }

    /// Finds the line whose point set is exactly `points` (any order).
    pub fn find_line(&self, points: &[PointId]) -> Option<LineId> {
        let mut key = points.to_vec();
        key.sort_unstable();
        self.line_index.get(&key).copied()
    }

    pub fn is_verified(&self) -> bool {
        self.geometry.is_some()
    }

    /// Line to direction map; `None` until the axioms have passed.
    pub fn parallel_class_of(&self) -> Option<&[DirectionId]> {
        self.geometry.as_ref().map(|g| g.parallel_class_of.as_slice())
    }

    pub fn num_directions(&self) -> usize {
        self.geometry.as_ref().map_or(0, |g| g.classes.len())
    }

    /// The lines of every parallel class, in `DirectionId` order.
    pub fn parallel_classes(&self) -> Option<&[Vec<LineId>]> {
        self.geometry.as_ref().map(|g| g.classes.as_slice())
    }

    /// `true` iff `l == m` or the two lines share no point.
    pub fn are_parallel(&self, l: LineId, m: LineId) -> bool {
        l == m || common_points(&self.lines[l.idx()], &self.lines[m.idx()]) == 0
    }

    /// The unique common point of two lines, if they meet in exactly one point.
    pub fn meet(&self, l: LineId, m: LineId) -> Option<PointId> {
        let (a, b) = (&self.lines[l.idx()], &self.lines[m.idx()]);
        let (mut i, mut j) = (0, 0);
        let mut found = None;
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if found.is_some() {
                        return None;
                    }
                    found = Some(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        found
    }

    pub fn line_through(&self, p: PointId, q: PointId) -> Result<LineId, PlaneError> {
        self.check_point(p)?;
        self.check_point(q)?;
        if p == q {
            return Err(PlaneError::SamePoint(p));
        }
        let g = self.geometry.as_ref().ok_or(PlaneError::NotVerified)?;
        Ok(g.join[p.idx() * self.num_points + q.idx()])
    }

    /// The line through `p` in the parallel class of `l` (`l` itself when `p` is on it).
    pub fn parallel_line_through(&self, l: LineId, p: PointId) -> Result<LineId, PlaneError> {
        self.check_point(p)?;
        self.check_line(l)?;
        let g = self.geometry.as_ref().ok_or(PlaneError::NotVerified)?;
        let d = g.parallel_class_of[l.idx()];
        Ok(g.class_line_at[d.idx() * self.num_points + p.idx()])
    }

    pub fn direction_of(&self, l: LineId) -> Result<DirectionId, PlaneError> {
        self.check_line(l)?;
        let g = self.geometry.as_ref().ok_or(PlaneError::NotVerified)?;
        Ok(g.parallel_class_of[l.idx()])
    }

    fn check_point(&self, p: PointId) -> Result<(), PlaneError> {
        if p.idx() < self.num_points {
            Ok(())
        } else {
            Err(PlaneError::InvalidPoint(p))
        }
    }

    fn check_line(&self, l: LineId) -> Result<(), PlaneError> {
        if l.idx() < self.lines.len() {
            Ok(())
        } else {
            Err(PlaneError::InvalidLine(l))
        }
    }

    fn geom(&self) -> &Geometry {
        self.geometry.as_ref().expect("plane has not passed check_axioms")
    }

    // Unchecked fast paths for the enumeration core. They panic on an
    // unverified plane.

    #[inline]
    pub(crate) fn join(&self, p: PointId, q: PointId) -> LineId {
        debug_assert_ne!(p, q);
        self.geom().join[p.idx() * self.num_points + q.idx()]
    }

    #[inline]
    pub(crate) fn class(&self, l: LineId) -> DirectionId {
        self.geom().parallel_class_of[l.idx()]
    }

    #[inline]
    pub(crate) fn parallel_at(&self, l: LineId, p: PointId) -> LineId {
        let g = self.geom();
        let d = g.parallel_class_of[l.idx()];
        g.class_line_at[d.idx() * self.num_points + p.idx()]
    }

    /// Runs the three affine-plane axioms and, on a full pass, materializes
    /// the joining-line table and the parallel classes.
    ///
    /// Checks reported: `joining_line_unique`, `playfair_parallel`,
    /// `triangle_exists`, and (only when the first three pass)
    /// `parallelism_equivalence`.
    pub fn check_axioms(&mut self) -> VerificationReport {
        let n = self.num_points;
        let mut report = VerificationReport::new();

        // Any two distinct points lie on exactly one line.
        let mut pair_count = vec![0u32; n * n];
        let mut join = vec![NO_LINE; n * n];
        for (li, pts) in self.lines.iter().enumerate() {
            for (a, &p) in pts.iter().enumerate() {
                for &q in &pts[a + 1..] {
                    let (i, j) = (p.idx() * n + q.idx(), q.idx() * n + p.idx());
                    pair_count[i] += 1;
                    join[i] = LineId::from_idx(li);
                    join[j] = LineId::from_idx(li);
                }
            }
        }
        let bad_pair = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .find(|&(p, q)| pair_count[p * n + q] != 1);
        report.push(Check::from_witness(
            "joining_line_unique",
            bad_pair.map(|(p, q)| {
                let on_both: Vec<u32> = self
                    .lines_through(PointId::from_idx(p))
                    .iter()
                    .filter(|&&l| self.contains(l, PointId::from_idx(q)))
                    .map(|l| l.0)
                    .collect();
                json!({ "points": [p, q], "lines_containing_both": on_both })
            }),
        ));

        // Through a point off a line there is exactly one line missing it.
        let nl = self.lines.len();
        let mut meets = vec![0u32; nl * nl];
        for through in &self.point_to_lines {
            for &l in through {
                for &m in through {
                    meets[l.idx() * nl + m.idx()] += 1;
                }
            }
        }
        let mut playfair_witness = None;
        'scan: for p in 0..n {
            let through = &self.point_to_lines[p];
            for l in 0..nl {
                if self.contains(LineId::from_idx(l), PointId::from_idx(p)) {
                    continue;
                }
                let parallels: Vec<u32> =
                    through.iter().filter(|m| meets[l * nl + m.idx()] == 0).map(|m| m.0).collect();
                if parallels.len() != 1 {
                    playfair_witness = Some(json!({
                        "point": p,
                        "line": l,
                        "line_points": self.lines[l],
                        "parallels_through_point": parallels,
                    }));
                    break 'scan;
                }
            }
        }
        let playfair_ok = playfair_witness.is_none();
        report.push(Check::from_witness("playfair_parallel", playfair_witness));

        // Three points not on a common line.
        let collinear = |p: usize, q: usize, r: usize| {
            self.point_to_lines[p].iter().any(|&l| {
                self.contains(l, PointId::from_idx(q)) && self.contains(l, PointId::from_idx(r))
            })
        };
        let triangle = (0..n).find_map(|p| {
            (p + 1..n).find_map(|q| (q + 1..n).find(|&r| !collinear(p, q, r)).map(|r| (p, q, r)))
        });
        report.push(if triangle.is_some() {
            Check::pass("triangle_exists")
        } else {
            Check::fail(
                "triangle_exists",
                json!({ "num_points": n, "reason": "every triple of points is collinear" }),
            )
        });

        if bad_pair.is_some() || !playfair_ok || triangle.is_none() {
            return report;
        }

        // Parallelism is an equivalence relation; its classes each cover every point once.
        let parallel = |l: usize, m: usize| l == m || meets[l * nl + m] == 0;
        let mut class_of: Vec<Option<DirectionId>> = vec![None; nl];
        let mut classes: Vec<Vec<LineId>> = Vec::new();
        let mut eq_witness = None;
        for l in 0..nl {
            if class_of[l].is_some() {
                continue;
            }
            let d = DirectionId::from_idx(classes.len());
            let members: Vec<LineId> =
                (0..nl).filter(|&m| parallel(l, m)).map(LineId::from_idx).collect();
            for &m in &members {
                if let Some(prev) = class_of[m.idx()] {
                    let rep = classes[prev.idx()][0];
                    eq_witness = Some(json!({
                        "lines": [rep.0, m.0, l as u32],
                        "reason": "first two and last two are parallel but the outer pair is not",
                    }));
                    break;
                }
                class_of[m.idx()] = Some(d);
            }
            if eq_witness.is_some() {
                break;
            }
            if let Some((a, b)) = members
                .iter()
                .flat_map(|&a| members.iter().map(move |&b| (a, b)))
                .find(|&(a, b)| !parallel(a.idx(), b.idx()))
            {
                eq_witness = Some(json!({
                    "lines": [a.0, l as u32, b.0],
                    "reason": "first two and last two are parallel but the outer pair is not",
                }));
                break;
            }
            classes.push(members);
        }
        let mut class_line_at = vec![NO_LINE; classes.len() * n];
        if eq_witness.is_none() {
            'cover: for (d, members) in classes.iter().enumerate() {
                for &m in members {
                    for &p in &self.lines[m.idx()] {
                        class_line_at[d * n + p.idx()] = m;
                    }
                }
                if let Some(p) = (0..n).find(|&p| class_line_at[d * n + p] == NO_LINE) {
                    eq_witness = Some(json!({
                        "direction": d,
                        "point": p,
                        "reason": "no line of this parallel class passes through the point",
                    }));
                    break 'cover;
                }
            }
        }
        let ok = eq_witness.is_none();
        report.push(Check::from_witness("parallelism_equivalence", eq_witness));
        if ok {
            self.geometry = Some(Geometry {
                join,
                parallel_class_of: class_of
                    .into_iter()
                    .map(|d| d.expect("every line classified"))
                    .collect(),
                classes,
                class_line_at,
            });
        }
        report
    }
}

fn common_points(a: &[PointId], b: &[PointId]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}
