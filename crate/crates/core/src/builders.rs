//! The classical planes AG(2, q).

use crate::field::{FieldElement, FiniteField};
use crate::incidence::{AffinePlane, PlaneFile, PointId};

/// Point index of `(x, y)` in AG(2, q): `x * q + y`.
#[inline]
pub fn point_of(q: usize, x: FieldElement, y: FieldElement) -> PointId {
    PointId::from_idx(x.idx() * q + y.idx())
}

#[inline]
pub fn coords_of(q: usize, p: PointId) -> (FieldElement, FieldElement) {
    (FieldElement((p.idx() / q) as u32), FieldElement((p.idx() % q) as u32))
}

/// Incidence of AG(2, q). Lines `y = m x + b` come first (slope outer,
/// intercept inner, both in field-index order), then the verticals `x = c`.
pub fn ag2_file(field: &FiniteField) -> PlaneFile {
    let q = field.order();
    let mut lines = Vec::with_capacity(q * q + q);
    for m in field.elements() {
        for b in field.elements() {
            lines.push(
                field.elements().map(|x| point_of(q, x, field.add(field.mul(m, x), b)).0).collect(),
            );
        }
    }
    for c in field.elements() {
        lines.push(field.elements().map(|y| point_of(q, c, y).0).collect());
    }
    PlaneFile { num_points: q * q, lines }
}

/// AG(2, q), already checked against the affine axioms.
pub fn ag2(field: &FiniteField) -> AffinePlane {
    let mut plane = AffinePlane::load(&ag2_file(field)).expect("AG(2,q) is structurally valid");
    let report = plane.check_axioms();
    assert!(report.all_passed(), "AG(2,{}) failed the affine axioms: {report:?}", field.order());
    plane
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        for (q, lines) in [(2, 6), (3, 12), (5, 30)] {
            let f = FiniteField::of_order(q, None).unwrap();
            let p = ag2(&f);
            assert_eq!(p.num_points(), q * q);
            assert_eq!(p.num_lines(), lines);
            assert_eq!(p.num_directions(), q + 1);
        }
    }

    #[test]
    fn coordinate_round_trip() {
        let f = FiniteField::of_order(4, None).unwrap();
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(coords_of(4, point_of(4, x, y)), (x, y));
            }
        }
    }

    #[test]
    fn first_line_is_the_x_axis_and_last_is_x_eq_q_minus_1() {
        let f = FiniteField::of_order(3, None).unwrap();
        let file = ag2_file(&f);
        assert_eq!(file.lines[0], vec![0, 3, 6]);
        assert_eq!(file.lines[11], vec![6, 7, 8]);
    }
}
