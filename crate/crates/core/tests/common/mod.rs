#![allow(dead_code)]

//! Independent oracles and fixtures shared by the integration tests.

use affine_endo::builders::{ag2, point_of};
use affine_endo::collineation::{is_collineation, PointBijection};
use affine_endo::field::{FieldElement, FiniteField};
use affine_endo::incidence::{AffinePlane, PlaneFile, PointId};

pub fn plane(q: usize) -> AffinePlane {
    ag2(&FiniteField::of_order(q, None).unwrap())
}

pub fn pt(q: usize, x: u32, y: u32) -> PointId {
    point_of(q, FieldElement(x), FieldElement(y))
}

pub fn triangle() -> AffinePlane {
    AffinePlane::load(&PlaneFile { num_points: 3, lines: vec![vec![0, 1], vec![1, 2], vec![0, 2]] })
        .unwrap()
}

/// Every dilation, by backtracking over partial permutations: point `k`
/// may go to `t` only if, for every earlier `j`, the line `t·f(j)` is
/// parallel to `k·j`. Uses only the public line/direction queries.
pub fn brute_force_dilations(plane: &AffinePlane) -> Vec<PointBijection> {
    let n = plane.num_points();
    let dir = |a: usize, b: usize| {
        let l = plane.line_through(PointId::from_idx(a), PointId::from_idx(b)).unwrap();
        plane.direction_of(l).unwrap()
    };
    let mut dirs = vec![vec![None; n]; n];
    for (a, row) in dirs.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            if a != b {
                *slot = Some(dir(a, b));
            }
        }
    }
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        k: usize,
        n: usize,
        dirs: &[Vec<Option<affine_endo::incidence::DirectionId>>],
        image: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == n {
            out.push(image.clone());
            return;
        }
        for t in 0..n {
            if used[t] {
                continue;
            }
            if (0..k).all(|j| dirs[k][j] == dirs[t][image[j]]) {
                used[t] = true;
                image.push(t);
                rec(k + 1, n, dirs, image, used, out);
                image.pop();
                used[t] = false;
            }
        }
    }
    let mut raw = Vec::new();
    rec(0, n, &dirs, &mut image, &mut used, &mut raw);
    for img in raw {
        let f = PointBijection::new(img.into_iter().map(PointId::from_idx).collect()).unwrap();
        assert!(is_collineation(plane, &f));
        out.push(f);
    }
    out.sort();
    out
}

/// Translations among the brute-force dilations: identity or fixed-point free.
pub fn brute_force_translations(plane: &AffinePlane) -> Vec<PointBijection> {
    brute_force_dilations(plane)
        .into_iter()
        .filter(|f| f.is_identity() || f.fixed_points().is_empty())
        .collect()
}

/// An affine plane of order 9 whose translation group is not transitive.
///
/// Start from the plane over the Dickson nearfield of order 9
/// (`a ∘ b = a·b` when `b` is a square in GF(9), `a³·b` otherwise), complete
/// it projectively, and delete the vertical line `x = 0` instead of the
/// line at infinity.
pub fn non_translation_plane() -> AffinePlane {
    let f = FiniteField::of_order(9, None).unwrap();
    let q = 9usize;
    let els: Vec<FieldElement> = f.elements().collect();
    let squares: Vec<bool> = els
        .iter()
        .map(|&b| b != FieldElement::ZERO && els.iter().any(|&c| f.mul(c, c) == b))
        .collect();
    let cube = |a: FieldElement| f.mul(f.mul(a, a), a);
    let near = |a: FieldElement, b: FieldElement| {
        if b == FieldElement::ZERO || squares[b.idx()] {
            f.mul(a, b)
        } else {
            f.mul(cube(a), b)
        }
    };
    // projective points: affine (x, y) -> x*q + y; slope m -> q*q + m; vertical -> q*q + q
    let slope_pt = |m: usize| q * q + m;
    let vertical_pt = q * q + q;
    let mut lines: Vec<Vec<usize>> = Vec::new();
    for m in &els {
        for b in &els {
            let mut l: Vec<usize> =
                els.iter().map(|&x| x.idx() * q + f.add(near(x, *m), *b).idx()).collect();
            l.push(slope_pt(m.idx()));
            lines.push(l);
        }
    }
    for c in 0..q {
        let mut l: Vec<usize> = (0..q).map(|y| c * q + y).collect();
        l.push(vertical_pt);
        lines.push(l);
    }
    let mut at_infinity: Vec<usize> = (0..q).map(slope_pt).collect();
    at_infinity.push(vertical_pt);
    lines.push(at_infinity);

    // delete the line x = 0 (index q*q among the lines) with its points
    let removed: Vec<usize> = lines[q * q].clone();
    let total = q * q + q + 1;
    let mut relabel = vec![None; total];
    let mut next = 0u32;
    for (p, slot) in relabel.iter_mut().enumerate() {
        if !removed.contains(&p) {
            *slot = Some(next);
            next += 1;
        }
    }
    let affine_lines: Vec<Vec<u32>> = lines
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != q * q)
        .map(|(_, l)| l.iter().filter_map(|&p| relabel[p]).collect())
        .collect();
    let mut plane =
        AffinePlane::load(&PlaneFile { num_points: next as usize, lines: affine_lines }).unwrap();
    let report = plane.check_axioms();
    assert!(report.all_passed(), "fixture is not an affine plane: {report:?}");
    plane
}
