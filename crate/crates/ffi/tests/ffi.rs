use affine_endo_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn plane(q: usize) -> *mut AePlane {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ae_plane_build_ag2(q, &mut p) }, AeStatus::Ok);
    p
}

fn skewfield(p: *const AePlane) -> *mut AeSkewField {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { ae_skewfield_new(p, 0, &mut f) }, AeStatus::Ok);
    f
}

#[test]
fn plane_counts() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let p = plane(q);
        let (mut pts, mut lines, mut dirs) = (0, 0, 0);
        unsafe {
            assert_eq!(ae_plane_num_points(p, &mut pts), AeStatus::Ok);
            assert_eq!(ae_plane_num_lines(p, &mut lines), AeStatus::Ok);
            assert_eq!(ae_plane_num_directions(p, &mut dirs), AeStatus::Ok);
            ae_plane_free(p);
        }
        assert_eq!((pts, lines, dirs), (q * q, q * q + q, q + 1));
    }
}

#[test]
fn json_round_trip_and_rejections() {
    let p = plane(3);
    let mut text = ptr::null_mut();
    unsafe {
        assert_eq!(ae_plane_to_json(p, &mut text), AeStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(ae_plane_from_json(text, &mut back), AeStatus::Ok);
        let mut n = 0;
        ae_plane_num_lines(back, &mut n);
        assert_eq!(n, 12);
        ae_plane_free(back);
        ae_string_free(text);
        ae_plane_free(p);

        let tri = CString::new(r#"{"num_points":3,"lines":[[0,1],[1,2],[0,2]]}"#).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(ae_plane_from_json(tri.as_ptr(), &mut out), AeStatus::NotAnAffinePlane);
        assert!(out.is_null());
        let junk = CString::new("{").unwrap();
        assert_eq!(ae_plane_from_json(junk.as_ptr(), &mut out), AeStatus::InvalidInput);
        assert_eq!(ae_plane_build_ag2(6, &mut out), AeStatus::InvalidInput);
    }
}

#[test]
fn null_pointers_are_reported() {
    unsafe {
        let mut n = 0;
        assert_eq!(ae_plane_num_points(ptr::null(), &mut n), AeStatus::NullPointer);
        assert_eq!(ae_plane_build_ag2(3, ptr::null_mut()), AeStatus::NullPointer);
        assert_eq!(ae_skewfield_order(ptr::null(), &mut n), AeStatus::NullPointer);
        assert_eq!(ae_skewfield_verify(ptr::null(), false, ptr::null_mut()), AeStatus::NullPointer);
        ae_plane_free(ptr::null_mut());
        ae_skewfield_free(ptr::null_mut());
        ae_string_free(ptr::null_mut());
    }
}

#[test]
fn arithmetic_matches_gf4() {
    let p = plane(4);
    let f = skewfield(p);
    unsafe {
        let mut n = 0;
        ae_skewfield_order(f, &mut n);
        assert_eq!(n, 4);
        // characteristic 2: every element is its own negative
        for a in 0..n {
            let mut s = usize::MAX;
            assert_eq!(ae_skewfield_add(f, a, a, &mut s), AeStatus::Ok);
            assert_eq!(s, 0);
        }
        for a in 1..n {
            let mut inv = 0;
            assert_eq!(ae_skewfield_inverse(f, a, &mut inv), AeStatus::Ok);
            let mut prod = 0;
            ae_skewfield_mul(f, a, inv, &mut prod);
            assert_eq!(prod, 1);
            ae_skewfield_mul(f, inv, a, &mut prod);
            assert_eq!(prod, 1);
        }
        let mut out = 0;
        assert_eq!(ae_skewfield_inverse(f, 0, &mut out), AeStatus::ZeroHasNoInverse);
        assert_eq!(ae_skewfield_mul(f, 0, 4, &mut out), AeStatus::InvalidInput);
        ae_skewfield_free(f);
        ae_plane_free(p);
    }
}

#[test]
fn verification_report_is_json() {
    let p = plane(5);
    let f = skewfield(p);
    unsafe {
        let mut js = ptr::null_mut();
        assert_eq!(ae_skewfield_verify(f, true, &mut js), AeStatus::Ok);
        let text = CStr::from_ptr(js).to_str().unwrap().to_owned();
        ae_string_free(js);
        assert!(text.contains("\"oracle_equivalence\""));
        assert!(!text.contains("\"fail\""));
        ae_skewfield_free(f);
        ae_plane_free(p);
    }
}

#[test]
fn bad_base_point_is_invalid_input() {
    let p = plane(3);
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(ae_skewfield_new(p, 9, &mut f), AeStatus::InvalidInput);
        ae_plane_free(p);
    }
}

#[test]
fn status_messages_are_nonempty() {
    for s in [
        AeStatus::Ok,
        AeStatus::NullPointer,
        AeStatus::InvalidInput,
        AeStatus::NotAnAffinePlane,
        AeStatus::VerificationFailed,
        AeStatus::ZeroHasNoInverse,
        AeStatus::NotATranslationPlane,
        AeStatus::Internal,
    ] {
        let m = unsafe { CStr::from_ptr(ae_status_message(s)) };
        assert!(!m.to_bytes().is_empty());
    }
}
