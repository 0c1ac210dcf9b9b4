//! C ABI over `affine_endo`.
//!
//! Every function returns an [`AeStatus`]; results come back through out
//! pointers. Handles are opaque and must be released with the matching
//! `*_free` function. Strings returned by the library are released with
//! [`ae_string_free`]. Panics never cross the boundary: they surface as
//! [`AeStatus::Internal`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use affine_endo::builders::ag2;
use affine_endo::collineation::enumerate_translations;
use affine_endo::field::FiniteField;
use affine_endo::incidence::{AffinePlane, PointId};
use affine_endo::skewfield::{
    generate_tp_endos, invert_at, oracle_check, verify_skew_field, TPEndoSet,
};
use affine_endo::trgroup::{build_group, TranslationGroup};

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AeStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed argument: bad field order, bad JSON, point or element out of range.
    InvalidInput = 2,
    /// The incidence structure fails an affine-plane axiom.
    NotAnAffinePlane = 3,
    /// A verification ran and at least one check failed.
    VerificationFailed = 4,
    ZeroHasNoInverse = 5,
    /// The translation group is not transitive, so no skew-field is built.
    NotATranslationPlane = 6,
    Internal = 7,
}

/// An affine plane that has passed the axiom check.
pub struct AePlane {
    plane: AffinePlane,
}

/// The skew-field of trace-preserving endomorphisms of a plane. Elements
/// are numbered `0..order`, with 0 the zero and 1 the identity.
pub struct AeSkewField {
    plane: AffinePlane,
    group: TranslationGroup,
    set: TPEndoSet,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    inverse: Vec<Option<usize>>,
}

fn guard(f: impl FnOnce() -> AeStatus) -> AeStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(AeStatus::Internal)
}

unsafe fn put<T>(out: *mut T, value: T) -> AeStatus {
    if out.is_null() {
        return AeStatus::NullPointer;
    }
    out.write(value);
    AeStatus::Ok
}

/// Static, NUL-terminated description of a status code. Never NULL.
#[no_mangle]
pub extern "C" fn ae_status_message(status: AeStatus) -> *const c_char {
    let s: &'static CStr = match status {
        AeStatus::Ok => c"ok",
        AeStatus::NullPointer => c"null pointer argument",
        AeStatus::InvalidInput => c"invalid input",
        AeStatus::NotAnAffinePlane => c"not an affine plane",
        AeStatus::VerificationFailed => c"verification failed",
        AeStatus::ZeroHasNoInverse => c"zero has no multiplicative inverse",
        AeStatus::NotATranslationPlane => c"translation group is not transitive",
        AeStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

fn boxed_plane(mut plane: AffinePlane) -> Result<Box<AePlane>, AeStatus> {
    if !plane.is_verified() && !plane.check_axioms().all_passed() {
        return Err(AeStatus::NotAnAffinePlane);
    }
    Ok(Box::new(AePlane { plane }))
}

/// Builds AG(2, q) over GF(q) with the default modulus (q ≤ 16).
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn ae_plane_build_ag2(q: usize, out: *mut *mut AePlane) -> AeStatus {
    guard(|| {
        if out.is_null() {
            return AeStatus::NullPointer;
        }
        let Ok(field) = FiniteField::of_order(q, None) else {
            return AeStatus::InvalidInput;
        };
        match boxed_plane(ag2(&field)) {
            Ok(b) => put(out, Box::into_raw(b)),
            Err(s) => s,
        }
    })
}

/// Parses `{"num_points": N, "lines": [[...], ...]}` and checks the axioms.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn ae_plane_from_json(
    json: *const c_char,
    out: *mut *mut AePlane,
) -> AeStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return AeStatus::NullPointer;
        }
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return AeStatus::InvalidInput;
        };
        let Ok(plane) = AffinePlane::from_json_str(text) else {
            return AeStatus::InvalidInput;
        };
        match boxed_plane(plane) {
            Ok(b) => put(out, Box::into_raw(b)),
            Err(s) => s,
        }
    })
}

/// # Safety
/// `plane` must be a live handle or NULL; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ae_plane_num_points(plane: *const AePlane, out: *mut usize) -> AeStatus {
    match plane.as_ref() {
        Some(p) => put(out, p.plane.num_points()),
        None => AeStatus::NullPointer,
    }
}

/// # Safety
/// `plane` must be a live handle or NULL; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ae_plane_num_lines(plane: *const AePlane, out: *mut usize) -> AeStatus {
    match plane.as_ref() {
        Some(p) => put(out, p.plane.num_lines()),
        None => AeStatus::NullPointer,
    }
}

/// Number of parallel classes.
///
/// # Safety
/// `plane` must be a live handle or NULL; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ae_plane_num_directions(
    plane: *const AePlane,
    out: *mut usize,
) -> AeStatus {
    match plane.as_ref() {
        Some(p) => put(out, p.plane.num_directions()),
        None => AeStatus::NullPointer,
    }
}

/// Canonical incidence JSON; free the result with [`ae_string_free`].
///
/// # Safety
/// `plane` must be a live handle or NULL; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ae_plane_to_json(
    plane: *const AePlane,
    out: *mut *mut c_char,
) -> AeStatus {
    guard(|| match plane.as_ref() {
        Some(p) => string_out(p.plane.to_json_string(), out),
        None => AeStatus::NullPointer,
    })
}

/// # Safety
/// `plane` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ae_plane_free(plane: *mut AePlane) {
    if !plane.is_null() {
        drop(Box::from_raw(plane));
    }
}

/// Builds the translation group and the trace-preserving endomorphisms
/// with respect to `base_point`. The plane handle stays owned by the caller.
///
/// # Safety
/// `plane` must be a live handle or NULL; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn ae_skewfield_new(
    plane: *const AePlane,
    base_point: u32,
    out: *mut *mut AeSkewField,
) -> AeStatus {
    guard(|| {
        let (Some(p), false) = (plane.as_ref(), out.is_null()) else {
            return AeStatus::NullPointer;
        };
        let plane = p.plane.clone();
        let base = PointId(base_point);
        if base.idx() >= plane.num_points() {
            return AeStatus::InvalidInput;
        }
        let Ok(group) = build_group(&plane, enumerate_translations(&plane)) else {
            return AeStatus::NotATranslationPlane;
        };
        if !group.is_transitive() {
            return AeStatus::NotATranslationPlane;
        }
        let Ok(set) = generate_tp_endos(&plane, &group, base) else {
            return AeStatus::VerificationFailed;
        };
        let Some((add, mul)) = set.tables(&group) else {
            return AeStatus::VerificationFailed;
        };
        let inverse = set
            .elements()
            .iter()
            .map(|a| invert_at(&plane, &group, a, base).ok().and_then(|b| set.index_of(&b)))
            .collect();
        let sf = AeSkewField { plane, group, set, add, mul, inverse };
        put(out, Box::into_raw(Box::new(sf)))
    })
}

/// Number of elements (the order of the plane).
///
/// # Safety
/// `sf` must be a live handle or NULL; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ae_skewfield_order(sf: *const AeSkewField, out: *mut usize) -> AeStatus {
    match sf.as_ref() {
        Some(s) => put(out, s.set.len()),
        None => AeStatus::NullPointer,
    }
}

unsafe fn table_lookup(
    sf: *const AeSkewField,
    a: usize,
    b: usize,
    out: *mut usize,
    pick: fn(&AeSkewField) -> &Vec<Vec<usize>>,
) -> AeStatus {
    let Some(s) = sf.as_ref() else {
        return AeStatus::NullPointer;
    };
    let n = s.set.len();
    if a >= n || b >= n {
        return AeStatus::InvalidInput;
    }
    put(out, pick(s)[a][b])
}

/// `a + b` by element index.
///
/// # Safety
/// `sf` must be a live handle or NULL; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ae_skewfield_add(
    sf: *const AeSkewField,
    a: usize,
    b: usize,
    out: *mut usize,
) -> AeStatus {
    table_lookup(sf, a, b, out, |s| &s.add)
}

/// `a ∘ b` (apply `b` first) by element index.
///
/// # Safety
/// `sf` must be a live handle or NULL; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ae_skewfield_mul(
    sf: *const AeSkewField,
    a: usize,
    b: usize,
    out: *mut usize,
) -> AeStatus {
    table_lookup(sf, a, b, out, |s| &s.mul)
}

/// Two-sided multiplicative inverse, obtained from the dilation that
/// induces `a`.
///
/// # Safety
/// `sf` must be a live handle or NULL; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ae_skewfield_inverse(
    sf: *const AeSkewField,
    a: usize,
    out: *mut usize,
) -> AeStatus {
    let Some(s) = sf.as_ref() else {
        return AeStatus::NullPointer;
    };
    if a >= s.set.len() {
        return AeStatus::InvalidInput;
    }
    if a == TPEndoSet::ZERO {
        return AeStatus::ZeroHasNoInverse;
    }
    match s.inverse[a] {
        Some(b) => put(out, b),
        None => AeStatus::VerificationFailed,
    }
}

/// Runs every ring and skew-field check (plus the brute-force oracle when
/// `oracle` is set) and returns `Ok` or `VerificationFailed`. When `out_json`
/// is non-NULL it receives the check list as JSON, to be released with
/// [`ae_string_free`].
///
/// # Safety
/// `sf` must be a live handle or NULL; `out_json` must be NULL or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ae_skewfield_verify(
    sf: *const AeSkewField,
    oracle: bool,
    out_json: *mut *mut c_char,
) -> AeStatus {
    guard(|| {
        let Some(s) = sf.as_ref() else {
            return AeStatus::NullPointer;
        };
        let mut report = verify_skew_field(&s.plane, &s.group, &s.set);
        if oracle {
            report.push(oracle_check(&s.group, &s.set));
        }
        let verdict = if report.all_passed() { AeStatus::Ok } else { AeStatus::VerificationFailed };
        if !out_json.is_null() {
            let Ok(text) = serde_json::to_string(&report) else {
                return AeStatus::Internal;
            };
            let st = string_out(text, out_json);
            if st != AeStatus::Ok {
                return st;
            }
        }
        verdict
    })
}

/// # Safety
/// `sf` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ae_skewfield_free(sf: *mut AeSkewField) {
    if !sf.is_null() {
        drop(Box::from_raw(sf));
    }
}

/// # Safety
/// `s` must be a string returned by this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn ae_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn string_out(text: String, out: *mut *mut c_char) -> AeStatus {
    if out.is_null() {
        return AeStatus::NullPointer;
    }
    match CString::new(text) {
        Ok(c) => put(out, c.into_raw()),
        Err(_) => {
            out.write(ptr::null_mut());
            AeStatus::Internal
        }
    }
}
