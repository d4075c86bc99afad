//! C ABI over the `entcone` toolkit.
//!
//! Objects are opaque handles created by `*_parse`, `*_new` or computing
//! functions and released with the matching `*_free`. Every fallible call
//! returns an [`EntconeStatus`]; on failure a description is available from
//! [`entcone_last_error`] on the same thread. Strings returned through `out`
//! parameters are owned by the caller and released with
//! [`entcone_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use entcone::coarse::{parse_map, pullback};
use entcone::cone::{double_description, is_extreme_ray, orbit_count, HRepCone, VRepCone, Verdict};
use entcone::hypergraph::{fixture, HypergraphModel};
use entcone::ineq::{family_instances, Family};
use entcone::reproduce::{run, Scenario};
use entcone::states::{state_vector, KindName, StateSpec};
use entcone::{EntropyVector, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntconeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    DimensionMismatch = 5,
    NonPointedCone = 6,
    ModelInvalid = 7,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntconeVerdict {
    Extreme = 0,
    NotExtreme = 1,
    Outside = 2,
}

pub struct EntconeVector(EntropyVector);
pub struct EntconeModel(HypergraphModel);
pub struct EntconeHRep(HRepCone);
pub struct EntconeVRep(VRepCone);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> EntconeStatus {
    match e {
        Error::Parse { .. } => EntconeStatus::Parse,
        Error::DimensionMismatch { .. } => EntconeStatus::DimensionMismatch,
        Error::NonPointedCone(_) => EntconeStatus::NonPointedCone,
        Error::ModelInvalid(_) => EntconeStatus::ModelInvalid,
        _ => EntconeStatus::InvalidArgument,
    }
}

struct Fail(EntconeStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> EntconeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EntconeStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            EntconeStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(EntconeStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(EntconeStatus::InvalidUtf8, e.to_string()))
}

unsafe fn obj<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(EntconeStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(EntconeStatus::NullPointer, "null out pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(EntconeStatus::NullPointer, "null out pointer".into()));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn entcone_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn entcone_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the entropy-vector text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcone_vector_parse(
    text: *const c_char,
    out: *mut *mut EntconeVector,
) -> EntconeStatus {
    guard(|| put(out, EntconeVector(EntropyVector::parse_text(str_arg(text)?)?)))
}

/// # Safety
/// `v` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn entcone_vector_free(v: *mut EntconeVector) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Party count `N`, or 0 for NULL.
///
/// # Safety
/// `v` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn entcone_vector_n(v: *const EntconeVector) -> usize {
    v.as_ref().map_or(0, |v| v.0.n())
}

/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcone_vector_to_text(
    v: *const EntconeVector,
    out: *mut *mut c_char,
) -> EntconeStatus {
    guard(|| put_string(out, obj(v)?.0.to_text()))
}

/// Entropy vector of `bell`, `ghz` or `ame4` over `parties[0..len]`.
///
/// # Safety
/// `kind` must be a NUL-terminated string; `parties` must point to `len`
/// values (or be NULL with `len == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcone_state_vector(
    kind: *const c_char,
    parties: *const usize,
    len: usize,
    n: usize,
    out: *mut *mut EntconeVector,
) -> EntconeStatus {
    guard(|| {
        let kind: KindName = str_arg(kind)?.parse()?;
        let ps: &[usize] = if len == 0 {
            &[]
        } else if parties.is_null() {
            return Err(Fail(EntconeStatus::NullPointer, "null parties".into()));
        } else {
            std::slice::from_raw_parts(parties, len)
        };
        let spec = StateSpec::from_parts(kind, n, ps)?;
        put(out, EntconeVector(state_vector(&spec)))
    })
}

/// Parses the JSON model format.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcone_model_parse(
    json: *const c_char,
    out: *mut *mut EntconeModel,
) -> EntconeStatus {
    guard(|| put(out, EntconeModel(HypergraphModel::from_json(str_arg(json)?)?)))
}

/// Built-in model `fig1`, `fig2` or `fig3`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcone_model_fixture(
    name: *const c_char,
    out: *mut *mut EntconeModel,
) -> EntconeStatus {
    guard(|| put(out, EntconeModel(fixture(str_arg(name)?.parse()?))))
}

/// # Safety
/// `m` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn entcone_model_free(m: *mut EntconeModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcone_model_entropy_vector(
    m: *const EntconeModel,
    out: *mut *mut EntconeVector,
) -> EntconeStatus {
    guard(|| put(out, EntconeVector(obj(m)?.0.entropy_vector()?)))
}

/// H-representation of `sa`, `ssa`, `ingleton`, `poly` or `lambda4`.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcone_hrep_family(
    family: *const c_char,
    n: usize,
    out: *mut *mut EntconeHRep,
) -> EntconeStatus {
    guard(|| {
        let f: Family = str_arg(family)?.parse()?;
        put(out, EntconeHRep(HRepCone::from_instances(&family_instances(f, n)?)))
    })
}

/// # Safety
/// `h` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn entcone_hrep_free(h: *mut EntconeHRep) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of inequalities, or 0 for NULL.
///
/// # Safety
/// `h` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn entcone_hrep_len(h: *const EntconeHRep) -> usize {
    h.as_ref().map_or(0, |h| h.0.functionals().len())
}

/// Extreme rays of the cone.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcone_double_description(
    h: *const EntconeHRep,
    out: *mut *mut EntconeVRep,
) -> EntconeStatus {
    guard(|| put(out, EntconeVRep(double_description(&obj(h)?.0)?)))
}

/// Parses the V-representation text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcone_vrep_parse(
    text: *const c_char,
    out: *mut *mut EntconeVRep,
) -> EntconeStatus {
    guard(|| put(out, EntconeVRep(VRepCone::parse_text(str_arg(text)?)?)))
}

/// # Safety
/// `v` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn entcone_vrep_free(v: *mut EntconeVRep) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Number of rays, or 0 for NULL.
///
/// # Safety
/// `v` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn entcone_vrep_len(v: *const EntconeVRep) -> usize {
    v.as_ref().map_or(0, |v| v.0.len())
}

/// Number of orbits under party permutations, or 0 for NULL.
///
/// # Safety
/// `v` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn entcone_vrep_orbit_count(v: *const EntconeVRep) -> usize {
    v.as_ref().map_or(0, |v| orbit_count(&v.0))
}

/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcone_vrep_to_text(
    v: *const EntconeVRep,
    out: *mut *mut c_char,
) -> EntconeStatus {
    guard(|| put_string(out, obj(v)?.0.to_text()))
}

/// Extremality of `v` in the cone `h`. `rank` receives the rank of the
/// saturated inequalities; `certificate_json`, if not NULL, receives the
/// full certificate.
///
/// # Safety
/// `v` and `h` must be live handles; `verdict` and `rank` must be writable;
/// `certificate_json` must be writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn entcone_is_extreme_ray(
    v: *const EntconeVector,
    h: *const EntconeHRep,
    verdict: *mut EntconeVerdict,
    rank: *mut usize,
    certificate_json: *mut *mut c_char,
) -> EntconeStatus {
    guard(|| {
        if verdict.is_null() || rank.is_null() {
            return Err(Fail(EntconeStatus::NullPointer, "null out pointer".into()));
        }
        let c = is_extreme_ray(&obj(v)?.0, &obj(h)?.0)?;
        *verdict = match c.verdict {
            Verdict::Extreme => EntconeVerdict::Extreme,
            Verdict::NotExtreme => EntconeVerdict::NotExtreme,
            Verdict::Outside => EntconeVerdict::Outside,
        };
        *rank = c.rank;
        if !certificate_json.is_null() {
            put_string(certificate_json, serde_json::to_string(&c).expect("serializable"))?;
        }
        Ok(())
    })
}

/// Pulls `v` back along the comma-separated map `map` onto `n_to` parties.
///
/// # Safety
/// `map` must be a NUL-terminated string; `v` a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn entcone_pullback(
    map: *const c_char,
    v: *const EntconeVector,
    n_to: usize,
    out: *mut *mut EntconeVector,
) -> EntconeStatus {
    guard(|| {
        let v = &obj(v)?.0;
        let f = parse_map(str_arg(map)?, v.n(), n_to)?;
        put(out, EntconeVector(pullback(&f, v)?))
    })
}

/// Runs `n2`, `n3-chain` or `n4-lambda`. `passed` receives the overall
/// verdict and `report_json`, if not NULL, the JSON report.
///
/// # Safety
/// `scenario` must be a NUL-terminated string; `passed` must be writable;
/// `report_json` must be writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn entcone_reproduce(
    scenario: *const c_char,
    long: bool,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> EntconeStatus {
    guard(|| {
        if passed.is_null() {
            return Err(Fail(EntconeStatus::NullPointer, "null out pointer".into()));
        }
        let s: Scenario = str_arg(scenario)?.parse()?;
        let report = run(s, long);
        *passed = report.passed();
        if !report_json.is_null() {
            put_string(report_json, report.to_json())?;
        }
        Ok(())
    })
}
