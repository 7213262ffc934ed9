//! C interface. Graphs are opaque handles; every call returns a `DemingStatus` and leaves
//! a message for `deming_last_error` on failure. Strings returned through out-parameters
//! belong to the caller and are released with `deming_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use deming::deming::decompose_any;
use deming::egervary::{is_egervary, EgervaryStatus};
use deming::harness::{analyze, AnalyzeOptions};
use deming::independence::alpha;
use deming::io::{parse_graph6, to_graph6};
use deming::ke::{is_ke, ke_certificate};
use deming::matching::{matching_number, maximum_matching};
use deming::{Budget, Error, Graph};

/// Opaque graph handle.
pub struct DemingGraph(Graph);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DemingStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    NotMatchable = 4,
    BudgetExceeded = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DemingEgervary {
    Egervary = 0,
    NotEgervary = 1,
    Undecided = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DemingStatus {
    match e {
        Error::Parse { .. } => DemingStatus::ParseError,
        Error::NotMatchable | Error::NotPerfectMatching => DemingStatus::NotMatchable,
        Error::BudgetExceeded => DemingStatus::BudgetExceeded,
        Error::Invariant(_) | Error::Io(_) => DemingStatus::Internal,
        _ => DemingStatus::InvalidArgument,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into a status and a last-error message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DemingStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DemingStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            DemingStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            DemingStatus::Internal
        }
    }
}

unsafe fn graph_ref<'a>(g: *const DemingGraph) -> Result<&'a Graph, Fail> {
    unsafe { g.as_ref() }.map(|g| &g.0).ok_or(Fail::Null("graph"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("output"));
    }
    unsafe { out.write(v) };
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Error::Invariant("interior nul in output".into()))?;
    unsafe { write(out, c.into_raw()) }
}

fn budget() -> Budget {
    Budget::from_env()
}

/// Message for the most recent failure on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn deming_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a graph on `n` vertices from `m` edges given as `2m` endpoint indices.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (or be null when `m == 0`); `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn deming_graph_new(
    n: usize,
    edges: *const u32,
    m: usize,
    out: *mut *mut DemingGraph,
) -> DemingStatus {
    guard(|| {
        let flat: &[u32] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(Fail::Null("edges"));
        } else {
            unsafe { std::slice::from_raw_parts(edges, 2 * m) }
        };
        let g = Graph::from_edges(n, flat.chunks(2).map(|c| (c[0] as usize, c[1] as usize)))?;
        unsafe { write(out, Box::into_raw(Box::new(DemingGraph(g)))) }
    })
}

/// Parses one graph6 string.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn deming_graph_from_graph6(text: *const c_char, out: *mut *mut DemingGraph) -> DemingStatus {
    guard(|| {
        if text.is_null() {
            return Err(Fail::Null("text"));
        }
        let s = unsafe { CStr::from_ptr(text) }
            .to_str()
            .map_err(|_| Error::InvalidArgument("graph6 text is not UTF-8".into()))?;
        let g = parse_graph6(s.trim())?;
        unsafe { write(out, Box::into_raw(Box::new(DemingGraph(g)))) }
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn deming_graph_free(g: *mut DemingGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Number of vertices; 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn deming_graph_order(g: *const DemingGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.0.n())
}

/// Number of edges; 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn deming_graph_size(g: *const DemingGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.0.m())
}

/// graph6 encoding.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn deming_graph_to_graph6(g: *const DemingGraph, out: *mut *mut c_char) -> DemingStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        unsafe { write_string(out, to_graph6(g)) }
    })
}

/// Independence number.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn deming_alpha(g: *const DemingGraph, out: *mut usize) -> DemingStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        let a = alpha(g, &budget())?;
        unsafe { write(out, a) }
    })
}

/// Matching number.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn deming_matching_number(g: *const DemingGraph, out: *mut usize) -> DemingStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        unsafe { write(out, matching_number(g)) }
    })
}

/// Whether α + ν = n.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn deming_is_ke(g: *const DemingGraph, out: *mut bool) -> DemingStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        unsafe { write(out, is_ke(g)) }
    })
}

/// Egerváry verdict of a matchable graph.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn deming_egervary(g: *const DemingGraph, out: *mut DemingEgervary) -> DemingStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        let v = match is_egervary(g, &budget())?.status {
            EgervaryStatus::Egervary => DemingEgervary::Egervary,
            EgervaryStatus::NotEgervary => DemingEgervary::NotEgervary,
            EgervaryStatus::Undecided => DemingEgervary::Undecided,
        };
        unsafe { write(out, v) }
    })
}

/// KE certificate of a matchable graph as JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn deming_ke_certificate_json(g: *const DemingGraph, out: *mut *mut c_char) -> DemingStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        let m = maximum_matching(g);
        if !m.is_perfect() {
            return Err(Error::NotMatchable.into());
        }
        let cert = ke_certificate(g, &m)?;
        unsafe { write_string(out, serde_json::to_string(&cert).expect("certificate serializes")) }
    })
}

/// Deming decomposition as JSON (of the Deming extension when `g` is unmatchable).
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn deming_decompose_json(g: *const DemingGraph, out: *mut *mut c_char) -> DemingStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        let (_, dec) = decompose_any(g)?;
        unsafe { write_string(out, serde_json::to_string(&dec).expect("decomposition serializes")) }
    })
}

/// Full analysis record as JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn deming_analyze_json(g: *const DemingGraph, out: *mut *mut c_char) -> DemingStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        let r = analyze(g, &AnalyzeOptions { budget: budget(), timings: false })?;
        unsafe { write_string(out, serde_json::to_string(&r).expect("record serializes")) }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn deming_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
