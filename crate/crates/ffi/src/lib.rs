//! C interface. Graphs are opaque handles; results come back as JSON strings
//! owned by the caller and released with `sf_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sparsity_forge::decompose::verify_decomposition_report;
use sparsity_forge::graph::{parse_edgelist, parse_graph6};
use sparsity_forge::rational::parse_rational;
use sparsity_forge::sparsity::is_sparse;
use sparsity_forge::{decompose_ksw, partition_sparse, Error, Graph, PartitionResult, SparsityParams};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfStatus {
    /// The answer is yes (sparse, partitioned, decomposed).
    Ok = 0,
    /// A certified no; the JSON output holds the certificate.
    No = 1,
    NullArgument = 2,
    InvalidUtf8 = 3,
    Parse = 4,
    InvalidArgument = 5,
    TooLarge = 6,
    /// An internal invariant failed or the library panicked.
    Internal = 7,
}

/// Opaque graph handle.
pub struct SfGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(err: &Error) -> SfStatus {
    match err {
        Error::Parse { .. } => SfStatus::Parse,
        Error::TooLarge { .. } => SfStatus::TooLarge,
        Error::InvariantViolation(_) => SfStatus::Internal,
        Error::NotSparse(_) => SfStatus::No,
        _ => SfStatus::InvalidArgument,
    }
}

fn fail(err: Error) -> SfStatus {
    set_last_error(err.to_string());
    status_of(&err)
}

/// Runs `body`, turning panics into `Internal`.
fn guard(body: impl FnOnce() -> SfStatus) -> SfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("panic inside sparsity-forge");
            SfStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, SfStatus> {
    if text.is_null() {
        set_last_error("null string argument");
        return Err(SfStatus::NullArgument);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_last_error("argument is not valid UTF-8");
        SfStatus::InvalidUtf8
    })
}

unsafe fn write_json(out: *mut *mut c_char, value: serde_json::Result<serde_json::Value>) {
    let text = value.expect("results serialize").to_string();
    *out = CString::new(text).expect("JSON has no nul bytes").into_raw();
}

unsafe fn graph_out(result: sparsity_forge::Result<Graph>, out: *mut *mut SfGraph) -> SfStatus {
    match result {
        Ok(g) => {
            *out = Box::into_raw(Box::new(SfGraph(g)));
            SfStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses one graph6 record.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_from_graph6(text: *const c_char, out: *mut *mut SfGraph) -> SfStatus {
    guard(|| {
        if out.is_null() {
            return SfStatus::NullArgument;
        }
        match read_str(text) {
            Ok(s) => graph_out(parse_graph6(s.trim()), out),
            Err(status) => status,
        }
    })
}

/// Parses an edge list (one `u v` pair per line, optional `n = N` header).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_from_edgelist(text: *const c_char, out: *mut *mut SfGraph) -> SfStatus {
    guard(|| {
        if out.is_null() {
            return SfStatus::NullArgument;
        }
        match read_str(text) {
            Ok(s) => graph_out(parse_edgelist(s), out),
            Err(status) => status,
        }
    })
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `endpoints` (`2 * edge_count` entries).
///
/// # Safety
/// `endpoints` must point to `2 * edge_count` readable values (or be null
/// when `edge_count` is zero) and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_new(
    n: usize,
    endpoints: *const usize,
    edge_count: usize,
    out: *mut *mut SfGraph,
) -> SfStatus {
    guard(|| {
        if out.is_null() || (endpoints.is_null() && edge_count > 0) {
            set_last_error("null argument");
            return SfStatus::NullArgument;
        }
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(endpoints, 2 * edge_count)
        };
        graph_out(Graph::new(n, flat.chunks(2).map(|p| (p[0], p[1]))), out)
    })
}

/// # Safety
/// `g` must come from one of the constructors and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_vertex_count(g: *const SfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `g` must come from one of the constructors and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_edge_count(g: *const SfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from one of the constructors and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_free(g: *mut SfGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Releases a string returned through an `out` parameter. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Decides `(a, b)`-sparsity; `a` and `b` are rationals such as `"5/2"`.
/// Writes the certificate JSON and returns `Ok` or `No`.
///
/// # Safety
/// `g` must be a live handle, `a` and `b` nul-terminated strings, and
/// `json_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_check(
    g: *const SfGraph,
    a: *const c_char,
    b: *const c_char,
    json_out: *mut *mut c_char,
) -> SfStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), json_out.is_null()) else {
            set_last_error("null argument");
            return SfStatus::NullArgument;
        };
        let (a, b) = match (read_str(a), read_str(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let cert = parse_rational(a)
            .and_then(|a| Ok((a, parse_rational(b)?)))
            .and_then(|(a, b)| SparsityParams::new(a, b))
            .and_then(|p| is_sparse(&g.0, p));
        match cert {
            Ok(cert) => {
                write_json(json_out, serde_json::to_value(&cert));
                if cert.is_sparse() {
                    SfStatus::Ok
                } else {
                    SfStatus::No
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// Partitions into an `(a1, b1)`-sparse and an `(a2, b2)`-sparse part.
/// Writes the partition JSON (or, for a host that is not sparse enough, its
/// sparsity certificate) and returns `Ok` or `No`.
///
/// # Safety
/// `g` must be a live handle and `json_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_partition(
    g: *const SfGraph,
    a1: i64,
    b1: i64,
    a2: i64,
    b2: i64,
    json_out: *mut *mut c_char,
) -> SfStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), json_out.is_null()) else {
            set_last_error("null argument");
            return SfStatus::NullArgument;
        };
        match partition_sparse(&g.0, a1, b1, a2, b2) {
            Ok(result) => {
                write_json(json_out, serde_json::to_value(&result));
                match result {
                    PartitionResult::Success { .. } => SfStatus::Ok,
                    PartitionResult::Deficiency { .. } => SfStatus::No,
                }
            }
            Err(Error::NotSparse(cert)) => {
                write_json(json_out, serde_json::to_value(&*cert));
                set_last_error(Error::NotSparse(cert).to_string());
                SfStatus::No
            }
            Err(e) => fail(e),
        }
    })
}

/// Splits an `(m, 0)`-sparse graph into a forest and an `(m, 1-2m)`-sparse
/// graph, re-verifying the result. Writes `{m, case, F, Gprime, verified}`,
/// or the sparsity certificate with `No` when the graph is not
/// `(m, 0)`-sparse.
///
/// # Safety
/// `g` must be a live handle, `m` a nul-terminated string, and `json_out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_decompose(g: *const SfGraph, m: *const c_char, json_out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), json_out.is_null()) else {
            set_last_error("null argument");
            return SfStatus::NullArgument;
        };
        let m = match read_str(m) {
            Ok(m) => m,
            Err(s) => return s,
        };
        match parse_rational(m).and_then(|m| decompose_ksw(&g.0, m)) {
            Ok(d) => {
                let verified = verify_decomposition_report(&g.0, &d).valid;
                let mut value = serde_json::to_value(&d).expect("decomposition serializes");
                value["verified"] = verified.into();
                write_json(json_out, Ok(value));
                if verified {
                    SfStatus::Ok
                } else {
                    set_last_error("decomposition failed verification");
                    SfStatus::Internal
                }
            }
            Err(Error::NotSparse(cert)) => {
                write_json(json_out, serde_json::to_value(&*cert));
                set_last_error(Error::NotSparse(cert).to_string());
                SfStatus::No
            }
            Err(e) => fail(e),
        }
    })
}
