//! C ABI over `rc-insertion`.
//!
//! Graphs and tableaux cross the boundary as opaque handles created by the
//! `*_from_json` constructors and released with the matching `*_free`.
//! Strings returned through `char **` outputs are owned by the caller and
//! must be released with [`rc_string_free`]. Every fallible function returns
//! an [`RcStatus`]; on failure [`rc_last_error`] describes the problem.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rc_insertion::insertion::insert;
use rc_insertion::inverse::inverse_insert;
use rc_insertion::lr::{default_ambient, verify_triple};
use rc_insertion::tableau::{format_word, TranspositionTableau};
use rc_insertion::{Error, ErrorClass, Graph, Partition, Permutation};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    /// Unparsable or inconsistent input.
    Malformed = 1,
    /// Valid input outside what the operation accepts.
    Precondition = 2,
    /// A checked invariant failed; this is a bug.
    Internal = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// The library panicked.
    Panic = 5,
}

/// An rc-graph or any finite set of crossings.
pub struct RcGraph(Graph);

/// A tableau of transpositions.
pub struct RcTableau(TranspositionTableau);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Text(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> RcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => RcStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            match e.class() {
                ErrorClass::Input => RcStatus::Malformed,
                ErrorClass::Precondition => RcStatus::Precondition,
                ErrorClass::Internal => RcStatus::Internal,
            }
        }
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("`{name}` is null"));
            RcStatus::NullPointer
        }
        Ok(Err(Failure::Text(msg))) => {
            set_error(msg);
            RcStatus::Malformed
        }
        Err(_) => {
            set_error("internal panic".into());
            RcStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn out_ptr<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(name))
}

unsafe fn read_str<'a>(p: *const c_char, name: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::Text(format!("`{name}` is not UTF-8: {e}")))
}

unsafe fn read_slice<'a>(p: *const usize, len: usize, name: &'static str) -> Result<&'a [usize], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Text(e.to_string()))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

fn to_json<T: serde::Serialize>(value: &T) -> *mut c_char {
    to_c_string(serde_json::to_string(value).expect("plain data"))
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"crossings": [[row, col], ...]}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_graph_from_json(json: *const c_char, out: *mut *mut RcGraph) -> RcStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let graph: Graph = parse_json(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(RcGraph(graph)));
        Ok(())
    })
}

/// Serializes a graph as JSON.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_graph_to_json(graph: *const RcGraph, out: *mut *mut c_char) -> RcStatus {
    guard(|| {
        let graph = borrow(graph, "graph")?;
        *out_ptr(out, "out")? = to_json(&graph.0);
        Ok(())
    })
}

/// ASCII picture of a graph.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_graph_render(graph: *const RcGraph, out: *mut *mut c_char) -> RcStatus {
    guard(|| {
        let graph = borrow(graph, "graph")?;
        *out_ptr(out, "out")? = to_c_string(graph.0.render());
        Ok(())
    })
}

/// Number of crossings; 0 for null.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rc_graph_len(graph: *const RcGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.len())
}

/// 1 if the graph is reduced, 0 if not or null.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rc_graph_is_reduced(graph: *const RcGraph) -> i32 {
    graph.as_ref().map_or(0, |g| i32::from(g.0.is_rcgraph()))
}

/// Writes the one-line notation of the graph's permutation into
/// `images[0..cap]` and its length into `len`. When `cap` is too small only
/// `len` is written and the call still succeeds; a null `images` with `cap`
/// 0 queries the length.
///
/// # Safety
/// `graph` must be a live handle, `images` writable for `cap` elements and
/// `len` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_graph_permutation(
    graph: *const RcGraph,
    images: *mut usize,
    cap: usize,
    len: *mut usize,
) -> RcStatus {
    guard(|| {
        let graph = borrow(graph, "graph")?;
        let w = graph.0.permutation().one_line(1);
        *out_ptr(len, "len")? = w.len();
        if cap >= w.len() && !w.is_empty() {
            if images.is_null() {
                return Err(Failure::Null("images"));
            }
            std::slice::from_raw_parts_mut(images, w.len()).copy_from_slice(&w);
        }
        Ok(())
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `graph` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rc_graph_free(graph: *mut RcGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Parses `{"shape": [...], "r": k, "entries": [[a, b], ..., null]}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_tableau_from_json(json: *const c_char, out: *mut *mut RcTableau) -> RcStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let t: TranspositionTableau = parse_json(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(RcTableau(t)));
        Ok(())
    })
}

/// Serializes a tableau as JSON.
///
/// # Safety
/// `tableau` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_tableau_to_json(tableau: *const RcTableau, out: *mut *mut c_char) -> RcStatus {
    guard(|| {
        let t = borrow(tableau, "tableau")?;
        *out_ptr(out, "out")? = to_json(&t.0);
        Ok(())
    })
}

/// The filled entries in box order, formatted as `(35)(36)(14)`.
///
/// # Safety
/// `tableau` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_tableau_word(tableau: *const RcTableau, out: *mut *mut c_char) -> RcStatus {
    guard(|| {
        let t = borrow(tableau, "tableau")?;
        *out_ptr(out, "out")? = to_c_string(format_word(&t.0.word()));
        Ok(())
    })
}

/// Releases a tableau. Null is ignored.
///
/// # Safety
/// `tableau` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rc_tableau_free(tableau: *mut RcTableau) {
    if !tableau.is_null() {
        drop(Box::from_raw(tableau));
    }
}

/// `U = R <- Y` and its tableau. On success the caller owns both outputs.
///
/// # Safety
/// `graph` and `y` must be live handles; `u_out` and `t_out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_insert(
    graph: *const RcGraph,
    y: *const RcGraph,
    r: usize,
    u_out: *mut *mut RcGraph,
    t_out: *mut *mut RcTableau,
) -> RcStatus {
    guard(|| {
        let graph = borrow(graph, "graph")?;
        let y = borrow(y, "y")?;
        let u_out = out_ptr(u_out, "u_out")?;
        let t_out = out_ptr(t_out, "t_out")?;
        let result = insert(&graph.0, &y.0, r)?;
        *u_out = Box::into_raw(Box::new(RcGraph(result.graph)));
        *t_out = Box::into_raw(Box::new(RcTableau(result.tableau)));
        Ok(())
    })
}

/// Recovers `(R, Y)` from `(U, T)`, where `w` is the permutation of `R` in
/// one-line notation. On success the caller owns both outputs.
///
/// # Safety
/// `u` and `t` must be live handles, `w` readable for `w_len` elements and
/// the outputs writable.
#[no_mangle]
pub unsafe extern "C" fn rc_inverse_insert(
    u: *const RcGraph,
    t: *const RcTableau,
    w: *const usize,
    w_len: usize,
    r: usize,
    r_out: *mut *mut RcGraph,
    y_out: *mut *mut RcGraph,
) -> RcStatus {
    guard(|| {
        let u = borrow(u, "u")?;
        let t = borrow(t, "t")?;
        let w = Permutation::new(read_slice(w, w_len, "w")?.to_vec())?;
        let r_out = out_ptr(r_out, "r_out")?;
        let y_out = out_ptr(y_out, "y_out")?;
        let result = inverse_insert(&u.0, &t.0, &w, r)?;
        *r_out = Box::into_raw(Box::new(RcGraph(result.graph)));
        *y_out = Box::into_raw(Box::new(RcGraph(result.y)));
        Ok(())
    })
}

/// Cross-checked coefficients `c^u_{w, v(λ, r)}` as a JSON report. `n` is
/// the ambient staircase size; 0 picks the default.
///
/// # Safety
/// `w` and `lambda` must be readable for their lengths and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_lr_coefficients(
    w: *const usize,
    w_len: usize,
    lambda: *const usize,
    lambda_len: usize,
    r: usize,
    n: usize,
    out: *mut *mut c_char,
) -> RcStatus {
    guard(|| {
        let w = Permutation::new(read_slice(w, w_len, "w")?.to_vec())?;
        let shape = Partition::new(read_slice(lambda, lambda_len, "lambda")?.to_vec())?;
        let out = out_ptr(out, "out")?;
        let n = if n == 0 { default_ambient(&w, &shape, r) } else { n };
        let report = verify_triple(&w, &shape, r, n)?;
        *out = to_json(&report);
        Ok(())
    })
}
