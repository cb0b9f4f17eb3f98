//! C ABI over `sfl-core`.
//!
//! Graphs are opaque `SflGraph` handles owned by the caller and released
//! with [`sfl_graph_free`]. Every fallible call returns an [`SflStatus`];
//! on failure [`sfl_last_error`] describes what went wrong on the calling
//! thread. Strings returned through `char **` are freed with
//! [`sfl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sfl_core::extremal::{threshold, Family, TheoremFamily};
use sfl_core::factors::{fractional_matching_number, has_k2_ck_factor, has_star_factor, max_deficiency};
use sfl_core::graph::{parse_graph, write_graph6, InputFormat};
use sfl_core::spectral::{spectral_radius, PowerOptions};
use sfl_core::{Error, Graph};

/// Opaque graph handle.
pub struct SflGraph(Graph);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SflStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    TooLarge = 4,
    Unconverged = 5,
    Numeric = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SflFamily {
    Main1 = 1,
    Main2 = 2,
    Main3 = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SflFactorKind {
    /// Every component is a star K_{1,j} with 1 <= j <= k.
    Star = 0,
    /// Every component is an edge or a cycle.
    K2Ck = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SflStatus {
    match e {
        Error::Parse(_) => SflStatus::Parse,
        Error::TooLarge { .. } => SflStatus::TooLarge,
        Error::Unconverged { .. } => SflStatus::Unconverged,
        Error::OrbitSpread { .. } | Error::ThresholdMismatch { .. } => SflStatus::Numeric,
        _ => SflStatus::InvalidArgument,
    }
}

struct Failure(SflStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SflStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SflStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SflStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            SflStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const SflGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.0).ok_or_else(|| null("graph"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null("string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(SflStatus::Parse, "string is not valid UTF-8".into()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

fn family_of(f: SflFamily) -> Family {
    match f {
        SflFamily::Main1 => Family::Main1,
        SflFamily::Main2 => Family::Main2,
        SflFamily::Main3 => Family::Main3,
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next `sfl_*` call on the same thread.
#[no_mangle]
pub extern "C" fn sfl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sfl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sfl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph6 string.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfl_graph_from_graph6(text: *const c_char, out: *mut *mut SflGraph) -> SflStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let g = parse_graph(c_str(text)?, InputFormat::Graph6)?;
        *out = Box::into_raw(Box::new(SflGraph(g)));
        Ok(())
    })
}

/// Parses an edge list: a first line holding `n`, then one `u v` pair per line.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfl_graph_from_edge_list(text: *const c_char, out: *mut *mut SflGraph) -> SflStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let g = parse_graph(c_str(text)?, InputFormat::Edges)?;
        *out = Box::into_raw(Box::new(SflGraph(g)));
        Ok(())
    })
}

/// Builds a graph on `n` vertices from `m` pairs stored flat in `pairs`
/// (`2 * m` entries). `pairs` may be null when `m == 0`.
///
/// # Safety
/// `pairs` must point to `2 * m` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfl_graph_from_edges(
    n: usize,
    pairs: *const usize,
    m: usize,
    out: *mut *mut SflGraph,
) -> SflStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let flat: &[usize] = if m == 0 {
            &[]
        } else if pairs.is_null() {
            return Err(null("pairs"));
        } else {
            std::slice::from_raw_parts(pairs, 2 * m)
        };
        let edges: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let g = Graph::from_edges(n, &edges)?;
        *out = Box::into_raw(Box::new(SflGraph(g)));
        Ok(())
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sfl_graph_free(g: *mut SflGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sfl_graph_order(g: *const SflGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.n())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sfl_graph_edge_count(g: *const SflGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.edge_count())
}

/// Encodes the graph as graph6. Free the result with `sfl_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfl_graph_to_graph6(g: *const SflGraph, out: *mut *mut c_char) -> SflStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = into_c_string(write_graph6(graph_ref(g)?)?);
        Ok(())
    })
}

/// Spectral radius by power iteration. Pass `tol <= 0` or `max_iter == 0`
/// for the defaults. `residual` may be null.
///
/// # Safety
/// `g` must be a live handle; `rho` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfl_spectral_radius(
    g: *const SflGraph,
    tol: f64,
    max_iter: usize,
    rho: *mut f64,
    residual: *mut f64,
) -> SflStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let rho = out_ref(rho, "rho")?;
        let mut opts = PowerOptions::default();
        if tol > 0.0 {
            opts.tol = tol;
        }
        if max_iter > 0 {
            opts.max_iter = max_iter;
        }
        let r = spectral_radius(g, opts)?.into_converged()?;
        *rho = r.rho;
        if let Some(res) = residual.as_mut() {
            *res = r.residual;
        }
        Ok(())
    })
}

/// Twice the fractional matching number.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfl_fractional_matching_doubled(g: *const SflGraph, out: *mut usize) -> SflStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = fractional_matching_number(graph_ref(g)?)?.doubled;
        Ok(())
    })
}

/// `max_S (i(G−S) − c|S|)` over all vertex subsets (orders up to 24).
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfl_max_deficiency(g: *const SflGraph, c: usize, out: *mut i64) -> SflStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = max_deficiency(graph_ref(g)?, c)?.value;
        Ok(())
    })
}

fn decide(g: &Graph, kind: SflFactorKind, k: usize) -> Result<sfl_core::factors::FactorCertificate, Failure> {
    let cert = match kind {
        SflFactorKind::Star => has_star_factor(g, k)?,
        SflFactorKind::K2Ck => has_k2_ck_factor(g, k)?,
    };
    cert.validate(g)?;
    Ok(cert)
}

/// Decides whether a factor of the given kind exists.
///
/// # Safety
/// `g` must be a live handle; `exists` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfl_has_factor(
    g: *const SflGraph,
    kind: SflFactorKind,
    k: usize,
    exists: *mut bool,
) -> SflStatus {
    guard(|| {
        let exists = out_ref(exists, "exists")?;
        *exists = decide(graph_ref(g)?, kind, k)?.exists;
        Ok(())
    })
}

/// The validated factor certificate as JSON. Free with `sfl_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfl_factor_certificate_json(
    g: *const SflGraph,
    kind: SflFactorKind,
    k: usize,
    out: *mut *mut c_char,
) -> SflStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let cert = decide(graph_ref(g)?, kind, k)?;
        let json = serde_json::to_string(&cert).map_err(|e| Failure(SflStatus::Numeric, e.to_string()))?;
        *out = into_c_string(json);
        Ok(())
    })
}

/// The extremal graph of a theorem family.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfl_extremal_graph(
    family: SflFamily,
    n: usize,
    delta: usize,
    k: usize,
    out: *mut *mut SflGraph,
) -> SflStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let spec = TheoremFamily::new(family_of(family), n, delta, k)?.extremal_spec()?;
        *out = Box::into_raw(Box::new(SflGraph(spec.realize())));
        Ok(())
    })
}

/// Spectral threshold of a theorem family (the extremal graph's spectral
/// radius). `order_bound_holds` may be null.
///
/// # Safety
/// `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfl_threshold(
    family: SflFamily,
    n: usize,
    delta: usize,
    k: usize,
    value: *mut f64,
    order_bound_holds: *mut bool,
) -> SflStatus {
    guard(|| {
        let value = out_ref(value, "value")?;
        let t = threshold(&TheoremFamily::new(family_of(family), n, delta, k)?)?;
        *value = t.value;
        if let Some(b) = order_bound_holds.as_mut() {
            *b = t.order_bound_holds;
        }
        Ok(())
    })
}
