//! C ABI over `biclique-core`.
//!
//! Graphs and biclique systems cross the boundary as opaque heap handles
//! created by the `*_parse` functions and released with the matching
//! `*_free`. Every fallible call returns a [`BqStatus`]; on failure
//! [`bq_last_error`] describes the most recent error on the calling thread.
//! Panics are caught and reported as `BQ_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use biclique_core::format::{parse_graph, parse_system, write_graph, write_system};
use biclique_core::{
    chromatic_number, colors_bound, derandomized_extract, independence_number, invert_bound, min_biclique_partition,
    min_cover_weight, mv_color, verify_proper, BicliqueSystem, Graph, OracleError, OracleLimits,
};
use num_traits::ToPrimitive;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Resource = 5,
    BufferTooSmall = 6,
    Overflow = 7,
    Panic = 8,
}

/// Opaque graph handle.
pub struct BqGraph(Graph);

/// Opaque biclique system handle.
pub struct BqSystem(BicliqueSystem);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

type Failure = (BqStatus, String);

fn fail(status: BqStatus, msg: impl Into<String>) -> Failure {
    (status, msg.into())
}

fn call(f: impl FnOnce() -> Result<(), Failure>) -> BqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BqStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside biclique library");
            BqStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: the caller passes either null or a live handle from this library.
    unsafe { p.as_ref() }.ok_or_else(|| fail(BqStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(BqStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: non-null and, per the API contract, valid for writes.
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn read_text<'a>(text: *const c_char) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(fail(BqStatus::NullPointer, "text is null"));
    }
    // SAFETY: the caller passes a NUL-terminated string.
    unsafe { CStr::from_ptr(text) }
        .to_str()
        .map_err(|_| fail(BqStatus::InvalidUtf8, "text is not UTF-8"))
}

fn oracle_failure(e: OracleError) -> Failure {
    fail(BqStatus::Resource, e.to_string())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses the graph text format (`n <count>`, `e <u> <v>` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_graph_parse(text: *const c_char, out: *mut *mut BqGraph) -> BqStatus {
    call(|| {
        let text = unsafe { read_text(text) }?;
        let g = parse_graph(text).map_err(|e| fail(BqStatus::Parse, e.to_string()))?;
        unsafe { write_out(out, Box::into_raw(Box::new(BqGraph(g))), "out") }
    })
}

/// # Safety
/// `graph` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bq_graph_free(graph: *mut BqGraph) {
    if !graph.is_null() {
        // SAFETY: created by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// # Safety
/// `graph` must be a live handle; `n` and `edges` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_graph_size(graph: *const BqGraph, n: *mut usize, edges: *mut usize) -> BqStatus {
    call(|| {
        let g = unsafe { borrow(graph, "graph") }?;
        unsafe { write_out(n, g.0.n(), "n") }?;
        unsafe { write_out(edges, g.0.edge_count(), "edges") }
    })
}

/// Parses the biclique system text format (`n <count>`, `b <left> | <right>` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_system_parse(text: *const c_char, out: *mut *mut BqSystem) -> BqStatus {
    call(|| {
        let text = unsafe { read_text(text) }?;
        let s = parse_system(text).map_err(|e| fail(BqStatus::Parse, e.to_string()))?;
        unsafe { write_out(out, Box::into_raw(Box::new(BqSystem(s))), "out") }
    })
}

/// # Safety
/// `system` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bq_system_free(system: *mut BqSystem) {
    if !system.is_null() {
        // SAFETY: created by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(system) });
    }
}

/// Number of bicliques.
///
/// # Safety
/// `system` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_system_len(system: *const BqSystem, out: *mut usize) -> BqStatus {
    call(|| {
        let s = unsafe { borrow(system, "system") }?;
        unsafe { write_out(out, s.0.len(), "out") }
    })
}

/// Union graph of the system as a new handle.
///
/// # Safety
/// `system` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_system_union_graph(system: *const BqSystem, out: *mut *mut BqGraph) -> BqStatus {
    call(|| {
        let s = unsafe { borrow(system, "system") }?;
        unsafe { write_out(out, Box::into_raw(Box::new(BqGraph(s.0.union_graph()))), "out") }
    })
}

/// # Safety
/// `system` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_system_is_partition(system: *const BqSystem, out: *mut bool) -> BqStatus {
    call(|| {
        let s = unsafe { borrow(system, "system") }?;
        unsafe { write_out(out, s.0.validate_partition().is_partition, "out") }
    })
}

/// # Safety
/// Both handles must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_system_covers(system: *const BqSystem, graph: *const BqGraph, out: *mut bool) -> BqStatus {
    call(|| {
        let s = unsafe { borrow(system, "system") }?;
        let g = unsafe { borrow(graph, "graph") }?;
        let r =
            s.0.validate_cover(&g.0)
                .map_err(|e| fail(BqStatus::Validation, e.to_string()))?;
        unsafe { write_out(out, r.is_cover, "out") }
    })
}

/// Runs the staged coloring. Fails with `BQ_STATUS_VALIDATION` when the
/// bicliques are not edge-disjoint.
///
/// # Safety
/// `system` must be a live handle; outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_system_color(
    system: *const BqSystem,
    distinct_colors: *mut usize,
    proper: *mut bool,
) -> BqStatus {
    call(|| {
        let s = unsafe { borrow(system, "system") }?;
        let run = mv_color(&s.0).map_err(|e| fail(BqStatus::Validation, e.to_string()))?;
        let report =
            verify_proper(&s.0.union_graph(), &run.coloring).map_err(|e| fail(BqStatus::Validation, e.to_string()))?;
        unsafe { write_out(distinct_colors, run.coloring.distinct_colors(), "distinct_colors") }?;
        unsafe { write_out(proper, report.proper, "proper") }
    })
}

/// Derandomized independent set; survivors are written ascending into
/// `buf`. `len` always receives the survivor count; if it exceeds
/// `capacity` the call returns `BQ_STATUS_BUFFER_TOO_SMALL` and writes
/// nothing to `buf`.
///
/// # Safety
/// `system` must be a live handle; `buf` valid for `capacity` writes (may be
/// NULL when `capacity` is 0); `len` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_system_extract(
    system: *const BqSystem,
    buf: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> BqStatus {
    call(|| {
        let s = unsafe { borrow(system, "system") }?;
        let r = derandomized_extract(&s.0).map_err(|e| fail(BqStatus::Resource, e.to_string()))?;
        let survivors = r.survivors.to_vec();
        unsafe { write_out(len, survivors.len(), "len") }?;
        if survivors.len() > capacity {
            return Err(fail(
                BqStatus::BufferTooSmall,
                format!("need room for {} vertices", survivors.len()),
            ));
        }
        if !survivors.is_empty() {
            if buf.is_null() {
                return Err(fail(BqStatus::NullPointer, "buf is null"));
            }
            // SAFETY: buf holds at least `capacity >= survivors.len()` slots.
            unsafe { ptr::copy_nonoverlapping(survivors.as_ptr(), buf, survivors.len()) };
        }
        Ok(())
    })
}

/// Which exact quantity [`bq_graph_oracle`] computes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BqOracle {
    ChromaticNumber = 0,
    IndependenceNumber = 1,
    MinBicliquePartition = 2,
    MinCoverWeight = 3,
}

/// Runs an exact oracle with default limits, overriding the time budget
/// when `time_budget_secs > 0`.
///
/// # Safety
/// `graph` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_graph_oracle(
    graph: *const BqGraph,
    oracle: BqOracle,
    time_budget_secs: f64,
    out: *mut usize,
) -> BqStatus {
    call(|| {
        let g = unsafe { borrow(graph, "graph") }?;
        let mut limits = OracleLimits::default();
        if time_budget_secs > 0.0 && time_budget_secs.is_finite() {
            limits.time_budget = std::time::Duration::from_secs_f64(time_budget_secs);
        }
        let value = match oracle {
            BqOracle::ChromaticNumber => chromatic_number(&g.0, &limits),
            BqOracle::IndependenceNumber => independence_number(&g.0, &limits),
            BqOracle::MinBicliquePartition => min_biclique_partition(&g.0, &limits).map(|s| s.value),
            BqOracle::MinCoverWeight => min_cover_weight(&g.0, &limits).map(|s| s.value),
        }
        .map_err(oracle_failure)?;
        unsafe { write_out(out, value, "out") }
    })
}

/// Color-count bound for `m` edge-disjoint bicliques; `BQ_STATUS_OVERFLOW`
/// if it does not fit in 64 bits.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_colors_bound(m: u64, out: *mut u64) -> BqStatus {
    call(|| {
        let v = colors_bound(m)
            .to_u64()
            .ok_or_else(|| fail(BqStatus::Overflow, format!("colors bound for m = {m} exceeds 64 bits")))?;
        unsafe { write_out(out, v, "out") }
    })
}

/// Smallest `m >= 1` whose color-count bound reaches `k`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_invert_bound(k: u64, out: *mut u64) -> BqStatus {
    call(|| unsafe { write_out(out, invert_bound(k), "out") })
}

/// Serializes a graph; release the result with [`bq_string_free`].
///
/// # Safety
/// `graph` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_graph_write(graph: *const BqGraph, out: *mut *mut c_char) -> BqStatus {
    call(|| {
        let g = unsafe { borrow(graph, "graph") }?;
        let s = CString::new(write_graph(&g.0)).expect("no NUL in output");
        unsafe { write_out(out, s.into_raw(), "out") }
    })
}

/// Serializes a system; release the result with [`bq_string_free`].
///
/// # Safety
/// `system` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bq_system_write(system: *const BqSystem, out: *mut *mut c_char) -> BqStatus {
    call(|| {
        let s = unsafe { borrow(system, "system") }?;
        let text = CString::new(write_system(&s.0)).expect("no NUL in output");
        unsafe { write_out(out, text.into_raw(), "out") }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bq_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}
