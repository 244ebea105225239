//! C ABI over `iasi-core`.
//!
//! Labeled graphs cross the boundary as opaque [`IasiLabeledGraph`] handles.
//! Every entry point returns an [`IasiStatus`]; on anything but
//! `IASI_STATUS_OK` a description is available from
//! [`iasi_last_error_message`] until the next call on the same thread.
//! Strings returned through out-pointers are freed with [`iasi_string_free`],
//! arrays with [`iasi_u64_array_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use iasi_core::construct::{
    construct_arbitrary, ConstructError, ConstructionParams, LabelSizes, MultiplierPolicy,
    OffsetPolicy,
};
use iasi_core::document::{parse_document, parse_graph, render_document, Metadata};
use iasi_core::sumset::{sumset, SetError};
use iasi_core::transform::{
    contract_edge, reduce_topologically, subdivide, to_line_graph, to_total_graph, TransformError,
};
use iasi_core::verify::{classify_arithmetic_with, verify_iasi, SemiReading};
use iasi_core::{Edge, IntegerSet, LabeledGraph, VertexId};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IasiStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON, schema violation or invalid graph.
    InvalidDocument = 3,
    InvalidArgument = 4,
    Overflow = 5,
    /// Two vertices or two edges would receive the same label.
    Collision = 6,
    /// The input labeling is not arithmetic.
    NotArithmetic = 7,
    /// The transformed labeling is an IASI but not arithmetic.
    NotPreserved = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IasiPolicy {
    Fixed = 0,
    Random = 1,
    Maximal = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IasiTransformOp {
    /// Needs both endpoint arguments.
    Contract = 0,
    /// Needs the vertex in the first argument.
    Reduce = 1,
    /// Needs both endpoint arguments.
    Subdivide = 2,
    Line = 3,
    Total = 4,
}

/// Opaque labeled graph.
pub struct IasiLabeledGraph(LabeledGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

type FfiResult<T> = Result<T, (IasiStatus, String)>;

fn fail<T>(status: IasiStatus, msg: impl ToString) -> FfiResult<T> {
    Err((status, msg.to_string()))
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> IasiStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IasiStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            IasiStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return fail(IasiStatus::NullArgument, format!("{name} is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(IasiStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn handle<'a>(g: *const IasiLabeledGraph) -> FfiResult<&'a LabeledGraph> {
    g.as_ref()
        .map(|h| &h.0)
        .ok_or((IasiStatus::NullArgument, "graph handle is null".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return fail(IasiStatus::NullArgument, "output pointer is null");
    }
    out.write(value);
    Ok(())
}

unsafe fn put_handle(out: *mut *mut IasiLabeledGraph, lg: LabeledGraph) -> FfiResult<()> {
    if out.is_null() {
        return fail(IasiStatus::NullArgument, "output pointer is null");
    }
    out.write(Box::into_raw(Box::new(IasiLabeledGraph(lg))));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).or_else(|e| fail(IasiStatus::InvalidArgument, e))?;
    put(out, c.into_raw())
}

unsafe fn u64_slice<'a>(p: *const u64, len: usize, name: &str) -> FfiResult<&'a [u64]> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return fail(IasiStatus::NullArgument, format!("{name} is null"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn set_error_status(e: &SetError) -> IasiStatus {
    match e {
        SetError::Overflow(..) => IasiStatus::Overflow,
        _ => IasiStatus::InvalidArgument,
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// owned by the library and valid until the next call.
#[no_mangle]
pub extern "C" fn iasi_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn iasi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `p` and `len` must come from one call of this library and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn iasi_u64_array_free(p: *mut u64, len: usize) {
    if !p.is_null() {
        drop(Vec::from_raw_parts(p, len, len));
    }
}

/// # Safety
/// `g` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn iasi_labeled_graph_free(g: *mut IasiLabeledGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Parses a labeling document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iasi_labeled_graph_from_json(
    json: *const c_char,
    out: *mut *mut IasiLabeledGraph,
) -> IasiStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let doc = parse_document(text).or_else(|e| fail(IasiStatus::InvalidDocument, e))?;
        put_handle(out, doc.labeled)
    })
}

/// Renders a labeling document (pretty JSON, trailing newline).
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iasi_labeled_graph_to_json(
    g: *const IasiLabeledGraph,
    out: *mut *mut c_char,
) -> IasiStatus {
    guard(|| {
        let lg = handle(g)?;
        put_string(out, render_document(lg, Metadata::default()))
    })
}

/// # Safety
/// `g` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn iasi_labeled_graph_size(
    g: *const IasiLabeledGraph,
    vertices: *mut usize,
    edges: *mut usize,
) -> IasiStatus {
    guard(|| {
        let lg = handle(g)?;
        put(vertices, lg.graph().vertex_count())?;
        put(edges, lg.graph().edge_count())
    })
}

/// Writes whether vertex labels and edge labels are each pairwise distinct.
///
/// # Safety
/// `g` must be a live handle; `is_iasi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iasi_verify(g: *const IasiLabeledGraph, is_iasi: *mut bool) -> IasiStatus {
    guard(|| {
        let lg = handle(g)?;
        put(is_iasi, verify_iasi(lg).is_iasi)
    })
}

/// Classification report as a JSON object.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iasi_classify_json(
    g: *const IasiLabeledGraph,
    strict_semi: bool,
    out: *mut *mut c_char,
) -> IasiStatus {
    guard(|| {
        let lg = handle(g)?;
        let reading = if strict_semi {
            SemiReading::Strict
        } else {
            SemiReading::Some
        };
        let report = classify_arithmetic_with(lg, reading);
        let text = serde_json::to_string(&report).or_else(|e| fail(IasiStatus::Panic, e))?;
        put_string(out, text)
    })
}

/// Sumset of two non-empty sets, given as arrays in any order. The result is
/// sorted ascending and freed with [`iasi_u64_array_free`].
///
/// # Safety
/// `a` and `b` must point to `a_len` and `b_len` readable values; the
/// out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn iasi_sumset(
    a: *const u64,
    a_len: usize,
    b: *const u64,
    b_len: usize,
    out: *mut *mut u64,
    out_len: *mut usize,
) -> IasiStatus {
    guard(|| {
        let a = IntegerSet::new(u64_slice(a, a_len, "a")?.to_vec());
        let b = IntegerSet::new(u64_slice(b, b_len, "b")?.to_vec());
        let s = sumset(&a, &b).or_else(|e| fail(set_error_status(&e), e))?;
        if out.is_null() || out_len.is_null() {
            return fail(IasiStatus::NullArgument, "output pointer is null");
        }
        let mut v = s.into_vec().into_boxed_slice();
        put(out_len, v.len())?;
        put(out, v.as_mut_ptr())?;
        std::mem::forget(v);
        Ok(())
    })
}

/// Constructs an arithmetic labeling of the graph in `graph_json` (either a
/// bare `{"vertices":..,"edges":..}` object or a document with a `graph` key).
///
/// # Safety
/// `graph_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iasi_construct(
    graph_json: *const c_char,
    base_difference: u64,
    min_size: usize,
    max_size: usize,
    policy: IasiPolicy,
    seed: u64,
    out: *mut *mut IasiLabeledGraph,
) -> IasiStatus {
    guard(|| {
        let graph = parse_graph(str_arg(graph_json, "graph_json")?)
            .or_else(|e| fail(IasiStatus::InvalidDocument, e))?;
        let params = ConstructionParams {
            base_difference,
            label_sizes: LabelSizes::Range {
                min: min_size,
                max: max_size,
            },
            multiplier_policy: match policy {
                IasiPolicy::Fixed => MultiplierPolicy::Fixed,
                IasiPolicy::Random => MultiplierPolicy::Random,
                IasiPolicy::Maximal => MultiplierPolicy::Maximal,
            },
            seed,
            offsets: OffsetPolicy::Auto,
        };
        let c = construct_arbitrary(&graph, &params).or_else(|e| {
            let status = match e {
                ConstructError::Overflow(_) => IasiStatus::Overflow,
                ConstructError::Collision(_) => IasiStatus::Collision,
                _ => IasiStatus::InvalidArgument,
            };
            fail(status, e)
        })?;
        put_handle(out, c.labeled)
    })
}

/// Applies a label-transferring transformation to an arithmetic labeling.
/// `first` and `second` name the edge endpoints for contraction and
/// subdivision; reduction reads the vertex from `first`; both are ignored
/// (and may be null) for the line and total graphs.
///
/// # Safety
/// `g` must be a live handle; the name arguments must be null or
/// NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iasi_transform(
    g: *const IasiLabeledGraph,
    op: IasiTransformOp,
    first: *const c_char,
    second: *const c_char,
    out: *mut *mut IasiLabeledGraph,
) -> IasiStatus {
    guard(|| {
        let lg = handle(g)?;
        let edge = || -> FfiResult<Edge> {
            Ok(Edge::new(
                str_arg(first, "first")?,
                str_arg(second, "second")?,
            ))
        };
        let result = match op {
            IasiTransformOp::Contract => contract_edge(lg, &edge()?),
            IasiTransformOp::Subdivide => subdivide(lg, &edge()?),
            IasiTransformOp::Reduce => {
                reduce_topologically(lg, &VertexId::from(str_arg(first, "first")?))
            }
            IasiTransformOp::Line => to_line_graph(lg),
            IasiTransformOp::Total => to_total_graph(lg),
        };
        let out_lg = result.or_else(|e| {
            let status = match e {
                TransformError::Collision(_) => IasiStatus::Collision,
                TransformError::InputNotArithmetic => IasiStatus::NotArithmetic,
                TransformError::NotPreserved(_) => IasiStatus::NotPreserved,
                _ => IasiStatus::InvalidArgument,
            };
            fail(status, e)
        })?;
        put_handle(out, out_lg)
    })
}
