//! C ABI for the spin-core library.
//!
//! Conventions:
//! - Inputs and outputs are UTF-8 JSON strings in the schemas documented by
//!   `spin --help`.
//! - Every function returns a [`SpinStatus`]; results are written through
//!   out-pointers. On any non-OK status, call [`spin_last_error`] on the
//!   same thread for a human-readable message.
//! - Strings returned through out-pointers are owned by the caller and must
//!   be released with [`spin_string_free`]. Graph handles are opaque and
//!   released with [`spin_graph_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use spin_core::cli::{dispatch, Command, LocalCommand};
use spin_core::graph::StableGraph;

/// Result of every FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinStatus {
    /// Success.
    Ok = 0,
    /// Valid request, but the mathematics rejects it (precondition failure).
    DomainError = 1,
    /// Input failed to parse against the schema.
    MalformedInput = 2,
    /// A required pointer argument was null.
    NullPointer = 3,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Message for the most recent failure on this thread, or null. The pointer
/// is valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn spin_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|c| c.as_ptr())
            .unwrap_or(ptr::null())
    })
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, SpinStatus> {
    if s.is_null() {
        set_error("null input pointer");
        return Err(SpinStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("input is not valid UTF-8");
        SpinStatus::InvalidUtf8
    })
}

fn write_out(out: *mut *mut c_char, value: &serde_json::Value) -> SpinStatus {
    if out.is_null() {
        set_error("null output pointer");
        return SpinStatus::NullPointer;
    }
    let text = serde_json::to_string(value).expect("serializable");
    let c = CString::new(text).expect("JSON has no interior nul");
    unsafe { *out = c.into_raw() };
    SpinStatus::Ok
}

fn run(cmd: &Command, out: *mut *mut c_char) -> SpinStatus {
    match dispatch(cmd) {
        Ok(value) => write_out(out, &value),
        Err(e) => {
            set_error(
                e.payload["error"]["message"]
                    .as_str()
                    .unwrap_or("unknown error"),
            );
            if e.code == 2 {
                SpinStatus::MalformedInput
            } else {
                SpinStatus::DomainError
            }
        }
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn spin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Opaque handle to a parsed stable graph.
pub struct SpinGraph {
    inner: StableGraph,
}

/// Parse a graph from JSON. On success writes a new handle to `out`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spin_graph_from_json(
    json: *const c_char,
    out: *mut *mut SpinGraph,
) -> SpinStatus {
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    if out.is_null() {
        set_error("null output pointer");
        return SpinStatus::NullPointer;
    }
    match serde_json::from_str::<StableGraph>(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(SpinGraph { inner }));
            SpinStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            SpinStatus::MalformedInput
        }
    }
}

/// Release a graph handle.
///
/// # Safety
/// `g` must come from `spin_graph_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn spin_graph_free(g: *mut SpinGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

unsafe fn graph_json(g: *const SpinGraph) -> Result<String, SpinStatus> {
    if g.is_null() {
        set_error("null graph handle");
        return Err(SpinStatus::NullPointer);
    }
    Ok(serde_json::to_string(&(*g).inner).expect("serializable"))
}

/// Validate a graph; writes the validation report JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spin_graph_validate(
    g: *const SpinGraph,
    out: *mut *mut c_char,
) -> SpinStatus {
    let graph = match graph_json(g) {
        Ok(t) => t,
        Err(s) => return s,
    };
    run(&Command::Validate { graph }, out)
}

/// Enumerate all spin types; writes a JSON array.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spin_graph_enumerate(
    g: *const SpinGraph,
    out: *mut *mut c_char,
) -> SpinStatus {
    let graph = match graph_json(g) {
        Ok(t) => t,
        Err(s) => return s,
    };
    run(&Command::Enumerate { graph }, out)
}

unsafe fn opt_type(src: *const c_char) -> Result<Option<String>, SpinStatus> {
    if src.is_null() {
        Ok(None)
    } else {
        read_str(src).map(|s| Some(s.to_string()))
    }
}

/// Root counts per spin type. `type_json` may be null to cover all types.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spin_graph_count(
    g: *const SpinGraph,
    type_json: *const c_char,
    out: *mut *mut c_char,
) -> SpinStatus {
    let graph = match graph_json(g) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let spin_type = match opt_type(type_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    run(&Command::Count { graph, spin_type }, out)
}

/// Automorphism group orders. `type_json` may be null to cover all types.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spin_graph_aut(
    g: *const SpinGraph,
    type_json: *const c_char,
    out: *mut *mut c_char,
) -> SpinStatus {
    let graph = match graph_json(g) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let spin_type = match opt_type(type_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    run(&Command::Aut { graph, spin_type }, out)
}

/// Universal deformation presentations. `type_json` may be null.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spin_graph_deform(
    g: *const SpinGraph,
    type_json: *const c_char,
    out: *mut *mut c_char,
) -> SpinStatus {
    let graph = match graph_json(g) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let spin_type = match opt_type(type_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    run(&Command::Deform { graph, spin_type }, out)
}

/// Normalize one exceptional chain; writes `{"coeffs", "m", "degrees"}`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spin_chain_normalize(
    r: u32,
    n: u32,
    residue: u32,
    out: *mut *mut c_char,
) -> SpinStatus {
    run(&Command::Chain { r, n, residue }, out)
}

/// Limit spin type of a family given as JSON.
///
/// # Safety
/// `family_json` must be a valid string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spin_limit(
    family_json: *const c_char,
    out: *mut *mut c_char,
) -> SpinStatus {
    let family = match read_str(family_json) {
        Ok(t) => t.to_string(),
        Err(s) => return s,
    };
    run(&Command::Limit { family }, out)
}

/// Classify a local spin map bundle given as JSON.
///
/// # Safety
/// `bundle_json` must be a valid string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spin_local_classify(
    bundle_json: *const c_char,
    out: *mut *mut c_char,
) -> SpinStatus {
    let input = match read_str(bundle_json) {
        Ok(t) => t.to_string(),
        Err(s) => return s,
    };
    run(
        &Command::Local {
            command: LocalCommand::Classify { input },
        },
        out,
    )
}

/// Decide isomorphism of two local modules given as JSON.
///
/// # Safety
/// `bundle_json` must be a valid string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spin_local_isom(
    bundle_json: *const c_char,
    out: *mut *mut c_char,
) -> SpinStatus {
    let input = match read_str(bundle_json) {
        Ok(t) => t.to_string(),
        Err(s) => return s,
    };
    run(
        &Command::Local {
            command: LocalCommand::Isom { input },
        },
        out,
    )
}
