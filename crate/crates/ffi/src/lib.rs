//! C interface to `seriation`.
//!
//! Graphs and orderings are opaque handles created and released through this
//! interface. Every function returns a [`SeriationStatus`]; on failure a
//! description is available from [`seriation_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use seriation::eval::ordering_error;
use seriation::graphon::{sample_graph, GraphonSpec};
use seriation::refine::{iterative_estimate, IterativeOptions, MainEstimateHook};
use seriation::sketch::{desk_default_params, main_estimate};
use seriation::{Error, Graph, Ordering};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriationStatus {
    Ok = 0,
    /// Invalid argument or parameter.
    Invalid = 2,
    /// Malformed input text or an I/O failure.
    Parse = 3,
    /// Too few subsamples were recognised within the attempt budget.
    BudgetExhausted = 4,
    NullPointer = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

/// Opaque graph handle.
pub struct SeriationGraph(Graph);

/// Opaque ordering handle.
pub struct SeriationOrdering(Ordering);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SeriationStatus {
    match e.exit_code() {
        3 => SeriationStatus::Parse,
        4 => SeriationStatus::BudgetExhausted,
        _ => SeriationStatus::Invalid,
    }
}

fn guard(f: impl FnOnce() -> Result<(), SeriationStatus>) -> SeriationStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SeriationStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            SeriationStatus::Panic
        }
    }
}

fn check<T>(r: seriation::Result<T>) -> Result<T, SeriationStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null() -> SeriationStatus {
    set_error("null pointer argument".into());
    SeriationStatus::NullPointer
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn seriation_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a graph from `m` edges `(us[k], vs[k])`.
///
/// # Safety
/// `us` and `vs` must point to `m` readable elements (may be NULL when
/// `m == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seriation_graph_from_edges(
    n: usize,
    us: *const usize,
    vs: *const usize,
    m: usize,
    out: *mut *mut SeriationGraph,
) -> SeriationStatus {
    guard(|| {
        if out.is_null() || (m > 0 && (us.is_null() || vs.is_null())) {
            return Err(null());
        }
        let (us, vs) = if m == 0 {
            (&[][..], &[][..])
        } else {
            (
                std::slice::from_raw_parts(us, m),
                std::slice::from_raw_parts(vs, m),
            )
        };
        let g = check(Graph::from_edges(
            n,
            us.iter().copied().zip(vs.iter().copied()),
        ))?;
        *out = Box::into_raw(Box::new(SeriationGraph(g)));
        Ok(())
    })
}

/// Samples a graph on `n` vertices from a graphon description such as
/// `"step:p=0.8,q=0.1,d=0.2"` or its JSON form. When `latents` is not NULL it
/// receives the `n` latent positions.
///
/// # Safety
/// `graphon` must be a NUL-terminated string; `latents` NULL or writable for
/// `n` doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn seriation_graph_sample(
    graphon: *const c_char,
    n: usize,
    seed: u64,
    latents: *mut f64,
    out: *mut *mut SeriationGraph,
) -> SeriationStatus {
    guard(|| {
        if graphon.is_null() || out.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(graphon).to_str().map_err(|_| {
            set_error("graphon description is not UTF-8".into());
            SeriationStatus::Parse
        })?;
        let spec: GraphonSpec = check(text.parse())?;
        let s = check(sample_graph(&spec, n, seed))?;
        if !latents.is_null() {
            let lat = s.latents.as_deref().unwrap_or_default();
            std::slice::from_raw_parts_mut(latents, n).copy_from_slice(lat);
        }
        *out = Box::into_raw(Box::new(SeriationGraph(s.graph)));
        Ok(())
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn seriation_graph_free(g: *mut SeriationGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle and `n` writable.
#[no_mangle]
pub unsafe extern "C" fn seriation_graph_size(
    g: *const SeriationGraph,
    n: *mut usize,
    edges: *mut usize,
) -> SeriationStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            return Err(null());
        };
        if n.is_null() {
            return Err(null());
        }
        *n = g.0.n();
        if !edges.is_null() {
            *edges = g.0.edge_count();
        }
        Ok(())
    })
}

/// Coarse ordering with the default desk-scale parameters.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn seriation_main_estimate(
    g: *const SeriationGraph,
    alpha: f64,
    seed: u64,
    out: *mut *mut SeriationOrdering,
) -> SeriationStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            return Err(null());
        };
        if out.is_null() {
            return Err(null());
        }
        let sigma = check(main_estimate(
            &g.0,
            alpha,
            &desk_default_params(g.0.n()),
            seed,
        ))?;
        *out = Box::into_raw(Box::new(SeriationOrdering(sigma)));
        Ok(())
    })
}

/// Coarse ordering on a sample followed by refinement to all vertices.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn seriation_iterative_estimate(
    g: *const SeriationGraph,
    alpha: f64,
    epsilon: f64,
    seed: u64,
    out: *mut *mut SeriationOrdering,
) -> SeriationStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            return Err(null());
        };
        if out.is_null() {
            return Err(null());
        }
        let hook = MainEstimateHook { alpha };
        let r = check(iterative_estimate(
            &g.0,
            epsilon,
            &hook,
            seed,
            IterativeOptions::default(),
        ))?;
        *out = Box::into_raw(Box::new(SeriationOrdering(r.ordering)));
        Ok(())
    })
}

/// Copies the 1-based rank of each vertex into `ranks` (length `len`, which
/// must equal the ordering size).
///
/// # Safety
/// `o` must be a live ordering handle; `ranks` writable for `len` elements.
#[no_mangle]
pub unsafe extern "C" fn seriation_ordering_ranks(
    o: *const SeriationOrdering,
    ranks: *mut usize,
    len: usize,
) -> SeriationStatus {
    guard(|| {
        let Some(o) = o.as_ref() else {
            return Err(null());
        };
        if ranks.is_null() && len > 0 {
            return Err(null());
        }
        if len != o.0.n() {
            return check(Err(Error::SizeMismatch {
                expected: o.0.n(),
                got: len,
            }));
        }
        if len > 0 {
            std::slice::from_raw_parts_mut(ranks, len).copy_from_slice(o.0.ranks());
        }
        Ok(())
    })
}

/// # Safety
/// `o` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn seriation_ordering_free(o: *mut SeriationOrdering) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// Ordering error of 1-based `ranks` against `latents`, both of length `n`,
/// minimised over the latent order and its reversal.
///
/// # Safety
/// `ranks` and `latents` readable for `n` elements; `error` writable.
#[no_mangle]
pub unsafe extern "C" fn seriation_ordering_error(
    ranks: *const usize,
    latents: *const f64,
    n: usize,
    error: *mut usize,
) -> SeriationStatus {
    guard(|| {
        if error.is_null() || (n > 0 && (ranks.is_null() || latents.is_null())) {
            return Err(null());
        }
        let (ranks, latents) = if n == 0 {
            (&[][..], &[][..])
        } else {
            (
                std::slice::from_raw_parts(ranks, n),
                std::slice::from_raw_parts(latents, n),
            )
        };
        let sigma = check(Ordering::from_ranks(ranks.to_vec()))?;
        *error = check(ordering_error(&sigma, latents))?.error_d;
        Ok(())
    })
}
