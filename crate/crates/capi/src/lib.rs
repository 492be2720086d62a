//! C ABI over the graphon library.
//!
//! Conventions: kernels are opaque handles created and freed here; every
//! fallible call returns a [`GraphonStatus`] and writes results through out
//! pointers; strings returned by the library are freed with
//! [`graphon_string_free`]; the most recent error message per thread is
//! available from [`graphon_last_error_message`].
//!
//! The header `include/graphon.h` is generated from this file by cbindgen
//! at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use graphon::error::Error;
use graphon::homomorphism::{self, Motif};
use graphon::io::KernelFile;
use graphon::kernel::{StepGraphon, StepKernel};
use graphon::norms;
use graphon::verify;

/// Status code of every fallible call. Mirrors the CLI exit-code map where
/// a category exists there.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphonStatus {
    Ok = 0,
    /// A required pointer was null.
    NullArgument = 1,
    /// Input failed validation (asymmetry, bad weights, bad range, ...).
    Validation = 2,
    /// An iterative solver did not converge.
    NonConvergence = 3,
    /// The six-inequality check found a violated inequality.
    Falsified = 4,
    /// An enumeration budget or exact limit was exceeded.
    BudgetExceeded = 5,
    /// A string argument was not valid UTF-8.
    Utf8 = 6,
    /// JSON parsing or serialization failed.
    Json = 7,
    /// Internal panic; a bug, not a usage error.
    Internal = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> GraphonStatus {
    match err {
        Error::NonConvergence { .. } => GraphonStatus::NonConvergence,
        Error::BudgetExceeded { .. } | Error::ExactLimitExceeded { .. } => {
            GraphonStatus::BudgetExceeded
        }
        Error::Json { .. } => GraphonStatus::Json,
        _ => GraphonStatus::Validation,
    }
}

fn fail(err: &Error) -> GraphonStatus {
    set_error(&err.to_string());
    status_of(err)
}

/// Run a fallible body, translating errors and panics into status codes.
fn guarded(body: impl FnOnce() -> Result<GraphonStatus, Error>) -> GraphonStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(err)) => fail(&err),
        Err(_) => {
            set_error("internal panic");
            GraphonStatus::Internal
        }
    }
}

/// Opaque step-kernel handle.
pub struct GraphonKernel(StepKernel);

impl GraphonKernel {
    fn inner(&self) -> &StepKernel {
        &self.0
    }
}

unsafe fn kernel_ref<'a>(k: *const GraphonKernel) -> Option<&'a StepKernel> {
    k.as_ref().map(GraphonKernel::inner)
}

fn graphon_of(k: &StepKernel) -> Result<StepGraphon, Error> {
    StepGraphon::from_kernel(k.clone())
}

/// Most recent error message on this thread, or an empty string. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn graphon_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Free a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have been returned by a `graphon_*` function and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn graphon_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a kernel from a row-major `n × n` value matrix and `n` block
/// weights. On success writes a new handle to `out`.
///
/// # Safety
/// `values` must point to `n * n` doubles, `weights` to `n` doubles, and
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn graphon_kernel_new(
    values: *const f64,
    weights: *const f64,
    n: usize,
    out: *mut *mut GraphonKernel,
) -> GraphonStatus {
    if values.is_null() || weights.is_null() || out.is_null() {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    }
    let values = std::slice::from_raw_parts(values, n * n);
    let weights = std::slice::from_raw_parts(weights, n);
    guarded(|| {
        let rows: Vec<Vec<f64>> = (0..n).map(|i| values[i * n..(i + 1) * n].to_vec()).collect();
        let kernel = StepKernel::new(rows, weights.to_vec())?;
        *out = Box::into_raw(Box::new(GraphonKernel(kernel)));
        Ok(GraphonStatus::Ok)
    })
}

/// Parse a kernel from a JSON document `{"weights": [...], "values": [[...]]}`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_kernel_from_json(
    json: *const c_char,
    out: *mut *mut GraphonKernel,
) -> GraphonStatus {
    if json.is_null() || out.is_null() {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    }
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        set_error("kernel JSON is not valid UTF-8");
        return GraphonStatus::Utf8;
    };
    guarded(|| {
        let file: KernelFile = serde_json::from_str(text).map_err(|source| Error::Json {
            context: "parsing kernel JSON".into(),
            source,
        })?;
        let kernel = file.to_kernel()?;
        *out = Box::into_raw(Box::new(GraphonKernel(kernel)));
        Ok(GraphonStatus::Ok)
    })
}

/// Serialize a kernel to JSON. The returned string is freed with
/// [`graphon_string_free`].
///
/// # Safety
/// `k` must be a live handle; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_kernel_to_json(
    k: *const GraphonKernel,
    out_json: *mut *mut c_char,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), out_json.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    guarded(|| {
        let file = KernelFile::from_kernel(kernel);
        let text = serde_json::to_string(&file).map_err(|source| Error::Json {
            context: "serializing kernel".into(),
            source,
        })?;
        *out_json = CString::new(text).expect("JSON has no NUL").into_raw();
        Ok(GraphonStatus::Ok)
    })
}

/// Free a kernel handle. Null is a no-op.
///
/// # Safety
/// `k` must have come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn graphon_kernel_free(k: *mut GraphonKernel) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// Number of partition blocks, or 0 for a null handle.
///
/// # Safety
/// `k` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn graphon_kernel_block_count(k: *const GraphonKernel) -> usize {
    kernel_ref(k).map_or(0, StepKernel::block_count)
}

/// Declared bound `B` with `|values| <= B`, or NaN for a null handle.
///
/// # Safety
/// `k` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn graphon_kernel_bound(k: *const GraphonKernel) -> f64 {
    kernel_ref(k).map_or(f64::NAN, StepKernel::bound)
}

/// Pointwise evaluation `W(u, v)`.
///
/// # Safety
/// `k` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_kernel_evaluate(
    k: *const GraphonKernel,
    u: f64,
    v: f64,
    out: *mut f64,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), out.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    guarded(|| {
        *out = kernel.evaluate(u, v)?;
        Ok(GraphonStatus::Ok)
    })
}

/// Exact cut norm (block count must not exceed `exact_limit`; pass 0 for
/// the default limit).
///
/// # Safety
/// `k` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_cut_norm_exact(
    k: *const GraphonKernel,
    exact_limit: usize,
    out: *mut f64,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), out.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    let limit = if exact_limit == 0 { norms::CUT_EXACT_LIMIT } else { exact_limit };
    guarded(|| {
        let (value, _) = norms::cut_norm_exact(kernel, limit)?;
        *out = value;
        Ok(GraphonStatus::Ok)
    })
}

/// Certified lower bound on the cut norm by seeded random-restart search.
///
/// # Safety
/// `k` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_cut_norm_heuristic(
    k: *const GraphonKernel,
    restarts: u32,
    seed: u64,
    out: *mut f64,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), out.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    guarded(|| {
        let (value, _) = norms::cut_norm_heuristic(kernel, restarts, seed);
        *out = value;
        Ok(GraphonStatus::Ok)
    })
}

/// Exact ∞,1-operator norm (pass `exact_limit = 0` for the default limit).
///
/// # Safety
/// `k` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_op_norm_inf1_exact(
    k: *const GraphonKernel,
    exact_limit: usize,
    out: *mut f64,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), out.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    let limit = if exact_limit == 0 { norms::INF1_EXACT_LIMIT } else { exact_limit };
    guarded(|| {
        let (value, _) = norms::op_norm_inf1_exact(kernel, limit)?;
        *out = value;
        Ok(GraphonStatus::Ok)
    })
}

/// Certified lower bound on the ∞,1 norm.
///
/// # Safety
/// `k` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_op_norm_inf1_heuristic(
    k: *const GraphonKernel,
    restarts: u32,
    seed: u64,
    out: *mut f64,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), out.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    guarded(|| {
        let (value, _) = norms::op_norm_inf1_heuristic(kernel, restarts, seed);
        *out = value;
        Ok(GraphonStatus::Ok)
    })
}

/// 2,2-operator norm (spectral norm of the weighted operator matrix).
/// Pass `tol <= 0` for the default tolerance.
///
/// # Safety
/// `k` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_op_norm_22(
    k: *const GraphonKernel,
    tol: f64,
    out: *mut f64,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), out.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    let tol = if tol > 0.0 { tol } else { graphon::tolerances::SPECTRAL_TOL };
    guarded(|| {
        *out = norms::op_norm_22(kernel, tol)?.value;
        Ok(GraphonStatus::Ok)
    })
}

/// Hilbert–Schmidt norm, exact closed form.
///
/// # Safety
/// `k` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_hs_norm(
    k: *const GraphonKernel,
    out: *mut f64,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), out.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    *out = norms::hs_norm(kernel);
    GraphonStatus::Ok
}

/// Edge density `t(C2, W) = ∫∫W`. Requires a graphon (values in [0,1]).
///
/// # Safety
/// `k` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_edge_density(
    k: *const GraphonKernel,
    out: *mut f64,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), out.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    guarded(|| {
        *out = homomorphism::edge_density(&graphon_of(kernel)?);
        Ok(GraphonStatus::Ok)
    })
}

/// `t(C2, W)`, `‖T_W‖²_HS`, and their gap. Requires a graphon.
///
/// # Safety
/// `k` must be a live handle; out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_errata_gap(
    k: *const GraphonKernel,
    out_t_c2: *mut f64,
    out_hs_squared: *mut f64,
    out_gap: *mut f64,
) -> GraphonStatus {
    let Some(kernel) = kernel_ref(k) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    if out_t_c2.is_null() || out_hs_squared.is_null() || out_gap.is_null() {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    }
    guarded(|| {
        let witness = homomorphism::errata_gap(&graphon_of(kernel)?);
        *out_t_c2 = witness.t_c2;
        *out_hs_squared = witness.hs_squared;
        *out_gap = witness.gap;
        Ok(GraphonStatus::Ok)
    })
}

/// Exact homomorphism density of a motif given as `vertex_count` and a flat
/// `[a0, b0, a1, b1, ...]` edge array of `edge_count` pairs. Requires a
/// graphon.
///
/// # Safety
/// `edges` must point to `2 * edge_count` integers (may be null when
/// `edge_count` is 0); `k` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_hom_density(
    k: *const GraphonKernel,
    vertex_count: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut f64,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), out.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    if edges.is_null() && edge_count > 0 {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    }
    let pairs: Vec<(usize, usize)> = if edge_count == 0 {
        Vec::new()
    } else {
        std::slice::from_raw_parts(edges, 2 * edge_count)
            .chunks_exact(2)
            .map(|c| (c[0], c[1]))
            .collect()
    };
    guarded(|| {
        let motif = Motif::new(vertex_count, pairs)?;
        *out = homomorphism::hom_density(&motif, &graphon_of(kernel)?)?;
        Ok(GraphonStatus::Ok)
    })
}

/// Cycle density `t(C_k, W)` through the eigenvalues of the weighted
/// operator matrix; the independent route to the enumeration above.
///
/// # Safety
/// `k` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn graphon_cycle_density_spectral(
    k: *const GraphonKernel,
    cycle_length: usize,
    out: *mut f64,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), out.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    guarded(|| {
        *out = homomorphism::cycle_density_spectral(cycle_length, &graphon_of(kernel)?)?;
        Ok(GraphonStatus::Ok)
    })
}

/// Run the six-inequality check chain. Writes the six slacks in chain
/// order (cut-norm lemma lower/upper, operator-norm lemma lower/upper,
/// sandwich lower/upper) and returns `Falsified` if any conclusive
/// inequality is violated.
///
/// # Safety
/// `k` must be a live handle; `out_slacks` must point to 6 doubles.
#[no_mangle]
pub unsafe extern "C" fn graphon_check_inequalities(
    k: *const GraphonKernel,
    out_slacks: *mut f64,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), out_slacks.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    guarded(|| {
        let verification = verify::verify_kernel(kernel, &norms::NormConfig::default())?;
        let slacks = verification.slacks();
        let out = std::slice::from_raw_parts_mut(out_slacks, 6);
        out.copy_from_slice(&slacks);
        if verification.status.is_conclusive() && !verification.all_pass() {
            set_error("an inequality is violated");
            return Ok(GraphonStatus::Falsified);
        }
        Ok(GraphonStatus::Ok)
    })
}

/// Sample a W-random graph into a caller-provided row-major `nodes × nodes`
/// 0/1 adjacency buffer. Requires a graphon. Deterministic given the seed.
///
/// # Safety
/// `k` must be a live handle; `adjacency_out` must point to
/// `nodes * nodes` bytes.
#[no_mangle]
pub unsafe extern "C" fn graphon_sample_graph(
    k: *const GraphonKernel,
    nodes: usize,
    seed: u64,
    adjacency_out: *mut u8,
) -> GraphonStatus {
    let (Some(kernel), false) = (kernel_ref(k), adjacency_out.is_null()) else {
        set_error("null argument");
        return GraphonStatus::NullArgument;
    };
    guarded(|| {
        let graph = graphon_of(kernel)?.sample_graph(nodes, seed)?;
        let out = std::slice::from_raw_parts_mut(adjacency_out, nodes * nodes);
        out.fill(0);
        for &(a, b) in graph.edges() {
            out[a * nodes + b] = 1;
            out[b * nodes + a] = 1;
        }
        Ok(GraphonStatus::Ok)
    })
}
