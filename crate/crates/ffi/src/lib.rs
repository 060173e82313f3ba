//! C interface to the prime geodesic library.
//!
//! Every fallible function returns a [`PgStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be read with [`pg_last_error_message`]. Tables are opaque handles created
//! by `pg_table_new` and released with `pg_table_free`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use prime_geodesic::arith::class_number;
use prime_geodesic::geodesics::{trace_to_norm, GeodesicTable, PsiMethod};
use prime_geodesic::kloosterman::kloosterman_sum;
use prime_geodesic::lseries::{dirichlet_l, l_one};
use prime_geodesic::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument lies outside the domain of the operation.
    Domain = 2,
    /// The discriminant is a perfect square.
    PerfectSquare = 3,
    Parse = 4,
    Io = 5,
    /// The table does not cover the requested point or pipeline.
    Range = 6,
    /// An internal panic was caught at the boundary.
    Panic = 7,
}

/// Counting method for [`pg_table_psi`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgMethod {
    /// Sum of `sqrt(n^2 - 4) L(1, n^2 - 4)` over traces.
    Lvalue = 0,
    /// Class numbers and fundamental units.
    Oracle = 1,
}

/// Opaque table of traces, classes and L-values up to a norm bound.
pub struct PgTable {
    inner: GeodesicTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> PgStatus {
    match e {
        Error::Domain { .. } => PgStatus::Domain,
        Error::PerfectSquare(_) => PgStatus::PerfectSquare,
        Error::Parse { .. } => PgStatus::Parse,
        Error::Io(_) => PgStatus::Io,
    }
}

/// Runs `f`, storing its value in `out` and translating errors and panics.
fn guard<T, F>(out: *mut T, f: F) -> PgStatus
where
    F: FnOnce() -> Result<T, (PgStatus, String)>,
{
    if out.is_null() {
        set_error("output pointer is null".into());
        return PgStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: checked non-null above; the caller provides a valid slot.
            unsafe { out.write(v) };
            clear_error();
            PgStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            PgStatus::Panic
        }
    }
}

fn lift<T>(r: prime_geodesic::Result<T>) -> Result<T, (PgStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len - 1` bytes). Returns the full message length, or 0 when
/// there is no error. `buf` may be null to query the length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn pg_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Builds a table for norms up to `x_max`. With `with_lvalues` false only the
/// class-number pipeline is computed.
///
/// # Safety
/// `out` must be a valid pointer; on success it receives a handle to free
/// with [`pg_table_free`].
#[no_mangle]
pub unsafe extern "C" fn pg_table_new(x_max: f64, with_lvalues: bool, out: *mut *mut PgTable) -> PgStatus {
    guard(out, || {
        if !(x_max >= 2.0) || !x_max.is_finite() {
            return Err((PgStatus::Domain, format!("x_max = {x_max} must be a finite value >= 2")));
        }
        let inner = if with_lvalues { GeodesicTable::build(x_max) } else { GeodesicTable::build_oracle(x_max) };
        Ok(Box::into_raw(Box::new(PgTable { inner: lift(inner)? })))
    })
}

/// Releases a table; null is ignored.
///
/// # Safety
/// `table` must come from [`pg_table_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pg_table_free(table: *mut PgTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

unsafe fn table_ref<'a>(table: *const PgTable) -> Result<&'a PgTable, (PgStatus, String)> {
    table.as_ref().ok_or((PgStatus::NullPointer, "table handle is null".into()))
}

fn check_range(t: &PgTable, x: f64) -> Result<(), (PgStatus, String)> {
    if !(x <= t.inner.x_max()) {
        return Err((PgStatus::Range, format!("x = {x} beyond table range {}", t.inner.x_max())));
    }
    Ok(())
}

/// `Psi(x)` from a table.
///
/// # Safety
/// `table` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_table_psi(table: *const PgTable, x: f64, method: PgMethod, out: *mut f64) -> PgStatus {
    guard(out, || {
        let t = table_ref(table)?;
        check_range(t, x)?;
        let m = match method {
            PgMethod::Lvalue => PsiMethod::Lvalue,
            PgMethod::Oracle => PsiMethod::Oracle,
        };
        t.inner.psi(x, m).map_err(|e| (PgStatus::Range, e.to_string()))
    })
}

/// Number of primitive classes of norm at most `x`.
///
/// # Safety
/// `table` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_table_pi(table: *const PgTable, x: f64, out: *mut u64) -> PgStatus {
    guard(out, || {
        let t = table_ref(table)?;
        check_range(t, x)?;
        Ok(t.inner.pi(x))
    })
}

/// Largest trace in the table.
///
/// # Safety
/// `table` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_table_max_trace(table: *const PgTable, out: *mut u64) -> PgStatus {
    guard(out, || Ok(table_ref(table)?.inner.t_max()))
}

/// `L(1, delta)` for a non-square nonzero discriminant.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_l_one(delta: i64, out: *mut f64) -> PgStatus {
    guard(out, || lift(l_one(delta)))
}

/// `L(s, chi_D)` at `s = re + i im`; writes `[re, im]` to `out`.
///
/// # Safety
/// `out` must point to two writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pg_dirichlet_l(re: f64, im: f64, d: i64, out: *mut [f64; 2]) -> PgStatus {
    guard(out, || {
        let v = lift(dirichlet_l(Complex64::new(re, im), d))?.value;
        Ok([v.re, v.im])
    })
}

/// Narrow class number of the positive discriminant `d`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_class_number(d: i64, out: *mut u64) -> PgStatus {
    guard(out, || lift(class_number(d)).map(|c| c.h))
}

/// Kloosterman sum `S(m, n; q)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_kloosterman(m: i64, n: i64, q: u64, out: *mut f64) -> PgStatus {
    guard(out, || {
        if q == 0 {
            return Err((PgStatus::Domain, "q must be positive".into()));
        }
        Ok(kloosterman_sum(m, n, q).value)
    })
}

/// Norm of a hyperbolic class of trace `n > 2`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_trace_to_norm(n: u64, out: *mut f64) -> PgStatus {
    guard(out, || lift(trace_to_norm(n)))
}
