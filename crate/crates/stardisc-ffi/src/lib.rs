//! C ABI over the stardisc library.
//!
//! Every fallible function returns a status code and writes its result
//! through an out pointer; constructors return an opaque handle or null.
//! After any non-zero status (or null handle), `stardisc_last_error` on the
//! same thread describes what went wrong.
//!
//! The generated header lives in `include/stardisc.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use stardisc::{Error, Point, PointSet};

/// Success.
pub const STARDISC_OK: i32 = 0;
/// Unexpected failure; inspect `stardisc_last_error`.
pub const STARDISC_ERR_INTERNAL: i32 = 1;
/// A parameter is outside its documented domain, or an input failed to parse.
pub const STARDISC_ERR_INVALID: i32 = 2;
/// The computation exceeds the work budget, or the sample size is below the
/// regime threshold.
pub const STARDISC_ERR_CAPACITY: i32 = 3;
/// A required pointer argument is null.
pub const STARDISC_ERR_NULL: i32 = 4;

/// Opaque owner of an s-dimensional point set in the unit cube.
pub struct StardiscPointSet(PointSet);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    // Interior NULs cannot come from this crate's error text; replace them
    // rather than lose the message if they ever do.
    let clean = CString::new(msg.replace('\0', "?")).expect("NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = clean);
}

fn error_code(e: &Error) -> i32 {
    match e.exit_code() {
        2 => STARDISC_ERR_INVALID,
        3 => STARDISC_ERR_CAPACITY,
        _ => STARDISC_ERR_INTERNAL,
    }
}

fn fail_with(e: Error) -> i32 {
    let code = error_code(&e);
    set_last_error(&e.to_string());
    code
}

/// Runs a status-returning body, converting a panic into an error code so
/// unwinding never crosses the C boundary.
fn guarded(f: impl FnOnce() -> i32) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_last_error("internal panic");
            STARDISC_ERR_INTERNAL
        }
    }
}

/// Same, for handle constructors: a panic or error becomes null.
fn guarded_handle(
    f: impl FnOnce() -> Result<PointSet, Error>,
) -> *mut StardiscPointSet {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(ps)) => Box::into_raw(Box::new(StardiscPointSet(ps))),
        Ok(Err(e)) => {
            fail_with(e);
            std::ptr::null_mut()
        }
        Err(_) => {
            set_last_error("internal panic");
            std::ptr::null_mut()
        }
    }
}

/// # Safety
/// `out` must be valid for writes (checked for null, not for validity).
unsafe fn write_scalar<T>(out: *mut T, r: Result<T, Error>) -> i32 {
    if out.is_null() {
        set_last_error("out pointer is null");
        return STARDISC_ERR_NULL;
    }
    match r {
        Ok(v) => {
            unsafe { out.write(v) };
            STARDISC_OK
        }
        Err(e) => fail_with(e),
    }
}

/// # Safety
/// `ps` must be null or a handle from this library that has not been freed.
unsafe fn borrow_set<'a>(ps: *const StardiscPointSet) -> Result<&'a PointSet, i32> {
    if ps.is_null() {
        set_last_error("point set handle is null");
        return Err(STARDISC_ERR_NULL);
    }
    Ok(unsafe { &(*ps).0 })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn stardisc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on the calling thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn stardisc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Coefficient of the probabilistic discrepancy bound:
/// 5.7 sqrt(4.9 + ln(1/(1-q))/s).
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn stardisc_theorem_coefficient(q: f64, s: usize, out: *mut f64) -> i32 {
    guarded(|| unsafe { write_scalar(out, stardisc::bounds::theorem_coefficient(q, s)) })
}

/// The bound itself: coefficient * sqrt(s/N).
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn stardisc_theorem_bound(q: f64, s: usize, n: u64, out: *mut f64) -> i32 {
    guarded(|| unsafe { write_scalar(out, stardisc::bounds::theorem_bound(q, s, n)) })
}

/// Dimension-uniform variant: 5.7 sqrt(4.9 + ln(1/(1-q))) * sqrt(s/N).
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn stardisc_corollary_bound(q: f64, s: usize, n: u64, out: *mut f64) -> i32 {
    guarded(|| unsafe { write_scalar(out, stardisc::bounds::corollary_bound(q, s, n)) })
}

/// Smallest N whose bound is at most eps.
///
/// # Safety
/// `out` must point to writable memory for one uint64_t.
#[no_mangle]
pub unsafe extern "C" fn stardisc_inverse_theorem(
    q: f64,
    s: usize,
    eps: f64,
    out: *mut u64,
) -> i32 {
    guarded(|| unsafe { write_scalar(out, stardisc::bounds::inverse_discrepancy_theorem(q, s, eps)) })
}

/// Sample size certifying that a set with discrepancy <= eps exists:
/// ceil(100 s / eps^2).
///
/// # Safety
/// `out` must point to writable memory for one uint64_t.
#[no_mangle]
pub unsafe extern "C" fn stardisc_inverse_existence(s: usize, eps: f64, out: *mut u64) -> i32 {
    guarded(|| unsafe { write_scalar(out, stardisc::bounds::inverse_discrepancy_existence(s, eps)) })
}

/// Smallest admissible N for (q, s); below it the bound exceeds 1.
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn stardisc_trivial_regime_threshold(q: f64, s: usize, out: *mut f64) -> i32 {
    guarded(|| unsafe { write_scalar(out, stardisc::bounds::trivial_regime_threshold(q, s)) })
}

/// Hoeffding tail 2 exp(-2 t^2 / N) for a sum of N centered indicators.
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn stardisc_hoeffding_tail(n: u64, t: f64, out: *mut f64) -> i32 {
    guarded(|| unsafe {
        write_scalar(out, stardisc::bounds::hoeffding_tail(n, t).map(|r| r.probability_bound))
    })
}

/// Bernstein tail at dyadic level k >= 2:
/// 2 exp(-t^2 / (2 N 2^-k (1 - 2^-k) + 2t/3)).
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn stardisc_bernstein_tail_k(n: u64, k: u32, t: f64, out: *mut f64) -> i32 {
    guarded(|| unsafe {
        write_scalar(out, stardisc::bounds::bernstein_tail_k(n, k, t).map(|r| r.probability_bound))
    })
}

/// Runs the full constant-chain audit for (q, s, N). STARDISC_OK with
/// `*out_overall = false` means the audit ran and found a violated check;
/// STARDISC_ERR_CAPACITY means N is below the admissible regime.
///
/// # Safety
/// `out_overall` must point to writable memory for one bool.
#[no_mangle]
pub unsafe extern "C" fn stardisc_audit(q: f64, s: usize, n: u64, out_overall: *mut bool) -> i32 {
    guarded(|| unsafe {
        write_scalar(out_overall, stardisc::bounds::audit_proof(q, s, n).map(|r| r.overall))
    })
}

/// Builds a point set from `n` rows of `dim` coordinates, row-major, all in
/// [0,1]. Returns null and sets the thread error message on failure.
///
/// # Safety
/// `coords` must be valid for reads of `n * dim` doubles (it is unused when
/// `n * dim == 0`). Free the result with `stardisc_pointset_free`.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_new(
    dim: usize,
    n: usize,
    coords: *const f64,
) -> *mut StardiscPointSet {
    let total = match n.checked_mul(dim) {
        Some(t) => t,
        None => {
            set_last_error("n * dim overflows");
            return std::ptr::null_mut();
        }
    };
    if coords.is_null() && total > 0 {
        set_last_error("coords pointer is null");
        return std::ptr::null_mut();
    }
    let flat: &[f64] = if total == 0 {
        &[]
    } else {
        unsafe { std::slice::from_raw_parts(coords, total) }
    };
    guarded_handle(|| {
        let points = flat
            .chunks(dim.max(1))
            .map(|row| Point::new(row.to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        PointSet::new(dim, points)
    })
}

/// Reads a point set from a text file: header line "s N", then N rows of s
/// coordinates. Returns null and sets the thread error message on failure.
///
/// # Safety
/// `path` must be a NUL-terminated string. Free the result with
/// `stardisc_pointset_free`.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_read(path: *const c_char) -> *mut StardiscPointSet {
    if path.is_null() {
        set_last_error("path is null");
        return std::ptr::null_mut();
    }
    let path = match unsafe { CStr::from_ptr(path) }.to_str() {
        Ok(p) => p.to_owned(),
        Err(_) => {
            set_last_error("path is not valid UTF-8");
            return std::ptr::null_mut();
        }
    };
    guarded_handle(move || stardisc::io::read_point_set(Path::new(&path)))
}

/// Draws n independent uniform points in [0,1]^s from the seeded generator;
/// equal (seed, stream) pairs reproduce the same set on every platform.
///
/// # Safety
/// Free the result with `stardisc_pointset_free`.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_generate(
    s: usize,
    n: usize,
    seed: u64,
    stream: u64,
) -> *mut StardiscPointSet {
    guarded_handle(move || stardisc::montecarlo::generate_uniform(s, n, seed, stream))
}

/// Number of points.
///
/// # Safety
/// `ps` must be a live handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_len(
    ps: *const StardiscPointSet,
    out: *mut usize,
) -> i32 {
    guarded(|| match unsafe { borrow_set(ps) } {
        Ok(set) => unsafe { write_scalar(out, Ok(set.len())) },
        Err(code) => code,
    })
}

/// Dimension of the ambient cube.
///
/// # Safety
/// `ps` must be a live handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_dim(
    ps: *const StardiscPointSet,
    out: *mut usize,
) -> i32 {
    guarded(|| match unsafe { borrow_set(ps) } {
        Ok(set) => unsafe { write_scalar(out, Ok(set.dim())) },
        Err(code) => code,
    })
}

/// Releases a handle. Null is a no-op.
///
/// # Safety
/// `ps` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_free(ps: *mut StardiscPointSet) {
    if !ps.is_null() {
        drop(unsafe { Box::from_raw(ps) });
    }
}

/// Exact star discrepancy. Work grows as (N+1)^s; requests whose estimated
/// step count exceeds `budget` fail with STARDISC_ERR_CAPACITY.
///
/// # Safety
/// `ps` must be a live handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stardisc_exact_discrepancy(
    ps: *const StardiscPointSet,
    budget: u64,
    out: *mut f64,
) -> i32 {
    guarded(|| match unsafe { borrow_set(ps) } {
        Ok(set) => unsafe {
            write_scalar(
                out,
                stardisc::discrepancy::star_discrepancy_exact(set, budget).map(|r| r.value),
            )
        },
        Err(code) => code,
    })
}

/// Lower end L of the cover bracket L <= D* <= L + delta, maximized over
/// the equidistant delta-cover.
///
/// # Safety
/// `ps` must be a live handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stardisc_cover_discrepancy(
    ps: *const StardiscPointSet,
    delta: f64,
    budget: u64,
    out: *mut f64,
) -> i32 {
    guarded(|| match unsafe { borrow_set(ps) } {
        Ok(set) => unsafe {
            write_scalar(
                out,
                stardisc::discrepancy::star_discrepancy_cover(set, delta, budget).map(|r| r.value),
            )
        },
        Err(code) => code,
    })
}

/// Fraction of the set inside the anchored closed box [0, upper], minus the
/// box volume. `upper` holds the box corner as `dim` doubles.
///
/// # Safety
/// `ps` must be a live handle from this library; `upper` must be valid for
/// reads of the set's dimension; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stardisc_local_discrepancy(
    ps: *const StardiscPointSet,
    upper: *const f64,
    out: *mut f64,
) -> i32 {
    guarded(|| {
        let set = match unsafe { borrow_set(ps) } {
            Ok(s) => s,
            Err(code) => return code,
        };
        if upper.is_null() {
            set_last_error("upper pointer is null");
            return STARDISC_ERR_NULL;
        }
        let coords = unsafe { std::slice::from_raw_parts(upper, set.dim()) };
        let r = Point::new(coords.to_vec())
            .and_then(|y| stardisc::discrepancy::discrepancy_at(set, &y));
        unsafe { write_scalar(out, r) }
    })
}
