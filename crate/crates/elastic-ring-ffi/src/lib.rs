//! C ABI for the elastic-ring bifurcation toolkit.
//!
//! Every function returns an [`ErStatus`]; outputs go through pointer
//! arguments. Larger results (buckled shapes, engine reductions) are
//! held behind opaque handles with explicit `_free` destructors. All
//! entry points catch panics and report them as `ER_INTERNAL` instead
//! of unwinding across the ABI boundary.

// Every pointer argument is null-checked before the dereference; the
// remaining safety obligation (pointers must reference valid storage)
// is the standard C-caller contract and is documented per function.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use elastic_ring::landau::{self, CoeffSource, LandauPolynomial};
use elastic_ring::params::ModelParams;
use elastic_ring::ring;
use elastic_ring::shapes;
use elastic_ring::RingError;

/// Status code returned by every API function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ErStatus {
    /// Success.
    ErOk = 0,
    /// A parameter is outside its admissible range.
    ErInvalidParameter = 1,
    /// No bifurcation exists at the requested parameters.
    ErNoBifurcation = 2,
    /// An iterative solve failed to converge.
    ErDiverged = 3,
    /// A root or minimum was not bracketed / does not exist.
    ErNoBracket = 4,
    /// The transition at these parameters is not first-order.
    ErNotFirstOrder = 5,
    /// The reduced polynomial is not finitely determined at this order.
    ErIndeterminate = 6,
    /// A required pointer argument was null.
    ErNullPointer = 7,
    /// Internal error (panic caught at the ABI boundary).
    ErInternal = 8,
}

fn status_of(err: &RingError) -> ErStatus {
    match err {
        RingError::InvalidParameter(_) | RingError::Usage(_) => ErStatus::ErInvalidParameter,
        RingError::NoBifurcation(_) => ErStatus::ErNoBifurcation,
        RingError::Diverged { .. }
        | RingError::TrustRegionExceeded { .. }
        | RingError::DegenerateKernel { .. }
        | RingError::AsymmetricHessian { .. }
        | RingError::NormalizationAmbiguous(_) => ErStatus::ErDiverged,
        RingError::NoBracket { .. } => ErStatus::ErNoBracket,
        RingError::NotFirstOrder(_) => ErStatus::ErNotFirstOrder,
        RingError::DeterminacyFailure(_) => ErStatus::ErIndeterminate,
        RingError::Io { .. } => ErStatus::ErInternal,
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn er_strerror(status: ErStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        ErStatus::ErOk => b"success\0",
        ErStatus::ErInvalidParameter => b"parameter outside its admissible range\0",
        ErStatus::ErNoBifurcation => b"no bifurcation at the requested parameters\0",
        ErStatus::ErDiverged => b"iterative solve failed to converge\0",
        ErStatus::ErNoBracket => b"root or minimum not bracketed\0",
        ErStatus::ErNotFirstOrder => b"transition is not first-order\0",
        ErStatus::ErIndeterminate => b"reduced polynomial not finitely determined\0",
        ErStatus::ErNullPointer => b"null pointer argument\0",
        ErStatus::ErInternal => b"internal error\0",
    };
    text.as_ptr().cast()
}

/// Landau coefficients of the reduced potential
/// g(α) = a2·α² + a4·α⁴ + a6·α⁶.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct ErLandau {
    pub a2: f64,
    pub a4: f64,
    pub a6: f64,
    /// Degree (2, 4 or 6) of the first non-vanishing coefficient.
    pub determinacy: u32,
}

impl From<LandauPolynomial> for ErLandau {
    fn from(p: LandauPolynomial) -> Self {
        Self {
            a2: p.a2,
            a4: p.a4,
            a6: p.a6,
            determinacy: p.determinacy,
        }
    }
}

/// Run `body`, writing its value through `out`; translate errors and
/// panics into status codes.
fn guarded<T>(out: *mut T, body: impl FnOnce() -> Result<T, RingError>) -> ErStatus {
    if out.is_null() {
        return ErStatus::ErNullPointer;
    }
    // AssertUnwindSafe: on panic nothing captured by `body` is used
    // again; we only translate the panic into a status code.
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(value)) => {
            // SAFETY: `out` was checked non-null; the caller guarantees
            // it points to writable storage for T.
            unsafe { out.write(value) };
            ErStatus::ErOk
        }
        Ok(Err(err)) => status_of(&err),
        Err(_) => ErStatus::ErInternal,
    }
}

/// Critical μ2 on the mode-n bifurcation curve at the given μ1.
#[no_mangle]
pub extern "C" fn er_critical_mu2(n: u32, mu1: f64, out_mu2: *mut f64) -> ErStatus {
    guarded(out_mu2, || landau::critical_mu2(n, mu1))
}

/// Critical dimensionless pressure μ1μ2/(4π²) in the inextensible limit
/// μ1 → 0 (equals n² − 1).
#[no_mangle]
pub extern "C" fn er_inextensible_limit(n: u32) -> f64 {
    landau::inextensible_limit(n)
}

/// The tricritical point (first-/second-order boundary) on the n = 2
/// curve.
#[no_mangle]
pub extern "C" fn er_tricritical_point(out_mu1: *mut f64, out_mu2: *mut f64) -> ErStatus {
    if out_mu2.is_null() {
        return ErStatus::ErNullPointer;
    }
    let (mu1, mu2) = landau::tricritical_point();
    let status = guarded(out_mu1, || Ok(mu1));
    if status == ErStatus::ErOk {
        unsafe { out_mu2.write(mu2) };
    }
    status
}

/// Closed-form Landau coefficients at (μ1, μ2).
#[no_mangle]
pub extern "C" fn er_landau_closed_form(mu1: f64, mu2: f64, out: *mut ErLandau) -> ErStatus {
    guarded(out, || {
        ModelParams::new(mu1, mu2)?;
        Ok(landau::closed_form(mu1, mu2).into())
    })
}

/// Global minimum of g over α ≥ 0 (α = 0 when the circular state wins;
/// exact ties resolve to the buckled well).
#[no_mangle]
pub extern "C" fn er_minimize(
    poly: *const ErLandau,
    out_alpha: *mut f64,
    out_g: *mut f64,
) -> ErStatus {
    if poly.is_null() || out_g.is_null() {
        return ErStatus::ErNullPointer;
    }
    let p = unsafe { *poly };
    let status = guarded(out_alpha, || {
        let poly = LandauPolynomial {
            a2: p.a2,
            a4: p.a4,
            a6: p.a6,
            determinacy: p.determinacy,
            source: CoeffSource::ClosedForm,
        };
        landau::minimize_g(&poly).map(|(alpha, _)| alpha)
    });
    if status == ErStatus::ErOk {
        let poly = LandauPolynomial {
            a2: p.a2,
            a4: p.a4,
            a6: p.a6,
            determinacy: p.determinacy,
            source: CoeffSource::ClosedForm,
        };
        let alpha = unsafe { *out_alpha };
        unsafe { out_g.write(poly.evaluate(alpha)) };
    }
    status
}

/// μ1 where the circular state loses linear stability (a2 = 0) at
/// fixed μ2.
#[no_mangle]
pub extern "C" fn er_stability_boundary(mu2: f64, out_mu1: *mut f64) -> ErStatus {
    guarded(out_mu1, || landau::stability_boundary(mu2))
}

/// Maxwell (equal-depth) pressure parameter at fixed μ2; fails with
/// `ER_NOT_FIRST_ORDER` on the second-order side of the tricritical
/// point.
#[no_mangle]
pub extern "C" fn er_maxwell_mu1(mu2: f64, out_mu1: *mut f64) -> ErStatus {
    guarded(out_mu1, || landau::maxwell_locus(mu2))
}

/// Spinodal window [lo, hi] of μ1 bounding the hysteresis region at
/// fixed μ2.
#[no_mangle]
pub extern "C" fn er_spinodal_bounds(
    mu2: f64,
    out_mu1_lo: *mut f64,
    out_mu1_hi: *mut f64,
) -> ErStatus {
    if out_mu1_hi.is_null() {
        return ErStatus::ErNullPointer;
    }
    let mut hi = f64::NAN;
    let status = guarded(out_mu1_lo, || {
        let (lo, h) = landau::spinodal_bounds(mu2)?;
        hi = h;
        Ok(lo)
    });
    if status == ErStatus::ErOk {
        unsafe { out_mu1_hi.write(hi) };
    }
    status
}

/// Closed-form area enclosed by the buckled ring of contour length
/// `length` at amplitude α (valid through O(α²)).
#[no_mangle]
pub extern "C" fn er_enclosed_area(
    mu1: f64,
    alpha: f64,
    length: f64,
    out_area: *mut f64,
) -> ErStatus {
    guarded(out_area, || {
        if length <= 0.0 || length.is_nan() || mu1 < 0.0 {
            return Err(RingError::InvalidParameter(format!(
                "need length > 0 and mu1 >= 0, got length = {length}, mu1 = {mu1}"
            )));
        }
        Ok(shapes::enclosed_area(mu1, alpha, length))
    })
}

/// Opaque buckled-shape handle (sampled centerline polygon).
pub struct ErShape {
    profile: shapes::ShapeProfile,
}

/// Sample the asymptotic post-buckling shape at (μ1, α). On success the
/// handle must be released with `er_shape_free`.
#[no_mangle]
pub extern "C" fn er_shape_new(
    mu1: f64,
    alpha: f64,
    samples: usize,
    out: *mut *mut ErShape,
) -> ErStatus {
    guarded(out, || {
        let state = shapes::asymptotic_state(mu1, alpha)?;
        let profile = shapes::to_cartesian(&state, samples)?;
        Ok(Box::into_raw(Box::new(ErShape { profile })))
    })
}

/// Number of samples held by the shape (0 for a null handle).
#[no_mangle]
pub extern "C" fn er_shape_len(shape: *const ErShape) -> usize {
    if shape.is_null() {
        return 0;
    }
    unsafe { &*shape }.profile.samples.len()
}

/// The i-th sample as (arclength, x, y).
#[no_mangle]
pub extern "C" fn er_shape_point(
    shape: *const ErShape,
    index: usize,
    out_s: *mut f64,
    out_x: *mut f64,
    out_y: *mut f64,
) -> ErStatus {
    if shape.is_null() || out_s.is_null() || out_x.is_null() || out_y.is_null() {
        return ErStatus::ErNullPointer;
    }
    let profile = &unsafe { &*shape }.profile;
    match profile.samples.get(index) {
        Some(&(s, x, y)) => {
            unsafe {
                out_s.write(s);
                out_x.write(x);
                out_y.write(y);
            }
            ErStatus::ErOk
        }
        None => ErStatus::ErInvalidParameter,
    }
}

/// Polygonal (shoelace) area enclosed by the sampled shape; NaN for a
/// null handle.
#[no_mangle]
pub extern "C" fn er_shape_area(shape: *const ErShape) -> f64 {
    if shape.is_null() {
        return f64::NAN;
    }
    unsafe { &*shape }.profile.area
}

/// Release a shape handle (null is a no-op).
#[no_mangle]
pub extern "C" fn er_shape_free(shape: *mut ErShape) {
    if !shape.is_null() {
        drop(unsafe { Box::from_raw(shape) });
    }
}

/// Opaque handle to an engine reduction at one parameter point.
pub struct ErReduction {
    inner: ring::RingReduction,
}

/// Run the numerical splitting-lemma reduction of the ring energy at
/// (μ1, μ2) with `num_modes` Fourier harmonics (pass 0 for the default
/// of 12). On success the handle must be released with
/// `er_reduction_free`.
#[no_mangle]
pub extern "C" fn er_reduce(
    mu1: f64,
    mu2: f64,
    num_modes: usize,
    out: *mut *mut ErReduction,
) -> ErStatus {
    guarded(out, || {
        let num_modes = if num_modes == 0 { 12 } else { num_modes };
        let params = ModelParams::new(mu1, mu2)?;
        let inner = ring::ring_landau(&params, num_modes)?;
        Ok(Box::into_raw(Box::new(ErReduction { inner })))
    })
}

/// Fitted Landau coefficients of a reduction.
#[no_mangle]
pub extern "C" fn er_reduction_landau(
    reduction: *const ErReduction,
    out: *mut ErLandau,
) -> ErStatus {
    if reduction.is_null() {
        return ErStatus::ErNullPointer;
    }
    let polynomial = unsafe { &*reduction }.inner.polynomial;
    guarded(out, move || Ok(polynomial.into()))
}

/// μ2 of the critical point where the slaving jets were extracted.
#[no_mangle]
pub extern "C" fn er_reduction_mu2_critical(reduction: *const ErReduction) -> f64 {
    if reduction.is_null() {
        return f64::NAN;
    }
    unsafe { &*reduction }.inner.mu2_critical
}

/// Copy the kernel mode into `out` (capacity `len`); writes the needed
/// length through `out_len` and fails with `ER_INVALID_PARAMETER` if
/// the buffer is too small (call with `len = 0` to query the size).
#[no_mangle]
pub extern "C" fn er_reduction_kernel(
    reduction: *const ErReduction,
    out: *mut f64,
    len: usize,
    out_len: *mut usize,
) -> ErStatus {
    if reduction.is_null() || out_len.is_null() {
        return ErStatus::ErNullPointer;
    }
    let kernel = &unsafe { &*reduction }.inner.kernel;
    unsafe { out_len.write(kernel.len()) };
    if len == 0 {
        return ErStatus::ErOk;
    }
    if out.is_null() {
        return ErStatus::ErNullPointer;
    }
    if len < kernel.len() {
        return ErStatus::ErInvalidParameter;
    }
    let result = catch_unwind(AssertUnwindSafe(|| {
        // SAFETY: caller guarantees `out` points to `len` writable f64s.
        unsafe { std::slice::from_raw_parts_mut(out, kernel.len()) }
            .copy_from_slice(kernel.as_slice());
    }));
    match result {
        Ok(()) => ErStatus::ErOk,
        Err(_) => ErStatus::ErInternal,
    }
}

/// Release a reduction handle (null is a no-op).
#[no_mangle]
pub extern "C" fn er_reduction_free(reduction: *mut ErReduction) {
    if !reduction.is_null() {
        drop(unsafe { Box::from_raw(reduction) });
    }
}
