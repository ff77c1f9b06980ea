//! C ABI for `polyrot`.
//!
//! Every fallible function returns a [`PolyrotStatus`] and writes its result
//! through an out pointer. On failure a message is kept per thread and can be
//! copied out with [`polyrot_last_error`]. Handles are opaque and must be
//! released with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use num_complex::Complex64;
use polyrot::bounds::{self, BoundContext, BoundKind, ReportOptions};
use polyrot::oracle::{self, ArcSpec};
use polyrot::polynomial::{Polynomial, RootForm, UnitCirclePoint};
use polyrot::rational::{RationalChecker, RationalFunction};
use polyrot::roots::{self, RootSolveConfig, ZoneSummary};
use polyrot::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyrotStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidPolynomial = 2,
    ZeroProximity = 3,
    NonConvergence = 4,
    HypothesisViolated = 5,
    RootAtOne = 6,
    DegenerateDerivative = 7,
    PoleOnCircle = 8,
    ArcContainsRoot = 9,
    UnwrapAmbiguity = 10,
    InvalidWitnessParams = 11,
    InvalidArgument = 12,
    BufferTooSmall = 13,
    Panic = 14,
}

impl From<&Error> for PolyrotStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidPolynomial(_) => PolyrotStatus::InvalidPolynomial,
            Error::ZeroProximity { .. } => PolyrotStatus::ZeroProximity,
            Error::NonConvergence { .. } => PolyrotStatus::NonConvergence,
            Error::HypothesisViolated(_) => PolyrotStatus::HypothesisViolated,
            Error::RootAtOne => PolyrotStatus::RootAtOne,
            Error::DegenerateDerivative => PolyrotStatus::DegenerateDerivative,
            Error::PoleOnCircle(_) => PolyrotStatus::PoleOnCircle,
            Error::ArcContainsRoot { .. } => PolyrotStatus::ArcContainsRoot,
            Error::UnwrapAmbiguity { .. } => PolyrotStatus::UnwrapAmbiguity,
            Error::InvalidWitnessParams(_) => PolyrotStatus::InvalidWitnessParams,
            Error::InvalidArgument(_) => PolyrotStatus::InvalidArgument,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyrotComplex {
    pub re: f64,
    pub im: f64,
}

impl From<PolyrotComplex> for Complex64 {
    fn from(c: PolyrotComplex) -> Self {
        Complex64::new(c.re, c.im)
    }
}

impl From<Complex64> for PolyrotComplex {
    fn from(c: Complex64) -> Self {
        PolyrotComplex { re: c.re, im: c.im }
    }
}

/// Zero counts by zone.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PolyrotZones {
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
    pub all_in_closed_disk: bool,
    pub all_on_circle: bool,
    pub none_inside_open_disk: bool,
}

pub const POLYROT_BOUND_COUNT: usize = 7;

/// Bounds in the order classic, coeff, sqrt_weak, value_thm1, coeff2_thm2,
/// arc_thm3, upper_zero_free. Not applicable: NaN in `bounds` and `margins`,
/// `-1` in `flags`; otherwise `flags` is `1` when the inequality holds.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyrotBoundReport {
    pub theta: f64,
    pub lambda: f64,
    pub rotation_speed: f64,
    pub bounds: [f64; POLYROT_BOUND_COUNT],
    pub margins: [f64; POLYROT_BOUND_COUNT],
    pub flags: [i8; POLYROT_BOUND_COUNT],
}

/// Rational check at one point; NaN margin and `-1` flag when not applicable.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyrotRationalReport {
    pub theta: f64,
    pub arg_derivative: f64,
    pub rhs: f64,
    pub lower_margin: f64,
    pub upper_margin: f64,
    pub lower_holds: i8,
    pub upper_holds: i8,
}

/// Opaque polynomial handle; zone classification is computed once on demand.
pub struct PolyrotPolynomial {
    poly: Polynomial,
    zones: OnceLock<ZoneSummary>,
}

/// Opaque rational function handle.
pub struct PolyrotRational {
    checker: RationalChecker,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: PolyrotStatus, msg: impl Into<String>) -> PolyrotStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> PolyrotStatus {
    let status = PolyrotStatus::from(&e);
    fail(status, e.to_string())
}

fn guard<F: FnOnce() -> PolyrotStatus>(f: F) -> PolyrotStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(PolyrotStatus::Panic, msg)
        }
    }
}

unsafe fn slice<'a, T>(ptr: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

fn complexes(items: &[PolyrotComplex]) -> Vec<Complex64> {
    items.iter().map(|&c| c.into()).collect()
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(PolyrotStatus::NullPointer, concat!("null pointer: ", stringify!($p)));
        })+
    };
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_error(e),
        }
    };
}

impl PolyrotPolynomial {
    fn new(poly: Polynomial) -> Self {
        PolyrotPolynomial { poly, zones: OnceLock::new() }
    }

    fn zones(&self) -> polyrot::Result<&ZoneSummary> {
        if let Some(z) = self.zones.get() {
            return Ok(z);
        }
        let z = roots::classify_zeros(&self.poly, &RootSolveConfig::default())?;
        Ok(self.zones.get_or_init(|| z))
    }

    fn context(&self) -> polyrot::Result<BoundContext> {
        Ok(BoundContext::with_zones(self.poly.clone(), self.zones()?.clone()))
    }
}

/// Copies the last error message of this thread into `buf` (nul-terminated,
/// truncated to `len`). Returns the length the full message needs including
/// the terminator, or 0 when there is no error.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn polyrot_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match &*e.borrow() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes_with_nul();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len);
                ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n - 1) = 0;
            }
            bytes.len()
        }
    })
}

/// Builds a polynomial from `len` coefficients, constant term first.
///
/// # Safety
/// `coeffs` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_polynomial_new(
    coeffs: *const PolyrotComplex,
    len: usize,
    out: *mut *mut PolyrotPolynomial,
) -> PolyrotStatus {
    guard(|| {
        non_null!(out);
        let Some(c) = slice(coeffs, len) else {
            return fail(PolyrotStatus::NullPointer, "null coefficient array");
        };
        let p = try_ffi!(Polynomial::new(complexes(c)));
        *out = Box::into_raw(Box::new(PolyrotPolynomial::new(p)));
        PolyrotStatus::Ok
    })
}

/// Builds `leading · ∏ (z - roots[k])`.
///
/// # Safety
/// `roots` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_polynomial_from_roots(
    leading: PolyrotComplex,
    roots: *const PolyrotComplex,
    len: usize,
    out: *mut *mut PolyrotPolynomial,
) -> PolyrotStatus {
    guard(|| {
        non_null!(out);
        let Some(r) = slice(roots, len) else {
            return fail(PolyrotStatus::NullPointer, "null root array");
        };
        let rf = try_ffi!(RootForm::new(leading.into(), complexes(r)));
        let p = try_ffi!(rf.to_polynomial());
        *out = Box::into_raw(Box::new(PolyrotPolynomial::new(p)));
        PolyrotStatus::Ok
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn polyrot_polynomial_free(p: *mut PolyrotPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polyrot_polynomial_degree(p: *const PolyrotPolynomial) -> usize {
    p.as_ref().map_or(0, |h| h.poly.degree())
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_polynomial_eval(
    p: *const PolyrotPolynomial,
    z: PolyrotComplex,
    out: *mut PolyrotComplex,
) -> PolyrotStatus {
    guard(|| {
        non_null!(p, out);
        *out = (*p).poly.eval(z.into()).into();
        PolyrotStatus::Ok
    })
}

unsafe fn at_point(
    p: *const PolyrotPolynomial,
    out: *mut f64,
    f: impl FnOnce(&PolyrotPolynomial) -> polyrot::Result<f64>,
) -> PolyrotStatus {
    guard(|| {
        non_null!(p, out);
        *out = try_ffi!(f(&*p));
        PolyrotStatus::Ok
    })
}

/// `Re(z P'(z) / P(z))` at `z = e^{iθ}`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_rotation_speed(p: *const PolyrotPolynomial, theta: f64, out: *mut f64) -> PolyrotStatus {
    at_point(p, out, |h| h.poly.rotation_speed(UnitCirclePoint::new(theta)))
}

/// `Λ = 2 Re(z P'/P) - n` at `z = e^{iθ}`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_lambda(p: *const PolyrotPolynomial, theta: f64, out: *mut f64) -> PolyrotStatus {
    at_point(p, out, |h| Ok(bounds::lambda_at(&h.poly, UnitCirclePoint::new(theta))?.0))
}

/// `(|c_n| - |c_0|) / (|c_n| + |c_0|)`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_bound_coefficient(p: *const PolyrotPolynomial, out: *mut f64) -> PolyrotStatus {
    at_point(p, out, |h| Ok(bounds::bound_coefficient(&h.poly)))
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_bound_sqrt_weak(p: *const PolyrotPolynomial, out: *mut f64) -> PolyrotStatus {
    at_point(p, out, |h| Ok(bounds::bound_sqrt_weak(&h.poly)))
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_bound_value_thm1(p: *const PolyrotPolynomial, theta: f64, out: *mut f64) -> PolyrotStatus {
    at_point(p, out, |h| {
        let pt = UnitCirclePoint::new(theta);
        let lam = bounds::lambda_at(&h.poly, pt)?;
        bounds::bound_value_thm1(&h.poly, pt, lam)
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_bound_coeff2_thm2(p: *const PolyrotPolynomial, out: *mut f64) -> PolyrotStatus {
    at_point(p, out, |h| Ok(bounds::bound_coeff2_thm2(&h.poly)))
}

/// `tan(β/2) / tan(α/2)` after checking that the arc of half-width `alpha`
/// around `θ` is zero-free and turns by at most `beta`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_bound_arc_thm3(
    p: *const PolyrotPolynomial,
    theta: f64,
    alpha: f64,
    beta: f64,
    out: *mut f64,
) -> PolyrotStatus {
    at_point(p, out, |h| bounds::bound_arc_thm3(&h.poly, UnitCirclePoint::new(theta), alpha, beta))
}

/// Upper bound on the rotation speed when no zero lies in the open disk.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_upper_bound_zero_free(
    p: *const PolyrotPolynomial,
    theta: f64,
    out: *mut f64,
) -> PolyrotStatus {
    at_point(p, out, |h| bounds::upper_bound_zero_free(&h.poly, UnitCirclePoint::new(theta)))
}

/// Central difference of the unwrapped phase with step `h`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_arg_derivative_fd(
    p: *const PolyrotPolynomial,
    theta: f64,
    h: f64,
    out: *mut f64,
) -> PolyrotStatus {
    at_point(p, out, |hd| oracle::arg_derivative_fd(&hd.poly, theta, h))
}

/// Sup of `|Δ arg P|` over sub-arcs through the center of the arc, with
/// `samples` steps per side (0 selects the default).
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_arc_increment(
    p: *const PolyrotPolynomial,
    center: f64,
    half_width: f64,
    samples: usize,
    out: *mut f64,
) -> PolyrotStatus {
    at_point(p, out, |h| {
        let arc = if samples == 0 {
            ArcSpec::new(center, half_width)?
        } else {
            ArcSpec::with_samples(center, half_width, samples)?
        };
        oracle::arc_increment_with_zeros(&h.poly, &arc, &h.zones()?.roots)
    })
}

/// Writes all `n` zeros to `buf`. `out_len` receives `n` even when the
/// buffer is too small, in which case nothing is written.
///
/// # Safety
/// `p` must be a live handle, `buf` valid for `cap` values, `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_find_roots(
    p: *const PolyrotPolynomial,
    buf: *mut PolyrotComplex,
    cap: usize,
    out_len: *mut usize,
) -> PolyrotStatus {
    guard(|| {
        non_null!(p, out_len);
        let zeros = &try_ffi!((*p).zones()).roots;
        *out_len = zeros.len();
        if cap < zeros.len() {
            return fail(PolyrotStatus::BufferTooSmall, format!("need room for {} roots", zeros.len()));
        }
        non_null!(buf);
        for (k, &z) in zeros.iter().enumerate() {
            *buf.add(k) = z.into();
        }
        PolyrotStatus::Ok
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_classify(p: *const PolyrotPolynomial, out: *mut PolyrotZones) -> PolyrotStatus {
    guard(|| {
        non_null!(p, out);
        let z = try_ffi!((*p).zones());
        *out = PolyrotZones {
            inside: z.inside,
            on_circle: z.on_circle,
            outside: z.outside,
            all_in_closed_disk: z.all_in_closed_disk,
            all_on_circle: z.all_on_circle,
            none_inside_open_disk: z.none_inside_open_disk,
        };
        PolyrotStatus::Ok
    })
}

fn report_options(arc_alpha: f64) -> ReportOptions {
    let opts = ReportOptions::default();
    if arc_alpha.is_nan() {
        opts
    } else {
        opts.with_arc(arc_alpha)
    }
}

/// Every applicable bound at `θ`. Pass NaN as `arc_alpha` to skip the arc
/// bound.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_full_report(
    p: *const PolyrotPolynomial,
    theta: f64,
    arc_alpha: f64,
    out: *mut PolyrotBoundReport,
) -> PolyrotStatus {
    guard(|| {
        non_null!(p, out);
        let ctx = try_ffi!((*p).context());
        let r = try_ffi!(ctx.report(UnitCirclePoint::new(theta), &report_options(arc_alpha)));
        let mut c = PolyrotBoundReport {
            theta: r.theta,
            lambda: r.lambda.0,
            rotation_speed: r.rotation_speed,
            bounds: [f64::NAN; POLYROT_BOUND_COUNT],
            margins: [f64::NAN; POLYROT_BOUND_COUNT],
            flags: [-1; POLYROT_BOUND_COUNT],
        };
        for (k, kind) in BoundKind::ALL.into_iter().enumerate() {
            c.bounds[k] = r.bounds.get(kind).unwrap_or(f64::NAN);
            c.margins[k] = r.margins.get(kind).unwrap_or(f64::NAN);
            c.flags[k] = r.flags.get(kind).map_or(-1, i8::from);
        }
        *out = c;
        PolyrotStatus::Ok
    })
}

/// The full report at `θ` as a JSON string; release it with
/// [`polyrot_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_report_json(
    p: *const PolyrotPolynomial,
    theta: f64,
    arc_alpha: f64,
    out: *mut *mut c_char,
) -> PolyrotStatus {
    guard(|| {
        non_null!(p, out);
        let ctx = try_ffi!((*p).context());
        let r = try_ffi!(ctx.report(UnitCirclePoint::new(theta), &report_options(arc_alpha)));
        let json = serde_json::to_string(&r).expect("report serializes");
        *out = CString::new(json).expect("json has no nul").into_raw();
        PolyrotStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn polyrot_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `P(z) / ∏ (z - poles[k])` with every pole outside the closed disk.
///
/// # Safety
/// `numerator` and `poles` must point to their lengths; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_rational_new(
    numerator: *const PolyrotComplex,
    numerator_len: usize,
    poles: *const PolyrotComplex,
    poles_len: usize,
    out: *mut *mut PolyrotRational,
) -> PolyrotStatus {
    guard(|| {
        non_null!(out);
        let (Some(num), Some(pl)) = (slice(numerator, numerator_len), slice(poles, poles_len)) else {
            return fail(PolyrotStatus::NullPointer, "null array");
        };
        let p = try_ffi!(Polynomial::new_allowing_constant(complexes(num)));
        let r = try_ffi!(RationalFunction::new(p, complexes(pl)));
        let checker = try_ffi!(RationalChecker::new(r));
        *out = Box::into_raw(Box::new(PolyrotRational { checker }));
        PolyrotStatus::Ok
    })
}

/// # Safety
/// `r` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn polyrot_rational_free(r: *mut PolyrotRational) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Lower and upper rotation bounds for the rational function at `θ`.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyrot_rational_check(
    r: *const PolyrotRational,
    theta: f64,
    tolerance: f64,
    out: *mut PolyrotRationalReport,
) -> PolyrotStatus {
    guard(|| {
        non_null!(r, out);
        if tolerance.is_nan() || tolerance <= 0.0 {
            return fail(PolyrotStatus::InvalidArgument, "tolerance must be positive");
        }
        let rep = try_ffi!((*r).checker.check(UnitCirclePoint::new(theta), tolerance));
        let margin = |c: &Option<polyrot::check::InequalityCheck>| c.as_ref().map_or(f64::NAN, |c| c.margin);
        let holds = |c: &Option<polyrot::check::InequalityCheck>| c.as_ref().map_or(-1, |c| i8::from(c.holds));
        *out = PolyrotRationalReport {
            theta: rep.theta,
            arg_derivative: rep.arg_derivative,
            rhs: rep.rhs,
            lower_margin: margin(&rep.lower),
            upper_margin: margin(&rep.upper),
            lower_holds: holds(&rep.lower),
            upper_holds: holds(&rep.upper),
        };
        PolyrotStatus::Ok
    })
}
