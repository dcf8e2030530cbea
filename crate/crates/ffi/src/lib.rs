//! C ABI over `entclone`.
//!
//! States cross the boundary as opaque `EcDensity` handles owned by the
//! caller and released with `ec_density_free`. Every fallible call returns an
//! `EcStatus`; on failure `ec_last_error_message` describes the error for the
//! calling thread. Strings returned by the library are released with
//! `ec_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use entclone::cli::{format_csv, sweep, RunConfig};
use entclone::{
    bell_state, bmax, bmax_numeric, chsh_value, concurrence, density_from_pure,
    entanglement_interval, entanglement_of_formation, iterate, min_pt_eigenvalue,
    planar_pi4_config, validate_density, BellKind, CloneScheme, Complex, ComplexMatrix,
    DensityMatrix, Error, Scheme,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotHermitian = 3,
    BadTrace = 4,
    NotPsd = 5,
    BadDimension = 6,
    NoConvergence = 7,
    Parse = 8,
    Internal = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EcBellKind {
    PsiMinus = 0,
    PsiPlus = 1,
    PhiMinus = 2,
    PhiPlus = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EcScheme {
    Pure = 0,
    Local = 1,
    NonLocal = 2,
}

/// Opaque validated density matrix.
pub struct EcDensity {
    inner: DensityMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> EcStatus {
    match e {
        Error::NotHermitian { .. } => EcStatus::NotHermitian,
        Error::BadTrace { .. } => EcStatus::BadTrace,
        Error::NotPsd { .. } => EcStatus::NotPsd,
        Error::BadDimension { .. } => EcStatus::BadDimension,
        Error::NoConvergence { .. } => EcStatus::NoConvergence,
        Error::Parse(_) => EcStatus::Parse,
        Error::OutOfRange { .. } | Error::NotNormalized { .. } | Error::NonFinite { .. } => {
            EcStatus::InvalidArgument
        }
        Error::NotXShape { .. } | Error::RemixMismatch { .. } => EcStatus::Internal,
    }
}

/// Runs `f`, mapping errors and panics to a status and recording the message.
fn guard(f: impl FnOnce() -> Result<(), (EcStatus, String)>) -> EcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            EcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside entclone");
            EcStatus::Panic
        }
    }
}

fn lib(e: Error) -> (EcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (EcStatus, String) {
    (EcStatus::NullPointer, format!("{name} is null"))
}

unsafe fn density<'a>(h: *const EcDensity) -> Result<&'a DensityMatrix, (EcStatus, String)> {
    h.as_ref()
        .map(|d| &d.inner)
        .ok_or_else(|| null("density handle"))
}

unsafe fn hand_out(out: *mut *mut EcDensity, rho: DensityMatrix) {
    *out = Box::into_raw(Box::new(EcDensity { inner: rho }));
}

unsafe fn write_f64(out: *mut f64, value: f64) -> Result<(), (EcStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = value;
    Ok(())
}

impl From<EcBellKind> for BellKind {
    fn from(k: EcBellKind) -> Self {
        match k {
            EcBellKind::PsiMinus => BellKind::PsiMinus,
            EcBellKind::PsiPlus => BellKind::PsiPlus,
            EcBellKind::PhiMinus => BellKind::PhiMinus,
            EcBellKind::PhiPlus => BellKind::PhiPlus,
        }
    }
}

impl From<EcScheme> for Scheme {
    fn from(s: EcScheme) -> Self {
        match s {
            EcScheme::Pure => Scheme::Pure,
            EcScheme::Local => Scheme::Local,
            EcScheme::NonLocal => Scheme::NonLocal,
        }
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ec_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next `ec_*` call on the same thread.
#[no_mangle]
pub extern "C" fn ec_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Projector onto a Bell-basis state with amplitude `alpha` in [0, 1].
#[no_mangle]
pub unsafe extern "C" fn ec_density_bell(
    kind: EcBellKind,
    alpha: f64,
    out: *mut *mut EcDensity,
) -> EcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let psi = bell_state(kind.into(), alpha).map_err(lib)?;
        hand_out(out, density_from_pure(&psi));
        Ok(())
    })
}

/// Validates a `dim`×`dim` row-major matrix given as separate real and
/// imaginary parts. `im` may be null for a real matrix.
#[no_mangle]
pub unsafe extern "C" fn ec_density_from_entries(
    dim: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut EcDensity,
) -> EcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if re.is_null() {
            return Err(null("re"));
        }
        let n = dim
            .checked_mul(dim)
            .filter(|&n| n > 0)
            .ok_or((EcStatus::BadDimension, format!("bad dimension {dim}")))?;
        let re = std::slice::from_raw_parts(re, n);
        let entries: Vec<Complex> = if im.is_null() {
            re.iter().map(|&x| Complex::new(x, 0.0)).collect()
        } else {
            let im = std::slice::from_raw_parts(im, n);
            re.iter()
                .zip(im)
                .map(|(&a, &b)| Complex::new(a, b))
                .collect()
        };
        let m = ComplexMatrix::new(dim, entries).map_err(lib)?;
        hand_out(out, validate_density(&m).map_err(lib)?);
        Ok(())
    })
}

/// Parses `{ "dim": d, "re": [[..]], "im": [[..]] }` and validates it.
#[no_mangle]
pub unsafe extern "C" fn ec_density_from_json(
    json: *const c_char,
    out: *mut *mut EcDensity,
) -> EcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (EcStatus::Parse, e.to_string()))?;
        hand_out(out, DensityMatrix::from_json(text).map_err(lib)?);
        Ok(())
    })
}

/// Serializes a state to the JSON file format. Free with `ec_string_free`.
/// Returns null on a null handle.
#[no_mangle]
pub unsafe extern "C" fn ec_density_to_json(h: *const EcDensity) -> *mut c_char {
    match h.as_ref() {
        Some(d) => CString::new(d.inner.to_json())
            .map(CString::into_raw)
            .unwrap_or(ptr::null_mut()),
        None => {
            set_error("density handle is null");
            ptr::null_mut()
        }
    }
}

#[no_mangle]
pub unsafe extern "C" fn ec_density_free(h: *mut EcDensity) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Matrix dimension, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn ec_density_dim(h: *const EcDensity) -> usize {
    h.as_ref().map_or(0, |d| d.inner.dim())
}

/// Copies the row-major entries into `re` and `im`, each of length `len`
/// (at least dim²).
#[no_mangle]
pub unsafe extern "C" fn ec_density_entries(
    h: *const EcDensity,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> EcStatus {
    guard(|| {
        let rho = density(h)?;
        if re.is_null() || im.is_null() {
            return Err(null("output buffer"));
        }
        let entries = rho.matrix().entries();
        if len < entries.len() {
            return Err((
                EcStatus::InvalidArgument,
                format!("buffer holds {len} entries, need {}", entries.len()),
            ));
        }
        for (k, z) in entries.iter().enumerate() {
            *re.add(k) = z.re;
            *im.add(k) = z.im;
        }
        Ok(())
    })
}

/// Applies `steps` cloning steps of `scheme` (local or non-local) to a
/// two-qubit state. `steps == 0` returns a copy. `EC_SCHEME_PURE` is
/// rejected unless `steps == 0`.
#[no_mangle]
pub unsafe extern "C" fn ec_clone(
    h: *const EcDensity,
    scheme: EcScheme,
    steps: usize,
    out: *mut *mut EcDensity,
) -> EcStatus {
    guard(|| {
        let rho = density(h)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cloner = match Scheme::from(scheme).cloner() {
            Some(c) => c,
            None if steps == 0 => CloneScheme::NonLocal,
            None => {
                return Err((
                    EcStatus::InvalidArgument,
                    "the pure scheme has no cloning step".into(),
                ))
            }
        };
        let seq = iterate(rho, cloner, steps).map_err(lib)?;
        hand_out(out, seq.last().clone());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ec_min_pt_eigenvalue(h: *const EcDensity, out: *mut f64) -> EcStatus {
    guard(|| write_f64(out, min_pt_eigenvalue(density(h)?).map_err(lib)?))
}

#[no_mangle]
pub unsafe extern "C" fn ec_concurrence(h: *const EcDensity, out: *mut f64) -> EcStatus {
    guard(|| write_f64(out, concurrence(density(h)?).map_err(lib)?.concurrence))
}

#[no_mangle]
pub unsafe extern "C" fn ec_entanglement_of_formation(
    h: *const EcDensity,
    out: *mut f64,
) -> EcStatus {
    guard(|| write_f64(out, entanglement_of_formation(density(h)?).map_err(lib)?))
}

/// Closed-form maximal CHSH value.
#[no_mangle]
pub unsafe extern "C" fn ec_bmax(h: *const EcDensity, out: *mut f64) -> EcStatus {
    guard(|| write_f64(out, bmax(density(h)?).map_err(lib)?))
}

/// Maximal CHSH value by seeded random-restart search.
#[no_mangle]
pub unsafe extern "C" fn ec_bmax_numeric(
    h: *const EcDensity,
    restarts: usize,
    seed: u64,
    out: *mut f64,
) -> EcStatus {
    guard(|| write_f64(out, bmax_numeric(density(h)?, restarts, seed).map_err(lib)?))
}

/// CHSH value for the coplanar π/4 measurement configuration.
#[no_mangle]
pub unsafe extern "C" fn ec_chsh_pi4(h: *const EcDensity, out: *mut f64) -> EcStatus {
    guard(|| {
        write_f64(
            out,
            chsh_value(density(h)?, &planar_pi4_config()).map_err(lib)?,
        )
    })
}

/// α² endpoints of the range where the scheme's output on |Ψ⁻(α)⟩ is
/// entangled, located to within `tol`.
#[no_mangle]
pub unsafe extern "C" fn ec_entanglement_interval(
    scheme: EcScheme,
    tol: f64,
    low: *mut f64,
    high: *mut f64,
) -> EcStatus {
    guard(|| {
        if low.is_null() || high.is_null() {
            return Err(null("output pointer"));
        }
        let iv = entanglement_interval(scheme.into(), tol).map_err(lib)?;
        *low = iv.low;
        *high = iv.high;
        Ok(())
    })
}

/// EoF of the singlet after 0..=steps non-local cloning steps, written to
/// `out[0..=steps]`; `len` must be at least `steps + 1`.
#[no_mangle]
pub unsafe extern "C" fn ec_table1(steps: usize, out: *mut f64, len: usize) -> EcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if len < steps + 1 {
            return Err((
                EcStatus::InvalidArgument,
                format!("buffer holds {len} values, need {}", steps + 1),
            ));
        }
        let values = entclone::cli::table1(steps).map_err(lib)?;
        for (k, v) in values.iter().enumerate() {
            *out.add(k) = *v;
        }
        Ok(())
    })
}

/// Sweep CSV (same bytes as the `sweep` subcommand) over `grid` points.
/// Free with `ec_string_free`. Returns null on failure.
#[no_mangle]
pub extern "C" fn ec_sweep_csv(scheme: EcScheme, grid: usize, iterations: usize) -> *mut c_char {
    let mut text = None;
    let status = guard(|| {
        let cfg = RunConfig {
            scheme: scheme.into(),
            grid_points: grid,
            iterations,
            alpha: None,
        };
        let rows = sweep(&cfg).map_err(lib)?;
        text = Some(format_csv(&rows));
        Ok(())
    });
    match (status, text) {
        (EcStatus::Ok, Some(t)) => CString::new(t)
            .map(CString::into_raw)
            .unwrap_or(ptr::null_mut()),
        _ => ptr::null_mut(),
    }
}
