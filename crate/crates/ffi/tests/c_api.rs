use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use entclone_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ec_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn bell(kind: EcBellKind, alpha: f64) -> *mut EcDensity {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { ec_density_bell(kind, alpha, &mut h) },
        EcStatus::Ok
    );
    assert!(!h.is_null());
    h
}

fn scalar(
    f: unsafe extern "C" fn(*const EcDensity, *mut f64) -> EcStatus,
    h: *const EcDensity,
) -> f64 {
    let mut x = f64::NAN;
    assert_eq!(unsafe { f(h, &mut x) }, EcStatus::Ok);
    x
}

#[test]
fn version_is_crate_version() {
    let v = unsafe { CStr::from_ptr(ec_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn singlet_quantities() {
    let h = bell(EcBellKind::PsiMinus, 0.5f64.sqrt());
    assert_eq!(unsafe { ec_density_dim(h) }, 4);
    assert!((scalar(ec_min_pt_eigenvalue, h) + 0.5).abs() < 1e-12);
    assert!((scalar(ec_concurrence, h) - 1.0).abs() < 1e-9);
    assert!((scalar(ec_entanglement_of_formation, h) - 1.0).abs() < 1e-9);
    assert!((scalar(ec_bmax, h) - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    assert!((scalar(ec_chsh_pi4, h) - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    let mut searched = 0.0;
    assert_eq!(
        unsafe { ec_bmax_numeric(h, 16, 5, &mut searched) },
        EcStatus::Ok
    );
    assert!((searched - 2.0 * 2f64.sqrt()).abs() < 1e-6);

    let mut re = [0.0; 16];
    let mut im = [0.0; 16];
    assert_eq!(
        unsafe { ec_density_entries(h, re.as_mut_ptr(), im.as_mut_ptr(), 16) },
        EcStatus::Ok
    );
    assert!((re[5] - 0.5).abs() < 1e-15 && (re[6] + 0.5).abs() < 1e-15);
    assert_eq!(
        unsafe { ec_density_entries(h, re.as_mut_ptr(), im.as_mut_ptr(), 15) },
        EcStatus::InvalidArgument
    );
    unsafe { ec_density_free(h) };
}

#[test]
fn cloning_through_handles() {
    let h = bell(EcBellKind::PsiMinus, 0.5f64.sqrt());
    let mut once = ptr::null_mut();
    assert_eq!(
        unsafe { ec_clone(h, EcScheme::NonLocal, 1, &mut once) },
        EcStatus::Ok
    );
    assert!((scalar(ec_bmax, once) - 6.0 * 2f64.sqrt() / 5.0).abs() < 1e-12);
    let mut local = ptr::null_mut();
    assert_eq!(
        unsafe { ec_clone(h, EcScheme::Local, 1, &mut local) },
        EcStatus::Ok
    );
    assert!((scalar(ec_bmax, local) - 8.0 * 2f64.sqrt() / 9.0).abs() < 1e-12);
    let mut thrice = ptr::null_mut();
    assert_eq!(
        unsafe { ec_clone(h, EcScheme::NonLocal, 3, &mut thrice) },
        EcStatus::Ok
    );
    assert_eq!(scalar(ec_entanglement_of_formation, thrice), 0.0);

    let mut bad = ptr::null_mut();
    assert_eq!(
        unsafe { ec_clone(h, EcScheme::Pure, 1, &mut bad) },
        EcStatus::InvalidArgument
    );
    assert!(bad.is_null());
    assert!(!last_error().is_empty());

    unsafe {
        ec_density_free(thrice);
        ec_density_free(local);
        ec_density_free(once);
        ec_density_free(h);
    }
}

#[test]
fn null_pointers_are_reported() {
    let mut x = 0.0;
    assert_eq!(
        unsafe { ec_bmax(ptr::null(), &mut x) },
        EcStatus::NullPointer
    );
    assert!(last_error().contains("null"));
    let h = bell(EcBellKind::PhiPlus, 0.3);
    assert_eq!(
        unsafe { ec_concurrence(h, ptr::null_mut()) },
        EcStatus::NullPointer
    );
    assert_eq!(
        unsafe { ec_density_bell(EcBellKind::PhiPlus, 0.3, ptr::null_mut()) },
        EcStatus::NullPointer
    );
    assert_eq!(unsafe { ec_density_dim(ptr::null()) }, 0);
    assert!(unsafe { ec_density_to_json(ptr::null()) }.is_null());
    unsafe {
        ec_density_free(ptr::null_mut());
        ec_string_free(ptr::null_mut());
        ec_density_free(h);
    }
}

#[test]
fn bad_arguments() {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { ec_density_bell(EcBellKind::PsiMinus, 1.5, &mut h) },
        EcStatus::InvalidArgument
    );
    assert!(h.is_null());

    let (mut lo, mut hi) = (0.0, 0.0);
    assert_eq!(
        unsafe { ec_entanglement_interval(EcScheme::NonLocal, 0.0, &mut lo, &mut hi) },
        EcStatus::InvalidArgument
    );
    assert!(ec_sweep_csv(EcScheme::Pure, 1, 0).is_null());
    assert!(ec_sweep_csv(EcScheme::Pure, 11, 2).is_null());
}

#[test]
fn entries_validation() {
    let mut h = ptr::null_mut();
    let not_psd = [
        -2.0 / 36.0,
        0.0,
        0.0,
        0.0,
        0.0,
        13.0 / 36.0,
        5.0 / 36.0,
        0.0,
        0.0,
        5.0 / 36.0,
        13.0 / 36.0,
        0.0,
        0.0,
        0.0,
        0.0,
        -2.0 / 36.0,
    ];
    assert_eq!(
        unsafe { ec_density_from_entries(4, not_psd.as_ptr(), ptr::null(), &mut h) },
        EcStatus::NotPsd
    );
    assert!(last_error().contains("eigenvalue"));

    let mut asym = [0.0; 4];
    asym[0] = 0.5;
    asym[3] = 0.5;
    asym[1] = 0.2;
    assert_eq!(
        unsafe { ec_density_from_entries(2, asym.as_ptr(), ptr::null(), &mut h) },
        EcStatus::NotHermitian
    );
    let half = [0.25, 0.0, 0.0, 0.25];
    assert_eq!(
        unsafe { ec_density_from_entries(2, half.as_ptr(), ptr::null(), &mut h) },
        EcStatus::BadTrace
    );
    assert!(h.is_null());

    let qubit = [0.5, 0.0, 0.0, 0.5];
    assert_eq!(
        unsafe { ec_density_from_entries(2, qubit.as_ptr(), ptr::null(), &mut h) },
        EcStatus::Ok
    );
    let mut x = 0.0;
    assert_eq!(unsafe { ec_bmax(h, &mut x) }, EcStatus::BadDimension);
    unsafe { ec_density_free(h) };
}

#[test]
fn json_round_trip() {
    let h = bell(EcBellKind::PhiMinus, 0.6);
    let json = unsafe { ec_density_to_json(h) };
    assert!(!json.is_null());
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { ec_density_from_json(json, &mut back) },
        EcStatus::Ok
    );
    assert!((scalar(ec_concurrence, back) - scalar(ec_concurrence, h)).abs() < 1e-12);
    unsafe {
        ec_string_free(json);
        ec_density_free(back);
        ec_density_free(h);
    }

    let garbage = CString::new("{\"dim\": 4").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { ec_density_from_json(garbage.as_ptr(), &mut out) },
        EcStatus::Parse
    );
    assert!(out.is_null());
}

#[test]
fn interval_table_and_sweep() {
    let (mut lo, mut hi) = (0.0, 0.0);
    assert_eq!(
        unsafe { ec_entanglement_interval(EcScheme::Local, 1e-10, &mut lo, &mut hi) },
        EcStatus::Ok
    );
    assert!((lo - (0.5 - 39f64.sqrt() / 16.0)).abs() < 1e-8);
    assert!((hi - (0.5 + 39f64.sqrt() / 16.0)).abs() < 1e-8);

    let mut eof = [f64::NAN; 4];
    assert_eq!(unsafe { ec_table1(3, eof.as_mut_ptr(), 4) }, EcStatus::Ok);
    assert!((eof[1] - 0.250225).abs() < 1e-4);
    assert!((eof[2] - 0.005094).abs() < 1e-4);
    assert_eq!(
        unsafe { ec_table1(3, eof.as_mut_ptr(), 3) },
        EcStatus::InvalidArgument
    );

    let csv = ec_sweep_csv(EcScheme::NonLocal, 3, 0);
    assert!(!csv.is_null());
    let text = unsafe { CStr::from_ptr(csv) }.to_str().unwrap().to_owned();
    unsafe { ec_string_free(csv) };
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("alpha,chsh_pi4,bmax,eof,min_pt_eig\n0,"));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "entclone.h"

int main(void) {
    EcDensity *h = NULL;
    double c = 0.0, lo = 0.0, hi = 0.0;
    if (ec_density_bell(EC_BELL_KIND_PSI_MINUS, 0.7071067811865476, &h) != EC_STATUS_OK) return 1;
    if (ec_concurrence(h, &c) != EC_STATUS_OK) return 2;
    ec_density_free(h);
    if (ec_entanglement_interval(EC_SCHEME_NON_LOCAL, 1e-9, &lo, &hi) != EC_STATUS_OK) return 3;
    if (ec_bmax(NULL, &lo) != EC_STATUS_NULL_POINTER) return 4;
    printf("%.6f %.6f %.6f\n", c, lo, hi);
    return 0;
}
"#;

/// Compiles a small C client against the generated header and static
/// library. Skipped when no C compiler or static library is available.
#[test]
fn c_client_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let staticlib = profile_dir.join("libentclone_ffi.a");
    if !staticlib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C toolchain or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let bin = dir.path().join("client");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C client failed to build");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "1.000000 0.028595 0.971405\n"
    );
}
