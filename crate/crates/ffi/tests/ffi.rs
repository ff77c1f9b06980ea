use std::ffi::{c_char, CStr};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use polyrot_ffi::*;

fn c(re: f64, im: f64) -> PolyrotComplex {
    PolyrotComplex { re, im }
}

fn poly(coeffs: &[PolyrotComplex]) -> *mut PolyrotPolynomial {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { polyrot_polynomial_new(coeffs.as_ptr(), coeffs.len(), &mut p) }, PolyrotStatus::Ok);
    p
}

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let n = unsafe { polyrot_last_error(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn scalar_quantities() {
    let p = poly(&[c(-0.5, 0.0), c(1.0, 0.0)]);
    let mut v = 0.0;
    unsafe {
        assert_eq!(polyrot_polynomial_degree(p), 1);
        assert_eq!(polyrot_rotation_speed(p, 0.0, &mut v), PolyrotStatus::Ok);
        assert!((v - 2.0).abs() < 1e-12);
        assert_eq!(polyrot_lambda(p, std::f64::consts::PI, &mut v), PolyrotStatus::Ok);
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(polyrot_bound_coefficient(p, &mut v), PolyrotStatus::Ok);
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(polyrot_bound_sqrt_weak(p, &mut v), PolyrotStatus::Ok);
        assert_eq!(polyrot_bound_coeff2_thm2(p, &mut v), PolyrotStatus::Ok);
        assert_eq!(polyrot_bound_value_thm1(p, 1.0, &mut v), PolyrotStatus::Ok);
        assert_eq!(polyrot_arg_derivative_fd(p, 0.0, 1e-5, &mut v), PolyrotStatus::Ok);
        assert!((v - 2.0).abs() < 1e-6);
        assert_eq!(polyrot_arc_increment(p, 0.0, 0.5, 0, &mut v), PolyrotStatus::Ok);
        assert!(v > 0.0);
        assert_eq!(polyrot_bound_arc_thm3(p, 0.0, 0.5, 1.5, &mut v), PolyrotStatus::Ok);
        assert_eq!(polyrot_upper_bound_zero_free(p, 0.0, &mut v), PolyrotStatus::HypothesisViolated);
        let mut w = c(0.0, 0.0);
        assert_eq!(polyrot_polynomial_eval(p, c(2.0, 0.0), &mut w), PolyrotStatus::Ok);
        assert_eq!(w, c(1.5, 0.0));
        polyrot_polynomial_free(p);
    }
}

#[test]
fn roots_zones_and_reports() {
    let mut p = ptr::null_mut();
    let roots = [c(0.5, 0.0), c(0.0, -0.25), c(-1.0, 0.0)];
    unsafe {
        assert_eq!(polyrot_polynomial_from_roots(c(2.0, 0.0), roots.as_ptr(), 3, &mut p), PolyrotStatus::Ok);
        let mut n = 0usize;
        assert_eq!(polyrot_find_roots(p, ptr::null_mut(), 0, &mut n), PolyrotStatus::BufferTooSmall);
        assert_eq!(n, 3);
        let mut buf = [c(0.0, 0.0); 3];
        assert_eq!(polyrot_find_roots(p, buf.as_mut_ptr(), 3, &mut n), PolyrotStatus::Ok);
        for r in roots {
            assert!(buf.iter().any(|b| (b.re - r.re).hypot(b.im - r.im) < 1e-10));
        }
        let mut z = PolyrotZones::default();
        assert_eq!(polyrot_classify(p, &mut z), PolyrotStatus::Ok);
        assert_eq!((z.inside, z.on_circle, z.outside), (2, 1, 0));
        assert!(z.all_in_closed_disk && !z.all_on_circle);

        let mut rep = std::mem::MaybeUninit::<PolyrotBoundReport>::uninit();
        assert_eq!(polyrot_full_report(p, 1.0, f64::NAN, rep.as_mut_ptr()), PolyrotStatus::Ok);
        let rep = rep.assume_init();
        assert!(rep.flags[..5].iter().all(|&f| f == 1));
        assert_eq!(rep.flags[5], -1);
        assert!(rep.bounds[5].is_nan());

        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(polyrot_report_json(p, 1.0, 0.3, &mut s), PolyrotStatus::Ok);
        let json = CStr::from_ptr(s).to_str().unwrap().to_owned();
        polyrot_string_free(s);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!((v["lambda"].as_f64().unwrap() - rep.lambda).abs() < 1e-15);
        assert!(v["bounds"]["arc_thm3"].is_number());
        polyrot_polynomial_free(p);
    }
}

#[test]
fn errors_and_messages() {
    unsafe {
        let zero = [c(1.0, 0.0), c(0.0, 0.0)];
        let mut p = ptr::null_mut();
        assert_eq!(polyrot_polynomial_new(zero.as_ptr(), 2, &mut p), PolyrotStatus::InvalidPolynomial);
        assert!(p.is_null());
        assert!(last_error().contains("invalid polynomial"));

        assert_eq!(polyrot_polynomial_new(ptr::null(), 2, &mut p), PolyrotStatus::NullPointer);
        let mut v = 0.0;
        assert_eq!(polyrot_lambda(ptr::null(), 0.0, &mut v), PolyrotStatus::NullPointer);

        let q = poly(&[c(-1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(polyrot_rotation_speed(q, 0.0, &mut v), PolyrotStatus::ZeroProximity);
        assert!(last_error().contains("zero-proximity"));
        assert_eq!(polyrot_arg_derivative_fd(q, 1.0, 0.5, &mut v), PolyrotStatus::InvalidArgument);

        // truncation keeps a terminator and reports the full size
        let mut tiny = [0 as c_char; 4];
        let need = polyrot_last_error(tiny.as_mut_ptr(), tiny.len());
        assert!(need > 4);
        assert_eq!(tiny[3], 0);
        polyrot_polynomial_free(q);
        polyrot_polynomial_free(ptr::null_mut());
    }
}

#[test]
fn rational_handle() {
    let num = [c(1.0, 0.0), c(-2.0, 0.0)];
    let poles = [c(2.0, 0.0)];
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(polyrot_rational_new(num.as_ptr(), 2, poles.as_ptr(), 1, &mut r), PolyrotStatus::Ok);
        let mut rep = std::mem::MaybeUninit::<PolyrotRationalReport>::uninit();
        assert_eq!(polyrot_rational_check(r, 0.0, 1e-9, rep.as_mut_ptr()), PolyrotStatus::Ok);
        let rep = rep.assume_init();
        assert!((rep.arg_derivative - 3.0).abs() < 1e-12);
        assert_eq!(rep.lower_holds, 1);
        assert_eq!(rep.upper_holds, -1);
        assert!(rep.upper_margin.is_nan());
        polyrot_rational_free(r);

        let on_circle = [c(0.0, 1.0)];
        assert_eq!(
            polyrot_rational_new(num.as_ptr(), 2, on_circle.as_ptr(), 1, &mut r),
            PolyrotStatus::PoleOnCircle
        );
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header() {
    let lib = target_dir().join("libpolyrot_ffi.a");
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join(format!("polyrot_smoke_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "smoke program exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}

fn which_cc() -> Result<String, ()> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    match Command::new(&cc).arg("--version").output() {
        Ok(o) if o.status.success() => Ok(cc),
        _ => Err(()),
    }
}
