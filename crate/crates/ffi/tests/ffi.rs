use std::f64::consts::FRAC_PI_2;
use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use lorentz_flow_ffi::*;

fn last_error() -> String {
    let p = lf_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn compose_perpendicular_unit_boosts() {
    let mut c = LfComposition::default();
    assert_eq!(
        unsafe { lf_compose(1.0, 1.0, FRAC_PI_2, &mut c) },
        LfStatus::Ok
    );
    assert!((c.lambda - 1.513374006596504).abs() < 1e-13);
    assert!((c.theta - 0.5750061825784119).abs() < 1e-13);
    assert!((c.tau - 0.4207839616380729).abs() < 1e-13);
    assert!((c.invariant - 1.0f64.sinh()).abs() < 1e-13);
}

#[test]
fn errors_map_to_status_codes() {
    let mut c = LfComposition::default();
    assert_eq!(
        unsafe { lf_compose(0.0, 0.0, 1.0, &mut c) },
        LfStatus::Degenerate
    );
    assert_eq!(last_error(), "degenerate: both rapidities zero");
    assert_eq!(c, LfComposition::default());

    assert_eq!(
        unsafe { lf_compose(1.0, -1.0, 1.0, &mut c) },
        LfStatus::InvalidInput
    );
    assert_eq!(
        unsafe { lf_compose(1.0, 1.0, 1.0, ptr::null_mut()) },
        LfStatus::NullPointer
    );

    let mut d = LfDerivative::default();
    assert_eq!(
        unsafe { lf_flow_rhs(1.0, 0.0, 0.0, 0.0, &mut d) },
        LfStatus::NearSingularBeta
    );
    assert!(last_error().contains("near-singular"));
}

#[test]
fn status_messages_are_static() {
    for s in [LfStatus::Ok, LfStatus::Degenerate, LfStatus::Panic] {
        let m = unsafe { CStr::from_ptr(lf_status_message(s)) };
        assert!(!m.to_bytes().is_empty());
    }
    let v = unsafe { CStr::from_ptr(lf_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn boost_and_decompose_round_trip() {
    let mut m = LfMatrix::default();
    assert_eq!(unsafe { lf_boost_matrix(1.3, 0.7, &mut m) }, LfStatus::Ok);
    let mut d = LfDecomposition::default();
    assert_eq!(unsafe { lf_decompose(&m, &mut d) }, LfStatus::Ok);
    assert!((d.lambda - 1.3).abs() < 1e-13);
    assert!((d.theta - 0.7).abs() < 1e-13);
    assert!(d.tau.abs() < 1e-13);
    assert!(!d.negated);

    let bad = LfMatrix {
        a: 2.0,
        b: 0.0,
        c: 0.0,
        d: 2.0,
    };
    assert_eq!(
        unsafe { lf_decompose(&bad, &mut d) },
        LfStatus::NotUnimodular
    );
}

#[test]
fn thomas_angle_and_linearisation() {
    let mut tau = 0.0;
    assert_eq!(
        unsafe { lf_thomas_angle(0.0, 0.0, 1.0, &mut tau) },
        LfStatus::Ok
    );
    assert_eq!(tau, 0.0);
    let dxi = 1e-5;
    assert_eq!(
        unsafe { lf_thomas_angle(dxi, 1.0, FRAC_PI_2, &mut tau) },
        LfStatus::Ok
    );
    assert!((tau - lf_infinitesimal_thomas(1.0, FRAC_PI_2, dxi)).abs() < 1e-10);
}

#[test]
fn trajectory_handle_lifecycle() {
    let mut t: *mut LfTrajectory = ptr::null_mut();
    assert_eq!(
        unsafe { lf_integrate(FRAC_PI_2, 0.6, 0.0, 5.0, 1e-3, &mut t) },
        LfStatus::Ok
    );
    assert!(!t.is_null());
    let n = unsafe { lf_trajectory_len(t) };
    assert_eq!(n, 5001);
    let mut s = LfSample::default();
    assert_eq!(
        unsafe { lf_trajectory_sample(t, n - 1, &mut s) },
        LfStatus::Ok
    );
    assert_eq!(s.xi, 5.0);
    assert!((s.theta - 0.0080857273).abs() < 1e-9);
    assert!((s.tau - 0.6354589660).abs() < 1e-9);
    assert_eq!(
        unsafe { lf_trajectory_sample(t, n, &mut s) },
        LfStatus::IndexOutOfRange
    );
    unsafe { lf_trajectory_free(t) };

    assert_eq!(unsafe { lf_trajectory_len(ptr::null()) }, 0);
    unsafe { lf_trajectory_free(ptr::null_mut()) };

    let mut t: *mut LfTrajectory = ptr::null_mut();
    assert_eq!(
        unsafe { lf_integrate(1.0, 0.5, 0.0, 2.0, 0.5, &mut t) },
        LfStatus::InvalidInput
    );
    assert!(t.is_null());
}

#[test]
fn fixed_points_over_ffi() {
    let mut out = [LfFixedPoint {
        theta: f64::NAN,
        beta: f64::NAN,
        eigenvalues: [f64::NAN; 2],
        stability: LfStability::Saddle,
    }; 4];
    assert_eq!(unsafe { lf_fixed_points(out.as_mut_ptr()) }, LfStatus::Ok);
    let attractive = out
        .iter()
        .filter(|f| f.stability == LfStability::Attractive)
        .count();
    assert_eq!(attractive, 2);
    let origin = out
        .iter()
        .find(|f| f.beta == 1.0 && f.theta == 0.0)
        .unwrap();
    assert_eq!(origin.eigenvalues, [-2.0, -1.0]);
}

#[test]
fn portrait_string_ownership() {
    let mut s: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { lf_render_portrait_default(LfFormat::Csv, &mut s) },
        LfStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap();
    assert!(text.starts_with("kind,id,xi,"));
    unsafe { lf_string_free(s) };
}

#[test]
fn collimation_summary() {
    let mut s = LfCollimationSummary::default();
    assert_eq!(
        unsafe { lf_collimate(2.0, 10_000, LfSampling::UniformCos, 1.0, 42, &mut s) },
        LfStatus::Ok
    );
    assert!(s.fraction_within_inverse_gamma > 0.45 && s.fraction_within_inverse_gamma < 0.55);
    assert!(
        s.tail_fractions[0] <= s.tail_fractions[1] && s.tail_fractions[1] <= s.tail_fractions[2]
    );
    assert!(s.max_route_discrepancy < 1e-12);
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn compiler() -> Option<&'static str> {
    ["cc", "gcc", "clang"].into_iter().find(|c| {
        Command::new(c)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())
    })
}

#[test]
fn header_is_valid_c() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping header check");
        return;
    };
    let header = crate_dir().join("include/lorentz_flow.h");
    assert!(
        header.exists(),
        "build script did not write {}",
        header.display()
    );
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(&header)
        .status()
        .unwrap();
    assert!(status.success());
}

/// Links a small C program against the static library when cargo has built
/// one next to this test binary.
#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping link test");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("liblorentz_flow_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping link test", lib.display());
        return;
    }
    let out = std::env::temp_dir().join(format!("lorentz_flow_smoke_{}", std::process::id()));
    let status = Command::new(cc)
        .args(["-std=c99", "-D_DEFAULT_SOURCE", "-Wall", "-Werror", "-I"])
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke program failed to build");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
