use std::ffi::{CStr, CString};
use std::ptr;

use osserman_ffi::*;

fn last_error() -> String {
    let p = oss_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn constant_curvature_round_trip() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(oss_tensor_constant_curvature(2, 2, -2, 1, &mut t), OssStatus::Ok);
        let mut n = 0;
        assert_eq!(oss_tensor_dimension(t, &mut n), OssStatus::Ok);
        assert_eq!(n, 4);
        let mut bad = usize::MAX;
        assert_eq!(oss_tensor_validate(t, &mut bad), OssStatus::Ok);
        assert_eq!(bad, 0);
        let mut v = OssVerdict::Violated;
        assert_eq!(oss_is_osserman(t, 8, 1, &mut v), OssStatus::Ok);
        assert_eq!(v, OssVerdict::HoldsOnSamples);

        // ℛ_X = k(⟨X,X⟩ I − X ⊗ X♭); at X = e1 with k = -2 the diagonal is (0, -2, -2, -2).
        let x = [1.0, 0.0, 0.0, 0.0];
        let mut a = [f64::NAN; 16];
        assert_eq!(oss_tensor_jacobi_f64(t, x.as_ptr(), 4, a.as_mut_ptr()), OssStatus::Ok);
        let diag: Vec<f64> = (0..4).map(|i| a[i * 4 + i]).collect();
        assert_eq!(diag, vec![0.0, -2.0, -2.0, -2.0]);

        // t(t + 2)^3 at X = e1.
        let xj = CString::new(r#"["1","0","0","0"]"#).unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(oss_tensor_char_poly_json(t, xj.as_ptr(), &mut s), OssStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), r#"["0","8","12","6","1"]"#);
        oss_string_free(s);

        let mut r = ptr::null_mut();
        assert_eq!(oss_report_json(t, 4, 0, &mut r), OssStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(CStr::from_ptr(r).to_str().unwrap()).unwrap();
        assert_eq!(report["report"]["duality"]["verdict"], "holds-on-samples");
        oss_string_free(r);
        oss_tensor_free(t);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut t = ptr::null_mut();
        let bad = CString::new("{ not json").unwrap();
        assert_eq!(oss_tensor_from_json(bad.as_ptr(), &mut t), OssStatus::ParseError);
        assert!(t.is_null());
        assert!(last_error().contains("line 1"));
        assert_eq!(oss_tensor_constant_curvature(2, 0, 1, 0, &mut t), OssStatus::InvalidArgument);
        assert_eq!(oss_tensor_dimension(ptr::null(), &mut 0), OssStatus::NullPointer);
        assert_eq!(oss_tensor_from_json(ptr::null(), &mut t), OssStatus::NullPointer);

        // A tensor violating pair symmetry loads but fails the report.
        let text = CString::new(
            r#"{"convention": "R_ijkl = <R(e_i,e_j)e_k, e_l>", "dimension": 2, "field": "real", "signature": [2, 0],
                "components": [{"i": 1, "j": 2, "k": 2, "l": 1, "value": "1"}]}"#,
        )
        .unwrap();
        assert_eq!(oss_tensor_from_json(text.as_ptr(), &mut t), OssStatus::Ok);
        let mut count = 0;
        assert_eq!(oss_tensor_validate(t, &mut count), OssStatus::Ok);
        assert!(count > 0);
        let mut r = ptr::null_mut();
        assert_eq!(oss_report_json(t, 4, 0, &mut r), OssStatus::InvalidTensor);
        assert!(r.is_null());
        let x = [1.0, 0.0, 0.0];
        let mut a = [0.0; 9];
        assert_eq!(oss_tensor_jacobi_f64(t, x.as_ptr(), 3, a.as_mut_ptr()), OssStatus::InvalidArgument);
        oss_tensor_free(t);
        oss_tensor_free(ptr::null_mut());
        oss_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(oss_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/osserman.h")).unwrap();
    for name in [
        "oss_version",
        "oss_last_error_message",
        "oss_string_free",
        "oss_tensor_from_json",
        "oss_tensor_constant_curvature",
        "oss_tensor_free",
        "oss_tensor_dimension",
        "oss_tensor_validate",
        "oss_tensor_jacobi_f64",
        "oss_tensor_char_poly_json",
        "oss_is_osserman",
        "oss_report_json",
        "typedef struct OssTensor OssTensor",
        "OSS_STATUS_PANIC = 6",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles the C smoke program against the header and static library when
/// a C compiler is available.
#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if std::process::Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let manifest = env!("CARGO_MANIFEST_DIR");
    // The test binary lives in target/<profile>/deps.
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    let lib = lib_dir.join("libosserman_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = tempfile_dir();
    let out = dir.join("smoke");
    let status = std::process::Command::new(&cc)
        .arg(format!("{manifest}/examples/smoke.c"))
        .arg(format!("-I{manifest}/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = std::process::Command::new(&out).output().unwrap();
    let text = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "{text}");
    assert!(text.contains("n=3 violations=0 osserman=0"), "{text}");
    let _ = std::fs::remove_dir_all(&dir);
}

fn tempfile_dir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("osserman-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
