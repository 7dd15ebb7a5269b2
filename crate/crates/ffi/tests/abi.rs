use std::ffi::{c_char, CStr, CString};
use std::ptr;

use drinfeld_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { dl_string_free(s) };
    out
}

fn last_error() -> String {
    let p = dl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn carlitz() -> *mut DlModule {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { dl_module_carlitz(2, &mut m) }, DlStatus::Ok);
    m
}

fn point(s: &str) -> *mut DlPoint {
    let s = CString::new(s).unwrap();
    let mut x = ptr::null_mut();
    assert_eq!(unsafe { dl_point_parse(2, s.as_ptr(), &mut x) }, DlStatus::Ok);
    x
}

#[test]
fn heights_through_handles() {
    let m = carlitz();
    let x = point("T*X + 1");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dl_point_height(x, &mut s) }, DlStatus::Ok);
    assert_eq!(take(s), "1");
    assert_eq!(unsafe { dl_module_height(m, &mut s) }, DlStatus::Ok);
    assert_eq!(take(s), "1");
    let (mut lo, mut hi) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { dl_canonical_height(m, x, 2, &mut lo, &mut hi) }, DlStatus::Ok);
    assert_eq!((take(lo), take(hi)), ("1/4".into(), "9/4".into()));
    unsafe {
        dl_point_free(x);
        dl_module_free(m);
    }
}

#[test]
fn torsion_and_supersingular() {
    let m = carlitz();
    let x = point("X + 1");
    let (mut kind, mut w) = (DlTorsion::Unknown, ptr::null_mut());
    assert_eq!(unsafe { dl_torsion_status(m, x, 2, 2, &mut kind, &mut w) }, DlStatus::Ok);
    assert_eq!(kind, DlTorsion::Torsion);
    assert_eq!(take(w), "T^2 + T");
    unsafe { dl_point_free(x) };

    let toml = CString::new("q = 2\ncoeffs = [\"T\", \"1\", \"1\"]\n").unwrap();
    let mut r2 = ptr::null_mut();
    assert_eq!(unsafe { dl_module_from_toml(toml.as_ptr(), &mut r2) }, DlStatus::Ok);
    for (l, expect) in [("T", false), ("T + 1", false), ("T^2 + T + 1", true)] {
        let l = CString::new(l).unwrap();
        let mut ss = !expect;
        assert_eq!(unsafe { dl_is_supersingular(r2, l.as_ptr(), &mut ss) }, DlStatus::Ok);
        assert_eq!(ss, expect);
    }
    unsafe {
        dl_module_free(r2);
        dl_module_free(m);
    }
}

#[test]
fn counts_and_reports() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dl_count_irreducibles(2, 10, &mut s) }, DlStatus::Ok);
    assert_eq!(take(s), "99");

    let m = carlitz();
    let (r, c1) = (CString::new("1").unwrap(), CString::new("1/2").unwrap());
    assert_eq!(unsafe { dl_density_report_jsonl(m, 4, r.as_ptr(), c1.as_ptr(), 1, 2, &mut s) }, DlStatus::Ok);
    let text = take(s);
    let rows: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["ratio"] == "1"));
    unsafe { dl_module_free(m) };
}

#[test]
fn error_reporting() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { dl_module_carlitz(6, &mut m) }, DlStatus::InvalidInput);
    assert!(m.is_null());
    assert!(last_error().contains('6'));

    let bad = CString::new("X + ").unwrap();
    let mut x = ptr::null_mut();
    assert_eq!(unsafe { dl_point_parse(2, bad.as_ptr(), &mut x) }, DlStatus::Parse);
    assert!(!last_error().is_empty());

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dl_point_height(ptr::null(), &mut s) }, DlStatus::NullPointer);
    assert_eq!(unsafe { dl_count_irreducibles(2, 0, ptr::null_mut()) }, DlStatus::InvalidInput);
    assert_eq!(unsafe { dl_count_irreducibles(2, 3, ptr::null_mut()) }, DlStatus::NullPointer);

    assert_eq!(unsafe { dl_count_irreducibles(2, 3, &mut s) }, DlStatus::Ok);
    assert!(dl_last_error().is_null());
    take(s);
    unsafe {
        dl_string_free(ptr::null_mut());
        dl_module_free(ptr::null_mut());
        dl_point_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/drinfeld.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["dl_module_carlitz", "dl_point_parse", "dl_canonical_height", "dl_density_report_jsonl", "dl_string_free"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{header}\"\nint main(void) {{ DlModule *m = 0; DlStatus s = dl_module_carlitz(2, &m); dl_module_free(m); return s == DL_STATUS_OK ? 0 : 1; }}\n"
        ),
    )
    .unwrap();
    match std::process::Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"]).arg(&src).output() {
        Ok(o) => assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr)),
        Err(_) => eprintln!("no C compiler; header syntax check skipped"),
    }
}
