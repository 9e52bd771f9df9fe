use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use zassenhaus_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    zs_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(zs_last_error()).to_str().unwrap().to_string()
}

#[test]
fn series_and_dims() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(zs_series_new(ZsFamily::Free, 2, 2, 4, &mut s), ZsStatus::Ok);
        let mut order = 0;
        assert_eq!(zs_series_order(s, &mut order), ZsStatus::Ok);
        assert_eq!(order, 4);
        let mut c = ptr::null_mut();
        assert_eq!(zs_series_coeff(s, 3, &mut c), ZsStatus::Ok);
        assert_eq!(take(c), "8");
        let mut d = ptr::null_mut();
        assert_eq!(zs_dims_new(s, 2, 4, &mut d), ZsStatus::Ok);
        let got: Vec<String> = (1..=4)
            .map(|n| {
                let mut v = ptr::null_mut();
                assert_eq!(zs_dims_get(d, ZsDimsKind::C, n, &mut v), ZsStatus::Ok);
                take(v)
            })
            .collect();
        assert_eq!(got, ["2", "3", "2", "6"]);
        let mut b = ptr::null_mut();
        assert_eq!(zs_dims_get(d, ZsDimsKind::B, 3, &mut b), ZsStatus::Ok);
        assert_eq!(take(b), "8/3");
        assert_eq!(zs_dims_get(d, ZsDimsKind::W, 5, &mut b), ZsStatus::Contract);
        zs_dims_free(d);
        zs_series_free(s);
    }
}

#[test]
fn mixed_series() {
    unsafe {
        let ranks = [2u32, 2];
        let mut s = ptr::null_mut();
        assert_eq!(zs_series_new_mixed(2, ranks.as_ptr(), 2, 1, 3, &mut s), ZsStatus::Ok);
        let mut c = ptr::null_mut();
        assert_eq!(zs_series_coeff(s, 1, &mut c), ZsStatus::Ok);
        assert_eq!(take(c), "5");
        zs_series_free(s);
        assert_eq!(zs_series_new_mixed(2, ptr::null(), 2, 1, 3, &mut s), ZsStatus::NullPointer);
    }
}

#[test]
fn groups_and_counts() {
    unsafe {
        let spec = CString::new("d4").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(zs_group_new(spec.as_ptr(), &mut g), ZsStatus::Ok);
        let mut order = 0;
        assert_eq!(zs_group_order(g, &mut order), ZsStatus::Ok);
        assert_eq!(order, 8);
        let mut aut = ptr::null_mut();
        assert_eq!(zs_group_automorphisms(g, &mut aut), ZsStatus::Ok);
        assert_eq!(take(aut), "8");
        let mut dims = [0u32; 3];
        assert_eq!(zs_group_zassenhaus_dims(g, 2, dims.as_mut_ptr(), 3), ZsStatus::Ok);
        assert_eq!(dims, [2, 1, 0]);
        let mut nu = ptr::null_mut();
        assert_eq!(zs_count_extensions(2, 3, 2, g, &mut nu), ZsStatus::Ok);
        assert_eq!(take(nu), "1800");
        zs_group_free(g);

        assert_eq!(zs_count_u3(3, 2, 3, &mut nu), ZsStatus::Ok);
        assert_eq!(take(nu), "360");
        assert_eq!(zs_count_sap(8, &mut nu), ZsStatus::Ok);
        assert_eq!(take(nu), "193600");
        let mut local = 0u64;
        assert_eq!(zs_count_d4_local(2, &mut local), ZsStatus::Ok);
        assert_eq!(local, 18);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(zs_series_new(ZsFamily::Free, 4, 2, 4, &mut s), ZsStatus::Contract);
        assert!(last_error().contains("not prime"));
        assert_eq!(zs_series_new(ZsFamily::Free, 2, 2, 4, ptr::null_mut()), ZsStatus::NullPointer);
        assert_eq!(zs_series_order(ptr::null(), ptr::null_mut()), ZsStatus::NullPointer);
        let bad = [0xffu8, 0];
        let mut g = ptr::null_mut();
        assert_eq!(zs_group_new(bad.as_ptr().cast(), &mut g), ZsStatus::InvalidUtf8);
        let big = CString::new("cyclic:5000").unwrap();
        assert_eq!(zs_group_new(big.as_ptr(), &mut g), ZsStatus::Resource);
        let mut passed = false;
        assert_eq!(zs_verify(0, &mut passed, ptr::null_mut()), ZsStatus::Contract);
        zs_string_free(ptr::null_mut());
        zs_series_free(ptr::null_mut());
    }
}

#[test]
fn verify_through_ffi() {
    unsafe {
        let mut passed = false;
        let mut detail = ptr::null_mut();
        assert_eq!(zs_verify(15, &mut passed, &mut detail), ZsStatus::Ok);
        assert!(passed);
        assert!(take(detail).starts_with("PASS 15"));
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("zassenhaus.h").exists(), "build script writes the header");
    let lib = target_dir().join("libzassenhaus_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping C link test: no C compiler or static library");
        return;
    }
    let exe = std::env::temp_dir().join(format!("zassenhaus_c_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&header_dir)
        .arg(manifest.join("tests/c_smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
