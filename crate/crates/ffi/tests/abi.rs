use std::ffi::{CStr, CString};
use std::ptr;

use koszul_lab_ffi::*;

const RESIDUAL: &str = "p = 32003\nvars = x1,x2,x3,x4\n[ideal]\nx1^2 - x3^2\nx1*x2\nx3*x4\n";

fn parse(text: &str) -> (KlStatus, *mut KlRing) {
    let c = CString::new(text).unwrap();
    let mut ring = ptr::null_mut();
    let s = unsafe { kl_ring_parse(c.as_ptr(), 0, &mut ring) };
    (s, ring)
}

fn last_error() -> String {
    let p = kl_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn residual_betti_and_deviations() {
    let (s, ring) = parse(RESIDUAL);
    assert_eq!(s, KlStatus::Ok);
    assert!(kl_last_error_message().is_null());
    unsafe {
        assert_eq!(kl_ring_nvars(ring), 4);
        assert_eq!(kl_ring_ngens(ring), 3);
        let mut b = ptr::null_mut();
        assert_eq!(kl_betti_compute(ring, -1, -1, &mut b), KlStatus::Ok);
        let got: Vec<u64> =
            [(0, 0), (1, 2), (2, 4), (3, 5)].iter().map(|&(i, j)| kl_betti_get(b, i, j)).collect();
        assert_eq!(got, [1, 3, 4, 2]);
        assert_eq!(kl_betti_get(b, 2, 3), 0);
        assert_eq!(kl_betti_get(b, 99, 99), 0);
        let (mut im, mut jm, mut complete) = (0usize, 0usize, false);
        assert_eq!(kl_betti_window(b, &mut im, &mut jm, &mut complete), KlStatus::Ok);
        assert!(complete);
        assert!(im >= 3 && jm >= 5);
        let mut text = ptr::null_mut();
        assert_eq!(kl_betti_render(b, &mut text), KlStatus::Ok);
        assert!(CStr::from_ptr(text).to_str().unwrap().contains("total:  1  3  4  2"));
        kl_string_free(text);
        kl_betti_free(b);

        let mut eps = 0u64;
        assert_eq!(kl_deviation(ring, 3, 10, &mut eps), KlStatus::Ok);
        assert_eq!(eps, 1);
        assert_eq!(kl_deviation(ring, 4, 10, &mut eps), KlStatus::Ok);
        assert_eq!(eps, 2);

        let (mut v, mut fi, mut fj) = (KlKoszul::Linear, 0usize, 0usize);
        assert_eq!(kl_koszul_check(ring, 5, &mut v, &mut fi, &mut fj), KlStatus::Ok);
        assert_eq!((v, fi, fj), (KlKoszul::Fails, 3, 4));
        kl_ring_free(ring);
    }
}

#[test]
fn parse_error_sets_message() {
    let (s, ring) = parse("vars = x\n[ideal]\nx^2 + x\n");
    assert_eq!(s, KlStatus::ParseError);
    assert!(ring.is_null());
    assert!(last_error().contains("line 3"));
}

#[test]
fn null_arguments_are_rejected() {
    let mut ring = ptr::null_mut();
    assert_eq!(unsafe { kl_ring_parse(ptr::null(), 0, &mut ring) }, KlStatus::NullArgument);
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { kl_betti_compute(ptr::null(), 1, 1, &mut b) }, KlStatus::NullArgument);
    assert_eq!(unsafe { kl_betti_get(ptr::null(), 0, 0) }, 0);
    unsafe {
        kl_ring_free(ptr::null_mut());
        kl_betti_free(ptr::null_mut());
        kl_string_free(ptr::null_mut());
    }
}

#[test]
fn koszul_ring_is_linear() {
    let (_, ring) = parse("vars = x,y,z\n[ideal]\nx^2\ny^2\nx*z\n");
    let mut v = KlKoszul::Fails;
    unsafe {
        assert_eq!(kl_koszul_check(ring, 4, &mut v, ptr::null_mut(), ptr::null_mut()), KlStatus::Ok);
        kl_ring_free(ring);
    }
    assert_eq!(v, KlKoszul::Linear);
}

#[test]
fn header_is_current() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/koszul_lab.h")).unwrap();
    for f in [
        "kl_ring_parse",
        "kl_ring_free",
        "kl_ring_nvars",
        "kl_ring_ngens",
        "kl_betti_compute",
        "kl_betti_get",
        "kl_betti_window",
        "kl_betti_render",
        "kl_betti_free",
        "kl_deviation",
        "kl_koszul_check",
        "kl_last_error_message",
        "kl_string_free",
    ] {
        assert!(h.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(h.contains("typedef struct KlRing KlRing;"));
}
