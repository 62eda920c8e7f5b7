use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qosp_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    qosp_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(qosp_last_error())
        .to_str()
        .unwrap()
        .to_string()
}

unsafe fn named(name: &str) -> *mut QospMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(qosp_matrix_named(cs(name).as_ptr(), &mut m), QospStatus::Ok);
    m
}

#[test]
fn named_matrix_entries() {
    unsafe {
        let r = named("sjr");
        let mut dim = 0;
        assert_eq!(qosp_matrix_dim(r, &mut dim), QospStatus::Ok);
        assert_eq!(dim, 9);
        let mut s = ptr::null_mut();
        assert_eq!(qosp_matrix_entry(r, 0, 8, &mut s), QospStatus::Ok);
        assert_eq!(take(s), "1/2*xi^2");
        assert_eq!(
            qosp_matrix_entry(r, 9, 0, &mut s),
            QospStatus::InvalidArgument
        );
        assert!(last_error().contains("outside"));
        qosp_matrix_free(r);
    }
}

#[test]
fn substitution_and_limit() {
    unsafe {
        let kr = named("kr");
        let mut at_one = ptr::null_mut();
        assert_eq!(
            qosp_matrix_substitute(kr, cs("s").as_ptr(), cs("1").as_ptr(), &mut at_one),
            QospStatus::Ok
        );
        let mut lim = ptr::null_mut();
        assert_eq!(qosp_matrix_limit_at_one(kr, &mut lim), QospStatus::Ok);
        let mut eq = false;
        assert_eq!(qosp_matrix_equal(at_one, lim, &mut eq), QospStatus::Ok);
        assert!(eq);
        let mut bad = ptr::null_mut();
        assert_eq!(
            qosp_matrix_substitute(kr, cs("s").as_ptr(), cs("0.5").as_ptr(), &mut bad),
            QospStatus::Parse
        );
        assert_eq!(
            qosp_matrix_substitute(kr, cs("s").as_ptr(), cs("0").as_ptr(), &mut bad),
            QospStatus::Arithmetic
        );
        assert!(bad.is_null());
        for m in [kr, at_one, lim] {
            qosp_matrix_free(m);
        }
    }
}

#[test]
fn triangularity_through_products() {
    unsafe {
        // R(sj) at xi = 1 times its inverse read back from JSON: the identity.
        let r = named("sjr");
        let mut json = ptr::null_mut();
        assert_eq!(qosp_matrix_to_json(r, &mut json), QospStatus::Ok);
        let text = cs(&take(json));
        let mut copy = ptr::null_mut();
        assert_eq!(
            qosp_matrix_from_json(text.as_ptr(), &mut copy),
            QospStatus::Ok
        );
        let mut eq = false;
        qosp_matrix_equal(r, copy, &mut eq);
        assert!(eq);
        let mut sq = ptr::null_mut();
        assert_eq!(qosp_matrix_mul(r, copy, &mut sq), QospStatus::Ok);
        qosp_matrix_equal(r, sq, &mut eq);
        assert!(!eq);
        for m in [r, copy, sq] {
            qosp_matrix_free(m);
        }
    }
}

#[test]
fn gybe_through_the_boundary() {
    unsafe {
        let parity = [0u8, 1, 0];
        for name in ["kr", "transformed", "sjr"] {
            let r = named(name);
            assert_eq!(
                qosp_check_gybe(r, parity.as_ptr(), 3),
                QospStatus::Ok,
                "{name}"
            );
            qosp_matrix_free(r);
        }
        let m = named("m");
        assert_eq!(
            qosp_check_gybe(m, parity.as_ptr(), 3),
            QospStatus::DimensionMismatch
        );
        qosp_matrix_free(m);
        // A non-solution: the Jordanian twist itself.
        let f = named("fj");
        assert_eq!(
            qosp_check_gybe(f, parity.as_ptr(), 3),
            QospStatus::CheckFailed
        );
        assert!(last_error().contains("nonzero"));
        qosp_matrix_free(f);
    }
}

#[test]
fn verify_and_solve() {
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(
            qosp_verify(cs("factorization").as_ptr(), &mut report),
            QospStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(v["suite"], "factorization");
        assert_eq!(
            qosp_verify(cs("nope").as_ptr(), &mut report),
            QospStatus::InvalidArgument
        );

        let mut sol = ptr::null_mut();
        assert_eq!(
            qosp_solve_phi(2, cs("1:1/2,1:1").as_ptr(), &mut sol),
            QospStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(sol)).unwrap();
        assert!(v["series"]["coefficients"].is_array());
        assert_eq!(
            qosp_solve_phi(9, cs("1:1").as_ptr(), &mut sol),
            QospStatus::InvalidArgument
        );
    }
}

#[test]
fn null_and_bad_input() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(
            qosp_matrix_named(ptr::null(), &mut m),
            QospStatus::NullPointer
        );
        assert_eq!(
            qosp_matrix_named(cs("kr").as_ptr(), ptr::null_mut()),
            QospStatus::NullPointer
        );
        assert_eq!(
            qosp_matrix_named(cs("zz").as_ptr(), &mut m),
            QospStatus::InvalidArgument
        );
        assert_eq!(
            qosp_matrix_from_json(cs("{}").as_ptr(), &mut m),
            QospStatus::Parse
        );
        assert_eq!(
            qosp_matrix_dim(ptr::null(), &mut 0),
            QospStatus::NullPointer
        );
        assert!(last_error().contains("null"));
        qosp_matrix_free(ptr::null_mut());
        qosp_string_free(ptr::null_mut());
        let v = CStr::from_ptr(qosp_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
