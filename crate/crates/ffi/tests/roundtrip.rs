//! Exercises the C surface the way a foreign caller would: raw pointers in,
//! owned strings out, explicit frees.

use std::ffi::{c_char, CStr};
use std::ptr;

use casimir_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }
        .to_str()
        .expect("library strings are UTF-8")
        .to_owned();
    casimir_string_free(p);
    s
}

#[test]
fn basis_handle_round_trip() {
    let mut handle: *mut CasimirBasis = ptr::null_mut();
    assert_eq!(
        casimir_basis_new(CasimirKind::T0, 4, &mut handle),
        CasimirStatus::Ok
    );
    assert_eq!(casimir_basis_len(handle), 2);

    let mut text: *mut c_char = ptr::null_mut();
    assert_eq!(
        casimir_basis_element_text(handle, 0, &mut text),
        CasimirStatus::Ok
    );
    assert_eq!(take_string(text), "x_41");

    let mut text = ptr::null_mut();
    assert_eq!(
        casimir_basis_element_text(handle, 1, &mut text),
        CasimirStatus::Ok
    );
    assert_eq!(take_string(text), "x_31*x_42 - x_32*x_41");

    let mut json = ptr::null_mut();
    assert_eq!(casimir_basis_json(handle, &mut json), CasimirStatus::Ok);
    let parsed: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(parsed["kind"], "t0");
    assert_eq!(parsed["n"], 4);
    assert_eq!(parsed["count"], 2);

    casimir_basis_free(handle);
}

#[test]
fn status_codes_cover_bad_input() {
    let mut handle: *mut CasimirBasis = ptr::null_mut();
    assert_eq!(
        casimir_basis_new(CasimirKind::T, 1, &mut handle),
        CasimirStatus::InvalidSize
    );
    assert_eq!(
        casimir_basis_new(CasimirKind::T, 3, ptr::null_mut()),
        CasimirStatus::NullArgument
    );

    assert_eq!(
        casimir_basis_new(CasimirKind::T, 3, &mut handle),
        CasimirStatus::Ok
    );
    let mut text: *mut c_char = ptr::null_mut();
    assert_eq!(
        casimir_basis_element_text(handle, 9, &mut text),
        CasimirStatus::IndexOutOfRange
    );
    assert_eq!(
        casimir_basis_element_text(ptr::null(), 0, &mut text),
        CasimirStatus::NullArgument
    );
    casimir_basis_free(handle);

    // Null handles and strings are no-ops, not crashes.
    casimir_basis_free(ptr::null_mut());
    casimir_string_free(ptr::null_mut());
    assert_eq!(casimir_basis_len(ptr::null()), 0);
}

#[test]
fn traceless_smallest_size_is_empty() {
    let mut handle: *mut CasimirBasis = ptr::null_mut();
    assert_eq!(
        casimir_basis_new(CasimirKind::St, 2, &mut handle),
        CasimirStatus::Ok
    );
    assert_eq!(casimir_basis_len(handle), 0);
    let mut text: *mut c_char = ptr::null_mut();
    assert_eq!(
        casimir_basis_element_text(handle, 0, &mut text),
        CasimirStatus::IndexOutOfRange
    );
    casimir_basis_free(handle);
}

#[test]
fn verify_fills_certificate() {
    let mut cert = CasimirCertificate {
        dim: 0,
        coadjoint_rank: 0,
        expected_count: 0,
        jacobian_rank: 0,
        basis_size: 0,
    };
    assert_eq!(casimir_verify(CasimirKind::T, 3, &mut cert), CasimirStatus::Ok);
    assert_eq!(cert.dim, 6);
    assert_eq!(cert.coadjoint_rank, 4);
    assert_eq!(cert.expected_count, 2);
    assert_eq!(cert.jacobian_rank, 2);
    assert_eq!(cert.basis_size, 2);

    assert_eq!(
        casimir_verify(CasimirKind::T, 3, ptr::null_mut()),
        CasimirStatus::NullArgument
    );
}

#[test]
fn expected_counts_match_formulas() {
    let mut out = 0usize;
    assert_eq!(
        casimir_expected_invariant_count(CasimirKind::T0, 8, &mut out),
        CasimirStatus::Ok
    );
    assert_eq!(out, 4);
    assert_eq!(
        casimir_expected_invariant_count(CasimirKind::T, 6, &mut out),
        CasimirStatus::Ok
    );
    assert_eq!(out, 3);
    assert_eq!(
        casimir_expected_invariant_count(CasimirKind::St, 5, &mut out),
        CasimirStatus::Ok
    );
    assert_eq!(out, 2);
    assert_eq!(
        casimir_expected_invariant_count(CasimirKind::St, 1, &mut out),
        CasimirStatus::InvalidSize
    );
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(casimir_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
