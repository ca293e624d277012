//! C ABI over the invariant library: opaque basis handles, status codes and
//! UTF-8 strings owned by this library. Every function is safe to call with
//! null pointers (it reports `NullArgument` instead of crashing), and every
//! string handed out must be released with `casimir_string_free`.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use casimir_core::algebra::{build_algebra, expected_invariant_count, AlgebraKind};
use casimir_core::closed_form::basis_for;
use casimir_core::render;
use casimir_core::verifier::verify_basis;
use casimir_core::{Error, InvariantBasis};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidSize = 2,
    UnsupportedKind = 3,
    IndexOutOfRange = 4,
    VerificationFailure = 5,
    InternalError = 6,
}

/// Algebra family selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirKind {
    /// Strictly upper triangular matrices.
    T0 = 0,
    /// Upper triangular matrices.
    T = 1,
    /// Traceless upper triangular matrices.
    St = 2,
}

impl CasimirKind {
    fn to_algebra(self) -> AlgebraKind {
        match self {
            CasimirKind::T0 => AlgebraKind::T0,
            CasimirKind::T => AlgebraKind::T,
            CasimirKind::St => AlgebraKind::St,
        }
    }
}

/// Rank bookkeeping produced by `casimir_verify`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CasimirCertificate {
    pub dim: usize,
    pub coadjoint_rank: usize,
    pub expected_count: usize,
    pub jacobian_rank: usize,
    pub basis_size: usize,
}

/// Opaque handle over a computed invariant basis.
pub struct CasimirBasis {
    inner: InvariantBasis,
}

fn status_of(e: &Error) -> CasimirStatus {
    match e {
        Error::InvalidSize(_) => CasimirStatus::InvalidSize,
        Error::UnsupportedKind(_) => CasimirStatus::UnsupportedKind,
        Error::VerificationFailure(_) => CasimirStatus::VerificationFailure,
        _ => CasimirStatus::InternalError,
    }
}

fn export_string(s: String, out: *mut *mut c_char) -> CasimirStatus {
    // Interior NUL cannot occur in our renderings; guard anyway.
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CasimirStatus::Ok
        }
        Err(_) => CasimirStatus::InternalError,
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn casimir_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Builds the closed-form invariant basis of the chosen family and size.
/// On success writes a handle to `out`; release it with `casimir_basis_free`.
#[no_mangle]
pub extern "C" fn casimir_basis_new(
    kind: CasimirKind,
    n: u32,
    out: *mut *mut CasimirBasis,
) -> CasimirStatus {
    if out.is_null() {
        return CasimirStatus::NullArgument;
    }
    let result = catch_unwind(|| basis_for(kind.to_algebra(), n));
    match result {
        Ok(Ok(inner)) => {
            let handle = Box::new(CasimirBasis { inner });
            unsafe { *out = Box::into_raw(handle) };
            CasimirStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => CasimirStatus::InternalError,
    }
}

/// Number of elements in the basis. Null handles count zero.
#[no_mangle]
pub extern "C" fn casimir_basis_len(basis: *const CasimirBasis) -> usize {
    if basis.is_null() {
        return 0;
    }
    unsafe { &*basis }.inner.len()
}

/// Plain-text rendering of element `index` (zero-based), e.g.
/// "x_31*x_42 - x_32*x_41". The string must be freed with
/// `casimir_string_free`.
#[no_mangle]
pub extern "C" fn casimir_basis_element_text(
    basis: *const CasimirBasis,
    index: usize,
    out: *mut *mut c_char,
) -> CasimirStatus {
    if basis.is_null() || out.is_null() {
        return CasimirStatus::NullArgument;
    }
    let b = unsafe { &*basis };
    match b.inner.elements.get(index) {
        Some(el) => export_string(el.to_string(), out),
        None => CasimirStatus::IndexOutOfRange,
    }
}

/// JSON rendering of the whole basis (kind, n, count, elements). The string
/// must be freed with `casimir_string_free`.
#[no_mangle]
pub extern "C" fn casimir_basis_json(
    basis: *const CasimirBasis,
    out: *mut *mut c_char,
) -> CasimirStatus {
    if basis.is_null() || out.is_null() {
        return CasimirStatus::NullArgument;
    }
    let b = unsafe { &*basis };
    let v = render::basis_json(&b.inner);
    match serde_json::to_string_pretty(&v) {
        Ok(s) => export_string(s, out),
        Err(_) => CasimirStatus::InternalError,
    }
}

/// Releases a basis handle. Null is a no-op.
#[no_mangle]
pub extern "C" fn casimir_basis_free(basis: *mut CasimirBasis) {
    if !basis.is_null() {
        drop(unsafe { Box::from_raw(basis) });
    }
}

/// Certifies the closed-form basis of the family: symbolic infinitesimal
/// criterion for every element and generator, Jacobian rank equal to the
/// element count, and dim - coadjoint rank equal to that count. On success
/// fills `out` with the rank bookkeeping.
#[no_mangle]
pub extern "C" fn casimir_verify(
    kind: CasimirKind,
    n: u32,
    out: *mut CasimirCertificate,
) -> CasimirStatus {
    if out.is_null() {
        return CasimirStatus::NullArgument;
    }
    let result = catch_unwind(AssertUnwindSafe(|| -> Result<CasimirCertificate, Error> {
        let alg = build_algebra(kind.to_algebra(), n)?;
        let basis = basis_for(kind.to_algebra(), n)?;
        let (_, cert) = verify_basis(&alg, &basis)?;
        Ok(CasimirCertificate {
            dim: cert.dim,
            coadjoint_rank: cert.coadjoint_rank,
            expected_count: cert.expected_count,
            jacobian_rank: cert.jacobian_rank,
            basis_size: cert.basis_size,
        })
    }));
    match result {
        Ok(Ok(cert)) => {
            unsafe { *out = cert };
            CasimirStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => CasimirStatus::InternalError,
    }
}

/// Number of functionally independent invariants of the family, written to
/// `out`: floor(n/2), floor((n-1)/2)+1 and floor((n-1)/2) for the strict,
/// full and traceless families.
#[no_mangle]
pub extern "C" fn casimir_expected_invariant_count(
    kind: CasimirKind,
    n: u32,
    out: *mut usize,
) -> CasimirStatus {
    if out.is_null() {
        return CasimirStatus::NullArgument;
    }
    match expected_invariant_count(kind.to_algebra(), n) {
        Ok(c) => {
            unsafe { *out = c };
            CasimirStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a string produced by this library. Null is a no-op.
#[no_mangle]
pub extern "C" fn casimir_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
