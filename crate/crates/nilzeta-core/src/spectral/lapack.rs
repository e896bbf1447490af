//! Thin FFI wrappers around the LAPACK band routines `zhbev` (Hermitian band
//! eigenvalues) and `zgbbrd`/`dbdsqr` (general band singular values).
//!
//! The system OpenBLAS supplies the symbols (linked via `build.rs`). Only
//! values are requested, never vectors; the singular-value path exists
//! because bidiagonal SVD delivers small singular values with absolute error
//! `O(ε‖A‖)` — squaring them beats eigensolving the Gram matrix, whose small
//! eigenvalues carry absolute error `O(ε‖A‖²)`.

use super::banded::{CBand, GeneralBand};
use num_complex::Complex64;

extern "C" {
    fn zhbev_(
        jobz: *const u8,
        uplo: *const u8,
        n: *const i32,
        kd: *const i32,
        ab: *mut Complex64,
        ldab: *const i32,
        w: *mut f64,
        z: *mut Complex64,
        ldz: *const i32,
        work: *mut Complex64,
        rwork: *mut f64,
        info: *mut i32,
    );

    fn zgbbrd_(
        vect: *const u8,
        m: *const i32,
        n: *const i32,
        ncc: *const i32,
        kl: *const i32,
        ku: *const i32,
        ab: *mut Complex64,
        ldab: *const i32,
        d: *mut f64,
        e: *mut f64,
        q: *mut Complex64,
        ldq: *const i32,
        pt: *mut Complex64,
        ldpt: *const i32,
        c: *mut Complex64,
        ldc: *const i32,
        work: *mut Complex64,
        rwork: *mut f64,
        info: *mut i32,
    );

    fn dbdsqr_(
        uplo: *const u8,
        n: *const i32,
        ncvt: *const i32,
        nru: *const i32,
        ncc: *const i32,
        d: *mut f64,
        e: *mut f64,
        vt: *mut f64,
        ldvt: *const i32,
        u: *mut f64,
        ldu: *const i32,
        c: *mut f64,
        ldc: *const i32,
        work: *mut f64,
        info: *mut i32,
    );
}

/// Error from a banded LAPACK computation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EigenError {
    /// `INFO < 0`: argument `-INFO` had an illegal value (indicates a bug in
    /// the wrapper, not in caller data).
    #[error("illegal argument {arg} passed to a banded LAPACK routine")]
    IllegalArgument {
        /// 1-based index of the offending argument.
        arg: i32,
    },
    /// `INFO > 0`: the iteration failed to converge.
    #[error("banded LAPACK iteration failed to converge ({off_diagonals} elements unresolved)")]
    NoConvergence {
        /// Number of unconverged elements.
        off_diagonals: i32,
    },
}

fn check_info(info: i32) -> Result<(), EigenError> {
    match info {
        0 => Ok(()),
        neg if neg < 0 => Err(EigenError::IllegalArgument { arg: -neg }),
        pos => Err(EigenError::NoConvergence { off_diagonals: pos }),
    }
}

/// Singular values of a general band matrix, ascending.
///
/// Reduces to real bidiagonal form with `zgbbrd` and runs the implicit-QR
/// bidiagonal SVD `dbdsqr`; the returned values (including any exact zeros
/// from padding) have absolute accuracy `O(ε‖A‖)`.
///
/// # Panics
///
/// Panics if a dimension exceeds `i32::MAX` or `rows < cols` is violated by
/// the caller (the band builder always produces `rows ≥ cols`).
pub fn general_band_singular_values(gb: &GeneralBand) -> Result<Vec<f64>, EigenError> {
    assert!(gb.rows >= gb.cols, "band SVD expects rows ≥ cols");
    let m = i32::try_from(gb.rows).expect("rows fit in i32");
    let n = i32::try_from(gb.cols).expect("cols fit in i32");
    if gb.cols == 0 {
        return Ok(Vec::new());
    }
    let mn = gb.rows.min(gb.cols);
    let kl = i32::try_from(gb.kl).expect("kl fits in i32");
    let ku = i32::try_from(gb.ku).expect("ku fits in i32");
    let ldab = i32::try_from(gb.ldab).expect("ldab fits in i32");
    let mut ab = gb.ab.clone();
    let mut d = vec![0.0f64; mn];
    let mut e = vec![0.0f64; mn.max(2) - 1];
    let zero = 0i32;
    let one = 1i32;
    let mut dummy_z = [Complex64::new(0.0, 0.0); 1];
    let mut work = vec![Complex64::new(0.0, 0.0); gb.rows.max(gb.cols)];
    let mut rwork = vec![0.0f64; gb.rows.max(gb.cols)];
    let mut info = 0i32;
    unsafe {
        zgbbrd_(
            b"N".as_ptr(),
            &m,
            &n,
            &zero,
            &kl,
            &ku,
            ab.as_mut_ptr(),
            &ldab,
            d.as_mut_ptr(),
            e.as_mut_ptr(),
            dummy_z.as_mut_ptr(),
            &one,
            dummy_z.as_mut_ptr(),
            &one,
            dummy_z.as_mut_ptr(),
            &one,
            work.as_mut_ptr(),
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    check_info(info)?;
    let nb = i32::try_from(mn).expect("bidiagonal size fits in i32");
    let mut dummy_r = [0.0f64; 1];
    let mut qwork = vec![0.0f64; 4 * mn];
    unsafe {
        dbdsqr_(
            b"U".as_ptr(),
            &nb,
            &zero,
            &zero,
            &zero,
            d.as_mut_ptr(),
            e.as_mut_ptr(),
            dummy_r.as_mut_ptr(),
            &one,
            dummy_r.as_mut_ptr(),
            &one,
            dummy_r.as_mut_ptr(),
            &one,
            qwork.as_mut_ptr(),
            &mut info,
        );
    }
    check_info(info)?;
    // dbdsqr returns singular values in descending order.
    d.reverse();
    Ok(d)
}

/// Eigenvalues of a Hermitian banded matrix, in ascending order.
///
/// The caller is responsible for `a` being (numerically) Hermitian; only the
/// upper triangle within the band is read.
///
/// # Panics
///
/// Panics if the dimension exceeds `i32::MAX`.
pub fn hermitian_band_eigenvalues(a: &CBand) -> Result<Vec<f64>, EigenError> {
    let n_usize = a.dim();
    let n = i32::try_from(n_usize).expect("matrix dimension fits in i32");
    let (kd_usize, mut ab) = a.to_lapack_upper();
    let kd = i32::try_from(kd_usize).expect("bandwidth fits in i32");
    let ldab = kd + 1;
    let mut w = vec![0.0f64; n_usize];
    let mut z = [Complex64::new(0.0, 0.0); 1];
    let ldz = 1i32;
    let mut work = vec![Complex64::new(0.0, 0.0); n_usize.max(1)];
    let mut rwork = vec![0.0f64; (3 * n_usize).saturating_sub(2).max(1)];
    let mut info = 0i32;
    unsafe {
        zhbev_(
            b"N".as_ptr(),
            b"U".as_ptr(),
            &n,
            &kd,
            ab.as_mut_ptr(),
            &ldab,
            w.as_mut_ptr(),
            z.as_mut_ptr(),
            &ldz,
            work.as_mut_ptr(),
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    check_info(info)?;
    Ok(w)
}
