//! Truncated spectra of the Rumin–Seshadri operators.
//!
//! For every nontrivial irreducible unitary representation ρ of `G`, the five
//! Rumin differential matrices `D₀,…,D₄` act on (sums of copies of) the
//! representation space. This module realizes those actions in a truncated
//! Hermite basis, forms the Rumin–Seshadri operators
//!
//! ```text
//! Δ_q = (D_{q−1} D*_{q−1})^{a_{q−1}} + (D*_q D_q)^{a_q},    q = 0,…,5,
//! ```
//!
//! and extracts their low-lying spectra with explicit trust windows. The
//! exponents `a_q` are chosen so that every summand is homogeneous of the
//! common weighted order `2κ`; see [`A_Q`] and [`KAPPA`].

pub mod banded;
pub mod hermite;
pub mod lapack;

use crate::qsqrt2::QSqrt2;
use crate::rational::{rat, rational_to_f64, Rational};
use crate::repdecomp::RepLabel;
use crate::uea::{rumin_matrix, UEAMatrix, UEAPoly};
use banded::{BandBlockMat, CBand};
use lapack::{general_band_singular_values, hermitian_band_eigenvalues, EigenError};
use num_complex::Complex64;
use num_traits::Zero;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::rc::Rc;

/// Rank of the `q`-th Rumin bundle, `q = 0,…,5`.
pub const RANK_Q: [usize; 6] = [1, 2, 3, 3, 2, 1];

/// Partial sums `N_q = k₀ + … + k_{q−1}` of the Heisenberg orders of the
/// Rumin differentials; these are the weights in the alternating zeta sum.
pub const N_Q: [usize; 6] = [0, 1, 4, 6, 9, 10];

/// Heisenberg order `k_q` of the Rumin differential `D_q` (the weighted
/// degree of every entry of the `q`-th matrix).
pub const K_Q: [usize; 5] = [1, 3, 2, 3, 1];

/// Seshadri exponents `a_q` with `a_q · k_q = κ` for all `q`.
pub const A_Q: [usize; 5] = [6, 2, 3, 2, 6];

/// Common homogeneity order: `Δ_q` is homogeneous of weighted degree `2κ`.
pub const KAPPA: usize = 6;

/// Homogeneous dimension of the group (sum of the dilation weights
/// `1+1+2+3+3`).
pub const HOMOGENEOUS_DIM: usize = 10;

/// Betti numbers of the Rumin complex of the underlying nilmanifold with
/// trivial coefficients, `q = 0,…,5`.
pub const BETTI: [usize; 6] = [1, 2, 3, 3, 2, 1];

/// Number of positive eigenvalues of `D_q* D_q` per retained mode.
///
/// The Rumin complex of a nontrivial irreducible representation is exact, so
/// `ker D_q = im D_{q−1}` and the rank of `D_q` per mode follows from the
/// bundle ranks by the alternating sum `rank D_q = RANK_Q[q] − rank D_{q−1}`.
/// The factor spectrum `T_q = spec⁺ D_q* D_q` therefore carries exactly this
/// many eigenvalues per retained mode.
pub const POS_RANK_Q: [usize; 5] = [1, 1, 2, 1, 1];

/// Default Hermite truncation size.
pub const DEFAULT_TRUNCATION: usize = 256;
/// Default fraction of each spectrum kept as trusted.
pub const DEFAULT_TRUST_FRACTION: f64 = 0.6;
/// Default relative tolerance for the Hermitian symmetrization residual.
pub const DEFAULT_SYMM_TOL: f64 = 1e-8;

/// Extra Hermite modes used while forming operator products, discarded
/// before the eigensolve so that all retained matrix entries are exact
/// Galerkin values of the untruncated operators.
const MODE_MARGIN: usize = 32;

/// Relative roundoff coefficient of the Hermitian band eigensolve: an
/// eigenvalue `t` of an operator with ∞-norm `ν` carries relative error about
/// `EIG_EPS · ν / t`. The observed constant is ~25× smaller; this value keeps
/// the bound conservative without drowning small genuine errors.
const EIG_EPS: f64 = 1e-15;

/// Relative roundoff coefficient of the band SVD refinement: a squared
/// singular value `t` of a differential whose largest squared singular value
/// is `T` carries relative error about `SVD_EPS · √(T/t)` — dramatically
/// tighter than the eigensolve bound when `t ≪ ν`.
const SVD_EPS: f64 = 1e-13;

/// Acceptance window multiplier for SVD refinement: a branch eigenvalue is
/// replaced by the nearest squared singular value only when they agree within
/// `SNAP_GUARD` times the combined roundoff estimate, so a spurious kernel
/// compression value can never drag a branch entry beyond the unrefined
/// error bar.
const SNAP_GUARD: f64 = 64.0;

/// Numerical parameters of the spectral backend.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralConfig {
    /// Hermite truncation size `N` (number of retained modes).
    pub truncation: usize,
    /// Fraction of each factor spectrum treated as trusted.
    pub trust_fraction: f64,
    /// Relative tolerance on the Hermitian symmetrization residual.
    pub symm_tol: f64,
    /// Refine factor eigenvalues through a band SVD of the differentials.
    ///
    /// The Hermitian eigensolve carries absolute roundoff `O(ε‖op‖)`, which
    /// is a poor *relative* error on small eigenvalues when the operator norm
    /// is large (high-order factors reach `‖op‖ ~ 10¹¹` at `N = 256`).
    /// Squared singular values of the differentials recover relative accuracy
    /// `O(ε √(‖op‖/t))` there. Disable only for diagnostics.
    pub refine: bool,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        Self {
            truncation: DEFAULT_TRUNCATION,
            trust_fraction: DEFAULT_TRUST_FRACTION,
            symm_tol: DEFAULT_SYMM_TOL,
            refine: true,
        }
    }
}

/// Errors of the spectral backend.
#[derive(thiserror::Error, Debug)]
pub enum SpectralError {
    /// The representation label cannot be realized (e.g. `ħ = 0`, the zero
    /// pair `(λ, μ)`, or the trivial representation where no spectrum exists).
    #[error("invalid representation label: {0}")]
    InvalidLabel(String),
    /// The truncation is too small for the requested operation.
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    /// An operator expected to be Hermitian failed the symmetrization check.
    #[error("hermitian defect {defect:.3e} exceeds relative tolerance {tol:.3e}")]
    Hermiticity {
        /// Measured relative defect.
        defect: f64,
        /// Configured tolerance.
        tol: f64,
    },
    /// The band eigensolver failed.
    #[error(transparent)]
    Eigen(#[from] EigenError),
    /// A zeta estimate's error bar exceeds the requested tolerance.
    #[error("untrusted value: estimated error {error:.3e} exceeds tolerance {tol:.3e}")]
    Untrusted {
        /// Estimated absolute error.
        error: f64,
        /// Requested tolerance.
        tol: f64,
    },
}

/// A representation realized as truncated operators on Hermite modes.
///
/// Scalar labels are realized on a single mode (their representation space is
/// one-dimensional); Schrödinger and generic labels act on `n` oscillator
/// modes whose width is matched to the representation so that `θ` and `∂_θ`
/// have balanced tridiagonal entries.
#[derive(Clone, Debug)]
pub struct RepRealization {
    label: RepLabel,
    n_modes: usize,
    x: [CBand; 5],
}

impl RepRealization {
    /// The realized label.
    #[must_use]
    pub fn label(&self) -> &RepLabel {
        &self.label
    }

    /// Number of retained Hermite modes.
    #[must_use]
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// The image of the generator `X_i`, `i ∈ 1..=5`.
    ///
    /// # Panics
    ///
    /// Panics if `i` is outside `1..=5`.
    #[must_use]
    pub fn x(&self, i: usize) -> &CBand {
        assert!((1..=5).contains(&i), "generator index must be 1..=5");
        &self.x[i - 1]
    }
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn im(v: f64) -> Complex64 {
    Complex64::new(0.0, v)
}

/// Realizes a representation label on `n` Hermite modes.
///
/// Scalar labels ignore `n` and act on one mode. Non-scalar labels require
/// `n ≥ 16`, a nonzero `ħ` (Schrödinger), and `(λ, μ) ≠ (0, 0)` (generic).
pub fn realize(label: &RepLabel, n: usize) -> Result<RepRealization, SpectralError> {
    match label {
        RepLabel::Scalar { alpha, beta } => {
            let a = rational_to_f64(alpha);
            let b = rational_to_f64(beta);
            let mk = |v: Complex64| {
                let mut m = CBand::zeros(1, 0);
                m.set(0, 0, v);
                m
            };
            Ok(RepRealization {
                label: label.clone(),
                n_modes: 1,
                x: [
                    mk(im(2.0 * PI * a)),
                    mk(im(2.0 * PI * b)),
                    mk(re(0.0)),
                    mk(re(0.0)),
                    mk(re(0.0)),
                ],
            })
        }
        RepLabel::Schrodinger { hbar } => {
            if hbar.is_zero() {
                return Err(SpectralError::InvalidLabel(
                    "Schrödinger label requires ħ ≠ 0".into(),
                ));
            }
            if n < 16 {
                return Err(SpectralError::TruncationTooSmall(format!(
                    "need at least 16 modes, got {n}"
                )));
            }
            let h = rational_to_f64(hbar);
            let sigma = (2.0 * PI * h.abs()).sqrt();
            let zero = CBand::zeros(n, 0);
            Ok(RepRealization {
                label: label.clone(),
                n_modes: n,
                x: [
                    hermite::d_theta(n, sigma),
                    hermite::theta(n, sigma).scale(im(2.0 * PI * h)),
                    CBand::identity(n).scale(im(2.0 * PI * h)),
                    zero.clone(),
                    zero,
                ],
            })
        }
        RepLabel::Generic { lambda, mu, nu } => {
            if lambda.is_zero() && mu.is_zero() {
                return Err(SpectralError::InvalidLabel(
                    "generic label requires (λ, μ) ≠ (0, 0)".into(),
                ));
            }
            if n < 16 {
                return Err(SpectralError::TruncationTooSmall(format!(
                    "need at least 16 modes, got {n}"
                )));
            }
            let lf = rational_to_f64(lambda);
            let mf = rational_to_f64(mu);
            let nf = rational_to_f64(nu);
            // m = (λ² + μ²)^{1/3}; the basis width matches X₃ = 2πim·θ.
            let m = (lf * lf + mf * mf).cbrt();
            let sigma = (2.0 * PI * m).sqrt();
            let dt = hermite::d_theta(n, sigma);
            // θ² + ν m^{−2}, shared by X₁ and X₂.
            let shifted = hermite::theta_squared(n, sigma)
                .add(&CBand::identity(n).scale(re(nf / (m * m))));
            Ok(RepRealization {
                label: label.clone(),
                n_modes: n,
                x: [
                    dt.scale(re(lf / m)).add(&shifted.scale(im(-PI * mf / m))),
                    dt.scale(re(mf / m)).add(&shifted.scale(im(PI * lf / m))),
                    hermite::theta(n, sigma).scale(im(2.0 * PI * m)),
                    CBand::identity(n).scale(im(2.0 * PI * lf)),
                    CBand::identity(n).scale(im(2.0 * PI * mf)),
                ],
            })
        }
    }
}

/// Substitutes the realized generators into a normal-form element, in PBW
/// order `X₁^{e₁} ⋯ X₅^{e₅}` with coefficients mapped to floats.
#[must_use]
pub fn evaluate_poly(p: &UEAPoly, r: &RepRealization) -> CBand {
    let n = r.n_modes;
    let mut acc = CBand::zeros(n, 0);
    for (e, c) in p.terms() {
        let mut term = CBand::identity(n);
        for (i, &count) in e.iter().enumerate() {
            for _ in 0..count {
                term = term.mul(&r.x[i]);
            }
        }
        acc = acc.add(&term.scale(re(c.to_f64())));
    }
    acc
}

/// Evaluates a matrix of enveloping-algebra elements blockwise.
#[must_use]
pub fn evaluate_matrix(m: &UEAMatrix, r: &RepRealization) -> BandBlockMat {
    let mut out = BandBlockMat::zeros(m.rows(), m.cols(), r.n_modes);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let p = m.entry(i, j);
            if !p.is_zero() {
                out.set_block(i, j, evaluate_poly(p, r));
            }
        }
    }
    out
}

/// The realized Rumin differential `D_q`, `q = 0,…,4`.
#[must_use]
pub fn rumin_op(q: usize, r: &RepRealization) -> BandBlockMat {
    evaluate_matrix(&rumin_matrix(q), r)
}

/// The Casimir-type element `X₃X₃ + 2X₁X₅ − 2X₂X₄`.
#[must_use]
pub fn casimir_poly() -> UEAPoly {
    UEAPoly::from_word(&[3, 3])
        .add(&UEAPoly::from_word(&[1, 5]).scale(&QSqrt2::from_i64(2)))
        .sub(&UEAPoly::from_word(&[2, 4]).scale(&QSqrt2::from_i64(2)))
}

/// Interior residual of the Casimir identity `ρ(X₃X₃+2X₁X₅−2X₂X₄) = (2π)²ν`,
/// relative to `(2π)²|ν|` (absolute when `ν = 0`).
///
/// Only meaningful for generic labels; other labels are rejected.
pub fn casimir_check(r: &RepRealization) -> Result<f64, SpectralError> {
    let RepLabel::Generic { nu, .. } = r.label() else {
        return Err(SpectralError::InvalidLabel(
            "Casimir check applies to generic labels".into(),
        ));
    };
    let nf = rational_to_f64(nu);
    let target = (2.0 * PI) * (2.0 * PI) * nf;
    let c = evaluate_poly(&casimir_poly(), r);
    let n = r.n_modes;
    let interior = n.saturating_sub(8);
    let mut worst: f64 = 0.0;
    for i in 0..interior {
        for j in 0..interior {
            let expect = if i == j { re(target) } else { re(0.0) };
            worst = worst.max((c.get(i, j) - expect).norm());
        }
    }
    let scale = if nf == 0.0 { 1.0 } else { target.abs() };
    Ok(worst / scale)
}

/// Relative interior residual of the chain identity `D_{q+1} D_q = 0`,
/// `q = 0,…,3`: the largest interior entry of the realized product divided by
/// the product of the factors' largest entries.
#[must_use]
pub fn chain_residual(r: &RepRealization, q: usize) -> f64 {
    assert!(q <= 3, "chain residual needs q in 0..=3");
    let d_hi = rumin_op(q + 1, r);
    let d_lo = rumin_op(q, r);
    let prod = d_hi.mul(&d_lo);
    let interior = r.n_modes.saturating_sub(16);
    let mut worst: f64 = 0.0;
    for i in 0..prod.block_rows() {
        for j in 0..prod.block_cols() {
            if let Some(b) = prod.block(i, j) {
                worst = worst.max(b.principal(interior).max_abs());
            }
        }
    }
    let norm = |d: &BandBlockMat| {
        let mut m: f64 = 0.0;
        for i in 0..d.block_rows() {
            for j in 0..d.block_cols() {
                if let Some(b) = d.block(i, j) {
                    m = m.max(b.max_abs());
                }
            }
        }
        m
    };
    worst / (norm(&d_hi) * norm(&d_lo)).max(f64::MIN_POSITIVE)
}

/// The Rumin–Seshadri operator
/// `Δ_q = (D_{q−1} D*_{q−1})^{a_{q−1}} + (D*_q D_q)^{a_q}` as an explicit
/// flattened matrix (boundary conventions `D_{−1} = D₅ = 0`).
///
/// Formed by explicit matrix powers; suitable for structural checks at
/// moderate size. For eigenvalue work prefer [`factor_spectra`], which avoids
/// powering the matrices (the condition number of `Δ_q` is the `a_q`-th power
/// of the factors').
#[must_use]
pub fn delta_q(r: &RepRealization, q: usize) -> CBand {
    assert!(q <= 5, "Δ_q needs q in 0..=5");
    let mut acc: Option<BandBlockMat> = None;
    if q >= 1 {
        let d = rumin_op(q - 1, r);
        acc = Some(d.mul(&d.adjoint()).pow(A_Q[q - 1]));
    }
    if q <= 4 {
        let d = rumin_op(q, r);
        let s = d.adjoint().mul(&d).pow(A_Q[q]);
        acc = Some(match acc {
            Some(a) => a.add(&s),
            None => s,
        });
    }
    acc.expect("q in 0..=5 always has at least one term").flatten()
}

/// Eigenvalues of a Hermitian matrix with an explicit trust window.
#[derive(Clone, Debug)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    trusted_count: usize,
}

impl Spectrum {
    /// All computed eigenvalues, ascending.
    #[must_use]
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Number of leading (smallest) eigenvalues considered trusted.
    #[must_use]
    pub fn trusted_count(&self) -> usize {
        self.trusted_count
    }

    /// The trusted leading part of the spectrum.
    #[must_use]
    pub fn trusted(&self) -> &[f64] {
        &self.eigenvalues[..self.trusted_count]
    }
}

/// Eigenvalues of a Hermitian band matrix, ascending, with
/// `trusted_count = floor(trust_fraction · dim)`.
///
/// Fails if the Hermitian defect exceeds `symm_tol` relative to the largest
/// entry; the matrix is symmetrized before the solve.
pub fn spectrum(m: &CBand, trust_fraction: f64, symm_tol: f64) -> Result<Spectrum, SpectralError> {
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let defect = m.hermitian_defect() / scale;
    if defect > symm_tol {
        return Err(SpectralError::Hermiticity {
            defect,
            tol: symm_tol,
        });
    }
    let eigenvalues = hermitian_band_eigenvalues(&m.symmetrize())?;
    let trusted_count = ((trust_fraction * eigenvalues.len() as f64).floor() as usize)
        .min(eigenvalues.len());
    Ok(Spectrum {
        eigenvalues,
        trusted_count,
    })
}

/// Factor spectra `T_q = spec⁺ D_q* D_q` of a nontrivial representation,
/// obtained from positive-definite Hodge-type operators.
///
/// Because `D_{q+1} D_q = 0`, the two summands of `Δ_q` commute with product
/// zero, so `spec Δ_q = T_{q−1}^{a_{q−1}} ∪ T_q^{a_q}` (powers applied
/// elementwise) and the zeta function needs only the `T_q` with unpowered
/// conditioning. Two obstacles shape the extraction:
///
/// * the semi-definite `B_q = D_q* D_q` have infinite-dimensional kernels,
///   so their truncations carry ambiguous transition eigenvalues anywhere
///   below the norm — eigenvalue lists cannot be read off them directly;
/// * a positive eigenvalue of `B_q` is seen twice, through `B_q` on `Ω^q`
///   and through `C_q = D_q D_q*` on `Ω^{q+1}`, and the Hermite truncations
///   of the two sides converge at vastly different rates. For the
///   third-order differentials the domain side (`B₁` on `Ω¹`, `C₃` on `Ω⁴`)
///   is still far from converged at `N = 256` while the image side is
///   accurate to many digits, so only image-favourable combinations are
///   usable.
///
/// The four solved operators, all positive definite by exactness (hence free
/// of spurious small eigenvalues — truncation eigenvalues can only sit above
/// the true spectral bottom) and built from well-converging sides, are
///
/// ```text
/// P₀: B₀          spectrum T₀          (D₀ has full column rank per mode)
/// E₂: C₁ + B₂     spectrum T₁ ∪ T₂
/// E₃: C₂ + B₃     spectrum T₂ ∪ T₃
/// P₄: C₄          spectrum T₄          (D₄ has full row rank per mode)
/// ```
///
/// The two middle multisets are split by recognition against the squared
/// singular values of the middle differential `D₂`: the column-restricted
/// band SVD of `D₂` carries the `T₂` content of `B₂` (plus kernel
/// compression artifacts, which almost never coincide with genuine
/// eigenvalues), the row-restricted one the `T₂` content of `C₂`. Elements
/// of `E₂` (resp. `E₃`) recognized there are assigned to `T₂`, count-forced
/// to the exact number `2N` implied by the per-mode ranks; the remainder is
/// `T₁` (resp. `T₃`).
#[derive(Clone, Debug)]
pub struct FactorSpectra {
    label: RepLabel,
    n_modes: usize,
    trust_fraction: f64,
    /// Spectra of the four definite solves, in the order of the table above.
    solves: [Vec<f64>; 4],
    /// Per-factor lists `T_0,…,T_4` extracted from the solves.
    branches: [Vec<f64>; 5],
    /// Per-element relative roundoff estimates matching `branches`.
    rel_errors: [Vec<f64>; 5],
    min_eigenvalue: f64,
    pairing_defect: f64,
    refined: bool,
}

impl FactorSpectra {
    /// The underlying label.
    #[must_use]
    pub fn label(&self) -> &RepLabel {
        &self.label
    }

    /// Retained modes per component.
    #[must_use]
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Ascending positive eigenvalues of `B_q = D_q* D_q`, `q = 0,…,4`
    /// (`T_0` and `T_4` direct, `T_1, T_2, T_3` by multiset subtraction).
    #[must_use]
    pub fn factor(&self, q: usize) -> &[f64] {
        &self.branches[q]
    }

    /// The trusted leading part of factor `q`.
    #[must_use]
    pub fn trusted_factor(&self, q: usize) -> &[f64] {
        let len = self.branches[q].len();
        let keep = ((self.trust_fraction * len as f64).floor() as usize).min(len);
        &self.branches[q][..keep]
    }

    /// Per-element relative roundoff estimates for `factor(q)`.
    #[must_use]
    pub fn factor_rel_errors(&self, q: usize) -> &[f64] {
        &self.rel_errors[q]
    }

    /// Whether the branch lists were refined through the band SVD of the
    /// differentials (improves small-eigenvalue relative accuracy from
    /// `O(ε‖op‖/t)` to `O(ε√(‖op‖/t))`).
    #[must_use]
    pub fn refined(&self) -> bool {
        self.refined
    }

    /// Ascending spectrum of the `j`-th definite solve: `j = 0,…,3` for
    /// `B₀`, `C₁+B₂`, `C₂+B₃`, `C₄`.
    #[must_use]
    pub fn solve_spectrum(&self, j: usize) -> &[f64] {
        &self.solves[j]
    }

    /// Smallest eigenvalue across all four solves; positive whenever the
    /// computation succeeded.
    #[must_use]
    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    /// Worst relative recognition distance among the trusted `T₂`
    /// assignments used to split the middle solves — a diagnostic for the
    /// branch lists.
    #[must_use]
    pub fn pairing_defect(&self) -> f64 {
        self.pairing_defect
    }

    /// Spectrum of `Δ_q` assembled from the powered factors, ascending.
    ///
    /// The trusted count is the sum of the contributing factors' trusted
    /// counts (their untrusted parts are the largest powered values).
    #[must_use]
    pub fn delta_spectrum(&self, q: usize) -> Spectrum {
        assert!(q <= 5, "Δ_q needs q in 0..=5");
        let mut vals = Vec::new();
        let mut trusted_count = 0;
        if q >= 1 {
            trusted_count += self.trusted_factor(q - 1).len();
            vals.extend(
                self.branches[q - 1]
                    .iter()
                    .map(|t| t.powi(A_Q[q - 1] as i32)),
            );
        }
        if q <= 4 {
            trusted_count += self.trusted_factor(q).len();
            vals.extend(self.branches[q].iter().map(|t| t.powi(A_Q[q] as i32)));
        }
        vals.sort_by(f64::total_cmp);
        Spectrum {
            eigenvalues: vals,
            trusted_count,
        }
    }
}

/// Computes, for each element of ascending `solve`, the relative distance to
/// its nearest neighbour in the ascending list `list`.
fn nearest_rel_distances(solve: &[f64], list: &[f64]) -> Vec<f64> {
    assert!(!list.is_empty(), "empty recognition list");
    let mut out = Vec::with_capacity(solve.len());
    let mut i = 0usize;
    for &v in solve {
        while i + 1 < list.len() && (list[i + 1] - v).abs() <= (list[i] - v).abs() {
            i += 1;
        }
        out.push((list[i] - v).abs() / v.abs().max(f64::MIN_POSITIVE));
    }
    out
}

/// Splits a middle-solve multiset `T_a ⊎ T_b` between its two branches.
///
/// Each element of `solve` is scored by its nearest relative distance into
/// two recognition lists — squared singular values of restricted
/// differentials whose genuine content is `T_a` (resp. `T_b`) alongside
/// kernel compression artifacts. Elements are ranked by the logarithmic
/// margin between the two scores and the `take_b` most `b`-like are assigned
/// to `T_b`, the rest to `T_a`; the count forcing uses the exact per-mode
/// multiplicities, so a stray artifact can only swap an element when it
/// lands closer than the element's genuine copy in its own list — a double
/// coincidence — and can never drift the counts.
///
/// Returns `(branch_a, branch_b, defect)`, both ascending, with `defect` the
/// worst assigned-list score within the leading `trust_fraction` of either
/// branch.
fn classify_split(
    solve: &[f64],
    list_a: &[f64],
    list_b: &[f64],
    take_b: usize,
    trust_fraction: f64,
) -> (Vec<f64>, Vec<f64>, f64) {
    assert!(take_b <= solve.len(), "cannot recognize more than available");
    let score_a = nearest_rel_distances(solve, list_a);
    let score_b = nearest_rel_distances(solve, list_b);
    let margin: Vec<f64> = score_a
        .iter()
        .zip(&score_b)
        .map(|(&a, &b)| b.max(f64::MIN_POSITIVE).ln() - a.max(f64::MIN_POSITIVE).ln())
        .collect();
    let mut order: Vec<usize> = (0..solve.len()).collect();
    order.sort_by(|&x, &y| margin[x].total_cmp(&margin[y]));
    let mut to_b = vec![false; solve.len()];
    for &k in order.iter().take(take_b) {
        to_b[k] = true;
    }
    let branch_b: Vec<f64> = solve
        .iter()
        .zip(&to_b)
        .filter(|(_, &m)| m)
        .map(|(&v, _)| v)
        .collect();
    let branch_a: Vec<f64> = solve
        .iter()
        .zip(&to_b)
        .filter(|(_, &m)| !m)
        .map(|(&v, _)| v)
        .collect();
    let trust = |len: usize| ((trust_fraction * len as f64).floor() as usize).min(len);
    let (trust_a, trust_b) = (trust(branch_a.len()), trust(branch_b.len()));
    let mut defect = 0.0_f64;
    let (mut seen_a, mut seen_b) = (0usize, 0usize);
    for (k, &m) in to_b.iter().enumerate() {
        if m {
            if seen_b < trust_b {
                defect = defect.max(score_b[k]);
            }
            seen_b += 1;
        } else {
            if seen_a < trust_a {
                defect = defect.max(score_a[k]);
            }
            seen_a += 1;
        }
    }
    (branch_a, branch_b, defect)
}

/// Computes the factor spectra of a nontrivial label.
///
/// Operator products are formed on `truncation + margin` modes and cut back
/// to the leading block, so every retained entry is an exact Galerkin value
/// of the untruncated operator; combined with positive definiteness of the
/// solved operators this keeps every computed eigenvalue above the true
/// bottom of the spectrum.
pub fn factor_spectra(
    label: &RepLabel,
    cfg: &SpectralConfig,
) -> Result<FactorSpectra, SpectralError> {
    if label.is_trivial() {
        return Err(SpectralError::InvalidLabel(
            "the trivial representation has no Rumin–Seshadri spectrum".into(),
        ));
    }
    let scalar = matches!(label, RepLabel::Scalar { .. });
    let (n_modes, margin, trust_fraction) = if scalar {
        // One-dimensional representation space: no truncation at all.
        (1, 0, 1.0)
    } else {
        (cfg.truncation, MODE_MARGIN, cfg.trust_fraction)
    };
    let r_big = realize(label, n_modes + margin)?;
    let b_op = |q: usize| {
        let d = rumin_op(q, &r_big);
        d.adjoint().mul(&d).flatten().principal(RANK_Q[q] * n_modes)
    };
    let c_op = |q: usize| {
        let d = rumin_op(q, &r_big);
        d.mul(&d.adjoint())
            .flatten()
            .principal(RANK_Q[q + 1] * n_modes)
    };
    let ops: [CBand; 4] = [
        b_op(0),
        c_op(1).add(&b_op(2)),
        c_op(2).add(&b_op(3)),
        c_op(4),
    ];
    let mut solves: [Vec<f64>; 4] = Default::default();
    let mut norms = [0.0f64; 4];
    let mut min_eigenvalue = f64::INFINITY;
    for (j, op) in ops.iter().enumerate() {
        let scale = op.max_abs().max(f64::MIN_POSITIVE);
        let defect = op.hermitian_defect() / scale;
        if defect > cfg.symm_tol {
            return Err(SpectralError::Hermiticity {
                defect,
                tol: cfg.symm_tol,
            });
        }
        norms[j] = op.inf_norm().max(f64::MIN_POSITIVE);
        let eig = hermitian_band_eigenvalues(&op.symmetrize())?;
        let low = eig.first().copied().unwrap_or(0.0);
        if low <= 0.0 {
            return Err(SpectralError::TruncationTooSmall(format!(
                "definite solve {j} produced a non-positive eigenvalue {low:.3e}"
            )));
        }
        min_eigenvalue = min_eigenvalue.min(low);
        solves[j] = eig;
    }
    // Ascending squared singular values of a column-restricted differential
    // (its adjoint for `adjoint = true`), i.e. the spectrum of the Galerkin
    // compression of `B_q` (resp. `C_q`) plus kernel artifacts and padding
    // zeros.
    let band_sq = |q: usize, adjoint: bool| -> Result<Vec<f64>, SpectralError> {
        let d = rumin_op(q, &r_big);
        let gb = if adjoint {
            d.adjoint().to_lapack_general_band(n_modes)
        } else {
            d.to_lapack_general_band(n_modes)
        };
        let mut sq: Vec<f64> = general_band_singular_values(&gb)?
            .into_iter()
            .map(|s| s * s)
            .collect();
        sq.sort_by(f64::total_cmp);
        Ok(sq)
    };
    // Recognition lists: for every branch, the restriction side on which the
    // corresponding differential converges fastest (the side away from the
    // heavy-tailed domain of the weight-three differentials).
    let svd_c1 = band_sq(1, true)?;
    let svd_b2 = band_sq(2, false)?;
    let svd_c2 = band_sq(2, true)?;
    let svd_b3 = band_sq(3, false)?;
    let take = POS_RANK_Q[2] * n_modes;
    let (t1, t2, d2) = classify_split(&solves[1], &svd_c1, &svd_b2, take, trust_fraction);
    let (t3, t2_dual, d3) = classify_split(&solves[2], &svd_b3, &svd_c2, take, trust_fraction);
    // The two solves see the same `T₂` through different compressions;
    // their trusted disagreement is a further quality diagnostic.
    let trusted2 = ((trust_fraction * t2.len() as f64).floor() as usize).min(t2.len());
    let mut cross = 0.0_f64;
    for (x, y) in t2.iter().zip(&t2_dual).take(trusted2) {
        cross = cross.max((x - y).abs() / x.abs().max(f64::MIN_POSITIVE));
    }
    let pairing_defect = d2.max(d3).max(cross);
    let mut branches = [solves[0].clone(), t1, t2, t3, solves[3].clone()];
    // Index of the definite solve each branch descends from; that solve's
    // norm governs the branch's unrefined roundoff.
    let solve_of = [0usize, 1, 1, 2, 3];
    let mut rel_errors: [Vec<f64>; 5] = Default::default();
    for q in 0..5 {
        debug_assert_eq!(branches[q].len(), POS_RANK_Q[q] * n_modes);
        rel_errors[q] = branches[q]
            .iter()
            .map(|&t| EIG_EPS * norms[solve_of[q]] / t.max(f64::MIN_POSITIVE))
            .collect();
    }
    let refined = cfg.refine && !scalar;
    if refined {
        for q in 0..5 {
            // Refine each branch against the image-favourable restriction of
            // its own differential.
            let sq = match q {
                0 => band_sq(0, false)?,
                1 => svd_c1.clone(),
                2 => svd_b2.clone(),
                3 => svd_b3.clone(),
                _ => band_sq(4, true)?,
            };
            refine_branch(&mut branches[q], &mut rel_errors[q], &sq, norms[solve_of[q]]);
            // Snapping may introduce window-sized inversions; restore order.
            let mut pairs: Vec<(f64, f64)> = branches[q]
                .iter()
                .copied()
                .zip(rel_errors[q].iter().copied())
                .collect();
            pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
            for (k, (v, e)) in pairs.into_iter().enumerate() {
                branches[q][k] = v;
                rel_errors[q][k] = e;
            }
        }
    }
    Ok(FactorSpectra {
        label: label.clone(),
        n_modes,
        trust_fraction,
        solves,
        branches,
        rel_errors,
        min_eigenvalue,
        pairing_defect,
        refined,
    })
}

/// Replaces branch eigenvalues by nearby squared singular values of the
/// corresponding differential.
///
/// Both lists ascend, so a single forward sweep finds each entry's nearest
/// candidate. A swap happens only inside the `SNAP_GUARD` window around the
/// combined roundoff of both computations: squared singular values of the
/// column-restricted differential include kernel compression values (and the
/// exact zeros of block padding), and the window keeps any of those that
/// accidentally lands near a branch entry from degrading it beyond the
/// unrefined bound.
fn refine_branch(branch: &mut [f64], rel_err: &mut [f64], sq: &[f64], norm: f64) {
    let Some(&top) = sq.last() else { return };
    let mut i = 0usize;
    for (b, e) in branch.iter_mut().zip(rel_err.iter_mut()) {
        while i + 1 < sq.len() && (sq[i + 1] - *b).abs() <= (sq[i] - *b).abs() {
            i += 1;
        }
        let cand = sq[i];
        let window = SNAP_GUARD * (EIG_EPS * norm + SVD_EPS * (top * *b).abs().sqrt());
        if (cand - *b).abs() <= window && cand > 0.0 {
            *b = cand;
            *e = SVD_EPS * (top / cand).sqrt();
        }
    }
}

/// A numerically estimated zeta value with an absolute error bar.
#[derive(Clone, Copy, Debug)]
pub struct ZetaEstimate {
    /// The estimated value.
    pub value: Complex64,
    /// Estimated absolute error (infinite when the trusted window cannot
    /// control the tail, e.g. left of the convergence abscissa).
    pub abs_error: f64,
}

/// Tail bound for `Σ_{i>L} t_i^{−aσ}` from a power-law fit `t_i ≈ C·i^α` on
/// the upper half of the trusted window.
fn factor_tail(trusted: &[f64], a: f64, sigma: f64) -> f64 {
    let len = trusted.len();
    if len < 8 {
        return f64::INFINITY;
    }
    let lo = len / 2;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    let mut m = 0.0;
    for (i, &t) in trusted.iter().enumerate().skip(lo) {
        if t <= 0.0 {
            return f64::INFINITY;
        }
        let x = ((i + 1) as f64).ln();
        let y = t.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        m += 1.0;
    }
    let denom = m * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return f64::INFINITY;
    }
    let alpha = (m * sxy - sx * sy) / denom;
    let logc = (sy - alpha * sx) / m;
    let p = alpha * a * sigma;
    if p <= 1.0 + 1e-9 {
        return f64::INFINITY;
    }
    // Σ_{i>L} (C i^α)^{−aσ} ≤ C^{−aσ} · L^{1−p} / (p − 1).
    (-a * sigma * logc).exp() * (len as f64).powf(1.0 - p) / (p - 1.0)
}

/// Alternating weighted zeta value `Σ_q (−1)^q N_q tr Δ_q^{−s}` from factor
/// spectra, with a tail-fitted error bar.
///
/// Internally rearranged over the factors:
/// `ζ_ρ(s) = Σ_{q=0}^{4} (−1)^{q+1} k_q Σ_{t ∈ T_q} t^{−a_q s}`.
/// Isolated branch misassignments where adjacent factors collide in value
/// perturb only deep-tail terms of these sums; their effect is far below the
/// tail error bar.
#[must_use]
pub fn super_zeta_from_factors(fs: &FactorSpectra, s: Complex64) -> ZetaEstimate {
    let mut value = Complex64::zero();
    let mut abs_error = 0.0_f64;
    for q in 0..5 {
        let sign = if q % 2 == 0 { -1.0 } else { 1.0 };
        let weight = sign * K_Q[q] as f64;
        let a = A_Q[q] as f64;
        let trusted = fs.trusted_factor(q);
        let rels = fs.factor_rel_errors(q);
        let mut sum = Complex64::zero();
        let mut round = 0.0_f64;
        for (&t, &rel) in trusted.iter().zip(rels) {
            let term = (-a * s * t.ln()).exp();
            sum += term;
            // A relative eigenvalue error δ perturbs t^{−as} by ≈ a·|s|·δ.
            round += term.norm() * a * s.norm() * rel;
        }
        value += re(weight) * sum;
        abs_error += K_Q[q] as f64 * (factor_tail(trusted, a, s.re) + round);
    }
    ZetaEstimate { value, abs_error }
}

/// Closed-form scalar zeta value
/// `ζ_{ρ_{α,β}}(s) = (2π)^{−2κs} (α²+β²)^{−κs} · 4(1 − 2^{κs/2})`.
#[must_use]
pub fn scalar_zeta_value(lambda_sq: f64, s: Complex64) -> Complex64 {
    let k = KAPPA as f64;
    let log_scale = -2.0 * k * (2.0 * PI).ln() - k * lambda_sq.ln();
    (s * log_scale).exp() * (re(4.0) - re(4.0) * (s * (k / 2.0) * 2.0_f64.ln()).exp())
}

/// Evaluates `ζ_ρ(s)` for an arbitrary nontrivial label, using the exact
/// closed form for scalar labels and factor spectra otherwise. The trivial
/// label returns exactly zero (its zeta function vanishes identically).
///
/// When `tolerance` is given, fails with [`SpectralError::Untrusted`] if the
/// estimated error exceeds it.
pub fn super_zeta(
    label: &RepLabel,
    s: Complex64,
    cfg: &SpectralConfig,
    cache: &mut SpectraCache,
    tolerance: Option<f64>,
) -> Result<ZetaEstimate, SpectralError> {
    let est = match label {
        RepLabel::Scalar { alpha, beta } => {
            if label.is_trivial() {
                ZetaEstimate {
                    value: Complex64::zero(),
                    abs_error: 0.0,
                }
            } else {
                let af = rational_to_f64(alpha);
                let bf = rational_to_f64(beta);
                let value = scalar_zeta_value(af * af + bf * bf, s);
                ZetaEstimate {
                    value,
                    abs_error: 1e-13 * value.norm().max(1.0),
                }
            }
        }
        _ => {
            let fs = cache.get_or_compute(label, cfg)?;
            super_zeta_from_factors(&fs, s)
        }
    };
    if let Some(tol) = tolerance {
        if !(est.abs_error <= tol) {
            return Err(SpectralError::Untrusted {
                error: est.abs_error,
                tol,
            });
        }
    }
    Ok(est)
}

/// Heat supertrace `Σ_q (−1)^q N_q Σ_{trusted} e^{−tλ}` over the trusted
/// powered factor spectra; qualitative use only.
#[must_use]
pub fn heat_supertrace(fs: &FactorSpectra, t: f64) -> f64 {
    assert!(t > 0.0, "heat parameter must be positive");
    let mut acc = 0.0;
    for q in 0..5 {
        let sign = if q % 2 == 0 { -1.0 } else { 1.0 };
        let weight = sign * K_Q[q] as f64;
        let a = A_Q[q] as i32;
        for &v in fs.trusted_factor(q) {
            acc += weight * (-t * v.powi(a)).exp();
        }
    }
    acc
}

/// Cache of factor spectra keyed by exact label and configuration.
#[derive(Default)]
pub struct SpectraCache {
    map: HashMap<String, Rc<FactorSpectra>>,
}

impl SpectraCache {
    /// Creates an empty cache.
    #[must_use]
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the cached spectra for `label`, computing them on first use.
    pub fn get_or_compute(
        &mut self,
        label: &RepLabel,
        cfg: &SpectralConfig,
    ) -> Result<Rc<FactorSpectra>, SpectralError> {
        let key = format!(
            "{}|{}|{}|{}|{}",
            serde_json::to_string(label).expect("labels serialize"),
            cfg.truncation,
            cfg.trust_fraction.to_bits(),
            cfg.symm_tol.to_bits(),
            cfg.refine,
        );
        if let Some(hit) = self.map.get(&key) {
            return Ok(Rc::clone(hit));
        }
        let fs = Rc::new(factor_spectra(label, cfg)?);
        self.map.insert(key, Rc::clone(&fs));
        Ok(fs)
    }

    /// Number of cached entries.
    #[must_use]
    pub fn len(&self) -> usize {
        self.map.len()
    }

    /// True if nothing is cached yet.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Exact scalar path.
// ---------------------------------------------------------------------------

/// Exact evaluation of `D_q` at a scalar label: every entry of the Rumin
/// matrix is homogeneous of weight `k_q`, so the evaluated matrix is
/// `(2πi)^{k_q} · M_q` with `M_q` over `ℚ(√2)`. Returns `M_q`.
#[must_use]
pub fn scalar_rumin_factor(q: usize, alpha: &Rational, beta: &Rational) -> Vec<Vec<QSqrt2>> {
    let m = rumin_matrix(q);
    let mut out = vec![vec![QSqrt2::zero(); m.cols()]; m.rows()];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let by_degree = m.entry(i, j).evaluate_scalar(alpha, beta);
            debug_assert!(by_degree.len() <= 1, "entries are homogeneous");
            if let Some(v) = by_degree.get(&(K_Q[q] as u16)) {
                out[i][j] = v.clone();
            } else {
                debug_assert!(by_degree.is_empty());
            }
        }
    }
    out
}

/// The exact Gram factor `G_q = M_qᵀ M_q` (so that
/// `D_q* D_q = (2π)^{2 k_q} · G_q` at the scalar label).
#[must_use]
pub fn scalar_gram(q: usize, alpha: &Rational, beta: &Rational) -> Vec<Vec<QSqrt2>> {
    let m = scalar_rumin_factor(q, alpha, beta);
    let rows = m.len();
    let cols = m[0].len();
    let mut g = vec![vec![QSqrt2::zero(); cols]; cols];
    for a in 0..cols {
        for b in 0..cols {
            let mut acc = QSqrt2::zero();
            for row in m.iter().take(rows) {
                acc += &(&row[a] * &row[b]);
            }
            g[a][b] = acc;
        }
    }
    g
}

/// Monic characteristic polynomial of a symmetric matrix over `ℚ(√2)`,
/// coefficients ascending (`c₀ + c₁x + … + x^n`). Supports `n ≤ 3`.
///
/// # Panics
///
/// Panics for matrices larger than `3×3`.
#[must_use]
pub fn charpoly(g: &[Vec<QSqrt2>]) -> Vec<QSqrt2> {
    let n = g.len();
    let one = QSqrt2::one();
    match n {
        1 => vec![-&g[0][0], one],
        2 => {
            let tr = &g[0][0] + &g[1][1];
            let det = &(&g[0][0] * &g[1][1]) - &(&g[0][1] * &g[1][0]);
            vec![det, -&tr, one]
        }
        3 => {
            let tr = &(&g[0][0] + &g[1][1]) + &g[2][2];
            let minor = |a: usize, b: usize| -> QSqrt2 {
                &(&g[a][a] * &g[b][b]) - &(&g[a][b] * &g[b][a])
            };
            let e2 = &(&minor(0, 1) + &minor(0, 2)) + &minor(1, 2);
            let det = &(&(&g[0][0] * &minor(1, 2))
                - &(&g[0][1] * &(&(&g[1][0] * &g[2][2]) - &(&g[1][2] * &g[2][0]))))
                + &(&g[0][2] * &(&(&g[1][0] * &g[2][1]) - &(&g[1][1] * &g[2][0])));
            vec![-&det, e2, -&tr, one]
        }
        _ => panic!("charpoly supports dimensions 1..=3"),
    }
}

/// Frozen normalized positive factor eigenvalues of the scalar path: the
/// positive spectrum of `G_q(α, β)` equals `(α²+β²)^{k_q}` times this list.
#[must_use]
pub fn scalar_normalized_factors() -> [Vec<Rational>; 5] {
    [
        vec![rat(1, 1)],
        vec![rat(1, 1)],
        vec![rat(1, 2), rat(1, 2)],
        vec![rat(1, 1)],
        vec![rat(1, 1)],
    ]
}

/// Frozen normalized `Δ_q` spectra of the scalar path: the eigenvalues of
/// `Δ_q` at a scalar label equal `(2π)^{2κ} (α²+β²)^{κ}` times this list.
#[must_use]
pub fn scalar_delta_normalized(q: usize) -> Vec<Rational> {
    assert!(q <= 5, "Δ_q needs q in 0..=5");
    let factors = scalar_normalized_factors();
    let mut vals = Vec::new();
    if q >= 1 {
        for g in &factors[q - 1] {
            vals.push(num_traits::pow::pow(g.clone(), A_Q[q - 1]));
        }
    }
    if q <= 4 {
        for g in &factors[q] {
            vals.push(num_traits::pow::pow(g.clone(), A_Q[q]));
        }
    }
    vals.sort();
    vals.reverse(); // descending: (2π)^{2κ} first, matching the doublet lists
    vals
}

/// Verifies exactly (in `ℚ(√2)`) that the characteristic polynomial of each
/// `G_q(α, β)` equals `x^{z_q} · Π_g (x − Λ^{k_q} g)` with `Λ = α² + β²`,
/// `z_q` the exact kernel dimension, and `g` running over the frozen
/// normalized factor list. Returns `false` on any mismatch.
#[must_use]
pub fn scalar_factors_verify(alpha: &Rational, beta: &Rational) -> bool {
    let lambda = alpha * alpha + beta * beta;
    if lambda.is_zero() {
        return false;
    }
    let normalized = scalar_normalized_factors();
    for q in 0..5 {
        let g = scalar_gram(q, alpha, beta);
        let dim = g.len();
        let pos = &normalized[q];
        // Expected polynomial: x^{dim − |pos|} Π (x − Λ^{k_q} g_i).
        let mut expect = vec![QSqrt2::zero(); dim + 1];
        expect[dim - pos.len()] = QSqrt2::one();
        for gi in pos {
            let root = QSqrt2::from_rational(
                num_traits::pow::pow(lambda.clone(), K_Q[q]) * gi,
            );
            // Multiply the polynomial by (x − root), in place.
            let mut next = vec![QSqrt2::zero(); dim + 1];
            for (k, c) in expect.iter().enumerate() {
                if !c.is_zero() {
                    next[k] -= &(c * &root);
                    if k + 1 <= dim {
                        next[k + 1] += c;
                    }
                }
            }
            expect = next;
        }
        if charpoly(&g) != expect {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod consts_tests {
    use super::*;

    #[test]
    fn weights_are_partial_sums_of_orders() {
        let mut acc = 0;
        for q in 0..6 {
            assert_eq!(N_Q[q], acc);
            if q < 5 {
                acc += K_Q[q];
            }
        }
        // Total order of the complex equals the homogeneous dimension.
        assert_eq!(N_Q[5], HOMOGENEOUS_DIM);
    }

    #[test]
    fn seshadri_exponents_homogenize() {
        for q in 0..5 {
            assert_eq!(A_Q[q] * K_Q[q], KAPPA);
        }
    }

    #[test]
    fn euler_characteristic_vanishes() {
        let chi: i64 = (0..6).map(|q| (-1i64).pow(q as u32) * BETTI[q] as i64).sum();
        assert_eq!(chi, 0);
    }
}
