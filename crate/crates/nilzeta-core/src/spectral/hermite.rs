//! Hermite (harmonic-oscillator) mode matrices for `θ`, `∂_θ`, and `θ²`.
//!
//! The basis consists of the eigenfunctions `ψ_n` of the oscillator
//! `−∂² + σ⁴θ²`, i.e. Hermite functions of width `1/σ`. On this basis the
//! ladder relations give tridiagonal `θ` and `∂_θ`:
//!
//! ```text
//! θ ψ_n   = (1/(σ√2)) (√n ψ_{n−1} + √(n+1) ψ_{n+1})
//! ∂_θ ψ_n = (σ/√2)    (√n ψ_{n−1} − √(n+1) ψ_{n+1})
//! ```
//!
//! and a pentadiagonal `θ²` whose entries are exact (not the square of the
//! truncated `θ`, which is corrupted in the last two modes):
//!
//! ```text
//! θ² ψ_n = (1/(2σ²)) (√(n(n−1)) ψ_{n−2} + (2n+1) ψ_n + √((n+1)(n+2)) ψ_{n+2}).
//! ```
//!
//! Matrices are stored column-by-column: entry `(m, n)` is the `ψ_m`
//! coefficient of the image of `ψ_n`.

use super::banded::CBand;
use num_complex::Complex64;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Multiplication by `θ` on `n` modes of width parameter `σ > 0`.
///
/// # Panics
///
/// Panics if `sigma` is not strictly positive and finite.
#[must_use]
pub fn theta(n: usize, sigma: f64) -> CBand {
    assert!(sigma.is_finite() && sigma > 0.0, "σ must be positive");
    let c = 1.0 / (sigma * std::f64::consts::SQRT_2);
    let mut m = CBand::zeros(n, 1);
    for col in 0..n {
        if col > 0 {
            m.set(col - 1, col, real(c * (col as f64).sqrt()));
        }
        if col + 1 < n {
            m.set(col + 1, col, real(c * ((col + 1) as f64).sqrt()));
        }
    }
    m
}

/// The derivative `∂_θ` on `n` modes of width parameter `σ > 0`.
///
/// # Panics
///
/// Panics if `sigma` is not strictly positive and finite.
#[must_use]
pub fn d_theta(n: usize, sigma: f64) -> CBand {
    assert!(sigma.is_finite() && sigma > 0.0, "σ must be positive");
    let c = sigma / std::f64::consts::SQRT_2;
    let mut m = CBand::zeros(n, 1);
    for col in 0..n {
        if col > 0 {
            m.set(col - 1, col, real(c * (col as f64).sqrt()));
        }
        if col + 1 < n {
            m.set(col + 1, col, real(-c * ((col + 1) as f64).sqrt()));
        }
    }
    m
}

/// Multiplication by `θ²` on `n` modes, with exact pentadiagonal entries.
///
/// # Panics
///
/// Panics if `sigma` is not strictly positive and finite.
#[must_use]
pub fn theta_squared(n: usize, sigma: f64) -> CBand {
    assert!(sigma.is_finite() && sigma > 0.0, "σ must be positive");
    let c = 1.0 / (2.0 * sigma * sigma);
    let mut m = CBand::zeros(n, 2);
    for col in 0..n {
        m.set(col, col, real(c * (2 * col + 1) as f64));
        if col >= 2 {
            m.set(col - 2, col, real(c * ((col * (col - 1)) as f64).sqrt()));
        }
        if col + 2 < n {
            m.set(
                col + 2,
                col,
                real(c * (((col + 1) * (col + 2)) as f64).sqrt()),
            );
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 24;
    const SIGMA: f64 = 1.7;

    #[test]
    fn ladder_entries() {
        let t = theta(N, SIGMA);
        let d = d_theta(N, SIGMA);
        let c_t = 1.0 / (SIGMA * std::f64::consts::SQRT_2);
        let c_d = SIGMA / std::f64::consts::SQRT_2;
        assert!((t.get(0, 1).re - c_t).abs() < 1e-15);
        assert!((t.get(2, 1).re - c_t * 2.0_f64.sqrt()).abs() < 1e-15);
        assert!((d.get(0, 1).re - c_d).abs() < 1e-15);
        assert!((d.get(2, 1).re + c_d * 2.0_f64.sqrt()).abs() < 1e-15);
        // θ is symmetric, ∂_θ antisymmetric (both real).
        assert!(t.hermitian_defect() < 1e-15);
        assert!(t.add(&t.adjoint().scale(real(-1.0))).max_abs() < 1e-15);
        assert!(d.add(&d.adjoint()).max_abs() < 1e-15);
    }

    #[test]
    fn commutator_is_identity_on_interior() {
        let t = theta(N, SIGMA);
        let d = d_theta(N, SIGMA);
        let comm = d.mul(&t).add(&t.mul(&d).scale(real(-1.0)));
        for i in 0..N - 1 {
            for j in 0..N - 1 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (comm.get(i, j) - real(expect)).norm() < 1e-13,
                    "({i},{j}): {:?}",
                    comm.get(i, j)
                );
            }
        }
    }

    #[test]
    fn theta_squared_matches_product_on_interior() {
        let t = theta(N, SIGMA);
        let t2 = theta_squared(N, SIGMA);
        let prod = t.mul(&t);
        for i in 0..N {
            for j in 0..N - 2 {
                assert!((t2.get(i, j) - prod.get(i, j)).norm() < 1e-14, "({i},{j})");
            }
        }
        // The exact θ² differs from the truncated product in the last columns.
        assert!((t2.get(N - 1, N - 1) - prod.get(N - 1, N - 1)).norm() > 0.1);
    }

    #[test]
    fn oscillator_is_diagonal() {
        // −∂θ² + σ⁴θ² = σ²(2n+1) exactly on the interior.
        let d = d_theta(N, SIGMA);
        let t2 = theta_squared(N, SIGMA);
        let osc = d
            .mul(&d)
            .scale(real(-1.0))
            .add(&t2.scale(real(SIGMA.powi(4))));
        for i in 0..N - 2 {
            for j in 0..N - 2 {
                let expect = if i == j {
                    SIGMA * SIGMA * (2 * i + 1) as f64
                } else {
                    0.0
                };
                assert!((osc.get(i, j) - real(expect)).norm() < 1e-12, "({i},{j})");
            }
        }
    }
}
