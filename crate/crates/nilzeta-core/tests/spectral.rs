//! Integration checks of the spectral backend at production truncation.

use nilzeta_core::rational::{rat, rat_int};
use nilzeta_core::repdecomp::RepLabel;
use nilzeta_core::spectral::{
    casimir_check, chain_residual, factor_spectra, realize, SpectralConfig, KAPPA,
};
use num_complex::Complex64;
use std::time::Instant;

fn schrodinger(h: i64) -> RepLabel {
    RepLabel::Schrodinger { hbar: rat_int(h) }
}

fn generic(l: i64, m: i64, nu_num: i64, nu_den: i64) -> RepLabel {
    RepLabel::Generic {
        lambda: rat_int(l),
        mu: rat_int(m),
        nu: rat(nu_num, nu_den),
    }
}

#[test]
fn oscillator_modes_at_production_truncation() {
    let cfg = SpectralConfig::default();
    let start = Instant::now();
    let fs = factor_spectra(&schrodinger(1), &cfg).unwrap();
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 30,
        "factor spectra took {elapsed:?}, budget 30 s"
    );
    let f0 = fs.factor(0);
    assert_eq!(f0.len(), 256);
    for (n, &v) in f0.iter().enumerate().take(10) {
        let expect = 2.0 * std::f64::consts::PI * (2 * n + 1) as f64;
        assert!(
            (v - expect).abs() <= 1e-8 * expect,
            "mode {n}: {v} vs {expect}"
        );
    }
}

#[test]
fn chain_and_casimir_residuals_at_production_truncation() {
    let r = realize(&schrodinger(1), 256).unwrap();
    for q in 0..=3 {
        let res = chain_residual(&r, q);
        assert!(res < 1e-8, "Schrödinger chain residual q={q}: {res}");
    }
    let r = realize(&generic(1, 1, 1, 3), 256).unwrap();
    for q in 0..=3 {
        let res = chain_residual(&r, q);
        assert!(res < 1e-8, "generic chain residual q={q}: {res}");
    }
    let r = realize(&generic(1, 0, 5, 1), 256).unwrap();
    let res = casimir_check(&r).unwrap();
    assert!(res < 1e-8, "Casimir residual {res}");
}

#[test]
fn generic_spectra_rotation_invariant() {
    // ρ_{λ,μ,ν} and ρ_{λ',μ',ν} with λ²+μ² = λ'²+μ'² are equivalent, so the
    // refined factor spectra must agree within the trusted windows.
    let cfg = SpectralConfig::default();
    let a = factor_spectra(&generic(3, 4, 1, 2), &cfg).unwrap();
    let b = factor_spectra(&generic(5, 0, 1, 2), &cfg).unwrap();
    assert!(a.refined() && b.refined());
    let mut worst = 0.0_f64;
    for q in 0..5 {
        let fa = a.trusted_factor(q);
        let fb = b.trusted_factor(q);
        assert_eq!(fa.len(), fb.len());
        for (x, y) in fa.iter().zip(fb) {
            worst = worst.max((x - y).abs() / x.abs().max(f64::MIN_POSITIVE));
        }
    }
    assert!(worst <= 1e-6, "rotation mismatch {worst:.3e}");
}

#[test]
fn schrodinger_zeta_scaling_at_production_truncation() {
    // ζ_{ρ_ħ}(s) = |ħ|^{−κs} ζ_{ρ₁}(s) at s = 2 within the error bars.
    use nilzeta_core::spectral::{super_zeta, SpectraCache};
    let cfg = SpectralConfig::default();
    let mut cache = SpectraCache::new();
    let s = Complex64::new(2.0, 0.0);
    let z1 = super_zeta(&schrodinger(1), s, &cfg, &mut cache, None).unwrap();
    for h in [2i64, 3] {
        let zh = super_zeta(&schrodinger(h), s, &cfg, &mut cache, None).unwrap();
        let predicted = z1.value * (h as f64).powf(-(KAPPA as f64) * 2.0);
        let budget = zh.abs_error + z1.abs_error * (h as f64).powf(-(KAPPA as f64) * 2.0);
        assert!(
            (zh.value - predicted).norm() <= budget.max(1e-9 * predicted.norm()),
            "ħ = {h}: {} vs {} (budget {budget:.3e})",
            zh.value,
            predicted
        );
    }
}

#[test]
fn dilation_covariance_of_factor_spectra() {
    // Composing with the grading automorphism δ_τ at τ = 2 turns ħ = 1 into
    // ħ = τ²·1 = 4 and multiplies the branch-q spectrum by τ^{2k_q}; the
    // trusted windows of the two independent computations must agree
    // elementwise under that scaling. This exercises realization,
    // classification, and refinement end to end.
    let cfg = SpectralConfig {
        truncation: 64,
        ..SpectralConfig::default()
    };
    let one = factor_spectra(&schrodinger(1), &cfg).unwrap();
    let four = factor_spectra(&schrodinger(4), &cfg).unwrap();
    let scale = [4.0, 64.0, 16.0, 64.0, 4.0];
    let mut worst = 0.0_f64;
    for q in 0..5 {
        let a = one.trusted_factor(q);
        let b = four.trusted_factor(q);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            worst = worst.max((y - scale[q] * x).abs() / (scale[q] * x));
        }
    }
    assert!(worst <= 1e-6, "dilation covariance violated: {worst:.3e}");
}
